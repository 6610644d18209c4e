"""A setuptools based setup module.
See:
https://packaging.python.org/en/latest/distributing.html
"""
import ast
from setuptools import setup, find_packages

# To use a consistent encoding
from codecs import open
from os import path


here = path.abspath(path.dirname(__file__))

# Get the long description from the relevant file
with open(path.join(here, "README.rst"), encoding="utf-8") as f:
    long_description = f.read()

with open(path.join(here, "requirements.txt"), encoding="utf-8") as f:
    required = [line for line in f.read().splitlines() if line and not line.startswith("#")]


def get_version() -> str:
    version = ""
    with open(path.join(here, "endoforce", "__init__.py"), "r", encoding="utf-8") as f:
        for line in f:
            if line.startswith("__version__"):
                version = ast.literal_eval(line.split("=")[-1].strip())
                break
    return version


setup(
    name="endoforce-twin",
    version=get_version(),
    description="Digital twin of the EndoForce insertion-force sensor, its "
    "transport unit and a ureter testbed.",
    long_description=long_description,
    license="MIT",
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Medical Science Apps.",
    ],
    keywords="endoscopy force sensing simulation digital twin ureteroscopy",
    packages=find_packages(exclude=["contrib", "docs", "test*"]),
    python_requires=">=3.8",
    install_requires=required,
    extras_require={
        "test": ["pytest", "pytest-cov", "hypothesis"],
        "docs": ["sphinx", "sphinx_rtd_theme"],
    },
    entry_points={
        "console_scripts": ["endoforce=endoforce.cli:main"],
    },
    package_data={},
    data_files=[("scenarios", ["scenarios/straight.toml", "scenarios/curved.toml"])],
    test_suite="tests",
)
