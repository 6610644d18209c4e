# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see
# https://www.sphinx-doc.org/en/master/usage/configuration.html

# -- Path setup --------------------------------------------------------------

import ast
import os
import sys

sys.path.insert(0, os.path.abspath(".."))


def _read_version():
    with open(os.path.join("..", "endoforce", "__init__.py"), encoding="utf-8") as f:
        for line in f:
            if line.startswith("__version__"):
                return ast.literal_eval(line.split("=")[-1].strip())
    return ""


# -- Project information -----------------------------------------------------

project = "EndoForce twin"
copyright = "2024, EndoForce twin contributors"
author = "EndoForce twin contributors"

release = _read_version()


# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.doctest",
    "sphinx.ext.intersphinx",
    "sphinx.ext.todo",
    "sphinx.ext.coverage",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
    "sphinx.ext.napoleon",
    "sphinx_rtd_theme",
]

templates_path = ["_templates"]

source_suffix = ".rst"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

pygments_style = "sphinx"

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"

html_static_path = ["_static"]

master_doc = "index"

man_pages = [(master_doc, "endoforce", "EndoForce twin", [author], 1)]
