"""Module for custom exceptions.

Where possible we try to throw exceptions with non-generic,
meaningful names.
"""


class EndoForceException(Exception):
    """
    Base class for all errors
    """


class InputDomainError(ValueError, EndoForceException):
    """
    An operation received an argument outside its domain, e.g. a non-finite
    force, a non-positive time step, a negative depth or series of
    mismatched lengths.
    """


class ValidationError(ValueError, EndoForceException):
    """
    A value type (geometry, pathway, transport config, ...) was built with
    parameters that violate its invariants.
    """


class ConfigError(EndoForceException):
    """
    Scenario file could not be parsed or describes an invalid scenario.
    """


class TransitionError(EndoForceException):
    """
    The gripper does not accept the command in its current state.
    """

    def __init__(self, state, command):
        self.state = state
        self.command = command
        super().__init__(
            f"Illegal gripper transition: {command.name} while "
            f"holder={state.holder.name}, grip={state.grip.name}"
        )


class ConsistencyFault(EndoForceException):
    """
    The transport phase and the gripper state disagree (e.g. advancing with
    a released tube).
    """

    def __init__(self, diagnostic):
        self.diagnostic = diagnostic
        super().__init__(diagnostic)


class TrialFault(EndoForceException):
    """
    A trial was aborted because one of the modules raised a fault.
    """

    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class AcquisitionError(EndoForceException):
    """
    A cell source failed to deliver a reading.
    """

    def __init__(self, message, channel=None):
        self.channel = channel
        super().__init__(message)


class TraceWriteError(OSError, EndoForceException):
    """
    Telemetry trace could not be written
    """

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(message)


class TraceParseError(EndoForceException):
    """
    Telemetry trace is malformed
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        super().__init__(message)


class CalibrationError(EndoForceException):
    """
    Noise calibration did not converge within its iteration budget.
    """

    def __init__(self, message, best=None, achieved_std=None):
        self.best = best
        self.achieved_std = achieved_std
        super().__init__(message)
