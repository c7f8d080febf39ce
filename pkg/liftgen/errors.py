from typing import Optional


class LiftgenError(Exception):
    """Base class for all errors raised by liftgen"""
    pass


class ParseError(LiftgenError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location = f" ({location})"
        super().__init__(f"{message}{location}")


class UnsupportedFragmentError(LiftgenError):
    pass


class UnsatisfiableError(LiftgenError):
    pass


class OracleCapError(LiftgenError):
    pass


class InconsistencyError(LiftgenError):
    pass


class SamplingError(LiftgenError):
    pass
