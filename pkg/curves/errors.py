"""
Exception hierarchy shared by every stage of the construction pipeline.

Each error carries the process exit code the command line reports for it
and the pipeline stage that raised it.
"""


class CurveError(Exception):
    """Base error for curve construction and verification"""
    exit_code = 1

    def __init__(self, message: str, exit_code: int = None, stage: str = "unknown"):
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        self.stage = stage
        super().__init__(self.message)


class FieldMismatchError(CurveError):
    """Operands live in different fields"""

    def __init__(self, message: str = "operands belong to different fields"):
        super().__init__(message, stage="algebra")


class ZeroDivisionFieldError(CurveError, ZeroDivisionError):
    def __init__(self, message: str = "division by zero"):
        super().__init__(message, stage="algebra")


class ReducibleModulusError(CurveError):
    """A polynomial that must be irreducible is not"""

    def __init__(self, message: str):
        super().__init__(message, stage="algebra")


class DegeneratePolygonError(CurveError):
    """A lattice polygon is a point or a segment where an area is required"""

    def __init__(self, message: str):
        super().__init__(message, stage="lattice")


class InexactDivisionError(CurveError):
    """An exact division left a remainder (an implementation bug)"""

    def __init__(self, message: str, stage: str = "algebra"):
        super().__init__(message, stage=stage)


class ZeroDiscriminantError(CurveError):
    """f is not squarefree as a polynomial in y"""

    def __init__(self, message: str = "discriminant is identically zero"):
        super().__init__(message, stage="curve")


class InfeasibleGenusError(CurveError):
    """The degree plan has a negative entry: the genus is too small"""
    exit_code = 2

    def __init__(self, message: str, index: int = None, value: int = None):
        self.index = index
        self.value = value
        super().__init__(message, stage="construct")


class BudgetExhaustedError(CurveError):
    """No squarefree tuple was found within the trial budget"""
    exit_code = 3

    def __init__(self, message: str, trials: int = 0, last_failure: str = "", advisory: str = None):
        self.trials = trials
        self.last_failure = last_failure
        self.advisory = advisory
        super().__init__(message, stage="search")


class CapExceededError(CurveError):
    """An enumeration would exceed the configured cap"""
    exit_code = 4

    def __init__(self, message: str, size: int = 0, cap: int = 0):
        self.size = size
        self.cap = cap
        super().__init__(message, stage="enumeration")


class VerificationError(CurveError):
    """A certificate check failed"""
    exit_code = 1

    def __init__(self, message: str, check: str = "unknown"):
        self.check = check
        super().__init__(message, stage="verify")


class ConfigError(CurveError):
    """Malformed run configuration"""
    exit_code = 64

    def __init__(self, message: str):
        super().__init__(message, stage="config")


class SchemaError(CurveError):
    """A certificate document does not follow the v1 schema"""
    exit_code = 65

    def __init__(self, message: str):
        super().__init__(message, stage="schema")
