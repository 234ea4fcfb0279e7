"""Exception hierarchy shared by all modules.

Every error carries a short machine-readable ``code`` which the CLI
surfaces in its JSON error reports.  Errors with ``internal = True``
indicate an inconsistency inside the library (exit code 3); all others
are complaints about user input (exit code 2).
"""


class MovingCurvesError(Exception):
    code = "ERROR"
    internal = False

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details


class FieldMismatchError(MovingCurvesError):
    code = "FIELD-MISMATCH"


class DegreeMismatchError(MovingCurvesError):
    code = "DEGREE-MISMATCH"


class ParseError(MovingCurvesError):
    code = "SYNTAX"

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})", position=position)
        self.position = position


class NotHomogeneousError(MovingCurvesError):
    code = "NOT-HOMOGENEOUS"


class InvalidParametrizationError(MovingCurvesError):
    # code is set per instance: COMMON-FACTOR, ZERO, DEGREE-MISMATCH
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


class NotAPowerError(MovingCurvesError):
    code = "NOT-A-POWER"


class NotDivisibleError(MovingCurvesError):
    code = "NOT-DIVISIBLE"


class DegenerateImageError(MovingCurvesError):
    code = "DEGENERATE-IMAGE"


class RootFailureError(MovingCurvesError):
    code = "ROOT-FAILURE"
    internal = True


class CrossProductFailureError(MovingCurvesError):
    code = "CROSS-PRODUCT-FAILURE"
    internal = True


class NoDecompositionError(MovingCurvesError):
    code = "NO-DECOMPOSITION"


class NonSquareError(MovingCurvesError):
    code = "NON-SQUARE"


class ZeroDeterminantError(MovingCurvesError):
    code = "ZERO-DETERMINANT"


class UnstableIndexError(MovingCurvesError):
    code = "UNSTABLE"
    internal = True


class BoxTooSmallError(MovingCurvesError):
    code = "BOX-TOO-SMALL"


class NotImplicitError(MovingCurvesError):
    code = "NOT-IMPLICIT"
