"""Exception hierarchy.

Every exception carries a short ``kind`` string; the command-line front end
reports it in its structured error output.
"""


class KronrealError(Exception):
    kind = "error"


class DimensionError(KronrealError, ValueError):
    kind = "dimension"


class SingularMatrixError(KronrealError, ArithmeticError):
    kind = "singular"


class PoleError(SingularMatrixError):
    """Evaluation point is an eigenvalue of the state matrix to working precision."""

    kind = "pole"


class NormError(KronrealError, ValueError):
    kind = "norm"


class NotScalarError(KronrealError, ValueError):
    kind = "not_scalar"


class PreconditionError(KronrealError):
    """A numerical precondition failed; ``residual`` is the offending value."""

    kind = "precondition"

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class RepeatedEigenvalueError(KronrealError):
    kind = "repeated_eigenvalue"


class NoAdmissiblePairError(KronrealError):
    kind = "no_admissible_pair"
