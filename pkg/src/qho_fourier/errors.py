"""Exception hierarchy. Every error raised by the package derives from
:class:`QHOError`; the numeric ones also derive from the matching builtin
so callers may catch ``ValueError`` / ``ArithmeticError`` generically."""


class QHOError(Exception):
    pass


class PoleError(QHOError, ArithmeticError):
    """Gamma function evaluated at a non-positive integer."""


class DomainError(QHOError, ValueError):
    pass


class NoConvergence(QHOError, ArithmeticError):
    pass


class ConvergenceFailure(NoConvergence):
    """Tridiagonal eigen-iteration exceeded its iteration cap."""


class TailNotDecayed(QHOError, ArithmeticError):
    """Integrand still significant at the truncation radius."""


class SingularityTooStrong(QHOError, ArithmeticError):
    pass


class BoundaryViolation(QHOError, ValueError):
    """Input breaks the origin condition required by the transform kind."""


class GridTooCoarse(QHOError, ValueError):
    pass


class GridTooSmall(QHOError, ValueError):
    pass


class ParityMismatch(QHOError, ValueError):
    pass


class ClosedFormMismatch(QHOError, ArithmeticError):
    pass


class UnknownFunction(QHOError, KeyError):
    pass
