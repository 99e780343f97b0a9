"""Exception hierarchy shared by all modules."""


class SixJError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(SixJError, ValueError):
    """Bad input: wrong integrality, negative spins, broken triangles."""


class TriangleViolation(ValidationError):
    def __init__(self, triad, values):
        self.triad = triad
        self.values = tuple(values)
        shown = ", ".join(str(v) for v in self.values)
        super().__init__(f"triangle condition violated for {triad} = ({shown})")


class EmptySubspace(ValidationError):
    pass


class DomainError(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class DegenerateFaces(ValidationError):
    pass


class PoleProximity(ValidationError):
    pass


class SolverError(SixJError, ArithmeticError):
    """A numerical procedure could not deliver its contract."""


class ConvergenceFailure(SolverError):
    def __init__(self, message, iterations=None):
        self.iterations = iterations
        super().__init__(message if iterations is None else f"{message} (after {iterations} iterations)")


class NoIntersection(SolverError):
    pass


class NoRoot(SolverError):
    def __init__(self, message, diagnostics=None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class CausticDivergence(SolverError):
    pass


class AmbiguousPhase(SolverError):
    pass


class NoTurningPoint(SolverError):
    pass


class MultipleTurningPoints(SolverError):
    pass
