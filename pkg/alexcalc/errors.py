"""Domain errors raised by the calculus engine."""


class AlexCalcError(Exception):
    """Base class for every domain error; ``span`` points into the source text when known."""

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.message = message
        self.span = span


class UnknownName(AlexCalcError):
    pass


UnknownAtom = UnknownName


class CatalogError(AlexCalcError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NoProjectivePlaneBoundary(AlexCalcError):
    pass


class AmbiguousBoundary(AlexCalcError):
    pass


class BoundaryMismatch(AlexCalcError):
    pass


class NotClosed(AlexCalcError):
    pass


class InvalidGenus(AlexCalcError):
    pass


class SiteNotFound(AlexCalcError):
    pass


class SiteAlreadyConsumed(AlexCalcError):
    pass


class InconsistentFlags(AlexCalcError):
    pass


class NotWhite(AlexCalcError):
    pass


class VertexMissing(AlexCalcError):
    pass


class ManifoldInput(AlexCalcError):
    pass


class NonCoprimeSlope(AlexCalcError):
    pass


class IncompatibleFilling(AlexCalcError):
    pass


class OddSingularCount(AlexCalcError):
    pass


class ExprSyntaxError(AlexCalcError):
    pass


class FuelExhausted(AlexCalcError):
    pass


class FormatError(AlexCalcError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
