"""Exception types shared across the package."""


class CatkitError(Exception):
    """Base class for all catkit errors."""


class ModelMismatchError(CatkitError):
    """Two model points live in model planes of different curvature."""


class InvalidTriangleError(CatkitError, ValueError):
    """Side lengths strictly violate the triangle inequality."""


class NoSuchTriangleError(CatkitError, ValueError):
    """Angle/side data is not realized by any hyperbolic triangle."""


class NoLimitError(CatkitError):
    """An extrapolated limit did not converge (oscillating samples)."""


class DomainError(CatkitError, ValueError):
    """Scalar argument outside the domain of a closed-form constant."""


class IncompleteAnglesError(CatkitError):
    """A corner of an angled complex is missing its angle."""


class WrongArityError(CatkitError):
    """Face has the wrong number of boundary edges for the operation."""


class MalformedComplexError(CatkitError, ValueError):
    """Combinatorial data of a complex is inconsistent."""


class RealizationError(CatkitError):
    """Edge lengths / face curvatures are inconsistent with corner angles."""


class UnreachableError(CatkitError):
    """No path between query points (disconnected complex)."""


class UnusableComplexError(CatkitError):
    """The operation needs marked CAT(-1) points and the complex has none."""


class ConstructionError(CatkitError):
    """A generator's parameter regime does not admit a valid complex."""


class InvalidLinkError(CatkitError, ValueError):
    """Simplicial link input rejected (e.g. fails the flag condition)."""


class DegenerateConfigurationError(CatkitError, ValueError):
    """Certificate configuration collapses (coincident or collinear points)."""


class ComplexFileError(CatkitError, ValueError):
    """Complex file cannot be parsed; carries line information."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
