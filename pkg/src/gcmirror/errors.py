"""Exception types raised across the package."""


class GeometryError(ValueError):
    """Base class for all domain errors."""


class DimensionError(GeometryError):
    """Operands live in incompatible frames or have mismatched shapes."""


class InvalidStructureError(GeometryError):
    """A matrix fails the axioms required of the structure it claims to be."""


class DegenerateFormError(GeometryError):
    """A form that must be nondegenerate (invertible) is not."""


class RoleError(GeometryError):
    """A modulus was passed where the other parameter role is required."""


class ParseError(GeometryError):
    """Malformed textual input."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
