"""Exceptions raised by the quadmod app."""


class QuadModError(Exception):
    """Base class for every error raised by the workbench."""


class SingularMatrix(QuadModError):
    """A matrix that had to be inverted is singular."""


class SingularGram(SingularMatrix):
    """A Gram form is not invertible, so a null space was left unquotiented."""


class NotHermitian(QuadModError):
    """A form that must satisfy G^H = G does not."""


class DimensionMismatch(QuadModError):
    """Tensors or matrices have inconsistent shapes."""


class LambdaNotFaithful(QuadModError):
    """Some minimal idempotent is sent to 0 by a derived λ map."""


class NotInSubalgebra(QuadModError):
    """An element of B_i expected to lie in the image of A does not."""


class InvalidParameter(QuadModError, ValueError):
    """A builder or pipeline parameter is out of range."""


class DegenerateQuotient(QuadModError):
    """A relative tensor product collapsed to the zero space."""


class DepthTooSmall(InvalidParameter):
    """The truncation depth is below what the requested stage needs."""


class NotInBCirc(QuadModError):
    """An operator on H does not lie in the span generated by φ₁(B₁) and φ₂(B₂)."""


class AssumptionsViolated(QuadModError):
    """The standing assumptions for computing λ_∘ fail on the window."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(QuadModError):
    """A spec document or descriptor could not be parsed."""

    def __init__(self, message, field=None, line=None):
        context = []
        if field is not None:
            context.append(f'field {field}')
        if line is not None:
            context.append(f'line {line}')
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)
        self.field = field
        self.line = line


class SchemaVersionMismatch(ParseError):
    """A spec document declares a schema other than quadmod-spec-v1."""


class TooLarge(QuadModError):
    """The requested Fock truncation exceeds QUADMOD_MAX_DIM."""


INPUT_ERRORS = (
    ParseError,
    InvalidParameter,
    TooLarge,
    DimensionMismatch,
)
