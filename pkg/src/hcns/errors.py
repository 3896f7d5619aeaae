"""Exception hierarchy for the hcns package.

Errors are grouped so the CLI can map them onto stable exit codes:
lookup failures (exit 2), parse errors (exit 3), math errors (exit 4)
and storage errors (exit 5).
"""


class HcnsError(Exception):
    """Base class for all errors raised by this package."""


# --- parse-layer errors (CLI exit code 3) ---------------------------------

class ParseError(HcnsError):
    """Input text does not conform to the expected grammar.

    Carries the offending position (0-based character offset) when known.
    """

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class MixedBasis(ParseError):
    """Two different basis identifiers appear in one natural form."""


class BasisMismatch(ParseError):
    """Cayley-table cells do not all use the declared basis."""


# --- math-layer errors (CLI exit code 4) -----------------------------------

class MathError(HcnsError):
    """Base class for errors of the algebraic operations."""


class ExactnessMismatch(MathError):
    """Exact and floating-point values were mixed without explicit promotion."""


class DivisionByZero(MathError):
    """Exact scalar division by zero."""


class DimMismatch(MathError):
    """Operands have incompatible dimensions."""


class IndexOutOfRange(MathError):
    """A basis index lies outside 1..dim."""


class NoUnit(MathError):
    """The algebra has no two-sided identity element."""


class NotUnique(MathError):
    """The identity-element system is underdetermined."""


class UnitNotFirstBasis(MathError):
    """Conjugation requires the identity to be the first basis element."""


class NonScalarConjProduct(MathError):
    """A·conj(A) is not a multiple of the identity; carries the product."""

    def __init__(self, message: str, product=None):
        self.product = product
        super().__init__(message)


class SingularDivisor(MathError):
    """The divisor's multiplication matrix is not invertible (zero divisor)."""


class NoRootFound(MathError):
    """No square root / quadratic solution was found (not a nonexistence proof)."""


class SingularTransform(MathError):
    """A basis-change matrix is not invertible."""


class ParamClash(MathError):
    """Two algebras declare the same parameter symbol with different roles."""


class UnsupportedDoubling(MathError):
    """Dimension-doubling preconditions are not met."""


class ZeroAxis(MathError):
    """A rotation axis has zero length."""


class ZeroQuaternion(MathError):
    """A rotation quaternion has zero norm."""


class ValidationFailed(MathError):
    """An algebra definition has fatal validation findings."""


# --- lookup errors (CLI exit code 2) ----------------------------------------

class NotFound(HcnsError):
    """Registry lookup failed; carries nearest-name suggestions."""

    def __init__(self, message: str, suggestions: tuple[str, ...] = ()):
        self.suggestions = suggestions
        if suggestions:
            message = f"{message} (did you mean: {', '.join(suggestions)}?)"
        super().__init__(message)


class DuplicateName(HcnsError):
    """An algebra with this name already exists in the registry."""


class BuiltinProtected(HcnsError):
    """Built-in registry entries cannot be removed."""


# --- storage errors (CLI exit code 5) ---------------------------------------

class StorageError(HcnsError):
    """Base class for persistence problems."""


class CorruptFile(StorageError):
    """An algebra file could not be read; named and skipped with a warning."""
