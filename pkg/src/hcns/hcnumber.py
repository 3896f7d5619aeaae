"""The two faces of a hypercomplex number.

Natural form is the human one, ``a_1*e1 + a_2*e2 + ...``: a sum of
coefficient-times-basis-element terms over a single basis identifier.
List form is the machine one: a plain ordered vector of scalars.  This
module owns both representations, the natural-form parser and the
bidirectional conversions; everything algebraic lives in :mod:`hcns.ops`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _expr
from .errors import (
    ExactnessMismatch,
    IndexOutOfRange,
    MixedBasis,
    ParseError,
)
from .scalar import Scalar, ScalarLike, coerce

_BASIS_NAME_OK = r"[A-Za-z]+"


def _check_uniform_exactness(coeffs: Sequence[Scalar], what: str):
    floats = [c.is_float for c in coeffs]
    if any(floats) and not all(floats):
        raise ExactnessMismatch(
            f"{what} mixes exact and float coefficients; promote explicitly"
        )


@dataclass(frozen=True)
class HNumber:
    """List form: an ordered vector of scalars, one per basis element."""

    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("HNumber needs at least one coefficient")
        _check_uniform_exactness(self.coeffs, "HNumber")

    @staticmethod
    def of(values: Iterable[ScalarLike]) -> "HNumber":
        return HNumber(tuple(coerce(v) for v in values))

    @staticmethod
    def zero(dim: int, float_class: bool = False) -> "HNumber":
        z = Scalar.from_float(0.0) if float_class else Scalar.zero()
        return HNumber((z,) * dim)

    @staticmethod
    def basis_vector(dim: int, index: int) -> "HNumber":
        if not 1 <= index <= dim:
            raise IndexOutOfRange(f"basis index {index} outside 1..{dim}")
        return HNumber(
            tuple(Scalar.one() if i == index else Scalar.zero() for i in range(1, dim + 1))
        )

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    @property
    def is_float(self) -> bool:
        return self.coeffs[0].is_float

    def __getitem__(self, index: int) -> Scalar:
        """1-based component access, matching all user-facing text."""
        if not 1 <= index <= self.dim:
            raise IndexOutOfRange(f"component {index} outside 1..{self.dim}")
        return self.coeffs[index - 1]

    def equals(self, other: "HNumber") -> bool:
        """Componentwise comparison (float components use the tolerance rule)."""
        return self.dim == other.dim and all(
            a.equals(b) for a, b in zip(self.coeffs, other.coeffs)
        )

    def to_float(self) -> "HNumber":
        return HNumber(tuple(c.to_float() for c in self.coeffs))

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"HNumber({self})"


@dataclass(frozen=True, eq=False)
class NaturalForm:
    """Normalized natural form: one term per index, ascending, no zeros.

    ``basis`` is None only for the zero form parsed from a bare ``0``; a
    zero form compares equal to any other zero form regardless of basis.
    """

    basis: str | None
    terms: tuple[tuple[Scalar, int], ...]

    def __post_init__(self):
        _check_uniform_exactness([c for c, _ in self.terms], "NaturalForm")

    @staticmethod
    def of(basis: str | None, terms: Iterable[tuple[ScalarLike, int]]) -> "NaturalForm":
        """Build a normalized form: collects duplicate indices, drops zeros."""
        if basis is not None and not _valid_basis(basis):
            raise ParseError(f"invalid basis identifier {basis!r}")
        acc: dict[int, Scalar] = {}
        for c, i in terms:
            if i < 1:
                raise IndexOutOfRange(f"basis index {i} must be >= 1")
            c = coerce(c)
            acc[i] = acc[i] + c if i in acc else c
        cleaned = tuple(
            (c, i) for i, c in sorted(acc.items()) if not c.is_zero()
        )
        return NaturalForm(basis, cleaned)

    @staticmethod
    def zero() -> "NaturalForm":
        return NaturalForm(None, ())

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, NaturalForm):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.basis == other.basis and self.terms == other.terms

    def __hash__(self) -> int:
        if not self.terms:
            return hash(())
        return hash((self.basis, self.terms))

    def render(self, compact: bool = False) -> str:
        return render_natural(self, compact)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"NaturalForm({self})"


def _valid_basis(name: str) -> bool:
    return name.isalpha() and name.isascii()


def name_bas(form: NaturalForm) -> str | None:
    """Basis identifier of a natural form; None for the bare zero form."""
    return form.basis


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

class _Lin:
    """Parse-time value: a linear combination of basis elements."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: str | None, coeffs: dict[int, Scalar]):
        self.basis = basis
        self.coeffs = coeffs


def _lin_merge_basis(a: str | None, b: str | None, pos: int) -> str | None:
    if a is None:
        return b
    if b is None:
        return a
    if a != b:
        raise MixedBasis(f"two basis identifiers in one natural form: {a!r} and {b!r}", pos)
    return a


def parse_natural(text: str) -> NaturalForm:
    """Parse a natural form.

    The grammar extends the scalar grammar with basis-element atoms (a run
    of letters followed by a run of digits, like ``e1``). Basis elements
    may be added, subtracted, and multiplied or divided by scalar
    expressions; products or powers of basis elements are rejected, as is
    any bare scalar summand other than the literal zero form ``0``.
    Symbols that look like basis elements (``a1``) are treated as basis
    references, never as coefficients; write ``a_1`` for coefficients.
    """
    node = _expr.parse_expression(text, allow_calls=False)
    value = _eval_natural_node(node)
    if isinstance(value, Scalar):
        if value.is_zero():
            return NaturalForm.zero()
        raise ParseError("a natural form must name basis elements in every term")
    return NaturalForm.of(value.basis, [(c, i) for i, c in value.coeffs.items()])


def _eval_natural_node(node: _expr.Node):
    if isinstance(node, _expr.Num):
        return coerce(node.value)
    if isinstance(node, _expr.Name):
        m = _expr.BASIS_ELEMENT_RE.match(node.ident)
        if m:
            index = int(m.group(2))
            if index < 1:
                raise ParseError(f"basis index in {node.ident!r} must be >= 1", node.pos)
            return _Lin(m.group(1), {index: Scalar.one()})
        return Scalar.symbol(node.ident)
    if isinstance(node, _expr.Neg):
        v = _eval_natural_node(node.operand)
        if isinstance(v, Scalar):
            return -v
        return _Lin(v.basis, {i: -c for i, c in v.coeffs.items()})
    if isinstance(node, _expr.Pow):
        v = _eval_natural_node(node.base)
        if isinstance(v, _Lin):
            raise ParseError("cannot raise basis elements to a power here", node.pos)
        return v ** node.exponent
    if isinstance(node, _expr.BinOp):
        left = _eval_natural_node(node.left)
        right = _eval_natural_node(node.right)
        lin_l, lin_r = isinstance(left, _Lin), isinstance(right, _Lin)
        if node.op in "+-":
            if lin_l and lin_r:
                basis = _lin_merge_basis(left.basis, right.basis, node.pos)
                out = dict(left.coeffs)
                for i, c in right.coeffs.items():
                    c = c if node.op == "+" else -c
                    out[i] = out[i] + c if i in out else c
                return _Lin(basis, out)
            if not lin_l and not lin_r:
                return left + right if node.op == "+" else left - right
            raise ParseError(
                "cannot add a bare coefficient to basis-element terms", node.pos
            )
        if node.op == "*":
            if lin_l and lin_r:
                raise ParseError(
                    "products of basis elements are not allowed in a natural form",
                    node.pos,
                )
            if lin_l:
                return _Lin(left.basis, {i: c * right for i, c in left.coeffs.items()})
            if lin_r:
                return _Lin(right.basis, {i: left * c for i, c in right.coeffs.items()})
            return left * right
        # division
        if lin_r:
            raise ParseError("cannot divide by basis elements in a natural form", node.pos)
        if lin_l:
            return _Lin(left.basis, {i: c / right for i, c in left.coeffs.items()})
        return left / right
    raise ParseError("unsupported construct in natural form", node.pos)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_natural(form: NaturalForm, compact: bool = False) -> str:
    """Deterministic text, ascending basis index; re-parses to an equal form."""
    if not form.terms:
        return "0"
    basis = form.basis or "e"
    plus, minus = ("+", "-") if compact else (" + ", " - ")
    parts: list[str] = []
    for n, (c, i) in enumerate(form.terms):
        elem = f"{basis}{i}"
        negative = False
        if c.kind in ("rational", "float"):
            if c.kind == "rational":
                frac = c.as_fraction()
                negative = frac < 0
                mag = abs(frac)
                body = elem if mag == 1 else f"{mag}*{elem}"
            else:
                v = c.as_float()
                negative = v < 0
                # float coefficients stay explicit so the exactness class survives
                body = f"{repr(abs(v))}*{elem}"
        elif c.kind == "poly":
            rendered = c.render(compact)
            if "+" in rendered or " - " in rendered or (compact and "-" in rendered[1:]):
                body = f"({rendered})*{elem}"
            elif rendered.startswith("-"):
                negative = True
                body = f"{rendered[1:]}*{elem}"
            else:
                body = f"{rendered}*{elem}"
        else:  # ratio renders as (num)/(den), already safe as a factor
            body = f"{c.render(compact)}*{elem}"
        if n == 0:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"{minus}{body}" if negative else f"{plus}{body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Conversions
# ---------------------------------------------------------------------------

def convert_a(form: NaturalForm, dim: int) -> HNumber:
    """Natural form to list form; absent indices become zeros.

    The result always has exactly `dim` components, also for incomplete
    (sparse) numbers.
    """
    if dim < 1:
        raise ValueError("dimension must be positive")
    for _, i in form.terms:
        if i > dim:
            raise IndexOutOfRange(f"term index {i} exceeds dimension {dim}")
    float_class = bool(form.terms) and form.terms[0][0].is_float
    zero = Scalar.from_float(0.0) if float_class else Scalar.zero()
    coeffs = [zero] * dim
    for c, i in form.terms:
        coeffs[i - 1] = c
    return HNumber(tuple(coeffs))


def viz_in_a(number: HNumber, basis_name: str) -> NaturalForm:
    """List form to natural form: one term per nonzero component."""
    if not _valid_basis(basis_name):
        raise ParseError(f"invalid basis identifier {basis_name!r}")
    terms = [
        (c, i) for i, c in enumerate(number.coeffs, start=1) if not c.is_zero()
    ]
    return NaturalForm(basis_name, tuple(terms))


def renam_a(form: NaturalForm, new_basis: str) -> NaturalForm:
    """Rename the basis identifier, keeping all terms."""
    if not _valid_basis(new_basis):
        raise ParseError(f"invalid basis identifier {new_basis!r}")
    return NaturalForm(new_basis, form.terms)


def hns_number(n: int, coeff_stem: str, basis_name: str) -> tuple[HNumber, NaturalForm]:
    """Generate a generic symbolic number of dimension n.

    Returns the pair (list form, natural form) with coefficients
    ``<stem>_1 .. <stem>_n``.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    if not _valid_basis(basis_name):
        raise ParseError(f"invalid basis identifier {basis_name!r}")
    coeffs = tuple(Scalar.symbol(f"{coeff_stem}_{i}") for i in range(1, n + 1))
    number = HNumber(coeffs)
    form = NaturalForm(basis_name, tuple((c, i) for i, c in enumerate(coeffs, 1)))
    return number, form


def list_hns(dim: int) -> HNumber:
    """Template list: the zero number of the given dimension."""
    return HNumber.zero(dim)


def refill(items: list, element) -> list:
    """Replenish a list by one element (returns a new list)."""
    return [*items, element]
