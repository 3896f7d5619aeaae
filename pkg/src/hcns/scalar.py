"""Exact symbolic coefficients: the commutative ring the engine is generic over.

A :class:`Scalar` is one of four canonical forms:

* ``rational`` -- arbitrary-precision rational in lowest terms,
* ``poly``     -- multivariate polynomial with rational coefficients,
  no zero terms, at least one non-constant term,
* ``ratio``    -- reduced quotient of two polynomials, denominator monic
  under the graded-lexicographic term order,
* ``float``    -- IEEE binary64, for numeric work.

Exact and float values never mix inside one operation; promotion is
explicit via :meth:`Scalar.to_float`.  All values are immutable and all
operations are pure, so scalars are safe to share between threads.

Term order is graded lexicographic with symbols ordered by name, which
makes printing deterministic; equality is structural on the canonical
form, never textual.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

from . import _expr
from .errors import DivisionByZero, ExactnessMismatch, ParseError

_SYMBOL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")

# Relative tolerance of the float comparison documented in `equals`.
FLOAT_EQ_TOLERANCE = 1e-12


@dataclass(frozen=True, order=True)
class Symbol:
    """A named indeterminate; equality and ordering are by name."""

    name: str

    def __post_init__(self):
        if not _SYMBOL_RE.match(self.name):
            raise ValueError(f"invalid symbol name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


# ---------------------------------------------------------------------------
# Polynomial machinery on raw dicts.
#
# A monomial is a tuple of (symbol-name, exponent) pairs, sorted by name,
# exponents > 0; () is the constant monomial. A polynomial is a dict
# monomial -> nonzero Fraction. The empty dict is the zero polynomial.
# ---------------------------------------------------------------------------

Mono = tuple
PolyDict = dict

_P_ONE: PolyDict = {(): Fraction(1)}


def _m_mul(m1: Mono, m2: Mono) -> Mono:
    if not m1:
        return m2
    if not m2:
        return m1
    exps: dict[str, int] = dict(m1)
    for name, e in m2:
        exps[name] = exps.get(name, 0) + e
    return tuple(sorted(exps.items()))


def _m_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def _m_divides(m1: Mono, m2: Mono) -> bool:
    """Does m1 divide m2?"""
    d2 = dict(m2)
    return all(d2.get(name, 0) >= e for name, e in m1)


def _m_div(m2: Mono, m1: Mono) -> Mono:
    """m2 / m1, assuming divisibility."""
    exps = dict(m2)
    for name, e in m1:
        exps[name] -= e
    return tuple((n, e) for n, e in sorted(exps.items()) if e)


def _p_symbols(p: PolyDict) -> set[str]:
    names: set[str] = set()
    for m in p:
        names.update(n for n, _ in m)
    return names


def _grlex_key(universe: tuple[str, ...]):
    """Sort key for monomials over a fixed symbol universe (ascending names).

    Graded lexicographic: total degree first, ties broken by the exponent
    vector, where a larger exponent on an alphabetically earlier symbol wins.
    """

    def key(m: Mono):
        d = dict(m)
        return (_m_degree(m), tuple(d.get(name, 0) for name in universe))

    return key


def _p_sorted_terms(p: PolyDict) -> list[tuple[Mono, Fraction]]:
    """Terms in descending graded-lex order (deterministic printing)."""
    universe = tuple(sorted(_p_symbols(p)))
    key = _grlex_key(universe)
    return [(m, p[m]) for m in sorted(p, key=key, reverse=True)]


def _p_lead(p: PolyDict) -> tuple[Mono, Fraction]:
    universe = tuple(sorted(_p_symbols(p)))
    m = max(p, key=_grlex_key(universe))
    return m, p[m]


def _p_add(a: PolyDict, b: PolyDict) -> PolyDict:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _p_neg(a: PolyDict) -> PolyDict:
    return {m: -c for m, c in a.items()}


def _p_sub(a: PolyDict, b: PolyDict) -> PolyDict:
    return _p_add(a, _p_neg(b))


def _p_mul(a: PolyDict, b: PolyDict) -> PolyDict:
    out: PolyDict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = _m_mul(m1, m2)
            s = out.get(m)
            if s is None:
                out[m] = c1 * c2
            else:
                s = s + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
    return out


def _p_scale(a: PolyDict, c: Fraction) -> PolyDict:
    if not c:
        return {}
    return {m: coeff * c for m, coeff in a.items()}


class _InexactDivision(Exception):
    pass


def _p_divexact(a: PolyDict, b: PolyDict) -> PolyDict:
    """Exact multivariate division a / b; raises _InexactDivision otherwise.

    Standard single-divisor reduction: the graded-lex leading monomial of
    the remainder strictly decreases, and when b | a the remainder reaches
    zero with every leading term divisible along the way.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    ltb_m, ltb_c = _p_lead(b)
    q: PolyDict = {}
    r = dict(a)
    while r:
        ltr_m, ltr_c = _p_lead(r)
        if not _m_divides(ltb_m, ltr_m):
            raise _InexactDivision
        qm = _m_div(ltr_m, ltb_m)
        qc = ltr_c / ltb_c
        q[qm] = q.get(qm, Fraction(0)) + qc
        r = _p_sub(r, _p_mul({qm: qc}, b))
    return {m: c for m, c in q.items() if c}


def _p_rational_content(p: PolyDict) -> Fraction:
    """Positive rational c with p/c integer-coefficient and content 1."""
    nums = [abs(c.numerator) for c in p.values()]
    dens = [c.denominator for c in p.values()]
    return Fraction(reduce(math.gcd, nums), reduce(math.lcm, dens))


def _p_primitive(p: PolyDict) -> PolyDict:
    """Primitive part with positive graded-lex leading coefficient."""
    if not p:
        return {}
    c = _p_rational_content(p)
    _, lead = _p_lead(p)
    if lead < 0:
        c = -c
    return _p_scale(p, 1 / c)


# --- univariate view for the gcd recursion ---------------------------------

UniPoly = dict  # degree in the main variable -> PolyDict coefficient


def _p_to_univar(p: PolyDict, x: str) -> UniPoly:
    out: UniPoly = {}
    for m, c in p.items():
        d = dict(m)
        e = d.pop(x, 0)
        rest = tuple(sorted(d.items()))
        coeff = out.setdefault(e, {})
        s = coeff.get(rest, Fraction(0)) + c
        if s:
            coeff[rest] = s
        elif rest in coeff:
            del coeff[rest]
    return {e: c for e, c in out.items() if c}


def _p_from_univar(u: UniPoly, x: str) -> PolyDict:
    out: PolyDict = {}
    for e, coeff in u.items():
        xm: Mono = ((x, e),) if e else ()
        for m, c in coeff.items():
            mm = _m_mul(xm, m)
            s = out.get(mm)
            out[mm] = c if s is None else s + c
    return {m: c for m, c in out.items() if c}


def _u_degree(u: UniPoly) -> int:
    return max(u) if u else -1


def _u_content(u: UniPoly) -> PolyDict:
    g: PolyDict = {}
    for coeff in u.values():
        g = _p_gcd_raw(g, coeff)
        if g == _P_ONE:
            break
    return g


def _u_map(u: UniPoly, f) -> UniPoly:
    out = {e: f(c) for e, c in u.items()}
    return {e: c for e, c in out.items() if c}


def _u_prem_step_chain(a: UniPoly, b: UniPoly, x: str) -> UniPoly:
    """Pseudo-remainder of a by b in the main variable.

    Extra content-in-x factors are irrelevant because the caller takes
    primitive parts, so the classical lc^(d+1) normalization is skipped.
    """
    db = _u_degree(b)
    lcb = b[db]
    r = dict(a)
    while r and _u_degree(r) >= db:
        dr = _u_degree(r)
        lcr = r[dr]
        # r := lcb*r - lcr*b*x^(dr-db)
        new: UniPoly = {}
        for e, c in r.items():
            new[e] = _p_mul(lcb, c)
        for e, c in b.items():
            t = _p_mul(lcr, c)
            tgt = e + dr - db
            cur = new.get(tgt, {})
            cur = _p_sub(cur, t)
            new[tgt] = cur
        r = {e: c for e, c in new.items() if c}
    return r


def _p_gcd_raw(a: PolyDict, b: PolyDict) -> PolyDict:
    """Primitive multivariate gcd (positive leading coefficient).

    Primitive PRS: recurse on the content in the alphabetically first
    symbol, run a pseudo-remainder chain on the primitive parts.
    Constants are units in Q[...], so two nonzero constants have gcd 1.
    """
    if not a:
        return _p_primitive(b)
    if not b:
        return _p_primitive(a)
    syms = sorted(_p_symbols(a) | _p_symbols(b))
    if not syms:
        return dict(_P_ONE)
    x = syms[0]
    ua, ub = _p_to_univar(a, x), _p_to_univar(b, x)
    ca, cb = _u_content(ua), _u_content(ub)
    pa = _u_map(ua, lambda c: _p_divexact(c, ca))
    pb = _u_map(ub, lambda c: _p_divexact(c, cb))
    cg = _p_gcd_raw(ca, cb)
    if _u_degree(pa) < _u_degree(pb):
        pa, pb = pb, pa
    while pb:
        r = _u_prem_step_chain(pa, pb, x)
        cr = _u_content(r)
        pa, pb = pb, _u_map(r, lambda c: _p_divexact(c, cr)) if r else {}
    g = _p_mul(cg, _p_from_univar(pa, x))
    return _p_primitive(g)


# ---------------------------------------------------------------------------
# Scalar
# ---------------------------------------------------------------------------

_RATIONAL = "rational"
_POLY = "poly"
_RATIO = "ratio"
_FLOAT = "float"

ScalarLike = Union["Scalar", int, Fraction, float, Symbol]


class Scalar:
    """An immutable exact or floating-point coefficient value."""

    __slots__ = ("_kind", "_val")

    def __init__(self, kind: str, val):
        # Trusted constructor: val must already be canonical for kind.
        object.__setattr__(self, "_kind", kind)
        object.__setattr__(self, "_val", val)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # --- factories ---------------------------------------------------------

    @staticmethod
    def from_fraction(value: Fraction | int) -> "Scalar":
        return Scalar(_RATIONAL, Fraction(value))

    @staticmethod
    def from_int(value: int) -> "Scalar":
        return Scalar(_RATIONAL, Fraction(value))

    @staticmethod
    def from_float(value: float) -> "Scalar":
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"non-finite float scalar: {value!r}")
        return Scalar(_FLOAT, value + 0.0 if value != 0.0 else 0.0)

    @staticmethod
    def symbol(name: str | Symbol) -> "Scalar":
        sym = name if isinstance(name, Symbol) else Symbol(name)
        return Scalar(_POLY, {((sym.name, 1),): Fraction(1)})

    @staticmethod
    def zero() -> "Scalar":
        return _ZERO

    @staticmethod
    def one() -> "Scalar":
        return _ONE

    @staticmethod
    def _from_poly(p: PolyDict) -> "Scalar":
        if not p:
            return _ZERO
        if len(p) == 1 and () in p:
            return Scalar(_RATIONAL, p[()])
        return Scalar(_POLY, p)

    @staticmethod
    def _from_ratio(num: PolyDict, den: PolyDict) -> "Scalar":
        if not den:
            raise DivisionByZero("scalar division by zero")
        if not num:
            return _ZERO
        g = _p_gcd_raw(num, den)
        if g != _P_ONE:
            num = _p_divexact(num, g)
            den = _p_divexact(den, g)
        _, lc = _p_lead(den)
        if lc != 1:
            inv = 1 / lc
            num = _p_scale(num, inv)
            den = _p_scale(den, inv)
        if len(den) == 1 and () in den:
            # den is the constant 1 after monic normalization
            return Scalar._from_poly(num)
        return Scalar(_RATIO, (num, den))

    # --- inspection ---------------------------------------------------------

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def is_float(self) -> bool:
        return self._kind == _FLOAT

    @property
    def is_exact(self) -> bool:
        return self._kind != _FLOAT

    def as_fraction(self) -> Fraction:
        if self._kind != _RATIONAL:
            raise ValueError(f"not a rational scalar: {self}")
        return self._val

    def as_float(self) -> float:
        return self.to_float()._val

    def free_symbols(self) -> frozenset[str]:
        if self._kind == _POLY:
            return frozenset(_p_symbols(self._val))
        if self._kind == _RATIO:
            num, den = self._val
            return frozenset(_p_symbols(num) | _p_symbols(den))
        return frozenset()

    def to_float(self) -> "Scalar":
        """Explicit promotion to the float class; symbols cannot promote."""
        if self._kind == _FLOAT:
            return self
        if self._kind == _RATIONAL:
            return Scalar.from_float(float(self._val))
        raise ExactnessMismatch(
            f"cannot promote symbolic scalar {self} to float; bind its symbols first"
        )

    # --- lifting helpers ----------------------------------------------------

    def _as_pair(self) -> tuple[PolyDict, PolyDict]:
        """View an exact scalar as a (num, den) polynomial pair."""
        if self._kind == _RATIONAL:
            return ({(): self._val} if self._val else {}), dict(_P_ONE)
        if self._kind == _POLY:
            return self._val, dict(_P_ONE)
        return self._val

    @staticmethod
    def _check_same_class(x: "Scalar", y: "Scalar", opname: str):
        if x.is_float != y.is_float:
            raise ExactnessMismatch(
                f"{opname}: cannot mix exact {x if y.is_float else y} and "
                f"float {y if y.is_float else x}; promote explicitly with to_float()"
            )

    # --- ring operations ----------------------------------------------------

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = coerce(other)
        Scalar._check_same_class(self, other, "add")
        if self._kind == _FLOAT:
            return Scalar.from_float(self._val + other._val)
        if self._kind == _RATIONAL and other._kind == _RATIONAL:
            return Scalar(_RATIONAL, self._val + other._val)
        if self._kind != _RATIO and other._kind != _RATIO:
            return Scalar._from_poly(_p_add(self._as_pair()[0], other._as_pair()[0]))
        an, ad = self._as_pair()
        bn, bd = other._as_pair()
        return Scalar._from_ratio(_p_add(_p_mul(an, bd), _p_mul(bn, ad)), _p_mul(ad, bd))

    def __radd__(self, other: ScalarLike) -> "Scalar":
        return coerce(other) + self

    def __neg__(self) -> "Scalar":
        if self._kind == _FLOAT:
            return Scalar.from_float(-self._val)
        if self._kind == _RATIONAL:
            return Scalar(_RATIONAL, -self._val)
        if self._kind == _POLY:
            return Scalar(_POLY, _p_neg(self._val))
        num, den = self._val
        return Scalar(_RATIO, (_p_neg(num), den))

    def __sub__(self, other: ScalarLike) -> "Scalar":
        return self + (-coerce(other))

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return coerce(other) + (-self)

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = coerce(other)
        Scalar._check_same_class(self, other, "mul")
        if self._kind == _FLOAT:
            return Scalar.from_float(self._val * other._val)
        if self._kind == _RATIONAL and other._kind == _RATIONAL:
            return Scalar(_RATIONAL, self._val * other._val)
        if self._kind != _RATIO and other._kind != _RATIO:
            return Scalar._from_poly(_p_mul(self._as_pair()[0], other._as_pair()[0]))
        an, ad = self._as_pair()
        bn, bd = other._as_pair()
        return Scalar._from_ratio(_p_mul(an, bn), _p_mul(ad, bd))

    def __rmul__(self, other: ScalarLike) -> "Scalar":
        return coerce(other) * self

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = coerce(other)
        Scalar._check_same_class(self, other, "div")
        if self._kind == _FLOAT:
            if other._val == 0.0:
                raise DivisionByZero("float scalar division by zero")
            return Scalar.from_float(self._val / other._val)
        if other.is_zero():
            raise DivisionByZero(f"scalar division by zero: ({self})/({other})")
        if self._kind == _RATIONAL and other._kind == _RATIONAL:
            return Scalar(_RATIONAL, self._val / other._val)
        an, ad = self._as_pair()
        bn, bd = other._as_pair()
        return Scalar._from_ratio(_p_mul(an, bd), _p_mul(ad, bn))

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return coerce(other) / self

    def __pow__(self, exponent: int) -> "Scalar":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("scalar exponent must be a nonnegative integer")
        result = _ONE if self.is_exact else Scalar.from_float(1.0)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # --- predicates and comparison -------------------------------------------

    def is_zero(self) -> bool:
        if self._kind == _RATIONAL:
            return self._val == 0
        if self._kind == _FLOAT:
            return abs(self._val) <= FLOAT_EQ_TOLERANCE * max(1.0, abs(self._val))
        return False  # poly and ratio canonical forms are never zero

    def is_one(self) -> bool:
        return self._kind == _RATIONAL and self._val == 1

    def equals(self, other: ScalarLike) -> bool:
        """Comparison per the documented tolerance rule.

        Exact scalars compare structurally on canonical form; floats use
        |x - y| <= 1e-12 * max(1, |x|, |y|). Mixing classes raises.
        """
        other = coerce(other)
        Scalar._check_same_class(self, other, "equals")
        if self._kind == _FLOAT:
            x, y = self._val, other._val
            return abs(x - y) <= FLOAT_EQ_TOLERANCE * max(1.0, abs(x), abs(y))
        return self == other

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = coerce(other)
            else:
                return NotImplemented
        return self._kind == other._kind and self._val == other._val

    def __hash__(self) -> int:
        if self._kind == _POLY:
            v = tuple(sorted(self._val.items()))
        elif self._kind == _RATIO:
            num, den = self._val
            v = (tuple(sorted(num.items())), tuple(sorted(den.items())))
        else:
            v = self._val
        return hash((self._kind, v))

    # --- substitution ---------------------------------------------------------

    def substitute(self, bindings: Mapping) -> "Scalar":
        """Simultaneous substitution, then normalization.

        Unbound symbols survive. Binding a symbol of an exact expression to
        a float raises ExactnessMismatch: promote with to_float() afterwards
        instead.
        """
        if self._kind in (_RATIONAL, _FLOAT) or not bindings:
            return self
        named: dict[str, Scalar] = {}
        for key, value in bindings.items():
            name = key.name if isinstance(key, Symbol) else str(key)
            named[name] = coerce(value)
        free = self.free_symbols()
        used = {n: v for n, v in named.items() if n in free}
        if not used:
            return self
        for n, v in used.items():
            if v.is_float:
                raise ExactnessMismatch(
                    f"substituting float for {n} in exact expression {self}"
                )
        if self._kind == _POLY:
            return _poly_substitute(self._val, used)
        num, den = self._val
        den_s = _poly_substitute(den, used)
        if den_s.is_zero():
            raise DivisionByZero(f"substitution sends denominator of {self} to zero")
        return _poly_substitute(num, used) / den_s

    # --- printing ---------------------------------------------------------------

    def render(self, compact: bool = False) -> str:
        """Deterministic canonical text; re-parsing yields an equal scalar."""
        if self._kind == _RATIONAL:
            return str(self._val)
        if self._kind == _FLOAT:
            return repr(self._val)
        if self._kind == _POLY:
            return _render_poly(self._val, compact)
        num, den = self._val
        return f"({_render_poly(num, compact)})/({_render_poly(den, compact)})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar({self.render()})"


_ZERO = Scalar(_RATIONAL, Fraction(0))
_ONE = Scalar(_RATIONAL, Fraction(1))


def coerce(value: ScalarLike) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, bool):
        raise TypeError("cannot coerce bool to Scalar")
    if isinstance(value, int):
        return Scalar.from_int(value)
    if isinstance(value, Fraction):
        return Scalar.from_fraction(value)
    if isinstance(value, float):
        return Scalar.from_float(value)
    if isinstance(value, Symbol):
        return Scalar.symbol(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")


def _poly_substitute(p: PolyDict, values: Mapping[str, Scalar]) -> Scalar:
    total = _ZERO
    for m, c in p.items():
        term = Scalar(_RATIONAL, c)
        for name, e in m:
            v = values.get(name)
            factor = v if v is not None else Scalar.symbol(name)
            term = term * factor ** e
        total = total + term
    return total


def _render_poly(p: PolyDict, compact: bool) -> str:
    plus, minus = ("+", "-") if compact else (" + ", " - ")
    parts: list[str] = []
    for i, (m, c) in enumerate(_p_sorted_terms(p)):
        mono = "*".join(name if e == 1 else f"{name}^{e}" for name, e in m)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{minus}{body}" if c < 0 else f"{plus}{body}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# Module-level operation surface
# ---------------------------------------------------------------------------

def add(x: ScalarLike, y: ScalarLike) -> Scalar:
    return coerce(x) + y


def sub(x: ScalarLike, y: ScalarLike) -> Scalar:
    return coerce(x) - y


def mul(x: ScalarLike, y: ScalarLike) -> Scalar:
    return coerce(x) * y


def neg(x: ScalarLike) -> Scalar:
    return -coerce(x)


def div(x: ScalarLike, y: ScalarLike) -> Scalar:
    return coerce(x) / y


def substitute(x: ScalarLike, bindings: Mapping) -> Scalar:
    return coerce(x).substitute(bindings)


def is_zero(x: ScalarLike) -> bool:
    return coerce(x).is_zero()


def equals(x: ScalarLike, y: ScalarLike) -> bool:
    return coerce(x).equals(y)


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar grammar: integers, num/den, decimals, symbols,
    ``+ - * /``, ``^`` with nonnegative integer exponents, parentheses.
    Implicit multiplication is not allowed."""
    return _eval_scalar_node(_expr.parse_expression(text, allow_calls=False))


def _eval_scalar_node(node: _expr.Node) -> Scalar:
    if isinstance(node, _expr.Num):
        if isinstance(node.value, float):
            return Scalar.from_float(node.value)
        return Scalar.from_fraction(node.value)
    if isinstance(node, _expr.Name):
        return Scalar.symbol(node.ident)
    if isinstance(node, _expr.Neg):
        return -_eval_scalar_node(node.operand)
    if isinstance(node, _expr.Pow):
        return _eval_scalar_node(node.base) ** node.exponent
    if isinstance(node, _expr.BinOp):
        left = _eval_scalar_node(node.left)
        right = _eval_scalar_node(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    raise ParseError(f"unsupported construct in scalar expression", node.pos)


def symbols(names: Iterable[str] | str) -> tuple[Scalar, ...]:
    """Convenience: symbols("p q") or symbols(["p","q"]) -> symbol scalars."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return tuple(Scalar.symbol(n) for n in names)
