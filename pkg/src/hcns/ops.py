"""Algebraic operations on hypercomplex numbers within a given algebra.

The exact engine works over the scalar field; the numeric paths (square
roots, quadratic equations, anything starting from float coefficients)
run on numpy arrays after explicit promotion of the structure constants.
All functions are pure; numeric multi-start searches are seeded and
their results are merged deterministically.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Literal, Sequence

import numpy as np

from . import _linalg
from .algebra import AlgebraDef, has_identity_first
from .errors import (
    DimMismatch,
    ExactnessMismatch,
    MixedBasis,
    NonScalarConjProduct,
    NoRootFound,
    NotUnique,
    NoUnit,
    SingularDivisor,
    UnitNotFirstBasis,
)
from .hcnumber import HNumber, NaturalForm, convert_a, viz_in_a
from .scalar import Scalar, ScalarLike, coerce

Side = Literal["left", "right"]

NEWTON_RESIDUAL_TOL = 1e-10
NEWTON_STEP_TOL = 1e-12
NEWTON_MAX_ITER = 200
ROOT_DEDUP_TOL = 1e-8
_NEWTON_SEED = 20230817


def _check_dim(number: HNumber, algebra: AlgebraDef):
    if number.dim != algebra.dim:
        raise DimMismatch(
            f"number of dimension {number.dim} in algebra {algebra.name!r} "
            f"of dimension {algebra.dim}"
        )


# ---------------------------------------------------------------------------
# Linear operations
# ---------------------------------------------------------------------------

def in_add(a: HNumber, b: HNumber) -> HNumber:
    """Componentwise sum in list form."""
    if a.dim != b.dim:
        raise DimMismatch(f"cannot add dimensions {a.dim} and {b.dim}")
    return HNumber(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def in_neg(a: HNumber) -> HNumber:
    return HNumber(tuple(-x for x in a.coeffs))


def in_sub(a: HNumber, b: HNumber) -> HNumber:
    return in_add(a, in_neg(b))


def scalar_mul(factor: ScalarLike, a: HNumber) -> HNumber:
    """Multiply every component by one scalar."""
    factor = coerce(factor)
    return HNumber(tuple(factor * x for x in a.coeffs))


def _merged_basis(a: NaturalForm, b: NaturalForm) -> str | None:
    if a.basis is None:
        return b.basis
    if b.basis is None or a.basis == b.basis:
        return a.basis
    raise MixedBasis(f"operands use different bases {a.basis!r} and {b.basis!r}")


def add_natural(a: NaturalForm, b: NaturalForm, dim: int) -> NaturalForm:
    """Addition in natural form: convert, add, convert back collected."""
    basis = _merged_basis(a, b)
    total = in_add(convert_a(a, dim), convert_a(b, dim))
    return viz_in_a(total, basis or "e")


def subtr(a: NaturalForm, b: NaturalForm, dim: int) -> NaturalForm:
    basis = _merged_basis(a, b)
    total = in_sub(convert_a(a, dim), convert_a(b, dim))
    return viz_in_a(total, basis or "e")


# ---------------------------------------------------------------------------
# Multiplication
# ---------------------------------------------------------------------------

_gamma_float_cache: "weakref.WeakKeyDictionary[AlgebraDef, np.ndarray]" = (
    weakref.WeakKeyDictionary()
)


def gamma_float(algebra: AlgebraDef) -> np.ndarray:
    """The structure tensor as a float array; parameters must be absent."""
    cached = _gamma_float_cache.get(algebra)
    if cached is not None:
        return cached
    if algebra.params:
        raise ExactnessMismatch(
            f"algebra {algebra.name!r} has parameters "
            f"{[p.name for p in algebra.params]}; bind them before numeric work"
        )
    n = algebra.dim
    g = np.empty((n, n, n), dtype=float)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                g[i, j, k] = algebra.gamma[i][j][k].to_float().as_float()
    g.setflags(write=False)
    _gamma_float_cache[algebra] = g
    return g


def _as_array(a: HNumber) -> np.ndarray:
    return np.array([c.as_float() for c in a.coeffs], dtype=float)


def _from_array(x: np.ndarray) -> HNumber:
    return HNumber(tuple(Scalar.from_float(float(v)) for v in x))


def _mul_array(g: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("i,j,ijk->k", a, b, g)


def in_multi(a: HNumber, b: HNumber, algebra: AlgebraDef) -> HNumber:
    """The product in list form: result_k = sum_ij a_i b_j gamma_ij^k."""
    _check_dim(a, algebra)
    _check_dim(b, algebra)
    if a.is_float or b.is_float:
        if not (a.is_float and b.is_float):
            raise ExactnessMismatch("cannot multiply exact by float number")
        g = gamma_float(algebra)
        return _from_array(_mul_array(g, _as_array(a), _as_array(b)))
    n = algebra.dim
    gamma = algebra.gamma
    zero = Scalar.zero()
    out = [zero] * n
    for i, ai in enumerate(a.coeffs):
        if ai.is_zero():
            continue
        row = gamma[i]
        for j, bj in enumerate(b.coeffs):
            if bj.is_zero():
                continue
            cell = row[j]
            ab = ai * bj
            for k in range(n):
                c = cell[k]
                if not c.is_zero():
                    out[k] = out[k] + ab * c
    return HNumber(tuple(out))


def nat_multi(
    a: NaturalForm, b: NaturalForm, algebra: AlgebraDef, out_basis: str
) -> NaturalForm:
    """Multiply in natural form: convert, multiply in list form, render back."""
    product = in_multi(convert_a(a, algebra.dim), convert_a(b, algebra.dim), algebra)
    return viz_in_a(product, out_basis)


# ---------------------------------------------------------------------------
# Multiplication matrices and division
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MulMatrix:
    """Linearization of the product in one argument.

    side 'left':  m[k][j] = sum_i a_i gamma_ij^k, so m @ x = (a*x).
    side 'right': m[k][i] = sum_j gamma_ij^k a_j, so m @ x = (x*a).
    """

    side: Side
    m: tuple[tuple[Scalar, ...], ...]


def mul_matrix(a: HNumber, algebra: AlgebraDef, side: Side) -> MulMatrix:
    _check_dim(a, algebra)
    n = algebra.dim
    gamma = algebra.gamma
    zero = Scalar.zero()
    rows = []
    for k in range(n):
        row = []
        for x in range(n):
            s = zero
            if side == "left":
                for i, ai in enumerate(a.coeffs):
                    c = gamma[i][x][k]
                    if not ai.is_zero() and not c.is_zero():
                        s = s + ai * c
            else:
                for j, aj in enumerate(a.coeffs):
                    c = gamma[x][j][k]
                    if not aj.is_zero() and not c.is_zero():
                        s = s + aj * c
            row.append(s)
        rows.append(tuple(row))
    return MulMatrix(side, tuple(rows))


def divis(b: HNumber, a: HNumber, algebra: AlgebraDef, side: Side = "left") -> HNumber:
    """Division: the x solving a*x = b ('left') or x*a = b ('right').

    Exact coefficients go through exact Gaussian elimination over the
    rational-function field; float coefficients go through LAPACK with
    partial pivoting. Raises SingularDivisor when a's multiplication
    matrix is not invertible (a is zero or a zero divisor).
    """
    _check_dim(a, algebra)
    _check_dim(b, algebra)
    if a.is_float or b.is_float:
        if not (a.is_float and b.is_float):
            raise ExactnessMismatch("cannot divide exact by float number")
        g = gamma_float(algebra)
        av = _as_array(a)
        if side == "left":
            m = np.einsum("i,ijk->jk", av, g).T
        else:
            m = np.einsum("j,ijk->ik", av, g).T
        try:
            x = np.linalg.solve(m, _as_array(b))
        except np.linalg.LinAlgError as exc:
            raise SingularDivisor(f"divisor {a} is singular in {algebra.name}") from exc
        if not np.all(np.isfinite(x)):
            raise SingularDivisor(f"divisor {a} is singular in {algebra.name}")
        return _from_array(x)
    matrix = mul_matrix(a, algebra, side)
    try:
        x = _linalg.solve_exact([list(r) for r in matrix.m], list(b.coeffs))
    except (_linalg.LinearInconsistent, _linalg.LinearUnderdetermined) as exc:
        raise SingularDivisor(
            f"divisor {a} is a zero divisor in {algebra.name}"
        ) from exc
    return HNumber(tuple(x))


# ---------------------------------------------------------------------------
# Identity, conjugation, norm
# ---------------------------------------------------------------------------

_unit_cache: "weakref.WeakKeyDictionary[AlgebraDef, HNumber]" = (
    weakref.WeakKeyDictionary()
)


def unit(algebra: AlgebraDef) -> HNumber:
    """The two-sided identity, solved exactly from the linear system.

    Raises NoUnit when the system is inconsistent and NotUnique when it is
    underdetermined.
    """
    cached = _unit_cache.get(algebra)
    if cached is not None:
        return cached
    n = algebra.dim
    gamma = algebra.gamma
    one, zero = Scalar.one(), Scalar.zero()
    rows: list[list[Scalar]] = []
    rhs: list[Scalar] = []
    for j in range(n):
        for k in range(n):
            # left identity: sum_i E_i gamma_ij^k = delta_jk
            rows.append([gamma[i][j][k] for i in range(n)])
            rhs.append(one if j == k else zero)
    for i in range(n):
        for k in range(n):
            # right identity: sum_j gamma_ij^k E_j = delta_ik
            rows.append([gamma[i][j][k] for j in range(n)])
            rhs.append(one if i == k else zero)
    try:
        e = _linalg.solve_exact(rows, rhs)
    except _linalg.LinearInconsistent as exc:
        raise NoUnit(f"algebra {algebra.name!r} has no two-sided identity") from exc
    except _linalg.LinearUnderdetermined as exc:
        raise NotUnique(
            f"identity of algebra {algebra.name!r} is not unique"
        ) from exc
    result = HNumber(tuple(e))
    _unit_cache[algebra] = result
    return result


def _require_unit_first(algebra: AlgebraDef):
    if not has_identity_first(algebra):
        raise UnitNotFirstBasis(
            f"conjugation needs e1 to be the two-sided identity of {algebra.name!r}"
        )


def conjug(a: HNumber, algebra: AlgebraDef) -> HNumber:
    """Conjugate: keep the identity component, negate all others.

    Defined only when e1 is the two-sided identity.
    """
    _check_dim(a, algebra)
    _require_unit_first(algebra)
    return HNumber((a.coeffs[0],) + tuple(-c for c in a.coeffs[1:]))


def norma(a: HNumber, algebra: AlgebraDef) -> Scalar:
    """The norm: identity component of a * conj(a), when that product is scalar.

    Raises NonScalarConjProduct (carrying the full product) otherwise.
    """
    product = in_multi(a, conjug(a, algebra), algebra)
    if all(c.is_zero() for c in product.coeffs[1:]):
        return product.coeffs[0]
    raise NonScalarConjProduct(
        f"a*conj(a) is not scalar in {algebra.name!r}: {product}", product=product
    )


# ---------------------------------------------------------------------------
# Square roots and quadratic equations (numeric multi-start Newton
# plus a small exact path for unital 2-dimensional commutative systems)
# ---------------------------------------------------------------------------

def _frac_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None."""
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def _exact_rad2_dim_le2(a: HNumber, algebra: AlgebraDef) -> list[HNumber] | None:
    """All rational-coefficient roots for n<=2, e1 identity, e2^2 = u e1 + v e2.

    Returns None when this shape does not apply (caller falls back to the
    numeric path).
    """
    n = algebra.dim
    if n > 2 or not has_identity_first(algebra):
        return None
    if n == 1:
        c0 = a.coeffs[0]
        if c0.kind != "rational":
            return None
        r = _frac_sqrt(c0.as_fraction())
        if r is None:
            return []
        return [HNumber.of([x]) for x in sorted({r, -r})]
    u_s, v_s = algebra.constant(2, 2, 1), algebra.constant(2, 2, 2)
    if u_s.kind != "rational" or v_s.kind != "rational":
        return None
    if any(c.kind != "rational" for c in a.coeffs):
        return None
    u, v = u_s.as_fraction(), v_s.as_fraction()
    a1, a2 = a.coeffs[0].as_fraction(), a.coeffs[1].as_fraction()
    solutions: set[tuple[Fraction, Fraction]] = set()
    if a2 == 0:
        r = _frac_sqrt(a1)
        if r is not None:
            solutions.update({(r, Fraction(0)), (-r, Fraction(0))})
    # x2 != 0 branch: t = x2^2 solves (v^2+4u) t^2 - (2 a2 v + 4 a1) t + a2^2 = 0
    lead = v * v + 4 * u
    mid = -(2 * a2 * v + 4 * a1)
    const = a2 * a2
    ts: list[Fraction] = []
    if lead == 0:
        if mid != 0:
            ts.append(-const / mid)
    else:
        disc = mid * mid - 4 * lead * const
        rdisc = _frac_sqrt(disc) if disc >= 0 else None
        if rdisc is not None:
            ts.extend([(-mid + rdisc) / (2 * lead), (-mid - rdisc) / (2 * lead)])
    for t in ts:
        if t <= 0:
            continue
        x2 = _frac_sqrt(t)
        if x2 is None:
            continue
        for s in (x2, -x2):
            x1 = (a2 - v * t) / (2 * s)
            solutions.add((x1, s))
    roots = [HNumber.of(list(sol)) for sol in sorted(solutions)]
    return [x for x in roots if in_multi(x, x, algebra).equals(a)]


def _newton_search(
    objective,
    jacobian,
    starts: Sequence[np.ndarray],
) -> list[np.ndarray]:
    found: list[np.ndarray] = []
    for start in starts:
        x = np.array(start, dtype=float)
        fx = objective(x)
        res = np.max(np.abs(fx))
        for _ in range(NEWTON_MAX_ITER):
            if res <= NEWTON_RESIDUAL_TOL:
                break
            j = jacobian(x)
            try:
                dx = np.linalg.solve(j, -fx)
            except np.linalg.LinAlgError:
                dx, *_ = np.linalg.lstsq(j, -fx, rcond=None)
            if not np.all(np.isfinite(dx)):
                break
            lam = 1.0
            while lam > 1e-7:
                x_new = x + lam * dx
                f_new = objective(x_new)
                r_new = np.max(np.abs(f_new))
                if r_new < res or not np.isfinite(res):
                    break
                lam *= 0.5
            else:
                break
            step = np.max(np.abs(lam * dx))
            x, fx, res = x_new, f_new, r_new
            if step <= NEWTON_STEP_TOL:
                break
        if res <= NEWTON_RESIDUAL_TOL and np.all(np.isfinite(x)):
            found.append(x)
    return found


def _dedup_sorted(candidates: list[np.ndarray]) -> list[np.ndarray]:
    """Deterministic merge: lexicographic sort, then greedy de-duplication."""
    ordered = sorted(candidates, key=lambda v: tuple(v))
    kept: list[np.ndarray] = []
    for x in ordered:
        if all(np.max(np.abs(x - y)) > ROOT_DEDUP_TOL for y in kept):
            kept.append(x)
    return kept


def _newton_starts(n: int, scale: float, structured: list[np.ndarray]) -> list[np.ndarray]:
    rng = np.random.default_rng(_NEWTON_SEED)
    starts = list(structured)
    while len(starts) < 2 * n + 4:
        starts.append(rng.normal(scale=max(scale, 1.0), size=n))
    return starts


def rad2(a: HNumber, algebra: AlgebraDef) -> list[HNumber]:
    """All square roots found for a (a report, not a completeness proof).

    Exact path: unital 2-dimensional commutative systems with rational
    input, returning rational-coefficient roots. Everything else is the
    numeric path: exact inputs are promoted, and damped Newton runs from
    2n+4 deterministic starts; every root re-verifies to residual 1e-10
    and the result list is de-duplicated at 1e-8.
    """
    _check_dim(a, algebra)
    if not a.is_float:
        exact = _exact_rad2_dim_le2(a, algebra)
        if exact:
            return exact
        try:
            a = a.to_float()
        except ExactnessMismatch:
            if exact is not None:
                raise NoRootFound(
                    f"no exact square root of {a} in {algebra.name!r}"
                ) from None
            raise
    g = gamma_float(algebra)
    av = _as_array(a)
    n = algebra.dim

    def objective(x: np.ndarray) -> np.ndarray:
        return _mul_array(g, x, x) - av

    def jacobian(x: np.ndarray) -> np.ndarray:
        left = np.einsum("i,ijk->jk", x, g).T
        right = np.einsum("j,ijk->ik", x, g).T
        return left + right

    scale = float(np.sqrt(max(1.0, np.max(np.abs(av)))))
    e1 = np.zeros(n)
    e1[0] = scale
    structured = [
        e1,
        -e1,
        np.sign(av) * np.sqrt(np.abs(av)),
        -np.sign(av) * np.sqrt(np.abs(av)),
    ]
    roots = _dedup_sorted(_newton_search(objective, jacobian, _newton_starts(n, scale, structured)))
    if not roots:
        raise NoRootFound(f"no square root of {a} found in {algebra.name!r}")
    return [_from_array(x) for x in roots]


def _is_commutative_tensor(algebra: AlgebraDef) -> bool:
    g = algebra.gamma
    n = algebra.dim
    return all(
        g[i][j][k] == g[j][i][k] for i in range(n) for j in range(n) for k in range(n)
    )


def sqrt_eq(
    a: HNumber, b: HNumber, c: HNumber, algebra: AlgebraDef
) -> list[HNumber]:
    """Roots of the quadratic a*(x*x) + b*x + c = 0 (left-coefficient form).

    Multi-start Newton on the coefficient system; in commutative algebras
    with invertible a, the closed form x = (±r - b) / (2a) over
    r in rad2(b*b - 4*a*c) contributes additional candidates. Every
    returned root re-verifies to residual 1e-10.
    """
    for operand in (a, b, c):
        _check_dim(operand, algebra)
    a, b, c = (op if op.is_float else op.to_float() for op in (a, b, c))
    g = gamma_float(algebra)
    av, bv, cv = _as_array(a), _as_array(b), _as_array(c)
    n = algebra.dim
    mla = np.einsum("i,ijk->jk", av, g).T
    mlb = np.einsum("i,ijk->jk", bv, g).T

    def objective(x: np.ndarray) -> np.ndarray:
        return mla @ _mul_array(g, x, x) + mlb @ x + cv

    def jacobian(x: np.ndarray) -> np.ndarray:
        left = np.einsum("i,ijk->jk", x, g).T
        right = np.einsum("j,ijk->ik", x, g).T
        return mla @ (left + right) + mlb

    scale = float(np.sqrt(max(1.0, np.max(np.abs(cv)), np.max(np.abs(bv)))))
    e1 = np.zeros(n)
    e1[0] = scale
    structured = [np.zeros(n), e1, -e1, np.full(n, 0.5 * scale)]
    candidates = _newton_search(objective, jacobian, _newton_starts(n, scale, structured))

    if _is_commutative_tensor(algebra):
        try:
            two_a = scalar_mul(Scalar.from_float(2.0), a)
            disc = in_sub(
                in_multi(b, b, algebra),
                scalar_mul(Scalar.from_float(4.0), in_multi(a, c, algebra)),
            )
            for r in rad2(disc, algebra):
                for sign in (1.0, -1.0):
                    num = in_add(scalar_mul(Scalar.from_float(sign), r), in_neg(b))
                    candidates.append(_as_array(divis(num, two_a, algebra)))
        except (NoRootFound, SingularDivisor):
            pass

    verified = [x for x in candidates if np.max(np.abs(objective(x))) <= NEWTON_RESIDUAL_TOL]
    roots = _dedup_sorted(verified)
    if not roots:
        raise NoRootFound(f"no quadratic root found in {algebra.name!r}")
    return [_from_array(x) for x in roots]
