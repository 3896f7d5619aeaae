"""Operations on algebras themselves.

Basis permutations and general invertible basis changes, direct sums,
dimension products (commutative tensor product and noncommutative
doubling), and generation of the polynomial equation system that a
change-of-basis matrix must satisfy to carry one multiplication table
to another.  Solving those systems is out of scope; they are exported
in a deterministic text format for external solvers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _linalg
from .algebra import AlgebraDef, has_identity_first
from .errors import (
    DimMismatch,
    IndexOutOfRange,
    ParamClash,
    ParseError,
    SingularTransform,
    UnsupportedDoubling,
)
from .hcnumber import HNumber
from .ops import conjug, in_add, in_multi, scalar_mul
from .scalar import Scalar, ScalarLike, Symbol, coerce, parse_scalar


class BasisTransform:
    """An invertible n x n change-of-basis matrix over the scalar field.

    Invertibility is checked on construction; the inverse is computed once
    and reused.
    """

    def __init__(self, matrix: Sequence[Sequence[ScalarLike]]):
        rows = tuple(tuple(coerce(v) for v in row) for row in matrix)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ValueError("basis transform must be square and nonempty")
        if any(v.is_float for row in rows for v in row):
            raise ValueError("basis transforms must have exact entries")
        self.dim = n
        self.matrix = rows
        try:
            inv = _linalg.invert_exact([list(row) for row in rows])
        except _linalg.LinearSingular as exc:
            raise SingularTransform("basis transform is singular") from exc
        self.inverse = tuple(tuple(row) for row in inv)

    @staticmethod
    def identity(n: int) -> "BasisTransform":
        return BasisTransform(
            [[Scalar.one() if i == j else Scalar.zero() for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def permutation(n: int, s: int, t: int) -> "BasisTransform":
        """The transform swapping basis elements s and t (1-based)."""
        if not (1 <= s <= n and 1 <= t <= n):
            raise IndexOutOfRange(f"indices {s},{t} outside 1..{n}")
        perm = list(range(n))
        perm[s - 1], perm[t - 1] = perm[t - 1], perm[s - 1]
        return BasisTransform(
            [[Scalar.one() if perm[i] == j else Scalar.zero() for j in range(n)] for i in range(n)]
        )


def trans(algebra: AlgebraDef, s: int, t: int) -> AlgebraDef:
    """The algebra under the basis permutation swapping e_s and e_t.

    Rows, columns and the component index are all permuted together, so
    the result is a well-formed isomorphic algebra.
    """
    n = algebra.dim
    if not (1 <= s <= n and 1 <= t <= n):
        raise IndexOutOfRange(f"indices {s},{t} outside 1..{n}")
    perm = list(range(n))
    perm[s - 1], perm[t - 1] = perm[t - 1], perm[s - 1]
    g = algebra.gamma
    new_gamma = tuple(
        tuple(
            tuple(g[perm[i]][perm[j]][perm[k]] for k in range(n)) for j in range(n)
        )
        for i in range(n)
    )
    return AlgebraDef(
        name=f"{algebra.name}_t{s}{t}",
        dim=n,
        params=algebra.params,
        gamma=new_gamma,
        comment=f"{algebra.name} with e{s} and e{t} swapped",
        kind=algebra.kind,
    )


def gen_iso(
    transform: BasisTransform,
    algebra: AlgebraDef,
    new_basis: str,
    name: str | None = None,
) -> AlgebraDef:
    """The isomorphic algebra seen through f_r = sum_s L[r][s] e_s.

    New constants solve f_i f_j = sum_k gamma'_ij^k f_k exactly.
    """
    n = algebra.dim
    if transform.dim != n:
        raise DimMismatch(
            f"transform of dimension {transform.dim} applied to {algebra.name!r} of {n}"
        )
    left = transform.matrix
    inv = transform.inverse
    g = algebra.gamma
    zero = Scalar.zero()
    new_gamma = []
    for i in range(n):
        for_row = []
        for j in range(n):
            # c_k = coefficient of e_k in f_i * f_j
            c = [zero] * n
            for p in range(n):
                lip = left[i][p]
                if lip.is_zero():
                    continue
                for q in range(n):
                    ljq = left[j][q]
                    if ljq.is_zero():
                        continue
                    factor = lip * ljq
                    cell = g[p][q]
                    for k in range(n):
                        if not cell[k].is_zero():
                            c[k] = c[k] + factor * cell[k]
            # express in the f basis: gamma'_ij^m = sum_k c_k inv[k][m]
            for_row.append(
                tuple(
                    sum_scalars(c[k] * inv[k][m] for k in range(n) if not c[k].is_zero())
                    for m in range(n)
                )
            )
        new_gamma.append(tuple(for_row))
    return AlgebraDef(
        name=name or f"{algebra.name}_{new_basis}",
        dim=n,
        params=algebra.params,
        gamma=tuple(new_gamma),
        comment=f"basis change of {algebra.name} to basis {new_basis!r}",
        kind=algebra.kind,
    )


def sum_scalars(values) -> Scalar:
    total = Scalar.zero()
    for v in values:
        total = total + v
    return total


# ---------------------------------------------------------------------------
# Direct sums and dimension products
# ---------------------------------------------------------------------------

def _rename_params(algebra: AlgebraDef, renames: dict[str, str]) -> AlgebraDef:
    if not renames:
        return algebra
    bindings = {old: Scalar.symbol(new) for old, new in renames.items()}
    new_gamma = tuple(
        tuple(tuple(v.substitute(bindings) for v in cell) for cell in row)
        for row in algebra.gamma
    )
    new_params = tuple(Symbol(renames.get(p.name, p.name)) for p in algebra.params)
    return AlgebraDef(
        algebra.name, algebra.dim, new_params, new_gamma, algebra.comment, algebra.kind
    )


def _departed_params(a: AlgebraDef, b: AlgebraDef) -> tuple[AlgebraDef, AlgebraDef]:
    """Resolve parameter-symbol clashes by prefixing with the algebra name.

    Two algebras sharing a symbol AND the same table share the role, so the
    symbol is kept. Otherwise both sides are prefixed; if even the prefixed
    names collide the clash is unresolvable.
    """
    common = {p.name for p in a.params} & {p.name for p in b.params}
    if not common or a.same_table(b):
        return a, b
    ren_a = {p: f"{a.name}_{p}" for p in common}
    ren_b = {p: f"{b.name}_{p}" for p in common}
    if any(ren_a[p] == ren_b[p] for p in common):
        raise ParamClash(
            f"algebras {a.name!r} and {b.name!r} share parameters {sorted(common)} "
            "and cannot be disambiguated by name"
        )
    return _rename_params(a, ren_a), _rename_params(b, ren_b)


def dir_sum2(a: AlgebraDef, b: AlgebraDef, name: str) -> AlgebraDef:
    """Direct sum: block-diagonal structure constants."""
    a, b = _departed_params(a, b)
    n, na = a.dim + b.dim, a.dim
    zero = Scalar.zero()
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            cell = [zero] * n
            if i < na and j < na:
                for k in range(na):
                    cell[k] = a.gamma[i][j][k]
            elif i >= na and j >= na:
                for k in range(b.dim):
                    cell[na + k] = b.gamma[i - na][j - na][k]
            row.append(tuple(cell))
        gamma.append(tuple(row))
    return AlgebraDef(
        name=name,
        dim=n,
        params=a.params + b.params,
        gamma=tuple(gamma),
        comment=f"direct sum of {a.name} and {b.name}",
        kind="direct sum",
    )


def dir_sum_n(algebras: Sequence[AlgebraDef], name: str) -> AlgebraDef:
    """Direct sum of several systems: a left fold of pairwise sums."""
    if not algebras:
        raise ValueError("direct sum needs at least one algebra")
    if len(algebras) == 1:
        return algebras[0].renamed(name)
    total = algebras[0]
    for i, nxt in enumerate(algebras[1:], start=2):
        step_name = name if i == len(algebras) else f"{name}_{i}"
        total = dir_sum2(total, nxt, step_name)
    return total


def multi_dim(
    a: AlgebraDef,
    b: AlgebraDef,
    basis: str,
    mode: str,
    name: str,
) -> AlgebraDef:
    """Dimension product of two systems.

    mode 'commutative': the tensor product, pairing indices row-major
    ((i, u) -> (i-1)*b.dim + u).
    mode 'noncommutative': doubling of `a` by a 2-dimensional unital
    system b with e2^2 = p e1 + q e2, on pairs (x, y) of elements of `a`:

        (x1, y1)(x2, y2) = (x1 x2 + p conj(y1) y2,
                            y2 conj(x1) + y1 x2 + q conj(y1) y2)

    The conjugate placement is pinned by the doubling consistency tests:
    doubling the generalized complex system by itself must reproduce the
    stored 4-dimensional table cell for cell.
    """
    mode = mode.lower()
    if mode not in ("commutative", "noncommutative"):
        raise ValueError(f"unknown mode {mode!r}")
    a, b = _departed_params(a, b)
    if mode == "commutative":
        return _tensor_product(a, b, name)
    return _double(a, b, name)


def _tensor_product(a: AlgebraDef, b: AlgebraDef, name: str) -> AlgebraDef:
    na, nb = a.dim, b.dim
    n = na * nb
    zero = Scalar.zero()

    def pair(i: int, u: int) -> int:  # 0-based
        return i * nb + u

    gamma = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(na):
        for j in range(na):
            for u in range(nb):
                for v in range(nb):
                    r, s = pair(i, u), pair(j, v)
                    for k in range(na):
                        ga = a.gamma[i][j][k]
                        if ga.is_zero():
                            continue
                        for w in range(nb):
                            gb = b.gamma[u][v][w]
                            if not gb.is_zero():
                                gamma[r][s][pair(k, w)] = ga * gb
    return AlgebraDef(
        name=name,
        dim=n,
        params=a.params + b.params,
        gamma=tuple(tuple(tuple(cell) for cell in row) for row in gamma),
        comment=f"tensor product of {a.name} and {b.name}",
        kind="dimension product",
    )


def _double(a: AlgebraDef, b: AlgebraDef, name: str) -> AlgebraDef:
    if b.dim != 2 or not has_identity_first(b):
        raise UnsupportedDoubling(
            f"doubling needs a 2-dimensional unital system, got {b.name!r}"
        )
    if not has_identity_first(a):
        raise UnsupportedDoubling(
            f"doubling needs conjugation on {a.name!r}: e1 must be its identity"
        )
    p = b.constant(2, 2, 1)
    q = b.constant(2, 2, 2)
    na = a.dim
    n = 2 * na
    zero = Scalar.zero()

    def halves(index: int) -> tuple[HNumber, HNumber]:
        """Doubled basis element as a pair (x, y) over `a` (0-based index)."""
        x = [zero] * na
        y = [zero] * na
        if index < na:
            x[index] = Scalar.one()
        else:
            y[index - na] = Scalar.one()
        return HNumber(tuple(x)), HNumber(tuple(y))

    gamma = []
    for r in range(n):
        x1, y1 = halves(r)
        row = []
        for s in range(n):
            x2, y2 = halves(s)
            cy1 = conjug(y1, a)
            cx1 = conjug(x1, a)
            y1_y2 = in_multi(cy1, y2, a)
            first = in_add(in_multi(x1, x2, a), scalar_mul(p, y1_y2))
            second = in_add(
                in_add(in_multi(y2, cx1, a), in_multi(y1, x2, a)),
                scalar_mul(q, y1_y2),
            )
            row.append(tuple(first.coeffs) + tuple(second.coeffs))
        gamma.append(tuple(row))
    return AlgebraDef(
        name=name,
        dim=n,
        params=a.params + b.params,
        gamma=tuple(gamma),
        comment=f"noncommutative doubling of {a.name} by {b.name}",
        kind="dimension product",
    )


# ---------------------------------------------------------------------------
# Isomorphism systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsoSystem:
    """Polynomial conditions on L for L to carry `source` onto `target`.

    For each (i, j, m), 1-based:
        sum_k source_ij^k L[k][m] - sum_p sum_q L[i][p] L[j][q] target_pq^m = 0
    plus the nondegeneracy side condition det(L) != 0, recorded as the
    determinant polynomial.
    """

    source: AlgebraDef
    target: AlgebraDef
    unknowns: tuple[tuple[Symbol, ...], ...]
    equations: tuple[Scalar, ...]  # ordered by (i, j, m)
    det: Scalar

    @property
    def dim(self) -> int:
        return self.source.dim


def _unknown_prefix(a: AlgebraDef, b: AlgebraDef) -> str:
    prefix = "L"
    taken = {p.name for p in a.params} | {p.name for p in b.params}
    while any(t.startswith(prefix + "_") for t in taken):
        prefix += "L"
    return prefix


def sys_izo(source: AlgebraDef, target: AlgebraDef) -> IsoSystem:
    """Generate the n^3 isomorphism equations in canonical scalar form."""
    if source.dim != target.dim:
        raise DimMismatch(
            f"cannot relate {source.name!r} (dim {source.dim}) "
            f"and {target.name!r} (dim {target.dim})"
        )
    n = source.dim
    prefix = _unknown_prefix(source, target)
    unknowns = tuple(
        tuple(Symbol(f"{prefix}_{r}_{s}") for s in range(1, n + 1))
        for r in range(1, n + 1)
    )
    lsc = [[Scalar.symbol(sym) for sym in row] for row in unknowns]
    g, d = source.gamma, target.gamma
    equations: list[Scalar] = []
    for i in range(n):
        for j in range(n):
            for m in range(n):
                total = Scalar.zero()
                for k in range(n):
                    gk = g[i][j][k]
                    if not gk.is_zero():
                        total = total + gk * lsc[k][m]
                for pp in range(n):
                    for qq in range(n):
                        dm = d[pp][qq][m]
                        if not dm.is_zero():
                            total = total - lsc[i][pp] * lsc[j][qq] * dm
                equations.append(total)
    det = _linalg.det_exact(lsc)
    return IsoSystem(source, target, unknowns, tuple(equations), det)


def iso_substitute(system: IsoSystem, matrix: Sequence[Sequence[ScalarLike]]) -> list[Scalar]:
    """Residuals of all equations under a candidate matrix for L."""
    n = system.dim
    bindings = {
        system.unknowns[r][s]: coerce(matrix[r][s]) for r in range(n) for s in range(n)
    }
    return [eq.substitute(bindings) for eq in system.equations]


def iso_matrix_satisfies(system: IsoSystem, matrix: Sequence[Sequence[ScalarLike]]) -> bool:
    """True when a candidate L zeroes every equation and det(L) != 0."""
    residuals = iso_substitute(system, matrix)
    if any(not r.is_zero() for r in residuals):
        return False
    n = system.dim
    bindings = {
        system.unknowns[r][s]: coerce(matrix[r][s]) for r in range(n) for s in range(n)
    }
    return not system.det.substitute(bindings).is_zero()


def export_iso_system(system: IsoSystem) -> str:
    """Deterministic text export: unknowns, equations by (i, j, m), det."""
    n = system.dim
    lines = [f"unknown {sym.name}" for row in system.unknowns for sym in row]
    idx = 0
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for m in range(1, n + 1):
                lines.append(f"eq {i} {j} {m}: {system.equations[idx]}")
                idx += 1
    lines.append(f"nondegeneracy: {system.det}")
    return "\n".join(lines) + "\n"


def parse_iso_export(text: str) -> tuple[list[str], list[Scalar], Scalar]:
    """Inverse of export_iso_system, for round-trip checks and tooling."""
    unknowns: list[str] = []
    equations: list[Scalar] = []
    det: Scalar | None = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("unknown "):
            unknowns.append(line[len("unknown "):].strip())
        elif line.startswith("eq "):
            _, expr = line.split(":", 1)
            equations.append(parse_scalar(expr.strip()))
        elif line.startswith("nondegeneracy:"):
            det = parse_scalar(line.split(":", 1)[1].strip())
        else:
            raise ParseError(f"unrecognized line in iso-system export: {line!r}")
    if det is None:
        raise ParseError("iso-system export is missing the nondegeneracy line")
    return unknowns, equations, det
