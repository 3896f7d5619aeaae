"""Hypercomplex number systems as structure-constant tensors.

An algebra of dimension n is a name plus an n*n*n tensor ``gamma`` of
exact scalars: the product of basis elements i and j is
``sum_k gamma[i][j][k] * e_k``.  Equivalently, the Cayley table is the
n*n grid whose cell (i, j) is the vector ``gamma[i][j]`` -- the
three-level list view: rows, then cells, then the structure-constant
list of one cell.  Indices are 1-based in every user-facing surface;
storage is 0-based tuples.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BasisMismatch, CorruptFile, MixedBasis, ParseError
from .hcnumber import NaturalForm, parse_natural, render_natural
from .scalar import Scalar, ScalarLike, Symbol, coerce, parse_scalar

GammaTensor = tuple[tuple[tuple[Scalar, ...], ...], ...]


@dataclass(frozen=True)
class AlgebraDef:
    """An immutable hypercomplex number system definition."""

    name: str
    dim: int
    params: tuple[Symbol, ...]
    gamma: GammaTensor
    comment: str = ""
    kind: str = ""

    def __post_init__(self):
        if not self.name:
            raise ValueError("algebra name must be nonempty")
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        n = self.dim
        if len(self.gamma) != n or any(
            len(row) != n or any(len(cell) != n for cell in row) for row in self.gamma
        ):
            raise ValueError(f"gamma tensor of {self.name!r} is not {n}x{n}x{n}")

    @staticmethod
    def of(
        name: str,
        gamma: Sequence[Sequence[Sequence[ScalarLike]]],
        params: Iterable[str | Symbol] = (),
        comment: str = "",
        kind: str = "",
    ) -> "AlgebraDef":
        tensor = tuple(
            tuple(tuple(coerce(v) for v in cell) for cell in row) for row in gamma
        )
        syms = tuple(p if isinstance(p, Symbol) else Symbol(p) for p in params)
        return AlgebraDef(name, len(tensor), syms, tensor, comment, kind)

    def constant(self, i: int, j: int, k: int) -> Scalar:
        """gamma_ij^k with 1-based indices."""
        return self.gamma[i - 1][j - 1][k - 1]

    def cell(self, i: int, j: int) -> "CayleyCell":
        return CayleyCell(i, j, self.gamma[i - 1][j - 1])

    def renamed(self, new_name: str) -> "AlgebraDef":
        return replace(self, name=new_name)

    def same_table(self, other: "AlgebraDef") -> bool:
        """Structural tensor equality, ignoring name and metadata."""
        return self.dim == other.dim and self.gamma == other.gamma

    def __str__(self) -> str:
        ps = f"({', '.join(p.name for p in self.params)})" if self.params else ""
        return f"{self.name}{ps}: dim {self.dim}"


@dataclass(frozen=True)
class CayleyCell:
    """One cell of a Cayley table: the structure-constant list at (row, col)."""

    row: int
    col: int
    value: tuple[Scalar, ...]


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    severity: str  # 'fatal' | 'info'
    code: str
    message: str


def validate(algebra: AlgebraDef) -> list[Finding]:
    """Check well-formedness and report structural facts.

    Fatal findings: non-exact entries, entries using symbols outside the
    declared parameters. Informational findings: whether e1 is a two-sided
    identity, whether the table is commutative, and whether it is
    associative (expanded symbolically over all triples). Associativity is
    informational only; nothing in this package assumes it silently.
    """
    findings: list[Finding] = []
    allowed = {p.name for p in algebra.params}
    shape_ok = True
    for i, row in enumerate(algebra.gamma, 1):
        for j, cell in enumerate(row, 1):
            for k, value in enumerate(cell, 1):
                if value.is_float:
                    findings.append(
                        Finding(
                            "fatal",
                            "non-exact-entry",
                            f"gamma[{i}][{j}][{k}] is a float; structure constants must be exact",
                        )
                    )
                    shape_ok = False
                    continue
                stray = value.free_symbols() - allowed
                if stray:
                    findings.append(
                        Finding(
                            "fatal",
                            "undeclared-symbol",
                            f"gamma[{i}][{j}][{k}] uses undeclared symbols {sorted(stray)}",
                        )
                    )
                    shape_ok = False
    if not shape_ok:
        return findings

    n = algebra.dim
    g = algebra.gamma

    identity = all(
        g[0][j - 1][k - 1].equals(Scalar.one() if j == k else Scalar.zero())
        and g[j - 1][0][k - 1].equals(Scalar.one() if j == k else Scalar.zero())
        for j in range(1, n + 1)
        for k in range(1, n + 1)
    )
    findings.append(
        Finding(
            "info",
            "identity",
            "e1 is a two-sided identity" if identity else "e1 is not a two-sided identity",
        )
    )

    commutative = all(
        g[i][j][k] == g[j][i][k] for i in range(n) for j in range(n) for k in range(n)
    )
    findings.append(
        Finding("info", "commutative", "commutative" if commutative else "noncommutative")
    )

    associative = _is_associative(algebra)
    findings.append(
        Finding("info", "associative", "associative" if associative else "nonassociative")
    )
    return findings


def _is_associative(algebra: AlgebraDef) -> bool:
    """(e_i e_j) e_k == e_i (e_j e_k) for all triples, expanded symbolically."""
    n = algebra.dim
    g = algebra.gamma
    zero = Scalar.zero()
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for t in range(n):
                    left = zero
                    right = zero
                    for m in range(n):
                        gijm = g[i][j][m]
                        if not gijm.is_zero():
                            left = left + gijm * g[m][k][t]
                        gjkm = g[j][k][m]
                        if not gjkm.is_zero():
                            right = right + g[i][m][t] * gjkm
                    if left != right:
                        return False
    return True


def has_identity_first(algebra: AlgebraDef) -> bool:
    """True when e1 is a two-sided identity (fast direct check)."""
    n = algebra.dim
    g = algebra.gamma
    one, zero = Scalar.one(), Scalar.zero()
    return all(
        g[0][j][k] == (one if j == k else zero) and g[j][0][k] == (one if j == k else zero)
        for j in range(n)
        for k in range(n)
    )


def fatal_findings(findings: Iterable[Finding]) -> list[Finding]:
    return [f for f in findings if f.severity == "fatal"]


# ---------------------------------------------------------------------------
# Natural-table conversion
# ---------------------------------------------------------------------------

def in_convert_hns(
    natural_table: Sequence[Sequence[NaturalForm | str]],
    name: str,
    params: Iterable[str | Symbol] = (),
    comment: str = "",
    kind: str = "",
) -> AlgebraDef:
    """Cayley table in natural view -> structure-constant tensor.

    Cells may be NaturalForm values or natural-form text (the literal "0"
    is the zero cell). All nonzero cells must share one basis identifier.
    """
    n = len(natural_table)
    if n < 1 or any(len(row) != n for row in natural_table):
        raise ValueError("natural table must be square and nonempty")
    basis: str | None = None
    parsed: list[list[NaturalForm]] = []
    for row in natural_table:
        prow: list[NaturalForm] = []
        for cell in row:
            form = parse_natural(cell) if isinstance(cell, str) else cell
            if form.basis is not None:
                if basis is None:
                    basis = form.basis
                elif basis != form.basis:
                    raise BasisMismatch(
                        f"table mixes bases {basis!r} and {form.basis!r}"
                    )
            prow.append(form)
        parsed.append(prow)
    gamma = []
    for row in parsed:
        grow = []
        for form in row:
            vec = [Scalar.zero()] * n
            for c, idx in form.terms:
                if idx > n:
                    raise ParseError(
                        f"cell term index {idx} exceeds table dimension {n}"
                    )
                vec[idx - 1] = c
            grow.append(tuple(vec))
        gamma.append(tuple(grow))
    return AlgebraDef.of(name, tuple(gamma), params, comment, kind)


def natural_table(algebra: AlgebraDef, basis_name: str) -> list[list[NaturalForm]]:
    """The Cayley table as a grid of natural forms (inverse of in_convert_hns)."""
    out: list[list[NaturalForm]] = []
    for row in algebra.gamma:
        out.append(
            [
                NaturalForm.of(
                    basis_name,
                    [(c, k) for k, c in enumerate(cell, 1) if not c.is_zero()],
                )
                for cell in row
            ]
        )
    return out


def viz_hns(algebra: AlgebraDef, basis_name: str) -> str:
    """Render the Cayley table as aligned text with header row and column."""
    grid = natural_table(algebra, basis_name)
    n = algebra.dim
    header = [algebra.name] + [f"{basis_name}{j}" for j in range(1, n + 1)]
    rows = [header]
    for i, row in enumerate(grid, 1):
        rows.append([f"{basis_name}{i}"] + [cell.render(compact=True) for cell in row])
    widths = [max(len(r[c]) for r in rows) for c in range(n + 1)]
    lines = []
    for r, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[c]) for c, cell in enumerate(row)).rstrip())
        if r == 0:
            lines.append("-" * (sum(widths) + 2 * n))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# File format: one algebra per UTF-8 JSON document
# ---------------------------------------------------------------------------

def to_document(algebra: AlgebraDef) -> dict:
    """Flat key/value + array document with scalar-grammar strings."""
    return {
        "name": algebra.name,
        "dim": algebra.dim,
        "params": [p.name for p in algebra.params],
        "comment": algebra.comment,
        "kind": algebra.kind,
        "gamma": [
            [[value.render() for value in cell] for cell in row]
            for row in algebra.gamma
        ],
    }


def from_document(doc: dict) -> AlgebraDef:
    try:
        name = doc["name"]
        dim = int(doc["dim"])
        params = [str(p) for p in doc["params"]]
        comment = str(doc.get("comment", ""))
        kind = str(doc.get("kind", ""))
        gamma = [
            [[parse_scalar(v) for v in cell] for cell in row] for row in doc["gamma"]
        ]
    except (KeyError, TypeError, ValueError, ParseError) as exc:
        raise CorruptFile(f"malformed algebra document: {exc}") from exc
    algebra = AlgebraDef.of(name, gamma, params, comment, kind)
    if algebra.dim != dim:
        raise CorruptFile(f"declared dim {dim} does not match tensor of {algebra.dim}")
    return algebra


def save_algebra(algebra: AlgebraDef, path: str | Path):
    """Write atomically: to a temp file in the same directory, then rename."""
    path = Path(path)
    text = json.dumps(to_document(algebra), indent=1, ensure_ascii=False)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text + "\n", encoding="utf-8")
    tmp.replace(path)


def load_algebra(path: str | Path) -> AlgebraDef:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CorruptFile(f"cannot read algebra file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise CorruptFile(f"algebra file {path} is not a key/value document")
    return from_document(doc)
