"""Named storage of algebra definitions.

A registry always contains the built-in systems below and optionally
mirrors a storage directory of ``.hns`` files (one algebra per file,
see :mod:`hcns.algebra` for the format). Built-ins are immutable and
cannot be removed or shadowed; user entries persist atomically.

The storage directory resolves as: explicit argument, then the
``HCNS_LIB`` environment variable, then no persistence.
"""

from __future__ import annotations

import difflib
import os
import warnings
from pathlib import Path

from .algebra import (
    AlgebraDef,
    fatal_findings,
    in_convert_hns,
    load_algebra,
    save_algebra,
    validate,
    viz_hns,
)
from .errors import (
    BuiltinProtected,
    CorruptFile,
    DuplicateName,
    NotFound,
    ValidationFailed,
)

ENV_VAR = "HCNS_LIB"
FILE_SUFFIX = ".hns"


def _builtin(name, rows, params=(), comment="", kind=""):
    return in_convert_hns(rows, name, params=params, comment=comment, kind=kind)


# Real numbers: the trivial one-dimensional system.
REALS = _builtin("R", [["e1"]], comment="real numbers", kind="division algebra")

# Complex numbers: e2^2 = -e1.
COMPLEX = _builtin(
    "C", [["e1", "e2"], ["e2", "-e1"]], comment="complex numbers", kind="division algebra"
)

# Double (split-complex) numbers: e2^2 = e1.
DOUBLE = _builtin(
    "D", [["e1", "e2"], ["e2", "e1"]], comment="double numbers", kind="commutative"
)

# Dual numbers: e2^2 = 0.
DUAL = _builtin(
    "Dual", [["e1", "e2"], ["e2", "0"]], comment="dual numbers", kind="commutative"
)

# Generalized complex numbers: e2^2 = p e1 + q e2.
GENERALIZED_COMPLEX = _builtin(
    "W",
    [["e1", "e2"], ["e2", "p*e1+q*e2"]],
    params=("p", "q"),
    comment="generalized complex numbers W(p,q)",
    kind="commutative",
)

# Hamilton quaternions: the generalized quaternions at alpha = beta = 1.
QUATERNIONS = _builtin(
    "H",
    [
        ["e1", "e2", "e3", "e4"],
        ["e2", "-e1", "e4", "-e3"],
        ["e3", "-e4", "-e1", "e2"],
        ["e4", "e3", "-e2", "-e1"],
    ],
    comment="Hamilton quaternions",
    kind="division algebra",
)

# Generalized quaternions with parameters alpha, beta.
GENERALIZED_QUATERNIONS = _builtin(
    "Hab",
    [
        ["e1", "e2", "e3", "e4"],
        ["e2", "-alpha*e1", "e4", "-alpha*e3"],
        ["e3", "-e4", "-beta*e1", "beta*e2"],
        ["e4", "alpha*e3", "-beta*e2", "-alpha*beta*e1"],
    ],
    params=("alpha", "beta"),
    comment="generalized quaternions",
    kind="noncommutative",
)

# Noncommutative doubling of W(p,q). The orientation of the off-diagonal
# cells is the one consistent with the generic product of this system
# (and with the doubling construction in hcns.transforms).
Q4N = _builtin(
    "Q4N",
    [
        ["e1", "e2", "e3", "e4"],
        ["e2", "p*e1+q*e2", "-e4", "-p*e3-q*e4"],
        ["e3", "e4", "p*e1+q*e3", "p*e2+q*e4"],
        ["e4", "p*e3+q*e4", "-p*e2-q*e4", "-p^2*e1-p*q*e2-p*q*e3-q^2*e4"],
    ],
    params=("p", "q"),
    comment="noncommutative doubling of W(p,q)",
    kind="noncommutative",
)

# Triplex numbers: 3-dimensional commutative system, e2^2 = (e3 - e1)/2.
TRIPLEX = _builtin(
    "T",
    [
        ["e1", "e2", "e3"],
        ["e2", "(e3-e1)/2", "-e2"],
        ["e3", "-e2", "e1"],
    ],
    comment="triplex numbers",
    kind="commutative",
)

# Direct sum of the reals and the complex numbers; the identity is e1 + e2.
R_PLUS_C = _builtin(
    "RplusC",
    [
        ["e1", "0", "0"],
        ["0", "e2", "e3"],
        ["0", "e3", "-e2"],
    ],
    comment="direct sum of R and C",
    kind="direct sum",
)

BUILTINS: tuple[AlgebraDef, ...] = (
    REALS,
    COMPLEX,
    DOUBLE,
    DUAL,
    GENERALIZED_COMPLEX,
    QUATERNIONS,
    GENERALIZED_QUATERNIONS,
    Q4N,
    TRIPLEX,
    R_PLUS_C,
)


class Registry:
    """Ordered, name-unique collection of algebra definitions."""

    def __init__(self, storage_path: str | Path | None = None):
        self._entries: dict[str, AlgebraDef] = {a.name: a for a in BUILTINS}
        self._builtin_names = frozenset(self._entries)
        self.storage_path = Path(storage_path) if storage_path else None
        if self.storage_path is not None:
            self.storage_path.mkdir(parents=True, exist_ok=True)
            self._load_storage()

    def _load_storage(self):
        for path in sorted(self.storage_path.glob(f"*{FILE_SUFFIX}")):
            try:
                algebra = load_algebra(path)
            except CorruptFile as exc:
                warnings.warn(f"skipping corrupt algebra file {path.name}: {exc}")
                continue
            if algebra.name in self._entries:
                warnings.warn(
                    f"skipping {path.name}: name {algebra.name!r} already present"
                )
                continue
            self._entries[algebra.name] = algebra

    # --- queries -----------------------------------------------------------

    def names(self) -> list[str]:
        return list(self._entries)

    def is_builtin(self, name: str) -> bool:
        return name in self._builtin_names

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def search(self, name: str) -> AlgebraDef:
        try:
            return self._entries[name]
        except KeyError:
            suggestions = tuple(
                difflib.get_close_matches(name, self._entries, n=3, cutoff=0.4)
            )
            raise NotFound(f"no algebra named {name!r}", suggestions) from None

    # --- mutation ----------------------------------------------------------

    def add(
        self, name: str, table: AlgebraDef, comment: str = "", kind: str = ""
    ) -> AlgebraDef:
        """Validate, store, and (when a storage path is set) persist."""
        if name in self._entries:
            raise DuplicateName(f"algebra {name!r} already exists")
        entry = AlgebraDef(
            name=name,
            dim=table.dim,
            params=table.params,
            gamma=table.gamma,
            comment=comment or table.comment,
            kind=kind or table.kind,
        )
        fatal = fatal_findings(validate(entry))
        if fatal:
            details = "; ".join(f.message for f in fatal)
            raise ValidationFailed(f"cannot add {name!r}: {details}")
        self._entries[name] = entry
        if self.storage_path is not None:
            save_algebra(entry, self.storage_path / f"{name}{FILE_SUFFIX}")
        return entry

    def remove(self, name: str):
        if name in self._builtin_names:
            raise BuiltinProtected(f"built-in algebra {name!r} cannot be removed")
        if name not in self._entries:
            raise NotFound(f"no algebra named {name!r}")
        del self._entries[name]
        if self.storage_path is not None:
            path = self.storage_path / f"{name}{FILE_SUFFIX}"
            if path.exists():
                path.unlink()

    # --- rendering -----------------------------------------------------------

    def render_all(self) -> str:
        """All entries, name-ascending: metadata plus the rendered table."""
        blocks = []
        for name in sorted(self._entries):
            algebra = self._entries[name]
            head = [f"{name}  (dim {algebra.dim}"]
            if algebra.params:
                head.append(f", params {', '.join(p.name for p in algebra.params)}")
            head.append(")")
            if self.is_builtin(name):
                head.append("  [built-in]")
            lines = ["".join(head)]
            if algebra.kind:
                lines.append(f"kind: {algebra.kind}")
            if algebra.comment:
                lines.append(f"comment: {algebra.comment}")
            lines.append(viz_hns(algebra, "e"))
            blocks.append("\n".join(lines))
        return "\n\n".join(blocks) + "\n"


def lib_hns(storage_path: str | Path | None = None) -> Registry:
    """Open the registry; storage resolves to the argument or $HCNS_LIB."""
    if storage_path is None:
        env = os.environ.get(ENV_VAR)
        storage_path = env if env else None
    return Registry(storage_path)


# Functional surface mirroring the procedure-style API.

def search_hns(name: str, registry: Registry) -> AlgebraDef:
    return registry.search(name)


def add_hns(
    registry: Registry, name: str, table: AlgebraDef, comment: str = "", kind: str = ""
) -> Registry:
    registry.add(name, table, comment, kind)
    return registry


def refill_hns(registry: Registry, name: str) -> Registry:
    registry.remove(name)
    return registry


def viz_lib_hns(registry: Registry) -> str:
    return registry.render_all()
