"""Independent oracles used by the test suite.

These deliberately avoid the code paths they check: products are
re-derived by distributing natural-form terms through a Cayley grid of
natural forms, published tables are transcribed here as golden string
data, and scalar arithmetic is cross-checked against sympy.
"""

from __future__ import annotations

import sympy

from hcns.algebra import AlgebraDef, natural_table
from hcns.hcnumber import HNumber, NaturalForm, parse_natural
from hcns.scalar import Scalar

# Golden transcriptions of the published natural tables.

HAB_TABLE_STRINGS = [
    ["e1", "e2", "e3", "e4"],
    ["e2", "-alpha*e1", "e4", "-alpha*e3"],
    ["e3", "-e4", "-beta*e1", "beta*e2"],
    ["e4", "alpha*e3", "-beta*e2", "-alpha*beta*e1"],
]

TRIPLEX_TABLE_STRINGS = [
    ["e1", "e2", "e3"],
    ["e2", "(e3-e1)/2", "-e2"],
    ["e3", "-e2", "e1"],
]

RPLUSC_TABLE_STRINGS = [
    ["e1", "0", "0"],
    ["0", "e2", "e3"],
    ["0", "e3", "-e2"],
]

# The 4-dimensional doubled system, in the orientation consistent with its
# published generic product (see tests/test_acceptance.py criterion 1).
Q4N_TABLE_STRINGS = [
    ["e1", "e2", "e3", "e4"],
    ["e2", "p*e1+q*e2", "-e4", "-p*e3-q*e4"],
    ["e3", "e4", "p*e1+q*e3", "p*e2+q*e4"],
    ["e4", "p*e3+q*e4", "-p*e2-q*e4", "-p^2*e1-p*q*e2-p*q*e3-q^2*e4"],
]


def grid_from_strings(rows: list[list[str]]) -> list[list[NaturalForm]]:
    return [[parse_natural(cell) for cell in row] for row in rows]


def distribute_product(
    a: HNumber, b: HNumber, grid: list[list[NaturalForm]]
) -> HNumber:
    """Brute-force product: distribute every a_i e_i * b_j e_j through the
    grid of basis products and collect by index."""
    n = len(grid)
    acc: dict[int, Scalar] = {k: Scalar.zero() for k in range(1, n + 1)}
    for i in range(1, n + 1):
        ai = a[i]
        if ai.is_zero():
            continue
        for j in range(1, n + 1):
            bj = b[j]
            if bj.is_zero():
                continue
            factor = ai * bj
            for coeff, k in grid[i - 1][j - 1].terms:
                acc[k] = acc[k] + factor * coeff
    return HNumber(tuple(acc[k] for k in range(1, n + 1)))


def grid_for(algebra: AlgebraDef) -> list[list[NaturalForm]]:
    return natural_table(algebra, "e")


# --- sympy bridge ------------------------------------------------------------

def to_sympy(value: Scalar):
    return sympy.sympify(value.render().replace("^", "**"), rational=True)


def sympy_equal(x, y) -> bool:
    return sympy.cancel(sympy.together(x - y)) == 0
