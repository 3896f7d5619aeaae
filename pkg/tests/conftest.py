import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hcns.hcnumber import HNumber
from hcns.scalar import Scalar


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_rational(rng: random.Random, span: int = 12) -> Scalar:
    return Scalar.from_fraction(Fraction(rng.randint(-span, span), rng.randint(1, 8)))


_COEFF_SYMBOLS = ("u", "v", "w")


def random_exact_scalar(rng: random.Random, symbol_rate: float = 0.1) -> Scalar:
    """Mostly rationals, occasionally a symbol times a rational."""
    if rng.random() < symbol_rate:
        return Scalar.symbol(rng.choice(_COEFF_SYMBOLS)) * random_rational(rng, 5)
    return random_rational(rng)


def random_exact_hnumber(rng: random.Random, dim: int, symbol_rate: float = 0.1) -> HNumber:
    return HNumber(tuple(random_exact_scalar(rng, symbol_rate) for _ in range(dim)))


def random_rational_hnumber(rng: random.Random, dim: int) -> HNumber:
    return HNumber(tuple(random_rational(rng) for _ in range(dim)))
