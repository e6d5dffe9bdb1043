import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wzforms import Polynomial, RationalFunction, parse_expression  # noqa: E402


@pytest.fixture
def xyz():
    """Variables (x, y, z) plus a parse shortcut bound to them."""
    vars = ("x", "y", "z")
    return vars, (lambda text: parse_expression(text, vars))


def random_polynomial(rng, vars, max_terms=3, max_deg=2, bound=5, nonzero=False):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * len(vars)
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(len(vars))] += 1
        terms[tuple(e)] = Fraction(rng.randint(-bound, bound))
    p = Polynomial(vars, terms)
    if nonzero and p.is_zero:
        return Polynomial.one(vars)
    return p


def random_rational(rng, vars, max_terms=3, max_deg=2, bound=5):
    num = random_polynomial(rng, vars, max_terms, max_deg, bound)
    den = random_polynomial(rng, vars, max_terms, max_deg, bound, nonzero=True)
    return RationalFunction(num, den)
