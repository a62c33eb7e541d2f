# services/difference.py
from fractions import Fraction
from functools import lru_cache
from typing import List, TypeVar

from app.models.polynomials import UPoly

P = TypeVar("P", bound=UPoly)


def forward_differences(poly: UPoly) -> List[Fraction]:
    """
    Coefficients a_j of poly over the binomial basis: poly(x) = Σ a_j binom(x, j),
    where a_j = (Δ^j poly)(0) is read off the table of values at 0..deg.
    """
    if poly.is_zero():
        return []
    values = [poly(x) for x in range(poly.degree + 1)]
    coefficients = []
    while values:
        coefficients.append(values[0])
        values = [b - a for a, b in zip(values, values[1:])]
    return coefficients


@lru_cache(maxsize=None)
def _binomial(cls, k: int):
    return cls.binomial(k)


def solve_difference(poly: P) -> P:
    """
    The unique f with f(x+1) - f(x) = poly(x) and f(0) = 0.
    Each binom(x, j) in the binomial expansion of poly lifts to binom(x, j+1).
    """
    cls = type(poly)
    result = cls()
    for j, a in enumerate(forward_differences(poly)):
        if a:
            result = result + _binomial(cls, j + 1).scale(a)
    return result
