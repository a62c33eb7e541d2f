# services/toplaw.py
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict

from app.errors import DomainError
from app.models.words import NCPoly, Word
from app.services.polylog import LetterExpansion, li_basis_decompose, polylog_op, polylog_poly
from app.services.products import ProductLaw, ncp_product
from app.services.special_numbers import eulerian_number, stirling1

logger = logging.getLogger(__name__)

# u ⊤ v = a_1(u, v)·1 + Σ_s a_s(u, v)·y_s
TopResult = LetterExpansion


@lru_cache(maxsize=4096)
def _top(u: tuple, v: tuple) -> TopResult:
    product = polylog_op(Word(u)) * polylog_op(Word(v))
    logger.debug(f"Decomposing Li⁻ product of {Word(u)} and {Word(v)} (degree {product.max_power})")
    return li_basis_decompose(product)


def top(u: Word, v: Word) -> TopResult:
    """u ⊤ v: the letter-basis expansion of Li⁻_u · Li⁻_v."""
    a, b = sorted((u.indices, v.indices))
    return _top(a, b)


def top_poly(p: NCPoly, q: NCPoly) -> NCPoly:
    return ncp_product(ProductLaw.TOP, p, q)


def letter_normal_form(w: Word) -> TopResult:
    """w ⊤ 1, the unique expression of Li⁻_w over 1 and the single letters."""
    return li_basis_decompose(polylog_op(w))


def kernel_member(p: NCPoly) -> bool:
    return polylog_poly(p).is_zero()


def kernel_generator(w: Word) -> NCPoly:
    """w - w ⊤ 1."""
    return NCPoly.from_word(w) - letter_normal_form(w).as_ncpoly()


def A_mnk(m: int, n: int, k: int) -> int:
    """Coefficient of z^k in A_m(z) A_n(z)."""
    if k < 0:
        return 0
    return sum(eulerian_number(n, t) * eulerian_number(m, k - t) for t in range(k + 1))


def gamma_mnk(m: int, n: int, k: int) -> Fraction:
    """Coefficient of u^k in Li⁻_{y_m} Li⁻_{y_n}."""
    return (polylog_op(Word.letter(m)) * polylog_op(Word.letter(n))).coefficient(k)


def gamma_closed_form(m: int, n: int, k: int) -> Fraction:
    """
    Σ_j A_{m,n,j} binom(j+2, m+n+2-k) (-1)^(m+n-k), from z^2 A_m A_n u^(m+n+2)
    with z = 1 - 1/u.
    """
    if k < 0 or k > m + n + 2:
        return Fraction(0)
    total = 0
    for j in range(max(0, m + n - k), m + n + 1):
        total += A_mnk(m, n, j) * comb(j + 2, m + n + 2 - k)
    sign = -1 if (m + n - k) % 2 else 1
    return Fraction(sign * total)


def gamma_closed_form_agrees(max_sum: int) -> bool:
    """Closed form against coefficient extraction for all 1 <= m, n with m + n <= max_sum."""
    for m in range(1, max_sum):
        for n in range(1, max_sum - m + 1):
            for k in range(0, m + n + 3):
                if gamma_closed_form(m, n, k) != gamma_mnk(m, n, k):
                    logger.warning(f"γ closed form differs at (m, n, k) = ({m}, {n}, {k})")
                    return False
    return True


def top_via_gamma(m: int, n: int) -> TopResult:
    """
    y_m ⊤ y_n assembled from the γ coefficients, with
    u^k = u + Σ_{j=2..k} S1(k, j)/(k-1)! Li⁻_{y_{j-1}} and u = 1 + Li⁻_{y0}.
    """
    if m < 0 or n < 0:
        raise DomainError("Letter indices must be non-negative")
    constant = gamma_closed_form(m, n, 0)
    letters: Dict[int, Fraction] = {}
    for k in range(1, m + n + 3):
        g = gamma_closed_form(m, n, k)
        if not g:
            continue
        constant += g
        letters[0] = letters.get(0, Fraction(0)) + g
        for j in range(2, k + 1):
            letters[j - 1] = letters.get(j - 1, Fraction(0)) + g * Fraction(stirling1(k, j), factorial(k - 1))
    return TopResult(constant, letters)


def clear_caches():
    _top.cache_clear()
    logger.debug("Cleared top law cache")
