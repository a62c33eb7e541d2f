# services/harmonic.py
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import List

from app.errors import DomainError
from app.models.polynomials import NPoly, ZPoly
from app.models.words import NCPoly, Word
from app.services.difference import solve_difference
from app.services.special_numbers import (
    DEFAULT_FAMILY,
    ExtBernoulliFamily,
    bernoulli,
    bprime,
    stirling2,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _hsum(indices: tuple) -> NPoly:
    if not indices:
        return NPoly.constant(1)
    s, rest = indices[0], indices[1:]
    # H_{y_s w}(N+1) - H_{y_s w}(N) = (N+1)^s H_w(N), H_{y_s w}(0) = 0
    step = NPoly([1, 1]) ** s * _hsum(rest)
    result = solve_difference(step)
    logger.debug(f"Computed H for {Word(indices)}")
    return result


def hsum(w: Word) -> NPoly:
    """H⁻_w as an exact polynomial in N, peeling letters from the left."""
    return _hsum(w.indices)


def hsum_values(w: Word, count: int) -> List[int]:
    """
    H⁻_w(0), ..., H⁻_w(count-1) from the nested sum Σ_{N >= n1 > ... > nr > 0} n1^s1...nr^sr,
    evaluated right to left as running integer sums.
    """
    values = [1] * count
    for s in reversed(w.indices):
        running, nested = 0, [0] * count
        for n in range(1, count):
            running += n ** s * values[n - 1]
            nested[n] = running
        values = nested
    return values


def hsum_brute(w: Word, n: int) -> Fraction:
    return Fraction(hsum_values(w, n + 1)[n])


def hsum_poly(p: NCPoly) -> NPoly:
    total = NPoly()
    for w, c in p.terms():
        total = total + hsum(w).scale(c)
    return total


def gfactor(w: Word) -> NPoly:
    """G⁻_w with H⁻_w = (N+1)N(N-1)...(N-|w|+1) G⁻_w, for nonempty w without y0."""
    if w.is_empty or not w.is_positive():
        raise DomainError(f"G is defined for nonempty words over y1, y2, ...; got {w}")
    divisor = NPoly.falling(range(-1, w.length))
    return hsum(w).exact_div(divisor)


def power_as_hsums(k: int) -> NCPoly:
    """Q_k = Σ_{j<k} (-1)^(j+k-1) binom(k, j) y_j, so that H⁻_{Q_k} = N^k."""
    if k < 1:
        raise DomainError("k must be positive")
    return NCPoly({Word.letter(j): (-1) ** (j + k - 1) * comb(k, j) for j in range(k)})


def binomial_basis_expansion(k: int) -> NCPoly:
    """N^k = Σ_j j! S2(k, j) binom(N, j) written over the words y0^j (H⁻_{y0^j} = binom(N, j))."""
    if k < 0:
        raise DomainError("k must be non-negative")
    if k == 0:
        return NCPoly.one()
    return NCPoly({Word((0,) * j): factorial(j) * stirling2(k, j) for j in range(1, k + 1)})


def _at_n_plus_one(poly: ZPoly) -> NPoly:
    return NPoly(poly.coeffs).shift(1)


def beta_expansion(w: Word, fam: ExtBernoulliFamily = DEFAULT_FAMILY) -> NPoly:
    """
    Σ_k (n1...nk) B_{y_{n_{k+1}}...y_{n_r}}(1) H⁻_{y_{n1-1}...y_{nk-1}}(N),
    which equals β_w(N+1) for w = y_{n1}...y_{nr} over y1, y2, ....
    """
    if w.is_empty or not w.is_positive():
        raise DomainError(f"The β expansion needs a nonempty word without y0; got {w}")
    n = w.indices
    total = NPoly()
    for k in range(1, len(n) + 1):
        shifted = Word(tuple(s - 1 for s in n[:k]))
        total = total + hsum(shifted).scale(prod(n[:k]) * fam.anchor(Word(n[k:])))
    return total


def hsum_via_beta(w: Word, fam: ExtBernoulliFamily = DEFAULT_FAMILY) -> NPoly:
    """
    Faulhaber-type quotient: with n_i = s_i + 1,
    H⁻_w(N) = [β_{n1..nr}(N+1) - Σ_{k<r} b'_{n_{k+1}..n_r} β_{n1..nk}(N+1)] / (n1...nr),
    where b' is taken over the anchored constants B_v(1).
    """
    if w.is_empty:
        return NPoly.constant(1)
    n = tuple(s + 1 for s in w.indices)
    numerator = _at_n_plus_one(fam.beta(Word(n)))
    for k in range(1, len(n)):
        coefficient = bprime(Word(n[k:]), fam, constants=fam.anchor)
        if coefficient:
            numerator = numerator - _at_n_plus_one(fam.beta(Word(n[:k]))).scale(coefficient)
    return numerator.scale(Fraction(1, prod(n)))


def hsum_pair_closed_form(n: int, m: int) -> NPoly:
    """
    Triple-sum closed form for H⁻_{y_n y_m} from two Faulhaber expansions, p = n + m + 2:
        Σ_{k<=m} Σ_{l<=p-1-k} Σ_{q<=p-k-l} b_k b_l binom(m+1,k) binom(p-k,l) binom(p-k-l,q) N^q / ((m+1)(p-k)).
    Exact for m >= 1. At m = 0 the inner Faulhaber sum counts 0^0 = 1 and the result is
    H⁻_{y_n y_0} + H⁻_{y_n}.
    """
    p = n + m + 2
    coeffs = [Fraction(0)] * (p + 1)
    for k in range(m + 1):
        for l in range(p - k):
            scale = bernoulli(k) * bernoulli(l) * comb(m + 1, k) * comb(p - k, l) / ((m + 1) * (p - k))
            if not scale:
                continue
            for q in range(p - k - l + 1):
                coeffs[q] += scale * comb(p - k - l, q)
    return NPoly(coeffs)


def clear_caches():
    _hsum.cache_clear()
    logger.debug("Cleared harmonic sum cache")
