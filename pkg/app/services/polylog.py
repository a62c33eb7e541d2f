# services/polylog.py
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial, prod
from typing import Dict, List, Tuple

from app.errors import DomainError
from app.models.polynomials import LaurentU, NPoly, ZPoly
from app.models.words import EMPTY, NCPoly, Word
from app.services.harmonic import hsum, hsum_values
from app.services.special_numbers import ext_eulerian, stirling1, stirling2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LetterExpansion:
    """A value written over the basis {1} ∪ {Li⁻_{y_s}}: constant·1 + Σ letters[s]·y_s."""

    constant: Fraction = Fraction(0)
    letters: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        object.__setattr__(self, "letters", {s: Fraction(c) for s, c in sorted(self.letters.items()) if c})

    def as_ncpoly(self) -> NCPoly:
        terms = {Word.letter(s): c for s, c in self.letters.items()}
        if self.constant:
            terms[EMPTY] = self.constant
        return NCPoly(terms)

    def evaluate(self) -> LaurentU:
        total = LaurentU.constant(self.constant)
        for s, c in self.letters.items():
            total = total + polylog_op(Word.letter(s)).scale(c)
        return total

    def is_zero(self) -> bool:
        return not self.constant and not self.letters


# ---------------------------------------------------------------- operators


def theta0(f: LaurentU) -> LaurentU:
    """θ0 = z d/dz, which is (u^2 - u) d/du in the variable u = (1-z)^-1."""
    return LaurentU({2: 1, 1: -1}) * f.derivative()


def lambda_mul(f: LaurentU) -> LaurentU:
    return LaurentU.lam() * f


@lru_cache(maxsize=None)
def _polylog_op(indices: tuple) -> LaurentU:
    if not indices:
        return LaurentU.constant(1)
    s, rest = indices[0], indices[1:]
    result = lambda_mul(_polylog_op(rest))
    for _ in range(s):
        result = theta0(result)
    return result


def polylog_op(w: Word) -> LaurentU:
    """Li⁻_w from Li⁻_{y_s w} = θ0^s(λ·Li⁻_w), Li⁻ of the empty word being 1."""
    return _polylog_op(w.indices)


# ---------------------------------------------------------------- recursive route


def _polylog_letter(n: int) -> LaurentU:
    if n == 0:
        return LaurentU.lam()
    # z A_n(z)/(1-z)^(n+1) rewritten through S2
    return LaurentU(
        {t: factorial(t - 1) * (-1) ** (t + n + 1) * stirling2(n + 1, t) for t in range(1, n + 2)}
    )


@lru_cache(maxsize=None)
def _polylog_rec(indices: tuple) -> LaurentU:
    if not indices:
        return LaurentU.constant(1)
    if len(indices) == 1:
        return _polylog_letter(indices[0])
    s1, s2, rest = indices[0], indices[1], indices[2:]
    total = LaurentU()
    for t in range(s1 + 1):
        total = total + (_polylog_letter(t) * _polylog_rec((s1 + s2 - t,) + rest)).scale(comb(s1, t))
    return total


def polylog_rec(w: Word) -> LaurentU:
    """Li⁻_w = Σ_t binom(s1, t) Li⁻_{y_t} Li⁻_{y_{s1+s2-t} y_{s3}...}, letters from the S2 form."""
    return _polylog_rec(w.indices)


def polylog_poly(p: NCPoly) -> LaurentU:
    total = LaurentU()
    for w, c in p.terms():
        total = total + polylog_op(w).scale(c)
    return total


# ---------------------------------------------------------------- bases


def u_power_in_li_basis(k: int) -> LetterExpansion:
    """
    u^k = u + Σ_{j=2..k} S1(k, j)/(k-1)! · Li⁻_{y_{j-1}}, returned with u kept as the constant slot
    (constant = coefficient of u, which is always 1).
    """
    if k < 1:
        raise DomainError("k must be positive")
    return LetterExpansion(
        constant=Fraction(1),
        letters={j - 1: Fraction(stirling1(k, j), factorial(k - 1)) for j in range(2, k + 1)},
    )


def li_basis_decompose(f: LaurentU) -> LetterExpansion:
    """
    Unique expansion of f over {1} ∪ {Li⁻_{y_s}}, using u = 1 + Li⁻_{y0} and the u^k expansion.
    Raises DomainError for negative powers of u, which lie outside the span.
    """
    if f.is_zero():
        return LetterExpansion()
    if f.min_power < 0:
        raise DomainError(f"u^{f.min_power} is outside the span of 1 and the Li⁻_(y_s)")
    constant = f.coefficient(0)
    letters: Dict[int, Fraction] = {}
    for k, c in f.terms():
        if k == 0:
            continue
        expansion = u_power_in_li_basis(k)
        # the u slot becomes 1 + Li⁻_{y0}
        constant += c
        letters[0] = letters.get(0, Fraction(0)) + c
        for s, t in expansion.letters.items():
            letters[s] = letters.get(s, Fraction(0)) + c * t
    return LetterExpansion(constant, letters)


def li_y0_power_basis(f: LaurentU) -> NCPoly:
    """Expansion of f over {1} ∪ {Li⁻_{y0^k} = (u-1)^k}: Taylor coefficients of f at u = 1."""
    if f.is_zero():
        return NCPoly()
    if f.min_power < 0:
        raise DomainError("Negative powers of u are outside the span of the (u-1)^k")
    coeffs: Dict[int, Fraction] = {}
    for k, c in f.terms():
        for i in range(k + 1):
            coeffs[i] = coeffs.get(i, Fraction(0)) + c * comb(k, i)
    return NCPoly({Word((0,) * i): c for i, c in coeffs.items()})


# ---------------------------------------------------------------- l_{i,j}


def lij_table(w: Word) -> Dict[Tuple[int, int], int]:
    """
    l_{i,j} for w = y_{s1}...y_{sr} with every s_t >= 1: a sum over compositions
    k_1 + ... + k_r = i (1 <= k_t <= s_t) weighted by Π k_t! S2(s_t, k_t), and over
    t_1 + ... + t_(r-1) = j (0 <= t_m <= k_m) weighted by a product of binomials.
    """
    if w.is_empty or not w.is_positive():
        raise DomainError(f"l_(i,j) is defined for nonempty words over y1, y2, ...; got {w}")
    s = w.indices
    r = len(s)
    table: Dict[Tuple[int, int], int] = {}
    for k in product(*(range(1, st + 1) for st in s)):
        weight = prod(factorial(kt) * stirling2(st, kt) for kt, st in zip(k, s))
        if not weight:
            continue
        i = sum(k)
        for t in product(*(range(0, km + 1) for km in k[:-1])):
            inner = 1
            for p in range(1, r):
                # 0-based: k[r-p:] are k_{r-p+1}..k_r, t[r-p:] are t_{r-p+1}..t_{r-1}
                upper = sum(k[r - p:]) + p - sum(t[r - p:])
                inner *= comb(upper, t[r - p - 1]) * comb(k[r - p - 1] + sum(t[r - p:]), k[r - p - 1] - t[r - p - 1])
                if not inner:
                    break
            if inner:
                j = sum(t)
                table[(i, j)] = table.get((i, j), 0) + weight * inner
    return {key: value for key, value in sorted(table.items()) if value}


def lij_assemble(w: Word) -> LaurentU:
    """λ^|w| Σ l_{i,j} z^(i-1-j) (1-z)^-i as a Laurent polynomial in u."""
    lam = LaurentU.lam()
    total = LaurentU()
    for (i, j), value in lij_table(w).items():
        # z^a u^i = (u-1)^a u^(i-a)
        a = i - 1 - j
        total = total + (lam ** a * LaurentU.u_power(i - a)).scale(value)
    return lam ** w.length * total


# ---------------------------------------------------------------- χ and checks


def hsum_letter_decompose(h: NPoly) -> LetterExpansion:
    """Triangular expansion of h over {1} ∪ {H⁻_{y_k}}; H⁻_{y_k} has degree k+1 and leading coefficient 1/(k+1)."""
    constant = Fraction(0)
    letters: Dict[int, Fraction] = {}
    remainder = h
    while not remainder.is_zero():
        d = remainder.degree
        if d == 0:
            constant = remainder.coefficient(0)
            break
        c = remainder.leading_coefficient() * d
        letters[d - 1] = c
        remainder = remainder - hsum(Word.letter(d - 1)).scale(c)
    return LetterExpansion(constant, letters)


def chi(h: NPoly) -> LaurentU:
    """Transport h from the basis {1, H⁻_{y_k}} of Q[N] to {1, Li⁻_{y_k}}."""
    return hsum_letter_decompose(h).evaluate()


def eulerian_form_check(w: Word) -> bool:
    """Li⁻_w · (1-z)^((w)+|w|) == z^|w| · A⁻_w(z)."""
    lhs = polylog_op(w).numerator_in_z(w.grade)
    rhs = ZPoly.monomial(w.length) * ext_eulerian(w)
    return lhs == rhs


def polylog_taylor_brute(w: Word, order: int) -> List[Fraction]:
    """Coefficients of z^0..z^order of Σ_{n1 > ... > nr > 0} n1^s1...nr^sr z^n1 from the nested sums."""
    if w.is_empty:
        return [Fraction(1)] + [Fraction(0)] * order
    tail_values = hsum_values(w.tail, order + 1)
    return [Fraction(0)] + [Fraction(m ** w.head * tail_values[m - 1]) for m in range(1, order + 1)]


def hsum_generating_check(w: Word, order: int) -> bool:
    """Li⁻_w(z)/(1-z) = Σ_N H⁻_w(N) z^N up to z^order."""
    series = (polylog_op(w) * LaurentU.u_power(1)).taylor(order)
    return series == [Fraction(v) for v in hsum_values(w, order + 1)]


def theta_stirling_form(k: int) -> LaurentU:
    """(1/(1-z)) Σ_j S2(k, j) j! λ^j, the closed form of θ0^k λ for k >= 1."""
    if k < 1:
        raise DomainError("k must be positive")
    lam = LaurentU.lam()
    total = LaurentU()
    for j in range(1, k + 1):
        total = total + (lam ** j).scale(stirling2(k, j) * factorial(j))
    return LaurentU.u_power(1) * total


def clear_caches():
    _polylog_op.cache_clear()
    _polylog_rec.cache_clear()
    logger.debug("Cleared polylogarithm caches")
