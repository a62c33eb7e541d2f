# services/special_numbers.py
import logging
import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Callable, Dict, List, Mapping, Optional

import sympy
from sympy.functions.combinatorial.numbers import bernoulli as bernoulli_number
from sympy.functions.combinatorial.numbers import stirling

from app.errors import DomainError
from app.models.matrices import MatrixQ
from app.models.polynomials import ZPoly
from app.models.rationals import RationalLike, to_rational
from app.models.words import EMPTY, Word
from app.services.difference import solve_difference

logger = logging.getLogger(__name__)

Constants = Callable[[Word], Fraction]


# ---------------------------------------------------------------- Bernoulli


def _fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple:
    numbers = [_fraction(bernoulli_number(m)) for m in range(n + 1)]
    # sympy's b1 sign depends on the release; fix it to -1/2
    if n >= 1:
        numbers[1] = Fraction(-1, 2)
    return tuple(numbers)


def bernoulli_numbers(n: int) -> List[Fraction]:
    """b_0..b_n with the convention b_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_bernoulli_table(n))


def bernoulli(n: int) -> Fraction:
    return _bernoulli_table(n)[n]


@lru_cache(maxsize=None)
def bernoulli_poly(n: int) -> ZPoly:
    """Classical B_n(z) = Σ binom(n,k) b_k z^(n-k), so that B_n(z+1) - B_n(z) = n z^(n-1)."""
    b = _bernoulli_table(n)
    return ZPoly([comb(n, n - j) * b[n - j] for j in range(n + 1)])


# ---------------------------------------------------------------- Stirling


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Unsigned first kind: coefficient of x^k in x(x+1)...(x+n-1)."""
    if k > n:
        return 0
    return int(stirling(n, k, kind=1, signed=False))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if k > n:
        return 0
    return int(stirling(n, k, kind=2))


def stirling2_via_s1(i: int, j: int) -> Fraction:
    """
    S2(i, j) recovered from first-kind numbers alone: the alternating sum over descending
    chains i = k0 > k1 > ... > km = j of (-1)^m (-1)^(i+j) S1(k0,k1)...S1(k(m-1),km).
    This is the inverse of the unitriangular signed first-kind matrix.
    """
    if j > i:
        return Fraction(0)
    if i == j:
        return Fraction(1)
    total = 0
    inner = range(j + 1, i)
    for size in range(len(inner) + 1):
        for middle in combinations(inner, size):
            chain = (i,) + tuple(sorted(middle, reverse=True)) + (j,)
            edges = len(chain) - 1
            weight = prod(stirling1(a, b) for a, b in zip(chain, chain[1:]))
            if weight:
                total += (-1) ** edges * (-1) ** (i + j) * weight
    return Fraction(total)


def signed_stirling1_matrix(n: int) -> MatrixQ:
    """((-1)^(i-j) S1(i, j)) for 1 <= i, j <= n."""
    labels = range(1, n + 1)
    return MatrixQ.build(labels, labels, lambda i, j: (-1) ** abs(i - j) * stirling1(i, j), name="s1")


def stirling2_matrix(n: int) -> MatrixQ:
    labels = range(1, n + 1)
    return MatrixQ.build(labels, labels, stirling2, name="S2")


# ---------------------------------------------------------------- Eulerian


@lru_cache(maxsize=None)
def eulerian_number(n: int, k: int) -> int:
    if n == 0:
        return 1 if k == 0 else 0
    if k < 0 or k > n - 1:
        return 0
    return sum((-1) ** j * comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 1))


@lru_cache(maxsize=None)
def eulerian_poly(n: int) -> ZPoly:
    return ZPoly([eulerian_number(n, k) for k in range(max(n, 1))])


@lru_cache(maxsize=None)
def _ext_eulerian(indices: tuple) -> ZPoly:
    if not indices:
        return ZPoly.constant(1)
    if len(indices) == 1:
        return eulerian_poly(indices[0])
    s1, s2, rest = indices[0], indices[1], indices[2:]
    total = ZPoly()
    for i in range(s1 + 1):
        total = total + (eulerian_poly(i) * _ext_eulerian((s1 + s2 - i,) + rest)).scale(comb(s1, i))
    return total


def ext_eulerian(w: Word) -> ZPoly:
    """A⁻_w, with A⁻_{y0} = A_0 = 1 extending the recursion to words containing y0."""
    return _ext_eulerian(w.indices)


# ---------------------------------------------------------------- extended Bernoulli


class ExtBernoulliFamily:
    """
    The polynomials B_w fixed by B_w(z+1) = B_w(z) + s1 z^(s1-1) B_tail(z) and B_w(0) = b_w.

    Constants default to b_{y_s} = b_s, b_w = 0 for longer words, and b of the empty word is
    always 1. Caches behave as if absent (inserts are idempotent).
    """

    def __init__(
        self,
        constants: Optional[Mapping[Word, RationalLike]] = None,
        generator: Optional[Callable[[Word], RationalLike]] = None,
        name: str = "default",
    ):
        self._overrides: Dict[Word, Fraction] = {w: to_rational(c) for w, c in (constants or {}).items()}
        if EMPTY in self._overrides and self._overrides[EMPTY] != 1:
            raise DomainError("The constant of the empty word is fixed to 1")
        self._generator = generator
        self._polys: Dict[Word, ZPoly] = {}
        self.name = name

    @classmethod
    def randomized(cls, seed, low: int = -9, high: int = 9) -> "ExtBernoulliFamily":
        """A family whose constants are drawn per word from a seeded generator."""

        def draw(word: Word) -> Fraction:
            rng = random.Random(f"{seed}:{word}")
            return Fraction(rng.randint(low, high), rng.randint(1, high))

        return cls(generator=draw, name=f"random-{seed}")

    def b(self, w: Word) -> Fraction:
        if w.is_empty:
            return Fraction(1)
        if w in self._overrides:
            return self._overrides[w]
        if self._generator is not None:
            return to_rational(self._generator(w))
        if w.length == 1:
            return bernoulli(w.head)
        return Fraction(0)

    def poly(self, w: Word) -> ZPoly:
        """B_w."""
        cached = self._polys.get(w)
        if cached is not None:
            return cached
        if w.is_empty:
            result = ZPoly.constant(1)
        elif w.head == 0:
            result = ZPoly.constant(self.b(w))
        else:
            s1 = w.head
            step = (ZPoly.monomial(s1 - 1, s1) * self.poly(w.tail))
            result = solve_difference(step) + self.b(w)
        self._polys[w] = result
        return result

    def anchor(self, w: Word) -> Fraction:
        """B_w(1); equals b_w unless the first index of w is 1."""
        return self.poly(w)(1)

    def beta(self, w: Word) -> ZPoly:
        """β_w = B_w - B_w(1), the polynomial vanishing at 1 that telescopes over 1..N."""
        return self.poly(w) - self.anchor(w)

    def __repr__(self) -> str:
        return f"ExtBernoulliFamily({self.name})"


DEFAULT_FAMILY = ExtBernoulliFamily()


def ext_bernoulli(w: Word, fam: ExtBernoulliFamily = DEFAULT_FAMILY) -> ZPoly:
    return fam.poly(w)


def beta(w: Word, fam: ExtBernoulliFamily = DEFAULT_FAMILY) -> ZPoly:
    return fam.beta(w)


def bprime(w: Word, fam: ExtBernoulliFamily = DEFAULT_FAMILY, constants: Optional[Constants] = None) -> Fraction:
    """
    b'_w for w = y_{n_k}...y_{n_r}: b'_{y_n} = b_{y_n} and
    b'_w = b_w - Σ over splits w = x·v (x, v nonempty) of b_v · b'_x.
    `constants` defaults to fam.b; pass fam.anchor for the telescoping form.
    """
    constants = constants or fam.b
    memo: Dict[int, Fraction] = {}
    indices = w.indices

    def prefix_value(end: int) -> Fraction:
        # b' of indices[:end]
        if end in memo:
            return memo[end]
        value = constants(Word(indices[:end]))
        for split in range(1, end):
            value -= constants(Word(indices[split:end])) * prefix_value(split)
        memo[end] = value
        return value

    if w.is_empty:
        return Fraction(1)
    # b'(k..m) only depends on the subword, so the recursion on prefixes of w is enough
    return prefix_value(len(indices))


# ---------------------------------------------------------------- matrices


def build_M(n: int) -> MatrixQ:
    """Faulhaber matrix: rows i = 0..n, columns j = 1..n+1, row i gives H⁻_{y_i} in powers of N."""
    if n < 0:
        raise DomainError("Truncation size must be non-negative")
    b = _bernoulli_table(max(n, 1))
    entries: Dict[tuple, Fraction] = {}

    def m(i: int, j: int) -> Fraction:
        if (i, j) in entries:
            return entries[(i, j)]
        if i < j - 1:
            value = Fraction(0)
        elif j == 1:
            value = Fraction(1, 2) if i == 1 else b[i]
        else:
            value = i * m(i - 1, j - 1) / j
        entries[(i, j)] = value
        return value

    return MatrixQ.build(range(0, n + 1), range(1, n + 2), m, name="M")


def build_T(n: int) -> MatrixQ:
    """t_{i,j} = S1(i, j+1)/(i-1)! for i > j; rows 1..n, columns 0..n-1."""
    if n < 1:
        raise DomainError("Truncation size must be at least 1")
    return MatrixQ.build(
        range(1, n + 1),
        range(0, n),
        lambda i, j: Fraction(stirling1(i, j + 1), factorial(i - 1)) if i > j else 0,
        name="T",
    )


def build_X(n: int) -> MatrixQ:
    """x_{i,j} = j! S2(i, j), 1 <= i, j <= n: N^i = Σ_j x_{i,j} binom(N, j)."""
    if n < 1:
        raise DomainError("Truncation size must be at least 1")
    labels = range(1, n + 1)
    return MatrixQ.build(labels, labels, lambda i, j: factorial(j) * stirling2(i, j), name="X")


def build_U(n: int) -> MatrixQ:
    """The column (-1, 0, ..., 0) of height n."""
    if n < 1:
        raise DomainError("Truncation size must be at least 1")
    return MatrixQ.build(range(1, n + 1), range(0, 1), lambda i, j: -1 if i == 1 else 0, name="U")


def _require_positive(w: Word):
    if w.is_empty:
        raise DomainError("D is defined for nonempty words")
    if not w.is_positive():
        raise DomainError(f"D needs positive indices, {w} contains y0")


def build_D(w: Word, fam: ExtBernoulliFamily = DEFAULT_FAMILY, constants: Optional[Constants] = None) -> MatrixQ:
    """d_{i,i} = n1...ni, d_{i,j} = n1...nj · b_{y_{n_{j+1}}...y_{n_i}} for j < i."""
    _require_positive(w)
    constants = constants or fam.b
    n = w.indices
    p = [prod(n[:i]) for i in range(len(n) + 1)]

    def entry(i: int, j: int) -> Fraction:
        if i < j:
            return Fraction(0)
        if i == j:
            return Fraction(p[i])
        return p[j] * constants(Word(n[j:i]))

    labels = range(1, len(n) + 1)
    return MatrixQ.build(labels, labels, entry, name=f"D({w})")


def build_Dinv(w: Word, fam: ExtBernoulliFamily = DEFAULT_FAMILY, constants: Optional[Constants] = None) -> MatrixQ:
    """v_{i,i} = 1/(n1...ni), v_{i,j} = -b'_{y_{n_{j+1}}...y_{n_i}}/(n1...ni) for j < i."""
    _require_positive(w)
    n = w.indices
    p = [prod(n[:i]) for i in range(len(n) + 1)]

    def entry(i: int, j: int) -> Fraction:
        if i < j:
            return Fraction(0)
        if i == j:
            return Fraction(1, p[i])
        return -bprime(Word(n[j:i]), fam, constants) / p[i]

    labels = range(1, len(n) + 1)
    return MatrixQ.build(labels, labels, entry, name=f"Dinv({w})")


def clear_caches():
    for cached in (_bernoulli_table, bernoulli_poly, stirling1, stirling2, eulerian_number, eulerian_poly, _ext_eulerian):
        cached.cache_clear()
    logger.debug("Cleared special number caches")
