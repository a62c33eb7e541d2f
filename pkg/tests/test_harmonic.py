from fractions import Fraction
from math import comb

import pytest
import sympy

from app.errors import DomainError
from app.models.polynomials import NPoly
from app.models.words import EMPTY, NCPoly, Word
from app.services import harmonic
from app.services.difference import forward_differences, solve_difference
from app.services.export_service import sympy_expr
from app.services.special_numbers import DEFAULT_FAMILY, ExtBernoulliFamily
from app.utils.enumeration import words_up_to_grade

N = sympy.Symbol("N")

GOLDEN = [
    (Word.of(0), N),
    (Word.of(1), N * (N + 1) / 2),
    (Word.of(2), N * (N + 1) * (2 * N + 1) / 6),
    (Word.of(3), N**2 * (N + 1) ** 2 / 4),
    (Word.of(0, 0), N * (N - 1) / 2),
    (Word.of(0, 0, 0), N * (N - 1) * (N - 2) / 6),
    (Word.of(1, 1), N * (N - 1) * (3 * N + 2) * (N + 1) / 24),
    (Word.of(1, 1, 1), N**2 * (N - 1) * (N - 2) * (N + 1) ** 2 / 48),
    (Word.of(2, 1), N * (N - 1) * (N + 1) * (12 * N**2 + 15 * N + 2) / 120),
    (Word.of(1, 2), N * (N - 1) * (N + 1) * (8 * N**2 + 5 * N - 2) / 120),
    (Word.of(1, 1, 2), N * (N - 1) * (N - 2) * (N + 1) * (48 * N**3 + 19 * N**2 - 61 * N - 24) / 5040),
    (Word.of(1, 1, 3), N * (N - 1) * (N - 2) * (N + 1) * (7 * N**2 + 3 * N - 2) * (5 * N**2 - 3 * N - 12) / 6720),
]


@pytest.mark.parametrize("word,expected", GOLDEN, ids=[str(w) for w, _ in GOLDEN])
def test_hsum_golden_polynomials(word, expected):
    assert sympy.expand(sympy_expr(harmonic.hsum(word)) - expected) == 0


def _low_to_high(*coeffs: str) -> NPoly:
    return NPoly([Fraction(0)] + [Fraction(c) for c in coeffs])


# expansions behind the profile of 12*y2.y1^4 - y2.y3^2 - 9*y4^2, coefficients of N^1..N^11
EXPANSIONS = [
    (
        Word.of(2, 3, 3),
        _low_to_high(
            "-53/4620", "-59/5040", "71/1008", "173/4032", "-37/320", "-149/2880",
            "13/168", "11/448", "-95/4032", "-9/2240", "1/352",
        ),
    ),
    (
        Word.of(2, 1, 1, 1, 1),
        _low_to_high(
            "5/1386", "-1/144", "-577/25920", "1/60", "227/6912", "-21/1280",
            "-1027/60480", "49/5760", "53/20736", "-7/3840", "1/4224",
        ),
    ),
]


@pytest.mark.parametrize("word,expected", EXPANSIONS, ids=[str(w) for w, _ in EXPANSIONS])
def test_profile_expansions_term_by_term(word, expected):
    h = harmonic.hsum(word)
    assert h == expected
    assert [h(n) for n in range(13)] == harmonic.hsum_values(word, 13)


def test_expansion_of_y2_y1_power_four_against_nested_sums():
    values = harmonic.hsum_values(Word.of(2, 1, 1, 1, 1), 9)
    assert values == [0, 0, 0, 0, 0, 600, 10464, 90040, 523256]
    assert harmonic.hsum(Word.of(2, 1, 1, 1, 1)).coefficient(10) == Fraction(-7, 3840)


def test_hsum_of_empty_word_is_one():
    assert harmonic.hsum(EMPTY) == NPoly.constant(1)


def test_brute_force_values():
    assert harmonic.hsum_brute(Word.of(1), 3) == 6
    assert harmonic.hsum_brute(Word.of(1, 1), 3) == 11
    assert harmonic.hsum_brute(Word.of(1, 1, 2), 3) == 6
    assert harmonic.hsum_brute(Word.of(2, 1), 2) == 4
    assert harmonic.hsum_brute(Word.of(1, 2), 2) == 2
    assert harmonic.hsum_values(Word.of(1), 4) == [0, 1, 3, 6]


@pytest.mark.parametrize("k", range(0, 5))
def test_y0_powers_count_subsets(k):
    w = Word((0,) * k)
    assert harmonic.hsum_values(w, 9) == [comb(n, k) for n in range(9)]
    assert harmonic.hsum(w) == NPoly.binomial(k)


def test_polynomial_matches_nested_sums():
    for w in words_up_to_grade(6):
        h = harmonic.hsum(w)
        assert [h(n) for n in range(9)] == harmonic.hsum_values(w, 9)
        assert h.degree == w.weight + w.length


def test_stuffle_square_of_y1():
    h1 = harmonic.hsum(Word.of(1))
    assert harmonic.hsum_poly(NCPoly.parse("2*y1.y1 + y2")) == h1 * h1
    assert harmonic.hsum_poly(NCPoly()).is_zero()


def test_gfactor_examples():
    assert harmonic.gfactor(Word.of(1)) == NPoly.constant(Fraction(1, 2))
    assert harmonic.gfactor(Word.of(1, 1)) == NPoly([Fraction(1, 12), Fraction(1, 8)])
    assert harmonic.gfactor(Word.of(2)) == NPoly([Fraction(1, 6), Fraction(1, 3)])


@pytest.mark.parametrize("word", [EMPTY, Word.of(0, 1), Word.of(2, 0)])
def test_gfactor_needs_positive_word(word):
    with pytest.raises(DomainError):
        harmonic.gfactor(word)


def test_powers_of_n_as_harmonic_sums():
    assert harmonic.power_as_hsums(1) == NCPoly.parse("y0")
    assert harmonic.power_as_hsums(2) == NCPoly.parse("2*y1 - y0")
    assert harmonic.power_as_hsums(3) == NCPoly.parse("3*y2 - 3*y1 + y0")
    for k in range(1, 8):
        assert harmonic.hsum_poly(harmonic.power_as_hsums(k)) == NPoly.monomial(k)
    with pytest.raises(DomainError):
        harmonic.power_as_hsums(0)


def test_binomial_basis_expansion():
    assert harmonic.binomial_basis_expansion(0) == NCPoly.one()
    assert harmonic.binomial_basis_expansion(2) == NCPoly.parse("y0 + 2*y0.y0")
    for k in range(1, 8):
        assert harmonic.hsum_poly(harmonic.binomial_basis_expansion(k)) == NPoly.monomial(k)


def test_faulhaber_quotient_default_constants():
    assert harmonic.hsum_via_beta(EMPTY) == NPoly.constant(1)
    assert harmonic.hsum_via_beta(Word.of(0)) == NPoly.monomial(1)
    assert harmonic.hsum_via_beta(Word.of(1)) == harmonic.hsum(Word.of(1))
    for w in words_up_to_grade(6):
        assert harmonic.hsum_via_beta(w, DEFAULT_FAMILY) == harmonic.hsum(w)


@pytest.mark.parametrize("seed", range(4))
def test_faulhaber_quotient_ignores_free_constants(seed):
    fam = ExtBernoulliFamily.randomized(seed)
    for w in [Word.of(1), Word.of(1, 1), Word.of(2, 0, 1), Word.of(0, 3)]:
        assert harmonic.hsum_via_beta(w, fam) == harmonic.hsum(w)


def test_beta_expansion_over_shifted_words():
    fam = ExtBernoulliFamily.randomized(11)
    for w in [Word.of(1), Word.of(2, 1), Word.of(1, 3, 2)]:
        assert harmonic.beta_expansion(w, fam) == NPoly(fam.beta(w).coeffs).shift(1)
    with pytest.raises(DomainError):
        harmonic.beta_expansion(Word.of(0), fam)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (1, 2), (0, 3), (3, 2)])
def test_pair_closed_form(n, m):
    assert harmonic.hsum_pair_closed_form(n, m) == harmonic.hsum(Word.of(n, m))


@pytest.mark.parametrize("n", range(0, 4))
def test_pair_closed_form_at_m_zero_adds_the_letter(n):
    expected = harmonic.hsum(Word.of(n, 0)) + harmonic.hsum(Word.of(n))
    assert harmonic.hsum_pair_closed_form(n, 0) == expected


def test_solve_difference():
    assert solve_difference(NPoly([0, 1])) == NPoly([0, Fraction(-1, 2), Fraction(1, 2)])
    assert solve_difference(NPoly()).is_zero()
    assert forward_differences(NPoly([0, 0, 1])) == [0, 1, 2]
    p = NPoly([3, -2, 0, 5])
    f = solve_difference(p)
    assert f(0) == 0
    assert all(f(x + 1) - f(x) == p(x) for x in range(6))
