from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from sympy.functions.combinatorial.numbers import stirling

from app.errors import DomainError
from app.models.polynomials import ZPoly
from app.models.words import EMPTY, Word
from app.services import special_numbers as sn
from app.utils.enumeration import words_up_to_grade


def _q(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


# --- Bernoulli ---

def test_bernoulli_convention():
    assert sn.bernoulli(0) == 1
    assert sn.bernoulli(1) == Fraction(-1, 2)
    assert sn.bernoulli(2) == Fraction(1, 6)
    assert sn.bernoulli(3) == 0
    assert sn.bernoulli(4) == Fraction(-1, 30)
    assert sn.bernoulli_numbers(4) == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


@pytest.mark.parametrize("n", range(2, 21))
def test_bernoulli_against_sympy(n):
    # sympy's b1 convention changed between releases, so the comparison starts at n = 2
    assert _q(sn.bernoulli(n)) == sympy.bernoulli(n)


@pytest.mark.parametrize("n", range(2, 8))
def test_bernoulli_poly_against_sympy(n):
    poly = sn.bernoulli_poly(n)
    for x in range(4):
        assert _q(poly(x)) == sympy.bernoulli(n, sympy.Integer(x))


@pytest.mark.parametrize("n", range(1, 8))
def test_bernoulli_poly_difference(n):
    poly = sn.bernoulli_poly(n)
    for x in range(5):
        assert poly(x + 1) - poly(x) == n * x ** (n - 1)


@pytest.mark.parametrize("n", range(1, 16))
def test_bernoulli_recurrence(n):
    assert sum(comb(n + 1, k) * sn.bernoulli(k) for k in range(n + 1)) == 0


# --- Stirling ---

def test_stirling_examples():
    assert sn.stirling1(3, 1) == 2
    assert sn.stirling1(4, 2) == 11
    assert all(sn.stirling1(n, n) == 1 for n in range(8))
    assert sn.stirling2(3, 2) == 3
    assert all(sn.stirling2(n, 1) == 1 for n in range(1, 8))
    assert sn.stirling2_via_s1(4, 2) == 7


@pytest.mark.parametrize("n", range(1, 9))
def test_stirling_against_sympy(n):
    for k in range(1, n + 1):
        assert sn.stirling1(n, k) == stirling(n, k, kind=1, signed=False)
        assert sn.stirling2(n, k) == stirling(n, k, kind=2)


@pytest.mark.parametrize("n", range(1, 10))
def test_stirling_triangle_recurrences(n):
    for k in range(1, n + 1):
        assert sn.stirling1(n, k) == sn.stirling1(n - 1, k - 1) + (n - 1) * sn.stirling1(n - 1, k)
        assert sn.stirling2(n, k) == sn.stirling2(n - 1, k - 1) + k * sn.stirling2(n - 1, k)
    assert sn.stirling1(n, n + 1) == sn.stirling2(n, n + 1) == 0


def test_stirling2_from_first_kind_chains():
    assert [sn.stirling2_via_s1(n, n) for n in range(0, 6)] == [1] * 6
    for i in range(1, 11):
        for j in range(1, i + 1):
            assert sn.stirling2_via_s1(i, j) == sn.stirling2(i, j)
    assert sn.stirling2_via_s1(2, 3) == 0


def test_signed_first_kind_inverts_second_kind():
    assert (sn.signed_stirling1_matrix(7) @ sn.stirling2_matrix(7)).is_identity()


# --- Eulerian ---

def test_eulerian_examples():
    assert all(sn.eulerian_number(n, 0) == 1 for n in range(1, 8))
    assert sn.eulerian_number(2, 1) == 1
    assert sn.eulerian_number(3, 1) == 4
    assert sn.eulerian_poly(3) == ZPoly([1, 4, 1])


@pytest.mark.parametrize("n", range(1, 11))
def test_eulerian_rows_sum_to_factorial(n):
    assert sum(sn.eulerian_number(n, k) for k in range(n)) == factorial(n)


def test_extended_eulerian():
    assert sn.ext_eulerian(Word.of(0)) == ZPoly([1])
    assert sn.ext_eulerian(Word.of(1, 1)) == ZPoly([2, 1])
    for n in range(1, 6):
        assert sn.ext_eulerian(Word.of(n)) == sn.eulerian_poly(n)


def test_extended_eulerian_degree_bound():
    for w in words_up_to_grade(8):
        assert sn.ext_eulerian(w).degree <= w.weight


# --- extended Bernoulli ---

def test_letters_give_classical_bernoulli_polynomials():
    assert sn.DEFAULT_FAMILY.poly(EMPTY) == ZPoly([1])
    for s in range(1, 7):
        assert sn.ext_bernoulli(Word.of(s)) == sn.bernoulli_poly(s)


def test_difference_equation_holds_for_any_constants():
    fam = sn.ExtBernoulliFamily.randomized(7)
    for w in [Word.of(2, 1), Word.of(3, 0, 2), Word.of(1, 1, 1)]:
        poly, tail = fam.poly(w), fam.poly(w.tail)
        for z in range(4):
            assert poly(z + 1) - poly(z) == w.head * z ** (w.head - 1) * tail(z)
        assert poly(0) == fam.b(w)


def test_beta_vanishes_at_one():
    assert sn.beta(Word.of(1))(4) == 3
    fam = sn.ExtBernoulliFamily.randomized(3)
    for w in [Word.of(1), Word.of(1, 2), Word.of(3, 1)]:
        assert fam.beta(w)(1) == 0


def test_empty_word_constant_is_fixed():
    with pytest.raises(DomainError):
        sn.ExtBernoulliFamily(constants={EMPTY: 2})


def test_bprime_unrolls_over_prefixes():
    fam = sn.ExtBernoulliFamily(constants={Word.of(2): 3, Word.of(3): 5, Word.of(2, 3): 7})
    assert sn.bprime(Word.of(2), fam) == 3
    assert sn.bprime(Word.of(2, 3), fam) == 7 - 5 * 3


# --- matrices ---

def test_faulhaber_matrix_entries():
    m = sn.build_M(3)
    assert m[1, 1] == Fraction(1, 2)
    assert m[2, 1] == Fraction(1, 6)
    assert m[2, 2] == Fraction(1, 2)
    assert m[2, 3] == Fraction(1, 3)
    assert m[0, 1] == 1
    assert m[3, 1] == 0
    with pytest.raises(IndexError):
        m[0, 0]


def test_stirling_matrix_entries():
    t = sn.build_T(3)
    assert (t[1, 0], t[2, 0], t[2, 1], t[3, 1], t[3, 2]) == (1, 1, 1, Fraction(3, 2), Fraction(1, 2))
    assert sn.build_X(3)[3, 2] == 6
    assert sn.build_U(3).rows() == [[-1], [0], [0]]


@pytest.mark.parametrize("seed", range(5))
def test_d_times_dinv_is_identity(seed):
    w = Word.of(2, 3)
    fam = sn.ExtBernoulliFamily.randomized(seed)
    assert (sn.build_D(w) @ sn.build_Dinv(w)).is_identity()
    assert (sn.build_D(w, fam) @ sn.build_Dinv(w, fam)).is_identity()
    longer = Word.of(1, 4, 2, 5)
    assert (sn.build_D(longer, fam) @ sn.build_Dinv(longer, fam)).is_identity()


def _sympy_matrix(m) -> sympy.Matrix:
    return sympy.Matrix([[_q(x) for x in row] for row in m.rows()])


@pytest.mark.parametrize("seed", range(3))
def test_dinv_is_the_sympy_inverse_of_d(seed):
    fam = sn.ExtBernoulliFamily.randomized(seed)
    for w in [Word.of(2, 3), Word.of(1, 4, 2, 5)]:
        d = _sympy_matrix(sn.build_D(w, fam))
        assert d.inv() == _sympy_matrix(sn.build_Dinv(w, fam))
    assert _sympy_matrix(sn.signed_stirling1_matrix(6)).inv() == _sympy_matrix(sn.stirling2_matrix(6))


@pytest.mark.parametrize("word", [Word.of(0, 1), EMPTY])
def test_d_needs_positive_word(word):
    with pytest.raises(DomainError):
        sn.build_D(word)
    with pytest.raises(DomainError):
        sn.build_Dinv(word)


def test_truncation_sizes_are_checked():
    with pytest.raises(DomainError):
        sn.build_M(-1)
    with pytest.raises(DomainError):
        sn.build_T(0)
