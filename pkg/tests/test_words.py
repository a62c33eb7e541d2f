from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.errors import ParseError
from app.models.rationals import format_rational, parse_rational, to_rational
from app.models.words import EMPTY, NCPoly, Word
from app.utils.enumeration import words_of_grade, words_up_to_grade

words = st.lists(st.integers(min_value=0, max_value=4), max_size=4).map(lambda xs: Word(tuple(xs)))


# --- rationals ---

def test_parse_rational_reduces():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-4") == Fraction(-4)
    assert parse_rational(" 7 / 3 ") == Fraction(7, 3)


def test_format_rational():
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-1, 6)) == "-1/6"


@pytest.mark.parametrize("text", ["1/0", "abc", "1.5", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_to_rational_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        to_rational(1.5)
    with pytest.raises(TypeError):
        to_rational(True)


# --- words ---

def test_weight_and_length():
    w = Word.of(2, 1, 5)
    assert (w.weight, w.length, w.grade) == (8, 3, 11)
    assert (EMPTY.weight, EMPTY.length) == (0, 0)
    assert (Word.of(0, 0).weight, Word.of(0, 0).length) == (0, 2)


def test_negative_index_rejected():
    with pytest.raises(ValueError):
        Word.of(1, -1)


@pytest.mark.parametrize("text", ["y2.y1.y5", "y2y1y5", "2,1,5", " 2, 1, 5 "])
def test_parse_word_syntaxes(text):
    assert Word.parse(text) == Word.of(2, 1, 5)


def test_parse_empty_word():
    assert Word.parse("e") == EMPTY
    assert str(EMPTY) == "e"


@pytest.mark.parametrize("text,position", [("y2.x1", 2), ("2,a", 2), ("y1.", 2)])
def test_parse_word_reports_position(text, position):
    with pytest.raises(ParseError) as info:
        Word.parse(text)
    assert info.value.position == position
    assert info.value.exit_code == 2
    assert "^" in info.value.annotated()


def test_empty_text_is_not_a_word():
    with pytest.raises(ParseError):
        Word.parse("   ")


def test_suffixes_longest_first():
    assert list(Word.of(2, 1, 5).suffixes()) == [Word.of(2, 1, 5), Word.of(1, 5), Word.of(5)]
    assert list(EMPTY.suffixes()) == []


def test_empty_word_is_truthy_value():
    # the empty word is a real word, not a falsy container
    assert EMPTY is not None and bool(EMPTY)


def test_graded_order():
    assert words_of_grade(3) == [Word.of(2), Word.of(0, 1), Word.of(1, 0), Word.of(0, 0, 0)]
    assert words_up_to_grade(2) == [EMPTY, Word.of(0), Word.of(1), Word.of(0, 0)]


@pytest.mark.parametrize("g", range(1, 9))
def test_words_of_grade_are_compositions(g):
    assert len(words_of_grade(g)) == 2 ** (g - 1)
    assert all(w.grade == g for w in words_of_grade(g))


@given(words)
def test_str_parses_back(w):
    assert Word.parse(str(w)) == w


# --- noncommutative polynomials ---

def test_ncpoly_parse_and_print():
    p = NCPoly.parse("3/2*y2.y1 + y0 - 1/6*e")
    assert p.coefficient(Word.of(2, 1)) == Fraction(3, 2)
    assert p.coefficient(Word.of(0)) == 1
    assert p.coefficient(EMPTY) == Fraction(-1, 6)
    assert str(p) == "-1/6*e + y0 + 3/2*y2.y1"
    assert NCPoly.parse(str(p)) == p


def test_ncpoly_bare_number_is_a_multiple_of_the_empty_word():
    assert NCPoly.parse("2") == NCPoly({EMPTY: 2})
    assert NCPoly.parse("-y1") == NCPoly({Word.of(1): -1})


def test_ncpoly_cancellation_drops_terms():
    p = NCPoly.parse("y1.y2 - y1.y2 + y3")
    assert p == Word.of(3)
    assert len(p) == 1
    assert NCPoly.parse("y1 - y1").is_zero()
    assert str(NCPoly()) == "0"


@pytest.mark.parametrize("text", ["y1 +", "y1 * y2", "3/0*y1", "+", "y1 y2"])
def test_ncpoly_parse_errors(text):
    with pytest.raises(ParseError):
        NCPoly.parse(text)


def test_ncpoly_grading():
    p = NCPoly.parse("3/2*y2.y1 + y0 - 1/6*e")
    assert p.max_grade() == 5
    assert p.grades() == [0, 1, 5]
    assert p.leading_terms() == NCPoly({Word.of(2, 1): Fraction(3, 2)})
    assert p.homogeneous_component(1) == Word.of(0)
    assert not p.is_homogeneous()
    assert NCPoly.parse("y1.y2 + y2.y1").is_homogeneous()


def test_ncpoly_linear_operations():
    p, q = NCPoly.parse("y1 + 2*y2"), NCPoly.parse("y2 - y0")
    assert p + q == NCPoly.parse("y1 + 3*y2 - y0")
    assert p - q == NCPoly.parse("y1 + y2 + y0")
    assert -p == NCPoly.parse("-y1 - 2*y2")
    assert p * 3 == NCPoly.parse("3*y1 + 6*y2")
    assert p.combine(2, q, -1) == NCPoly.parse("2*y1 + 3*y2 + y0")


def test_ncpoly_concatenation():
    p, q = NCPoly.parse("y1 + y2"), NCPoly.parse("2*y0")
    assert p.concat(q) == NCPoly.parse("2*y1.y0 + 2*y2.y0")


def test_ncpoly_is_hashable_and_immutable_value():
    p = NCPoly.parse("y1 + y2")
    assert hash(p) == hash(NCPoly.parse("y2 + y1"))
    assert {p: 1}[NCPoly.parse("y2 + y1")] == 1
