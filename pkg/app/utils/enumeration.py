# utils/enumeration.py
import random
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from app.models.words import NCPoly, Word


def make_rng(seed, name: str) -> random.Random:
    """Deterministic generator per (seed, purpose); never touches OS entropy or the clock."""
    return random.Random(f"{seed}:{name}")


@lru_cache(maxsize=None)
def _compositions(g: int) -> Tuple[Tuple[int, ...], ...]:
    if g == 0:
        return ((),)
    out = []
    for first in range(1, g + 1):
        for rest in _compositions(g - first):
            out.append((first,) + rest)
    return tuple(out)


def words_of_grade(g: int) -> List[Word]:
    """All words w with (w)+|w| = g; letter y_s takes s+1 of the grade, so these are compositions of g."""
    words = [Word(tuple(part - 1 for part in parts)) for parts in _compositions(g)]
    return sorted(words)


def words_up_to_grade(max_grade: int, include_empty: bool = True) -> List[Word]:
    """Graded order: grade, then length, then indices."""
    words: List[Word] = []
    for g in range(0 if include_empty else 1, max_grade + 1):
        words.extend(words_of_grade(g))
    return words


def positive_words_up_to_grade(max_grade: int) -> List[Word]:
    return [w for w in words_up_to_grade(max_grade, include_empty=False) if w.is_positive()]


def word_pairs_up_to_grade(max_grade: int) -> List[Tuple[Word, Word]]:
    """Ordered pairs (u, v) with grade(u) + grade(v) <= max_grade."""
    words = words_up_to_grade(max_grade)
    return [(u, v) for u in words for v in words if u.grade + v.grade <= max_grade]


def random_word(rng: random.Random, max_grade: int, positive: bool = False) -> Word:
    # the lightest word without y0 is y1, of grade 2
    low = 2 if positive else 0
    g = rng.randint(low, max(max_grade, low))
    candidates = [w for w in words_of_grade(g) if not positive or w.is_positive()]
    return rng.choice(candidates)


def random_rational(rng: random.Random, bound: int = 9) -> Fraction:
    numerator = 0
    while numerator == 0:
        numerator = rng.randint(-bound, bound)
    return Fraction(numerator, rng.randint(1, bound))


def random_ncpoly(rng: random.Random, max_grade: int, max_terms: int = 5) -> NCPoly:
    size = rng.randint(1, max_terms)
    return NCPoly.from_terms((random_word(rng, max_grade), random_rational(rng)) for _ in range(size))
