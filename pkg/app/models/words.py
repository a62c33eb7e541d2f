# models/words.py
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from app.errors import ParseError
from app.models.rationals import RationalLike, format_rational, to_rational


@total_ordering
@dataclass(frozen=True)
class Word:
    """
    A word y_{s1}...y_{sr} over Y0 = {y0, y1, ...}, stored as its index tuple.
    The empty word is the unit of every product law.
    """

    indices: Tuple[int, ...] = ()

    def __post_init__(self):
        indices = tuple(self.indices)
        for s in indices:
            if isinstance(s, bool) or not isinstance(s, int) or s < 0:
                raise ValueError(f"Letter indices must be non-negative integers, got {s!r}")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def empty(cls) -> "Word":
        return cls(())

    @classmethod
    def letter(cls, s: int) -> "Word":
        return cls((s,))

    @classmethod
    def of(cls, *indices: int) -> "Word":
        return cls(tuple(indices))

    @classmethod
    def parse(cls, text: str) -> "Word":
        return parse_word(text)

    @property
    def weight(self) -> int:
        return sum(self.indices)

    @property
    def length(self) -> int:
        return len(self.indices)

    @property
    def grade(self) -> int:
        # (w)+|w|: degree of H⁻_w and of Li⁻_w
        return self.weight + self.length

    @property
    def is_empty(self) -> bool:
        return not self.indices

    @property
    def head(self) -> int:
        if not self.indices:
            raise IndexError("The empty word has no first letter")
        return self.indices[0]

    @property
    def tail(self) -> "Word":
        return Word(self.indices[1:])

    def is_positive(self) -> bool:
        """True when no letter is y0 (the word lies in Y⁺*)."""
        return all(s > 0 for s in self.indices)

    def concat(self, other: "Word") -> "Word":
        return Word(self.indices + other.indices)

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return self.concat(other)

    def suffixes(self) -> Iterator["Word"]:
        """Nonempty suffixes, longest first."""
        for k in range(len(self.indices)):
            yield Word(self.indices[k:])

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        return (self.grade, self.length, self.indices)

    def __lt__(self, other: "Word") -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)

    def __str__(self) -> str:
        if not self.indices:
            return "e"
        return ".".join(f"y{s}" for s in self.indices)

    def __repr__(self) -> str:
        return f"Word({str(self)})"


EMPTY = Word.empty()

_LETTERS_RE = re.compile(r"y(\d+)")
_COMMA_LIST_RE = re.compile(r"\d+(\s*,\s*\d+)*")


def parse_word(text: str) -> Word:
    """
    Accepts `y2.y1.y5` (dots optional), the bare comma list `2,1,5`, or `e` for the empty word.
    """
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if not stripped:
        raise ParseError("Empty input is not a word (use 'e' for the empty word)", text, 0)
    if stripped == "e":
        return EMPTY
    if stripped[0].isdigit():
        if not _COMMA_LIST_RE.fullmatch(stripped):
            bad = next(
                (i for i, ch in enumerate(stripped) if not (ch.isdigit() or ch in ", ")),
                len(stripped) - 1,
            )
            raise ParseError("Malformed index list", text, offset + bad)
        return Word(tuple(int(part) for part in stripped.split(",")))
    word, end = _scan_letters(stripped, 0)
    if word is None or end != len(stripped):
        raise ParseError("Malformed word", text, offset + end)
    return word


def _scan_letters(text: str, pos: int) -> Tuple[Optional[Word], int]:
    """Scan y<digits>(.?y<digits>)* starting at pos; returns (word or None, end position)."""
    indices: List[int] = []
    while True:
        match = _LETTERS_RE.match(text, pos)
        if not match:
            break
        indices.append(int(match.group(1)))
        pos = match.end()
        if text.startswith(".", pos) and _LETTERS_RE.match(text, pos + 1):
            pos += 1
    if not indices:
        return None, pos
    return Word(tuple(indices)), pos


class NCPoly:
    """
    A noncommutative polynomial over Q: a finite map Word -> Fraction.
    Zero coefficients are never stored; instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, RationalLike]] = None):
        canonical: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            if not isinstance(word, Word):
                raise TypeError(f"NCPoly keys must be Words, got {type(word).__name__}")
            value = to_rational(coeff)
            if value:
                canonical[word] = value
        self._terms = canonical
        self._hash = None

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls()

    @classmethod
    def one(cls) -> "NCPoly":
        return cls({EMPTY: 1})

    @classmethod
    def from_word(cls, word: Word, coeff: RationalLike = 1) -> "NCPoly":
        return cls({word: coeff})

    @classmethod
    def from_terms(cls, pairs: Iterable[Tuple[Word, RationalLike]]) -> "NCPoly":
        """Accumulate (word, coeff) pairs, summing repeated words."""
        acc: Dict[Word, Fraction] = {}
        for word, coeff in pairs:
            acc[word] = acc.get(word, Fraction(0)) + to_rational(coeff)
        return cls(acc)

    @classmethod
    def parse(cls, text: str) -> "NCPoly":
        return parse_ncpoly(text)

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(word, Fraction(0))

    def terms(self) -> List[Tuple[Word, Fraction]]:
        """Terms in graded order (grade, length, indices)."""
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def support(self) -> List[Word]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            other = NCPoly.from_word(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def combine(self, a: RationalLike, other: "NCPoly", b: RationalLike) -> "NCPoly":
        """a*self + b*other."""
        a, b = to_rational(a), to_rational(b)
        acc = {word: a * c for word, c in self._terms.items()}
        for word, c in other._terms.items():
            acc[word] = acc.get(word, Fraction(0)) + b * c
        return NCPoly(acc)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        other = _as_ncpoly(other)
        if other is None:
            return NotImplemented
        return self.combine(1, other, 1)

    __radd__ = __add__

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        other = _as_ncpoly(other)
        if other is None:
            return NotImplemented
        return self.combine(1, other, -1)

    def __rsub__(self, other) -> "NCPoly":
        other = _as_ncpoly(other)
        if other is None:
            return NotImplemented
        return other.combine(1, self, -1)

    def __neg__(self) -> "NCPoly":
        return self.scale(-1)

    def scale(self, c: RationalLike) -> "NCPoly":
        c = to_rational(c)
        return NCPoly({word: c * coeff for word, coeff in self._terms.items()})

    def __mul__(self, c) -> "NCPoly":
        # Scalars only: products of polynomials always name their law (see services.products).
        if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def concat(self, other: "NCPoly") -> "NCPoly":
        return NCPoly.from_terms(
            (u.concat(v), a * b) for u, a in self._terms.items() for v, b in other._terms.items()
        )

    def max_grade(self) -> int:
        if not self._terms:
            raise ValueError("The zero polynomial has no grade")
        return max(word.grade for word in self._terms)

    def grades(self) -> List[int]:
        return sorted({word.grade for word in self._terms})

    def homogeneous_component(self, n: int) -> "NCPoly":
        return NCPoly({w: c for w, c in self._terms.items() if w.grade == n})

    def leading_terms(self) -> "NCPoly":
        if not self._terms:
            return NCPoly()
        return self.homogeneous_component(self.max_grade())

    def is_homogeneous(self) -> bool:
        return len({word.grade for word in self._terms}) <= 1

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: List[str] = []
        for word, coeff in self.terms():
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            if magnitude == 1:
                body = str(word)
            else:
                body = f"{format_rational(magnitude)}*{word}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"NCPoly({str(self)})"


def _as_ncpoly(value) -> Optional[NCPoly]:
    if isinstance(value, NCPoly):
        return value
    if isinstance(value, Word):
        return NCPoly.from_word(value)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return NCPoly({EMPTY: value})
    return None


_NUMBER_RE = re.compile(r"(\d+)(?:\s*/\s*(\d+))?")


class _PolyParser:
    """Recursive-descent parser for `3/2*y2.y1 + y0 - 1/6*e` (a bare number means number*e)."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, detail: str) -> ParseError:
        return ParseError(detail, self.text, min(self.pos, max(len(self.text) - 1, 0)))

    def skip_spaces(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_spaces()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> NCPoly:
        pairs: List[Tuple[Word, Fraction]] = []
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        pairs.append(self.term(sign))
        while self.peek():
            op = self.text[self.pos]
            if op not in "+-":
                raise self.error(f"Expected '+' or '-', found {op!r}")
            self.pos += 1
            pairs.append(self.term(-1 if op == "-" else 1))
        return NCPoly.from_terms(pairs)

    def term(self, sign: int) -> Tuple[Word, Fraction]:
        ch = self.peek()
        if not ch:
            raise self.error("Unexpected end of input, expected a term")
        coeff = Fraction(sign)
        if ch.isdigit():
            match = _NUMBER_RE.match(self.text, self.pos)
            if match.group(2) is not None and int(match.group(2)) == 0:
                raise self.error("Zero denominator")
            coeff *= Fraction(int(match.group(1)), int(match.group(2) or 1))
            self.pos = match.end()
            if self.peek() != "*":
                return EMPTY, coeff
            self.pos += 1
            self.skip_spaces()
        return self.word(), coeff

    def word(self) -> Word:
        if self.peek() == "e":
            self.pos += 1
            return EMPTY
        word, end = _scan_letters(self.text, self.pos)
        if word is None:
            raise self.error("Expected a word such as y2.y1 or e")
        self.pos = end
        return word


def parse_ncpoly(text: str) -> NCPoly:
    return _PolyParser(text).parse()
