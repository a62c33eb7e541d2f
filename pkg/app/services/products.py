# services/products.py
import logging
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from app.models.rationals import RationalLike
from app.models.words import NCPoly, Word

logger = logging.getLogger(__name__)

Indices = Tuple[int, ...]
WordTerms = Tuple[Tuple[Indices, int], ...]


class ProductLaw(str, Enum):
    SHUFFLE = "shuffle"
    STUFFLE = "stuffle"
    TOP = "top"
    CONCAT = "concat"


def _accumulate(acc: Dict[Indices, int], prefix: int, terms: WordTerms):
    for indices, coeff in terms:
        key = (prefix,) + indices
        acc[key] = acc.get(key, 0) + coeff


@lru_cache(maxsize=None)
def _shuffle_indices(u: Indices, v: Indices) -> WordTerms:
    # xu ⧢ yv = x(u ⧢ yv) + y(xu ⧢ v)
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Dict[Indices, int] = {}
    _accumulate(acc, u[0], _shuffle_indices(u[1:], v))
    _accumulate(acc, v[0], _shuffle_indices(u, v[1:]))
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _stuffle_indices(u: Indices, v: Indices) -> WordTerms:
    # y_i u ⋆ y_j v = y_i(u ⋆ y_j v) + y_j(y_i u ⋆ v) + y_{i+j}(u ⋆ v)
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: Dict[Indices, int] = {}
    _accumulate(acc, u[0], _stuffle_indices(u[1:], v))
    _accumulate(acc, v[0], _stuffle_indices(u, v[1:]))
    _accumulate(acc, u[0] + v[0], _stuffle_indices(u[1:], v[1:]))
    return tuple(acc.items())


def shuffle(u: Word, v: Word) -> NCPoly:
    return NCPoly({Word(indices): c for indices, c in _shuffle_indices(u.indices, v.indices)})


def stuffle(u: Word, v: Word) -> NCPoly:
    return NCPoly({Word(indices): c for indices, c in _stuffle_indices(u.indices, v.indices)})


def ncp_combine(a: RationalLike, p: NCPoly, b: RationalLike, q: NCPoly) -> NCPoly:
    """a*P + b*Q."""
    return p.combine(a, q, b)


def _word_product(law: ProductLaw, u: Word, v: Word) -> NCPoly:
    if law is ProductLaw.SHUFFLE:
        return shuffle(u, v)
    if law is ProductLaw.STUFFLE:
        return stuffle(u, v)
    if law is ProductLaw.CONCAT:
        return NCPoly.from_word(u.concat(v))
    # toplaw builds on polylog, which builds on this module
    from app.services.toplaw import top

    return top(u, v).as_ncpoly()


def ncp_product(law, p: NCPoly, q: NCPoly) -> NCPoly:
    """Bilinear extension of a word-level product law."""
    law = ProductLaw(law)
    acc: Dict[Word, Fraction] = {}
    for u, a in p.terms():
        for v, b in q.terms():
            for w, c in _word_product(law, u, v).terms():
                acc[w] = acc.get(w, Fraction(0)) + a * b * c
    return NCPoly(acc)


def clear_caches():
    _shuffle_indices.cache_clear()
    _stuffle_indices.cache_clear()
    logger.debug("Cleared shuffle/stuffle caches")
