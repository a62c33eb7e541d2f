# services/asymptotics.py
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Literal

from app.errors import DomainError, KernelElementError
from app.models.polynomials import LaurentU, NPoly
from app.models.words import NCPoly, Word
from app.services.harmonic import hsum, hsum_poly, power_as_hsums
from app.services.polylog import polylog_op, polylog_poly

logger = logging.getLogger(__name__)

ProfileMethod = Literal["expansion", "scan"]


@dataclass(frozen=True)
class AsymProfile:
    degree: int  # n(P)
    lead_h: Fraction  # C⁻_P, leading coefficient of H⁻_P in N
    lead_li: Fraction  # B⁻_P, coefficient of (1-z)^-n(P) in Li⁻_P


@dataclass(frozen=True)
class TMonomial:
    coeff: int
    power: int


def cminus(w: Word) -> Fraction:
    """Product of 1/((v)+|v|) over the nonempty suffixes v of w."""
    result = Fraction(1)
    for v in w.suffixes():
        result /= v.grade
    return result


def bminus(w: Word) -> Fraction:
    return factorial(w.grade) * cminus(w)


def cminus_graded(p: NCPoly, n: int) -> Fraction:
    """Linear extension of C⁻ to polynomials whose support has grade n only."""
    mixed = [w for w in p.support() if w.grade != n]
    if mixed:
        raise DomainError(f"{mixed[0]} has grade {mixed[0].grade}, expected every word to have grade {n}")
    return sum((c * cminus(w) for w, c in p.terms()), Fraction(0))


def asym_profile(p: NCPoly, method: ProfileMethod = "expansion") -> AsymProfile:
    """
    (n(P), C⁻_P, B⁻_P). The expansion method reads leading coefficients off the exact
    H⁻_P and Li⁻_P; the scan method steps down from the top grade.
    """
    if method == "scan":
        return profile_by_scan(p)
    if method != "expansion":
        raise DomainError(f"Unknown profile method {method!r}")
    h = hsum_poly(p)
    if h.is_zero():
        raise KernelElementError(f"{p} lies in the kernel of H⁻; its profile is undefined")
    n = h.degree
    return AsymProfile(n, h.leading_coefficient(), polylog_poly(p).coefficient(n))


def profile_by_scan(p: NCPoly) -> AsymProfile:
    """
    At each degree d from the top grade down, the coefficient of N^d in H⁻_P is the N^d
    coefficient of H⁻ of the part above grade d plus Σ_{grade = d} ⟨P|w⟩ C⁻_w, since words of
    grade d contribute exactly their leading term there. The first nonzero value wins; the same
    walk over Li⁻ and B⁻ gives B⁻_P.
    """
    if p.is_zero():
        raise KernelElementError("The zero polynomial has no profile")
    above_h = NPoly()
    above_li = LaurentU()
    for d in range(p.max_grade(), -1, -1):
        component = p.homogeneous_component(d)
        value_h = above_h.coefficient(d) + sum((c * cminus(w) for w, c in component.terms()), Fraction(0))
        if value_h:
            value_li = above_li.coefficient(d) + sum((c * bminus(w) for w, c in component.terms()), Fraction(0))
            logger.debug(f"Profile scan of {p} settled at degree {d}")
            return AsymProfile(d, value_h, value_li)
        for w, c in component.terms():
            above_h = above_h + hsum(w).scale(c)
            above_li = above_li + polylog_op(w).scale(c)
    raise KernelElementError(f"{p} lies in the kernel of H⁻; its profile is undefined")


def theta_coeff(w: Word) -> TMonomial:
    """⟨Θ(t), w⟩ = t^((w)+|w|)."""
    return TMonomial(1, w.grade)


def lambda_coeff(w: Word) -> TMonomial:
    """⟨Λ(t), w⟩ = ((w)+|w|)! t^((w)+|w|)."""
    return TMonomial(factorial(w.grade), w.grade)


def kleene_theta_coefficient(w: Word) -> TMonomial:
    """
    ⟨(Σ_y t^((y)+1) y)*, w⟩ by expanding the star: only the |w|-th power reaches w, and its
    coefficient is accumulated letter by letter as a polynomial in t.
    """
    series: Dict[int, int] = {0: 1}
    for s in w.indices:
        series = {power + s + 1: coeff for power, coeff in series.items()}
    (power, coeff), = series.items()
    return TMonomial(coeff, power)


def lambda_series_coefficient(w: Word) -> LaurentU:
    """⟨Λ((1-z)^-1), w⟩ = p! u^p with p = (w)+|w|."""
    return LaurentU.u_power(w.grade, factorial(w.grade))


def theta_reconstruction(p: int) -> NPoly:
    """Σ_j (-1)^(p+j-1) binom(p, j) H⁻_{y_j}(N), which is N^p."""
    if p == 0:
        return NPoly.constant(1)
    return hsum_poly(power_as_hsums(p))


def hadamard_limit_check(w: Word) -> bool:
    """N^-p H⁻_w(N) -> C⁻_w and (1-z)^p Li⁻_w(z) -> B⁻_w, read off as top coefficients."""
    p = w.grade
    h, li = hsum(w), polylog_op(w)
    return (
        h.degree == p
        and h.leading_coefficient() == cminus(w)
        and li.max_power == p
        and li.coefficient(p) == bminus(w)
    )
