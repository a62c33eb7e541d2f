import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Iterable, List, Optional, Tuple, TypeVar

from app.config import Settings, get_settings
from app.errors import ConfigurationError, KernelElementError
from app.models.matrices import MatrixQ
from app.models.polynomials import LaurentU, NPoly
from app.models.schemas import CheckOutcome, VerdictPayload
from app.models.words import EMPTY, NCPoly, Word
from app.services import asymptotics, harmonic, polylog, products, special_numbers, toplaw
from app.utils.enumeration import (
    make_rng,
    positive_words_up_to_grade,
    random_ncpoly,
    word_pairs_up_to_grade,
    words_up_to_grade,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")

SUITES = ("products", "faulhaber", "polylog-routes", "character", "top", "kernel", "chi", "matrices")


@dataclass(frozen=True)
class SuiteContext:
    max_grade: int
    seed: int
    samples: int


@dataclass(frozen=True)
class Check:
    name: str
    anchor: str
    run: Callable[[], Tuple[int, Optional[str]]]


def _scan(cases: Iterable[T], ok: Callable[[T], bool], describe: Callable[[T], str] = str) -> Tuple[int, Optional[str]]:
    """Evaluate ok on every case; stop at the first counterexample."""
    count = 0
    for case in cases:
        count += 1
        if not ok(case):
            return count, f"fails at {describe(case)}"
    return count, None


def _pair_text(pair) -> str:
    return ", ".join(str(x) for x in pair)


def _triples(max_grade: int):
    words = words_up_to_grade(max_grade)
    for u, v, t in product(words, repeat=3):
        if u.grade + v.grade + t.grade <= max_grade:
            yield u, v, t


# ---------------------------------------------------------------- products


def _products_checks(ctx: SuiteContext) -> List[Check]:
    g = ctx.max_grade
    shuffle, stuffle = products.shuffle, products.stuffle

    def commutative():
        return _scan(word_pairs_up_to_grade(g), lambda p: shuffle(*p) == shuffle(p[1], p[0]) and stuffle(*p) == stuffle(p[1], p[0]), _pair_text)

    def associative():
        def ok(triple):
            u, v, t = triple
            for law in (products.ProductLaw.SHUFFLE, products.ProductLaw.STUFFLE):
                left = products.ncp_product(law, products.ncp_product(law, NCPoly.from_word(u), NCPoly.from_word(v)), NCPoly.from_word(t))
                right = products.ncp_product(law, NCPoly.from_word(u), products.ncp_product(law, NCPoly.from_word(v), NCPoly.from_word(t)))
                if left != right:
                    return False
            return True

        return _scan(_triples(g), ok, _pair_text)

    def units():
        return _scan(words_up_to_grade(g), lambda w: shuffle(w, EMPTY) == w and stuffle(EMPTY, w) == w)

    def homogeneity():
        def ok(pair):
            u, v = pair
            weight, length = u.weight + v.weight, u.length + v.length
            if any((w.weight, w.length) != (weight, length) for w in shuffle(u, v).support()):
                return False
            lowest = max(u.length, v.length)
            return all(w.weight == weight and lowest <= w.length <= length for w in stuffle(u, v).support())

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    def positivity():
        def ok(pair):
            terms = shuffle(*pair).terms() + stuffle(*pair).terms()
            return all(c > 0 and c.denominator == 1 for _, c in terms)

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    def shuffle_mass():
        def ok(pair):
            u, v = pair
            return sum(c for _, c in shuffle(u, v).terms()) == comb(u.length + v.length, u.length)

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    return [
        Check("shuffle and stuffle are commutative", "shuffle/stuffle recursions", commutative),
        Check("shuffle and stuffle are associative", "shuffle/stuffle recursions", associative),
        Check("empty word is the unit", "shuffle/stuffle recursions", units),
        Check("weight and length of product terms", "shuffle/stuffle recursions", homogeneity),
        Check("product coefficients are positive integers", "shuffle/stuffle recursions", positivity),
        Check("shuffle mass is binomial", "shuffle recursion", shuffle_mass),
    ]


# ---------------------------------------------------------------- harmonic sums


def _faulhaber_checks(ctx: SuiteContext) -> List[Check]:
    g = ctx.max_grade

    def brute_force():
        def ok(w):
            h = harmonic.hsum(w)
            values = harmonic.hsum_values(w, 13)
            return h.degree == w.grade and all(h(k) == values[k] for k in range(13))

        return _scan(words_up_to_grade(g), ok)

    def stuffle_morphism():
        def ok(pair):
            u, v = pair
            points = u.grade + v.grade + 1
            left = [a * b for a, b in zip(harmonic.hsum_values(u, points), harmonic.hsum_values(v, points))]
            right = [Fraction(0)] * points
            for w, c in products.stuffle(u, v).terms():
                for k, value in enumerate(harmonic.hsum_values(w, points)):
                    right[k] += c * value
            # nonzero factors give a nonzero product, witnessed at N = points - 1 >= |u| + |v|
            return left == right and left[-1] != 0

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    def divisibility():
        def ok(w):
            h = harmonic.hsum(w)
            return all(h(k) == 0 for k in range(-1, w.length)) and harmonic.gfactor(w).degree == w.weight - 1

        return _scan(positive_words_up_to_grade(g), ok)

    def faulhaber_matrix():
        n = max(min(g, 8), 1)
        m = special_numbers.build_M(n)

        def ok(i):
            h = harmonic.hsum(Word.letter(i))
            return [h.coefficient(j) for j in m.col_labels] == m.row(i) and h.coefficient(0) == 0

        return _scan(m.row_labels, ok)

    def powers():
        def ok(k):
            return harmonic.hsum_poly(harmonic.power_as_hsums(k)) == NPoly.monomial(k) and harmonic.hsum_poly(
                harmonic.binomial_basis_expansion(k)
            ) == NPoly.monomial(k)

        return _scan(range(1, max(g, 1) + 1), ok)

    def via_beta():
        words = words_up_to_grade(min(g, 7))
        families = [special_numbers.DEFAULT_FAMILY] + [
            special_numbers.ExtBernoulliFamily.randomized(f"{ctx.seed}:{i}") for i in range(30)
        ]
        cases = ((fam, w) for fam in families for w in words)
        return _scan(cases, lambda c: harmonic.hsum_via_beta(c[1], c[0]) == harmonic.hsum(c[1]), lambda c: f"{c[1]} with {c[0]!r}")

    def beta_telescoping():
        rng = make_rng(ctx.seed, "beta-telescoping")
        words = positive_words_up_to_grade(min(max(g, 2), 8))
        families = [special_numbers.ExtBernoulliFamily.randomized(f"{ctx.seed}:{i}") for i in range(5)]
        cases = [(rng.choice(families), w) for w in words]

        def ok(case):
            fam, w = case
            expected = NPoly(fam.beta(w).coeffs).shift(1)
            return harmonic.beta_expansion(w, fam) == expected

        return _scan(cases, ok, lambda c: f"{c[1]} with {c[0]!r}")

    def pair_closed_form():
        pairs = [(n, m) for n in range(0, g + 1) for m in range(0, g + 1) if n + m + 2 <= max(g, 2)]

        def ok(pair):
            n, m = pair
            expected = harmonic.hsum(Word.of(n, m))
            if m == 0:
                expected = expected + harmonic.hsum(Word.letter(n))
            return harmonic.hsum_pair_closed_form(n, m) == expected

        return _scan(pairs, ok, _pair_text)

    return [
        Check("H- agrees with nested sums and has degree (w)+|w|", "harmonic sums as polynomials", brute_force),
        Check("H-_u H-_v = H-_(u stuffle v), nonzero", "stuffle morphism and prime kernel", stuffle_morphism),
        Check("H-_w vanishes at -1..|w|-1 and G-_w has degree (w)-1", "factorization of H-", divisibility),
        Check("Faulhaber matrix M reproduces H-_(y_i)", "Faulhaber matrix", faulhaber_matrix),
        Check("N^k through the letters and through y0 powers", "power sums inversion", powers),
        Check("Faulhaber quotient through extended Bernoulli polynomials", "extended Faulhaber formula", via_beta),
        Check("beta_w(N+1) as a combination of H-", "extended Bernoulli telescoping", beta_telescoping),
        Check("closed form of H-_(y_n y_m)", "double Faulhaber expansion", pair_closed_form),
    ]


# ---------------------------------------------------------------- polylogarithms


def _polylog_checks(ctx: SuiteContext) -> List[Check]:
    g = ctx.max_grade

    def routes():
        return _scan(words_up_to_grade(g), lambda w: polylog.polylog_op(w) == polylog.polylog_rec(w))

    def lij():
        return _scan(positive_words_up_to_grade(min(g, 8)), lambda w: polylog.lij_assemble(w) == polylog.polylog_op(w))

    def shape():
        def ok(w):
            f = polylog.polylog_op(w)
            if any(c.denominator != 1 for _, c in f.terms()):
                return False
            if w.is_empty:
                return f == 1
            if set(w.indices) == {0}:
                # Li-_(y0^k) = (u-1)^k keeps its constant term
                return f == LaurentU.lam() ** w.length
            # each trailing y0 adds one to |<u^1>|; positive words give +-1
            trailing = next(i for i, s in enumerate(reversed(w.indices)) if s)
            return (
                f.min_power == 1
                and abs(f.coefficient(1)) == trailing + 1
                and f.max_power == w.grade
                and f.coefficient(w.grade) == asymptotics.bminus(w)
                and f(0) == 0
            )

        return _scan(words_up_to_grade(g), ok)

    def taylor():
        return _scan(words_up_to_grade(g), lambda w: polylog.polylog_op(w).taylor(12) == polylog.polylog_taylor_brute(w, 12))

    def generating():
        return _scan(words_up_to_grade(g), lambda w: polylog.hsum_generating_check(w, 12))

    def eulerian_form():
        def ok(w):
            return polylog.eulerian_form_check(w) and special_numbers.ext_eulerian(w).degree <= w.weight

        return _scan(words_up_to_grade(g), ok)

    def lambda_relation():
        return _scan(
            words_up_to_grade(max(g - 1, 0)),
            lambda w: polylog.polylog_op(Word.letter(0).concat(w)) == polylog.lambda_mul(polylog.polylog_op(w)),
        )

    def stirling_form():
        return _scan(
            range(1, max(g, 1) + 1),
            lambda k: polylog.polylog_op(Word.letter(k)) == polylog.theta_stirling_form(k),
        )

    return [
        Check("operator route equals recursive route", "Li- product recursion", routes),
        Check("l_(i,j) assembly equals Li-", "l_(i,j) closed form", lij),
        Check("integer coefficients, u^1 coefficient +-(trailing y0 + 1), top coefficient B-, zero at u = 0", "Li- in Z[(1-z)^-1]", shape),
        Check("Taylor coefficients match nested sums", "Li- as a power series", taylor),
        Check("Li-_w/(1-z) generates H-_w", "Li- and H- generating series", generating),
        Check("Li- (1-z)^((w)+|w|) = z^|w| A-_w", "extended Eulerian polynomials", eulerian_form),
        Check("Li-_(y0 w) = lambda Li-_w", "theta0 iota1 = lambda", lambda_relation),
        Check("theta0^k lambda in Stirling form", "Euler operator powers", stirling_form),
    ]


# ---------------------------------------------------------------- asymptotic characters


def _character_checks(ctx: SuiteContext) -> List[Check]:
    g = ctx.max_grade

    def shuffle_character():
        def ok(pair):
            u, v = pair
            value = asymptotics.cminus_graded(products.shuffle(u, v), u.grade + v.grade)
            return value == asymptotics.cminus(u) * asymptotics.cminus(v)

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    def stuffle_character():
        def ok(pair):
            u, v = pair
            top_part = products.stuffle(u, v).homogeneous_component(u.grade + v.grade)
            return top_part == products.shuffle(u, v) and asymptotics.cminus_graded(top_part, u.grade + v.grade) == asymptotics.cminus(u) * asymptotics.cminus(v)

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    def bminus_integral():
        return _scan(words_up_to_grade(g), lambda w: asymptotics.bminus(w) > 0 and asymptotics.bminus(w).denominator == 1)

    def limits():
        return _scan(words_up_to_grade(g), asymptotics.hadamard_limit_check)

    def scan_vs_expansion():
        rng = make_rng(ctx.seed, "profile-scan")
        cases = [random_ncpoly(rng, min(max(g, 1), 9)) for _ in range(min(ctx.samples, 100))]

        def ok(p):
            try:
                expected = asymptotics.asym_profile(p)
            except KernelElementError:
                try:
                    asymptotics.profile_by_scan(p)
                except KernelElementError:
                    return True
                return False
            return asymptotics.profile_by_scan(p) == expected and expected.lead_li == factorial(expected.degree) * expected.lead_h

        return _scan(cases, ok)

    def theta_series():
        def ok(p):
            return asymptotics.theta_reconstruction(p) == NPoly.monomial(p)

        return _scan(range(0, max(min(g, 8), 1) + 1), ok)

    def kleene():
        return _scan(words_up_to_grade(g), lambda w: asymptotics.kleene_theta_coefficient(w) == asymptotics.theta_coeff(w))

    return [
        Check("C- is a shuffle character", "C- character", shuffle_character),
        Check("top-graded stuffle terms are the shuffle", "C- character", stuffle_character),
        Check("B-_w is a positive integer", "C- and B- constants", bminus_integral),
        Check("leading coefficients are C-_w and B-_w", "Hadamard limits", limits),
        Check("step-down scan equals exact expansion", "C-_P and B-_P extension", scan_vs_expansion),
        Check("Theta(N) coefficients are N^p", "generating series Theta", theta_series),
        Check("Kleene star form of Theta", "generating series Theta", kleene),
    ]


# ---------------------------------------------------------------- top law


def _top_checks(ctx: SuiteContext) -> List[Check]:
    g = ctx.max_grade

    def morphism():
        rng = make_rng(ctx.seed, "top-morphism")
        cases = [(random_ncpoly(rng, g, 3), random_ncpoly(rng, g, 3)) for _ in range(ctx.samples)]

        def ok(pair):
            p, q = pair
            product_ = toplaw.top_poly(p, q)
            image = polylog.polylog_poly(product_)
            if image != polylog.polylog_poly(p) * polylog.polylog_poly(q):
                return False
            # outputs live in the letter span, where Li- is injective
            return not toplaw.kernel_member(product_) or product_.is_zero()

        return _scan(cases, ok, _pair_text)

    def constant_term():
        def ok(pair):
            u, v = pair
            has_constant = toplaw.top(u, v).constant != 0
            return has_constant == (u.is_empty and v.is_empty)

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    def absorption():
        y0 = Word.letter(0)

        def ok(pair):
            u, v = pair
            left = toplaw.top(y0.concat(u), v).as_ncpoly()
            middle = toplaw.top(u, y0.concat(v)).as_ncpoly()
            right = toplaw.top_poly(NCPoly.from_word(y0), toplaw.top(u, v).as_ncpoly())
            return left == middle == right

        return _scan(word_pairs_up_to_grade(max(g - 2, 0)), ok, _pair_text)

    def multiplicative():
        rng = make_rng(ctx.seed, "top-bminus")
        cases = [(random_ncpoly(rng, g, 3), random_ncpoly(rng, g, 3)) for _ in range(min(ctx.samples, 50))]

        def ok(pair):
            p, q = pair
            if toplaw.kernel_member(p) or toplaw.kernel_member(q):
                return True
            combined = asymptotics.asym_profile(toplaw.top_poly(p, q)).lead_li
            return combined == asymptotics.asym_profile(p).lead_li * asymptotics.asym_profile(q).lead_li

        return _scan(cases, ok, _pair_text)

    def laws():
        rng = make_rng(ctx.seed, "top-laws")
        bound = min(max(g, 1), 6)
        cases = [tuple(random_ncpoly(rng, bound, 2) for _ in range(3)) for _ in range(min(ctx.samples, 30))]

        def ok(triple):
            p, q, r = triple
            return toplaw.top_poly(p, q) == toplaw.top_poly(q, p) and toplaw.top_poly(toplaw.top_poly(p, q), r) == toplaw.top_poly(p, toplaw.top_poly(q, r))

        return _scan(cases, ok, _pair_text)

    def gamma_route():
        pairs = [(m, n) for m in range(1, g + 1) for n in range(1, g + 1) if m + n <= max(g, 2)]
        return _scan(pairs, lambda p: toplaw.top_via_gamma(*p) == toplaw.top(Word.letter(p[0]), Word.letter(p[1])), _pair_text)

    def gamma_closed():
        return (1, None) if toplaw.gamma_closed_form_agrees(max(g, 2)) else (1, "closed form differs from coefficient extraction")

    return [
        Check("Li-_(P top Q) = Li-_P Li-_Q", "top law morphism", morphism),
        Check("constant term only for 1 top 1", "top law constant term", constant_term),
        Check("y0 u top v = u top y0 v = y0 top (u top v)", "y0 absorption", absorption),
        Check("B- is multiplicative for top", "B- multiplicativity", multiplicative),
        Check("top is commutative and associative", "top law", laws),
        Check("y_m top y_n through gamma_(m,n,k)", "gamma closed form", gamma_route),
        Check("gamma closed form equals coefficient extraction", "gamma closed form", gamma_closed),
    ]


# ---------------------------------------------------------------- kernel


def _kernel_checks(ctx: SuiteContext) -> List[Check]:
    g = ctx.max_grade

    def generators():
        def ok(w):
            generator = toplaw.kernel_generator(w)
            return toplaw.kernel_member(generator) and harmonic.hsum_poly(generator).is_zero()

        return _scan(words_up_to_grade(g), ok)

    def equivalence():
        rng = make_rng(ctx.seed, "kernel")
        words = words_up_to_grade(g)
        cases: List[NCPoly] = []
        for i in range(ctx.samples):
            p = random_ncpoly(rng, g)
            if i % 2:
                # mix in kernel generators so both answers occur
                p = NCPoly()
                for _ in range(rng.randint(1, 3)):
                    p = p + toplaw.kernel_generator(rng.choice(words)).scale(rng.randint(-3, 3))
            cases.append(p)
        return _scan(cases, lambda p: toplaw.kernel_member(p) == harmonic.hsum_poly(p).is_zero())

    def normal_form():
        def ok(w):
            nf = toplaw.letter_normal_form(w)
            return nf.evaluate() == polylog.polylog_op(w) and all(s < max(w.grade, 1) for s in nf.letters)

        return _scan(words_up_to_grade(g), ok)

    def profile_rejects_kernel():
        def ok(w):
            try:
                asymptotics.asym_profile(toplaw.kernel_generator(w))
            except KernelElementError:
                return True
            return False

        return _scan(words_up_to_grade(g), ok)

    return [
        Check("w - w top 1 lies in both kernels", "kernel generators", generators),
        Check("ker H- = ker Li-", "kernel description", equivalence),
        Check("letter normal form reproduces Li-_w", "letter normal form", normal_form),
        Check("profile of a kernel element is refused", "C-_P definition", profile_rejects_kernel),
    ]


# ---------------------------------------------------------------- chi


def _chi_checks(ctx: SuiteContext) -> List[Check]:
    g = ctx.max_grade

    def transport():
        def ok(w):
            return polylog.chi(harmonic.hsum(w)) == polylog.polylog_op(w)

        count, detail = _scan(words_up_to_grade(g), ok)
        if detail is None and polylog.chi(NPoly.constant(1)) != LaurentU.constant(1):
            return count, "chi(1) != 1"
        return count, detail

    def decomposition():
        def ok(pair):
            f = polylog.polylog_op(pair[0]) * polylog.polylog_op(pair[1])
            return polylog.li_basis_decompose(f).evaluate() == f and polylog.polylog_poly(polylog.li_y0_power_basis(f)) == f

        return _scan(word_pairs_up_to_grade(g), ok, _pair_text)

    def u_powers():
        def ok(k):
            return polylog.u_power_in_li_basis(k).evaluate() - 1 + LaurentU.u_power(1) == LaurentU.u_power(k)

        return _scan(range(1, max(g, 1) + 1), ok)

    return [
        Check("chi(H-_w) = Li-_w", "chi basis transport", transport),
        Check("letter basis and y0-power basis reconstruct products", "bases of the Li- algebra", decomposition),
        Check("u^k through Li-_(y_j)", "(1-z)^-k expansion", u_powers),
    ]


# ---------------------------------------------------------------- matrices


def _matrix_checks(ctx: SuiteContext) -> List[Check]:
    def stirling_inverse():
        cases = [(i, j) for i in range(1, 11) for j in range(1, i + 1)]
        return _scan(cases, lambda c: special_numbers.stirling2_via_s1(*c) == special_numbers.stirling2(*c), _pair_text)

    def signed_product():
        n = 8
        product_ = special_numbers.signed_stirling1_matrix(n) @ special_numbers.stirling2_matrix(n)
        return (1, None) if product_.is_identity() else (1, "s1 @ S2 is not the identity")

    def eulerian_rows():
        return _scan(range(1, 11), lambda n: sum(special_numbers.eulerian_number(n, k) for k in range(n)) == factorial(n))

    def t_rows():
        t = special_numbers.build_T(10)

        def ok(k):
            expansion = LaurentU.u_power(1).scale(t[k, 0])
            for j in range(1, k):
                expansion = expansion + polylog.polylog_op(Word.letter(j)).scale(t[k, j])
            return expansion == LaurentU.u_power(k)

        return _scan(t.row_labels, ok)

    def x_rows():
        x = special_numbers.build_X(8)

        def ok(i):
            total = NPoly()
            for j in x.col_labels:
                total = total + NPoly.binomial(j).scale(x[i, j])
            return total == NPoly.monomial(i)

        return _scan(x.row_labels, ok)

    def d_inverse():
        rng = make_rng(ctx.seed, "d-inverse")
        cases = []
        for i in range(50):
            length = rng.randint(1, 4)
            w = Word(tuple(rng.randint(1, 5) for _ in range(length)))
            cases.append((w, special_numbers.ExtBernoulliFamily.randomized(f"{ctx.seed}:d:{i}")))
        cases.append((Word.of(2, 3), special_numbers.DEFAULT_FAMILY))

        def ok(case):
            w, fam = case
            product_: MatrixQ = special_numbers.build_D(w, fam) @ special_numbers.build_Dinv(w, fam)
            return product_.is_identity()

        return _scan(cases, ok, lambda c: f"{c[0]} with {c[1]!r}")

    return [
        Check("S2 from alternating chains of S1", "Stirling inversion", stirling_inverse),
        Check("signed S1 matrix inverts S2 matrix", "Stirling inversion", signed_product),
        Check("Eulerian rows sum to n!", "Eulerian numbers", eulerian_rows),
        Check("rows of T give u^k", "matrix T", t_rows),
        Check("rows of X give N^i over binomials", "matrix X", x_rows),
        Check("D D^-1 = I", "matrices D and D^-1", d_inverse),
    ]


_SUITE_BUILDERS = {
    "products": _products_checks,
    "faulhaber": _faulhaber_checks,
    "polylog-routes": _polylog_checks,
    "character": _character_checks,
    "top": _top_checks,
    "kernel": _kernel_checks,
    "chi": _chi_checks,
    "matrices": _matrix_checks,
}


class VerificationService:
    """
    Runs the identity suites. Checks are independent and may finish in any order on the
    worker pool; the report always lists them in registration order.
    """

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        logger.info(f"VerificationService initialized with {self.settings.verify_workers} workers")

    def checks(self, suite: str, max_grade: int, seed: int) -> List[Check]:
        if max_grade < 0:
            raise ConfigurationError("max-grade must be non-negative")
        names = SUITES if suite == "all" else (suite,)
        unknown = [name for name in names if name not in _SUITE_BUILDERS]
        if unknown:
            raise ConfigurationError(f"Unknown suite {unknown[0]!r}; expected one of {', '.join(SUITES + ('all',))}")
        ctx = SuiteContext(max_grade=max_grade, seed=seed, samples=self.settings.random_samples)
        return [check for name in names for check in _SUITE_BUILDERS[name](ctx)]

    def _evaluate(self, check: Check) -> CheckOutcome:
        try:
            cases, detail = check.run()
        except Exception as e:
            logger.error(f"Check '{check.name}' raised {type(e).__name__}: {e}")
            return CheckOutcome(name=check.name, anchor=check.anchor, passed=False, detail=f"{type(e).__name__}: {e}")
        if detail is not None:
            logger.warning(f"Check '{check.name}' failed: {detail}")
        return CheckOutcome(name=check.name, anchor=check.anchor, passed=detail is None, cases=cases, detail=detail)

    def run(self, suite: str, max_grade: int, seed: int) -> VerdictPayload:
        checks = self.checks(suite, max_grade, seed)
        logger.info(f"Running suite '{suite}' ({len(checks)} checks, max grade {max_grade}, seed {seed})")
        with ThreadPoolExecutor(max_workers=self.settings.verify_workers) as pool:
            futures = [pool.submit(self._evaluate, check) for check in checks]
            outcomes = [future.result() for future in futures]
        passed = all(outcome.passed for outcome in outcomes)
        logger.info(f"Suite '{suite}' finished: {'pass' if passed else 'FAIL'}")
        return VerdictPayload(passed=passed, suite=suite, max_grade=max_grade, seed=seed, checks=outcomes)
