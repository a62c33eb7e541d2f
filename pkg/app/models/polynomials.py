# models/polynomials.py
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from app.errors import InexactDivisionError
from app.models.rationals import RationalLike, format_rational, to_rational


def _trim(coeffs: Iterable[Fraction]) -> Tuple[Fraction, ...]:
    values = list(coeffs)
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _render(items: Iterable[Tuple[int, Fraction]], symbol: str) -> str:
    """`3*N^2 - 1/2*N + 1` style text, highest power first."""
    parts: List[str] = []
    for k, c in sorted(items, reverse=True):
        if not c:
            continue
        power = "" if k == 0 else (symbol if k == 1 else f"{symbol}^{k}")
        magnitude = format_rational(abs(c))
        if power and abs(c) == 1:
            body = power
        elif power:
            body = f"{magnitude}*{power}"
        else:
            body = magnitude
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"{'-' if c < 0 else '+'} {body}")
    return " ".join(parts) if parts else "0"


class UPoly:
    """
    Dense univariate polynomial with Fraction coefficients in ascending powers.
    Subclasses fix the name of the formal symbol; mixing symbols is a TypeError.
    """

    symbol = "x"
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence[RationalLike] = ()):
        self._coeffs = _trim(to_rational(c) for c in coeffs)

    @classmethod
    def constant(cls, c: RationalLike):
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: RationalLike = 1):
        return cls([0] * k + [c])

    @classmethod
    def variable(cls):
        return cls.monomial(1)

    @classmethod
    def binomial(cls, k: int):
        """binom(x, k) = x(x-1)...(x-k+1)/k! as a polynomial in x."""
        result = cls.constant(1)
        for i in range(k):
            result = result * cls([-i, 1])
        return result.scale(Fraction(1, factorial(k)))

    @classmethod
    def falling(cls, roots: Iterable[int]):
        """Product of (x - r) over the given integer roots."""
        result = cls.constant(1)
        for r in roots:
            result = result * cls([-r, 1])
        return result

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def leading_coefficient(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _coerce(self, other) -> Optional["UPoly"]:
        if type(other) is type(self):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return type(self).constant(other)
        return None

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.symbol, self._coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self._coeffs), len(other._coeffs))
        return type(self)([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)([-c for c in self._coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c: RationalLike):
        c = to_rational(c)
        return type(self)([c * a for a in self._coeffs])

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._coeffs or not other._coeffs:
            return type(self)()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return type(self)(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("Negative powers are not polynomials")
        result = type(self).constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __call__(self, x):
        """Horner evaluation; exact for int and Fraction arguments."""
        result = Fraction(0)
        for c in reversed(self._coeffs):
            result = result * x + c
        return result

    def shift(self, a: RationalLike):
        """P(x + a)."""
        a = to_rational(a)
        out = [Fraction(0)] * len(self._coeffs)
        for k, c in enumerate(self._coeffs):
            if c:
                for j in range(k + 1):
                    out[j] += c * comb(k, j) * a ** (k - j)
        return type(self)(out)

    def derivative(self):
        return type(self)([k * c for k, c in enumerate(self._coeffs)][1:])

    def divmod(self, divisor) -> Tuple["UPoly", "UPoly"]:
        divisor = self._coerce(divisor)
        if divisor is None or divisor.is_zero():
            raise ZeroDivisionError("Polynomial division by zero")
        remainder = list(self._coeffs)
        d = divisor.degree
        lead = divisor.leading_coefficient()
        quotient = [Fraction(0)] * max(len(remainder) - d, 0)
        for k in range(len(remainder) - 1 - d, -1, -1):
            q = remainder[k + d] / lead
            quotient[k] = q
            if q:
                for j, c in enumerate(divisor.coeffs):
                    remainder[k + j] -= q * c
        return type(self)(quotient), type(self)(remainder[:d] if d > 0 else [])

    def exact_div(self, divisor):
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero():
            raise InexactDivisionError(f"{self} is not divisible by {divisor}")
        return quotient

    def __str__(self) -> str:
        return _render(((k, c) for k, c in enumerate(self._coeffs)), self.symbol)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


class NPoly(UPoly):
    """Polynomial in the upper summation bound N (values of H⁻)."""

    symbol = "N"
    __slots__ = ()


class ZPoly(UPoly):
    """Polynomial in z (Eulerian and extended Bernoulli polynomials)."""

    symbol = "z"
    __slots__ = ()


class LaurentU:
    """
    Laurent polynomial in u = (1-z)^-1, stored sparsely as power -> Fraction.
    Under z = 1 - 1/u the ring Q[z, (1-z)^-1] becomes Q[u, 1/u].
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[int, RationalLike]] = None):
        canonical: Dict[int, Fraction] = {}
        for power, coeff in (terms or {}).items():
            value = to_rational(coeff)
            if value:
                canonical[int(power)] = value
        self._terms = canonical

    @classmethod
    def constant(cls, c: RationalLike) -> "LaurentU":
        return cls({0: c})

    @classmethod
    def u_power(cls, k: int, c: RationalLike = 1) -> "LaurentU":
        return cls({k: c})

    @classmethod
    def z(cls) -> "LaurentU":
        return cls({0: 1, -1: -1})

    @classmethod
    def lam(cls) -> "LaurentU":
        """λ = z/(1-z) = u - 1."""
        return cls({1: 1, 0: -1})

    def coefficient(self, k: int) -> Fraction:
        return self._terms.get(k, Fraction(0))

    def terms(self) -> List[Tuple[int, Fraction]]:
        return sorted(self._terms.items())

    def powers(self) -> List[int]:
        return sorted(self._terms)

    @property
    def max_power(self) -> int:
        if not self._terms:
            raise ValueError("The zero Laurent polynomial has no degree")
        return max(self._terms)

    @property
    def min_power(self) -> int:
        if not self._terms:
            raise ValueError("The zero Laurent polynomial has no lowest power")
        return min(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _coerce(self, other) -> Optional["LaurentU"]:
        if isinstance(other, LaurentU):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentU.constant(other)
        return None

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other) -> "LaurentU":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, Fraction(0)) + c
        return LaurentU(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentU":
        return self.scale(-1)

    def __sub__(self, other) -> "LaurentU":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentU":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c: RationalLike) -> "LaurentU":
        c = to_rational(c)
        return LaurentU({k: c * a for k, a in self._terms.items()})

    def __mul__(self, other) -> "LaurentU":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        acc: Dict[int, Fraction] = {}
        for i, a in self._terms.items():
            for j, b in other._terms.items():
                acc[i + j] = acc.get(i + j, Fraction(0)) + a * b
        return LaurentU(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentU":
        if k < 0:
            raise ValueError("Only non-negative powers are supported")
        result = LaurentU.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self) -> "LaurentU":
        """d/du."""
        return LaurentU({k - 1: k * c for k, c in self._terms.items() if k})

    def __call__(self, u):
        if not self._terms:
            return Fraction(0)
        return sum((c * Fraction(u) ** k for k, c in self._terms.items()), Fraction(0))

    def taylor(self, order: int) -> List[Fraction]:
        """Coefficients of z^0..z^order of the expansion at z = 0."""
        series = [Fraction(0)] * (order + 1)
        for k, c in self._terms.items():
            for m in range(order + 1):
                if k > 0:
                    # (1-z)^-k = sum binom(m+k-1, k-1) z^m
                    series[m] += c * comb(m + k - 1, k - 1)
                elif k == 0:
                    series[m] += c if m == 0 else 0
                elif m <= -k:
                    series[m] += c * (-1) ** m * comb(-k, m)
        return series

    def numerator_in_z(self, g: int) -> ZPoly:
        """self * (1-z)^g as a polynomial in z; needs g >= every power present."""
        result = ZPoly()
        one_minus_z = ZPoly([1, -1])
        for k, c in self._terms.items():
            if k > g:
                raise ValueError(f"Power u^{k} exceeds the clearing exponent {g}")
            result = result + (one_minus_z ** (g - k)).scale(c)
        return result

    def __str__(self) -> str:
        return _render(self._terms.items(), "u")

    def __repr__(self) -> str:
        return f"LaurentU({self})"
