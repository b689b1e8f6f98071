"""Exact integer polynomials, cyclotomic products and rational functions."""
from __future__ import annotations

import functools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import InputError

Number = Union[int, Fraction]


def _trim(coeffs: Sequence) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class IntPolynomial:
    """Polynomial in z with integer coefficients, stored degree-ascending.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        coeffs = _trim(coeffs)
        for c in coeffs:
            if type(c) is not int:
                if isinstance(c, Fraction) and c.denominator == 1:
                    continue
                raise TypeError(f"IntPolynomial needs integer coefficients, got {c!r}")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def z(cls) -> IntPolynomial:
        return cls([0, 1])

    # basic protocol

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        return render(self)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    # ring operations

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPolynomial([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by z^k."""
        return IntPolynomial([0] * k + list(self.coeffs)) if self.coeffs else self

    def derivative(self) -> IntPolynomial:
        return IntPolynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def reversed(self) -> IntPolynomial:
        """z^deg * p(1/z)."""
        return IntPolynomial(self.coeffs[::-1])

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lead < 0:
            g = -g
        return IntPolynomial([c // g for c in self.coeffs])

    def truncate(self, n: int) -> IntPolynomial:
        """Reduce modulo z^n."""
        return IntPolynomial(self.coeffs[:n])

    # evaluation

    def __call__(self, x):
        if isinstance(x, complex):
            return self.eval_complex(x)
        return self.eval_rational(x)

    def eval_rational(self, x: Number) -> Number:
        """Exact Horner evaluation at an integer or Fraction."""
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_complex(self, x: complex) -> complex:
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial([p])
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


ONE = IntPolynomial([1])
ZERO = IntPolynomial()


def render(p: IntPolynomial, var: str = "z") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


# -- division and gcd -----------------------------------------------------------


def divmod_rational(a: IntPolynomial, b: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over Q, as Fraction coefficient lists (trimmed)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    db, lb = b.degree, b.lead
    quot = [Fraction(0)] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1 - db, -1, -1):
        q = rem[k + db] / lb
        if q:
            quot[k] = q
            for i, c in enumerate(b.coeffs):
                rem[k + i] -= q * c
    return list(_trim(quot)), list(_trim(rem[:db]))


def divexact(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """a / b, which must be exact with an integer quotient."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    quot = [0] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1 - db, -1, -1):
        q, r = divmod(rem[k + db], lb)
        if r:
            raise ArithmeticError("division is not exact over the integers")
        if q:
            quot[k] = q
            for i, c in enumerate(b.coeffs):
                rem[k + i] -= q * c
    if any(rem[:db]):
        raise ArithmeticError("division leaves a nonzero remainder")
    return IntPolynomial(quot)


def divides(b: IntPolynomial, a: IntPolynomial) -> bool:
    try:
        divexact(a, b)
    except ArithmeticError:
        return False
    return True


def from_fractions(coeffs: Sequence[Fraction]) -> IntPolynomial:
    """Clear denominators with a positive factor and return the primitive part."""
    if not coeffs:
        return ZERO
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    p = IntPolynomial([int(c * den) for c in coeffs])
    g = p.content()
    return IntPolynomial([c // g for c in p.coeffs])


def pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """A positive multiple of the remainder of a by b (positive scaling keeps signs)."""
    _, r = divmod_rational(a, b)
    return from_fractions(r)


def gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Greatest common divisor over Q, returned primitive with positive leading coefficient."""
    a, b = a.primitive(), b.primitive()
    while b:
        a, b = b, pseudo_rem(a, b).primitive()
    return a.primitive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    if p.degree <= 0:
        return p.primitive()
    g = gcd(p, p.derivative())
    if g.degree == 0:
        return p.primitive()
    return divexact(p.primitive(), g)


def is_palindromic(p: IntPolynomial) -> bool:
    """z^deg p(1/z) == p(z)."""
    if not p:
        raise InputError("palindromicity is undefined for the zero polynomial")
    return p.coeffs == p.coeffs[::-1]


# -- constructors ---------------------------------------------------------------


def geometric(m: int) -> IntPolynomial:
    """1 + z + ... + z^{m-1}."""
    return IntPolynomial([1] * m)


def bracket_poly(parts: Sequence[int]) -> IntPolynomial:
    """[m_1; ...; m_k] = prod (1 + z + ... + z^{m_i - 1})."""
    result = ONE
    for m in parts:
        if type(m) is not int or m < 1:
            raise InputError(f"bracket parts must be integers >= 1, got {m!r}")
        result = result * geometric(m)
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


@functools.lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """Phi_d, from z^d - 1 = prod_{e | d} Phi_e."""
    if type(d) is not int or d < 1:
        raise InputError(f"cyclotomic index must be a positive integer, got {d!r}")
    p = IntPolynomial([-1] + [0] * (d - 1) + [1])
    for e in divisors(d)[:-1]:
        p = divexact(p, cyclotomic(e))
    return p


@dataclass(frozen=True)
class CyclotomicProduct:
    """prod Phi_d^mult, kept as a sorted tuple of (d, mult)."""

    factors: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, counts: Mapping[int, int]) -> CyclotomicProduct:
        return cls(tuple(sorted((d, k) for d, k in counts.items() if k > 0)))

    @classmethod
    def bracket(cls, parts: Sequence[int]) -> CyclotomicProduct:
        """Factored [m_1; ...; m_k]: each 1 + ... + z^{m-1} is prod_{d | m, d > 1} Phi_d."""
        counts: Counter = Counter()
        for m in parts:
            if type(m) is not int or m < 1:
                raise InputError(f"bracket parts must be integers >= 1, got {m!r}")
            for d in divisors(m)[1:]:
                counts[d] += 1
        return cls.of(counts)

    def counts(self) -> Counter:
        return Counter(dict(self.factors))

    def __mul__(self, other: CyclotomicProduct) -> CyclotomicProduct:
        return CyclotomicProduct.of(self.counts() + other.counts())

    def lcm(self, other: CyclotomicProduct) -> CyclotomicProduct:
        return CyclotomicProduct.of(self.counts() | other.counts())

    def quotient(self, other: CyclotomicProduct) -> CyclotomicProduct:
        a, b = self.counts(), other.counts()
        if any(a[d] < k for d, k in b.items()):
            raise ArithmeticError("cyclotomic quotient is not a polynomial")
        return CyclotomicProduct.of(a - b)

    @property
    def degree(self) -> int:
        return sum(euler_phi(d) * k for d, k in self.factors)

    def expand(self) -> IntPolynomial:
        return _expand(self.factors)


@functools.lru_cache(maxsize=4096)
def _expand(factors: tuple[tuple[int, int], ...]) -> IntPolynomial:
    result = ONE
    for d, k in factors:
        result = result * cyclotomic(d) ** k
    return result


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# -- rational functions ---------------------------------------------------------


class RationalFunction:
    """Reduced quotient numerator / denominator of integer polynomials.

    Reduced means coprime over Q, jointly content-free, and denominator with
    positive leading coefficient.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=ONE, *, reduce: bool = True):
        num, den = _coerce(numerator), _coerce(denominator)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = _reduce_pair(num, den)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __repr__(self):
        return f"RationalFunction({self.numerator!r}, {self.denominator!r})"

    def __str__(self):
        num, den = self.numerator, self.denominator
        if den == ONE:
            return render(num)
        if den[0] < 0:
            # display with positive constant term, the natural form for series
            num, den = -num, -den
        return f"({render(num)})/({render(den)})"

    def __eq__(self, other):
        if isinstance(other, (int, IntPolynomial)):
            other = RationalFunction(other)
        return (
            isinstance(other, RationalFunction)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        return rat_add(self, _as_rational(other))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator, reduce=False)

    def __sub__(self, other):
        return rat_add(self, -_as_rational(other))

    def __mul__(self, other):
        other = _as_rational(other)
        return RationalFunction(
            self.numerator * other.numerator, self.denominator * other.denominator
        )

    __rmul__ = __mul__

    def reciprocal(self) -> RationalFunction:
        if not self.numerator:
            raise ZeroDivisionError("reciprocal of zero")
        return RationalFunction(self.denominator, self.numerator)

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0 and abs(self.denominator.lead) == 1

    def eval_rational(self, x: Number) -> Fraction:
        return Fraction(self.numerator.eval_rational(x)) / self.denominator.eval_rational(x)

    def eval_complex(self, x: complex) -> complex:
        return self.numerator.eval_complex(x) / self.denominator.eval_complex(x)

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()}


def _as_rational(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(_coerce(x))


def _reduce_pair(num: IntPolynomial, den: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    if not num:
        return ZERO, ONE
    g = gcd(num, den)
    if g.degree > 0:
        # g is primitive, so the quotients are integral (Gauss)
        num, den = divexact(num, g), divexact(den, g)
    c = math.gcd(num.content(), den.content())
    if den.lead < 0:
        c = -c
    return IntPolynomial([x // c for x in num.coeffs]), IntPolynomial([x // c for x in den.coeffs])


def rat_reduce(a: RationalFunction) -> RationalFunction:
    return RationalFunction(a.numerator, a.denominator)


def rat_add(a: RationalFunction, b: RationalFunction) -> RationalFunction:
    if a.denominator == b.denominator:
        return RationalFunction(a.numerator + b.numerator, a.denominator)
    return RationalFunction(
        a.numerator * b.denominator + b.numerator * a.denominator,
        a.denominator * b.denominator,
    )


def series_coefficients(f: RationalFunction, m_max: int) -> list[Number]:
    """Taylor coefficients a(0..m_max) of f at 0, via the recurrence den * a = num."""
    den, num = f.denominator, f.numerator
    d0 = den[0]
    if d0 == 0:
        raise InputError("denominator vanishes at 0; no power series expansion")
    out: list[Number] = []
    exact_int = abs(d0) == 1
    for m in range(m_max + 1):
        acc = num[m] - sum(den[k] * out[m - k] for k in range(1, min(m, den.degree) + 1))
        out.append(acc * d0 if exact_int else Fraction(acc, d0))
    if not exact_int:
        out = [int(c) if c.denominator == 1 else c for c in out]
    return out
