"""Real root isolation with Sturm chains over exact rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InputError
from .poly import IntPolynomial, divexact, pseudo_rem, squarefree_part

Rational = Union[int, Fraction]

DEFAULT_WIDTH = Fraction(1, 10**12)


def format_sig(x: float, digits: int = 10) -> str:
    return f"{x:.{digits}g}"


@dataclass(frozen=True)
class RootBracket:
    """A rational interval [low, high] holding exactly one real root of some polynomial."""

    low: Fraction
    high: Fraction

    @property
    def width(self) -> Fraction:
        return self.high - self.low

    @property
    def midpoint(self) -> Fraction:
        return (self.low + self.high) / 2

    @property
    def exact(self) -> bool:
        return self.low == self.high

    @property
    def refined(self) -> str:
        return format_sig(float(self.midpoint))

    def contains(self, x) -> bool:
        return self.low <= x <= self.high

    def inverted(self) -> RootBracket:
        """Bracket for 1/x; requires 0 < low."""
        if self.low <= 0:
            raise ValueError("cannot invert a bracket touching 0")
        return RootBracket(1 / self.high, 1 / self.low)

    def __str__(self):
        return f"[{self.low}, {self.high}] ≈ {self.refined}"


def sturm_chain(p: IntPolynomial) -> list[IntPolynomial]:
    """Sturm sequence of the square-free part of p, each term positively scaled."""
    p0 = squarefree_part(p)
    chain = [p0, p0.derivative()]
    while chain[-1].degree > 0:
        r = pseudo_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(-r)
    return chain


def sign_variations(chain: list[IntPolynomial], x: Rational) -> int:
    count, prev = 0, 0
    for q in chain:
        v = q.eval_rational(x)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


def count_roots(chain: list[IntPolynomial], a: Rational, b: Rational) -> int:
    """Distinct real roots in (a, b]; chain[0] must not vanish at a."""
    return sign_variations(chain, a) - sign_variations(chain, b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _deflate_at(p: IntPolynomial, r: Fraction) -> IntPolynomial:
    """Remove the root r from a square-free p."""
    return divexact(p * r.denominator, IntPolynomial([-r.numerator, r.denominator]))


def sturm_smallest_root(
    p: IntPolynomial,
    interval: tuple[Rational, Rational] = (0, 1),
    width: Rational = DEFAULT_WIDTH,
) -> Optional[RootBracket]:
    """Smallest real root of p in the half-open interval (low, high].

    Returns a bracket of width <= ``width`` (a degenerate bracket when the
    root is hit exactly), or None when p has no root there.
    """
    if not p:
        raise InputError("the zero polynomial has no isolated roots")
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    if not lo < hi:
        raise InputError(f"empty interval ({lo}, {hi}]")
    width = Fraction(width)
    f = squarefree_part(p)
    if f.degree < 1:
        return None
    if f.eval_rational(lo) == 0:
        f = _deflate_at(f, lo)
        if f.degree < 1:
            return None
    chain = sturm_chain(f)
    if count_roots(chain, lo, hi) == 0:
        return None

    # shrink until (a, b] holds exactly one root, the smallest
    a, b = lo, hi
    while count_roots(chain, a, b) > 1:
        mid = (a + b) / 2
        if f.eval_rational(mid) != 0 and count_roots(chain, a, mid) == 0:
            a = mid
        else:
            b = mid
    return _refine(f, a, b, width)


def refine(p: IntPolynomial, bracket: RootBracket, width: Rational) -> RootBracket:
    """Shrink an isolating bracket of a root of p to the requested width."""
    if bracket.exact or bracket.width <= width:
        return bracket
    return _refine(squarefree_part(p), bracket.low, bracket.high, Fraction(width))


def _refine(f: IntPolynomial, a: Fraction, b: Fraction, width: Fraction) -> RootBracket:
    """Bisect a sign-change bracket (a, b] of a simple root."""
    fb = f.eval_rational(b)
    if fb == 0:
        return RootBracket(b, b)
    sa = _sign(f.eval_rational(a))
    while b - a > width:
        mid = (a + b) / 2
        v = f.eval_rational(mid)
        if v == 0:
            return RootBracket(mid, mid)
        if _sign(v) == sa:
            a = mid
        else:
            b = mid
    return RootBracket(a, b)


def isolate_real_roots(
    p: IntPolynomial, interval: tuple[Rational, Rational], width: Rational = DEFAULT_WIDTH
) -> list[RootBracket]:
    """All distinct real roots in (low, high], ascending."""
    out = []
    lo, hi = Fraction(interval[0]), Fraction(interval[1])
    while lo < hi:
        br = sturm_smallest_root(p, (lo, hi), width)
        if br is None:
            break
        out.append(br)
        lo = br.high
    return out
