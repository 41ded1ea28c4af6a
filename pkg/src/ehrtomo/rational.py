"""Exact rational scalars and vectors.

Scalars are ``fractions.Fraction`` (arbitrary precision, always canonical:
positive denominator, gcd-reduced).  Vectors are plain tuples of Fractions,
so they hash, compare, and freeze for free.  Float vectors are tuples of
Python floats; conversion float -> Fraction is exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
RatVec = tuple[Fraction, ...]
FloatVec = tuple[float, ...]

RatLike = Union[Fraction, int, str]


def rat(x: RatLike | float) -> Fraction:
    """Coerce ints, "p/q" strings, Fractions, or floats (exactly) to Fraction."""
    return Fraction(x)


def ratvec(coords: Iterable[RatLike | float]) -> RatVec:
    return tuple(Fraction(c) for c in coords)


def zero_vec(dim: int) -> RatVec:
    return (Fraction(0),) * dim


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> RatVec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> RatVec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(s: Fraction, a: Sequence[Fraction]) -> RatVec:
    return tuple(s * x for x in a)


def vneg(a: Sequence[Fraction]) -> RatVec:
    return tuple(-x for x in a)


def vdot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def norm_sq(a: Sequence[Fraction]) -> Fraction:
    return vdot(a, a)


def cross2(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def cross3(a: Sequence[Fraction], b: Sequence[Fraction]) -> RatVec:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def to_floats(a: Sequence[Fraction]) -> FloatVec:
    return tuple(float(x) for x in a)


def primitive_integer_vector(a: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a nonzero rational vector by a positive rational into a primitive
    integer vector (entries coprime)."""
    denom_lcm = 1
    for x in a:
        denom_lcm = math.lcm(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in a]
    g = math.gcd(*ints) if any(ints) else 0
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(n // g for n in ints)


def format_rat(x: Fraction) -> str:
    """Render as "p" or "p/q" (q > 0)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(s: str) -> Fraction:
    """Parse "p/q" / "p" / decimal strings into an exact Fraction."""
    return Fraction(s.strip())


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def sqrt_upper_bound(x: Fraction, slack: Fraction = Fraction(1, 10**9)) -> Fraction:
    """A rational upper bound on sqrt(x), exact when x is a perfect rational
    square, otherwise within ``slack`` of the true root."""
    if x < 0:
        raise ValueError("negative radicand")
    if x == 0:
        return Fraction(0)
    num_root = math.isqrt(x.numerator)
    den_root = math.isqrt(x.denominator)
    if num_root * num_root == x.numerator and den_root * den_root == x.denominator:
        return Fraction(num_root, den_root)
    lo = Fraction(math.sqrt(float(x))) * Fraction(9, 10)
    hi = max(Fraction(math.sqrt(float(x))) * Fraction(11, 10), lo + 1)
    while hi * hi < x:  # guard against float underestimate
        hi *= 2
    while lo * lo > x:
        lo /= 2
    while hi - lo > slack:
        mid = (lo + hi) / 2
        if mid * mid < x:
            lo = mid
        else:
            hi = mid
    return hi
