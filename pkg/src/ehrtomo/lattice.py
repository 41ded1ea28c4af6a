"""Integer-point counting for dilated translates of convex bodies.

``count(body, w, s)`` counts lattice points of ``s * (K + w)`` exactly:
membership is decided in rational arithmetic only, never with float guard
bands, so two descriptions of the same set always produce the same count.

Enumeration sweeps axis-aligned slabs with the longest box axis outermost;
the innermost axis is resolved as a closed interval in O(#facets), and for
balls via exact integer square-root bounds, so no per-point membership test
is needed on the fast paths.  Slabs are independent work units; the total is
their (associative) sum, so any execution order gives the same count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .bodies import (
    Ball,
    Body,
    HPolytope,
    bounding_box,
    contains,
    dilate,
    effective_ball,
    effective_inequalities,
    translate,
)
from .errors import NonpositiveDilation
from .rational import RatLike, RatVec, ceil_frac, floor_frac, rat, ratvec, zero_vec


@dataclass(frozen=True)
class CountQuery:
    body: Body
    w: RatVec
    s: Fraction

    def __post_init__(self) -> None:
        if self.s <= 0:
            raise NonpositiveDilation("dilation s must be > 0")
        if any(c.denominator != 1 for c in self.w):
            raise ValueError("translation w must have integer entries")


@dataclass(frozen=True)
class CountProfile:
    rows: tuple[tuple[Fraction, int], ...]


def _int_range_sq(center: Fraction, rad_sq: Fraction) -> tuple[int, int]:
    """Integers n with (n - center)^2 <= rad_sq, as [lo, hi] (empty if lo > hi).

    Float square roots give a bracket two units wide; the exact one-sided
    predicates n <= center + sqrt(rad_sq) and n >= center - sqrt(rad_sq) are
    monotone in n, so trimming the bracket endpoints is exact and bounded
    (correctly rounded float conversions are off by far less than one).
    """
    if rad_sq < 0:
        return 1, 0
    r = math.sqrt(float(rad_sq))
    c = float(center)

    def le_upper(n: int) -> bool:
        t = n - center
        return t <= 0 or t * t <= rad_sq

    def ge_lower(n: int) -> bool:
        t = n - center
        return t >= 0 or t * t <= rad_sq

    hi = math.floor(c + r) + 2
    while not le_upper(hi):
        hi -= 1
    lo = math.ceil(c - r) - 2
    while not ge_lower(lo):
        lo += 1
    return lo, hi


def _count_ball(center: RatVec, rad_sq: Fraction) -> int:
    if len(center) == 1:
        lo, hi = _int_range_sq(center[0], rad_sq)
        return max(0, hi - lo + 1)
    total = 0
    lo, hi = _int_range_sq(center[0], rad_sq)
    for x in range(lo, hi + 1):
        total += _count_ball(center[1:], rad_sq - (x - center[0]) ** 2)
    return total


def _count_polytope(
    ineqs: list[tuple[Sequence[Fraction], Fraction]],
    box: list[tuple[Fraction, Fraction]],
) -> int:
    d = len(box)
    order = sorted(range(d), key=lambda k: box[k][1] - box[k][0], reverse=True)
    rows = [([Fraction(a[k]) for k in order], off) for a, off in ineqs]
    boxo = [box[k] for k in order]

    def sweep(axis: int, remainder: list[Fraction]) -> int:
        if axis == d - 1:
            lo = ceil_frac(boxo[axis][0])
            hi = floor_frac(boxo[axis][1])
            for (a, _), rem in zip(rows, remainder):
                c = a[axis]
                if c > 0:
                    hi = min(hi, floor_frac(rem / c))
                elif c < 0:
                    lo = max(lo, ceil_frac(rem / c))
                elif rem < 0:
                    return 0
            return max(0, hi - lo + 1)
        total = 0
        for y in range(ceil_frac(boxo[axis][0]), floor_frac(boxo[axis][1]) + 1):
            total += sweep(
                axis + 1,
                [rem - a[axis] * y for (a, _), rem in zip(rows, remainder)],
            )
        return total

    return sweep(0, [off for _, off in rows])


def count(
    body: Body,
    w: Sequence[RatLike] | None = None,
    s: RatLike = 1,
) -> int:
    """Exact #( s*(K + w) intersect Z^d )."""
    wv = ratvec(w) if w is not None else zero_vec(body.dim)
    query = CountQuery(body=body, w=wv, s=rat(s))
    target = dilate(translate(query.body, query.w), query.s)

    if isinstance(target.shape, Ball):
        c, r = effective_ball(target)
        return _count_ball(c, r * r)
    if isinstance(target.shape, HPolytope) or target.dim <= 3:
        return _count_polytope(effective_inequalities(target), bounding_box(target))

    # general-d V-polytope: per-point exact membership over the box
    box = bounding_box(target)
    ranges = [range(ceil_frac(lo), floor_frac(hi) + 1) for lo, hi in box]
    return sum(1 for pt in product(*ranges) if contains(target, pt))


def count_profile(
    body: Body,
    w: Sequence[RatLike] | None,
    s_list: Sequence[RatLike],
) -> CountProfile:
    """Counts for each dilation in s_list, sorted by s."""
    if not s_list:
        raise ValueError("s_list must be nonempty")
    svals = sorted(rat(s) for s in s_list)
    return CountProfile(rows=tuple((s, count(body, w, s)) for s in svals))


def volume_from_counts(body: Body, s: RatLike) -> float:
    """count(body, 0, s) / s^d — converges to vol K with O(1/s) error for
    convex bodies."""
    sv = rat(s)
    if sv < 1:
        raise ValueError("volume estimation requires s >= 1")
    return float(count(body, None, sv)) / float(sv) ** body.dim
