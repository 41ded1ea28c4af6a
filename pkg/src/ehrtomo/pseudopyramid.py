"""Pseudopyramids: the union of all shrinkings lambda*K, 0 <= lambda <= 1.

For convex K this union equals conv(K u {0}): any point of lambda*K is a
convex combination of 0 and a point of K, and conversely a combination
t*k + (1-t)*0 lies in t*K.  The hull realization gives exact volumes for
polytope bodies; the union definition survives as the membership oracle for
everything else (rays from the origin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .bodies import (
    Ball,
    Body,
    body_vertices,
    bounding_box,
    effective_ball,
    effective_inequalities,
    ray_exit_parameter,
)
from .errors import ToleranceTooSmall
from .geomcore import Hull, convex_hull, min_norm_point_exact, polytope_volume
from .rational import norm_sq, zero_vec


@dataclass(frozen=True)
class PseudopyramidRecord:
    """Cached geometry of ppyr K for a polytope body (d <= 3).

    ``origin_interior`` flags the degenerate front-shell case: when the
    origin is interior to K the pseudopyramid is K itself, there is no facet
    avoiding the origin ray, and the inner radius is reported equal to the
    outer one.
    """

    base: Body
    hull: Hull
    volume_exact: Fraction
    outer_radius_sq: Fraction
    inner_radius_sq: Fraction
    origin_interior: bool

    @property
    def outer_radius(self) -> float:
        return math.sqrt(float(self.outer_radius_sq))

    @property
    def inner_radius(self) -> float:
        return math.sqrt(float(self.inner_radius_sq))


def ppyr_polytope(body: Body) -> Hull:
    """Hull of vertices(K) u {0} — the pseudopyramid of a polytope body."""
    verts = body_vertices(body)
    return convex_hull(verts + [zero_vec(body.dim)])


def ppyr_contains(body: Body, x: Sequence[float], tol: float = 1e-9) -> bool:
    """Membership in ppyr K within ``tol`` along the ray through x.

    Reduction: x != 0 lies in some lambda*K, lambda <= 1, exactly when the
    ray through x/|x| still meets K at or beyond |x|.
    """
    if tol < 1e-12:
        raise ToleranceTooSmall(f"tol={tol} below the supported 1e-12")
    nrm = math.sqrt(sum(c * c for c in x))
    if nrm == 0.0:
        return True
    exit_u = ray_exit_parameter(body, [c / nrm for c in x], tol)
    return exit_u is not None and nrm <= exit_u + tol


def _ppyr_hits_polytope(body: Body, pts: np.ndarray) -> np.ndarray:
    """Vectorized ppyr membership for polytope bodies.

    x is in ppyr K iff some lambda in [0, 1] satisfies A x <= lambda * b:
    rows with positive offset floor lambda, negative offsets cap it, zero
    offsets demand a.x <= 0.
    """
    ineqs = effective_inequalities(body)
    a = np.array([[float(c) for c in n] for n, _ in ineqs])
    b = np.array([float(off) for _, off in ineqs])
    dots = pts @ a.T
    lam_lo = np.zeros(len(pts))
    lam_hi = np.ones(len(pts))
    ok = np.ones(len(pts), dtype=bool)
    for i in range(len(b)):
        if b[i] > 0:
            lam_lo = np.maximum(lam_lo, dots[:, i] / b[i])
        elif b[i] < 0:
            lam_hi = np.minimum(lam_hi, dots[:, i] / b[i])
        else:
            ok &= dots[:, i] <= 0.0
    return ok & (lam_lo <= lam_hi)


def _ppyr_hits_ball(body: Body, pts: np.ndarray) -> np.ndarray:
    """Vectorized ppyr membership for ball bodies.

    |x - lambda c|^2 <= (lambda r)^2 is a quadratic in lambda; feasibility
    over [0, 1] decides membership.
    """
    c, r = effective_ball(body)
    cf = np.array([float(x) for x in c])
    a0 = float(norm_sq(c)) - float(r) ** 2
    xc = pts @ cf
    xx = np.einsum("ij,ij->i", pts, pts)
    if a0 <= 0:  # origin inside the ball: ppyr B = B
        return xx - 2.0 * xc + a0 <= 0.0
    disc = xc * xc - a0 * xx
    hit = disc >= 0.0
    sqrt_disc = np.sqrt(np.maximum(disc, 0.0))
    lam_lo = (xc - sqrt_disc) / a0
    lam_hi = (xc + sqrt_disc) / a0
    return hit & (lam_lo <= 1.0) & (lam_hi >= 0.0)


def ppyr_volume_exact(body: Body) -> Fraction:
    """Exact volume of ppyr K for polytope bodies (d <= 3)."""
    return polytope_volume(ppyr_polytope(body))


def ppyr_volume_montecarlo(
    body: Body,
    samples: int,
    seed: int,
    chunk: int = 1 << 20,
) -> tuple[float, float]:
    """(estimate, binomial standard error) of vol ppyr K.

    Uniform samples over the origin-anchored bounding box; the seed is part
    of the query, and chunked draws reproduce the unchunked stream.
    """
    box = bounding_box(body)
    lo = np.array([min(0.0, float(a)) for a, _ in box])
    hi = np.array([max(0.0, float(b)) for _, b in box])
    box_vol = float(np.prod(hi - lo))
    hits_fn = _ppyr_hits_ball if isinstance(body.shape, Ball) else _ppyr_hits_polytope

    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        pts = lo + rng.random((n, len(lo))) * (hi - lo)
        hits += int(np.count_nonzero(hits_fn(body, pts)))
        done += n
    p = hits / samples
    estimate = box_vol * p
    stderr = box_vol * math.sqrt(p * (1.0 - p) / samples)
    return estimate, stderr


def ppyr_volume(
    body: Body,
    mode: str = "exact",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
):
    """Volume of ppyr K: a Fraction in "exact" mode (polytopes, d <= 3),
    an (estimate, stderr) pair in "montecarlo" mode."""
    if mode == "exact":
        return ppyr_volume_exact(body)
    if mode == "montecarlo":
        return ppyr_volume_montecarlo(body, samples, seed)
    raise ValueError(f"unknown mode {mode!r}")


def radii_from_hull(hull: Hull) -> tuple[Fraction, Fraction, bool]:
    """(outer_radius_sq, inner_radius_sq, origin_interior) of a ppyr hull.

    Outer radius: farthest vertex.  Inner radius: nearest point of the front
    shell, i.e. the facets whose planes miss the origin (offset != 0 after
    canonical normalization — exact incidence).  When the origin is interior
    every facet plane misses it and the front shell degenerates to the whole
    boundary of K; that case is flagged and the inner radius reported equal
    to the outer.
    """
    outer = max(norm_sq(v) for v in hull.vertices)
    zero = zero_vec(hull.dim)
    origin_interior = hull.interior_contains(zero)
    if origin_interior:
        return outer, outer, True
    front = [f for f in hull.facets if f.offset != 0]
    inner = min(min_norm_point_exact(hull.facet_points(f))[1] for f in front)
    return outer, inner, False


def ppyr_record(body: Body) -> PseudopyramidRecord:
    """Build the cached pseudopyramid record for a polytope body (d <= 3)."""
    hull = ppyr_polytope(body)
    outer, inner, flagged = radii_from_hull(hull)
    return PseudopyramidRecord(
        base=body,
        hull=hull,
        volume_exact=polytope_volume(hull),
        outer_radius_sq=outer,
        inner_radius_sq=inner,
        origin_interior=flagged,
    )


def radii(record: PseudopyramidRecord) -> tuple[float, float]:
    """(R, r) of the pseudopyramid, as floats of the exact squared radii."""
    return record.outer_radius, record.inner_radius
