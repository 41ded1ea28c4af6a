"""Shadows of convex bodies: orthogonal projection areas (brightness),
spherical projection areas (solid angles), and Hausdorff distances.

Brightness comes in two independent flavors so each can audit the other:
a projected-hull area and the Cauchy half-flux sum over facets.  Spherical
areas have an exact path (circle arcs in the plane, a fan of spherical
triangles over the origin cone in 3-d), a graph-parametrization quadrature
path, and a Monte-Carlo ray-casting path.

All operations of one query share a single Householder reflection that maps
the query direction to the last coordinate axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .bodies import (
    Ball,
    Body,
    body_hull,
    body_vertices,
    bounding_radius,
    contains,
    effective_ball,
    effective_inequalities,
    translate,
)
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    MuTooSmall,
    NonConvergence,
    OriginInside,
)
from .geomcore import facet_area_float, min_norm_point_exact
from .pseudopyramid import ppyr_polytope
from .rational import norm_sq, ratvec, to_floats, vsub, zero_vec


@dataclass(frozen=True)
class DirectionSample:
    """A unit direction, with its primitive integer representative when the
    direction is rational (entries coprime, parallel to v)."""

    v: tuple[float, ...]
    primitive: tuple[int, ...] | None = None

    @staticmethod
    def from_primitive(p: Sequence[int]) -> "DirectionSample":
        ints = [int(c) for c in p]
        g = math.gcd(*ints)
        if g == 0:
            raise ValueError("zero direction")
        ints = [c // g for c in ints]
        nrm = math.sqrt(sum(c * c for c in ints))
        return DirectionSample(tuple(c / nrm for c in ints), tuple(ints))

    @staticmethod
    def from_floats(v: Sequence[float]) -> "DirectionSample":
        nrm = math.sqrt(sum(c * c for c in v))
        if nrm == 0.0:
            raise ValueError("zero direction")
        return DirectionSample(tuple(c / nrm for c in v))

    @property
    def dim(self) -> int:
        return len(self.v)

    @property
    def primitive_norm(self) -> float | None:
        if self.primitive is None:
            return None
        return math.sqrt(sum(c * c for c in self.primitive))


def as_direction(v: "DirectionSample | Sequence[float]") -> DirectionSample:
    if isinstance(v, DirectionSample):
        return v
    return DirectionSample.from_floats(tuple(float(c) for c in v))


def rotation_to_last_axis(v: Sequence[float]) -> np.ndarray:
    """Householder reflection Q (symmetric, involutive) with Q v = e_d."""
    vv = np.asarray(v, dtype=float)
    vv = vv / np.linalg.norm(vv)
    e = np.zeros(len(vv))
    e[-1] = 1.0
    u = vv - e
    uu = float(u @ u)
    if uu < 1e-28:
        return np.eye(len(vv))
    return np.eye(len(vv)) - 2.0 * np.outer(u, u) / uu


# ---------------------------------------------------------------------------
# float 2-d helpers (used only on non-ground-truth paths)


def _hull2d_float(points: np.ndarray) -> np.ndarray:
    """Monotone chain on float points; returns the ccw cycle."""
    pts = np.unique(points, axis=0)
    if len(pts) < 3:
        return pts
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    pts = pts[order]

    def chain(seq):
        out: list[np.ndarray] = []
        for p in seq:
            while len(out) >= 2 and (
                (out[-1][0] - out[-2][0]) * (p[1] - out[-2][1])
                - (out[-1][1] - out[-2][1]) * (p[0] - out[-2][0])
            ) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


def _polygon_area(cycle: np.ndarray) -> float:
    x, y = cycle[:, 0], cycle[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _point_in_convex_polygon(cycle: np.ndarray, p: Sequence[float], tol: float) -> bool:
    n = len(cycle)
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
        if cross < -tol:
            return False
    return True


# ---------------------------------------------------------------------------
# brightness (orthogonal projection area)


def _ball_slice_volume(r: float, dim: int) -> float:
    """Volume of the dim-ball of radius r (projection of a ball)."""
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0) * r**dim


def brightness_hull(body: Body, v: "DirectionSample | Sequence[float]") -> float:
    """(d-1)-area of the orthogonal shadow of the body on {v}^perp.

    Polytopes: project the vertices, hull them, measure.  Balls: closed form
    (a (d-1)-ball of the same radius).
    """
    ds = as_direction(v)
    if ds.dim != body.dim:
        raise DimensionMismatch("direction/body dimension mismatch")
    if isinstance(body.shape, Ball):
        _, r = effective_ball(body)
        return _ball_slice_volume(float(r), body.dim - 1)
    verts = np.array([to_floats(p) for p in body_vertices(body)])
    if body.dim == 2:
        perp = np.array([-ds.v[1], ds.v[0]])
        dots = verts @ perp
        return float(dots.max() - dots.min())
    if body.dim == 3:
        q = rotation_to_last_axis(ds.v)
        shadow = (verts @ q.T)[:, :2]
        cycle = _hull2d_float(shadow)
        if len(cycle) < 3:
            raise DegenerateInput("projected body is lower-dimensional")
        return _polygon_area(cycle)
    raise DegenerateInput("brightness supports d in {2, 3}")


def brightness_facet_sum(body: Body, v: "DirectionSample | Sequence[float]") -> float:
    """Independent brightness oracle: half the total absolute flux
    (1/2) * sum_F |v . n_F| area(F) over the facets."""
    ds = as_direction(v)
    if ds.dim != body.dim:
        raise DimensionMismatch("direction/body dimension mismatch")
    hull = body_hull(body)
    total = 0.0
    for facet in hull.facets:
        n = np.array(facet.normal, dtype=float)
        n /= np.linalg.norm(n)
        total += abs(float(np.dot(n, ds.v))) * facet_area_float(hull, facet)
    return 0.5 * total


# ---------------------------------------------------------------------------
# ray casting


def _normalized_facets(body: Body) -> tuple[np.ndarray, np.ndarray]:
    ineqs = effective_inequalities(body)
    a = np.array([[float(c) for c in n] for n, _ in ineqs])
    b = np.array([float(off) for _, off in ineqs])
    scale = np.linalg.norm(a, axis=1)
    return a / scale[:, None], b / scale


def ray_hits(body: Body, dirs: np.ndarray) -> np.ndarray:
    """Vectorized: does the ray {u * dir, u >= 0} meet the body?"""
    dirs = np.atleast_2d(np.asarray(dirs, dtype=float))
    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        cf = np.array([float(x) for x in c])
        b_lin = -2.0 * dirs @ cf
        c0 = float(norm_sq(c)) - float(r) ** 2
        disc = b_lin * b_lin - 4.0 * c0 * np.einsum("ij,ij->i", dirs, dirs)
        hi = (-b_lin + np.sqrt(np.maximum(disc, 0.0))) / 2.0
        return (disc >= 0.0) & (hi >= 0.0)
    a, b = _normalized_facets(body)
    den = dirs @ a.T
    eps = 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = b / den
    hi = np.min(np.where(den > eps, ratio, np.inf), axis=1)
    lo = np.max(np.where(den < -eps, ratio, 0.0), axis=1)
    grazing_bad = np.any((np.abs(den) <= eps) & (b < -eps), axis=1)
    return (hi >= lo) & (hi >= 0.0) & ~grazing_bad


# ---------------------------------------------------------------------------
# spherical projection area


def sphere_surface_area(d: int) -> float:
    """Area of the unit (d-1)-sphere in R^d."""
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def sphere_chart(
    mu: float = 1.0,
) -> tuple[Callable[[Sequence[float]], tuple[float, ...]], Callable[[Sequence[float], int], float]]:
    """Graph parametrization of the radius-mu upper hemisphere and the
    closed-form partial derivative of its last component."""

    def phi(y: Sequence[float]) -> tuple[float, ...]:
        rest = mu * mu - sum(c * c for c in y)
        return (*[float(c) for c in y], math.sqrt(rest))

    def dlast(y: Sequence[float], j: int) -> float:
        rest = mu * mu - sum(c * c for c in y)
        return -float(y[j]) / math.sqrt(rest)

    return phi, dlast


def _vos_triangle(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """Solid angle of the spherical triangle with unit vertex directions."""
    num = abs(float(np.dot(a, np.cross(b, c))))
    den = 1.0 + float(np.dot(a, b)) + float(np.dot(b, c)) + float(np.dot(c, a))
    return 2.0 * math.atan2(num, den)


def _cone_solid_angle(body: Body) -> float:
    """Exact-form solid angle of a 3-d polytope seen from the origin: fan the
    convex spherical polygon cut by the origin cone of ppyr K."""
    hull = ppyr_polytope(body)
    zero = zero_vec(3)
    origin_id = hull.vertices.index(zero)
    neighbor_ids: set[int] = set()
    for facet in hull.facets:
        if facet.offset != 0:
            continue
        ids = facet.vertex_ids
        k = ids.index(origin_id)
        neighbor_ids.add(ids[(k - 1) % len(ids)])
        neighbor_ids.add(ids[(k + 1) % len(ids)])
    dirs = np.array([to_floats(hull.vertices[i]) for i in sorted(neighbor_ids)])
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    axis = dirs.sum(axis=0)
    axis /= np.linalg.norm(axis)
    # order the silhouette rays around the cone axis
    basis = rotation_to_last_axis(axis)[:2]
    ang = np.arctan2(dirs @ basis[1], dirs @ basis[0])
    dirs = dirs[np.argsort(ang)]
    return sum(
        _vos_triangle(dirs[0], dirs[i], dirs[i + 1]) for i in range(1, len(dirs) - 1)
    )


def _angular_extent_2d(body: Body) -> float:
    """Arc length of the circular shadow of a planar body off the origin."""
    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        return 2.0 * math.asin(float(r) / math.sqrt(float(norm_sq(c))))
    verts = [to_floats(p) for p in body_vertices(body)]
    cx = sum(p[0] for p in verts) / len(verts)
    cy = sum(p[1] for p in verts) / len(verts)
    ref = math.atan2(cy, cx)
    rel = []
    for x, y in verts:
        a = math.atan2(y, x) - ref
        while a <= -math.pi:
            a += 2.0 * math.pi
        while a > math.pi:
            a -= 2.0 * math.pi
        rel.append(a)
    return max(rel) - min(rel)


def _chart_frame(body: Body) -> tuple[np.ndarray, float]:
    """Rotation aligning the body's direction cone with e_d, and the radius
    of the chart's shadow footprint (sin of the widest direction angle)."""
    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        cf = np.array([float(x) for x in c])
        axis = cf / np.linalg.norm(cf)
        sin_max = float(r) / float(np.linalg.norm(cf))
        return rotation_to_last_axis(axis), sin_max
    verts = np.array([to_floats(p) for p in body_vertices(body)])
    dirs = verts / np.linalg.norm(verts, axis=1)[:, None]
    axis = dirs.mean(axis=0)
    axis /= np.linalg.norm(axis)
    cos_min = float((dirs @ axis).min())
    if cos_min <= 1e-9:
        raise NonConvergence(
            "spherical projection does not fit a single chart around the mean direction"
        )
    return rotation_to_last_axis(axis), math.sqrt(max(0.0, 1.0 - cos_min * cos_min))


def _spherical_area_quadrature(
    body: Body, tol: float, n0: int = 24, max_refine: int = 6
) -> float:
    """Adaptive tensor midpoint rule for the graph-parametrization integral
    (area element 1/sqrt(1-|y|^2) over the shadow of the projection), with
    one-step Richardson stabilization across grid doublings."""
    q, sin_max = _chart_frame(body)
    ymax = min(1.0 - 1e-12, sin_max * 1.0000001)
    prev = None
    prev_extrap = None
    n = n0
    for _ in range(max_refine + 1):
        h = 2.0 * ymax / n
        centers = -ymax + h * (np.arange(n) + 0.5)
        yy1, yy2 = np.meshgrid(centers, centers, indexing="ij")
        ys = np.column_stack([yy1.ravel(), yy2.ravel()])
        rad2 = np.einsum("ij,ij->i", ys, ys)
        mask = rad2 < 1.0 - 1e-14
        ys = ys[mask]
        rad2 = rad2[mask]
        z = np.sqrt(1.0 - rad2)
        dirs = np.column_stack([ys, z]) @ q.T  # q is symmetric: q.T maps back
        hits = ray_hits(body, dirs)
        integral = float(np.sum(1.0 / z[hits])) * h * h
        if prev is not None:
            extrap = 2.0 * integral - prev
            if prev_extrap is not None and abs(extrap - prev_extrap) <= tol * max(
                1.0, abs(extrap)
            ):
                return extrap
            prev_extrap = extrap
        prev = integral
        n *= 2
    raise NonConvergence(f"quadrature did not stabilize within tol={tol}")


def _spherical_area_montecarlo(
    body: Body, samples: int, seed: int, chunk: int = 1 << 20
) -> tuple[float, float]:
    d = body.dim
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        n = min(chunk, samples - done)
        g = rng.normal(size=(n, d))
        g /= np.linalg.norm(g, axis=1)[:, None]
        hits += int(np.count_nonzero(ray_hits(body, g)))
        done += n
    p = hits / samples
    area = sphere_surface_area(d)
    return area * p, area * math.sqrt(p * (1.0 - p) / samples)


def spherical_area(
    body: Body,
    method: str = "exact",
    *,
    samples: int = 1_000_000,
    seed: int = 0,
    tol: float = 1e-3,
):
    """Area of the radial projection of the body on the unit sphere (the
    solid angle subtended at the origin).

    method "exact": closed forms — arc extent for d=2, tangent-cap formula
    for balls, spherical-polygon fan over the origin cone for 3-d polytopes.
    method "quadrature": d=3 graph-parametrization quadrature (returns a
    float like "exact").  method "montecarlo": uniform direction sampling;
    returns (estimate, stderr).
    """
    if contains(body, zero_vec(body.dim)):
        raise OriginInside("spherical projection area requires 0 outside the body")
    if method == "montecarlo":
        return _spherical_area_montecarlo(body, samples, seed)
    if method == "quadrature":
        if body.dim != 3:
            raise DegenerateInput("quadrature path is for d = 3")
        return _spherical_area_quadrature(body, tol)
    if method != "exact":
        raise ValueError(f"unknown method {method!r}")
    if body.dim == 2:
        return _angular_extent_2d(body)
    if body.dim == 3:
        if isinstance(body.shape, Ball):
            c, r = effective_ball(body)
            cos_t = math.sqrt(
                max(0.0, 1.0 - (float(r) / math.sqrt(float(norm_sq(c)))) ** 2)
            )
            return 2.0 * math.pi * (1.0 - cos_t)
        return _cone_solid_angle(body)
    raise DegenerateInput("exact spherical area supports d in {2, 3}")


# ---------------------------------------------------------------------------
# shadow regions of the main limit argument


@dataclass
class ShadowRegion:
    """A convex region of the hyperplane {v}^perp, exposed as a membership
    oracle plus explicit geometry on the polytope path (an interval for
    d=2 shadows, a polygon for d=3)."""

    dim: int
    bounding_radius: float
    member: Callable[[Sequence[float]], bool]
    interval: tuple[float, float] | None = None
    polygon: np.ndarray | None = None

    def contains(self, y: Sequence[float]) -> bool:
        return self.member(y)


def shadow_regions(
    body: Body,
    v: "DirectionSample | Sequence[float]",
    mu: float,
) -> tuple[ShadowRegion, ShadowRegion]:
    """The orthogonal shadow K' of K and the radial-then-orthogonal shadow
    K_mu of K + mu*v, both in the rotated frame where v is the last axis.

    Requires mu > N so the translated body sits strictly on one side of the
    hyperplane (single-chart regime).
    """
    ds = as_direction(v)
    n_rad = bounding_radius(body)
    if mu <= float(n_rad.value):
        raise MuTooSmall(f"mu={mu} must exceed the bounding radius {float(n_rad.value):.6g}")
    q = rotation_to_last_axis(ds.v)
    d = body.dim

    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        c_rot = q @ np.array([float(x) for x in c])
        center = c_rot[:-1]
        rad = float(r)
        kprime = ShadowRegion(
            dim=d - 1,
            bounding_radius=float(np.linalg.norm(center)) + rad,
            member=lambda y: float(np.linalg.norm(np.asarray(y, float) - center))
            <= rad + 1e-12,
            interval=(float(center[0]) - rad, float(center[0]) + rad)
            if d == 2
            else None,
        )
    else:
        verts = np.array([to_floats(p) for p in body_vertices(body)])
        shadow = (verts @ q.T)[:, : d - 1]
        if d == 2:
            lo, hi = float(shadow.min()), float(shadow.max())
            kprime = ShadowRegion(
                dim=1,
                bounding_radius=max(abs(lo), abs(hi)),
                member=lambda y: lo - 1e-12 <= float(np.asarray(y).ravel()[0]) <= hi + 1e-12,
                interval=(lo, hi),
            )
        else:
            cycle = _hull2d_float(shadow)
            scale = float(np.abs(cycle).max())
            kprime = ShadowRegion(
                dim=2,
                bounding_radius=float(np.linalg.norm(cycle, axis=1).max()),
                member=lambda y: _point_in_convex_polygon(cycle, y, 1e-9 * max(1.0, scale)),
                polygon=cycle,
            )

    shifted = translate(body, ratvec(Fraction(mu * c) for c in ds.v))

    def kmu_member(y: Sequence[float]) -> bool:
        yv = np.asarray(y, dtype=float).ravel()
        rad2 = float(yv @ yv)
        if rad2 > mu * mu:
            return False
        direction = q @ np.append(yv, math.sqrt(mu * mu - rad2))
        return bool(ray_hits(shifted, direction / mu)[0])

    kmu = ShadowRegion(
        dim=d - 1, bounding_radius=float(n_rad.value), member=kmu_member
    )
    return kprime, kmu


def shadow_hausdorff_measured(
    body: Body,
    v: "DirectionSample | Sequence[float]",
    mu: float,
    samples: int = 10_000,
) -> float:
    """Measured Hausdorff distance between K' and K_mu for planar bodies,
    from dense images of the boundary of K + mu*v (vertices included)."""
    if body.dim != 2:
        raise DimensionMismatch("measured shadow distance implemented for d = 2")
    ds = as_direction(v)
    n_rad = bounding_radius(body)
    if mu <= float(n_rad.value):
        raise MuTooSmall("mu must exceed the bounding radius")
    q = rotation_to_last_axis(ds.v)
    hull = body_hull(body)
    verts = np.array([to_floats(p) for p in hull.vertices]) @ q.T
    kprime_lo, kprime_hi = float(verts[:, 0].min()), float(verts[:, 0].max())

    lifted = verts + np.array([0.0, mu])
    per_edge = max(2, samples // max(1, len(lifted)))
    images = []
    for i in range(len(lifted)):
        a, b = lifted[i], lifted[(i + 1) % len(lifted)]
        ts = np.linspace(0.0, 1.0, per_edge)
        pts = a[None, :] + ts[:, None] * (b - a)[None, :]
        images.append(mu * pts[:, 0] / np.linalg.norm(pts, axis=1))
    img = np.concatenate(images)
    kmu_lo, kmu_hi = float(img.min()), float(img.max())
    return max(abs(kprime_lo - kmu_lo), abs(kprime_hi - kmu_hi))


# ---------------------------------------------------------------------------
# Hausdorff distance


def hausdorff_distance(body_a: Body, body_b: Body) -> float:
    """Hausdorff distance between two polytope bodies (exact squared vertex
    distances, one float sqrt at the end) or two balls (support formula).

    Directed convex Hausdorff distance is attained at extreme points: the
    distance-to-a-convex-set function is convex, so its maximum over a
    polytope sits at a vertex.
    """
    if body_a.dim != body_b.dim:
        raise DimensionMismatch("bodies live in different dimensions")
    a_ball = isinstance(body_a.shape, Ball)
    b_ball = isinstance(body_b.shape, Ball)
    if a_ball and b_ball:
        ca, ra = effective_ball(body_a)
        cb, rb = effective_ball(body_b)
        return math.sqrt(float(norm_sq(vsub(ca, cb)))) + abs(float(ra) - float(rb))
    if a_ball or b_ball:
        raise TypeError("hausdorff_distance supports polytope/polytope or ball/ball")

    va = body_vertices(body_a)
    vb = body_vertices(body_b)

    def directed_sq(src: list, dst: list) -> Fraction:
        worst = Fraction(0)
        for p in src:
            _, sq = min_norm_point_exact([vsub(w, p) for w in dst])
            worst = max(worst, sq)
        return worst

    return math.sqrt(float(max(directed_sq(va, vb), directed_sq(vb, va))))
