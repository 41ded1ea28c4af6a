"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from ehrtomo import Body, ball, contains, translate, vpolytope
from ehrtomo.bodies import bounding_box
from ehrtomo.geomcore import convex_hull
from ehrtomo.rational import ceil_frac, floor_frac


# ---------------------------------------------------------------------------
# body zoo


def unit_square() -> Body:
    return vpolytope([(0, 0), (1, 0), (0, 1), (1, 1)])


def centered_square() -> Body:
    return vpolytope([(-1, -1), (1, -1), (-1, 1), (1, 1)])


def triangle() -> Body:
    return vpolytope([(0, 0), (2, 0), (0, 2)])


def unit_cube() -> Body:
    return vpolytope([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])


def centered_cube() -> Body:
    return vpolytope(
        [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    )


def diamond() -> Body:
    """Rotated square of volume 4 (vertices on the axes at +-sqrt(2),
    rationalized through the float grid)."""
    s = Fraction(math.sqrt(2))
    return vpolytope([(s, 0), (-s, 0), (0, s), (0, -s)])


def tetrahedron() -> Body:
    return vpolytope([(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)])


def body_zoo() -> list[Body]:
    return [
        unit_square(),
        centered_square(),
        triangle(),
        translate(unit_square(), (4, 0)),
        unit_cube(),
        centered_cube(),
        tetrahedron(),
        ball((0, 0), 1),
        ball((10, 0), 1),
        ball((0, 0, 0), Fraction(3, 2)),
    ]


# ---------------------------------------------------------------------------
# random rational polytopes


def random_rational_polytope(rng: random.Random, dim: int, span: int = 4) -> Body:
    """Full-dimensional polytope with small rational vertex coordinates."""
    while True:
        npts = rng.randint(dim + 1, dim + 5)
        pts = [
            tuple(
                Fraction(rng.randint(-span, span), rng.randint(1, 3))
                for _ in range(dim)
            )
            for _ in range(npts)
        ]
        try:
            hull = convex_hull(pts)
        except Exception:
            continue
        return vpolytope(hull.vertices)


def random_unit_direction(rng: random.Random, dim: int) -> tuple[float, ...]:
    while True:
        v = [rng.gauss(0.0, 1.0) for _ in range(dim)]
        n = math.sqrt(sum(c * c for c in v))
        if n > 1e-6:
            return tuple(c / n for c in v)


def exterior_translate(rng: random.Random, body: Body) -> Body:
    """Shift the body by an integer vector long enough that the origin is
    strictly outside."""
    box = bounding_box(body)
    reach = max(max(abs(lo), abs(hi)) for lo, hi in box)
    shift = int(reach) + rng.randint(2, 5)
    w = [0] * body.dim
    axis = rng.randrange(body.dim)
    w[axis] = shift if rng.random() < 0.5 else -shift
    moved = translate(body, w)
    assert not contains(moved, [0] * body.dim)
    return moved


# ---------------------------------------------------------------------------
# independent oracles


def brute_force_count(body: Body, w=None, s=1) -> int:
    """Naive enumerator: every lattice point of the bounding box, membership
    via the public contains() — no slabs, no interval arithmetic."""
    from ehrtomo import dilate
    from ehrtomo import translate as _translate

    target = body
    if w is not None:
        target = _translate(target, w)
    target = dilate(target, s)
    box = bounding_box(target)
    ranges = [range(ceil_frac(lo), floor_frac(hi) + 1) for lo, hi in box]

    def rec(prefix, rest):
        if not rest:
            return 1 if contains(target, prefix) else 0
        return sum(rec(prefix + [x], rest[1:]) for x in rest[0])

    return rec([], ranges)


def grid_min_dist_sq(vertices: list[tuple[float, ...]], rounds: int = 6) -> float:
    """Refined-grid minimum of |x|^2 over a segment or triangle given by
    float vertices (dense where it matters; used to audit the exact path)."""
    verts = [np.asarray(v, dtype=float) for v in vertices]
    if len(verts) == 2:
        a, b = verts
        lo, hi = 0.0, 1.0
        best = None
        for _ in range(rounds):
            ts = np.linspace(lo, hi, 1001)
            pts = a[None, :] + ts[:, None] * (b - a)[None, :]
            d2 = np.einsum("ij,ij->i", pts, pts)
            i = int(np.argmin(d2))
            best = float(d2[i])
            width = (hi - lo) / 1000.0
            lo, hi = max(0.0, ts[i] - width), min(1.0, ts[i] + width)
        return best
    if len(verts) == 3:
        a, b, c = verts
        e1, e2 = b - a, c - a
        ulo, uhi, vlo, vhi = 0.0, 1.0, 0.0, 1.0
        best = np.inf
        for _ in range(rounds):
            us = np.linspace(ulo, uhi, 120)
            vs = np.linspace(vlo, vhi, 120)
            uu, vv = np.meshgrid(us, vs, indexing="ij")
            mask = uu + vv <= 1.0
            uu, vv = uu[mask], vv[mask]
            pts = a[None, :] + uu[:, None] * e1[None, :] + vv[:, None] * e2[None, :]
            d2 = np.einsum("ij,ij->i", pts, pts)
            i = int(np.argmin(d2))
            best = min(best, float(d2[i]))
            wu = (uhi - ulo) / 60.0
            wv = (vhi - vlo) / 60.0
            ulo, uhi = max(0.0, uu[i] - wu), min(1.0, uu[i] + wu)
            vlo, vhi = max(0.0, vv[i] - wv), min(1.0, vv[i] + wv)
        # boundary minima are nailed by the segment refinements
        for pair in ((a, b), (b, c), (a, c)):
            best = min(best, grid_min_dist_sq([tuple(pair[0]), tuple(pair[1])], rounds))
        return best
    raise ValueError("oracle supports segments and triangles")


def clip_polygon_halfplane(
    cycle: list[tuple[Fraction, Fraction]],
    normal: tuple[Fraction, Fraction],
    offset: Fraction,
) -> list[tuple[Fraction, Fraction]]:
    """Exact Sutherland-Hodgman clip of a convex cycle to n.x <= off."""
    out: list[tuple[Fraction, Fraction]] = []
    n = len(cycle)
    for i in range(n):
        cur, nxt = cycle[i], cycle[(i + 1) % n]
        fc = normal[0] * cur[0] + normal[1] * cur[1] - offset
        fn = normal[0] * nxt[0] + normal[1] * nxt[1] - offset
        if fc <= 0:
            out.append(cur)
        if (fc < 0 < fn) or (fn < 0 < fc):
            t = fc / (fc - fn)
            out.append(
                (cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1]))
            )
    return out


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
