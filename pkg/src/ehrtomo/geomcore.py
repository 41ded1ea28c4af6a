"""Exact convex-geometry kernels in dimensions 1-3.

Hulls are built incrementally with rational orientation predicates, so there
are no floating-point robustness issues on any ground-truth path.  Collinear
and coplanar inputs are merged into facets rather than rejected; only inputs
whose affine hull is lower-dimensional raise DegenerateInput.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateInput
from .exactlp import feasible_eq, solve_linear_system
from .rational import (
    FloatVec,
    RatVec,
    cross2,
    cross3,
    norm_sq,
    primitive_integer_vector,
    to_floats,
    vdot,
    vscale,
    vsub,
)


@dataclass(frozen=True)
class Facet:
    """One facet of a hull: outward inequality ``normal . x <= offset``.

    ``normal`` is a primitive integer vector; ``vertex_ids`` index into the
    owning hull's vertex list (a cyclic walk for d=3, a pair for d=2, a
    single vertex for d=1).
    """

    normal: tuple[int, ...]
    offset: Fraction
    vertex_ids: tuple[int, ...]


@dataclass(frozen=True)
class Hull:
    dim: int
    vertices: tuple[RatVec, ...]
    facets: tuple[Facet, ...]

    def facet_points(self, facet: Facet) -> tuple[RatVec, ...]:
        return tuple(self.vertices[i] for i in facet.vertex_ids)

    def contains(self, x: RatVec) -> bool:
        return all(vdot(f.normal, x) <= f.offset for f in self.facets)

    def interior_contains(self, x: RatVec) -> bool:
        return all(vdot(f.normal, x) < f.offset for f in self.facets)


def _orient3(a: RatVec, b: RatVec, c: RatVec, d: RatVec) -> Fraction:
    return vdot(cross3(vsub(b, a), vsub(c, a)), vsub(d, a))


def _dedupe(points: Iterable[RatVec]) -> list[RatVec]:
    seen: dict[RatVec, None] = {}
    for p in points:
        seen.setdefault(tuple(Fraction(c) for c in p))
    return list(seen)


def convex_hull(points: Sequence[Sequence[Fraction]]) -> Hull:
    """Exact convex hull for d in {1, 2, 3}.

    The returned vertex set is a subset of the input (interior and
    mid-edge/mid-face points dropped); facet normals are outward primitive
    integer vectors.
    """
    pts = _dedupe(points)
    if not pts:
        raise DegenerateInput("empty point set")
    d = len(pts[0])
    if any(len(p) != d for p in pts):
        raise DegenerateInput("mixed point dimensions")
    if d == 1:
        return _hull_1d(pts)
    if d == 2:
        return _hull_2d(pts)
    if d == 3:
        return _hull_3d(pts)
    raise DegenerateInput(f"exact hulls support d <= 3, got d = {d}")


def _hull_1d(pts: list[RatVec]) -> Hull:
    lo = min(p[0] for p in pts)
    hi = max(p[0] for p in pts)
    if lo == hi:
        raise DegenerateInput("all points coincide")
    vertices = ((lo,), (hi,))
    facets = (
        Facet(normal=(-1,), offset=-lo, vertex_ids=(0,)),
        Facet(normal=(1,), offset=hi, vertex_ids=(1,)),
    )
    return Hull(dim=1, vertices=vertices, facets=facets)


def _chain(pts: list[RatVec]) -> list[RatVec]:
    out: list[RatVec] = []
    for p in pts:
        while len(out) >= 2 and cross2(vsub(out[-1], out[-2]), vsub(p, out[-2])) <= 0:
            out.pop()
        out.append(p)
    return out


def _hull_2d(pts: list[RatVec]) -> Hull:
    pts = sorted(pts)
    lower = _chain(pts)
    upper = _chain(pts[::-1])
    cycle = lower[:-1] + upper[:-1]
    if len(cycle) < 3:
        raise DegenerateInput("points are collinear")
    vertices = tuple(cycle)  # counterclockwise, starting at the lexicographic min
    facets = []
    n = len(cycle)
    for i in range(n):
        u, w = cycle[i], cycle[(i + 1) % n]
        t = vsub(w, u)
        normal = primitive_integer_vector((t[1], -t[0]))
        facets.append(
            Facet(normal=normal, offset=vdot(normal, u), vertex_ids=(i, (i + 1) % n))
        )
    return Hull(dim=2, vertices=vertices, facets=tuple(facets))


def _seed_tetrahedron(pts: list[RatVec]) -> tuple[int, int, int, int]:
    i0 = 0
    i1 = 1  # pts are deduped, so pts[1] differs from pts[0]
    if len(pts) < 4:
        raise DegenerateInput("need at least 4 distinct points in 3-d")
    e1 = vsub(pts[i1], pts[i0])
    i2 = next(
        (i for i in range(len(pts)) if any(cross3(e1, vsub(pts[i], pts[i0])))),
        None,
    )
    if i2 is None:
        raise DegenerateInput("points are collinear")
    i3 = next(
        (
            i
            for i in range(len(pts))
            if _orient3(pts[i0], pts[i1], pts[i2], pts[i]) != 0
        ),
        None,
    )
    if i3 is None:
        raise DegenerateInput("points are coplanar")
    return i0, i1, i2, i3


def _hull_3d(pts: list[RatVec]) -> Hull:
    i0, i1, i2, i3 = _seed_tetrahedron(pts)
    interior = vscale(
        Fraction(1, 4),
        tuple(pts[i0][k] + pts[i1][k] + pts[i2][k] + pts[i3][k] for k in range(3)),
    )

    def oriented(a: int, b: int, c: int) -> tuple[int, int, int]:
        # outward: the interior point lies strictly below the face plane
        if _orient3(pts[a], pts[b], pts[c], interior) > 0:
            return (a, c, b)
        return (a, b, c)

    faces = {
        oriented(i0, i1, i2),
        oriented(i0, i1, i3),
        oriented(i0, i2, i3),
        oriented(i1, i2, i3),
    }

    seed = {i0, i1, i2, i3}
    for idx in range(len(pts)):
        if idx in seed:
            continue
        p = pts[idx]
        visible = [f for f in faces if _orient3(pts[f[0]], pts[f[1]], pts[f[2]], p) > 0]
        if not visible:
            continue
        visible_edges = set()
        for a, b, c in visible:
            visible_edges.update([(a, b), (b, c), (c, a)])
        horizon = [(u, v) for (u, v) in visible_edges if (v, u) not in visible_edges]
        faces.difference_update(visible)
        for u, v in horizon:
            faces.add(oriented(u, v, idx))

    # Merge coplanar triangles into polygonal facets keyed by supporting plane.
    planes: dict[tuple[tuple[int, ...], Fraction], set[int]] = {}
    for a, b, c in faces:
        n = cross3(vsub(pts[b], pts[a]), vsub(pts[c], pts[a]))
        normal = primitive_integer_vector(n)
        if vdot(normal, interior) > vdot(normal, pts[a]):
            normal = tuple(-x for x in normal)
        planes.setdefault((normal, vdot(normal, pts[a])), set()).update((a, b, c))

    facet_cycles: list[tuple[tuple[int, ...], Fraction, list[RatVec]]] = []
    for (normal, offset), idx_set in sorted(
        planes.items(), key=lambda kv: (kv[0][0], kv[0][1])
    ):
        cycle = _planar_cycle([pts[i] for i in idx_set], normal)
        facet_cycles.append((normal, offset, cycle))

    vertex_set = sorted({p for _, _, cycle in facet_cycles for p in cycle})
    index = {p: i for i, p in enumerate(vertex_set)}
    facets = tuple(
        Facet(normal=n, offset=off, vertex_ids=tuple(index[p] for p in cycle))
        for n, off, cycle in facet_cycles
    )
    return Hull(dim=3, vertices=tuple(vertex_set), facets=facets)


def _planar_cycle(face_pts: list[RatVec], normal: tuple[int, ...]) -> list[RatVec]:
    """Order coplanar points into a convex cycle, counterclockwise as seen
    from outside (the normal side), dropping points interior to the polygon."""
    drop = max(range(3), key=lambda k: abs(normal[k]))
    keep = [k for k in range(3) if k != drop]
    flat = {(p[keep[0]], p[keep[1]]): p for p in face_pts}
    if len(flat) == 3:
        cycle2 = sorted(flat)
    else:
        flat_sorted = sorted(flat)
        lower = _chain(flat_sorted)
        upper = _chain(flat_sorted[::-1])
        cycle2 = lower[:-1] + upper[:-1]
    cycle = [flat[q] for q in cycle2]
    newell = (Fraction(0), Fraction(0), Fraction(0))
    for i in range(len(cycle)):
        newell = tuple(
            x + y for x, y in zip(newell, cross3(cycle[i], cycle[(i + 1) % len(cycle)]))
        )
    if vdot(newell, normal) < 0:
        cycle.reverse()
    return cycle


def polytope_volume(hull: Hull) -> Fraction:
    """Exact d-volume by fan triangulation from the first hull vertex."""
    if hull.dim == 1:
        return hull.vertices[1][0] - hull.vertices[0][0]
    if hull.dim == 2:
        cyc = hull.vertices
        twice = sum(
            (cross2(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))),
            Fraction(0),
        )
        vol = abs(twice) / 2
    else:
        apex = hull.vertices[0]
        vol = Fraction(0)
        for facet in hull.facets:
            ids = facet.vertex_ids
            if 0 in ids:
                continue
            base = hull.vertices[ids[0]]
            for i in range(1, len(ids) - 1):
                vol += (
                    abs(
                        _orient3(
                            apex,
                            base,
                            hull.vertices[ids[i]],
                            hull.vertices[ids[i + 1]],
                        )
                    )
                    / 6
                )
    if vol <= 0:
        raise DegenerateInput("hull is lower-dimensional")
    return vol


def lp_membership(x: Sequence[Fraction], vertices: Sequence[RatVec]) -> bool:
    """Exact test: is x a convex combination of ``vertices``?

    Decided by a rational phase-1 simplex, so it works in any dimension.
    """
    if not vertices:
        raise ValueError("empty vertex list")
    d = len(vertices[0])
    rows = [[v[k] for v in vertices] for k in range(d)]
    rows.append([Fraction(1)] * len(vertices))
    rhs = [Fraction(c) for c in x] + [Fraction(1)]
    return feasible_eq(rows, rhs, len(vertices))


def min_norm_point_exact(
    vertices: Sequence[RatVec],
) -> tuple[RatVec, Fraction]:
    """Nearest point of conv(vertices) to the origin and its squared norm,
    both exact.

    Enumerates candidate faces (vertices, edges, and triangles for d = 3);
    the true minimizer is the orthogonal projection onto the affine hull of
    the face whose relative interior contains it, so it always appears among
    the candidates.
    """
    verts = _dedupe(vertices)
    d = len(verts[0])
    zero = tuple(Fraction(0) for _ in range(d))
    if lp_membership(zero, verts):
        return zero, Fraction(0)

    best_pt = verts[0]
    best_sq = norm_sq(verts[0])

    def consider(p: RatVec) -> None:
        nonlocal best_pt, best_sq
        sq = norm_sq(p)
        if sq < best_sq:
            best_pt, best_sq = p, sq

    for v in verts[1:]:
        consider(v)
    n = len(verts)
    for i in range(n):
        for j in range(i + 1, n):
            u, v = verts[i], verts[j]
            w = vsub(v, u)
            ww = norm_sq(w)
            if ww == 0:
                continue
            t = -vdot(u, w) / ww
            if 0 < t < 1:
                consider(tuple(ux + t * wx for ux, wx in zip(u, w)))
    if d == 3:
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    a, b, c = verts[i], verts[j], verts[k]
                    e1, e2 = vsub(b, a), vsub(c, a)
                    sol = solve_linear_system(
                        [[vdot(e1, e1), vdot(e1, e2)], [vdot(e1, e2), vdot(e2, e2)]],
                        [-vdot(a, e1), -vdot(a, e2)],
                    )
                    if sol is None:
                        continue
                    s, t = sol
                    if s >= 0 and t >= 0 and s + t <= 1:
                        consider(
                            tuple(
                                ax + s * ex + t * fx for ax, ex, fx in zip(a, e1, e2)
                            )
                        )
    return best_pt, best_sq


def min_norm_point(
    vertices: Sequence[RatVec],
) -> tuple[FloatVec, float]:
    """Float view of :func:`min_norm_point_exact`: (nearest point, distance)."""
    pt, sq = min_norm_point_exact(vertices)
    return to_floats(pt), math.sqrt(float(sq))


def facet_area_float(hull: Hull, facet: Facet) -> float:
    """(d-1)-area of one facet: exact squared Newell vector, float sqrt."""
    pts = hull.facet_points(facet)
    if hull.dim == 1:
        return 1.0
    if hull.dim == 2:
        return math.sqrt(float(norm_sq(vsub(pts[1], pts[0]))))
    newell = (Fraction(0), Fraction(0), Fraction(0))
    for i in range(len(pts)):
        newell = tuple(
            x + y for x, y in zip(newell, cross3(pts[i], pts[(i + 1) % len(pts)]))
        )
    return 0.5 * math.sqrt(float(norm_sq(newell)))
