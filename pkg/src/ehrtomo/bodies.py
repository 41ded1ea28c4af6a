"""Convex-body descriptions and their exact predicates.

A body is one of three base shapes (H-polytope, V-polytope, ball) plus a
translation vector and a positive dilation factor.  The modifiers are stored
symbolically, never baked into coordinates, so membership and lattice counts
of translated/dilated bodies stay exact.  The represented point set is::

    dilation * shape + translation

Bodies are closed: boundary points are members.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .errors import (
    DegenerateInput,
    DimensionMismatch,
    NonpositiveDilation,
    ToleranceTooSmall,
    UnboundedBody,
)
from .exactlp import INFEASIBLE, OPTIMAL, feasible_eq, solve_linear_system, solve_lp_eq
from .geomcore import Hull, convex_hull, lp_membership
from .rational import (
    RatLike,
    RatVec,
    format_rat,
    norm_sq,
    primitive_integer_vector,
    rat,
    ratvec,
    sqrt_upper_bound,
    to_floats,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
    zero_vec,
)


@dataclass(frozen=True)
class HPolytope:
    """Intersection of halfspaces ``a_rows @ x <= b`` (rational, bounded)."""

    a_rows: tuple[RatVec, ...]
    b: RatVec


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of a finite rational point set."""

    vertices: tuple[RatVec, ...]


@dataclass(frozen=True)
class Ball:
    center: RatVec
    radius: Fraction


Shape = Union[HPolytope, VPolytope, Ball]


@dataclass(frozen=True)
class Body:
    shape: Shape
    translation: RatVec
    dilation: Fraction

    @property
    def dim(self) -> int:
        return len(self.translation)


@dataclass(frozen=True)
class BoundingRadius:
    """Certified rational upper bound N on the norm of every body point
    (so the body sits inside the origin ball of radius N).  ``norm_sq`` is
    the exact squared maximum norm when it is rational (polytope cases)."""

    value: Fraction
    norm_sq: Fraction | None = field(default=None)

    def __float__(self) -> float:
        return float(self.value)


def _rank(vectors: list[RatVec]) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / pr[col]
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        rank += 1
    return rank


def vpolytope(vertices: Sequence[Sequence[RatLike | float]]) -> Body:
    verts = tuple(ratvec(v) for v in vertices)
    if not verts:
        raise DegenerateInput("no vertices")
    d = len(verts[0])
    if any(len(v) != d for v in verts):
        raise DimensionMismatch("vertices of mixed dimension")
    if _rank([vsub(v, verts[0]) for v in verts[1:]]) < d:
        raise DegenerateInput("vertex set is not full-dimensional")
    return Body(VPolytope(verts), zero_vec(d), Fraction(1))


def ball(center: Sequence[RatLike | float], radius: RatLike | float) -> Body:
    c = ratvec(center)
    r = rat(radius)
    if r <= 0:
        raise DegenerateInput("ball radius must be positive")
    return Body(Ball(c, r), zero_vec(len(c)), Fraction(1))


def hpolytope(
    a_rows: Sequence[Sequence[RatLike | float]],
    b: Sequence[RatLike | float],
) -> Body:
    rows = tuple(ratvec(r) for r in a_rows)
    rhs = ratvec(b)
    if len(rows) != len(rhs):
        raise DimensionMismatch("A and b row counts differ")
    if not rows:
        raise DegenerateInput("empty inequality system")
    d = len(rows[0])
    body = Body(HPolytope(rows, rhs), zero_vec(d), Fraction(1))
    if d <= 3:  # d > 3: caller certifies boundedness (exact checks stop at 3)
        verts = hpolytope_vertices(body)
        _check_bounded(rows, rhs, verts)
        if len(verts) < d + 1 or _rank([vsub(v, verts[0]) for v in verts[1:]]) < d:
            raise DegenerateInput("H-polytope has empty interior")
    return body


def _check_bounded(
    rows: tuple[RatVec, ...], rhs: RatVec, verts: list[RatVec]
) -> None:
    """Bounded iff no point beyond the vertex box is feasible, probed with
    one exact LP per signed axis."""
    d = len(rows[0])
    bound = max((max(abs(c) for c in v) for v in verts), default=Fraction(0)) + 1
    m = len(rows)
    for axis in range(d):
        for sign in (1, -1):
            # vars: x+ (d), x- (d), slack (m), surplus (1)
            eq_rows = []
            eq_rhs = []
            for i in range(m):
                eq_rows.append(
                    [rows[i][j] for j in range(d)]
                    + [-rows[i][j] for j in range(d)]
                    + [Fraction(int(k == i)) for k in range(m)]
                    + [Fraction(0)]
                )
                eq_rhs.append(rhs[i])
            probe = [Fraction(0)] * (2 * d + m) + [Fraction(-1)]
            probe[axis] = Fraction(sign)
            probe[d + axis] = Fraction(-sign)
            eq_rows.append(probe)
            eq_rhs.append(bound)
            if feasible_eq(eq_rows, eq_rhs, 2 * d + m + 1):
                raise UnboundedBody("H-polytope is unbounded")


def translate(body: Body, w: Sequence[RatLike | float]) -> Body:
    wv = ratvec(w)
    if len(wv) != body.dim:
        raise DimensionMismatch("translation dimension mismatch")
    return replace(body, translation=vadd(body.translation, wv))


def dilate(body: Body, s: RatLike | float) -> Body:
    sv = rat(s)
    if sv <= 0:
        raise NonpositiveDilation(f"dilation must be > 0, got {sv}")
    return replace(
        body, dilation=body.dilation * sv, translation=vscale(sv, body.translation)
    )


def effective_vertices(body: Body) -> list[RatVec]:
    """Vertices of the represented set (V-polytope bodies only)."""
    if not isinstance(body.shape, VPolytope):
        raise TypeError("effective_vertices requires a V-polytope body")
    return [
        vadd(vscale(body.dilation, v), body.translation) for v in body.shape.vertices
    ]


def effective_ball(body: Body) -> tuple[RatVec, Fraction]:
    if not isinstance(body.shape, Ball):
        raise TypeError("effective_ball requires a ball body")
    c = vadd(vscale(body.dilation, body.shape.center), body.translation)
    return c, body.dilation * body.shape.radius


def effective_inequalities(body: Body) -> list[tuple[RatVec, Fraction]]:
    """Halfspace description ``n . x <= off`` of the represented set.

    Direct for H-polytopes; via an exact hull for V-polytopes (d <= 3).
    """
    if isinstance(body.shape, HPolytope):
        return [
            (a, body.dilation * bi + vdot(a, body.translation))
            for a, bi in zip(body.shape.a_rows, body.shape.b)
        ]
    if isinstance(body.shape, VPolytope):
        hull = body_hull(body)
        return [(f.normal, f.offset) for f in hull.facets]
    raise TypeError("balls have no finite inequality description")


def hpolytope_vertices(body: Body) -> list[RatVec]:
    """Enumerate the vertices of an H-polytope body exactly (d <= 3):
    solve every d-subset of facet planes and keep feasible solutions."""
    if not isinstance(body.shape, HPolytope):
        raise TypeError("hpolytope_vertices requires an H-polytope body")
    ineqs = effective_inequalities(body)
    d = body.dim
    if d > 3:
        raise DegenerateInput("vertex enumeration restricted to d <= 3")
    verts: dict[RatVec, None] = {}
    for subset in combinations(range(len(ineqs)), d):
        mat = [list(ineqs[i][0]) for i in subset]
        rhs = [ineqs[i][1] for i in subset]
        sol = solve_linear_system(mat, rhs)
        if sol is None:
            continue
        x = tuple(sol)
        if all(vdot(a, x) <= off for a, off in ineqs):
            verts.setdefault(x)
    return list(verts)


def body_vertices(body: Body) -> list[RatVec]:
    """Vertex description of a polytope body (either representation)."""
    if isinstance(body.shape, VPolytope):
        return effective_vertices(body)
    if isinstance(body.shape, HPolytope):
        return hpolytope_vertices(body)
    raise TypeError("balls have no vertex description")


def body_hull(body: Body) -> Hull:
    return convex_hull(body_vertices(body))


def contains(body: Body, x: Sequence[RatLike | float]) -> bool:
    """Exact membership of x in the represented (closed) set."""
    xv = ratvec(x)
    if len(xv) != body.dim:
        raise DimensionMismatch(
            f"point has dimension {len(xv)}, body has dimension {body.dim}"
        )
    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        return norm_sq(vsub(xv, c)) <= r * r
    if isinstance(body.shape, HPolytope):
        return all(vdot(a, xv) <= off for a, off in effective_inequalities(body))
    return lp_membership(xv, effective_vertices(body))


def bounding_radius(body: Body) -> BoundingRadius:
    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        csq = norm_sq(c)
        cnorm = sqrt_upper_bound(csq)
        exact = cnorm * cnorm == csq
        val = cnorm + r
        return BoundingRadius(value=val, norm_sq=val * val if exact else None)
    verts = body_vertices(body)
    nsq = max(norm_sq(v) for v in verts)
    return BoundingRadius(value=sqrt_upper_bound(nsq), norm_sq=nsq)


def bounding_box(body: Body) -> list[tuple[Fraction, Fraction]]:
    """Exact per-axis [lo, hi] ranges of the represented set."""
    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        return [(ci - r, ci + r) for ci in c]
    verts = body_vertices(body)
    return [
        (min(v[k] for v in verts), max(v[k] for v in verts))
        for k in range(body.dim)
    ]


def is_symmetric(body: Body) -> bool:
    """Is the represented set closed under negation (K = -K)?

    Balls compare centers; polytopes compare the canonical facet description
    of the set with that of its negation, which is decided exactly after
    hull reduction (so redundant generators or inequalities do not matter).
    """
    if isinstance(body.shape, Ball):
        c, _ = effective_ball(body)
        return all(ci == 0 for ci in c)
    if body.dim > 3:
        if isinstance(body.shape, VPolytope):
            vs = set(effective_vertices(body))
            return {vneg(v) for v in vs} == vs
        # d > 3 H-polytope: syntactic facet matching on primitive rows
        # (sound; complete only for irredundant systems)
        canon = set()
        for a, off in effective_inequalities(body):
            n = primitive_integer_vector(a)
            k = next(i for i in range(len(a)) if a[i] != 0)
            canon.add((n, off * n[k] / a[k]))
        return {(tuple(-c for c in n), off) for n, off in canon} == canon
    hull = body_hull(body)
    facets = {(f.normal, f.offset) for f in hull.facets}
    negated = {(tuple(-c for c in n), off) for n, off in facets}
    return facets == negated


MISS = None  # sentinel returned by ray_exit_parameter when the ray never enters


def ray_exit_parameter(
    body: Body, direction: Sequence[float], tol: float = 1e-9
) -> float | None:
    """sup { u >= 0 : u * direction in body }, or None if the ray misses.

    H-polytopes and V-polytopes are resolved exactly for the rationalized
    direction (facet-plane intersection and an exact LP respectively);
    balls use the quadratic closed form.  ``tol`` only calibrates the
    "within tol" contract of the returned float.
    """
    if tol < 1e-14:
        raise ToleranceTooSmall(f"tol={tol} below float64 resolution")
    nrm = math.sqrt(sum(c * c for c in direction))
    if abs(nrm - 1.0) > 1e-6:
        raise ValueError("direction must be a unit vector")
    unit = [c / nrm for c in direction]

    if isinstance(body.shape, Ball):
        c, r = effective_ball(body)
        cf = to_floats(c)
        b_lin = -2.0 * sum(u * ci for u, ci in zip(unit, cf))
        c_const = sum(ci * ci for ci in cf) - float(r) ** 2
        disc = b_lin * b_lin - 4.0 * c_const
        if disc < 0:
            return MISS
        hi = (-b_lin + math.sqrt(disc)) / 2.0
        return hi if hi >= 0 else MISS

    dir_rat = ratvec(unit)
    if isinstance(body.shape, HPolytope) or body.dim <= 3:
        lo, hi = Fraction(0), None
        for a, off in effective_inequalities(body):
            den = vdot(a, dir_rat)
            if den > 0:
                bound = off / den
                hi = bound if hi is None else min(hi, bound)
            elif den < 0:
                lo = max(lo, off / den)
            elif off < 0:
                return MISS
        if hi is None or hi < lo:
            return MISS
        return float(hi)

    # general V-polytope: maximize u with  sum(lam_i v_i) = u * dir, sum(lam) = 1
    verts = effective_vertices(body)
    n = len(verts)
    rows = [[v[k] for v in verts] + [-dir_rat[k]] for k in range(body.dim)]
    rows.append([Fraction(1)] * n + [Fraction(0)])
    rhs = [Fraction(0)] * body.dim + [Fraction(1)]
    objective = [Fraction(0)] * n + [Fraction(1)]
    status, _, value = solve_lp_eq(rows, rhs, objective)
    if status == INFEASIBLE:
        return MISS
    if status != OPTIMAL or value is None:
        raise RuntimeError("ray LP did not solve")  # bounded body: cannot happen
    return float(value)


# ---------------------------------------------------------------------------
# JSON wire format


def _parse_vec(items: Sequence) -> RatVec:
    return ratvec(rat(str(c)) if isinstance(c, str) else rat(c) for c in items)


def body_from_json(source: Union[str, dict]) -> Body:
    """Parse the CLI body description.

    Rationals cross the boundary as "p/q" strings (bare integers are also
    accepted).  Optional keys "translate" and "dilate" apply modifiers.
    """
    obj = json.loads(source) if isinstance(source, str) else source
    kind = obj.get("type")
    if kind == "vpolytope":
        body = vpolytope([_parse_vec(v) for v in obj["vertices"]])
    elif kind == "hpolytope":
        body = hpolytope([_parse_vec(r) for r in obj["A"]], _parse_vec(obj["b"]))
    elif kind == "ball":
        radius = obj["radius"]
        body = ball(_parse_vec(obj["center"]), rat(str(radius)) if isinstance(radius, str) else rat(radius))
    else:
        raise ValueError(f"unknown body type: {kind!r}")
    # dilate first so the stored (dilation, translation) fields equal the
    # JSON values verbatim: the set is  dilate * shape + translate
    if "dilate" in obj:
        dv = obj["dilate"]
        body = dilate(body, rat(str(dv)) if isinstance(dv, str) else rat(dv))
    if "translate" in obj:
        body = translate(body, _parse_vec(obj["translate"]))
    return body


def body_to_json(body: Body) -> dict:
    """Inverse of :func:`body_from_json`; round-trips exactly."""
    shape = body.shape
    if isinstance(shape, VPolytope):
        obj: dict = {
            "type": "vpolytope",
            "vertices": [[format_rat(c) for c in v] for v in shape.vertices],
        }
    elif isinstance(shape, HPolytope):
        obj = {
            "type": "hpolytope",
            "A": [[format_rat(c) for c in row] for row in shape.a_rows],
            "b": [format_rat(c) for c in shape.b],
        }
    else:
        obj = {
            "type": "ball",
            "center": [format_rat(c) for c in shape.center],
            "radius": format_rat(shape.radius),
        }
    if any(c != 0 for c in body.translation):
        obj["translate"] = [format_rat(c) for c in body.translation]
    if body.dilation != 1:
        obj["dilate"] = format_rat(body.dilation)
    return obj
