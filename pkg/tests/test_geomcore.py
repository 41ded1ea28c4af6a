"""Exact hull / volume / nearest-point / membership kernels."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import clip_polygon_halfplane, grid_min_dist_sq, random_rational_polytope
from ehrtomo.errors import DegenerateInput
from ehrtomo.geomcore import (
    convex_hull,
    lp_membership,
    min_norm_point,
    min_norm_point_exact,
    polytope_volume,
)
from ehrtomo.rational import ratvec, vdot

F = Fraction


class TestConvexHull:
    def test_interior_point_dropped(self):
        hull = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1), (F(1, 2), F(1, 2))])
        assert sorted(hull.vertices) == [
            ratvec(v) for v in [(0, 0), (0, 1), (1, 0), (1, 1)]
        ]
        assert len(hull.facets) == 4

    def test_collinear_point_absorbed(self):
        # (4,0) sits on the segment from the origin to (5,0)
        hull = convex_hull([(0, 0), (4, 0), (5, 0), (5, 1), (4, 1)])
        assert sorted(hull.vertices) == [
            ratvec(v) for v in [(0, 0), (4, 1), (5, 0), (5, 1)]
        ]

    def test_simplex_3d(self):
        hull = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert len(hull.vertices) == 4
        assert len(hull.facets) == 4

    def test_cube_with_noise_points(self):
        pts = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
        noise = [
            (F(1, 2), F(1, 2), F(1, 2)),  # interior
            (F(1, 2), F(1, 2), 1),  # face center
            (F(1, 2), 0, 0),  # edge midpoint
        ]
        hull = convex_hull(pts + noise)
        assert sorted(hull.vertices) == sorted(ratvec(p) for p in pts)
        assert len(hull.facets) == 6
        for f in hull.facets:
            assert len(f.vertex_ids) == 4

    def test_input_points_satisfy_facets(self, rng):
        for dim in (2, 3):
            for _ in range(10):
                body = random_rational_polytope(rng, dim)
                verts = body.shape.vertices
                hull = convex_hull(verts)
                for p in verts:
                    assert all(vdot(f.normal, p) <= f.offset for f in hull.facets)

    def test_idempotence(self, rng):
        for dim in (2, 3):
            for _ in range(15):
                hull = convex_hull(
                    [
                        tuple(F(rng.randint(-6, 6), rng.randint(1, 2)) for _ in range(dim))
                        for _ in range(dim + rng.randint(1, 6))
                    ]
                    + [tuple(F(k == j) for k in range(dim)) for j in range(dim)]
                    + [tuple(F(0) for _ in range(dim))]
                )
                again = convex_hull(hull.vertices)
                assert sorted(again.vertices) == sorted(hull.vertices)

    def test_degenerate_inputs(self):
        with pytest.raises(DegenerateInput):
            convex_hull([(0, 0), (1, 1), (2, 2)])
        with pytest.raises(DegenerateInput):
            convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
        with pytest.raises(DegenerateInput):
            convex_hull([(1, 1)])


class TestPolytopeVolume:
    def test_unit_square(self):
        assert polytope_volume(convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])) == 1

    def test_truncated_quad(self):
        hull = convex_hull([(0, 0), (5, 0), (5, 1), (4, 1)])
        assert polytope_volume(hull) == 3

    def test_unit_simplex(self):
        hull = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
        assert polytope_volume(hull) == F(1, 6)

    def test_interval(self):
        assert polytope_volume(convex_hull([(F(1, 3),), (F(7, 2),)])) == F(19, 6)

    def test_additivity_square_split(self):
        square = [(F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))]
        left = clip_polygon_halfplane(square, (F(1), F(0)), F(1, 3))
        right = clip_polygon_halfplane(square, (F(-1), F(0)), F(-1, 3))
        va = polytope_volume(convex_hull(left))
        vb = polytope_volume(convex_hull(right))
        assert va + vb == 1
        assert va == F(1, 3)

    def test_additivity_random_splits(self, rng):
        for _ in range(20):
            body = random_rational_polytope(rng, 2)
            hull = convex_hull(body.shape.vertices)
            cycle = list(hull.vertices)
            total = polytope_volume(hull)
            n = (F(rng.randint(-3, 3)), F(rng.randint(-3, 3)))
            if n == (0, 0):
                n = (F(1), F(0))
            # split through the centroid so both cells are full-dimensional
            centroid = (
                sum((p[0] for p in cycle), F(0)) / len(cycle),
                sum((p[1] for p in cycle), F(0)) / len(cycle),
            )
            off = n[0] * centroid[0] + n[1] * centroid[1]
            cell_a = clip_polygon_halfplane(cycle, n, off)
            cell_b = clip_polygon_halfplane(cycle, (-n[0], -n[1]), -off)
            va = polytope_volume(convex_hull(cell_a))
            vb = polytope_volume(convex_hull(cell_b))
            assert va + vb == total

    def test_additivity_cube_split(self):
        cube = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
        p = F(2, 7)
        lower = [(min(x, p), y, z) for x, y, z in cube] + [
            (p, y, z) for _, y, z in cube
        ]
        upper = [(max(x, p), y, z) for x, y, z in cube] + [
            (p, y, z) for _, y, z in cube
        ]
        va = polytope_volume(convex_hull(lower))
        vb = polytope_volume(convex_hull(upper))
        assert va + vb == 1
        assert va == p


class TestMinNormPoint:
    def test_segment_projection(self):
        pt, dist = min_norm_point([(2, 1), (2, 2)])
        assert pt == (2.0, 1.0)
        assert dist == pytest.approx(math.sqrt(5), abs=1e-12)

    def test_segment_endpoint(self):
        pt, dist = min_norm_point([(5, 0), (5, 1)])
        assert pt == (5.0, 0.0)
        assert dist == pytest.approx(5.0, abs=1e-12)

    def test_triangle_containing_origin(self):
        _, dist = min_norm_point([(-1, -1), (2, 0), (0, 2)])
        assert dist == 0.0

    def test_exact_values(self):
        _, sq = min_norm_point_exact([ratvec((2, 1)), ratvec((2, 2))])
        assert sq == 5
        # perpendicular foot (5/2, 5/2) misses the segment: endpoint minimum
        pt, sq = min_norm_point_exact([ratvec((4, 1)), ratvec((5, 0))])
        assert sq == 17
        assert pt == ratvec((4, 1))

    def test_against_grid_oracle(self, rng):
        instances = 0
        while instances < 100:
            dim = rng.choice((2, 3))
            k = rng.choice((2, 3))
            verts = [
                tuple(F(rng.randint(-8, 8), rng.randint(1, 2)) for _ in range(dim))
                for _ in range(k)
            ]
            if len(set(verts)) < k:
                continue
            instances += 1
            _, exact_sq = min_norm_point_exact(verts)
            grid = grid_min_dist_sq([tuple(map(float, v)) for v in verts])
            assert grid >= float(exact_sq) - 1e-12
            assert abs(grid - float(exact_sq)) <= 1e-9 * max(1.0, float(exact_sq))


class TestLpMembership:
    def test_square_center(self):
        square = [ratvec(v) for v in [(0, 0), (1, 0), (0, 1), (1, 1)]]
        assert lp_membership(ratvec((F(1, 2), F(1, 2))), square)

    def test_outside(self):
        square = [ratvec(v) for v in [(0, 0), (1, 0), (0, 1), (1, 1)]]
        assert not lp_membership(ratvec((2, 0)), square)

    def test_boundary(self):
        tri = [ratvec(v) for v in [(0, 0), (2, 0), (0, 2)]]
        assert lp_membership(ratvec((1, 1)), tri)

    def test_agrees_with_facet_membership(self, rng):
        for trial in range(50):
            dim = 2 if trial % 2 == 0 else 3
            body = random_rational_polytope(rng, dim)
            verts = list(body.shape.vertices)
            hull = convex_hull(verts)
            los = [min(v[k] for v in verts) for k in range(dim)]
            his = [max(v[k] for v in verts) for k in range(dim)]
            grid_1d = [
                [
                    F(n, 2)
                    for n in range(math.floor(los[k] * 2), math.ceil(his[k] * 2) + 1)
                ]
                for k in range(dim)
            ]
            samples = []
            local = random.Random(trial)
            for _ in range(40):
                samples.append(tuple(local.choice(grid_1d[k]) for k in range(dim)))
            for x in samples:
                assert lp_membership(x, verts) == hull.contains(x)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.fractions(min_value=-5, max_value=5, max_denominator=4),
            st.fractions(min_value=-5, max_value=5, max_denominator=4),
        ),
        min_size=3,
        max_size=10,
    )
)
def test_hull_idempotence_hypothesis(points):
    try:
        hull = convex_hull(points)
    except DegenerateInput:
        return
    again = convex_hull(hull.vertices)
    assert sorted(again.vertices) == sorted(hull.vertices)
    for p in points:
        assert hull.contains(ratvec(p))
