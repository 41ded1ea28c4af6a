"""Body predicates, modifiers, symmetry, rays, and the JSON wire format."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import centered_square, random_rational_polytope, unit_square
from ehrtomo import (
    ball,
    body_from_json,
    body_to_json,
    bounding_radius,
    contains,
    dilate,
    hpolytope,
    is_symmetric,
    ray_exit_parameter,
    translate,
    vpolytope,
)
from ehrtomo.bodies import effective_vertices
from ehrtomo.errors import (
    DegenerateInput,
    DimensionMismatch,
    NonpositiveDilation,
    ToleranceTooSmall,
    UnboundedBody,
)
from ehrtomo.rational import norm_sq, ratvec

F = Fraction


class TestContains:
    def test_boundary_is_included(self):
        assert contains(unit_square(), (1, 1))

    def test_ball_excludes_corner(self):
        assert not contains(ball((0, 0), 1), (1, 1))

    def test_dilated_membership(self):
        assert contains(dilate(unit_square(), F(5, 2)), (2, 2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            contains(unit_square(), (1, 1, 1))


class TestModifiers:
    def test_translate_moves_corner(self):
        assert contains(translate(unit_square(), (3, 7)), (3, 7))

    def test_dilated_ball_is_bigger_ball(self):
        b = dilate(ball((0, 0), 1), 2)
        assert contains(b, (2, 0))
        assert not contains(b, (2, F(1, 100)))

    def test_composition_law(self):
        # 2 * ([0,1]^2 + (1,0)) = [2,4] x [0,2]
        k = dilate(translate(unit_square(), (1, 0)), 2)
        assert contains(k, (2, 0))
        assert contains(k, (4, 2))
        assert not contains(k, (0, 0))
        assert not contains(k, (1, 0))

    def test_nonpositive_dilation(self):
        with pytest.raises(NonpositiveDilation):
            dilate(unit_square(), 0)
        with pytest.raises(NonpositiveDilation):
            dilate(unit_square(), F(-1, 2))


class TestBoundingRadius:
    def test_centered_square(self):
        assert bounding_radius(centered_square()).norm_sq == 2

    def test_unit_square(self):
        assert bounding_radius(unit_square()).norm_sq == 2

    def test_offset_ball(self):
        assert bounding_radius(ball((10, 0), 1)).value == 11

    def test_hpolytope_via_vertex_enumeration(self):
        box = hpolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 1, 1, 1])
        assert bounding_radius(box).norm_sq == 2

    def test_certificate_on_body_samples(self, rng):
        for dim in (2, 3):
            body = random_rational_polytope(rng, dim)
            rad = bounding_radius(body)
            verts = effective_vertices(body)
            for _ in range(1000):
                weights = [F(rng.randint(0, 8)) for _ in verts]
                total = sum(weights)
                if total == 0:
                    continue
                x = tuple(
                    sum((wi * v[k] for wi, v in zip(weights, verts)), F(0)) / total
                    for k in range(dim)
                )
                assert norm_sq(x) <= rad.value * rad.value


class TestSymmetry:
    def test_centered_square(self):
        assert is_symmetric(centered_square())

    def test_unit_square(self):
        assert not is_symmetric(unit_square())

    def test_negation_closed_quad(self):
        assert is_symmetric(vpolytope([(2, 1), (-2, -1), (1, 2), (-1, -2)]))

    def test_hpolytope_symmetric(self):
        box = hpolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 1, 1, 1])
        assert is_symmetric(box)
        shifted = hpolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], [2, 0, 1, 1])
        assert not is_symmetric(shifted)

    def test_ball_center(self):
        assert is_symmetric(ball((0, 0), 2))
        assert not is_symmetric(ball((1, 0), 2))
        assert is_symmetric(translate(ball((1, 0), 2), (-1, 0)))

    def test_symmetric_membership_probes(self, rng):
        bodies = [
            centered_square(),
            vpolytope([(2, 1), (-2, -1), (1, 2), (-1, -2)]),
            ball((0, 0), F(3, 2)),
        ]
        for body in bodies:
            assert is_symmetric(body)
            for _ in range(50):
                x = tuple(F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2))
                assert contains(body, x) == contains(body, tuple(-c for c in x))


class TestRayExit:
    def test_box_facet(self):
        box = vpolytope([(4, 0), (5, 0), (4, 1), (5, 1)])
        assert ray_exit_parameter(box, (1, 0)) == pytest.approx(5.0, abs=1e-12)

    def test_ball_miss(self):
        assert ray_exit_parameter(ball((10, 0), 1), (0, 1)) is None

    def test_ball_far_tangent(self):
        assert ray_exit_parameter(ball((10, 0), 1), (1, 0)) == pytest.approx(
            11.0, abs=1e-9
        )

    def test_tolerance_floor(self):
        with pytest.raises(ToleranceTooSmall):
            ray_exit_parameter(unit_square(), (1, 0), tol=1e-15)

    def test_consistency_with_membership(self, rng):
        tol = 1e-9
        eps = 10 * tol
        for dim in (2, 3):
            for _ in range(10):
                body = random_rational_polytope(rng, dim)
                verts = effective_vertices(body)
                centroid = tuple(
                    sum((v[k] for v in verts), F(0)) / len(verts) for k in range(dim)
                )
                n = math.sqrt(sum(float(c) ** 2 for c in centroid))
                if n < 1e-6:
                    continue
                direction = tuple(float(c) / n for c in centroid)
                u = ray_exit_parameter(body, direction, tol)
                assert u is not None
                inside = tuple(F((u - eps) * c) for c in direction)
                outside = tuple(F((u + eps) * c) for c in direction)
                assert contains(body, inside)
                assert not contains(body, outside)


class TestValidation:
    def test_unbounded_hpolytope(self):
        with pytest.raises(UnboundedBody):
            hpolytope([(1, 0), (0, 1)], [1, 1])

    def test_flat_vpolytope(self):
        with pytest.raises(DegenerateInput):
            vpolytope([(0, 0), (1, 1), (2, 2)])

    def test_empty_interior_hpolytope(self):
        with pytest.raises(DegenerateInput):
            hpolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], [0, 0, 1, 1])

    def test_bad_ball(self):
        with pytest.raises(DegenerateInput):
            ball((0, 0), 0)


class TestJson:
    def test_round_trip_zoo(self):
        zoo = [
            unit_square(),
            dilate(translate(centered_square(), (F(1, 3), -2)), F(5, 7)),
            ball((10, 0), 1),
            dilate(ball((1, 2, 3), F(3, 2)), 2),
            hpolytope([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 1, 1, 1]),
        ]
        for body in zoo:
            doc = body_to_json(body)
            again = body_from_json(doc)
            assert again == body  # exact rational equality of all fields

    def test_wire_format_strings(self):
        body = body_from_json(
            '{"type":"vpolytope","vertices":[["0","0"],["1","0"],["0","1"],'
            '["1","1"]],"translate":["1/2","0"],"dilate":"3/2"}'
        )
        assert body.dilation == F(3, 2)
        assert body.translation == ratvec((F(1, 2), 0))
        assert contains(body, (2, F(3, 2)))

    def test_unknown_type(self):
        with pytest.raises(ValueError):
            body_from_json('{"type":"torus"}')


@settings(max_examples=60, deadline=None)
@given(
    x=st.tuples(
        st.fractions(min_value=-9, max_value=9, max_denominator=6),
        st.fractions(min_value=-9, max_value=9, max_denominator=6),
    ),
    w=st.tuples(
        st.fractions(min_value=-4, max_value=4, max_denominator=3),
        st.fractions(min_value=-4, max_value=4, max_denominator=3),
    ),
    s=st.fractions(min_value=F(1, 4), max_value=4, max_denominator=5),
)
def test_modifier_coherence_hypothesis(x, w, s):
    """contains(sK, x) == contains(K, x/s) and the translate analogue."""
    for body in (centered_square(), ball((1, 1), F(3, 2))):
        assert contains(dilate(body, s), x) == contains(
            body, tuple(c / s for c in x)
        )
        assert contains(translate(body, w), x) == contains(
            body, tuple(c - d for c, d in zip(x, w))
        )
