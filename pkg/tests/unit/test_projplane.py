import pytest
from hypothesis import given, strategies as st
from plane_matroids.core.gf import make_field
from plane_matroids.core.projplane import (
    ProjLine, ProjPoint, collinear, enumerate_plane, incident,
    line_through, meet, parse_point, points_on
)

GF5 = make_field(5)

nonzero_triples = st.tuples(
    st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)
).filter(lambda t: any(t))

class TestPoints:
    def test_from_values_normalizes(self):
        """[2,4,6] over GF(7) is stored as [1,2,3]"""
        spec = make_field(7)
        P = ProjPoint.from_values(spec, 2, 4, 6)
        assert str(P) == "[1,2,3]"
        assert P == ProjPoint.from_values(spec, 1, 2, 3)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError, match="all coordinates are zero"):
            ProjPoint.from_values(GF5, 0, 0, 0)

    def test_unnormalized_coordinates_rejected(self):
        with pytest.raises(ValueError, match="not normalized"):
            ProjPoint((GF5.scalar(2), GF5.one, GF5.one))

    def test_parse_point(self):
        spec = make_field(2, 2)
        P = parse_point(spec, "[1,w,w+1]")
        assert P == ProjPoint.from_values(spec, 1, spec.generator, spec.generator + 1)

    def test_parse_point_needs_three_coordinates(self):
        with pytest.raises(ValueError, match="not a point"):
            parse_point(GF5, "[1,2]")

class TestIncidence:
    def test_collinear_on_line_y_zero(self):
        spec = make_field(3)
        points = [ProjPoint.from_values(spec, x, 0, 1) for x in range(3)]
        assert collinear(*points) == True

    def test_triangle_not_collinear(self):
        points = [ProjPoint.from_values(GF5, *v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        assert collinear(*points) == False

    def test_line_through_contains_both_points(self):
        P = ProjPoint.from_values(GF5, 1, 2, 3)
        Q = ProjPoint.from_values(GF5, 0, 1, 4)
        L = line_through(P, Q)
        assert incident(P, L) and incident(Q, L)

    def test_coinciding_points(self):
        P = ProjPoint.from_values(GF5, 1, 2, 3)
        with pytest.raises(ValueError, match="points coincide"):
            line_through(P, P)

    def test_meet_is_dual_of_join(self):
        L1 = ProjLine.from_values(GF5, 1, 0, 0)
        L2 = ProjLine.from_values(GF5, 0, 1, 0)
        assert meet(L1, L2) == ProjPoint.from_values(GF5, 0, 0, 1)

    def test_coinciding_lines(self):
        L = ProjLine.from_values(GF5, 1, 1, 0)
        with pytest.raises(ValueError, match="lines coincide"):
            meet(L, L)

    def test_mixed_fields_rejected(self):
        P = ProjPoint.from_values(GF5, 1, 0, 0)
        Q = ProjPoint.from_values(make_field(7), 0, 1, 0)
        with pytest.raises(ValueError, match="field mismatch"):
            line_through(P, Q)

    @given(nonzero_triples, nonzero_triples, nonzero_triples)
    def test_collinearity_is_symmetric(self, u, v, w):
        """Collinearity does not depend on the order of the three points"""
        P, Q, R = (ProjPoint.from_values(GF5, *t) for t in (u, v, w))
        assert collinear(P, Q, R) == collinear(Q, R, P) == collinear(R, Q, P)

class TestEnumeration:
    def test_fano_plane(self):
        points, lines = enumerate_plane(make_field(2))
        assert len(points) == len(lines) == 7
        assert all(len(points_on(L, points)) == 3 for L in lines)

    def test_affine_points_come_first(self):
        points, _ = enumerate_plane(make_field(3))
        assert str(points[0]) == "[0,0,1]"
        assert str(points[-1]) == "[1,0,0]"

    def test_points_are_distinct(self):
        points, lines = enumerate_plane(make_field(2, 2))
        assert len(set(points)) == 21
        assert len(set(lines)) == 21

    def test_plane_too_large(self):
        with pytest.raises(ValueError, match="plane too large"):
            enumerate_plane(make_field(37))
