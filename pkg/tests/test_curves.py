"""
Unit tests for plane curves, points at infinity and the "defined at p"
subalgebras
"""

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.curves import (
    PlaneCurve,
    ProjectivePoint,
    defined_at,
    filtered_members,
    homogenize,
    is_irreducible_over_rationals,
    is_smooth_at,
    local_branch,
    noncoordinate_membership,
    noncoordinate_preconditions,
    order_at,
    points_at_infinity,
    tangency_order,
)
from src.errors import PointOffCurve, PreconditionFailed, SingularPoint
from src.polys import LaurentPoly

GENS = ("x", "y")
x = LaurentPoly.gen("x", GENS)
y = LaurentPoly.gen("y", GENS)
one = LaurentPoly.constant(1, GENS)

P_INF = ProjectivePoint.of(0, 1, 0)

CUBIC = PlaneCurve(y - x ** 3 + x * y ** 2)
HYPERBOLA = PlaneCurve(x * y - 1)
PARABOLA = PlaneCurve(y - x ** 2)
QUARTIC = PlaneCurve(y ** 3 + x ** 3 * y - x ** 4)
WEIERSTRASS = PlaneCurve(y ** 2 - x ** 3 - x - 1)


class TestProjectiveGeometry:
    """Test points, homogenization and points at infinity"""

    def test_points_are_normalized(self):
        assert ProjectivePoint.of(0, 2, 0) == P_INF
        assert ProjectivePoint.of(2, 4, 2) == ProjectivePoint.of(1, 2, 1)
        assert P_INF.chart == 1
        assert P_INF.at_infinity()
        assert not ProjectivePoint.of(0, 0, 1).at_infinity()

    def test_zero_is_not_a_point(self):
        with pytest.raises(ValueError, match="not a projective point"):
            ProjectivePoint.of(0, 0, 0)

    def test_homogenize(self):
        X, Y, Z = (LaurentPoly.gen(g, ("x", "y", "z")) for g in ("x", "y", "z"))
        assert homogenize(y - x ** 2) == Y * Z - X ** 2
        assert homogenize(x, 3) == X * Z ** 2

    def test_constant_curve(self):
        with pytest.raises(ValueError, match="is constant"):
            PlaneCurve(one)

    def test_points_at_infinity(self):
        points = points_at_infinity(CUBIC)
        assert len(points) == 3
        for p in [P_INF, ProjectivePoint.of(1, 1, 0), ProjectivePoint.of(-1, 1, 0)]:
            assert p in points
        assert points_at_infinity(PARABOLA) == [P_INF]
        hyperbola = points_at_infinity(HYPERBOLA)
        assert len(hyperbola) == 2
        assert P_INF in hyperbola and ProjectivePoint.of(1, 0, 0) in hyperbola

    def test_irreducibility(self):
        assert is_irreducible_over_rationals(QUARTIC)
        assert not is_irreducible_over_rationals(PlaneCurve(y ** 2 - x ** 2))


class TestSmoothness:
    """Test smooth and singular points of the closure"""

    def test_smooth_points_at_infinity(self):
        for p in points_at_infinity(CUBIC):
            assert is_smooth_at(CUBIC, p)

    def test_cusp_at_infinity(self):
        cusp = PlaneCurve(y - x ** 3)
        assert not is_smooth_at(cusp, P_INF)
        with pytest.raises(SingularPoint):
            local_branch(cusp, P_INF)
        with pytest.raises(SingularPoint):
            tangency_order(cusp, P_INF)

    def test_point_off_the_curve(self):
        with pytest.raises(PointOffCurve, match="is not on the closure"):
            is_smooth_at(PARABOLA, ProjectivePoint.of(1, 0, 0))


class TestDefinedAt:
    """Test orders of functions along the branch at a point"""

    def test_cubic_at_infinity(self):
        assert defined_at(x, CUBIC, P_INF)
        assert defined_at(x * y, CUBIC, P_INF)
        assert not defined_at(y, CUBIC, P_INF)
        assert order_at(y, CUBIC, P_INF) == -1
        assert order_at(x, CUBIC, P_INF) == 1

    def test_hyperbola_monomials(self):
        for a in range(4):
            for b in range(4):
                assert defined_at(x ** a * y ** b, HYPERBOLA, P_INF) == (a >= b)

    def test_functions_vanishing_on_the_curve(self):
        assert order_at(x * y - 1, HYPERBOLA, P_INF) is None
        assert defined_at((x + y) * (x * y - 1), HYPERBOLA, P_INF)

    def test_affine_point(self):
        origin = ProjectivePoint.of(0, 0, 1)
        assert order_at(x, PARABOLA, origin) == 1
        assert order_at(y, PARABOLA, origin) == 2
        assert defined_at(y, PARABOLA, origin)


class TestTangency:
    """Test the tangency order with the line at infinity"""

    @pytest.mark.parametrize("curve,expected", [(PARABOLA, 1), (QUARTIC, 2), (HYPERBOLA, 0), (WEIERSTRASS, 2)])
    def test_tangency_at_infinity(self, curve, expected):
        assert tangency_order(curve, P_INF) == expected

    def test_needs_a_point_at_infinity(self):
        with pytest.raises(PreconditionFailed, match="line at infinity"):
            tangency_order(PARABOLA, ProjectivePoint.of(0, 0, 1))


class TestNoncoordinateSubalgebras:
    """Test the preconditions and membership at a point of high tangency"""

    @pytest.mark.parametrize("curve,expected", [
        (QUARTIC, (True, True, True)),
        (WEIERSTRASS, (True, True, False)),
        (PARABOLA, (True, False, False)),
    ])
    def test_preconditions(self, curve, expected):
        report = noncoordinate_preconditions(curve, P_INF)
        assert (report.smooth, report.tangent_of_order_two, report.several_points_at_infinity) == expected
        assert report.all_hold == all(expected)
        assert set(report.to_dict()) == {"smooth", "tangency_at_least_2", "several_points_at_infinity"}

    def test_quartic_excludes_coordinates(self):
        for h in [x, y, x + y, x - y]:
            assert not noncoordinate_membership(h, QUARTIC, P_INF)
        assert noncoordinate_membership(one, QUARTIC, P_INF)
        assert noncoordinate_membership(QUARTIC.equation * x, QUARTIC, P_INF)

    def test_failed_preconditions(self):
        with pytest.raises(PreconditionFailed, match="preconditions fail"):
            noncoordinate_membership(x, WEIERSTRASS, P_INF)

    def test_filtered_members_are_members(self):
        basis = filtered_members(QUARTIC, P_INF, 4)
        assert one in basis
        for h in basis:
            assert defined_at(h, QUARTIC, P_INF)

    def test_members_close_under_ring_operations(self):
        basis = filtered_members(QUARTIC, P_INF, 4)
        rng = random.Random(5)

        def sample():
            h = LaurentPoly.zero(GENS)
            for b in basis:
                h = h + b.scale(rng.randint(-2, 2))
            return h

        for _ in range(20):
            f, g = sample(), sample()
            assert defined_at(f + g, QUARTIC, P_INF)
            assert defined_at(f * g, QUARTIC, P_INF)

    def test_filtered_members_negative_degree(self):
        with pytest.raises(ValueError, match="nonnegative"):
            filtered_members(QUARTIC, P_INF, -1)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
