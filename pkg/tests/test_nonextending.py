"""
Unit tests for the glueing and tangent-deletion constructions
"""

import os
import random
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.errors import InvalidTangent, PointOffVariety, PreconditionFailed, UnsupportedConstruction
from src.nonextending import (
    ClosedPoint,
    FinitelyPresentedAlgebra,
    TangentVector,
    filtered_basis,
    glue_crucial_membership,
    glue_membership,
    make_nonextending_oracle,
    tangent_crucial_membership,
    tangent_membership,
)
from src.polys import LaurentPoly

X = ("x",)
XY = ("x", "y")


def oracles_for(algebra):
    """One glue and one tangent oracle on k[x] or k[x, y]."""
    n = len(algebra.variables)
    origin = ClosedPoint.of(*([0] * n))
    other = ClosedPoint.of(*([1] * n))
    direction = [0] * (n - 1) + [1]
    return [
        make_nonextending_oracle("glue", algebra, [origin, other]),
        make_nonextending_oracle("tangent", algebra, vector=TangentVector(origin, tuple(direction))),
    ]


class TestGlueing:
    """Test f(x1) = f(x2)"""

    def setup_method(self):
        self.x = LaurentPoly.gen("x", X)
        self.p0 = ClosedPoint.of(0)
        self.p1 = ClosedPoint.of(1)

    def test_examples(self):
        assert glue_membership(self.x ** 2 - self.x, self.p0, self.p1)
        assert not glue_membership(self.x, self.p0, self.p1)
        assert glue_membership(LaurentPoly.constant(7, X), self.p0, self.p1)

    def test_crucial_ideal(self):
        assert glue_crucial_membership(self.x ** 2 - self.x, self.p0, self.p1)
        assert not glue_crucial_membership(self.x ** 2 - self.x + 1, self.p0, self.p1)

    def test_same_point_twice(self):
        with pytest.raises(PreconditionFailed, match="two different points"):
            glue_membership(self.x, self.p0, ClosedPoint.of(0))

    def test_points_on_a_relation(self):
        x, y = LaurentPoly.gen("x", XY), LaurentPoly.gen("y", XY)
        R = FinitelyPresentedAlgebra(XY, (y - x ** 2,))
        assert glue_membership(y, ClosedPoint.of(1, 1), ClosedPoint.of(-1, 1), R)
        assert not glue_membership(x, ClosedPoint.of(1, 1), ClosedPoint.of(-1, 1), R)
        with pytest.raises(PointOffVariety, match="does not vanish"):
            glue_membership(y, ClosedPoint.of(1, 2), ClosedPoint.of(-1, 1), R)

    def test_laurent_variables(self):
        R = FinitelyPresentedAlgebra(X, laurent=("x",))
        x_inv = LaurentPoly.gen("x", X) ** -1
        assert glue_membership(x_inv, ClosedPoint.of(1), ClosedPoint.of(-1), R) is False
        with pytest.raises(PointOffVariety, match="inverted"):
            glue_membership(x_inv, ClosedPoint.of(0), ClosedPoint.of(1), R)
        with pytest.raises(ValueError, match="not units"):
            glue_membership(x_inv, ClosedPoint.of(1), ClosedPoint.of(2))

    def test_wrong_dimension(self):
        with pytest.raises(PointOffVariety, match="coordinates"):
            glue_membership(self.x, ClosedPoint.of(0, 0), self.p1)


class TestTangentDeletion:
    """Test D_v f(x) = 0"""

    def setup_method(self):
        self.x = LaurentPoly.gen("x", XY)
        self.y = LaurentPoly.gen("y", XY)
        self.v = TangentVector(ClosedPoint.of(0, 0), (0, 1))

    def test_examples(self):
        assert not tangent_membership(self.y, self.v)
        for f in [self.y ** 2, self.x * self.y, self.x, LaurentPoly.constant(3, XY)]:
            assert tangent_membership(f, self.v)

    def test_crucial_ideal(self):
        assert tangent_crucial_membership(self.x ** 2, self.v)
        assert tangent_crucial_membership(self.x, self.v)
        assert not tangent_crucial_membership(1 + self.x, self.v)

    def test_vector_must_be_tangent(self):
        R = FinitelyPresentedAlgebra(XY, (self.y - self.x ** 2,))
        along = TangentVector(ClosedPoint.of(0, 0), (1, 0))
        assert not tangent_membership(self.x, along, R)
        assert tangent_membership(self.y, along, R)
        with pytest.raises(InvalidTangent, match="not tangent"):
            tangent_membership(self.x, self.v, R)

    def test_zero_vector(self):
        with pytest.raises(InvalidTangent, match="zero"):
            tangent_membership(self.x, TangentVector(ClosedPoint.of(0, 0), (0, 0)))


class TestOracles:
    """Test oracle construction and degree-bounded bases"""

    def test_unsupported_kind(self):
        R = FinitelyPresentedAlgebra.polynomial_ring(X)
        with pytest.raises(UnsupportedConstruction, match="residue_field"):
            make_nonextending_oracle("residue_field", R)

    def test_argument_checks(self):
        R = FinitelyPresentedAlgebra.polynomial_ring(X)
        with pytest.raises(PreconditionFailed, match="exactly two points"):
            make_nonextending_oracle("glue", R, [ClosedPoint.of(0)])
        with pytest.raises(PreconditionFailed, match="needs a vector"):
            make_nonextending_oracle("tangent", R)

    def test_monomial_order(self):
        R = FinitelyPresentedAlgebra.polynomial_ring(XY)
        assert [str(m) for m in R.monomials(1)] == ["1", "x", "y"]
        assert len(R.monomials(2)) == 6

    def test_glue_basis(self):
        x = LaurentPoly.gen("x", X)
        R = FinitelyPresentedAlgebra.polynomial_ring(X)
        oracle = make_nonextending_oracle("glue", R, [ClosedPoint.of(0), ClosedPoint.of(1)])
        assert filtered_basis(oracle, 2) == [LaurentPoly.constant(1, X), x ** 2 - x]
        assert filtered_basis(oracle, 0) == [LaurentPoly.constant(1, X)]
        assert oracle(x ** 2 - x)

    def test_tangent_basis(self):
        R = FinitelyPresentedAlgebra.polynomial_ring(XY)
        v = TangentVector(ClosedPoint.of(0, 0), (0, 1))
        oracle = make_nonextending_oracle("tangent", R, vector=v)
        assert filtered_basis(oracle, 1) == [LaurentPoly.constant(1, XY), LaurentPoly.gen("x", XY)]

    @pytest.mark.parametrize("variables", [X, XY])
    def test_codimension_one(self, variables):
        R = FinitelyPresentedAlgebra.polynomial_ring(variables)
        for oracle in oracles_for(R):
            for d in range(1, 6):
                assert len(filtered_basis(oracle, d)) == len(R.monomials(d)) - 1

    def test_negative_degree(self):
        R = FinitelyPresentedAlgebra.polynomial_ring(X)
        oracle = oracles_for(R)[0]
        with pytest.raises(ValueError, match="nonnegative"):
            filtered_basis(oracle, -1)


class TestClosure:
    """Sampled closure of the constructions under ring operations"""

    def setup_method(self):
        self.rng = random.Random(17)

    def _combination(self, basis):
        f = LaurentPoly.zero(basis[0].gens)
        for b in basis:
            f = f + b.scale(self.rng.choice((-2, -1, 0, 1, 3)))
        return f

    @pytest.mark.parametrize("variables", [X, XY])
    def test_subalgebra(self, variables):
        R = FinitelyPresentedAlgebra.polynomial_ring(variables)
        for oracle in oracles_for(R):
            basis = filtered_basis(oracle, 3)
            for _ in range(25):
                f, g = self._combination(basis), self._combination(basis)
                assert oracle(f + g)
                assert oracle(f * g)

    def test_crucial_glue_ideal(self):
        R = FinitelyPresentedAlgebra.polynomial_ring(XY)
        points = [ClosedPoint.of(0, 0), ClosedPoint.of(1, 1)]
        crucial = make_nonextending_oracle("glue", R, points, crucial=True)
        basis = filtered_basis(crucial, 2)
        assert len(basis) == len(R.monomials(2)) - 2
        for _ in range(25):
            f = self._combination(basis)
            r = self._combination(R.monomials(2))
            assert crucial(r * f)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
