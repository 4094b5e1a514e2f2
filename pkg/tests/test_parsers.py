"""
Unit tests for the expression parser and the JSON documents
"""

import json
import os
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.classification import FiniteAlpha, PolySubring, PsiCase, StreamAlpha, UnitsCase
from src.errors import ExponentDomainError, InvalidDescriptor, ParseError
from src.parsers import (
    ConstructionDocument,
    build_curve,
    build_point,
    dump_descriptor,
    format_expression,
    load_command,
    load_descriptor,
    parse_expression,
    parse_scalar,
    parse_series,
    tokenize,
)
from src.polys import LaurentPoly
from src.series import HahnSeries

t = LaurentPoly.gen("t")
y = LaurentPoly.gen("y")
half = Fraction(1, 2)


class TestExpressionParser:
    """Test polynomial text"""

    def test_precedence(self):
        assert parse_expression("t*y - y - 1") == t * y - y - 1
        assert parse_expression("-y^2") == -(y ** 2)
        assert parse_expression("2^3*t") == 8 * t
        assert parse_expression("t**2") == t ** 2

    def test_division_by_monomials(self):
        assert parse_expression("y^2/t - 1") == t ** -1 * y ** 2 - 1
        assert parse_expression("1/2*t") == t.scale(half)

    def test_parentheses_expand(self):
        assert parse_expression("(y - t)^2") == y ** 2 - 2 * t * y + t ** 2

    def test_curve_mode(self):
        x, yy = LaurentPoly.gen("x", ("x", "y")), LaurentPoly.gen("y", ("x", "y"))
        assert parse_expression("y - x^3 + x*y^2", ("x", "y")) == yy - x ** 3 + x * yy ** 2

    def test_fractional_exponent_on_y(self):
        with pytest.raises(ExponentDomainError):
            parse_expression("y^(1/2)")

    def test_empty_expression(self):
        with pytest.raises(ParseError, match="position 0") as info:
            parse_expression("")
        assert info.value.position == 0

    def test_error_positions(self):
        with pytest.raises(ParseError, match="unknown name 'w'"):
            parse_expression("t + w")
        with pytest.raises(ParseError, match="unexpected character"):
            parse_expression("t # y")
        with pytest.raises(ParseError, match="division by the non-monomial"):
            parse_expression("y/(t + 1)")
        with pytest.raises(ParseError, match="only allowed in series"):
            parse_expression("y + O(t^2)")

    def test_tokens(self):
        kinds = [token.kind for token in tokenize("t^(1/2)")]
        assert kinds == ["name", "op", "op", "number", "op", "number", "op", "end"]


class TestSeriesAndScalars:
    """Test series text and field elements"""

    def test_fractional_exponents(self):
        assert parse_series("t^(1/2)") == HahnSeries.monomial(half)
        assert parse_series("1 + u", "u") == 1 + HahnSeries.monomial(1)

    def test_big_o(self):
        series = parse_series("1 + t + O(t^4)")
        assert series.known_below == 4
        assert series.support() == (0, 1)

    def test_big_o_needs_a_monomial(self):
        with pytest.raises(ParseError, match="monomial argument"):
            parse_series("O(1 + t)")

    def test_scalars(self):
        assert parse_scalar("-1/8") == Fraction(-1, 8)
        assert parse_scalar("z^6") == -1
        assert not parse_scalar("z^3").is_rational()


class TestDocuments:
    """Test descriptor and command documents"""

    def test_load_psi(self):
        A = load_descriptor('{"case": "psi", "alpha": {"kind": "finite", "series": "t^(1/2)"}}')
        assert isinstance(A, PsiCase)
        assert A.sigma.is_identity()
        assert A.alpha == FiniteAlpha(HahnSeries.monomial(half))

    def test_units_family_reads_u(self):
        A = load_descriptor({"case": "units", "alpha": {"kind": "finite", "series": "1 + u"}})
        assert isinstance(A, UnitsCase)
        theta = load_descriptor({"case": "theta", "alpha": {"kind": "finite", "series": "u"}})
        assert isinstance(theta, PolySubring)

    def test_stream_document(self):
        A = load_descriptor({"case": "psi", "alpha": {"kind": "stream", "rule": "geometric_gap"}})
        assert isinstance(A.alpha, StreamAlpha)
        assert A.alpha.transcendental

    def test_dump_round_trip(self):
        doc = {"case": "psi", "swap": True, "twist": 2, "alpha": {"kind": "finite", "series": "t^(1/2)"}}
        assert dump_descriptor(load_descriptor(doc)) == doc

    def test_invalid_documents(self):
        with pytest.raises(ParseError, match="invalid JSON"):
            load_descriptor("{case")
        with pytest.raises(InvalidDescriptor, match="invalid descriptor document"):
            load_descriptor({"case": "omega", "alpha": {"kind": "finite", "series": "0"}})
        with pytest.raises(InvalidDescriptor, match="unknown stream rule"):
            load_descriptor({"case": "psi", "alpha": {"kind": "stream", "rule": "fibonacci"}})

    def test_commands(self):
        command = load_command(json.dumps({
            "command": "member",
            "alg": {"case": "psi", "alpha": {"kind": "finite", "series": "0"}},
            "expr": "t*y",
        }))
        assert command.command == "member"
        assert command.expr == "t*y"
        with pytest.raises(InvalidDescriptor, match="invalid command document"):
            load_command({"command": "factor", "expr": "y"})

    def test_curve_and_point(self):
        assert build_curve("x*y - 1").degree == 2
        assert build_point(["0", "2", "0"]) == build_point(["0", "1", "0"])
        with pytest.raises(ParseError, match="three coordinates"):
            build_point(["0", "1"])

    def test_construction_document(self):
        doc = ConstructionDocument(kind="glue", points=[["0"], ["1"]])
        oracle = doc.build()
        assert oracle(doc.parse("x^2 - x"))
        assert not oracle(doc.parse("x"))
        with pytest.raises(ParseError, match="one base point"):
            ConstructionDocument(kind="tangent", vector=["1"]).build()


small = st.integers(-3, 3)
polys = st.dictionaries(st.tuples(st.integers(-2, 3), st.integers(0, 3)), small, max_size=5).map(LaurentPoly)


class TestRoundTrip:
    """Printing then parsing gives the same polynomial"""

    @settings(max_examples=500, deadline=None)
    @given(polys)
    def test_format_then_parse(self, f):
        assert parse_expression(format_expression(f)) == f


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
