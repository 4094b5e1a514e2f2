"""
JSON documents for subalgebra descriptors, points and constructions.

Descriptors are written the way they appear on the command line::

    {"case": "psi", "swap": false, "twist": 0,
     "alpha": {"kind": "finite", "series": "t^(1/2)"}}
    {"case": "units", "alpha": {"kind": "finite", "series": "1 + u"}}
    {"case": "theta", "alpha": {"kind": "finite", "series": "u"}}
    {"case": "psi", "alpha": {"kind": "stream", "rule": "geometric_gap"}}

In the units family alpha is a series in u = y^-1 and an algebraic alpha's
minimal polynomial is written in u and y.  Streams name a built-in rule.
"""

from __future__ import annotations

import json
import logging
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.classification.descriptors import (
    AlgebraicBranch,
    AlphaDescriptor,
    FiniteAlpha,
    PolySubring,
    PsiCase,
    StreamAlpha,
    SubalgebraDescriptor,
    UnitsCase,
)
from src.curves.plane import PlaneCurve, ProjectivePoint
from src.errors import InvalidDescriptor, MaxsubError, ParseError
from src.fields.cyclotomic import FieldElem
from src.nonextending.constructions import (
    ClosedPoint,
    FinitelyPresentedAlgebra,
    NonextendingOracle,
    TangentVector,
    make_nonextending_oracle,
)
from src.parsers.expression import parse_expression, parse_scalar, parse_series
from src.polys.laurent import Automorphism, LaurentPoly
from src.series.streams import make_stream

logger = logging.getLogger(__name__)

UNITS_VARIABLE = "u"


class StrictDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")


# -- alpha -----------------------------------------------------------------


class FiniteAlphaDocument(StrictDocument):
    kind: Literal["finite"]
    series: str


class AlgebraicAlphaDocument(StrictDocument):
    kind: Literal["algebraic"]
    minpoly: str
    prefix: str = "0"


class StreamAlphaDocument(StrictDocument):
    kind: Literal["stream"]
    rule: str
    params: Dict[str, Any] = Field(default_factory=dict)
    transcendental: Optional[bool] = None


AlphaDocument = Annotated[
    Union[FiniteAlphaDocument, AlgebraicAlphaDocument, StreamAlphaDocument],
    Field(discriminator="kind"),
]


def build_alpha(doc: AlphaDocument, variable: str = "t") -> AlphaDescriptor:
    """Descriptor for an alpha document whose series variable is ``variable``."""
    if isinstance(doc, FiniteAlphaDocument):
        return FiniteAlpha(parse_series(doc.series, variable))
    if isinstance(doc, AlgebraicAlphaDocument):
        m = parse_expression(doc.minpoly, (variable, "y"))
        if variable != "t":
            m = m.rename({variable: "t"})
        return AlgebraicBranch(m, parse_series(doc.prefix, variable))
    params = dict(doc.params)
    if isinstance(params.get("shift"), str):
        params["shift"] = parse_scalar(params["shift"])
    if isinstance(params.get("coefficient"), str):
        params["coefficient"] = parse_scalar(params["coefficient"])
    try:
        stream = make_stream(doc.rule, params)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, MaxsubError):
            raise
        raise InvalidDescriptor(str(exc)) from exc
    flag = stream.transcendental if doc.transcendental is None else doc.transcendental
    return StreamAlpha(stream, flag)


def dump_alpha(alpha: AlphaDescriptor, variable: str = "t") -> Dict[str, Any]:
    if isinstance(alpha, FiniteAlpha):
        return {"kind": "finite", "series": alpha.value.to_string(variable)}
    if isinstance(alpha, AlgebraicBranch):
        m = alpha.minpoly if variable == "t" else alpha.minpoly.rename({"t": variable})
        return {"kind": "algebraic", "minpoly": str(m), "prefix": alpha.prefix.to_string(variable)}
    if isinstance(alpha, StreamAlpha):
        params = {k: str(v) if isinstance(v, FieldElem) else v for k, v in alpha.stream.params.items()}
        return {
            "kind": "stream",
            "rule": alpha.stream.name,
            "params": params,
            "transcendental": alpha.transcendental,
        }
    raise InvalidDescriptor(f"cannot serialize {alpha!r}")


# -- subalgebras -----------------------------------------------------------


class PsiDocument(StrictDocument):
    case: Literal["psi"]
    alpha: AlphaDocument
    swap: bool = False
    twist: int = 0


class UnitsDocument(StrictDocument):
    case: Literal["units"]
    alpha: AlphaDocument


class PolySubringDocument(StrictDocument):
    case: Literal["theta", "phi", "poly"]
    alpha: AlphaDocument


SubalgebraDocument = Annotated[
    Union[PsiDocument, UnitsDocument, PolySubringDocument],
    Field(discriminator="case"),
]


class _SubalgebraEnvelope(StrictDocument):
    descriptor: SubalgebraDocument


def build_descriptor(doc: SubalgebraDocument) -> SubalgebraDescriptor:
    if isinstance(doc, PsiDocument):
        return PsiCase(build_alpha(doc.alpha), Automorphism(swap=doc.swap, twist=doc.twist))
    inner = UnitsCase(build_alpha(doc.alpha, UNITS_VARIABLE))
    if isinstance(doc, PolySubringDocument):
        return PolySubring(inner)
    return inner


def dump_descriptor(A: SubalgebraDescriptor) -> Dict[str, Any]:
    if isinstance(A, PsiCase):
        return {
            "case": "psi",
            "swap": A.sigma.swap,
            "twist": A.sigma.twist,
            "alpha": dump_alpha(A.alpha),
        }
    if isinstance(A, PolySubring):
        return {"case": "poly", "alpha": dump_alpha(A.inner.alpha, UNITS_VARIABLE)}
    if isinstance(A, UnitsCase):
        return {"case": "units", "alpha": dump_alpha(A.alpha, UNITS_VARIABLE)}
    raise InvalidDescriptor(f"cannot serialize {A!r}")


def _raw(source: Union[str, Dict[str, Any]]) -> Any:
    if isinstance(source, str):
        try:
            return json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from exc
    return source


def load_descriptor(source: Union[str, Dict[str, Any]]) -> SubalgebraDescriptor:
    """Descriptor from a JSON string or an already decoded mapping.

    Raises:
        ParseError: the text is not JSON.
        InvalidDescriptor: the document does not describe a subalgebra.
    """
    try:
        envelope = _SubalgebraEnvelope.model_validate({"descriptor": _raw(source)})
    except ValidationError as exc:
        raise InvalidDescriptor(f"invalid descriptor document: {exc.errors()[0]['msg']}") from exc
    return build_descriptor(envelope.descriptor)


# -- curves and constructions --------------------------------------------


def build_curve(equation: str) -> PlaneCurve:
    return PlaneCurve(parse_expression(equation, ("x", "y")))


def build_point(coordinates: List[str]) -> ProjectivePoint:
    """Homogeneous coordinates such as ``["0", "1", "0"]``."""
    if len(coordinates) != 3:
        raise ParseError(f"a projective point needs three coordinates, got {len(coordinates)}")
    return ProjectivePoint(tuple(parse_scalar(c) for c in coordinates))


class ConstructionDocument(StrictDocument):
    """A glue or tangent construction on k[variables]/(relations)."""

    kind: str
    variables: List[str] = Field(default_factory=lambda: ["x"])
    relations: List[str] = Field(default_factory=list)
    laurent: List[str] = Field(default_factory=list)
    points: List[List[str]] = Field(default_factory=list)
    vector: Optional[List[str]] = None
    crucial: bool = False

    def algebra(self) -> FinitelyPresentedAlgebra:
        relations = tuple(parse_expression(r, self.variables) for r in self.relations)
        return FinitelyPresentedAlgebra(tuple(self.variables), relations, tuple(self.laurent))

    def build(self) -> NonextendingOracle:
        points = [ClosedPoint(tuple(parse_scalar(c) for c in p)) for p in self.points]
        vector = None
        if self.vector is not None:
            if len(points) != 1:
                raise ParseError("a tangent vector needs exactly one base point")
            vector = TangentVector(points[0], tuple(parse_scalar(c) for c in self.vector))
        return make_nonextending_oracle(self.kind, self.algebra(), points, vector, self.crucial)

    def parse(self, text: str) -> LaurentPoly:
        return parse_expression(text, self.variables)


__all__ = [
    "UNITS_VARIABLE",
    "FiniteAlphaDocument",
    "AlgebraicAlphaDocument",
    "StreamAlphaDocument",
    "AlphaDocument",
    "PsiDocument",
    "UnitsDocument",
    "PolySubringDocument",
    "SubalgebraDocument",
    "StrictDocument",
    "ConstructionDocument",
    "build_alpha",
    "dump_alpha",
    "build_descriptor",
    "dump_descriptor",
    "load_descriptor",
    "build_curve",
    "build_point",
]
