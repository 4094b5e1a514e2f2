"""
Command documents: one JSON object per request, tagged by ``command``.

The same documents are read from batch files (one per line), built from
command-line arguments and accepted by the HTTP server.
"""

from __future__ import annotations

import json
from typing import Annotated, List, Literal, Optional, Union

from pydantic import Field, TypeAdapter, ValidationError

from src.errors import InvalidDescriptor, ParseError
from src.parsers.documents import ConstructionDocument, SubalgebraDocument, StrictDocument


class MemberCommand(StrictDocument):
    command: Literal["member"] = "member"
    alg: SubalgebraDocument
    expr: str


class CrucialCommand(StrictDocument):
    command: Literal["crucial"] = "crucial"
    alg: SubalgebraDocument
    expr: str


class ConductorCommand(StrictDocument):
    command: Literal["conductor"] = "conductor"
    alg: SubalgebraDocument


class GeneratorsCommand(StrictDocument):
    command: Literal["generators"] = "generators"
    alg: SubalgebraDocument
    n: int = Field(default=3, ge=1)
    crucial: bool = False


class EquivCommand(StrictDocument):
    command: Literal["equiv"] = "equiv"
    a: SubalgebraDocument
    b: SubalgebraDocument


class PuiseuxCommand(StrictDocument):
    command: Literal["puiseux"] = "puiseux"
    poly: str
    precision: str = "4"


class CurveInfinityCommand(StrictDocument):
    command: Literal["curve-infinity"] = "curve-infinity"
    curve: str


class DefinedAtCommand(StrictDocument):
    command: Literal["defined-at"] = "defined-at"
    curve: str
    point: List[str]
    expr: str


class TangencyCommand(StrictDocument):
    command: Literal["tangency"] = "tangency"
    curve: str
    point: List[str]


class PreconditionsCommand(StrictDocument):
    command: Literal["preconditions"] = "preconditions"
    curve: str
    point: List[str]


class NoncoordCommand(StrictDocument):
    command: Literal["noncoord"] = "noncoord"
    curve: str
    point: List[str]
    expr: str


class CurveBasisCommand(StrictDocument):
    command: Literal["curve-basis"] = "curve-basis"
    curve: str
    point: List[str]
    degree: int = Field(ge=0)


class _ConstructionCommand(StrictDocument):
    variables: List[str] = Field(default_factory=lambda: ["x"])
    relations: List[str] = Field(default_factory=list)
    laurent: List[str] = Field(default_factory=list)
    points: List[List[str]] = Field(default_factory=list)
    vector: Optional[List[str]] = None
    crucial: bool = False
    expr: str

    def construction(self) -> ConstructionDocument:
        return ConstructionDocument(
            kind=self.command,
            variables=self.variables,
            relations=self.relations,
            laurent=self.laurent,
            points=self.points,
            vector=self.vector,
            crucial=self.crucial,
        )


class GlueCommand(_ConstructionCommand):
    command: Literal["glue"] = "glue"


class TangentCommand(_ConstructionCommand):
    command: Literal["tangent"] = "tangent"


class BasisCommand(StrictDocument):
    command: Literal["basis"] = "basis"
    construction: ConstructionDocument
    degree: int = Field(ge=0)


class NormalizeCommand(StrictDocument):
    command: Literal["normalize"] = "normalize"
    contains_t: bool
    contains_t_inverse: bool
    k: Optional[int] = None
    sample: Optional[str] = None


class CheckCommand(StrictDocument):
    """Property checks: ``p2`` sampling or the n-condition on alpha."""

    command: Literal["check"] = "check"
    alg: SubalgebraDocument
    test: Literal["p2", "n"] = "p2"
    trials: int = Field(default=200, ge=1)
    degree: int = Field(default=3, ge=0)
    seed: int = 0


class TranslateCommand(StrictDocument):
    command: Literal["translate"] = "translate"
    alg: SubalgebraDocument
    lam: str


Command = Annotated[
    Union[
        MemberCommand,
        CrucialCommand,
        ConductorCommand,
        GeneratorsCommand,
        EquivCommand,
        PuiseuxCommand,
        CurveInfinityCommand,
        DefinedAtCommand,
        TangencyCommand,
        PreconditionsCommand,
        NoncoordCommand,
        CurveBasisCommand,
        GlueCommand,
        TangentCommand,
        BasisCommand,
        NormalizeCommand,
        CheckCommand,
        TranslateCommand,
    ],
    Field(discriminator="command"),
]

_COMMAND_ADAPTER: TypeAdapter = TypeAdapter(Command)

COMMAND_NAMES = (
    "member",
    "crucial",
    "conductor",
    "generators",
    "equiv",
    "puiseux",
    "curve-infinity",
    "defined-at",
    "tangency",
    "preconditions",
    "noncoord",
    "curve-basis",
    "glue",
    "tangent",
    "basis",
    "normalize",
    "check",
    "translate",
)


def load_command(source: Union[str, dict]) -> Command:
    """Validate one command document (JSON text or decoded mapping).

    Raises:
        ParseError: the text is not JSON.
        InvalidDescriptor: the document is not a valid command.
    """
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", position=exc.pos) from exc
    try:
        return _COMMAND_ADAPTER.validate_python(source)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"])
        raise InvalidDescriptor(f"invalid command document at {where or 'top level'}: {first['msg']}") from exc


__all__ = [
    "Command",
    "COMMAND_NAMES",
    "MemberCommand",
    "CrucialCommand",
    "ConductorCommand",
    "GeneratorsCommand",
    "EquivCommand",
    "PuiseuxCommand",
    "CurveInfinityCommand",
    "DefinedAtCommand",
    "TangencyCommand",
    "PreconditionsCommand",
    "NoncoordCommand",
    "CurveBasisCommand",
    "GlueCommand",
    "TangentCommand",
    "BasisCommand",
    "NormalizeCommand",
    "CheckCommand",
    "TranslateCommand",
    "load_command",
]
