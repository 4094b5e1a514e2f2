"""
Text and JSON input: the expression parser/printer, descriptor documents
and command documents.
"""

from src.parsers.expression import (
    ExpressionParser,
    format_expression,
    format_series,
    parse_expression,
    parse_scalar,
    parse_series,
    tokenize,
)
from src.parsers.documents import (
    ConstructionDocument,
    build_alpha,
    build_curve,
    build_descriptor,
    build_point,
    dump_alpha,
    dump_descriptor,
    load_descriptor,
)
from src.parsers.commands import COMMAND_NAMES, Command, load_command

__all__ = [
    "ExpressionParser",
    "format_expression",
    "format_series",
    "parse_expression",
    "parse_scalar",
    "parse_series",
    "tokenize",
    "ConstructionDocument",
    "build_alpha",
    "build_curve",
    "build_descriptor",
    "build_point",
    "dump_alpha",
    "dump_descriptor",
    "load_descriptor",
    "COMMAND_NAMES",
    "Command",
    "load_command",
]
