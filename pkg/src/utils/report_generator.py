"""
Report generation: JSON payloads for results, written as exact strings.

Rationals are rendered as ``"-1/8"``, never as floats; field elements use
``z`` for the generator of their field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from src.classification.oracles import EXACT_ZERO, MembershipResult, Order
from src.fields.cyclotomic import FieldElem
from src.fields.rational import format_rat
from src.polys.laurent import LaurentPoly
from src.puiseux.newton import PuiseuxBranch
from src.series.hahn import HahnSeries


def rat_text(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else format_rat(value)


def order_text(order: Optional[Order]) -> Optional[str]:
    """Orders print as rationals; f(alpha) = 0 prints as ``"infinity"``."""
    if order is None:
        return None
    if order is EXACT_ZERO:
        return "infinity"
    return format_rat(order)


def membership_payload(result: MembershipResult) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"verdict": result.verdict.value, "order": order_text(result.order)}
    if result.precision is not None:
        payload["precision"] = format_rat(result.precision)
    return payload


def polynomial_text(f: Optional[LaurentPoly]) -> str:
    """The zero ideal (None) prints as ``"0"``."""
    return "0" if f is None else str(f)


def series_payload(s: HahnSeries, variable: str = "t") -> Dict[str, Any]:
    return {
        "series": s.to_string(variable),
        "known_below": rat_text(s.known_below),
        "exact": s.is_exact(),
    }


def branch_payload(branch: PuiseuxBranch) -> Dict[str, Any]:
    payload = series_payload(branch.expansion)
    payload["multiplicity"] = branch.multiplicity
    payload["ramification"] = branch.ramification
    return payload


def scalar_text(value: FieldElem) -> str:
    return str(value)


def error_payload(exc: BaseException) -> Dict[str, str]:
    return {"error": type(exc).__name__, "message": str(exc)}


class ReportGenerator:
    """Render result payloads as JSON lines or as readable text."""

    def __init__(self, indent: Optional[int] = None):
        self.indent = indent

    def generate_json_report(self, payload: Dict[str, Any], filename: Optional[str] = None) -> str:
        """
        Serialize one result.

        Args:
            payload: Result object built from the helpers above
            filename: Optional file to write the report to

        Returns:
            JSON text (one line unless an indent was configured)
        """
        content = json.dumps(payload, indent=self.indent, ensure_ascii=False)
        if filename:
            with open(filename, 'w', encoding='utf-8') as f:
                f.write(content + "\n")
        return content

    def generate_batch_report(self, payloads: Iterable[Dict[str, Any]], filename: Optional[str] = None) -> str:
        """One JSON object per line, in input order."""
        lines: List[str] = [json.dumps(p, ensure_ascii=False) for p in payloads]
        content = "\n".join(lines)
        if filename:
            with open(filename, 'w', encoding='utf-8') as f:
                f.write(content + "\n")
        return content

    def generate_text_report(self, payload: Dict[str, Any], filename: Optional[str] = None) -> str:
        """
        Plain ``key: value`` lines, nested objects indented.

        Args:
            payload: Result object
            filename: Optional file to write the report to

        Returns:
            Text report content
        """
        report: List[str] = []
        self._text_lines(payload, 0, report)
        content = "\n".join(report)
        if filename:
            with open(filename, 'w', encoding='utf-8') as f:
                f.write(content + "\n")
        return content

    def _text_lines(self, value: Any, depth: int, out: List[str]) -> None:
        pad = "  " * depth
        if isinstance(value, dict):
            for key, item in value.items():
                if isinstance(item, (dict, list)) and item:
                    out.append(f"{pad}{key}:")
                    self._text_lines(item, depth + 1, out)
                else:
                    out.append(f"{pad}{key}: {self._scalar(item)}")
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, (dict, list)):
                    out.append(f"{pad}-")
                    self._text_lines(item, depth + 1, out)
                else:
                    out.append(f"{pad}- {self._scalar(item)}")
        else:
            out.append(f"{pad}{self._scalar(value)}")

    @staticmethod
    def _scalar(value: Any) -> str:
        if value is None:
            return "-"
        if isinstance(value, bool):
            return "yes" if value else "no"
        if isinstance(value, (dict, list)):
            return "none"
        return str(value)


__all__ = [
    "ReportGenerator",
    "rat_text",
    "order_text",
    "membership_payload",
    "polynomial_text",
    "series_payload",
    "branch_payload",
    "scalar_text",
    "error_payload",
]
