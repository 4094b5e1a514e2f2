"""
Workbench orchestrating parsing, the oracles and result serialization.

One command document goes in, one JSON-ready payload and an exit code come
out.  Exit codes: 0 for a decided answer, 3 when the answer is Undetermined
at the precision cap, 1 for any error.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from src.classification import (
    PsiCase,
    PolySubring,
    SubalgebraDescriptor,
    UnitsCase,
    conductor,
    crucial_generators,
    crucial_membership,
    generators,
    membership,
    n_condition_check,
    normalize,
    orbit_test,
    p2_sample_check,
    translate_lambda,
)
from src.curves import (
    filtered_members,
    is_smooth_at,
    noncoordinate_membership,
    noncoordinate_preconditions,
    order_at,
    points_at_infinity,
    tangency_order,
)
from src.errors import MaxsubError, ParseError, PreconditionFailed, Undetermined
from src.fields.cyclotomic import CycloField
from src.fields.rational import format_rat
from src.nonextending import filtered_basis
from src.parsers import (
    Command,
    build_curve,
    build_descriptor,
    build_point,
    dump_descriptor,
    load_command,
    parse_expression,
    parse_scalar,
)
from src.puiseux import puiseux_expand
from src.utils.config import Settings, get_settings
from src.utils.report_generator import (
    branch_payload,
    error_payload,
    membership_payload,
    order_text,
    polynomial_text,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 3

Payload = Dict[str, Any]


def _rational(text: str, what: str) -> Fraction:
    value = parse_scalar(text)
    if not value.is_rational():
        raise ParseError(f"{what} must be rational, got {text!r}")
    return value.to_rational()


def _alpha_of(A: SubalgebraDescriptor):
    if isinstance(A, PolySubring):
        return A.inner.alpha
    return A.alpha


class MaxsubWorkbench:
    """
    Dispatches command documents to the classification, curve and
    construction oracles
    """

    def __init__(self, settings: Optional[Settings] = None):
        """
        Initialize the workbench

        Args:
            settings: Settings to use (defaults to the process-wide ones)
        """
        self.settings = settings or get_settings()
        self.field = CycloField.of(self.settings.field_conductor)
        self.precision_cap = self.settings.precision_cap
        self._handlers: Dict[str, Callable[[Any], Payload]] = {
            "member": self._member,
            "crucial": self._crucial,
            "conductor": self._conductor,
            "generators": self._generators,
            "equiv": self._equiv,
            "puiseux": self._puiseux,
            "curve-infinity": self._curve_infinity,
            "defined-at": self._defined_at,
            "tangency": self._tangency,
            "preconditions": self._preconditions,
            "noncoord": self._noncoord,
            "curve-basis": self._curve_basis,
            "glue": self._construction_member,
            "tangent": self._construction_member,
            "basis": self._basis,
            "normalize": self._normalize,
            "check": self._check,
            "translate": self._translate,
        }

    # -- entry points -----------------------------------------------------

    def execute(self, command: Command) -> Payload:
        """
        Run one command and return its payload

        Raises:
            MaxsubError: Any domain error from parsing or the oracles
        """
        logger.debug("dispatching %s", command.command)
        return self._handlers[command.command](command)

    def run(self, command: Any) -> Tuple[int, Payload]:
        """
        Run a command document (model, mapping or JSON text)

        Returns:
            (exit code, payload); errors become ``{"error", "message"}``
        """
        try:
            if not hasattr(command, "command"):
                command = load_command(command)
            payload = self.execute(command)
        except Undetermined as exc:
            payload = {"verdict": "Undetermined", "message": str(exc)}
            if exc.precision is not None:
                payload["precision"] = format_rat(Fraction(exc.precision))
            return EXIT_UNDETERMINED, payload
        except (MaxsubError, ValueError) as exc:
            logger.debug("command failed: %s", exc)
            return EXIT_ERROR, error_payload(exc)
        if payload.get("verdict") == "Undetermined":
            return EXIT_UNDETERMINED, payload
        return EXIT_OK, payload

    def run_batch(self, lines: Sequence[str], jobs: int = 1) -> List[Tuple[int, Payload]]:
        """Run one command per non-blank line; results keep the input order."""
        documents = [line for line in lines if line.strip()]
        if jobs <= 1:
            return [self.run(line) for line in documents]
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(self.run, documents))

    # -- classification ---------------------------------------------------

    def _member(self, cmd) -> Payload:
        A = build_descriptor(cmd.alg)
        result = membership(parse_expression(cmd.expr), A, self.precision_cap)
        return membership_payload(result)

    def _crucial(self, cmd) -> Payload:
        A = build_descriptor(cmd.alg)
        result = crucial_membership(parse_expression(cmd.expr), A, self.precision_cap)
        return membership_payload(result)

    def _conductor(self, cmd) -> Payload:
        c = conductor(build_descriptor(cmd.alg))
        return {"conductor": polynomial_text(c), "zero": c is None}

    def _generators(self, cmd) -> Payload:
        A = build_descriptor(cmd.alg)
        if not isinstance(A, PsiCase):
            raise PreconditionFailed("generators are listed for the psi family")
        listing = crucial_generators if cmd.crucial else generators
        return {"generators": [str(g) for g in listing(A.alpha, cmd.n)], "crucial": cmd.crucial}

    def _equiv(self, cmd) -> Payload:
        A, B = build_descriptor(cmd.a), build_descriptor(cmd.b)
        if isinstance(A, PsiCase) != isinstance(B, PsiCase):
            raise PreconditionFailed("orbit tests compare descriptors of the same family")
        return orbit_test(_alpha_of(A), _alpha_of(B), self.precision_cap).to_dict()

    def _puiseux(self, cmd) -> Payload:
        P = parse_expression(cmd.poly)
        branches = puiseux_expand(P, _rational(cmd.precision, "precision"), field=self.field)
        return {"branches": [branch_payload(b) for b in branches]}

    def _normalize(self, cmd) -> Payload:
        sample = parse_expression(cmd.sample) if cmd.sample is not None else None
        return normalize(cmd.contains_t, cmd.contains_t_inverse, cmd.k, sample).to_dict()

    def _check(self, cmd) -> Payload:
        A = build_descriptor(cmd.alg)
        if cmd.test == "n":
            if not isinstance(A, (UnitsCase, PolySubring)):
                raise PreconditionFailed("the n-condition concerns the units family")
            return {"n_condition": n_condition_check(_alpha_of(A))}
        report = p2_sample_check(A, trials=cmd.trials, degree=cmd.degree, seed=cmd.seed)
        return report.to_dict()

    def _translate(self, cmd) -> Payload:
        moved = translate_lambda(build_descriptor(cmd.alg), parse_scalar(cmd.lam))
        return {"descriptor": dump_descriptor(moved)}

    # -- curves -----------------------------------------------------------

    def _curve_infinity(self, cmd) -> Payload:
        c = build_curve(cmd.curve)
        points = points_at_infinity(c, self.field)
        return {"points": [{"point": p.to_list(), "smooth": is_smooth_at(c, p)} for p in points]}

    def _defined_at(self, cmd) -> Payload:
        c, p = build_curve(cmd.curve), build_point(cmd.point)
        h = parse_expression(cmd.expr, ("x", "y"))
        order = order_at(h, c, p, self.precision_cap)
        return {"defined": order is None or order >= 0, "order": order_text(order)}

    def _tangency(self, cmd) -> Payload:
        c, p = build_curve(cmd.curve), build_point(cmd.point)
        return {"tangency": tangency_order(c, p, self.precision_cap)}

    def _preconditions(self, cmd) -> Payload:
        report = noncoordinate_preconditions(build_curve(cmd.curve), build_point(cmd.point), self.field)
        payload = report.to_dict()
        payload["all_hold"] = report.all_hold
        return payload

    def _noncoord(self, cmd) -> Payload:
        c, p = build_curve(cmd.curve), build_point(cmd.point)
        g = parse_expression(cmd.expr, ("x", "y"))
        return {"member": noncoordinate_membership(g, c, p, self.precision_cap)}

    def _curve_basis(self, cmd) -> Payload:
        c, p = build_curve(cmd.curve), build_point(cmd.point)
        basis = filtered_members(c, p, cmd.degree, self.precision_cap)
        return {"basis": [str(h) for h in basis], "dimension": len(basis)}

    # -- non-extending constructions ------------------------------------

    def _construction_member(self, cmd) -> Payload:
        construction = cmd.construction()
        oracle = construction.build()
        return {"member": oracle(construction.parse(cmd.expr)), "crucial": cmd.crucial}

    def _basis(self, cmd) -> Payload:
        basis = filtered_basis(cmd.construction.build(), cmd.degree)
        return {"basis": [str(h) for h in basis], "dimension": len(basis)}


__all__ = ["MaxsubWorkbench", "EXIT_OK", "EXIT_ERROR", "EXIT_UNDETERMINED"]
