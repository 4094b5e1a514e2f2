"""
Randomized check of the prime-like property: r q in A implies r in A or q in A.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from src.classification.descriptors import PolySubring, SubalgebraDescriptor
from src.classification.oracles import MembershipResult, membership
from src.polys.laurent import LaurentPoly

logger = logging.getLogger(__name__)

COEFFICIENT_SAMPLE = (-2, -1, 1, 2)
MAX_ABSORB_STEPS = 24
ABSORB_AFTER = 16


@dataclass
class P2Report:
    trials: int
    accepted: int = 0
    counterexamples: List[Tuple[LaurentPoly, LaurentPoly]] = field(default_factory=list)
    undetermined: int = 0
    rejected: int = 0
    absorbed: int = 0
    skipped: int = 0

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "accepted": self.accepted,
            "counterexamples": [[str(r), str(q)] for r, q in self.counterexamples],
            "undetermined": self.undetermined,
            "rejected": self.rejected,
            "absorbed": self.absorbed,
            "skipped": self.skipped,
            "holds": self.holds,
        }


def random_laurent(rng: random.Random, degree: int, polynomial: bool = False, terms: int = 3) -> LaurentPoly:
    """A nonzero element with t-exponents in [-degree, degree] and y-degree <= degree."""
    low = 0 if polynomial else -degree
    coeffs = {}
    while not coeffs:
        for _ in range(rng.randint(1, terms)):
            mono = (rng.randint(low, degree), rng.randint(0, degree))
            coeffs[mono] = rng.choice(COEFFICIENT_SAMPLE)
    return LaurentPoly(coeffs)


def _absorb(r: LaurentPoly, q: LaurentPoly, A: SubalgebraDescriptor, crucial: LaurentPoly):
    """Multiply q by the crucial element until r q lands in A."""
    for _ in range(MAX_ABSORB_STEPS):
        q = q * crucial
        verdict = membership(r * q, A)
        if not verdict.is_decided or verdict.is_member:
            return q, verdict
    return None, None


def p2_sample_check(
    A: SubalgebraDescriptor,
    trials: int = 200,
    degree: int = 3,
    seed: Optional[int] = 0,
    max_attempts: Optional[int] = None,
    absorb_after: Optional[int] = ABSORB_AFTER,
) -> P2Report:
    """Sample ``trials`` pairs with r q in A and check r in A or q in A.

    Pairs (r, q) are drawn at random and rejected when r q is not in A.
    After ``absorb_after`` consecutive rejections the rejected pair is kept
    instead, with q multiplied by the crucial element until the product
    lies in A; ``absorb_after=None`` samples by rejection only.
    """
    rng = random.Random(seed)
    crucial = A.crucial_element()
    polynomial = isinstance(A, PolySubring)
    report = P2Report(trials=trials)
    attempts = max_attempts or 20 * trials
    streak = 0
    for _ in range(attempts):
        if report.accepted >= trials:
            break
        r = random_laurent(rng, degree, polynomial)
        q = random_laurent(rng, degree, polynomial)
        product = membership(r * q, A)
        if product.is_decided and not product.is_member:
            report.rejected += 1
            streak += 1
            if absorb_after is None or streak < absorb_after:
                continue
            q, product = _absorb(r, q, A, crucial)
            if q is None:
                report.skipped += 1
                logger.warning("P2 sample skipped: product never reached A")
                continue
            report.absorbed += 1
        streak = 0
        if not product.is_decided:
            report.undetermined += 1
            continue
        left, right = membership(r, A), membership(q, A)
        if not (left.is_decided and right.is_decided):
            report.undetermined += 1
            continue
        report.accepted += 1
        if not (left.is_member or right.is_member):
            logger.warning("P2 counterexample: r = %s, q = %s", r, q)
            report.counterexamples.append((r, q))
    if report.accepted < trials:
        logger.warning("P2 check accepted %d of %d requested pairs", report.accepted, trials)
    logger.debug("P2 sampling: %d rejected, %d absorbed", report.rejected, report.absorbed)
    return report


def check_pair(r: LaurentPoly, q: LaurentPoly, A: SubalgebraDescriptor) -> Tuple[MembershipResult, MembershipResult, MembershipResult]:
    """Verdicts for r q, r and q."""
    return membership(r * q, A), membership(r, A), membership(q, A)


__all__ = ["P2Report", "random_laurent", "p2_sample_check", "check_pair"]
