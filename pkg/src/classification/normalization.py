"""
Case normalization and the translations t -> t - lambda.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from src.classification.descriptors import PolySubring, PsiCase, SubalgebraDescriptor, UnitsCase
from src.errors import InconsistentFlags, InvalidDescriptor
from src.fields.cyclotomic import Scalar, as_field_elem
from src.polys.laurent import Automorphism, LaurentPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalForm:
    """Which case an algebra falls in, and the automorphism that moves it there.

    In case "i", sigma(A) contains k[t, y]; case "ii" algebras contain
    k[t, t^-1] and need no automorphism.
    """

    case: str
    sigma: Optional[Automorphism] = None

    def to_dict(self) -> dict:
        payload = {"case": self.case}
        if self.sigma is not None:
            payload["sigma"] = {"swap": self.sigma.swap, "twist": self.sigma.twist}
        return payload


def _twist_from_sample(sample: LaurentPoly) -> int:
    if not sample.is_monomial() or sample.degree("y") != 1 or sample.min_degree("y") != 1:
        raise InconsistentFlags(f"sample {sample} is not of the form c * t^k * y")
    return sample.degree("t")


def normalize(
    contains_t: bool,
    contains_t_inverse: bool,
    k: Optional[int] = None,
    sample: Optional[LaurentPoly] = None,
) -> NormalForm:
    """Sort an algebra into case i or ii.

    For case i the caller gives k >= 0 with t^k y in A, either directly or
    as the monomial ``sample``.  With only t^-1 in A, k refers to the
    algebra after t -> t^-1.

    Raises:
        InconsistentFlags: neither t nor t^-1, a missing or negative k.
    """
    if contains_t and contains_t_inverse:
        return NormalForm("ii")
    if not contains_t and not contains_t_inverse:
        raise InconsistentFlags("a maximal subalgebra of k[t, t^-1, y] contains t or t^-1")
    if sample is not None:
        from_sample = _twist_from_sample(sample)
        if k is not None and k != from_sample:
            raise InconsistentFlags(f"k = {k} disagrees with the sample {sample}")
        k = from_sample
    if k is None:
        raise InconsistentFlags("case i needs k with t^k y in A")
    if k < 0:
        raise InconsistentFlags(f"k must be nonnegative, got {k}")
    return NormalForm("i", Automorphism(swap=contains_t_inverse, twist=k))


def translate_lambda(A: SubalgebraDescriptor, lam: Scalar) -> SubalgebraDescriptor:
    """The algebra moved by t -> t - lambda: alpha becomes alpha + lambda.

    Raises:
        InvalidDescriptor: A is of the Psi family, or a bare units-case
            result would have constant term zero.
    """
    value = as_field_elem(lam)
    if isinstance(A, PsiCase):
        raise InvalidDescriptor("translations act on the units family only")
    if not value:
        return A
    if isinstance(A, PolySubring):
        return PolySubring(UnitsCase(A.inner.alpha.translated(value)))
    if isinstance(A, UnitsCase):
        moved = UnitsCase(A.alpha.translated(value))
        moved.require_unit()
        logger.debug("translated constant term %s -> %s", A.lam, moved.lam)
        return moved
    raise InvalidDescriptor(f"unknown descriptor {A!r}")


__all__ = ["NormalForm", "normalize", "translate_lambda"]
