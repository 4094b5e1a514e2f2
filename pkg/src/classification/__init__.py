"""
The classification engine: descriptors of the maximal subalgebras of
k[t, t^-1, y] and the oracles answering questions about them.
"""

from src.classification.descriptors import (
    AlgebraicBranch,
    AlphaDescriptor,
    FiniteAlpha,
    PolySubring,
    PsiCase,
    StreamAlpha,
    SubalgebraDescriptor,
    UnitsCase,
    finite_alpha,
    minimal_polynomial_of_series,
)
from src.classification.oracles import (
    EXACT_ZERO,
    MembershipResult,
    MembershipVerdict,
    conductor,
    crucial_membership,
    membership,
    n_condition_check,
    omega,
    omega_units,
    theta_phi_membership,
)
from src.classification.generators import (
    DegreeOneElement,
    crucial_generators,
    element_membership,
    generators,
)
from src.classification.characters import (
    Character,
    OrbitReport,
    apply_character,
    orbit_equivalent,
    orbit_test,
    solve_character,
)
from src.classification.normalization import NormalForm, normalize, translate_lambda
from src.classification.sampling import P2Report, p2_sample_check

__all__ = [
    "AlgebraicBranch",
    "AlphaDescriptor",
    "FiniteAlpha",
    "PolySubring",
    "PsiCase",
    "StreamAlpha",
    "SubalgebraDescriptor",
    "UnitsCase",
    "finite_alpha",
    "minimal_polynomial_of_series",
    "EXACT_ZERO",
    "MembershipResult",
    "MembershipVerdict",
    "conductor",
    "crucial_membership",
    "membership",
    "n_condition_check",
    "omega",
    "omega_units",
    "theta_phi_membership",
    "DegreeOneElement",
    "crucial_generators",
    "element_membership",
    "generators",
    "Character",
    "OrbitReport",
    "apply_character",
    "orbit_equivalent",
    "orbit_test",
    "solve_character",
    "NormalForm",
    "normalize",
    "translate_lambda",
    "P2Report",
    "p2_sample_check",
]
