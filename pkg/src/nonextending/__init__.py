"""
Non-extending maximal subalgebras: glueing points and deleting tangent directions.
"""

from src.nonextending.constructions import (
    SUPPORTED_CONSTRUCTIONS,
    ClosedPoint,
    FinitelyPresentedAlgebra,
    NonextendingOracle,
    TangentVector,
    filtered_basis,
    glue_crucial_membership,
    glue_membership,
    make_nonextending_oracle,
    tangent_crucial_membership,
    tangent_membership,
)

__all__ = [
    "SUPPORTED_CONSTRUCTIONS",
    "ClosedPoint",
    "FinitelyPresentedAlgebra",
    "NonextendingOracle",
    "TangentVector",
    "filtered_basis",
    "glue_crucial_membership",
    "glue_membership",
    "make_nonextending_oracle",
    "tangent_crucial_membership",
    "tangent_membership",
]
