"""
Plane curves: points at infinity, smoothness, branches and the
"defined at p" subalgebras.
"""

from src.curves.plane import (
    PlaneCurve,
    ProjectivePoint,
    homogenize,
    is_irreducible_over_rationals,
    is_smooth_at,
    parse_point,
    points_at_infinity,
)
from src.curves.branches import (
    BranchAtPoint,
    NoncoordinateReport,
    defined_at,
    filtered_members,
    local_branch,
    noncoordinate_membership,
    noncoordinate_preconditions,
    order_at,
    tangency_order,
)

__all__ = [
    "PlaneCurve",
    "ProjectivePoint",
    "homogenize",
    "is_irreducible_over_rationals",
    "is_smooth_at",
    "parse_point",
    "points_at_infinity",
    "BranchAtPoint",
    "NoncoordinateReport",
    "defined_at",
    "filtered_members",
    "local_branch",
    "noncoordinate_membership",
    "noncoordinate_preconditions",
    "order_at",
    "tangency_order",
]
