"""
Newton polygons and Puiseux expansion of plane algebraic roots.
"""

from src.puiseux.newton import (
    Edge,
    NewtonPolygon,
    PuiseuxBranch,
    branch_from_prefix,
    count_roots_above,
    lower_hull,
    newton_polygon,
    puiseux_expand,
    residual_exceeds,
    separation_precision,
)

__all__ = [
    "Edge",
    "NewtonPolygon",
    "PuiseuxBranch",
    "branch_from_prefix",
    "count_roots_above",
    "lower_hull",
    "newton_polygon",
    "puiseux_expand",
    "residual_exceeds",
    "separation_precision",
]
