"""
Exact coefficient arithmetic: rationals, cyclotomic fields Q(zeta_N) and
root finding inside them.
"""

from src.fields.rational import Rat, as_rat, format_rat, frac_part, lcm_denominator
from src.fields.cyclotomic import (
    RATIONALS,
    CycloField,
    FieldElem,
    as_field_elem,
    field_of,
    multiplicative_order,
    root_of_unity,
)
from src.fields.roots import find_roots, split_completely


def default_field() -> CycloField:
    """Field selected by the current settings."""
    from src.utils.config import get_settings

    return CycloField.of(get_settings().field_conductor)


__all__ = [
    "Rat",
    "as_rat",
    "format_rat",
    "frac_part",
    "lcm_denominator",
    "RATIONALS",
    "CycloField",
    "FieldElem",
    "as_field_elem",
    "field_of",
    "multiplicative_order",
    "root_of_unity",
    "find_roots",
    "split_completely",
    "default_field",
]
