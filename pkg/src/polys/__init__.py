"""
Laurent polynomials, their evaluation into Hahn series and the
automorphisms of k[t, t^-1, y].
"""

from src.polys.laurent import (
    DEFAULT_GENS,
    Automorphism,
    LaurentPoly,
    apply_automorphism,
    clear_t_denominator,
    content,
    divides_over_fraction_field,
    evaluate_t,
    evaluate_y,
    gauss_valuation,
    gcd_over_fraction_field,
    prem,
    primitive_part,
    pseudo_divmod,
    quotient_over_fraction_field,
    reduces_to_zero_modulo,
    squarefree_decomposition,
    y_coefficient_series,
)

__all__ = [
    "DEFAULT_GENS",
    "Automorphism",
    "LaurentPoly",
    "apply_automorphism",
    "clear_t_denominator",
    "content",
    "divides_over_fraction_field",
    "evaluate_t",
    "evaluate_y",
    "gauss_valuation",
    "gcd_over_fraction_field",
    "prem",
    "primitive_part",
    "pseudo_divmod",
    "quotient_over_fraction_field",
    "reduces_to_zero_modulo",
    "squarefree_decomposition",
    "y_coefficient_series",
]
