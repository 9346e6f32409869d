"""Exact coefficients, heights and extremal constructions for the polynomials

    P_N(x) = (1 - x^N) prod_{i<j} (1 - x^{N/(p_i p_j)}) / prod_i (1 - x^{N/p_i})

over squarefree N = p_1 ... p_n. Thin wrapper over the C++ core."""

from ._core import (
    InvalidInput,
    ResourceError,
    Unsupported,
    ConstructionError,
    mo,
    mo_plus,
    crt,
    is_probable_prime,
    next_prime_in_ap,
    degree,
    expand,
    pq_coeff,
    coeff,
    height,
    residue_profile,
    zero_by_prop,
    classify3,
    table3,
    coeff_via_truncation,
    z_value,
    bounds,
    construct_height1,
    amplify,
    enlarge,
    verify_certificate,
)

__all__ = [
    "InvalidInput",
    "ResourceError",
    "Unsupported",
    "ConstructionError",
    "mo",
    "mo_plus",
    "crt",
    "is_probable_prime",
    "next_prime_in_ap",
    "degree",
    "expand",
    "pq_coeff",
    "coeff",
    "height",
    "residue_profile",
    "zero_by_prop",
    "classify3",
    "table3",
    "coeff_via_truncation",
    "z_value",
    "bounds",
    "construct_height1",
    "amplify",
    "enlarge",
    "verify_certificate",
]
