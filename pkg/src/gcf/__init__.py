"""Finite-field polynomials, similarity types of ``g(C_f)`` and polynomial-type decisions."""

from .factor import Factorization, count_irreducibles, factor, factor_seed, irreducibles, is_irreducible
from .field import Field, FieldError, field_make
from .kernels import BACKEND as KERNEL_BACKEND
from .matrix import (
    ElementaryDivisors,
    Matrix,
    MatrixError,
    companion,
    direct_sum,
    elementary_divisors,
    evaluate_poly,
    invariant_factors,
    jordan_block,
    kernel_description,
    nullity_sequence,
    rational_canonical,
    recombine,
    similar,
    similarity_classes,
    span_dimension_CD,
)
from .poly import Poly, PolyError, compose, crt, gcd, resultant, xgcd
from .polytype import (
    NilpotentProfile,
    OmegaElement,
    PolytypeVerdict,
    brute_force,
    build_commuting_cyclic,
    counterexample_matrix,
    nilpotent_decide,
    omega_act,
    polytype_decide,
    stabilizers,
)
from .simtype import csd_report, eldiv_of_gA, element_data, inflate, min_poly_mod, simtype_of_gCf
from .text import ParseError, parse_field, parse_matrix, parse_poly

poly_gcd = gcd
poly_compose = compose
poly_factor = factor
poly_crt = crt

__version__ = "0.1.0"
