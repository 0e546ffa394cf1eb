"""formdepth: exact commutative algebra for the depth of Jacobian
ideals of products of forms, with generic-arrangement and plane-curve
specialisations."""

from .fields import QQ, PrimeField, RationalField
from .orders import GREVLEX, GRLEX, LEX, MonomialOrder, monomial_compare
from .poly import (
    LinearChange,
    Polynomial,
    PolyRing,
    euler_residue,
    partial_derivative,
    poly_multiply,
    substitute_linear,
)
from .gmatrix import GradedMatrix
from .groebner import (
    GroebnerBasis,
    IdealBasis,
    contains,
    groebner_basis,
    hilbert_function,
    ideal_equal,
    ideal_power_product,
    ideal_quotient,
    is_regular_sequence,
    krull_dimension,
    multiplicity_degree,
    normal_form,
    poly_gcd,
    saturate_irrelevant,
)
from .resolution import (
    BettiTable,
    FreeResolution,
    free_resolution,
    hilbert_burch_verify,
    homological_profile,
    indeg_syzygies,
    minimalize,
    module_syzygies,
)
from .arrangement import (
    Arrangement,
    arrangement_betti_formula,
    fold_syzygy_matrix,
    is_generic,
    is_reduction,
    normalize_to_coordinates,
    random_generic_arrangement,
    tail_syzygy_block,
    verify_minors_identity,
)
from .productforms import (
    CriteriaReport,
    FormSystem,
    RtyReport,
    build_fold_matrices,
    criteria_evaluate,
    fold_products,
    general_forms_betti,
    gradient_ideal,
    heights_check,
    is_smooth_form,
    jacobian_matrix,
    random_forms,
    rty_check,
    witness_forms,
)
from .planeclassify import (
    CurveClass,
    classify_conic_pair,
    family_freeness_scan,
    is_free_divisor,
)
from .parse import parse_polynomial

__version__ = "0.1.0"
