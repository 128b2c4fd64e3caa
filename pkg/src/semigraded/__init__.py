"""Semi-graded rings presented as PBW extensions over a parameter field.

The package models algebras generated by x1..xn over Q(p1,...,pm) subject
to relations x_j x_i = c_ij x_i x_j + (linear part) + constant, computes
PBW normal forms by terminating rewriting, and derives growth invariants:
series truncations and closed forms, growth polynomials, exact and
estimated growth dimensions, associated graded rings, and windowed
semi-gradedness checks.  A catalog of known algebras with recorded
invariant strings is verified against the derived values.
"""

from .scalars import (
    Fraction,
    ParamDecl,
    ScalarField,
    SpecializationError,
    scalar_arith,
    scalar_normalize,
    scalar_specialize,
)
from .presentation import (
    AlgebraPresentation,
    Diagnostics,
    Finding,
    PresentationError,
    Relation,
    associated_graded,
    format_element,
    make_presentation,
    parse_element,
    parse_presentation,
    parse_scalar,
    print_presentation,
    q_matrix,
    specialize_presentation,
    validate,
)
from .rewrite import (
    NCPoly,
    PbwReport,
    check_pbw,
    constant,
    free_to_normal_form,
    monomial,
    nc_add,
    nc_mul,
    nc_pow,
    nc_scale,
    variable,
)
from .grading import (
    FiltrationWindow,
    SemigradedReport,
    WindowSubspace,
    filtration_window,
    homogeneous_components,
    is_semigraded_window,
    left_ideal_window,
    window_dims,
)
from .invariants import (
    Frame,
    GkEstimate,
    HilbertData,
    format_polynomial,
    ggk_estimate,
    ggk_exact,
    hilbert_function,
    hilbert_polynomial,
    hilbert_series,
)
from .catalog import (
    CatalogEntry,
    CatalogError,
    catalog_entry,
    catalog_list,
    catalog_verify,
    export_presentations,
)

__version__ = "1.0.0"

__all__ = [
    "Fraction",
    "ParamDecl",
    "ScalarField",
    "SpecializationError",
    "scalar_arith",
    "scalar_normalize",
    "scalar_specialize",
    "AlgebraPresentation",
    "Diagnostics",
    "Finding",
    "PresentationError",
    "Relation",
    "associated_graded",
    "format_element",
    "make_presentation",
    "parse_element",
    "parse_presentation",
    "parse_scalar",
    "print_presentation",
    "q_matrix",
    "specialize_presentation",
    "validate",
    "NCPoly",
    "PbwReport",
    "check_pbw",
    "constant",
    "free_to_normal_form",
    "monomial",
    "nc_add",
    "nc_mul",
    "nc_pow",
    "nc_scale",
    "variable",
    "FiltrationWindow",
    "SemigradedReport",
    "WindowSubspace",
    "filtration_window",
    "homogeneous_components",
    "is_semigraded_window",
    "left_ideal_window",
    "window_dims",
    "Frame",
    "GkEstimate",
    "HilbertData",
    "format_polynomial",
    "ggk_estimate",
    "ggk_exact",
    "hilbert_function",
    "hilbert_polynomial",
    "hilbert_series",
    "CatalogEntry",
    "CatalogError",
    "catalog_entry",
    "catalog_list",
    "catalog_verify",
    "export_presentations",
    "__version__",
]
