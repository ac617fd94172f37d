"""Adjoint and flip calculus for bounded multilinear maps.

Symbolic layer: parse superscript expressions such as ``f^{t****s}``,
track signatures, and classify when two expressions denote the same
extension.  Numeric layer: realize expressions on exact rational
tensors and verify identities entrywise.
"""

from .expr import (
    ExprAst,
    ExprError,
    FlipArityMismatch,
    Signature,
    UnknownCharacter,
    base_signature,
    parse,
    signature_of,
)
from .semantics import (
    Verdict,
    classify,
    classify_text,
    flip_conjugation_checks,
    limit_order,
    natural_extensions,
)
from .tensor import (
    DimensionMismatch,
    MultiMap,
    ShapeMismatch,
    Vector,
    adjoint,
    equal,
    evaluate,
    flip,
    from_function,
    load_map,
    random_map,
    realize,
    save_map,
    transpose,
)
from .algebra import (
    AlgebraModel,
    BanachModuleModel,
    CayleyTable,
    ConstraintViolated,
    InvalidAlgebra,
    InvalidCayleyTable,
    arens_products,
    cayley_fixture,
    group_algebra,
    matrix_algebra,
    nested_bilinear_check,
    regular_module,
    regularity_check,
    slice_bridge_check,
    truncated_poly_algebra,
)
from .derivation import (
    TriDerivationCandidate,
    composite_extension_checks,
    derivation_fixture,
    dual_action_composite,
    fourth_adjoint_check,
    is_tri_derivation,
    leibniz_sum,
    right_action_composite,
)
from .suites import full_suite, render_report

__all__ = [
    "AlgebraModel",
    "BanachModuleModel",
    "CayleyTable",
    "ConstraintViolated",
    "DimensionMismatch",
    "ExprAst",
    "ExprError",
    "FlipArityMismatch",
    "InvalidAlgebra",
    "InvalidCayleyTable",
    "MultiMap",
    "ShapeMismatch",
    "Signature",
    "TriDerivationCandidate",
    "UnknownCharacter",
    "Vector",
    "Verdict",
    "adjoint",
    "arens_products",
    "base_signature",
    "cayley_fixture",
    "classify",
    "classify_text",
    "composite_extension_checks",
    "derivation_fixture",
    "dual_action_composite",
    "equal",
    "evaluate",
    "flip",
    "flip_conjugation_checks",
    "fourth_adjoint_check",
    "from_function",
    "full_suite",
    "group_algebra",
    "is_tri_derivation",
    "leibniz_sum",
    "limit_order",
    "load_map",
    "matrix_algebra",
    "natural_extensions",
    "nested_bilinear_check",
    "parse",
    "random_map",
    "realize",
    "regular_module",
    "regularity_check",
    "render_report",
    "right_action_composite",
    "save_map",
    "signature_of",
    "slice_bridge_check",
    "transpose",
    "truncated_poly_algebra",
]
