"""Weighted affine hyperplane arrangements: logarithmic-form algebras, flag
spaces, Shapovalov forms, master-function critical points, special singular
vectors, and the sl2 Gaudin-model application."""

from .arrangement import Hyperplane, SubsetRankReport, WeightedArrangement, with_exponents
from .gaudin import (
    CartanDatum,
    GaudinProblem,
    TensorVector,
    bethe_residual,
    build_discriminantal,
    canonical_weight_function,
    gaudin_hamiltonian,
    singular_dimension,
    tensor_shapovalov,
    verify_bethe,
    verify_canonical_element,
    verify_shap_correspondence,
    weight_basis,
)
from .master import (
    CriticalPoint,
    DivergenceReport,
    find_critical_points,
    group_orbits,
    hess_det,
    log_grad,
    log_hessian,
    newton_solve,
    symmetric_group,
)
from .osflag import (
    FlagVector,
    OSElement,
    apply_delta,
    evaluate_form,
    flag_vector,
    pairing,
    singular_basis,
    straighten,
)
from .shapovalov import shapovalov_form, shapovalov_map, special_pairing
from .special import (
    SymmetryAction,
    build_action,
    isotypic_project,
    specialize,
    verify_isotypic_norm,
    verify_norm_identity,
    verify_orthogonality,
    verify_singular,
)

__version__ = "0.1.0"

__all__ = [
    "CartanDatum",
    "CriticalPoint",
    "DivergenceReport",
    "FlagVector",
    "GaudinProblem",
    "Hyperplane",
    "OSElement",
    "SubsetRankReport",
    "SymmetryAction",
    "TensorVector",
    "WeightedArrangement",
    "apply_delta",
    "bethe_residual",
    "build_action",
    "build_discriminantal",
    "canonical_weight_function",
    "evaluate_form",
    "find_critical_points",
    "flag_vector",
    "gaudin_hamiltonian",
    "group_orbits",
    "hess_det",
    "isotypic_project",
    "log_grad",
    "log_hessian",
    "newton_solve",
    "pairing",
    "shapovalov_form",
    "shapovalov_map",
    "singular_basis",
    "singular_dimension",
    "special_pairing",
    "specialize",
    "straighten",
    "symmetric_group",
    "tensor_shapovalov",
    "verify_bethe",
    "verify_canonical_element",
    "verify_isotypic_norm",
    "verify_norm_identity",
    "verify_orthogonality",
    "verify_shap_correspondence",
    "verify_singular",
    "weight_basis",
    "with_exponents",
]
