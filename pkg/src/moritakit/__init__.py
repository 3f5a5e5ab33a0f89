"""Verification engine for skeletal tensor categories, module categories and Morita contexts."""

from __future__ import annotations

from .numerics import DEFAULT_TOL, InconsistentSystem, Tolerance, UnboundedBranching, approx_eq, solve_multiplicative
from .report import CheckReport, Record
from .skeleton import UnsupportedMultiplicity
from .fusion import (
    FusionData,
    PivotalAssignment,
    RadfordData,
    check_spherical_tensor,
    double_dual_structure,
    dual_label,
    ev_coev_data,
    quantum_dimensions,
    solve_pivotal,
    validate_fusion,
    verify_pentagon,
    verify_pivotal,
)
from .modulecat import (
    ModuleData,
    ObjectDecomposition,
    SerreData,
    check_spherical_module,
    ihom_structure_maps,
    internal_cohom,
    internal_hom,
    internal_hom_oracle,
    radford_module_components,
    serre_data,
    solve_module_pivotal,
    validate_module,
)
from .morita import (
    MoritaContextData,
    OneMorphism,
    all_suites,
    build_canonical_context,
    double_dual_suite,
    dual_1morphism,
    duality_dim_suite,
    pivotal_morita_suite,
    pivotal_transport,
    radford_pseudo_suite,
    strong_context_suite,
    verify_context_coherence,
)
from .graded import GradingData, graded_dual_degree_check, graded_serre_check, validate_grading
from .instances import (
    Instance,
    NotACocycle,
    SchemaError,
    bundled_names,
    load_bundled,
    load_instance,
    make_fibonacci,
    make_pointed,
    make_pointed_context,
    make_regular_context,
    make_regular_module,
    make_vec_module,
    save_instance,
)

__version__ = "0.1.0"
