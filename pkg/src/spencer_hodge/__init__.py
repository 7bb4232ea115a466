"""Weighted Spencer complexes and Hodge-theoretic cohomology on discrete tori."""

from . import errors
from .lie import (
    DualVector,
    LieAlgebra,
    build_lie_algebra,
    builtin_algebra,
    load_lie_algebra,
    load_structure_constants,
    so3,
    so4,
    su2,
)
from .symalg import (
    SymSpace,
    SymTensor,
    multiplicity_weights,
    sym_basis,
    sym_dim,
    sym_evaluate,
    sym_generator,
    sym_inner,
    sym_product,
    sym_tensor,
    sym_unit,
)
from .spencer import (
    SpencerMaps,
    build_spencer_maps,
    check_symbolic_equivalence,
    delta_on_generator,
    nilpotency_residual,
    spencer_adjoint,
)
from .mesh import (
    Cochain,
    MassMatrix,
    Mesh,
    betti_reference,
    build_torus_mesh,
    exterior_derivative,
    mass_matrix,
)
from .fields import (
    FitResult,
    PairField,
    cartan_residual,
    curvature,
    fit_lambda,
    geometric_gap,
    make_connection_field,
    make_covector_field,
    sample_fields,
    transversality_margin,
    weight_constraint,
    weight_constraint_enhanced,
    weight_curvature,
)
from .engine import (
    DecompositionResult,
    MetricReport,
    PipelineReport,
    SpencerAssembly,
    analyze_metric,
    eigenvalue_convergence,
    elliptic_constant_estimate,
    metric_equivalence_constants,
    run_pipeline,
)
from .config import apply_overrides, build_algebra, load_config, normalize_config
from .scenarios import SCENARIOS, scenario_config, scenario_names

__version__ = "0.1.0"
