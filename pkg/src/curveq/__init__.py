"""Quantum mechanics of a particle confined to a parametric space curve.

Pipeline: expression parsing with truncated Taylor jets (`exprjet`),
Frenet-Serret geometry and arc-length reparametrization (`frenet`), the
tube metric around the curve and its squeezing limits (`tube`),
discretized Hermitian operators and identity checks (`operators`,
`verify`), and the cylindrical helix as an analytic reference (`helix`).
"""

from .errors import (
    ConfigError,
    CurvatureError,
    CurveQError,
    ExprDomainError,
    ExprSyntaxError,
    GridError,
    RegularityError,
    TubeValidityError,
)
from .exprjet import (
    Jet,
    Jet4,
    ast_to_string,
    eval_jet,
    evaluate_series,
    parse_expression,
)
from .frenet import (
    ArcLengthMap,
    CurveDefinition,
    FrenetSample,
    arclength_map,
    frenet_at,
    is_straight,
)
from .helix import (
    HelixOperatorBundle,
    HelixParams,
    helix_curve,
    helix_hamiltonian_coefficients,
    helix_hamiltonian_matrix,
    helix_momentum_and_force_analytic,
    helix_spectrum_analytic,
)
from .operators import (
    CurveGrid,
    FrameTable,
    OperatorMatrix,
    PhysicalConstants,
    Spectrum,
    build_force,
    build_force_constant_curvature,
    build_geometric_momentum,
    build_hamiltonian,
    diff_matrices,
    expectation,
    frame_table,
    make_grid,
    solve_spectrum,
)
from .tube import (
    LimitReport,
    MomentumSplit,
    TubeMetric,
    divergence_identity,
    gamma_at,
    limit_suite,
    metric_at,
    momentum_field_split,
)
from .verify import CurveCase, VerifyRow, full_verify

__version__ = "1.0.0"

__all__ = [
    "ArcLengthMap",
    "ConfigError",
    "CurvatureError",
    "CurveCase",
    "CurveDefinition",
    "CurveGrid",
    "CurveQError",
    "ExprDomainError",
    "ExprSyntaxError",
    "FrameTable",
    "FrenetSample",
    "GridError",
    "HelixOperatorBundle",
    "HelixParams",
    "Jet",
    "Jet4",
    "LimitReport",
    "MomentumSplit",
    "OperatorMatrix",
    "PhysicalConstants",
    "RegularityError",
    "Spectrum",
    "TubeMetric",
    "TubeValidityError",
    "VerifyRow",
    "arclength_map",
    "ast_to_string",
    "build_force",
    "build_force_constant_curvature",
    "build_geometric_momentum",
    "build_hamiltonian",
    "diff_matrices",
    "divergence_identity",
    "eval_jet",
    "evaluate_series",
    "expectation",
    "frame_table",
    "frenet_at",
    "full_verify",
    "gamma_at",
    "helix_curve",
    "helix_hamiltonian_coefficients",
    "helix_hamiltonian_matrix",
    "helix_momentum_and_force_analytic",
    "helix_spectrum_analytic",
    "is_straight",
    "limit_suite",
    "make_grid",
    "metric_at",
    "momentum_field_split",
    "parse_expression",
    "solve_spectrum",
]
