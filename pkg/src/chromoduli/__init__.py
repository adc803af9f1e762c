"""Graph-indexed intersection numbers, cross-checked five independent ways."""

from .arrangement import (
    AffineFunctional,
    Arrangement,
    Chamber,
    bounded_chambers_bijective,
    bounded_chambers_lp,
    build_arrangement,
    chamber_to_pair,
    interior_point,
    pair_to_chamber,
    recession_ray,
)
from .critical import (
    CriticalPointReport,
    NewtonConfig,
    count_critical_points,
    critical_point_reports,
    default_weights,
    gradient,
    hessian,
    log_master,
    solve_chamber,
)
from .digraph_poly import (
    DigraphPolynomialReport,
    chi_acyclic,
    chi_interpolated,
    digraph_polynomial_report,
    full_peel,
    omega_one_zero,
    peel_step,
)
from .errors import (
    BudgetExceededError,
    ConvergenceError,
    EngineConsistencyError,
    GraphParseError,
)
from .graphs import (
    Digraph,
    IntPolynomial,
    SimpleGraph,
    canonical_key,
    chromatic_polynomial,
    graph_to_json,
    load_graph_file,
    parse_graph_text,
)
from .moduli import (
    ClassExpression,
    boundary_divisor,
    cerberus_check,
    expand_psi_decorations,
    integrate,
    kapranov_degree,
    multiply_by_divisor,
    omega,
    omega_with_stats,
    point_class_pullback,
    psi_as_boundary,
    pullback_divisor,
    pullback_psi,
)
from .orientations import acyclic_orientations, proper_coloring_count, stanley_pair_count

__version__ = "0.1.0"
