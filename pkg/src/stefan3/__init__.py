"""Explicit solution of a three-phase melting problem on a half line.

A semi-infinite material, initially solid below both of its change
temperatures, is heated at the surface by a condition whose strength decays
as 1/sqrt(t): convective exchange, an imposed temperature, or an imposed
flux.  When the datum is strong enough two phase fronts advance as
coefficient * sqrt(t), and the temperature field is an explicit
error-function profile in each phase.

The package solves all three problems, classifies the regime against the
critical data, maps any of the three data onto the other two kinds so they
generate the identical field, and verifies solutions by independent
residual checks.
"""

import logging

from .errors import (
    DiffusivityWarning,
    HypothesisError,
    MissingBoundaryDatum,
    RegimeError,
    RootFailure,
    StencilCrossesFront,
    ValidationError,
)
from .model import (
    BoundarySpec,
    Dirichlet,
    MaterialProperties,
    Neumann,
    PhaseTemps,
    Robin,
    StefanNumbers,
    Violation,
    config_from_dict,
    config_to_dict,
    diffusivities,
    load_config,
    stefan_numbers,
    validate,
)
from .transcendental import ProblemContext, find_root_monotone, solve_z0
from .solver import (
    Regime,
    ThreePhaseSolution,
    Thresholds,
    classify_regime,
    evaluate_temperature,
    free_boundaries,
    perturbed,
    solve,
    solve_dirichlet,
    solve_neumann,
    solve_robin,
    surface_values,
    temperature_excess,
    thresholds,
)
from .equivalence import (
    AutoSatisfaction,
    CorollaryCheck,
    EquivalenceReport,
    HypothesisCheck,
    auto_satisfaction,
    bulk_floor,
    corollary_checks,
    dirichlet_to_neumann,
    dirichlet_to_robin,
    h2_star,
    mapping,
    neumann_to_dirichlet,
    neumann_to_robin,
    robin_to_dirichlet,
    robin_to_neumann,
)
from .verify import (
    ResidualReport,
    boundary_residual,
    far_field_residual,
    full_report,
    heat_residual,
    interface_residual,
    stefan_residual,
)

__version__ = "0.1.0"

logging.getLogger("stefan3").addHandler(logging.NullHandler())

__all__ = [
    "AutoSatisfaction",
    "BoundarySpec",
    "CorollaryCheck",
    "DiffusivityWarning",
    "Dirichlet",
    "EquivalenceReport",
    "HypothesisCheck",
    "HypothesisError",
    "MaterialProperties",
    "MissingBoundaryDatum",
    "Neumann",
    "PhaseTemps",
    "ProblemContext",
    "Regime",
    "RegimeError",
    "ResidualReport",
    "Robin",
    "RootFailure",
    "StefanNumbers",
    "StencilCrossesFront",
    "ThreePhaseSolution",
    "Thresholds",
    "ValidationError",
    "Violation",
    "auto_satisfaction",
    "boundary_residual",
    "bulk_floor",
    "classify_regime",
    "config_from_dict",
    "config_to_dict",
    "corollary_checks",
    "diffusivities",
    "dirichlet_to_neumann",
    "dirichlet_to_robin",
    "evaluate_temperature",
    "far_field_residual",
    "find_root_monotone",
    "free_boundaries",
    "full_report",
    "h2_star",
    "heat_residual",
    "interface_residual",
    "load_config",
    "mapping",
    "neumann_to_dirichlet",
    "neumann_to_robin",
    "perturbed",
    "robin_to_dirichlet",
    "robin_to_neumann",
    "solve",
    "solve_dirichlet",
    "solve_neumann",
    "solve_robin",
    "solve_z0",
    "stefan_numbers",
    "stefan_residual",
    "surface_values",
    "temperature_excess",
    "thresholds",
    "validate",
]
