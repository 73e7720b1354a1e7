"""Surface loads on curved ramps in the hypersonic limit."""

from ._ramploads import (
    ArcChart,
    Error,
    RampProfile,
    SpeedField,
    build_chart,
    conservation_report,
    convergence_study,
    frozen_limit_loads,
    main,
    run_accretion,
    solve,
    solve_config,
    surface_state,
    uniform_x_stations,
    validate_profile,
    weak_residuals,
)

__all__ = [
    "ArcChart",
    "Error",
    "RampProfile",
    "SpeedField",
    "build_chart",
    "conservation_report",
    "convergence_study",
    "frozen_limit_loads",
    "main",
    "run_accretion",
    "solve",
    "solve_config",
    "surface_state",
    "uniform_x_stations",
    "validate_profile",
    "weak_residuals",
]
