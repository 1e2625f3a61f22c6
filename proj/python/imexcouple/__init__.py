"""IMEX coupled finite-volume Navier-Stokes solver."""

from ._imexcouple import (
    ConfigError,
    GridError,
    GridSizes,
    RunConfig,
    SolverError,
    StateError,
    TableauError,
    case_names,
    convergence,
    default_config,
    euler_flux,
    observed_order,
    parse_config,
    parse_config_text,
    roe_flux,
    run,
    tableau,
    tableau_names,
    validate_tableau,
)

__all__ = [
    "ConfigError",
    "GridError",
    "GridSizes",
    "RunConfig",
    "SolverError",
    "StateError",
    "TableauError",
    "case_names",
    "convergence",
    "default_config",
    "euler_flux",
    "observed_order",
    "parse_config",
    "parse_config_text",
    "roe_flux",
    "run",
    "tableau",
    "tableau_names",
    "validate_tableau",
]
