"""Two-dimensional transient heat transfer through building facades."""

from ._facade2d import (
    ConfigError,
    DivergenceError,
    IoError,
    SolverError,
    analytical_solution,
    error_metric,
    find_eigenvalues,
    simulate,
    surface_coefficient,
    validation_run,
)

__all__ = [
    "ConfigError",
    "DivergenceError",
    "IoError",
    "SolverError",
    "analytical_solution",
    "error_metric",
    "find_eigenvalues",
    "simulate",
    "surface_coefficient",
    "validation_run",
]
