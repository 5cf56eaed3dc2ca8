"""Damped harmonic oscillator: first-order and BCK quantizations."""

from ._core import (
    DomainError,
    GridError,
    OscillatorParams,
    SpatialGrid,
    TruncationError,
    asymptotic_residual,
    auto_grid,
    cli,
    coherent_means,
    critical_time,
    first_order_eigenstate,
    hermite_function,
    pseudostationary_state,
    run_suite,
    squeezed_variance_x,
    uncertainty_product,
)

__all__ = [
    "DomainError",
    "GridError",
    "OscillatorParams",
    "SpatialGrid",
    "TruncationError",
    "asymptotic_residual",
    "auto_grid",
    "cli",
    "coherent_means",
    "critical_time",
    "first_order_eigenstate",
    "hermite_function",
    "pseudostationary_state",
    "run_suite",
    "squeezed_variance_x",
    "uncertainty_product",
]
