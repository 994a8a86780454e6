"""Finite-population simulation and mean-field limit solvers for signed
interacting point processes."""

from ._core import (
    BrownianIncrements,
    Config,
    Events,
    GridPath,
    Kernel,
    Transfer,
    compensator_path,
    compute_in,
    compute_in_at,
    compute_jn,
    draw_signs,
    fit_loglog_slope,
    ks_two_sample,
    markov_sde,
    sign_statistic,
    simulate,
    solve_fluctuation,
    solve_ode,
    solve_stochastic_convolution,
    solve_volterra,
)

__version__ = "0.1.0"

__all__ = [
    "BrownianIncrements",
    "Config",
    "Events",
    "GridPath",
    "Kernel",
    "Transfer",
    "compensator_path",
    "compute_in",
    "compute_in_at",
    "compute_jn",
    "draw_signs",
    "fit_loglog_slope",
    "ks_two_sample",
    "markov_sde",
    "sign_statistic",
    "simulate",
    "solve_fluctuation",
    "solve_ode",
    "solve_stochastic_convolution",
    "solve_volterra",
    "__version__",
]
