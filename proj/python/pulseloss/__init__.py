"""Pulse attenuation in transmission lines with lossy electrodes."""

from ._core import (
    ConfigError,
    DomainError,
    Sampled,
    Step,
    Trapezoid,
    UnreachableError,
    UnsupportedError,
    abel_invert,
    delta_front,
    derive_constants,
    erfcx,
    figure1_data,
    find_t_delta,
    half_integral,
    resolvent_solution,
    run_validation,
    simulate_step,
    solve_second_kind,
    usigma_resistive,
    usigma_step_skin,
)

__version__ = "0.1.0"
