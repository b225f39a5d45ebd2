"""Heat semigroup and graph curvature flow with slowly oscillating data:
similarity profiles, explicit error bounds, and desk-scale experiments."""

from .initial_data import (
    DecayClass,
    InitialDatum,
    from_id,
    make_constant,
    make_gaussian,
    make_log_sine,
    make_smooth_log_sine,
    make_step,
    make_sub_log,
)
from .kernels import QuadratureSpec, envelope_rho, heat_kernel, kernel_G, profile_F
from .semigroup import GridFunction, evolve, scaled_evolve, sliding_average

__all__ = [
    "DecayClass",
    "GridFunction",
    "InitialDatum",
    "QuadratureSpec",
    "envelope_rho",
    "evolve",
    "from_id",
    "heat_kernel",
    "kernel_G",
    "make_constant",
    "make_gaussian",
    "make_log_sine",
    "make_smooth_log_sine",
    "make_step",
    "make_sub_log",
    "profile_F",
    "scaled_evolve",
    "sliding_average",
]

__version__ = "0.1.0"
