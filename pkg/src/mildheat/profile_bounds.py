"""Two-sided similarity profiles, their errors, and the explicit bounds.

The long-time (and short-time) shape of the evolved solution on similarity
scales is F(-x) u0(-sqrt(t)) + F(+x) u0(+sqrt(t)).  This module measures the
sup-norm distance of the true evolution from that shape and evaluates the
closed-form upper bounds that control it: the shifted-Gaussian envelope
integral, the dilation-difference estimate, and the log-kernel bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .initial_data import InitialDatum
from .kernels import DEFAULT_SPEC, SQRT_PI, QuadratureSpec, envelope_rho, kernel_G, profile_F
from .semigroup import _positive_interval, scaled_evolve, scaled_evolve_many


@dataclass(frozen=True)
class ProfileErrorReport:
    """Per-time record of the similarity profile error and its bounds."""

    t: float
    L: float
    sup_error: float
    coeff_left: float   # u0(-sqrt(t))
    coeff_right: float  # u0(+sqrt(t))
    envelope_bound: float | None = None
    log_bound_values: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.t <= 0 or self.L <= 0:
            raise ValueError("t and L must be positive")
        if self.sup_error < 0:
            raise ValueError("sup_error must be nonnegative")


def two_sided_profile(u0: InitialDatum, x: float, t: float) -> float:
    """F(-x) u0(-sqrt(t)) + F(+x) u0(+sqrt(t))."""
    if t <= 0:
        raise ValueError(f"time must be positive, got {t}")
    st = math.sqrt(t)
    return profile_F(-x) * float(u0.eval(-st)) + profile_F(x) * float(u0.eval(st))


def sup_profile_error(
    u0: InitialDatum,
    a: float,
    b: float,
    L: float,
    t: float,
    n: int = 401,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Grid max over [-L, L] of |u(sqrt(t) x, t) - (a F(-x) + b F(+x))|."""
    if L <= 0 or t <= 0:
        raise ValueError("L and t must be positive")
    if n < 3:
        raise ValueError(f"need at least 3 grid nodes, got {n}")
    xs = np.linspace(-L, L, n)
    num = scaled_evolve_many(u0, xs, t, spec)
    return float(np.max(np.abs(num - (a * profile_F(-xs) + b * profile_F(xs)))))


def profile_error(
    u0: InitialDatum,
    L: float,
    t: float,
    n: int = 401,
    spec: QuadratureSpec = DEFAULT_SPEC,
    with_envelope_bound: bool = False,
) -> ProfileErrorReport:
    """Measure the profile error with the natural coefficients u0(+-sqrt(t))."""
    st = math.sqrt(t)
    a = float(u0.eval(-st))
    b = float(u0.eval(st))
    sup = sup_profile_error(u0, a, b, L, t, n, spec)
    bound = envelope_bound(u0, a, b, L, t, spec) if with_envelope_bound else None
    return ProfileErrorReport(
        t=t, L=L, sup_error=sup, coeff_left=a, coeff_right=b, envelope_bound=bound
    )


def envelope_bound(
    u0: InitialDatum,
    a: float,
    b: float,
    L: float,
    t: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """Upper bound on the profile error with constants (a, b):

    (1/(2 sqrt(pi))) int_0^inf rho_L(z) (|u0(-sqrt(t) z) - a| + |u0(+sqrt(t) z) - b|) dz

    where rho_L is the sup of Gaussians shifted over [-L, L].  Valid for every
    choice of constants.
    """
    if L <= 0 or t <= 0:
        raise ValueError("L and t must be positive")
    st = math.sqrt(t)

    def g(z: float) -> float:
        return envelope_rho(L, z) * (
            abs(float(u0.eval(-st * z)) - a) + abs(float(u0.eval(st * z)) - b)
        )

    bound = 2.0 * u0.sup_norm + abs(a) + abs(b)
    tol = spec.abs_tol * 2.0 * SQRT_PI
    val = _positive_interval(
        g, 0.0, L + spec.tail_radius, tol, u0.oscillates_at_zero, bound
    )
    return val / (2.0 * SQRT_PI)


def dilation_difference_bound(
    u0: InitialDatum, alpha: float, s: float, samples: int = 1000
) -> tuple[float, float]:
    """(lhs, rhs) of the dilation estimate

    |u0(s alpha) - u0(s)| <= (alpha + 1/alpha)^2 *
        sup over min(alpha,1/alpha)|s| <= |x| <= max(alpha,1/alpha)|s| of |x u0'(x)|.

    The annulus sup is estimated from log-spaced samples on both signs and
    inflated by 1% (catalog slope functionals vary slowly on the log scale).
    """
    if alpha <= 0:
        raise ValueError(f"dilation factor must be positive, got {alpha}")
    if s == 0:
        raise ValueError("dilation estimate is undefined at s = 0")
    lhs = abs(float(u0.eval(s * alpha)) - float(u0.eval(s)))
    r_lo = min(alpha, 1.0 / alpha) * abs(s)
    r_hi = max(alpha, 1.0 / alpha) * abs(s)
    radii = np.geomspace(r_lo, r_hi, samples)
    sup = 0.0
    for sign in (-1.0, 1.0):
        xs = sign * radii
        sup = max(sup, float(np.max(np.abs(xs * u0.deriv(xs)))))
    rhs = (alpha + 1.0 / alpha) ** 2 * 1.01 * sup
    return lhs, rhs


def log_kernel_bound(
    u0: InitialDatum, x: float, t: float, spec: QuadratureSpec = DEFAULT_SPEC
) -> tuple[float, float]:
    """(lhs, rhs) of the uniform-in-time profile error bound

    |u(sqrt(t) x, t) - two_sided_profile| <= G(-x) sup_{y<0}|y u0'(y)|
                                           + G(+x) sup_{y>0}|y u0'(y)|.
    """
    if t <= 0:
        raise ValueError(f"time must be positive, got {t}")
    if not (math.isfinite(u0.sup_left) and math.isfinite(u0.sup_right)):
        raise ValueError(f"datum {u0.id} lacks finite one-sided slope bounds")
    lhs = abs(scaled_evolve(u0, x, t, spec) - two_sided_profile(u0, x, t))
    rhs = kernel_G(-x, spec) * u0.sup_left + kernel_G(x, spec) * u0.sup_right
    return lhs, rhs


def accumulation_samples(
    u0: InitialDatum, lambda_ladder
) -> list[tuple[float, float]]:
    """Pairs (u0(-lam), u0(+lam)) along a dilation ladder.

    Finite sampling of the set whose closure parameterizes the limiting
    profiles; consumers plot these against fitted profile coefficients and
    never assert set equality.
    """
    out = []
    for lam in lambda_ladder:
        if lam <= 0:
            raise ValueError(f"dilation values must be positive, got {lam}")
        out.append((float(u0.eval(-lam)), float(u0.eval(lam))))
    return out


def fit_profile_coefficients(xs: np.ndarray, values: np.ndarray) -> tuple[float, float]:
    """Least-squares (alpha, beta) for values ~ alpha F(-x) + beta F(+x).

    F(-x) and F(+x) are linearly independent, so the 2x2 normal system is
    well-posed on any grid with 2+ distinct nodes.
    """
    xs = np.asarray(xs, dtype=float)
    design = np.column_stack([profile_F(-xs), profile_F(xs)])
    coef, *_ = np.linalg.lstsq(design, np.asarray(values, dtype=float), rcond=None)
    return float(coef[0]), float(coef[1])
