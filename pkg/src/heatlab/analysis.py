"""Stability, dispersion, convergence-order and error-bound measurements.

``amplification`` returns the per-step Fourier multipliers g(theta) of each
scheme (theta = kappa dx); ``max_amplification`` sweeps theta to decide
stability.  ``empirical_growth``, ``observed_order`` and ``information_speed``
turn recorded runs into measurable rates.  ``dispersion_branches`` and
``hyperbolization_error_bound`` quantify how the relaxed equation
tau u_tt + u_t = nu u_xx differs from pure diffusion, and
``truncation_residual`` measures a scheme's defining relation on samples of an
exact solution instead of doing symbolic Taylor work.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .schemes import RunRecord, Scheme, SchemeParams

DEFAULT_THETA_SAMPLES = 721
DEFAULT_SUPPORT_THRESHOLD = 1e-14


class UndefinedGrowthError(ArithmeticError):
    """Growth rate requested from a record with vanishing max-norm."""


@dataclass(frozen=True)
class AmplificationResult:
    """Characteristic roots g of one scheme at one Fourier phase theta."""

    theta: float
    roots: tuple
    max_modulus: float


@dataclass(frozen=True)
class DispersionSample:
    """Frequency branches at one wavenumber kappa."""

    kappa: float
    omega_parabolic: complex
    omega_plus: complex
    omega_minus: complex


@dataclass(frozen=True)
class ErrorBoundInputs:
    """Inputs of the relaxation error estimate.

    sup_utt_M bounds |u_tt| of the diffusion solution over the relevant
    space-time cone; horizon_T is the final time.
    """

    tau: float
    sup_utt_M: float
    horizon_T: float

    def __post_init__(self):
        if self.tau < 0.0 or self.sup_utt_M < 0.0 or self.horizon_T < 0.0:
            raise ValueError("error-bound inputs must be nonnegative")


def _quadratic_roots(a: float, b: float, c: float) -> tuple[complex, complex]:
    """Roots of a g^2 + b g + c = 0 (a != 0)."""
    disc = complex(b * b - 4.0 * a * c)
    root = np.sqrt(disc)
    return (-b + root) / (2.0 * a), (-b - root) / (2.0 * a)


def amplification(scheme: Scheme, r: Optional[float], theta: float,
                  params: Optional[SchemeParams] = None) -> AmplificationResult:
    """Characteristic roots of one scheme at Fourier phase theta = kappa dx.

    Single-layer schemes have one root, two-layer schemes two.  With
    s = sin^2(theta/2):

    - explicit:        g = 1 - 4 r s
    - implicit:        g = 1 / (1 + 4 r s)
    - Crank-Nicolson:  g = (1 - 2 r s) / (1 + 2 r s)
    - leap-frog:       g^2 + 8 r s g - 1 = 0
    - Dufort-Frankel:  (1 + w) g^2 - 2 w cos(theta) g - (1 - w) = 0, w = 2 r
    - hyperbolic:      a g^2 - (2 tau/dt^2 - 4 nu s/dx^2) g + b = 0 with
      a = tau/dt^2 + 1/(2 dt), b = tau/dt^2 - 1/(2 dt); needs ``params``.

    The Saulyev sweeps have no single-stage symbol here (their stability is
    asserted empirically) and the nonlinear trapezoidal variants share the
    Crank-Nicolson symbol, so all three are rejected.
    """
    if not -1e-12 <= theta <= math.pi + 1e-12:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    s = math.sin(theta / 2.0) ** 2

    if scheme is Scheme.HYPERBOLIC:
        if params is None:
            raise ValueError("hyperbolic amplification needs params "
                             "(tau, dt, dx, nu)")
        tau, dt, dx, nu = params.tau, params.dt, params.dx, params.nu
        if tau <= 0.0:
            raise ValueError("hyperbolic amplification needs tau > 0")
        a = tau / dt ** 2 + 1.0 / (2.0 * dt)
        b = tau / dt ** 2 - 1.0 / (2.0 * dt)
        mid = 2.0 * tau / dt ** 2 - 4.0 * nu * s / dx ** 2
        roots = _quadratic_roots(a, -mid, b)
    else:
        if r is None or not r > 0.0:
            raise ValueError(f"diffusion number r must be positive, got {r}")
        if scheme is Scheme.EXPLICIT:
            roots = (complex(1.0 - 4.0 * r * s),)
        elif scheme is Scheme.IMPLICIT:
            roots = (complex(1.0 / (1.0 + 4.0 * r * s)),)
        elif scheme is Scheme.CRANK_NICOLSON:
            roots = (complex((1.0 - 2.0 * r * s) / (1.0 + 2.0 * r * s)),)
        elif scheme is Scheme.LEAPFROG:
            roots = _quadratic_roots(1.0, 8.0 * r * s, -1.0)
        elif scheme is Scheme.DUFORT_FRANKEL:
            w = 2.0 * r
            roots = _quadratic_roots(1.0 + w, -2.0 * w * math.cos(theta),
                                     -(1.0 - w))
        else:
            raise ValueError(f"no closed-form amplification for {scheme.value}")

    max_modulus = max(abs(g) for g in roots)
    return AmplificationResult(theta=theta, roots=tuple(roots),
                               max_modulus=max_modulus)


def max_amplification(scheme: Scheme, r: Optional[float] = None,
                      params: Optional[SchemeParams] = None,
                      theta_samples: int = DEFAULT_THETA_SAMPLES) -> float:
    """Largest root modulus over a uniform theta grid on [0, pi]."""
    if theta_samples < 2:
        raise ValueError(f"need at least 2 theta samples, got {theta_samples}")
    thetas = np.linspace(0.0, math.pi, theta_samples)
    return max(amplification(scheme, r, float(th), params).max_modulus
               for th in thetas)


def empirical_growth(record: RunRecord, window: int) -> float:
    """Geometric-mean per-step growth of max-norm over the trailing window.

    ``window`` counts snapshot intervals; the rate is per time step, using
    the snapshots' time indices, so any snapshot cadence works.
    """
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if len(record.snapshots) < window + 1:
        raise ValueError(f"record has {len(record.snapshots)} snapshots, "
                         f"need at least {window + 1}")
    norm_new = record.max_norms[-1]
    norm_old = record.max_norms[-1 - window]
    if not (np.isfinite(norm_new) and np.isfinite(norm_old)):
        raise UndefinedGrowthError("growth undefined on non-finite norms")
    if norm_new == 0.0 or norm_old == 0.0:
        raise UndefinedGrowthError("growth undefined on zero max-norm")
    steps = record.snapshots[-1].time_index - record.snapshots[-1 - window].time_index
    if steps <= 0:
        raise ValueError("window spans no time steps")
    return (norm_new / norm_old) ** (1.0 / steps)


def observed_order(errors: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log(error) against log(h).

    ``errors`` holds (h, e) pairs with strictly decreasing positive h and
    positive e.
    """
    if len(errors) < 2:
        raise ValueError("need at least 2 (h, error) samples")
    hs = np.array([h for h, _ in errors], dtype=float)
    es = np.array([e for _, e in errors], dtype=float)
    if np.any(hs <= 0.0) or np.any(es <= 0.0):
        raise ValueError("h and errors must be positive")
    if np.any(np.diff(hs) >= 0.0):
        raise ValueError("h values must be strictly decreasing")
    slope, _ = np.polyfit(np.log(hs), np.log(es), 1)
    return float(slope)


def information_speed(record: RunRecord,
                      support_threshold: float = DEFAULT_SUPPORT_THRESHOLD
                      ) -> list[int]:
    """Support radius of each snapshot around the initial point source.

    The initial snapshot must be a one-node indicator; the radius of a later
    snapshot is max |j - j_source| over nodes with |u_j| above the threshold
    (0 when nothing exceeds it).  Explicit three-point stencils grow this by
    exactly one cell per step; fully implicit solves light up the whole
    domain in a single step.
    """
    if support_threshold <= 0.0:
        raise ValueError("support threshold must be positive")
    if not record.snapshots:
        raise ValueError("record has no snapshots")
    first = np.abs(record.snapshots[0].values) > support_threshold
    sources = np.flatnonzero(first)
    if len(sources) != 1:
        raise ValueError("initial field is not a one-node indicator "
                         f"({len(sources)} nodes above threshold)")
    source = int(sources[0])
    radii = []
    for snap in record.snapshots:
        above = np.flatnonzero(np.abs(snap.values) > support_threshold)
        radius = 0 if len(above) == 0 else int(np.max(np.abs(above - source)))
        radii.append(radius)
    return radii


def dispersion_branches(nu: float, tau: float, kappa: float) -> DispersionSample:
    """Frequency branches of the relaxed equation against pure diffusion.

    Plane waves e^{i (kappa x - omega t)} give omega = -i nu kappa^2 for the
    diffusion equation and -tau omega^2 - i omega + nu kappa^2 = 0 for the
    relaxed one, hence the two branches
    omega_+- = (-i +- sqrt(4 nu kappa^2 tau - 1)) / (2 tau)
    (principal complex square root).
    """
    if tau <= 0.0 or nu <= 0.0:
        raise ValueError("need tau > 0 and nu > 0")
    root = np.sqrt(complex(4.0 * nu * kappa ** 2 * tau - 1.0))
    omega_plus = (-1j + root) / (2.0 * tau)
    omega_minus = (-1j - root) / (2.0 * tau)
    omega_parabolic = -1j * nu * kappa ** 2
    return DispersionSample(kappa=kappa, omega_parabolic=omega_parabolic,
                            omega_plus=complex(omega_plus),
                            omega_minus=complex(omega_minus))


def hyperbolization_error_bound(inputs: ErrorBoundInputs) -> float:
    """Uniform bound on the gap between relaxed and diffusive solutions.

    |u_relaxed - u_diffusion| <= tau M (1 + 2/sqrt(pi))
                                 (8 sqrt(2) tau + (2 pi^2)^{1/4} / 2 * T).
    """
    tau, big_m, horizon = inputs.tau, inputs.sup_utt_M, inputs.horizon_T
    return tau * big_m * (1.0 + 2.0 / math.sqrt(math.pi)) * (
        8.0 * math.sqrt(2.0) * tau + (2.0 * math.pi ** 2) ** 0.25 / 2.0 * horizon)


def truncation_residual(scheme: Scheme,
                        smooth_solution: Callable[[float, float], float],
                        params: SchemeParams, x: float, t: float) -> float:
    """Defining difference relation of a scheme evaluated on an exact solution.

    ``smooth_solution(x, t)`` should satisfy the target equation (pure
    diffusion, or the relaxed equation for the two-layer schemes); refinement
    studies of this residual then expose each scheme's consistency order
    without symbolic expansions.
    """
    u = smooth_solution
    dt, dx = params.dt, params.dx

    def k_at(xx: float, tt: float) -> float:
        return params.diffusivity.evaluate(u(xx, tt))

    def d2(tt: float) -> float:
        return u(x - dx, tt) - 2.0 * u(x, tt) + u(x + dx, tt)

    if scheme is Scheme.EXPLICIT:
        nu = params.nu
        return (u(x, t + dt) - u(x, t)) / dt - nu * d2(t) / dx ** 2
    if scheme is Scheme.IMPLICIT:
        nu = params.nu
        return (u(x, t + dt) - u(x, t)) / dt - nu * d2(t + dt) / dx ** 2
    if scheme is Scheme.CRANK_NICOLSON:
        nu = params.nu
        return (u(x, t + dt) - u(x, t)) / dt - nu * (
            d2(t) + d2(t + dt)) / (2.0 * dx ** 2)
    if scheme is Scheme.CN_NONLINEAR:
        return (u(x, t + dt) - u(x, t)) / dt \
            - k_at(x, t) * d2(t) / (2.0 * dx ** 2) \
            - k_at(x, t + dt) * d2(t + dt) / (2.0 * dx ** 2)
    if scheme is Scheme.CROSS_CN:
        return (u(x, t + dt) - u(x, t)) / dt \
            - k_at(x, t + dt) * d2(t) / (2.0 * dx ** 2) \
            - k_at(x, t) * d2(t + dt) / (2.0 * dx ** 2)
    if scheme is Scheme.LEAPFROG:
        nu = params.nu
        return (u(x, t + dt) - u(x, t - dt)) / (2.0 * dt) - nu * d2(t) / dx ** 2
    if scheme is Scheme.DUFORT_FRANKEL:
        nu = params.nu
        avg = u(x - dx, t) - (u(x, t - dt) + u(x, t + dt)) + u(x + dx, t)
        return (u(x, t + dt) - u(x, t - dt)) / (2.0 * dt) - nu * avg / dx ** 2
    if scheme is Scheme.SAULYEV:
        # sum of the two one-sided stages divided by two
        nu = params.nu
        stages = (u(x + dx, t) - u(x, t)
                  - 2.0 * u(x, t + dt) + 2.0 * u(x - dx, t + dt)
                  + u(x + dx, t + 2.0 * dt) - u(x, t + 2.0 * dt))
        return (u(x, t + 2.0 * dt) - u(x, t)) / (2.0 * dt) \
            - nu * stages / (2.0 * dx ** 2)
    if scheme is Scheme.HYPERBOLIC:
        nu, tau = params.nu, params.tau
        return tau * (u(x, t + dt) - 2.0 * u(x, t) + u(x, t - dt)) / dt ** 2 \
            + (u(x, t + dt) - u(x, t - dt)) / (2.0 * dt) \
            - nu * d2(t) / dx ** 2
    raise ValueError(f"unknown scheme {scheme}")
