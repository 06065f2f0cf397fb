"""Closed-form solutions used as convergence and accuracy oracles.

``fundamental_solution`` is the free-space heat kernel; ``SineSeriesSolution``
solves u_t = nu u_xx on [0, l] with homogeneous Dirichlet ends by separation
of variables; ``hyperbolic_mode_solution`` solves the relaxed equation
tau u_tt + u_t = nu u_xx for a single sine mode started at rest.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


def fundamental_solution(x: float, t: float, nu: float) -> float:
    """Free-space point-source solution (1 / sqrt(4 pi nu t)) e^{-x^2/(4 nu t)}.

    Parameters
    ----------
    x : float
        Distance from the source.
    t : float
        Time, must be positive.
    nu : float
        Diffusion coefficient, must be positive.
    """
    if t <= 0.0:
        raise ValueError(f"fundamental solution needs t > 0, got {t}")
    if nu <= 0.0:
        raise ValueError(f"diffusivity must be positive, got {nu}")
    return math.exp(-x * x / (4.0 * nu * t)) / math.sqrt(4.0 * math.pi * nu * t)


@dataclass(frozen=True)
class SineSeriesSolution:
    """u(x, t) = sum_m a_m sin(m pi x / l) exp(-nu (m pi / l)^2 t).

    Satisfies u_t = nu u_xx with homogeneous Dirichlet ends identically.
    ``modes`` is a sequence of (m, amplitude) pairs with m >= 1.
    """

    length_l: float
    nu: float
    modes: Sequence[tuple[int, float]]

    def __post_init__(self):
        if self.length_l <= 0.0:
            raise ValueError("domain length must be positive")
        if self.nu <= 0.0:
            raise ValueError("diffusivity must be positive")
        for m, _ in self.modes:
            if m < 1:
                raise ValueError(f"mode index must be >= 1, got {m}")

    @staticmethod
    def single_mode(length_l: float, nu: float, m: int,
                    amplitude: float = 1.0) -> "SineSeriesSolution":
        return SineSeriesSolution(length_l=length_l, nu=nu,
                                  modes=((m, amplitude),))


def evaluate_series(sol: SineSeriesSolution, x: float, t: float) -> float:
    """Value of the sine-series solution at (x, t)."""
    total = 0.0
    for m, amplitude in sol.modes:
        k = m * math.pi / sol.length_l
        total += amplitude * math.sin(k * x) * math.exp(-sol.nu * k * k * t)
    return total


def hyperbolic_mode_solution(nu: float, tau: float, length_l: float,
                             m: int, t: float, x: float) -> float:
    """Exact single-mode solution of tau u_tt + u_t = nu u_xx started at rest.

    Initial data sin(m pi x / l) with u_t(0) = 0 and homogeneous Dirichlet
    ends.  The time factor solves tau T'' + T' + nu k^2 T = 0, whose roots
    are s = (-1 +- sqrt(1 - 4 tau nu k^2)) / (2 tau); complex roots give the
    damped oscillatory regime and a double root degenerates to (1 - s t) e^{s t}.
    """
    if tau <= 0.0:
        raise ValueError(f"relaxation time must be positive, got {tau}")
    if nu <= 0.0 or length_l <= 0.0 or m < 1:
        raise ValueError("need nu > 0, length_l > 0 and m >= 1")
    k = m * math.pi / length_l
    disc = complex(1.0 - 4.0 * tau * nu * k * k)
    root = np.sqrt(disc)
    s1 = (-1.0 + root) / (2.0 * tau)
    s2 = (-1.0 - root) / (2.0 * tau)
    if abs(s2 - s1) <= 1e-9 * max(abs(s1), abs(s2)):
        s = -1.0 / (2.0 * tau)
        time_factor = (1.0 - s * t) * math.exp(s * t)
    else:
        # c1 e^{s1 t} + c2 e^{s2 t} with T(0) = 1, T'(0) = 0
        value = (s2 * np.exp(s1 * t) - s1 * np.exp(s2 * t)) / (s2 - s1)
        time_factor = float(value.real)
    return time_factor * math.sin(k * x)
