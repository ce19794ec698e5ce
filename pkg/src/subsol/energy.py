"""Energy dissipation rates, the truncated energy curve, and the point-vortex limit.

For the log-corrected profile with b = 0 the whole energy budget is in
closed form:

    rate(t)   = -(pi/16) * (2a/(4-a))^((8-a)/a) * t^((4-3a)/a)
    c         = (2a/(4-a))^2
    T         = r0^a / c
    drop(t)   = (pi/32) * a/(2-a) * (2a/(4-a))^((8-a)/a) * t^(2(2-a)/a)
    E_chi(0) >= pi/(2(2-a)) * r0^(2(2-a))

The sign of the t-exponent (4-3a)/a classifies the initial rate: it
vanishes as t -> 0 for a < 4/3, is constant -pi/16 at a = 4/3, and
diverges for a > 4/3.  At the borderline a -> 2 (point vortex) the rate
becomes -pi/(2t) and the energy decays logarithmically.

Alpha-powers such as (2a/(4-a))^((8-a)/a) are evaluated as exp of sums of
logs; at small alpha the exponent reaches the tens and direct powering
would lose accuracy or underflow prematurely.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .profiles import validate_alpha
from .series import FigureSeries

__all__ = [
    "EnergyReport",
    "OnsagerClass",
    "dissipation_ansatz_b0",
    "dissipation_rate",
    "dissipation_rate_optimal",
    "energy_curve",
    "energy_drop",
    "energy_report",
    "growth_rate",
    "horizon_T",
    "initial_energy_lower_bound",
    "onsager_classify",
    "point_vortex",
]


class OnsagerClass(str, enum.Enum):
    """Behaviour of the dissipation rate as t -> 0+."""

    VANISHING_RATE = "vanishing-rate"
    CONSTANT_RATE = "constant-rate"
    DIVERGING_RATE = "diverging-rate"


def growth_rate(alpha):
    """Rate-maximizing growth constant c = (2*alpha/(4-alpha))^2 for b = 0."""
    alpha = validate_alpha(alpha)
    return (2.0 * alpha / (4.0 - alpha)) ** 2


def _t_power(alpha, t):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise ValueError("t must be > 0")
    return t ** ((4.0 - 3.0 * alpha) / alpha)


def dissipation_rate(A, B, c, alpha, t):
    """Energy dissipation rate at growth constant c:

    -(2*pi/alpha) * c^(2(2-alpha)/alpha) * (A - 2(2-alpha)/alpha * B * c)
    * t^((4-3*alpha)/alpha).

    Negative exactly when 0 < c < alpha*A/(2(2-alpha)B).
    """
    alpha = validate_alpha(alpha)
    if not c > 0.0:
        raise ValueError("c must be > 0")
    gamma = 2.0 * (2.0 - alpha) / alpha
    prefactor = (2.0 * math.pi / alpha) * math.exp(gamma * math.log(c))
    out = -prefactor * (A - gamma * B * c) * _t_power(alpha, t)
    return float(out) if np.ndim(t) == 0 else out


def dissipation_rate_optimal(A, B, alpha, t):
    """Rate at the maximizing c:

    -2*pi * (A/(4-alpha))^((4-alpha)/alpha) * (alpha/B)^(2(2-alpha)/alpha)
    * t^((4-3*alpha)/alpha).
    """
    alpha = validate_alpha(alpha)
    if not (A > 0.0 and B > 0.0):
        raise ValueError("optimal rate requires A > 0 and B > 0")
    log_pref = ((4.0 - alpha) / alpha * math.log(A / (4.0 - alpha))
                + 2.0 * (2.0 - alpha) / alpha * math.log(alpha / B))
    out = -2.0 * math.pi * math.exp(log_pref) * _t_power(alpha, t)
    return float(out) if np.ndim(t) == 0 else out


def dissipation_ansatz_b0(alpha, t):
    """Closed-form rate of the b = 0 profile at its optimal growth constant."""
    alpha = validate_alpha(alpha)
    log_pref = (8.0 - alpha) / alpha * math.log(2.0 * alpha / (4.0 - alpha))
    out = -(math.pi / 16.0) * math.exp(log_pref) * _t_power(alpha, t)
    return float(out) if np.ndim(t) == 0 else out


def horizon_T(alpha, r0):
    """Time r0^alpha / c at which the self-similar disc reaches the cutoff."""
    alpha = validate_alpha(alpha)
    r0 = float(r0)
    if not r0 > 0.0:
        raise ValueError("r0 must be > 0")
    return r0**alpha / growth_rate(alpha)


def initial_energy_lower_bound(alpha, r0):
    """Lower bound pi/(2(2-alpha)) * r0^(2(2-alpha)) on the truncated initial energy."""
    alpha = validate_alpha(alpha)
    r0 = float(r0)
    if not r0 > 0.0:
        raise ValueError("r0 must be > 0")
    return math.pi / (2.0 * (2.0 - alpha)) * r0 ** (2.0 * (2.0 - alpha))


def onsager_classify(alpha):
    """Classify the t -> 0 rate by the sign of the exponent (4-3*alpha)/alpha."""
    alpha = validate_alpha(alpha)
    num = 4.0 - 3.0 * alpha
    if abs(num) < 1e-12:
        return OnsagerClass.CONSTANT_RATE
    return OnsagerClass.VANISHING_RATE if num > 0.0 else OnsagerClass.DIVERGING_RATE


def energy_drop(alpha, t):
    """Accumulated energy drop of the truncated subsolution up to time t."""
    alpha = validate_alpha(alpha)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise ValueError("t must be > 0")
    log_pref = (8.0 - alpha) / alpha * math.log(2.0 * alpha / (4.0 - alpha))
    pref = (math.pi / 32.0) * alpha / (2.0 - alpha) * math.exp(log_pref)
    out = pref * t ** (2.0 * (2.0 - alpha) / alpha)
    return float(out) if np.ndim(t) == 0 else out


def energy_curve(alpha, r0, E0, t_grid):
    """Tabulate E0 - drop(t) on a strictly increasing grid in (0, T].

    Raises on grid points beyond the horizon T where the truncation stops
    being transparent; warns when E0 sits below the physical lower bound
    (the curve is then a normalized rendering, not an energy).
    """
    alpha = validate_alpha(alpha)
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2 or np.any(np.diff(t) <= 0.0):
        raise ValueError("t_grid must be strictly increasing with >= 2 points")
    if np.any(t <= 0.0):
        raise ValueError("t must be > 0")
    T = horizon_T(alpha, r0)
    if np.any(t > T * (1.0 + 1e-12)):
        raise ValueError(f"t exceeds the horizon T = {T:.6g}")
    bound = initial_energy_lower_bound(alpha, r0)
    if E0 < bound:
        warnings.warn(
            f"E0 = {E0:g} is below the initial-energy lower bound {bound:.6g}; "
            "treating it as a plot normalization",
            stacklevel=2,
        )
    return FigureSeries(
        label=f"alpha={alpha:.17g}",
        x=t,
        y=E0 - energy_drop(alpha, t),
        meta={
            "alpha": alpha,
            "c": growth_rate(alpha),
            "r0": float(r0),
            "E0": float(E0),
            "T": T,
            "formula": "truncated-energy-curve",
        },
    )


def point_vortex(beta, t, E_ref):
    """Borderline alpha -> 2 budget: (rate, energy, boundary_radius).

    rate = -beta*pi/(2t); energy = E_ref - beta*(pi/2)*log(t), referenced
    to t = 1; the turbulent disc boundary is 2*sqrt(t) (the alpha = 2,
    c = 4 limit of (c t)^(1/alpha)).
    """
    beta = float(beta)
    if not 0.0 < beta <= 1.0:
        raise ValueError("beta must lie in (0, 1]")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0.0):
        raise ValueError("t must be > 0")
    rate = -beta * math.pi / (2.0 * t)
    energy = E_ref - beta * (math.pi / 2.0) * np.log(t)
    radius = 2.0 * np.sqrt(t)
    if np.ndim(t) == 0:
        return float(rate), float(energy), float(radius)
    return rate, energy, radius


@dataclass(frozen=True)
class EnergyReport:
    """Energy budget of the b = 0 subsolution for one (alpha, r0)."""

    alpha: float
    c: float
    r0: float
    T: float
    E0_lower_bound: float
    onsager_class: OnsagerClass

    def dissipation(self, t):
        return dissipation_ansatz_b0(self.alpha, t)

    def energy_drop(self, t):
        return energy_drop(self.alpha, t)

    def to_json(self):
        return {
            "alpha": self.alpha,
            "c": self.c,
            "r0": self.r0,
            "T": self.T,
            "E0_lower_bound": self.E0_lower_bound,
            "onsager_class": self.onsager_class.value,
        }


def energy_report(alpha, r0):
    alpha = validate_alpha(alpha)
    return EnergyReport(
        alpha=alpha,
        c=growth_rate(alpha),
        r0=float(r0),
        T=horizon_T(alpha, r0),
        E0_lower_bound=initial_energy_lower_bound(alpha, r0),
        onsager_class=onsager_classify(alpha),
    )
