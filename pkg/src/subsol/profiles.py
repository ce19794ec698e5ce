"""Self-similar velocity profiles H and the derived vorticity profile G.

A profile is an interior function on [0, 1] glued to the fixed power tail
H(xi) = xi^(1-alpha) for xi > 1.  The closed-form family

    H(xi) = (1 - a*log(xi)) * xi^(1+b),    a = (4+b)*(alpha+b)/(4-alpha),

satisfies H(0) = 0 and H(1) = 1 by construction and carries the mass
normalization in the coefficient a.  Tabulated interiors (monotone cubic
through samples) and pointwise convex combinations are also supported.

The vorticity profile is G = H' + H/xi, i.e. xi*G = d/dxi (xi*H); on the
tail this reduces to G = (2-alpha)*xi^(-alpha).

Profiles are immutable after construction and every evaluator is pure, so
instances can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import PchipInterpolator

__all__ = [
    "AnsatzParams",
    "AnsatzProfile",
    "CombinationProfile",
    "RadialProfile",
    "TabulatedProfile",
    "ansatz_a",
    "make_ansatz_profile",
    "profile_from_json",
    "validate_alpha",
]


def validate_alpha(alpha):
    """Return alpha as float, rejecting values outside the open interval (0, 2)."""
    a = float(alpha)
    if not 0.0 < a < 2.0 or a != a:
        raise ValueError("alpha out of range (0,2)")
    return a


def ansatz_a(alpha, b):
    """Log-correction coefficient a = (4+b)(alpha+b)/(4-alpha)."""
    alpha = validate_alpha(alpha)
    b = float(b)
    if b < 0.0:
        raise ValueError("b must be >= 0")
    return (4.0 + b) * (alpha + b) / (4.0 - alpha)


@dataclass(frozen=True)
class AnsatzParams:
    """Parameters of the closed-form interior family; a is always derived."""

    alpha: float
    b: float

    def __post_init__(self):
        validate_alpha(self.alpha)
        if self.b < 0.0:
            raise ValueError("b must be >= 0")

    @property
    def a(self):
        return ansatz_a(self.alpha, self.b)


def _split_scalar(xi):
    x = np.asarray(xi, dtype=float)
    return np.atleast_1d(x), x.ndim == 0


class RadialProfile:
    """Base class: piecewise evaluators for H, H' and G.

    Subclasses provide the interior part on [0, 1] through `_interior` and
    `_interior_deriv`, both vectorized over ndarrays.
    """

    kind = "base"

    def __init__(self, alpha):
        self.alpha = validate_alpha(alpha)

    # -- subclass hooks -------------------------------------------------

    def _interior(self, x):
        raise NotImplementedError

    def _interior_deriv(self, x):
        raise NotImplementedError

    # -- public evaluators ----------------------------------------------

    def H(self, xi):
        """Velocity profile; interior on [0, 1], xi^(1-alpha) beyond."""
        x, scalar = _split_scalar(xi)
        if np.any(x < 0.0):
            raise ValueError("xi must be >= 0")
        out = np.empty_like(x)
        m = x <= 1.0
        out[m] = self._interior(x[m])
        out[~m] = x[~m] ** (1.0 - self.alpha)
        return float(out[0]) if scalar else out

    def dH(self, xi):
        """Derivative dH/dxi for xi > 0, xi != 1 (H may kink at 1)."""
        x, scalar = _split_scalar(xi)
        if np.any(x <= 0.0):
            raise ValueError("derivative requires xi > 0")
        if np.any(x == 1.0):
            raise ValueError(
                "derivative is one-sided at the matching point; "
                "use dH_one_sided_at_one()"
            )
        out = np.empty_like(x)
        m = x < 1.0
        out[m] = self._interior_deriv(x[m])
        out[~m] = (1.0 - self.alpha) * x[~m] ** (-self.alpha)
        return float(out[0]) if scalar else out

    def dH_one_sided_at_one(self):
        """(left, right) derivatives at the matching point xi = 1."""
        left = float(self._interior_deriv(np.array([1.0]))[0])
        return left, 1.0 - self.alpha

    def G(self, xi):
        """Vorticity profile G = H' + H/xi; equals (2-alpha)*xi^(-alpha) on the tail.

        Left-continuous at xi = 1 (G generally jumps there).
        """
        x, scalar = _split_scalar(xi)
        if np.any(x <= 0.0):
            raise ValueError("G requires xi > 0")
        out = np.empty_like(x)
        m = x <= 1.0
        xm = x[m]
        out[m] = self._interior(xm) / xm + self._interior_deriv(xm)
        out[~m] = (2.0 - self.alpha) * x[~m] ** (-self.alpha)
        return float(out[0]) if scalar else out

    def to_json(self):
        raise NotImplementedError


class AnsatzProfile(RadialProfile):
    """Interior H(xi) = (1 - a*log(xi)) * xi^(1+b) with derived coefficient a.

    `a_override` bypasses the mass normalization and is meant only for
    probing how the admissibility checks fail; overridden profiles refuse
    to serialize.
    """

    kind = "ansatz"

    def __init__(self, alpha, b, a_override=None):
        super().__init__(alpha)
        b = float(b)
        if b < 0.0:
            raise ValueError("b must be >= 0")
        self.b = b
        self._a_override = None if a_override is None else float(a_override)

    @property
    def a(self):
        # recomputed on access so it can never go stale
        if self._a_override is not None:
            return self._a_override
        return ansatz_a(self.alpha, self.b)

    def _interior(self, x):
        out = np.zeros_like(x)
        m = x > 0.0
        xm = x[m]
        out[m] = (1.0 - self.a * np.log(xm)) * xm ** (1.0 + self.b)
        return out

    def _interior_deriv(self, x):
        # d/dxi [(1 - a log xi) xi^(1+b)] = xi^b ((1+b)(1 - a log xi) - a);
        # unbounded at 0 when b = 0, but callers only pass xi > 0.
        a = self.a
        return x**self.b * ((1.0 + self.b) * (1.0 - a * np.log(x)) - a)

    def to_json(self):
        if self._a_override is not None:
            raise ValueError("profiles with an overridden a are diagnostic-only "
                             "and cannot be serialized")
        return {"kind": "ansatz", "alpha": self.alpha, "b": self.b}


class TabulatedProfile(RadialProfile):
    """Interior given by samples on [0, 1], interpolated monotone-cubically.

    Samples must start at xi = 0 and end at xi = 1; refining the grid near
    zero (geometric spacing) preserves H(0) = 0 without overshoot.  The
    derivative comes from a centered difference with relative step
    1e-6 * max(xi, 1), clamped to the sample range.
    """

    kind = "tabulated"

    def __init__(self, alpha, xi, values, check_boundary=True):
        super().__init__(alpha)
        xi = np.asarray(xi, dtype=float)
        values = np.asarray(values, dtype=float)
        if xi.ndim != 1 or xi.shape != values.shape or xi.size < 4:
            raise ValueError("need matching 1-d sample arrays with >= 4 points")
        if xi[0] != 0.0 or xi[-1] != 1.0 or np.any(np.diff(xi) <= 0.0):
            raise ValueError("sample grid must increase strictly from 0 to 1")
        if check_boundary:
            if abs(values[0]) > 1e-9:
                raise ValueError("profile must satisfy H(0) = 0")
            if abs(values[-1] - 1.0) > 1e-9:
                raise ValueError("profile must satisfy H(1) = 1 to match the tail")
        self._xi = xi
        self._values = values
        self._interp = PchipInterpolator(xi, values, extrapolate=False)

    def _interior(self, x):
        return self._interp(x)

    def _interior_deriv(self, x):
        h = 1e-6 * np.maximum(x, 1.0)
        lo = np.maximum(x - h, 0.0)
        hi = np.minimum(x + h, 1.0)
        return (self._interp(hi) - self._interp(lo)) / (hi - lo)

    def to_json(self):
        return {
            "kind": "tabulated",
            "alpha": self.alpha,
            "samples": [[float(x), float(v)] for x, v in zip(self._xi, self._values)],
        }


class CombinationProfile(RadialProfile):
    """Pointwise convex combination lam*H1 + (1-lam)*H2 of two profiles.

    Both components must share alpha, so the power tails coincide and the
    combination is again a valid profile.
    """

    kind = "combination"

    def __init__(self, p1, p2, lam):
        if p1.alpha != p2.alpha:
            raise ValueError("cannot combine profiles with different alpha")
        lam = float(lam)
        if not 0.0 <= lam <= 1.0:
            raise ValueError("lam must lie in [0, 1]")
        super().__init__(p1.alpha)
        self.p1 = p1
        self.p2 = p2
        self.lam = lam

    def _interior(self, x):
        return self.lam * self.p1._interior(x) + (1.0 - self.lam) * self.p2._interior(x)

    def _interior_deriv(self, x):
        return (self.lam * self.p1._interior_deriv(x)
                + (1.0 - self.lam) * self.p2._interior_deriv(x))

    def to_json(self):
        # the wire schema has no combination variant; emit dense samples
        xi = np.linspace(0.0, 1.0, 1025)
        return {
            "kind": "tabulated",
            "alpha": self.alpha,
            "samples": [[float(x), float(v)] for x, v in zip(xi, self._interior(xi))],
        }


def make_ansatz_profile(alpha, b):
    """Construct the closed-form profile for (alpha, b); H(0)=0, H(1)=1 hold exactly."""
    alpha = validate_alpha(alpha)
    b = float(b)
    if b < 0.0:
        raise ValueError("b must be >= 0")
    return AnsatzProfile(alpha, b)


def profile_from_json(obj):
    """Rebuild a profile from its JSON object {kind, alpha, b? , samples?}."""
    kind = obj.get("kind")
    if kind == "ansatz":
        return AnsatzProfile(obj["alpha"], obj["b"])
    if kind == "tabulated":
        samples = np.asarray(obj["samples"], dtype=float)
        return TabulatedProfile(obj["alpha"], samples[:, 0], samples[:, 1])
    raise ValueError(f"unknown profile kind: {kind!r}")
