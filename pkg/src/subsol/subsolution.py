"""Admissibility data of a profile and the induced stress/pressure profiles.

For a profile H the relevant objects are

    m1 = int_0^1 xi^2 H dxi                 (condition 1: (4-alpha)*m1 = 1)
    m2 = int_0^1 xi  H^2 dxi                (condition 2: 2(2-alpha)*m2 < 1)
    A  = 1/2 - (2-alpha)*m2
    B  = int_0^1 |xi^2 H - (4-alpha)/xi * int_0^xi z^2 H dz| dxi
    W2(xi) = xi H - (4-alpha)/xi^2 * int_0^xi z^2 H dz   on (0, 1], 0 beyond
    Q(xi)  = q_s(1) - int_xi^1 G H dz                    on (0, 1], q_s beyond

together with the growth-rate window 0 < c < alpha*A/(2(2-alpha)B) and the
rate-maximizing c = alpha*A/((4-alpha)B).

The two inner cumulative integrals are tabulated once per profile on a
4096-node grid (geometric near 0) and represented by a cubic Hermite
spline with the exact integrand as slope data, so pointwise evaluation is
O(1), accurate to ~1e-13, and smooth enough for second-order finite
difference checks.  The caches are keyed weakly on the profile object;
all public operations stay pure.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .quadrature import NODES, WEIGHTS_KRONROD, integrate
from .quadrature import moment_m1, moment_m2

__all__ = [
    "AdmissibilityReport",
    "TOL_COND1",
    "c_range_and_optimal",
    "check_conditions",
    "compute_A",
    "compute_B",
    "eval_Q",
    "eval_W2",
    "eval_qs",
    "residual_ss",
]

# declaring condition 1 satisfied
TOL_COND1 = 1e-9

# quadrature tolerance for the A/B/c pipeline; tighter than the generic
# moment default so the optimal c matches its closed form to 1e-10 absolute
# even at alpha = 0.2 where A ~ 1e-4
_TOL_AB = 2.5e-13

_XI_GRID = np.concatenate([
    np.geomspace(1e-12, 0.1, 2048),
    np.linspace(0.1, 1.0, 2049)[1:],
])


class _CumulativeSpline:
    """C(x) = int_0^x f, tabulated on a fixed grid, C1-smooth in between."""

    def __init__(self, f, grid=_XI_GRID):
        a = np.concatenate(([0.0], grid[:-1]))
        b = grid
        half = 0.5 * (b - a)
        nodes = (0.5 * (a + b))[:, None] + half[:, None] * NODES[None, :]
        fv = np.asarray(f(nodes.ravel()), dtype=float).reshape(nodes.shape)
        panel = half * (fv @ WEIGHTS_KRONROD)
        c = np.cumsum(panel)
        self._f = f
        self._x0 = grid[0]
        self._spline = CubicHermiteSpline(grid, c, np.asarray(f(grid), dtype=float))
        self.at_one = float(c[-1])

    def _tiny(self, x):
        # below the first grid node: one Kronrod panel on [0, x] suffices
        if x == 0.0:
            return 0.0
        half = 0.5 * x
        nodes = half + half * NODES
        if nodes[0] <= 0.0:
            # denormal-width panel: the integral is 0 to double precision
            return 0.0
        return half * float(WEIGHTS_KRONROD @ np.asarray(self._f(nodes), dtype=float))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        x = np.atleast_1d(x)
        out = np.empty_like(x)
        m = x >= self._x0
        out[m] = self._spline(x[m])
        if not m.all():
            out[~m] = [self._tiny(v) for v in x[~m]]
        return float(out[0]) if scalar else out


class _Calculus:
    def __init__(self, profile):
        self._p = profile

    @cached_property
    def cum_xi2H(self):
        p = self._p
        return _CumulativeSpline(lambda x: x * x * p.H(x))

    @cached_property
    def cum_GH(self):
        p = self._p
        return _CumulativeSpline(lambda x: p.G(x) * p.H(x))


_CACHE = weakref.WeakKeyDictionary()


def _calculus(profile):
    calc = _CACHE.get(profile)
    if calc is None:
        calc = _Calculus(profile)
        _CACHE[profile] = calc
    return calc


@dataclass(frozen=True)
class AdmissibilityReport:
    """Outcome of the two integral conditions plus the growth-rate window."""

    alpha: float
    b: float | None
    cond1_residual: float
    cond2_margin: float
    A: float
    B: float
    c_max_bound: float
    c_opt: float

    @property
    def admissible(self):
        return self.cond1_residual <= TOL_COND1 and self.cond2_margin > 0.0

    def to_json(self):
        return {
            "cond1_residual": self.cond1_residual,
            "cond2_margin": self.cond2_margin,
            "A": self.A,
            "B": self.B,
            "c_max_bound": self.c_max_bound,
            "c_opt": self.c_opt,
            "alpha": self.alpha,
            "b": self.b,
        }


def eval_qs(alpha, r):
    """Bernoulli pressure of the steady power-law vortex.

    (2-alpha)/(2(1-alpha)) * r^(2(1-alpha)) away from alpha = 1; within
    1e-12 of alpha = 1 the logarithmic limit log(r) is used instead (the
    coefficient is singular there, the pressure is not).
    """
    alpha = float(alpha)
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    if np.any(r <= 0.0):
        raise ValueError("r must be > 0")
    if abs(alpha - 1.0) < 1e-12:
        out = np.log(r)
    else:
        out = (2.0 - alpha) / (2.0 * (1.0 - alpha)) * r ** (2.0 * (1.0 - alpha))
    return float(out[0]) if scalar else out


def eval_W2(profile, xi):
    """Stress profile W2 = xi*H - (4-alpha)/xi^2 * int_0^xi z^2 H dz; zero for xi > 1."""
    x = np.asarray(xi, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x < 0.0):
        raise ValueError("xi must be >= 0")
    cum = _calculus(profile).cum_xi2H
    out = np.zeros_like(x)
    # W2 ~ xi^(2+b) |log xi| sits below the double underflow floor for
    # xi < 1e-150; the formula would divide 0/0 there
    m = (x > 1e-150) & (x <= 1.0)
    xm = x[m]
    out[m] = xm * profile.H(xm) - (4.0 - profile.alpha) * cum(xm) / (xm * xm)
    return float(out[0]) if scalar else out


def eval_Q(profile, xi):
    """Pressure profile: q_s(1) - int_xi^1 G H on (0, 1], q_s(xi) beyond."""
    x = np.asarray(xi, dtype=float)
    scalar = x.ndim == 0
    x = np.atleast_1d(x)
    if np.any(x < 0.0):
        raise ValueError("xi must be >= 0")
    alpha = profile.alpha
    cum = _calculus(profile).cum_GH
    qs1 = eval_qs(alpha, 1.0)
    out = np.empty_like(x)
    m = x <= 1.0
    out[m] = qs1 - (cum.at_one - cum(x[m]))
    if not m.all():
        out[~m] = eval_qs(alpha, x[~m])
    return float(out[0]) if scalar else out


def compute_A(profile, tol=_TOL_AB):
    """Kinetic functional A = 1/2 - (2-alpha) * m2, by quadrature."""
    return 0.5 - (2.0 - profile.alpha) * moment_m2(profile, tol)


def _signed_B_integrand(profile):
    cum = _calculus(profile).cum_xi2H
    alpha = profile.alpha

    def s(x):
        x = np.asarray(x, dtype=float)
        return x * x * profile.H(x) - (4.0 - alpha) * cum(x) / x

    return s


def compute_B(profile, tol=_TOL_AB):
    """Relaxation functional B = int_0^1 |xi * W2| dxi, by quadrature.

    The signed integrand is scanned for interior sign changes first; each
    single-signed piece is integrated separately so the absolute value
    never puts a kink inside a quadrature panel.
    """
    s = _signed_B_integrand(profile)
    xs = np.concatenate([np.geomspace(1e-8, 0.1, 257), np.linspace(0.1, 1.0, 513)[1:]])
    vals = s(xs)
    # The integrand vanishes at 0 and (under condition 1) at 1, so sampled
    # values there are roundoff; only flips clear of that noise floor count.
    noise = 1e-11 * float(np.max(np.abs(vals)))
    cuts = [0.0]
    for i in range(len(xs) - 1):
        if min(abs(vals[i]), abs(vals[i + 1])) <= noise:
            continue
        if vals[i] * vals[i + 1] < 0.0:
            root = brentq(lambda x: float(s(x)), xs[i], xs[i + 1], xtol=1e-14)
            if root - cuts[-1] > 1e-9 and 1.0 - root > 1e-9:
                cuts.append(root)
    cuts.append(1.0)
    piece_tol = tol / (len(cuts) - 1)
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        total += abs(integrate(s, a, b, piece_tol).value)
    return total


def check_conditions(profile, tol=_TOL_AB):
    """Evaluate both admissibility conditions and the growth-rate window."""
    alpha = profile.alpha
    m1 = moment_m1(profile, tol)
    m2 = moment_m2(profile, tol)
    a_val = 0.5 - (2.0 - alpha) * m2
    b_val = compute_B(profile, tol)
    if a_val > 0.0 and b_val > 0.0:
        c_max = alpha * a_val / (2.0 * (2.0 - alpha) * b_val)
        c_opt = alpha * a_val / ((4.0 - alpha) * b_val)
    else:
        c_max = math.nan
        c_opt = math.nan
    return AdmissibilityReport(
        alpha=alpha,
        b=getattr(profile, "b", None),
        cond1_residual=abs((4.0 - alpha) * m1 - 1.0),
        cond2_margin=1.0 - 2.0 * (2.0 - alpha) * m2,
        A=a_val,
        B=b_val,
        c_max_bound=c_max,
        c_opt=c_opt,
    )


def c_range_and_optimal(report, alpha):
    """Growth-rate window and maximizer from a report's A and B.

    Returns (c_max_bound, c_opt) with c_opt = alpha*A/((4-alpha)*B) and
    c_max_bound = alpha*A/(2(2-alpha)*B).
    """
    alpha = float(alpha)
    if not (report.A > 0.0 and report.B > 0.0):
        raise ValueError("c is only defined for A > 0 and B > 0")
    c_max = alpha * report.A / (2.0 * (2.0 - alpha) * report.B)
    c_opt = alpha * report.A / ((4.0 - alpha) * report.B)
    return c_max, c_opt


def residual_ss(profile, xi_grid, step=1e-4):
    """Centered-difference residuals of the self-similar system on a grid.

    res1 checks dQ/dxi = G*H; res2 checks
    d/dxi (xi^2 W2) = xi^(4-alpha) d/dxi (xi^(alpha-1) H).
    The grid should keep a margin of at least 2*step from 0 and from the
    matching point 1, where the piecewise evaluators kink; the measured
    residuals then shrink like step^2.
    """
    alpha = profile.alpha
    xi = np.asarray(xi_grid, dtype=float)
    h = step * np.maximum(xi, 1.0)

    fd_q = (eval_Q(profile, xi + h) - eval_Q(profile, xi - h)) / (2.0 * h)
    res1 = float(np.max(np.abs(fd_q - profile.G(xi) * profile.H(xi))))

    def t2(x):
        return x * x * eval_W2(profile, x)

    def u(x):
        return x ** (alpha - 1.0) * profile.H(x)

    lhs = (t2(xi + h) - t2(xi - h)) / (2.0 * h)
    rhs = xi ** (4.0 - alpha) * (u(xi + h) - u(xi - h)) / (2.0 * h)
    res2 = float(np.max(np.abs(lhs - rhs)))
    return res1, res2
