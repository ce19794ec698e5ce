"""Physical-space evaluation of the subsolution (v, sigma, q, e) and its checks.

The scaling map sends a radius r at time t to xi = r/(c t)^(1/alpha) and

    h  = (c t)^((1-alpha)/alpha) * H(xi)
    w2 = -(c/alpha) * (c t)^(2(1-alpha)/alpha) * W2(xi)
    q  = (c t)^(2(1-alpha)/alpha) * Q(xi)

with the b = 0 interior profile.  The velocity is h * i * e^(i*theta)
(pure rotation), the traceless stress is -(w1 + i*w2) * e^(2i*theta) with
w1 = h^2/2, and the energy density is |v|^2/2 plus the largest eigenvalue
of the residual stress, which for a traceless symmetric 2x2 matrix is
just the complex modulus.  Outside the disc r <= (c t)^(1/alpha) the
stress residual vanishes and the triple is an exact steady solution.

A cutoff chi (quintic smoothstep, identically 1 on [0, r0], 0 beyond
2*r0) truncates the velocity so the total energy is finite.  Evaluation
refuses t beyond the horizon T = r0^alpha / c: past it the growing disc
overlaps the cutoff transition and the scaling map no longer describes
the truncated fields.

Everything here is pure; the per-alpha profile machinery is memoized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .profiles import make_ansatz_profile, validate_alpha
from .quadrature import integrate
from .series import write_rows_csv
from .subsolution import eval_Q, eval_W2

__all__ = [
    "Cutoff",
    "FieldSample",
    "biot_savart_radial",
    "cutoff_chi",
    "eval_fields",
    "field_rows",
    "lambda_max_traceless",
    "polar_residual",
    "self_similar_map",
    "write_field_csv",
]


@dataclass(frozen=True)
class Cutoff:
    """Smooth radial cutoff: 1 on [0, r0], 0 beyond 2*r0, C^2 in between."""

    r0: float

    def __post_init__(self):
        if not self.r0 > 0.0:
            raise ValueError("r0 must be > 0")

    def chi(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        if np.any(r < 0.0):
            raise ValueError("r must be >= 0")
        u = np.clip((r - self.r0) / self.r0, 0.0, 1.0)
        out = 1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)
        return float(out[0]) if scalar else out


def cutoff_chi(cut, r):
    """Evaluate a Cutoff at radius r (functional spelling of Cutoff.chi)."""
    return cut.chi(r)


def lambda_max_traceless(z1, z2):
    """Largest eigenvalue of [[z1, z2], [z2, -z1]], i.e. sqrt(z1^2 + z2^2)."""
    return np.hypot(z1, z2)


@lru_cache(maxsize=64)
def _profile(alpha):
    return make_ansatz_profile(alpha, 0.0)


def self_similar_map(alpha, c, t, r):
    """Scale (t, r) into self-similar variables: returns (xi, h, w2, q)."""
    alpha = validate_alpha(alpha)
    if not (c > 0.0 and t > 0.0):
        raise ValueError("c and t must be > 0")
    r = np.asarray(r, dtype=float)
    if np.any(r < 0.0):
        raise ValueError("r must be >= 0")
    p = _profile(alpha)
    ct = c * t
    xi = r / ct ** (1.0 / alpha)
    s1 = ct ** ((1.0 - alpha) / alpha)
    s2 = ct ** (2.0 * (1.0 - alpha) / alpha)
    h = s1 * p.H(xi)
    w2 = -(c / alpha) * s2 * eval_W2(p, xi)
    q = s2 * eval_Q(p, xi)
    return xi, h, w2, q


@dataclass(frozen=True)
class FieldSample:
    """Pointwise subsolution data: velocity, stress entries, pressure, energy."""

    v: np.ndarray        # (v1, v2)
    sigma: np.ndarray    # (sigma1, sigma2) encoding [[s1, s2], [s2, -s1]]
    q: float             # Bernoulli pressure (untruncated)
    e_bar: float         # energy density >= |v|^2 / 2


def eval_fields(alpha, c, cutoff, t, x):
    """Sample the truncated subsolution at time t and position x (2-vector).

    Velocity and stress use the truncated profile h*chi; the support of w2
    sits inside the disc r <= (c t)^(1/alpha) where chi = 1, so it needs no
    truncation of its own.  The pressure column is the untruncated
    Bernoulli pressure.  Raises for t beyond the horizon r0^alpha / c.
    """
    alpha = validate_alpha(alpha)
    T = cutoff.r0**alpha / c
    if t > T * (1.0 + 1e-12):
        raise ValueError(f"t = {t:g} exceeds the truncation horizon T = {T:.6g}")
    x = np.asarray(x, dtype=float)
    if x.shape != (2,):
        raise ValueError("x must be a 2-vector")
    r = math.hypot(x[0], x[1])
    _, h, w2, q = self_similar_map(alpha, c, t, r)
    if r == 0.0:
        # h -> 0 at the origin by H(0) = 0; fields vanish there
        return FieldSample(v=np.zeros(2), sigma=np.zeros(2), q=float(q), e_bar=0.0)
    theta = math.atan2(x[1], x[0])
    h_chi = float(h) * cutoff.chi(r)
    w1 = 0.5 * h_chi * h_chi
    v1 = -h_chi * math.sin(theta)
    v2 = h_chi * math.cos(theta)
    cos2t = math.cos(2.0 * theta)
    sin2t = math.sin(2.0 * theta)
    sigma1 = -(w1 * cos2t - w2 * sin2t)
    sigma2 = -(w1 * sin2t + w2 * cos2t)
    z1 = 0.5 * (v1 * v1 - v2 * v2) - sigma1
    z2 = v1 * v2 - sigma2
    e_bar = 0.5 * (v1 * v1 + v2 * v2) + float(lambda_max_traceless(z1, z2))
    return FieldSample(
        v=np.array([v1, v2]),
        sigma=np.array([float(sigma1), float(sigma2)]),
        q=float(q),
        e_bar=e_bar,
    )


def polar_residual(alpha, c, t, r_grid, step=1e-4):
    """Centered-difference residuals of the polar momentum balance.

    res_q checks r^2 dq/dr = d/dr (r^2 w1); res_h checks
    r^2 dh/dt = d/dr (r^2 w2).  The grid must stay inside the untruncated
    region 0 < r < min(r0, (c t)^(1/alpha)) with margin for the stencils;
    both residuals shrink like step^2.
    """
    alpha = validate_alpha(alpha)
    r = np.asarray(r_grid, dtype=float)
    hr = step * np.maximum(r, 1.0)
    ht = step * max(t, 1.0)

    def hw2q(tt, rr):
        _, h, w2, q = self_similar_map(alpha, c, tt, rr)
        return h, w2, q

    h_p, w2_p, q_p = hw2q(t, r + hr)
    h_m, w2_m, q_m = hw2q(t, r - hr)
    w1_p = 0.5 * h_p * h_p
    w1_m = 0.5 * h_m * h_m

    lhs_q = r * r * (q_p - q_m) / (2.0 * hr)
    rhs_q = ((r + hr) ** 2 * w1_p - (r - hr) ** 2 * w1_m) / (2.0 * hr)
    res_q = float(np.max(np.abs(lhs_q - rhs_q)))

    h_tp = hw2q(t + ht, r)[0]
    h_tm = hw2q(t - ht, r)[0]
    lhs_h = r * r * (h_tp - h_tm) / (2.0 * ht)
    rhs_h = ((r + hr) ** 2 * w2_p - (r - hr) ** 2 * w2_m) / (2.0 * hr)
    res_h = float(np.max(np.abs(lhs_h - rhs_h)))
    return res_q, res_h


def biot_savart_radial(g, r, tol=1e-11):
    """Recover the rotational velocity h(r) = (1/r) int_0^r s g(s) ds.

    Inverts d/dr (r h) = r g for a radially symmetric vorticity profile g
    (vectorized callable, integrable against s ds near 0).
    """
    r = float(r)
    if not r > 0.0:
        raise ValueError("r must be > 0")
    return integrate(lambda s: s * g(s), 0.0, r, tol).value / r


_FIELD_HEADER = ["t", "x1", "x2", "v1", "v2", "sigma1", "sigma2", "q", "e_bar"]


def field_rows(alpha, c, cutoff, t_values, points):
    """Tabulate samples on a (t, point) product grid as flat CSV rows."""
    rows = []
    for t in t_values:
        for x in points:
            s = eval_fields(alpha, c, cutoff, t, x)
            rows.append([
                float(t), float(x[0]), float(x[1]),
                float(s.v[0]), float(s.v[1]),
                float(s.sigma[0]), float(s.sigma[1]),
                s.q, s.e_bar,
            ])
    return rows


def write_field_csv(path, alpha, c, cutoff, t_values, points):
    """Dump field samples with columns t,x1,x2,v1,v2,sigma1,sigma2,q,e_bar."""
    write_rows_csv(path, _FIELD_HEADER, field_rows(alpha, c, cutoff, t_values, points))
