"""Optimization layer: the growth-rate maximizer, the b-sweep, and convex mixing.

The dissipation-rate magnitude at growth constant c is

    F(c) = (2*pi/alpha) * c^gamma * (A - gamma*B*c),   gamma = 2(2-alpha)/alpha,

positive and unimodal on (0, alpha*A/(2(2-alpha)B)) with an interior
maximum at c = alpha*A/((4-alpha)B).  F is strictly concave on the whole
window only for alpha >= 4/3; for smaller alpha it is convex near 0 and
concave from c = A(gamma-1)/(gamma(gamma+1)B) onward, an interval that
always contains the maximizer (see `concavity_interval`).

The sweep walks the closed-form family in b, evaluating every row both
from the closed forms and by quadrature, and reports the admissible row
with the largest dissipation prefactor.  Within this family the prefactor
is strictly decreasing in b (A falls and B grows), so the argmax sits at
the smallest admissible b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .profiles import CombinationProfile, ansatz_a, make_ansatz_profile, validate_alpha
from .subsolution import check_conditions

__all__ = [
    "BracketError",
    "SweepResult",
    "SweepRow",
    "ansatz_A",
    "ansatz_B",
    "ansatz_c_opt",
    "ansatz_f",
    "ansatz_prefactor",
    "concavity_interval",
    "convex_combine",
    "dissipation_functional",
    "maximize_c",
    "sweep_b",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class BracketError(RuntimeError):
    """The functional is not positive/unimodal on the bracket (corrupt A or B)."""


def dissipation_functional(A, B, alpha, c):
    """F(c), the magnitude of the dissipation rate at t = 1 for constant c."""
    gamma = 2.0 * (2.0 - alpha) / alpha
    return (2.0 * math.pi / alpha) * c**gamma * (A - gamma * B * c)


def concavity_interval(A, B, alpha):
    """Sub-window (c_lo, c_max) of admissible c on which F is strictly concave."""
    alpha = validate_alpha(alpha)
    gamma = 2.0 * (2.0 - alpha) / alpha
    c_max = alpha * A / (2.0 * (2.0 - alpha) * B)
    c_lo = A * (gamma - 1.0) / (gamma * (gamma + 1.0) * B) if gamma > 1.0 else 0.0
    return c_lo, c_max


def maximize_c(A, B, alpha):
    """Locate the maximizer of F on (0, c_max_bound) numerically.

    Golden-section search narrows the bracket, then a parabolic vertex
    step polishes the result below the flat-top noise floor of the
    section search.  Returns (c_star, F_star).
    """
    alpha = validate_alpha(alpha)
    if not (A > 0.0 and B > 0.0 and math.isfinite(A) and math.isfinite(B)):
        raise BracketError("A and B must be finite and positive")
    lo = 0.0
    hi = alpha * A / (2.0 * (2.0 - alpha) * B)

    def f(c):
        return dissipation_functional(A, B, alpha, c)

    c1 = hi - _INV_PHI * (hi - lo)
    c2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(c1), f(c2)
    if not (f1 > 0.0 and f2 > 0.0):
        raise BracketError("F is not positive inside the bracket; A or B corrupt")
    while hi - lo > 1e-10 * max(1.0, hi):
        if f1 < f2:
            lo, c1, f1 = c1, c2, f2
            c2 = lo + _INV_PHI * (hi - lo)
            f2 = f(c2)
        else:
            hi, c2, f2 = c2, c1, f1
            c1 = hi - _INV_PHI * (hi - lo)
            f1 = f(c1)
    c_star = 0.5 * (lo + hi)
    for _ in range(2):
        s = 3e-5 * c_star
        fm, f0, fp = f(c_star - s), f(c_star), f(c_star + s)
        denom = fm - 2.0 * f0 + fp
        if denom < 0.0:
            c_star += 0.5 * s * (fm - fp) / denom
    return c_star, f(c_star)


# -- closed forms of the log-corrected family ----------------------------


def ansatz_f(alpha, b):
    """Energy moment of the family: int_0^1 xi H^2 = (1 + (1 + a/(2+b))^2) / (4(2+b))."""
    a = ansatz_a(alpha, b)
    m = 2.0 + b
    return (1.0 + (1.0 + a / m) ** 2) / (4.0 * m)


def ansatz_A(alpha, b):
    return 0.5 - (2.0 - alpha) * ansatz_f(alpha, b)


def ansatz_B(alpha, b):
    return (b + alpha) ** 2 / ((4.0 - alpha) * (4.0 + b) ** 2)


def ansatz_c_opt(alpha, b):
    return alpha * ansatz_A(alpha, b) / ((4.0 - alpha) * ansatz_B(alpha, b))


def ansatz_prefactor(alpha, b):
    """Dissipation prefactor 2*pi*(A/(4-alpha))^((4-alpha)/alpha)*(alpha/B)^(2(2-alpha)/alpha).

    None when the row is inadmissible (A <= 0).
    """
    A = ansatz_A(alpha, b)
    B = ansatz_B(alpha, b)
    if A <= 0.0:
        return None
    log_pref = ((4.0 - alpha) / alpha * math.log(A / (4.0 - alpha))
                + 2.0 * (2.0 - alpha) / alpha * math.log(alpha / B))
    return 2.0 * math.pi * math.exp(log_pref)


@dataclass(frozen=True)
class SweepRow:
    b: float
    a: float
    A: float
    B: float
    cond2_margin: float
    c_opt: float
    prefactor: float | None
    admissible: bool
    quad_delta: float | None  # max |closed form - quadrature| over A and B


@dataclass(frozen=True)
class SweepResult:
    rows: list
    best_b: float
    best_prefactor: float


def sweep_b(alpha, b_grid, quad_check=True, quad_tol=1e-10):
    """Walk the family in b; dual-compute A and B; report the best admissible row.

    Each row carries the closed-form quantities plus, when quad_check is
    on, the worst disagreement with the quadrature route (flagging
    anything above 1e-8 is left to the caller).  Ties in the argmax go to
    the smaller b; an interior discrete argmax is polished by a
    golden-section pass on the closed-form prefactor.
    """
    alpha = validate_alpha(alpha)
    b_grid = np.asarray(b_grid, dtype=float)
    if np.any(b_grid < 0.0) or np.any(b_grid > 10.0):
        raise ValueError("b_grid must lie in [0, 10]")
    rows = []
    for b in b_grid:
        b = float(b)
        A = ansatz_A(alpha, b)
        B = ansatz_B(alpha, b)
        margin = 2.0 * A
        quad_delta = None
        if quad_check:
            rep = check_conditions(make_ansatz_profile(alpha, b), tol=quad_tol)
            quad_delta = max(abs(rep.A - A), abs(rep.B - B))
        rows.append(SweepRow(
            b=b,
            a=ansatz_a(alpha, b),
            A=A,
            B=B,
            cond2_margin=margin,
            c_opt=alpha * A / ((4.0 - alpha) * B),
            prefactor=ansatz_prefactor(alpha, b),
            admissible=margin > 0.0,
            quad_delta=quad_delta,
        ))
    best_idx = None
    for i, row in enumerate(rows):
        if not row.admissible:
            continue
        if best_idx is None or row.prefactor > rows[best_idx].prefactor:
            best_idx = i
    if best_idx is None:
        raise ValueError("no admissible row in the sweep grid")
    best_b = rows[best_idx].b
    best_pref = rows[best_idx].prefactor
    if 0 < best_idx < len(rows) - 1 and rows[best_idx + 1].admissible:
        lo, hi = rows[best_idx - 1].b, rows[best_idx + 1].b
        b1 = hi - _INV_PHI * (hi - lo)
        b2 = lo + _INV_PHI * (hi - lo)
        p1, p2 = ansatz_prefactor(alpha, b1), ansatz_prefactor(alpha, b2)
        while hi - lo > 1e-10:
            if p1 < p2:
                lo, b1, p1 = b1, b2, p2
                b2 = lo + _INV_PHI * (hi - lo)
                p2 = ansatz_prefactor(alpha, b2)
            else:
                hi, b2, p2 = b2, b1, p1
                b1 = hi - _INV_PHI * (hi - lo)
                p1 = ansatz_prefactor(alpha, b1)
        best_b = 0.5 * (lo + hi)
        best_pref = ansatz_prefactor(alpha, best_b)
    return SweepResult(rows=rows, best_b=best_b, best_prefactor=best_pref)


def convex_combine(p1, p2, lam):
    """Pointwise mix lam*H1 + (1-lam)*H2 of two same-alpha profiles.

    Both admissibility conditions are convex, so mixing two profiles that
    satisfy them yields another one (condition 1 by linearity, condition 2
    by convexity of H -> int xi H^2); callers are expected to hand in
    profiles that pass check_conditions.
    """
    return CombinationProfile(p1, p2, lam)
