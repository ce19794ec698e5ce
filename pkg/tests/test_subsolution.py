"""Tests for the admissibility conditions, A/B functionals, W2, Q and residuals."""

import math

import numpy as np
import pytest

from subsol.profiles import AnsatzProfile, TabulatedProfile, make_ansatz_profile
from subsol.quadrature import integrate
from subsol.subsolution import (
    AdmissibilityReport,
    TOL_COND1,
    c_range_and_optimal,
    check_conditions,
    compute_A,
    compute_B,
    eval_Q,
    eval_W2,
    eval_qs,
    residual_ss,
    _signed_B_integrand,
)

from helpers import simpson, simpson_log

ALPHA_GRID = np.arange(0.2, 1.81, 0.2)


# -- conditions -----------------------------------------------------------

def test_check_conditions_reference_profile():
    rep = check_conditions(make_ansatz_profile(1.0, 0.0))
    assert rep.cond1_residual < 1e-10
    # 1 - 2 * 17/36 = 1/18
    assert abs(rep.cond2_margin - 1.0 / 18.0) < 1e-9
    assert rep.admissible
    assert abs(rep.cond2_margin - 2.0 * rep.A) < 1e-14


def test_condition1_holds_across_family():
    for alpha in ALPHA_GRID:
        for b in (0.0, 0.5, 1.0):
            rep = check_conditions(make_ansatz_profile(alpha, b))
            assert rep.cond1_residual <= 1e-10


def test_imposter_profile_rejected():
    # H(xi) = xi with alpha = 1: (4-1) * 1/4 - 1 = -1/4
    xi = np.linspace(0.0, 1.0, 256)
    rep = check_conditions(TabulatedProfile(1.0, xi, xi))
    assert abs(rep.cond1_residual - 0.25) < 1e-6
    assert not rep.admissible


# -- A and B --------------------------------------------------------------

def test_compute_A_values():
    assert abs(compute_A(make_ansatz_profile(1.0, 0.0)) - 1.0 / 36.0) < 1e-10
    # alpha^3 / (4 (4-alpha)^2) at alpha = 4/3
    assert abs(compute_A(make_ansatz_profile(4.0 / 3.0, 0.0)) - 1.0 / 12.0) < 1e-10


def test_compute_B_values():
    assert abs(compute_B(make_ansatz_profile(1.0, 0.0)) - 1.0 / 48.0) < 1e-10
    assert abs(compute_B(make_ansatz_profile(4.0 / 3.0, 0.0)) - 1.0 / 24.0) < 1e-10


def test_closed_form_agreement_across_grid():
    """A and B against their b = 0 closed forms on the alpha grid."""
    for alpha in ALPHA_GRID:
        p = make_ansatz_profile(alpha, 0.0)
        assert abs(compute_A(p) - alpha**3 / (4.0 * (4.0 - alpha) ** 2)) < 1e-8
        assert abs(compute_B(p) - alpha**2 / (16.0 * (4.0 - alpha))) < 1e-8


@pytest.mark.parametrize("b", [0.5, 1.0, 2.0])
def test_compute_B_general_b(b):
    # |xi^2 H - .../xi| collapses to ((b+alpha)^2/(4-alpha)) xi^(3+b) |log xi|
    for alpha in (0.6, 1.0, 1.5):
        p = make_ansatz_profile(alpha, b)
        expected = (b + alpha) ** 2 / ((4.0 - alpha) * (4.0 + b) ** 2)
        assert abs(compute_B(p) - expected) < 1e-9


def test_B_sign_split_matches_direct_for_single_sign():
    # log(xi) <= 0 on (0, 1], so the family's integrand never changes sign
    p = make_ansatz_profile(1.0, 0.0)
    s = _signed_B_integrand(p)
    direct = integrate(lambda x: np.abs(s(x)), 0.0, 1.0, 1e-12).value
    assert abs(compute_B(p) - direct) < 1e-10


def test_B_with_interior_sign_change_vs_simpson():
    """Perturbing a moves the sign change inside (0, 1); split vs oracle."""
    pert = AnsatzProfile(1.0, 0.0, a_override=4.0 / 3.0 + 0.1)
    s = _signed_B_integrand(pert)
    xs = np.linspace(1e-6, 1.0, 100001)
    v = s(xs)
    (idx,) = np.where(v[:-1] * v[1:] < 0.0)
    assert len(idx) == 1
    i = idx[0]
    root = xs[i] + (xs[i + 1] - xs[i]) * v[i] / (v[i] - v[i + 1])
    oracle = (simpson_log(lambda x: np.abs(s(x)), hi=root)
              + simpson(lambda x: np.abs(s(x)), root, 1.0))
    assert abs(compute_B(pert) - oracle) < 1e-9


def test_signs_positive_for_admissible():
    for alpha in ALPHA_GRID:
        rep = check_conditions(make_ansatz_profile(alpha, 0.0))
        assert rep.A > 0.0 and rep.B > 0.0


# -- W2 -------------------------------------------------------------------

def test_W2_ansatz_closed_form():
    # divide xi^2 H - (4-a)/xi int = ((b+alpha)^2/(4-alpha)) xi^(3+b)|log xi| by xi
    p = make_ansatz_profile(1.0, 0.0)
    xi = math.exp(-1.0)
    assert abs(eval_W2(p, xi) - (1.0 / 3.0) * math.exp(-2.0)) < 1e-10


def test_W2_vanishes_at_one_and_beyond():
    for alpha in ALPHA_GRID:
        p = make_ansatz_profile(alpha, 0.0)
        assert abs(eval_W2(p, 1.0)) < 1e-9
        assert eval_W2(p, 2.0) == 0.0
        assert eval_W2(p, 1.0 + 1e-12) == 0.0


def test_W2_vanishes_at_origin():
    p = make_ansatz_profile(1.0, 0.0)
    assert abs(eval_W2(p, 1e-4)) < 1e-6
    assert eval_W2(p, 0.0) == 0.0


# -- pressure -------------------------------------------------------------

def test_qs_branches():
    assert abs(eval_qs(1.0, 2.0) - math.log(2.0)) < 1e-15
    assert eval_qs(1.0, 1.0) == 0.0
    # (2 - 1/2) / (2 * 1/2) * 1 = 3/2
    assert abs(eval_qs(0.5, 1.0) - 1.5) < 1e-15
    # logarithmic-limit branch engages within 1e-12 of alpha = 1
    assert eval_qs(1.0 + 1e-13, 2.0) == math.log(2.0)
    with pytest.raises(ValueError):
        eval_qs(1.0, 0.0)


def test_Q_at_matching_point_and_tail():
    p = make_ansatz_profile(1.0, 0.0)
    assert eval_Q(p, 1.0) == 0.0          # q_s(1) = log 1, empty integral
    assert abs(eval_Q(p, 2.0) - math.log(2.0)) < 1e-15


def test_Q_interior_closed_form():
    # antiderivative of G*H = xi (2/3 - 32/9 log xi + 32/9 log^2 xi):
    # P(z) = (19/9) z^2 - (32/9) z^2 log z + (16/9) z^2 log^2 z, Q = P(xi) - P(1)
    p = make_ansatz_profile(1.0, 0.0)
    ln2 = math.log(2.0)
    expected = -19.0 / 9.0 + 0.25 * (19.0 / 9.0 + (32.0 / 9.0) * ln2
                                     + (16.0 / 9.0) * ln2**2)
    assert abs(eval_Q(p, 0.5) - expected) < 1e-9


def test_Q_continuity_at_one():
    for alpha in (0.5, 1.0, 1.5):
        p = make_ansatz_profile(alpha, 0.0)
        qs1 = eval_qs(alpha, 1.0)
        gap = abs(eval_Q(p, 1.0 - 1e-9) - qs1)
        assert gap < 1e-8
        # slope bounded by sup |G H| near 1
        bound = abs(p.G(1.0) * p.H(1.0)) * 2e-6
        assert abs(eval_Q(p, 1.0 - 1e-6) - qs1) < bound + 1e-12


# -- growth rate ----------------------------------------------------------

def test_c_range_and_optimal_reference():
    rep = check_conditions(make_ansatz_profile(1.0, 0.0))
    c_max, c_opt = c_range_and_optimal(rep, 1.0)
    assert abs(c_opt - 4.0 / 9.0) < 1e-10
    assert abs(c_max - 2.0 / 3.0) < 1e-10
    assert 0.0 < c_opt < c_max


def test_c_identity_across_grid():
    """Quadrature c_opt against (2 alpha/(4-alpha))^2, absolute 1e-10."""
    for alpha in ALPHA_GRID:
        rep = check_conditions(make_ansatz_profile(alpha, 0.0))
        assert abs(rep.c_opt - (2.0 * alpha / (4.0 - alpha)) ** 2) < 1e-10


def test_c_range_requires_positive_functionals():
    bad = AdmissibilityReport(alpha=1.0, b=0.0, cond1_residual=0.0,
                              cond2_margin=-0.1, A=-0.05, B=0.02,
                              c_max_bound=math.nan, c_opt=math.nan)
    with pytest.raises(ValueError):
        c_range_and_optimal(bad, 1.0)


def test_report_serialization_fields():
    rep = check_conditions(make_ansatz_profile(1.0, 0.0))
    obj = rep.to_json()
    assert list(obj) == ["cond1_residual", "cond2_margin", "A", "B",
                         "c_max_bound", "c_opt", "alpha", "b"]


# -- residuals ------------------------------------------------------------

def test_residuals_small_on_interior_grid():
    p = make_ansatz_profile(1.0, 0.0)
    grid = np.linspace(0.05, 0.95, 37)
    res1, res2 = residual_ss(p, grid)
    assert res1 <= 1e-6
    assert res2 <= 1e-6


def test_residuals_second_order():
    p = make_ansatz_profile(1.0, 0.0)
    grid = np.linspace(0.05, 0.95, 37)
    r1, r2 = residual_ss(p, grid, step=1e-4)
    r1h, r2h = residual_ss(p, grid, step=5e-5)
    assert 3.4 < r1 / r1h < 4.7
    assert 3.4 < r2 / r2h < 4.7


def test_residual_detects_broken_normalization():
    """With a perturbed, W2 no longer vanishes at 1; the jump shows up."""
    pert = AnsatzProfile(1.0, 0.0, a_override=4.0 / 3.0 + 0.1)
    _, res2 = residual_ss(pert, np.array([1.0 - 5e-5]), step=1e-4)
    assert res2 > 1e-3
