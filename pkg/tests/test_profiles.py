"""Tests for the profile family: boundary values, derivatives, vorticity."""

import math

import numpy as np
import pytest

from subsol.profiles import (
    AnsatzParams,
    AnsatzProfile,
    CombinationProfile,
    TabulatedProfile,
    ansatz_a,
    make_ansatz_profile,
    profile_from_json,
    validate_alpha,
)

ALPHAS = np.arange(0.1, 1.95, 0.2)


def test_ansatz_a_values():
    assert ansatz_a(1.0, 0.0) == 4.0 / 3.0
    # (4+1)(1+1)/(4-1) by direct substitution
    assert abs(ansatz_a(1.0, 1.0) - 10.0 / 3.0) < 1e-15


def test_ansatz_a_positive():
    for alpha in ALPHAS:
        for b in (0.0, 0.5, 1.0):
            assert ansatz_a(alpha, b) > 0.0


def test_ansatz_params_derives_a():
    params = AnsatzParams(alpha=1.0, b=1.0)
    assert abs(params.a - 10.0 / 3.0) < 1e-15
    with pytest.raises(ValueError):
        AnsatzParams(alpha=2.0, b=0.0)
    with pytest.raises(ValueError):
        AnsatzParams(alpha=1.0, b=-0.1)


def test_boundary_values_exact():
    for alpha in ALPHAS:
        for b in (0.0, 0.5, 1.0):
            p = make_ansatz_profile(alpha, b)
            assert p.H(0.0) == 0.0
            assert p.H(1.0) == 1.0   # log(1) = 0 makes this exact


def test_eval_H_interior_value():
    # (1 - a log(e^-1)) e^-(1) = (1 + 4/3)/e, exact arithmetic
    p = make_ansatz_profile(1.0, 0.0)
    assert abs(p.H(math.exp(-1.0)) - (7.0 / 3.0) * math.exp(-1.0)) < 1e-15


def test_eval_H_tail():
    assert make_ansatz_profile(0.5, 0.0).H(4.0) == 2.0


def test_H_continuous_at_matching_point():
    for alpha in ALPHAS:
        for b in (0.0, 1.0):
            p = make_ansatz_profile(alpha, b)
            eps = 1e-13
            assert abs(p.H(1.0 - eps) - p.H(1.0 + eps)) < 1e-12


def test_dH_tail_power_rule():
    assert make_ansatz_profile(0.5, 0.0).dH(4.0) == 0.25


def test_dH_one_sided_at_one():
    # product rule on (1 - a log xi) xi^(1+b) at xi = 1: (1+b) - a
    left, right = make_ansatz_profile(1.0, 0.0).dH_one_sided_at_one()
    assert abs(left + 1.0 / 3.0) < 1e-15
    assert right == 0.0
    left, _ = make_ansatz_profile(1.0, 1.0).dH_one_sided_at_one()
    assert abs(left + 4.0 / 3.0) < 1e-15


def test_dH_domain_errors():
    p = make_ansatz_profile(1.0, 0.0)
    with pytest.raises(ValueError):
        p.dH(0.0)
    with pytest.raises(ValueError):
        p.dH(1.0)
    with pytest.raises(ValueError):
        p.dH(-0.5)


def test_G_ansatz_interior_closed_form():
    # differentiate xi*H = (1 - a log xi) xi^2: G = 2 - a - 2 a log(xi)
    p = make_ansatz_profile(1.0, 0.0)
    a = 4.0 / 3.0
    for xi in (0.2, 0.5, 0.9, 1.0):
        assert abs(p.G(xi) - (2.0 - a - 2.0 * a * math.log(xi))) < 1e-12
    assert abs(p.G(1.0) - 2.0 / 3.0) < 1e-12


def test_G_tail():
    assert make_ansatz_profile(1.0, 0.0).G(2.0) == 0.5


def test_G_rigid_rotation_profile():
    xi = np.linspace(0.0, 1.0, 2001)
    rigid = TabulatedProfile(1.0, xi, xi)
    for x in (0.1, 0.35, 0.8):
        assert abs(rigid.G(x) - 2.0) < 1e-9


@pytest.mark.parametrize("b", [0.0, 0.5, 1.0])
def test_vorticity_consistency_fd(b):
    """|xi G - d/dxi(xi H)| < 1e-8 by centered differences, both branches."""
    p = make_ansatz_profile(0.7, b)
    grid = np.concatenate([np.linspace(0.05, 0.95, 10), np.linspace(1.1, 4.0, 10)])
    h = 1e-6 * np.maximum(grid, 1.0)
    fd = ((grid + h) * p.H(grid + h) - (grid - h) * p.H(grid - h)) / (2.0 * h)
    assert np.max(np.abs(grid * p.G(grid) - fd)) < 1e-8


def test_alpha_validation():
    for bad in (0.0, 2.0, -1.0, 2.5, float("nan")):
        with pytest.raises(ValueError, match="alpha out of range"):
            validate_alpha(bad)
    with pytest.raises(ValueError):
        make_ansatz_profile(1.0, -0.5)


def test_json_roundtrip_ansatz():
    p = make_ansatz_profile(0.8, 0.5)
    obj = p.to_json()
    assert obj == {"kind": "ansatz", "alpha": 0.8, "b": 0.5}
    q = profile_from_json(obj)
    for xi in (0.0, 0.3, 1.0, 2.5):
        assert q.H(xi) == p.H(xi)


def test_json_roundtrip_tabulated():
    xi = np.linspace(0.0, 1.0, 41)
    p = TabulatedProfile(1.2, xi, xi**1.5)
    q = profile_from_json(p.to_json())
    assert abs(q.H(0.37) - p.H(0.37)) < 1e-14


def test_json_rejects_override_and_unknown_kind():
    with pytest.raises(ValueError):
        AnsatzProfile(1.0, 0.0, a_override=1.5).to_json()
    with pytest.raises(ValueError):
        profile_from_json({"kind": "mystery", "alpha": 1.0})


def test_tabulated_boundary_enforced():
    xi = np.linspace(0.0, 1.0, 16)
    with pytest.raises(ValueError):
        TabulatedProfile(1.0, xi, xi + 0.1)
    # escape hatch for deliberate test profiles
    TabulatedProfile(1.0, xi, xi + 0.1, check_boundary=False)


def test_tabulated_tracks_ansatz():
    # monotone-cubic interpolation drops to O(h^2) near the interior
    # maximum of H, so the tracking tolerance is set accordingly
    src = make_ansatz_profile(1.0, 0.0)
    xi = np.concatenate([[0.0], np.geomspace(1e-6, 1.0, 2000)])
    tab = TabulatedProfile(1.0, xi, src.H(xi))
    probe = np.linspace(0.05, 0.95, 19)
    assert np.max(np.abs(tab.H(probe) - src.H(probe))) < 1e-5


def test_combination_identities():
    p1 = make_ansatz_profile(1.0, 0.0)
    p2 = make_ansatz_profile(1.0, 1.0)
    assert CombinationProfile(p1, p2, 0.0).H(0.4) == p2.H(0.4)
    assert CombinationProfile(p1, p1, 0.5).H(0.4) == p1.H(0.4)
    mix = CombinationProfile(p1, p2, 0.3)
    assert abs(mix.H(0.6) - (0.3 * p1.H(0.6) + 0.7 * p2.H(0.6))) < 1e-15


def test_combination_alpha_mismatch():
    with pytest.raises(ValueError):
        CombinationProfile(make_ansatz_profile(1.0, 0.0),
                           make_ansatz_profile(1.1, 0.0), 0.5)


def test_combination_serializes_as_tabulated():
    mix = CombinationProfile(make_ansatz_profile(1.0, 0.0),
                             make_ansatz_profile(1.0, 1.0), 0.25)
    obj = mix.to_json()
    assert obj["kind"] == "tabulated"
    rebuilt = profile_from_json(obj)
    assert abs(rebuilt.H(0.5) - mix.H(0.5)) < 1e-9
