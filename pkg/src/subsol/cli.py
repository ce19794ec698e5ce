"""Command-line surface: verification, construction, sweeps, curves, figures.

Subcommands
    verify       run the full check battery for one (alpha, b); exit 0/1/2
    construct    build a profile, emit profile + admissibility JSON
    figures N    data for figure 1 (energy curves), 2 (disc boundary) or
                 3 (growth rate c(alpha)^(1/alpha))
    sweep        walk the closed-form family in b, dual-computed rows
    energy       rate and energy-curve table for one alpha
    residuals    finite-difference residual battery + a field-sample dump
    point-vortex point-vortex limit table

Configuration comes from flags, optionally seeded by a flat key=value
file (--config); flags win.  The output directory defaults to the
SUBSOL_OUT_DIR environment variable, then ./out.  All emitted files are
deterministic: identical configuration gives byte-identical bytes.

Exit codes: 0 success / checks passed, 1 check failure, 2 domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields as dataclass_fields
from pathlib import Path

import numpy as np

from .energy import (
    dissipation_ansatz_b0,
    dissipation_rate_optimal,
    energy_curve,
    energy_report,
    growth_rate,
    horizon_T,
    point_vortex,
)
from .fields import Cutoff, polar_residual, write_field_csv
from .profiles import AnsatzProfile, make_ansatz_profile, profile_from_json, validate_alpha
from .search import ansatz_A, ansatz_B, maximize_c, sweep_b
from .series import (atomic_write_text, write_rows_csv, write_series_csv,
                     write_series_json, write_series_svg)
from .subsolution import TOL_COND1, check_conditions, eval_Q, eval_W2, eval_qs, residual_ss

_FIG_ALPHAS = [1.0 / 3.0, 2.0 / 3.0, 1.0, 4.0 / 3.0, 5.0 / 3.0]


@dataclass
class RunConfig:
    alpha: float = 1.0
    b: float = 0.0
    r0: float = 1.0
    e0: float = 1.0
    t_min: float = 0.01
    t_max: float | None = None
    steps: int = 200
    out: str | None = None
    format: str = "csv"
    tol_quad: float = 2.5e-13
    tol_fd: float = 1e-5
    beta: float = 1.0
    log_y: bool = False
    override_a: float | None = None
    from_json: str | None = None

    def out_dir(self):
        root = self.out or os.environ.get("SUBSOL_OUT_DIR") or "out"
        path = Path(root)
        path.mkdir(parents=True, exist_ok=True)
        return path


def _parse_config_file(path):
    values = {}
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"bad config line (expected key=value): {raw!r}")
        key, _, val = line.partition("=")
        values[key.strip().replace("-", "_")] = val.strip()
    return values


def _coerce(name, text):
    hints = {f.name: f.type for f in dataclass_fields(RunConfig)}
    hint = hints.get(name)
    if hint is None:
        raise ValueError(f"unknown config key: {name}")
    if hint == "bool":
        return text.lower() in ("1", "true", "yes", "on")
    if hint == "int":
        return int(text)
    if hint in ("str | None", "str"):
        return text
    return float(text)


def _merge_config(args):
    cfg = RunConfig()
    if getattr(args, "config", None):
        for key, text in _parse_config_file(args.config).items():
            setattr(cfg, key, _coerce(key, text))
    for f in dataclass_fields(RunConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            setattr(cfg, f.name, val)
    return cfg


def _build_profile(cfg):
    if cfg.from_json:
        return profile_from_json(json.loads(Path(cfg.from_json).read_text(encoding="utf-8")))
    validate_alpha(cfg.alpha)
    if cfg.override_a is not None:
        return AnsatzProfile(cfg.alpha, cfg.b, a_override=cfg.override_a)
    return make_ansatz_profile(cfg.alpha, cfg.b)


def _write_json(path, obj):
    atomic_write_text(path, json.dumps(obj, indent=2) + "\n")


# -- verify ---------------------------------------------------------------


def cmd_verify(cfg):
    profile = _build_profile(cfg)
    alpha = profile.alpha
    checks = []

    def add(name, value, threshold, passed=None):
        value = float(value)
        if passed is None:
            passed = value <= threshold
        checks.append({
            "name": name,
            "value": value,
            "threshold": threshold,
            "passed": bool(passed),
        })

    rep = check_conditions(profile, tol=cfg.tol_quad)
    add("cond1_residual", rep.cond1_residual, TOL_COND1)
    add("cond2_margin", rep.cond2_margin, 0.0, passed=rep.cond2_margin > 0.0)

    is_canonical_ansatz = isinstance(profile, AnsatzProfile) and cfg.override_a is None
    if is_canonical_ansatz:
        a_cf = ansatz_A(alpha, profile.b)
        b_cf = ansatz_B(alpha, profile.b)
        add("A_closed_form_rel", abs(rep.A - a_cf) / abs(a_cf), 1e-8)
        add("B_closed_form_rel", abs(rep.B - b_cf) / abs(b_cf), 1e-8)

    if rep.admissible:
        c_star, _ = maximize_c(rep.A, rep.B, alpha)
        add("c_opt_search_vs_formula", abs(c_star - rep.c_opt), 1e-8)
        if is_canonical_ansatz:
            rate_formula = dissipation_rate_optimal(
                ansatz_A(alpha, profile.b), ansatz_B(alpha, profile.b), alpha, 1.0)
            if profile.b == 0.0:
                rate_b0 = dissipation_ansatz_b0(alpha, 1.0)
                add("dissipation_identity_rel",
                    abs(rate_b0 - rate_formula) / abs(rate_formula), 1e-10)

    add("W2_at_one", abs(eval_W2(profile, 1.0)), TOL_COND1)
    add("Q_continuity_at_one",
        abs(eval_Q(profile, 1.0 - 1e-9) - eval_qs(alpha, 1.0)), 1e-8)

    grid = np.linspace(0.05, 0.95, 37)
    res1, res2 = residual_ss(profile, grid)
    add("residual_dQ_eq_GH", res1, cfg.tol_fd)
    add("residual_stress_transport", res2, cfg.tol_fd)

    if rep.admissible:
        c = rep.c_opt
        r_grid = np.linspace(0.05, 0.9, 20) * (c * 1.0) ** (1.0 / alpha)
        res_q, res_h = polar_residual(alpha, c, 1.0, r_grid)
        add("polar_residual_pressure", res_q, cfg.tol_fd)
        add("polar_residual_stress", res_h, cfg.tol_fd)

    passed = all(c["passed"] for c in checks)
    report = {
        "alpha": alpha,
        "b": getattr(profile, "b", None),
        "kind": profile.kind,
        "admissibility": rep.to_json(),
        "checks": checks,
        "passed": passed,
    }
    text = json.dumps(report, indent=2)
    print(text)
    if cfg.out:
        _write_json(cfg.out_dir() / "verify_report.json", report)
    return 0 if passed else 1


# -- construct ------------------------------------------------------------


def cmd_construct(cfg):
    profile = _build_profile(cfg)
    out = cfg.out_dir()
    rep = check_conditions(profile, tol=cfg.tol_quad)
    _write_json(out / "profile.json", profile.to_json())
    _write_json(out / "admissibility.json", rep.to_json())
    print(f"wrote {out / 'profile.json'}")
    print(f"wrote {out / 'admissibility.json'}")
    print(f"admissible: {rep.admissible}")
    return 0


# -- figures --------------------------------------------------------------


def _emit(cfg, stem, x_name, series_list, title):
    out = cfg.out_dir()
    if cfg.format == "csv":
        path = out / f"{stem}.csv"
        write_series_csv(path, x_name, series_list)
    elif cfg.format == "json":
        path = out / f"{stem}.json"
        write_series_json(path, x_name, series_list)
    elif cfg.format == "svg":
        path = out / f"{stem}.svg"
        write_series_svg(path, x_name, series_list, log_y=cfg.log_y, title=title)
    else:
        raise ValueError(f"unknown format: {cfg.format!r}")
    print(f"wrote {path}")
    return 0


def cmd_figures(which, cfg):
    from .series import FigureSeries

    if which == 1:
        t_hi = cfg.t_max if cfg.t_max is not None else min(
            horizon_T(a, cfg.r0) for a in _FIG_ALPHAS)
        t = np.linspace(cfg.t_min, t_hi, cfg.steps)
        series = [energy_curve(a, cfg.r0, cfg.e0, t) for a in _FIG_ALPHAS]
        return _emit(cfg, "figure1_energy", "t", series, "truncated energy")
    if which == 2:
        t_hi = cfg.t_max if cfg.t_max is not None else max(
            horizon_T(a, cfg.r0) for a in _FIG_ALPHAS)
        t = np.linspace(cfg.t_min, t_hi, cfg.steps)
        series = [
            FigureSeries(
                label=f"alpha={a:.17g}",
                x=t,
                y=(growth_rate(a) * t) ** (1.0 / a),
                meta={"alpha": a, "c": growth_rate(a), "formula": "disc-boundary"},
            )
            for a in _FIG_ALPHAS
        ]
        return _emit(cfg, "figure2_boundary", "t", series, "turbulent-disc boundary")
    if which == 3:
        alphas = np.linspace(0.01, 1.99, 199)
        series = [FigureSeries(
            label="c^(1/alpha)",
            x=alphas,
            y=np.array([growth_rate(a) ** (1.0 / a) for a in alphas]),
            meta={"formula": "growth-rate"},
        )]
        return _emit(cfg, "figure3_growth", "alpha", series, "growth rate")
    raise ValueError("figure number must be 1, 2 or 3")


# -- sweep ----------------------------------------------------------------


def cmd_sweep(cfg):
    validate_alpha(cfg.alpha)
    result = sweep_b(cfg.alpha, np.linspace(0.0, 10.0, 201), quad_check=True,
                     quad_tol=max(cfg.tol_quad, 1e-12))
    rows = []
    for r in result.rows:
        rows.append([
            r.b, r.a, r.A, r.B, r.cond2_margin, r.c_opt,
            "" if r.prefactor is None else r.prefactor,
            "1" if r.admissible else "0",
        ])
    path = cfg.out_dir() / "sweep.csv"
    write_rows_csv(path, ["b", "a", "A", "B", "cond2_margin", "c_opt",
                          "prefactor", "admissible"], rows)
    worst = max(r.quad_delta for r in result.rows)
    print(f"wrote {path}")
    print(f"best_b: {result.best_b:.17g}")
    print(f"best_prefactor: {result.best_prefactor:.17g}")
    print(f"max_closed_form_vs_quadrature: {worst:.3e}")
    return 0 if worst < 1e-8 else 1


# -- energy ---------------------------------------------------------------


def cmd_energy(cfg):
    rep = energy_report(cfg.alpha, cfg.r0)
    t_hi = cfg.t_max if cfg.t_max is not None else rep.T
    t = np.linspace(cfg.t_min, t_hi, cfg.steps)
    curve = energy_curve(cfg.alpha, cfg.r0, cfg.e0, t)
    rows = [[tv, dissipation_ansatz_b0(cfg.alpha, tv), ev]
            for tv, ev in zip(t, curve.y)]
    out = cfg.out_dir()
    write_rows_csv(out / "energy.csv", ["t", "rate", "energy"], rows)
    meta = rep.to_json()
    meta["E0"] = cfg.e0
    _write_json(out / "energy_meta.json", meta)
    print(f"wrote {out / 'energy.csv'}")
    print(f"wrote {out / 'energy_meta.json'}")
    return 0


# -- residuals ------------------------------------------------------------


def cmd_residuals(cfg):
    profile = _build_profile(cfg)
    alpha = profile.alpha
    c = growth_rate(alpha)
    step = 1e-4
    rows = []

    grid = np.linspace(0.05, 0.95, 37)
    for s in (step, step / 2.0):
        r1, r2 = residual_ss(profile, grid, step=s)
        rows.append(["self_similar_dQ", s, r1, cfg.tol_fd, "1" if r1 <= cfg.tol_fd else "0"])
        rows.append(["self_similar_stress", s, r2, cfg.tol_fd, "1" if r2 <= cfg.tol_fd else "0"])

    r_grid = np.linspace(0.05, 0.9, 20) * c ** (1.0 / alpha)
    for s in (step, step / 2.0):
        rq, rh = polar_residual(alpha, c, 1.0, r_grid, step=s)
        rows.append(["polar_pressure", s, rq, cfg.tol_fd, "1" if rq <= cfg.tol_fd else "0"])
        rows.append(["polar_stress", s, rh, cfg.tol_fd, "1" if rh <= cfg.tol_fd else "0"])

    out = cfg.out_dir()
    path = out / "residuals.csv"
    write_rows_csv(path, ["check", "step", "value", "threshold", "passed"], rows)
    print(f"wrote {path}")

    cutoff = Cutoff(cfg.r0)
    radius = 0.8 * min(cfg.r0, c ** (1.0 / alpha))
    points = [(radius * math.cos(th), radius * math.sin(th))
              for th in np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False)]
    write_field_csv(out / "fields_sample.csv", alpha, c, cutoff, [1.0], points)
    print(f"wrote {out / 'fields_sample.csv'}")
    return 0


# -- point vortex ---------------------------------------------------------


def cmd_point_vortex(cfg):
    t = np.linspace(max(cfg.t_min, 0.1), cfg.t_max if cfg.t_max is not None else 4.0,
                    cfg.steps)
    rate, energy, radius = point_vortex(cfg.beta, t, cfg.e0)
    rows = [[tv, rv, ev, bv] for tv, rv, ev, bv in zip(t, rate, energy, radius)]
    path = cfg.out_dir() / "point_vortex.csv"
    write_rows_csv(path, ["t", "rate", "energy", "boundary_radius"], rows)
    print(f"wrote {path}")
    return 0


# -- argument plumbing ----------------------------------------------------


def _add_common(sub):
    sub.add_argument("--config", help="flat key=value config file; flags override")
    sub.add_argument("--alpha", type=float)
    sub.add_argument("--b", type=float)
    sub.add_argument("--r0", type=float)
    sub.add_argument("--e0", type=float)
    sub.add_argument("--t-min", dest="t_min", type=float)
    sub.add_argument("--t-max", dest="t_max", type=float)
    sub.add_argument("--steps", type=int)
    sub.add_argument("--out", help="output directory (default: $SUBSOL_OUT_DIR or ./out)")
    sub.add_argument("--format", choices=["csv", "json", "svg"])
    sub.add_argument("--tol-quad", dest="tol_quad", type=float)
    sub.add_argument("--tol-fd", dest="tol_fd", type=float)
    sub.add_argument("--beta", type=float)
    sub.add_argument("--log-y", dest="log_y", action="store_const", const=True)
    sub.add_argument("--override-a", dest="override_a", type=float,
                     help="diagnostic: bypass the mass normalization of a")
    sub.add_argument("--from-json", dest="from_json",
                     help="load the profile from a JSON file instead of (alpha, b)")


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="subsol",
        description="Self-similar admissible Euler subsolutions: "
                    "construction, verification and figure data.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("verify", "construct", "sweep", "energy", "residuals",
                 "point-vortex"):
        _add_common(subs.add_parser(name))
    fig = subs.add_parser("figures")
    fig.add_argument("which", type=int, choices=[1, 2, 3])
    _add_common(fig)

    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "construct":
            return cmd_construct(cfg)
        if args.command == "figures":
            return cmd_figures(args.which, cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg)
        if args.command == "energy":
            return cmd_energy(cfg)
        if args.command == "residuals":
            return cmd_residuals(cfg)
        if args.command == "point-vortex":
            return cmd_point_vortex(cfg)
        raise ValueError(f"unknown command {args.command!r}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
