"""Reproducible experiments behind the command line.

Each scenario declares its parameters with typed defaults and returns a
:class:`Table` whose first column is the independent variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import dirac, flow, quantization, wavepacket
from .core import ValidationError, make_constants


@dataclass
class Table:
    columns: list[str]
    rows: list[list]
    diagnostics: dict = field(default_factory=dict)

    def column(self, name):
        i = self.columns.index(name)
        return [r[i] for r in self.rows]


@dataclass(frozen=True)
class Scenario:
    name: str
    defaults: dict
    run: Callable[[dict], Table]
    #: scenarios that draw random numbers are only reproducible with a fixed seed
    uses_seed: bool = False
    help: str = ""


def _floats(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).split(",") if v.strip()]


def _packet(p):
    k = make_constants(p["units"])
    times = np.linspace(0.0, p["t_max"], p["steps"] + 1)
    rel = wavepacket.WavepacketParams.from_gamma(p["sigma"], p["m"], p["gamma"], k)
    rest = wavepacket.WavepacketParams.from_gamma(p["sigma"], p["m"], 1.0, k)
    w = wavepacket.width_series(rel, times, k, p["nodes"])
    w1 = wavepacket.width_series(rest, times, k, p["nodes"])
    ws = wavepacket.schrodinger_width(p["sigma"], p["m"], times, k)
    rows = [[t, a, b, c, a - p["sigma"], b - p["sigma"]] for t, a, b, c in zip(times, w, w1, ws)]
    return Table(
        ["t", "width_gamma", "width_gamma1", "width_schrodinger", "growth_gamma", "growth_gamma1"],
        rows,
        {"positive_energy": wavepacket.positive_energy(rel, k), "central_k": rel.k0},
    )


def _dirac(p):
    k = make_constants(p["units"])
    v = np.array([p["vx"], p["vy"], p["vz"]]) * k.c
    s = dirac.build_spinors(v, p["m"], k)
    report = dirac.verify_relation_table(s)
    rows = [[name, val.real, val.imag, expected, res] for name, val, expected, res in report.rows]
    diag = {"max_residual": report.max_residual, "gamma": s.gamma, "n": s.n}
    if p["n_random"] > 0:
        rng = np.random.default_rng(p["seed"])
        worst = 0.0
        for _ in range(p["n_random"]):
            direction = rng.normal(size=3)
            direction /= np.linalg.norm(direction)
            speed = 0.99 * k.c * rng.random() ** (1 / 3)
            worst = max(worst, dirac.verify_relation_table(dirac.build_spinors(speed * direction, p["m"], k)).max_residual)
        diag["random_max_residual"] = worst
    return Table(["relation", "value_re", "value_im", "expected", "residual"], rows, diag)


def _dispersion(p):
    k = make_constants(p["units"])
    rng = np.random.default_rng(p["seed"])
    ks = np.sort(rng.uniform(-p["k_max"], p["k_max"], p["n_k"]))
    rows = []
    for kk in ks:
        d = wavepacket.debroglie_check(kk, p["m"], k)
        rows.append([kk, float(d.u[0]), d.gamma, d.omega, d.E, d.dispersion_residual, d.energy_residual, d.momentum_residual])
    return Table(["k", "u", "gamma", "omega", "E", "dispersion_residual", "energy_residual", "momentum_residual"], rows)


def _harmonic(p):
    k = make_constants(p["units"])
    r = quantization.harmonic_levels(p["m"], p["omega"], p["x0"], p["n_max"], k, p["dt"])
    closed = quantization.harmonic_closed_form(p["omega"], range(p["n_max"] + 1), k)
    rows = [[n, lam, float(ref), cr] for (n, lam), ref, cr in zip(r.levels, closed, r.closure_residuals)]
    return Table(["n", "lambda", "lambda_closed_form", "closure_residual"], rows,
                 {"action_residual": r.action_residual, "period": r.period})


def _box(p):
    k = make_constants(p["units"])
    r = quantization.box_levels(p["l"], p["m"], p["n_max"], k)
    rows = [[n, lam, quantization.box_level_by_resonance(n, p["l"], p["m"], k)] for n, lam in r.levels]
    return Table(["n", "lambda", "lambda_resonance"], rows)


def _string(p):
    k = make_constants(p["units"])
    rows = []
    for ls in _floats(p["l_s"]):
        s = quantization.string_identities(ls, k)
        fr = s.frequency_ratios
        rows.append([ls, s.rho, s.m, s.mu0, s.T0, s.sigma1, s.omega_s, s.Omega, s.closure_residual,
                     s.resonance_ratio, fr["rho_c"], fr["two_rho_c"]])
    ratio = rows[0][-1] / rows[0][-2] if rows else float("nan")
    return Table(
        ["l_s", "rho", "m", "mu0", "T0", "sigma1", "omega_s", "Omega", "closure_residual",
         "resonance_ratio", "omega_ratio_rho_c", "omega_ratio_2rho_c"],
        rows,
        {"string_frequency_factor": ratio,
         "note": "omega_s = rho c gives omega_s/Omega = 1; omega_s = 2 rho c gives 2; both reported"},
    )


def period_return_error(omega: float, x0: float, dt: float) -> float:
    T = 2 * math.pi / omega
    traj = flow.integrate_batch(flow.harmonic_phase_field(omega), 0.0, [x0, 0.0], T, dt, record=False)
    return float(np.abs(traj.final_state - [x0, 0.0]).max())


def _flowtest(p):
    rows = []
    prev = None
    for dt in _floats(p["dts"]):
        err = period_return_error(p["omega"], p["x0"], dt)
        order = math.nan
        if prev is not None and err > 0 and prev[1] > 0:
            order = math.log(prev[1] / err) / math.log(prev[0] / dt)
        rows.append([dt, flow.step_count(2 * math.pi / p["omega"], dt), err, order])
        prev = (dt, err)
    return Table(["dt", "steps", "period_return_error", "observed_order"], rows)


_COMMON = {"units": "natural", "seed": 0}

SCENARIOS: dict[str, Scenario] = {
    s.name: s
    for s in [
        Scenario("packet", {"sigma": 1.0, "m": 1.0, "gamma": 5.0, "t_max": 10.0, "steps": 50, "nodes": 512, **_COMMON},
                 _packet, help="packet width vs time at central gamma and at gamma = 1"),
        Scenario("dirac", {"vx": 0.0, "vy": 0.0, "vz": 0.6, "m": 1.0, "n_random": 0, **_COMMON}, _dirac,
                 uses_seed=True, help="bilinear relation table for boosted spinors (velocities in units of c)"),
        Scenario("dispersion", {"n_k": 100, "k_max": 10.0, "m": 1.0, **_COMMON}, _dispersion, uses_seed=True,
                 help="dispersion and de Broglie residuals at random wavenumbers"),
        Scenario("harmonic", {"m": 1.0, "omega": 1.0, "x0": 1.0, "n_max": 10, "dt": 1e-3, **_COMMON}, _harmonic,
                 help="oscillator levels by phase closure over the integrated orbit"),
        Scenario("box", {"l": 1.0, "m": 1.0, "n_max": 10, **_COMMON}, _box, help="particle-in-a-box levels"),
        Scenario("string", {"l_s": "0.5,1,2", **_COMMON}, _string, help="open-string mass and tension identities"),
        Scenario("flowtest", {"omega": 2.0, "x0": 1.0, "dts": "1e-2,1e-3,1e-4", **_COMMON}, _flowtest,
                 help="RK4 period-return error vs step size on the oscillator"),
    ]
}


def resolve_params(scenario: Scenario, overrides: dict) -> dict:
    """Merge overrides onto defaults, coercing to the default's type; unknown keys are rejected."""
    params = dict(scenario.defaults)
    for key, value in overrides.items():
        key = key.replace("-", "_")
        if key not in params:
            raise ValidationError(f"unknown parameter {key!r} for scenario {scenario.name!r}")
        params[key] = _coerce(key, value, scenario.defaults[key])
    return params


def _coerce(key, value, default):
    try:
        if isinstance(default, bool):
            if isinstance(value, str):
                if value.lower() not in ("true", "false", "1", "0"):
                    raise ValueError(value)
                return value.lower() in ("true", "1")
            return bool(value)
        if isinstance(default, int):
            f = float(value)
            if f != int(f):
                raise ValueError(value)
            return int(f)
        if isinstance(default, float):
            f = float(value)
            if not math.isfinite(f):
                raise ValueError(value)
            return f
        if isinstance(value, (list, tuple)):
            return ",".join(repr(float(v)) for v in value)
        return str(value)
    except (TypeError, ValueError):
        raise ValidationError(f"bad value {value!r} for parameter {key!r}") from None
