"""Acceptance criteria, one test each.

Every test records a ``[PASS|FAIL] name: detail`` line which is printed in
the terminal summary; run ``pytest tests/test_acceptance.py -v`` to see them.
Where a scenario exists the numbers come from the command line runner.
"""

import csv
import json
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from rqte.cli import main
from rqte.core import ELECTRON_MASS, NATURAL, SI, SpacetimePoint, WavefunctionGrid, mass_from_wavenumber
from rqte.dirac import Branch, scalar_reduction_factor
from rqte.flow import constant_field, harmonic_drive_field, sine_field
from rqte.lagrangian import LagrangianSpec
from rqte.propagator import DivergenceWeight, PropagatorConfig, compose_check, evolve_grid, evolve_point, gaussian, grid_norm
from rqte.quantization import compton_wavelength
from rqte.wavepacket import WavepacketParams, schrodinger_width, width_series

START = time.perf_counter()


def record(name, ok, detail):
    ok = bool(ok)
    ACCEPTANCE_LINES.append((name, ok, detail))
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


def cli(tmp_path, *argv):
    """Run a scenario in-process; returns (header, float rows, manifest)."""
    name = argv[0]
    assert main([*map(str, argv), "--out", str(tmp_path)]) == 0
    with open(tmp_path / f"{name}.csv", newline="") as fh:
        header, *rows = list(csv.reader(fh))
    manifest = json.loads((tmp_path / f"{name}.manifest.json").read_text())
    return header, rows, manifest


def column(header, rows, name):
    i = header.index(name)
    return np.array([float(r[i]) for r in rows])


def test_ac01_dirac_bilinear_table(tmp_path):
    t0 = time.perf_counter()
    header, rows, man = cli(tmp_path / "rand", "dirac", "--vz", "0.6", "--n-random", "1000", "--seed", "1")
    elapsed = time.perf_counter() - t0
    random_max = man["diagnostics"]["random_max_residual"]
    h0, r0, _ = cli(tmp_path / "rest", "dirac", "--vz", "0")
    rest_max = column(h0, r0, "residual").max()
    ok = len(rows) == 24 and random_max < 1e-12 and rest_max < 1e-14 and elapsed < 1.0
    record("AC1 Dirac bilinear table", ok,
           f"24 rows, random max {random_max:.2e} (<1e-12), rest max {rest_max:.2e} (<1e-14), {elapsed:.2f}s (<1s)")


def test_ac02_dirac_reduction_matches_propagator():
    m = 1.0
    one = lambda x: np.ones(np.shape(x)[:-1], dtype=complex)
    worst = 0.0
    for branch in Branch:
        cfg = PropagatorConfig(constant_field([0.4]), LagrangianSpec.constant(-branch.energy_sign * m), NATURAL, dt=1e-2)
        for tau in np.linspace(0.0, 10.0, 11):
            got = evolve_point(cfg, one, SpacetimePoint(tau, 0.25), float(tau))
            worst = max(worst, abs(got - scalar_reduction_factor(branch, m, float(tau))))
    record("AC2 Dirac to transport reduction", worst < 1e-10, f"max |factor - propagator| {worst:.2e} over tau in [0, 10] (<1e-10)")


def test_ac03_harmonic_spectrum(tmp_path):
    t0 = time.perf_counter()
    worst_level = worst_action = 0.0
    for omega in (1, 2, 5):
        header, rows, man = cli(tmp_path / str(omega), "harmonic", "--omega", omega, "--n-max", 10)
        lam = column(header, rows, "lambda")
        n = column(header, rows, "n")
        worst_level = max(worst_level, np.abs(lam / (omega * (n + 0.5)) - 1).max())
        scale = 0.5 * omega**2 * 1.0 * man["diagnostics"]["period"]  # k x0^2 T / 2 with m = x0 = 1
        worst_action = max(worst_action, abs(man["diagnostics"]["action_residual"]) / scale)
    elapsed = time.perf_counter() - t0
    ok = worst_level < 1e-8 and worst_action < 1e-8 and elapsed < 5.0
    record("AC3 harmonic spectrum", ok,
           f"max rel level error {worst_level:.2e}, period action {worst_action:.2e} (both <1e-8), {elapsed:.2f}s (<5s)")


def test_ac04_box_spectrum(tmp_path):
    h1, r1, _ = cli(tmp_path / "l1", "box", "--l", 1)
    h2, r2, _ = cli(tmp_path / "l2", "box", "--l", 2, "--m", 3)
    n = column(h1, r1, "n")
    lam1, lam2 = column(h1, r1, "lambda"), column(h2, r2, "lambda")
    exact = np.array_equal(lam1, np.pi**2 * n**2 / 2)
    n2 = np.allclose(lam1 / n**2, lam1[0], rtol=1e-15, atol=0)
    inv_l2 = np.allclose(lam2 * 4 * 3, lam1, rtol=1e-15, atol=0)
    resonance = np.allclose(column(h1, r1, "lambda_resonance"), lam1, rtol=1e-12)
    ok = exact and n2 and inv_l2 and resonance and list(n) == list(range(1, 11))
    record("AC4 box spectrum", ok, f"closed form exact={exact}, n^2 scaling={n2}, 1/l^2 scaling={inv_l2}, n=1..10")


def test_ac05_dispersion_de_broglie(tmp_path):
    header, rows, _ = cli(tmp_path, "dispersion", "--n-k", 100, "--seed", 3)
    disp = np.abs(column(header, rows, "dispersion_residual")).max()
    energy = np.abs(column(header, rows, "energy_residual")).max()
    ok = len(rows) == 100 and disp < 1e-12 and energy < 1e-12
    record("AC5 dispersion and de Broglie", ok, f"100 k values, dispersion {disp:.2e}, E - m c^2 gamma {energy:.2e} (<1e-12)")


def test_ac06_schrodinger_limit(tmp_path):
    sigma, m = 1.0, 1.0
    times = np.linspace(0.0, 5 * sigma**2 * m, 26)
    p = WavepacketParams(sigma, m, relativistic=False)
    rel = np.abs(width_series(p, times) / schrodinger_width(sigma, m, times) - 1).max()
    header, rows, _ = cli(tmp_path, "packet", "--t-max", 5, "--steps", 5, "--gamma", 1, "--nodes", 256)
    table_ok = np.allclose(column(header, rows, "width_schrodinger"), schrodinger_width(sigma, m, column(header, rows, "t")),
                           rtol=1e-15)
    record("AC6 Schrodinger limit", rel < 1e-4 and table_ok, f"max rel width error {rel:.2e} over t in [0, 5] (<1e-4)")


def test_ac07_relativistic_suppression(tmp_path):
    growth = []
    for g in (1, 1.25, 2, 5):
        header, rows, _ = cli(tmp_path / str(g), "packet", "--gamma", g, "--t-max", 10, "--steps", 2)
        growth.append(column(header, rows, "growth_gamma")[-1])
    ok = all(a > b for a, b in zip(growth, growth[1:]))
    detail = ", ".join(f"gamma {g}: {w:.4g}" for g, w in zip((1, 1.25, 2, 5), growth))
    record("AC7 relativistic suppression", ok, f"width growth at t=10 strictly decreasing ({detail})")


def test_ac08_propagator_properties(gauss_grid):
    fock = LagrangianSpec.fock(1.0)
    # identity
    cfg = PropagatorConfig(sine_field(0.5), fock)
    identity = np.array_equal(evolve_grid(cfg, gauss_grid, 0.0).values, gauss_grid.values)
    # semigroup on the harmonic flow at defaults, quarter periods
    T = math.pi
    harm = PropagatorConfig(harmonic_drive_field(1.0, 2.0), fock)
    semi_h = compose_check(harm, gauss_grid, T / 4, T / 4)
    # exact translation: u tau on the grid spacing
    shift = PropagatorConfig(constant_field(0.25), LagrangianSpec.rest(1.0), dt=0.1)
    semi_t = compose_check(shift, gauss_grid, 0.2, 0.6)
    # HALF-weight norm on a compressible field, refined grid
    fine = WavefunctionGrid.from_function(gaussian(1.0, center=0.5), -12, 12, 2401)
    half = PropagatorConfig(sine_field(0.5), fock, divergence_weight=DivergenceWeight.HALF)
    drift = abs(grid_norm(evolve_grid(half, fine, 1.3)) - grid_norm(fine))
    # modulus independent of the Lagrangian
    y = SpacetimePoint(1.7, 0.4)
    f = gaussian(1.0, k0=0.7)
    mods = [abs(evolve_point(PropagatorConfig(sine_field(0.5), lag), f, y, 1.7))
            for lag in (fock, LagrangianSpec.fock(2.0), LagrangianSpec.constant(0.0))]
    spread = max(mods) - min(mods)
    ok = identity and semi_h < 1e-4 and semi_t < 1e-8 and drift < 1e-5 and spread < 1e-12
    record("AC8 propagator properties", ok,
           f"identity={identity}, semigroup harmonic {semi_h:.1e} (<1e-4), translation {semi_t:.1e} (<1e-8), "
           f"HALF norm drift {drift:.1e} (<1e-5), modulus spread {spread:.1e} (<1e-12)")


def test_ac09_integrator_order(tmp_path):
    header, rows, _ = cli(tmp_path, "flowtest", "--dts", "1e-2,5e-3")
    err = column(header, rows, "period_return_error")
    ratio = err[0] / err[1]
    record("AC9 integrator order", 12 <= ratio <= 20, f"error ratio dt/(dt/2) = {ratio:.2f} (in [12, 20])")


def test_ac10_constant_identities(tmp_path):
    rho = ELECTRON_MASS * SI.c / SI.hbar
    round_trip = abs(mass_from_wavenumber(rho, SI).m / ELECTRON_MASS - 1)
    lam = compton_wavelength(ELECTRON_MASS, SI)
    compton = abs(lam / 3.8616e-13 - 1)
    header, rows, man = cli(tmp_path, "string")
    closure = np.abs(column(header, rows, "closure_residual")).max()
    ls = column(header, rows, "l_s")
    t0_exact = np.array_equal(column(header, rows, "T0"), 2 / (np.pi * ls**2))
    ratios = column(header, rows, "omega_ratio_rho_c"), column(header, rows, "omega_ratio_2rho_c")
    diagnostic = (np.all(ratios[0] == 1.0) and np.all(ratios[1] == 2.0)
                  and man["diagnostics"]["string_frequency_factor"] == 2.0)
    ok = round_trip < 1e-12 and compton < 1e-3 and closure < 1e-12 and t0_exact and diagnostic
    record("AC10 constant identities", ok,
           f"m round trip {round_trip:.1e}, Compton {lam:.5e} m, string closure {closure:.1e}, "
           f"T0 exact={t0_exact}, frequency ratios 1 and 2 reported={diagnostic}")


def test_ac11_total_runtime():
    elapsed = time.perf_counter() - START
    record("runtime", elapsed < 120.0, f"acceptance suite {elapsed:.1f}s (<120s)")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
