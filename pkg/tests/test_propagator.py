import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rqte.core import IntegrationError, SpacetimePoint, ValidationError, WavefunctionGrid
from rqte.flow import VelocityFieldSpec, constant_field, harmonic_drive_field, linear_field, sine_field
from rqte.lagrangian import LagrangianSpec
from rqte.propagator import (
    DivergenceWeight,
    PropagatorConfig,
    compose_check,
    evolve_grid,
    evolve_point,
    gaussian,
    grid_norm,
)

FULL, HALF = DivergenceWeight.FULL, DivergenceWeight.HALF


def one(x):
    return np.ones(np.shape(x)[:-1], dtype=complex)


def test_identity_at_zero_time(gauss_grid):
    cfg = PropagatorConfig(sine_field(0.5), LagrangianSpec.fock(1.0))
    out = evolve_grid(cfg, gauss_grid, 0.0)
    assert np.array_equal(out.values, gauss_grid.values)
    f = gaussian(1.0, k0=0.3)
    y = SpacetimePoint(0.0, 0.7)
    assert evolve_point(cfg, f, y, 0.0) == complex(f(y.x))


@pytest.mark.parametrize("weight, expected", [(FULL, math.exp(-1)), (HALF, math.exp(-0.5))])
def test_constant_divergence_weight(weight, expected):
    cfg = PropagatorConfig(linear_field(1.0), LagrangianSpec.constant(0.0), divergence_weight=weight)
    val = evolve_point(cfg, one, SpacetimePoint(1.0, 2.0), 1.0)
    assert val == pytest.approx(expected, abs=1e-12)


def test_translation_with_rest_phase():
    u, m, tau = 0.4, 1.3, 2.0
    cfg = PropagatorConfig(constant_field(u), LagrangianSpec.rest(m))
    f = gaussian(1.0, k0=0.5)
    for y in (-1.0, 0.3, 2.5):
        got = evolve_point(cfg, f, SpacetimePoint(tau, y), tau)
        want = complex(f(np.array([y - u * tau]))) * np.exp(-1j * m * tau)
        assert abs(got - want) < 1e-12


def test_negative_tau_rejected(gauss_grid):
    cfg = PropagatorConfig(constant_field(1.0), LagrangianSpec.rest(1.0))
    with pytest.raises(ValidationError):
        evolve_grid(cfg, gauss_grid, -1.0)
    with pytest.raises(ValidationError):
        evolve_point(cfg, one, SpacetimePoint(0, 0), -0.1)


def test_non_finite_initial_data():
    cfg = PropagatorConfig(constant_field(1.0), LagrangianSpec.rest(1.0))
    with pytest.raises(IntegrationError):
        evolve_point(cfg, lambda x: np.full(np.shape(x)[:-1], np.nan), SpacetimePoint(1, 0), 1.0)


def test_grid_translation_modulus(gauss_grid):
    u, tau = 0.5, 1.0
    cfg = PropagatorConfig(constant_field(u), LagrangianSpec.rest(1.0))
    out = evolve_grid(cfg, gauss_grid, tau)
    exact = np.abs(gaussian(1.0)(gauss_grid.x - u * tau))
    assert np.abs(np.abs(out.values) - exact).max() < 1e-6
    assert out.tau == tau
    assert (out.origin, out.spacing) == (gauss_grid.origin, gauss_grid.spacing)


def test_harmonic_period_return_half_weight(gauss_grid):
    omega = 2.0
    cfg = PropagatorConfig(harmonic_drive_field(1.0, omega), LagrangianSpec.constant(0.0), divergence_weight=HALF)
    out = evolve_grid(cfg, gauss_grid, 2 * math.pi / omega)
    assert np.abs(np.abs(out.values) - np.abs(gauss_grid.values)).max() < 1e-6


def test_grid_norm_examples(gauss_grid):
    assert grid_norm(gauss_grid) == pytest.approx(1.0, abs=1e-6)
    assert grid_norm(gauss_grid.with_values(np.zeros(len(gauss_grid)))) == 0.0


def test_compose_zero():
    cfg = PropagatorConfig(constant_field(1.0), LagrangianSpec.rest(1.0))
    g = WavefunctionGrid.from_function(gaussian(1.0), -5, 5, 11)
    assert compose_check(cfg, g, 0.0, 0.0) == 0.0


@pytest.mark.parametrize("tau1, tau2", [(0.2, 0.6), (0.4, 0.4), (1.0, 0.2)])
def test_compose_exact_translation(tau1, tau2):
    # u * tau is a multiple of the spacing 0.05
    cfg = PropagatorConfig(constant_field(0.25), LagrangianSpec.rest(1.0), dt=0.1)
    g = WavefunctionGrid.from_function(gaussian(1.0, k0=1.0), -10, 10, 401)
    assert compose_check(cfg, g, tau1, tau2) < 1e-8


def test_compose_harmonic_quarter_periods(gauss_grid):
    omega = 2.0
    T = 2 * math.pi / omega
    cfg = PropagatorConfig(harmonic_drive_field(1.0, omega), LagrangianSpec.fock(1.0))
    assert compose_check(cfg, gauss_grid, T / 4, T / 4) < 1e-4
    assert compose_check(cfg, gauss_grid, 0.37 * T, 0.21 * T) < 1e-4


def test_compose_converges_under_refinement():
    cfg = PropagatorConfig(sine_field(0.4), LagrangianSpec.constant(0.0), divergence_weight=HALF)
    devs = []
    for n, dt in ((101, 1e-2), (201, 5e-3), (401, 2.5e-3)):
        g = WavefunctionGrid.from_function(gaussian(1.0), -8, 8, n)
        devs.append(compose_check(PropagatorConfig(cfg.field, cfg.lagrangian, dt=dt, divergence_weight=HALF), g, 0.37, 0.41))
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-4


@pytest.mark.parametrize("field", [harmonic_drive_field(1.0, 2.0), sine_field(0.5), sine_field(0.3, 2.0)])
def test_half_weight_norm_conservation(field):
    g = WavefunctionGrid.from_function(gaussian(1.0, center=0.5), -12, 12, 2401)
    cfg = PropagatorConfig(field, LagrangianSpec.fock(1.0), divergence_weight=HALF)
    out = evolve_grid(cfg, g, 1.3)
    assert grid_norm(out) == pytest.approx(grid_norm(g), abs=1e-5)


def test_full_weight_does_not_conserve_norm_on_compressible_field():
    g = WavefunctionGrid.from_function(gaussian(1.0, center=0.5), -12, 12, 2401)
    out = evolve_grid(PropagatorConfig(sine_field(0.5), LagrangianSpec.fock(1.0)), g, 1.3)
    assert abs(grid_norm(out) - grid_norm(g)) > 1e-3


@settings(max_examples=30, deadline=None)
@given(st.floats(0.1, 3), st.floats(-3, 3), st.floats(0.1, 1.0), st.floats(0.1, 5))
def test_modulus_independent_of_lagrangian(m, y, a, tau):
    field = sine_field(a)
    f = gaussian(1.0, k0=0.7)
    p = SpacetimePoint(tau, y)
    base, double, other = (
        evolve_point(PropagatorConfig(field, lag, dt=1e-2), f, p, tau)
        for lag in (LagrangianSpec.fock(m), LagrangianSpec.fock(2 * m), LagrangianSpec.constant(17.0))
    )
    assert abs(abs(base) - abs(double)) < 1e-12
    assert abs(abs(base) - abs(other)) < 1e-12


def test_mass_leaving_grid_warns(caplog):
    g = WavefunctionGrid.from_function(gaussian(1.0), -4, 4, 81)
    with caplog.at_level("WARNING", logger="rqte.propagator"):
        evolve_grid(PropagatorConfig(constant_field(1.0), LagrangianSpec.rest(1.0)), g, 3.0)
    assert "outside the grid" in caplog.text


def test_grid_needs_one_dimensional_field(gauss_grid):
    field = VelocityFieldSpec(2, lambda t, x: np.zeros_like(x))
    with pytest.raises(ValidationError):
        evolve_grid(PropagatorConfig(field, LagrangianSpec.rest(1.0)), gauss_grid, 1.0)
