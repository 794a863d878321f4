import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rqte.core import (
    ELECTRON_MASS,
    NATURAL,
    SI,
    ActionPhase,
    MassWavenumber,
    SpacetimePoint,
    UnitSystem,
    ValidationError,
    WavefunctionGrid,
    make_constants,
    mass_from_wavenumber,
)
from rqte.propagator import grid_norm


def test_natural_constants_ignore_inputs():
    k = make_constants(UnitSystem.NATURAL, 5.0, 7.0)
    assert (k.hbar, k.c) == (1.0, 1.0)
    assert make_constants("natural") is NATURAL


def test_si_constants_pass_through():
    k = make_constants(UnitSystem.SI, 1.0546e-34, 2.9979e8)
    assert k.hbar == 1.0546e-34
    assert k.c == 2.9979e8
    assert k.unit_system is UnitSystem.SI


@pytest.mark.parametrize("hbar, c", [(-1, 3e8), (1e-34, 0.0), (float("nan"), 3e8)])
def test_si_constants_reject_non_positive(hbar, c):
    with pytest.raises(ValidationError):
        make_constants(UnitSystem.SI, hbar, c)


def test_unknown_unit_system():
    with pytest.raises(ValidationError):
        make_constants("cgs")


@pytest.mark.parametrize("rho", [1.0, 2.0])
def test_mass_from_wavenumber_natural(rho):
    assert mass_from_wavenumber(rho, NATURAL).m == rho


def test_mass_from_wavenumber_si_round_trip():
    rho = ELECTRON_MASS * SI.c / SI.hbar
    mw = mass_from_wavenumber(rho, SI)
    assert mw.m == pytest.approx(ELECTRON_MASS, rel=1e-12)


@pytest.mark.parametrize("rho", [0.0, -1.0])
def test_mass_from_wavenumber_rejects(rho):
    with pytest.raises(ValidationError):
        mass_from_wavenumber(rho)


@given(st.floats(1e-6, 1e6))
def test_wavenumber_round_trip(rho):
    mw = mass_from_wavenumber(rho, SI)
    back = mw.m * SI.c / SI.hbar
    assert abs(back - rho) <= 1e-12 * rho


def test_inconsistent_mass_wavenumber_rejected():
    with pytest.raises(ValidationError):
        MassWavenumber(1.0, 1.1, NATURAL)


def test_action_phase():
    ap = ActionPhase.from_action(2.5, SI)
    assert ap.Y == pytest.approx(-2.5 / SI.hbar, rel=1e-12)


def test_spacetime_point_dimensions():
    assert SpacetimePoint(0.0, 1.0).dim == 1
    assert SpacetimePoint(0.0, [1, 2, 3]).dim == 3
    with pytest.raises(ValidationError):
        SpacetimePoint(0.0, [1, 2, 3, 4])


def test_grid_validation():
    with pytest.raises(ValidationError):
        WavefunctionGrid(0.0, 0.0, [1.0])
    with pytest.raises(ValidationError):
        WavefunctionGrid(0.0, 0.1, [])
    with pytest.raises(ValidationError):
        WavefunctionGrid(0.0, 0.1, [np.inf])


def test_grid_is_immutable(gauss_grid):
    with pytest.raises(ValueError):
        gauss_grid.values[0] = 0.0


@given(st.floats(-10, 10))
def test_norm_invariant_under_copy_and_global_phase(theta):
    g = WavefunctionGrid.from_function(lambda x: np.exp(-x**2) * (1 + 0.3j * x), -6, 6, 121)
    n0 = grid_norm(g)
    assert grid_norm(g.copy()) == n0
    rotated = g.with_values(g.values * np.exp(1j * theta))
    assert math.isclose(grid_norm(rotated), n0, rel_tol=1e-14)
