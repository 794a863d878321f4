"""Spectra from phase closure over periodic orbits, and the mass/string identities.

Harmonic oscillator: the classical orbit is integrated numerically over one
period, the action of ``m v^2/2 - k x^2/2`` is accumulated along it, and the
level ``lambda_n`` is the value for which ``int_0^T (lambda + L) dt`` is
``2 pi n hbar``. The rest term of ``L`` is ``-m_rho c^2 / 2`` with the
wavenumber of the observation field tied to the oscillator frequency,
``rho c = omega``, which yields the zero-point energy ``hbar omega / 2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .core import NATURAL, IntegrationError, PhysicalConstants, ValidationError, mass_from_wavenumber
from .flow import DEFAULT_DT, action_integral, harmonic_phase_field, integrate_batch
from .lagrangian import LagrangianSpec, harmonic_potential


@dataclass(frozen=True)
class QuantizationResult:
    levels: list[tuple[int, float]]
    action_residual: float | None = None
    period: float | None = None
    #: |exp(-(i/hbar) int (lambda_n + L) dt) - 1| per level
    closure_residuals: list[float] = field(default_factory=list)

    def __post_init__(self):
        energies = [lam for _, lam in self.levels]
        if any(b <= a for a, b in zip(energies, energies[1:])):
            raise ValidationError("levels must be strictly increasing")

    @property
    def energies(self) -> np.ndarray:
        return np.array([lam for _, lam in self.levels])


def harmonic_levels(m: float, omega: float, x0: float = 1.0, n_max: int = 10,
                    constants: PhysicalConstants = NATURAL, dt: float = DEFAULT_DT) -> QuantizationResult:
    if not omega > 0:
        raise ValidationError(f"omega must be positive, got {omega}")
    if not m > 0:
        raise ValidationError(f"mass must be positive, got {m}")
    if n_max < 0:
        raise ValidationError(f"n_max must be >= 0, got {n_max}")
    hbar, c = constants.hbar, constants.c
    T = 2 * math.pi / omega
    # a whole number of steps per period keeps the trapezoid rule spectrally accurate
    steps = max(1, math.ceil(T / dt - 1e-9))
    traj = integrate_batch(harmonic_phase_field(omega), 0.0, [x0, 0.0], T, T / steps)
    if np.abs(traj.final_state - [x0, 0.0]).max() > 1e-6 * max(1.0, abs(x0)):
        raise IntegrationError("orbit did not close after one period")

    k_spring = m * omega**2
    lc = LagrangianSpec.classical(m, harmonic_potential(k_spring), constants, config_dim=1, rest_term=False)
    S_c = action_integral(lc, traj, constants).S

    # observation-field mass with rho c = omega
    m_rho = mass_from_wavenumber(omega / c, constants).m
    rest_action = -0.5 * m_rho * c**2 * T
    S = S_c + rest_action

    levels, closure = [], []
    for n in range(n_max + 1):
        lam = (2 * math.pi * n * hbar - S) / T
        levels.append((n, lam))
        closure.append(abs(cmath.exp(-1j * (lam * T + S) / hbar) - 1.0))
    return QuantizationResult(levels, action_residual=S_c, period=T, closure_residuals=closure)


def harmonic_closed_form(omega: float, n, constants: PhysicalConstants = NATURAL):
    return constants.hbar * omega * (np.asarray(n) + 0.5)


def box_levels(l: float, m: float, n_max: int = 10, constants: PhysicalConstants = NATURAL) -> QuantizationResult:
    """Particle in a box: ``lambda_n = pi^2 hbar^2 n^2 / (2 m l^2)`` for ``n = 1..n_max``."""
    if not l > 0:
        raise ValidationError(f"box length must be positive, got {l}")
    if not m > 0:
        raise ValidationError(f"mass must be positive, got {m}")
    if n_max < 1:
        raise ValidationError("n = 0 gives the trivial eigenfunction; n_max must be >= 1")
    hbar = constants.hbar
    levels = [(n, math.pi**2 * hbar**2 * n**2 / (2 * m * l**2)) for n in range(1, n_max + 1)]
    return QuantizationResult(levels)


def box_level_by_resonance(n: int, l: float, m: float, constants: PhysicalConstants = NATURAL) -> float:
    """The same level assembled step by step.

    Spatial resonance fixes the particle wavelength ``2 l / n``; de Broglie
    gives the speed; the phase condition across the box gives
    ``hbar n pi v / l``, from which the kinetic Lagrangian is removed.
    """
    if n == 0:
        raise ValidationError("n = 0 gives the trivial eigenfunction")
    hbar = constants.hbar
    wavelength = 2 * l / n
    v = 2 * math.pi * hbar / (m * wavelength)
    L = 0.5 * m * v**2
    return hbar * n * math.pi * v / l - L


@dataclass(frozen=True)
class StringParameters:
    l_s: float
    rho: float
    m: float
    mu0: float
    T0: float
    sigma1: float
    omega_s: float
    Omega: float
    constants: PhysicalConstants = NATURAL

    @property
    def closure_residual(self) -> float:
        """``sigma1 T0 - m c^2``, relative to ``m c^2``."""
        mc2 = self.m * self.constants.c**2
        return (self.sigma1 * self.T0 - mc2) / mc2

    @property
    def resonance_ratio(self) -> float:
        """``rho c hbar / (m c^2)``; 1 when mass and wavenumber are matched."""
        c = self.constants.c
        return self.rho * c * self.constants.hbar / (self.m * c**2)

    @property
    def frequency_ratios(self) -> dict[str, float]:
        """String-to-field frequency ratio under both stated string frequencies.

        With ``omega_s = rho c`` the ratio is 1; with the rotating-string value
        ``omega_s = 2 rho c`` it is 2. Both are reported; neither is chosen.
        """
        c = self.constants.c
        return {"rho_c": self.rho * c / self.Omega, "two_rho_c": self.omega_s / self.Omega}


def string_identities(l_s: float, constants: PhysicalConstants = NATURAL) -> StringParameters:
    if not l_s > 0:
        raise ValidationError(f"string length must be positive, got {l_s}")
    hbar, c = constants.hbar, constants.c
    rho = 1.0 / l_s
    m = rho * hbar / c
    return StringParameters(
        l_s=l_s,
        rho=rho,
        m=m,
        mu0=m / l_s,
        T0=2 * hbar * c / (math.pi * l_s**2),
        sigma1=math.pi * l_s / 2,
        omega_s=2 * rho * c,
        Omega=m * c**2 / hbar,
        constants=constants,
    )


def compton_wavelength(m: float, constants: PhysicalConstants = NATURAL) -> float:
    """Reduced Compton wavelength ``hbar / (m c)``."""
    if not m > 0:
        raise ValidationError(f"mass must be positive, got {m}")
    return constants.hbar / (m * constants.c)
