"""Plane-wave dispersion relations and Gaussian wavepackets.

The packet oracle integrates plane waves over wavenumber with the Lorentz
factor evaluated exactly at every node, so nothing assumes a narrow
packet. The non-relativistic mode replaces the dispersion with
``omega = m c^2/hbar + hbar k^2 / (2m)`` and reproduces the closed-form
Schrödinger packet.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import erfc

from .core import NATURAL, PhysicalConstants, ValidationError, WavefunctionGrid
from .flow import lorentz_gamma

DEFAULT_K_NODES = 2048
DEFAULT_K_SPAN = 8.0
MAX_TAIL_MASS = 1e-12


@dataclass(frozen=True)
class PlaneWaveParams:
    k: np.ndarray
    omega: float
    u: np.ndarray
    gamma: float
    m: float
    constants: PhysicalConstants = NATURAL

    @property
    def dispersion_residual(self) -> float:
        hbar, c = self.constants.hbar, self.constants.c
        return float(hbar * self.omega - hbar * np.dot(self.k, self.u) - self.m * c**2 / self.gamma)


def dispersion_omega(k, u, m: float, constants: PhysicalConstants = NATURAL) -> float:
    """Angular frequency of a plane wave ``exp(i(k.x - omega t))`` carried at velocity ``u``."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    g = lorentz_gamma(u, constants)
    return float(np.dot(k, u) + m * constants.c**2 / (constants.hbar * g))


@dataclass(frozen=True)
class DeBroglie:
    u: np.ndarray
    gamma: float
    E: float
    omega: float
    energy_residual: float
    momentum_residual: float
    dispersion_residual: float


def debroglie_velocity(k, m: float, constants: PhysicalConstants = NATURAL):
    """Solution of ``u = hbar k / (m gamma(u))`` for 1-D wavenumbers, element-wise.

    ``u = hbar k / sqrt(m^2 + hbar^2 k^2 / c^2)``; returns ``(u, gamma)``.
    """
    k = np.asarray(k, dtype=float)
    hbar, c = constants.hbar, constants.c
    gamma = np.sqrt(1.0 + (hbar * k / (m * c)) ** 2)
    return hbar * k / (m * gamma), gamma


def debroglie_check(k, m: float, constants: PhysicalConstants = NATURAL) -> DeBroglie:
    """Velocity and energy of the wave with wavenumber ``k``, with relation residuals."""
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if not m > 0:
        raise ValidationError(f"mass must be positive, got {m}")
    hbar, c = constants.hbar, constants.c
    kn = float(np.linalg.norm(k))
    speed, gamma = debroglie_velocity(kn, m, constants)
    gamma = float(gamma)
    u = k * (float(speed) / kn) if kn > 0 else np.zeros_like(k)
    omega = dispersion_omega(k, u, m, constants)
    E = m * c**2 * gamma
    p = m * gamma * u
    return DeBroglie(
        u=u,
        gamma=gamma,
        E=E,
        omega=omega,
        energy_residual=hbar * omega - E,
        momentum_residual=float(np.abs(p - hbar * k).max()),
        dispersion_residual=float(hbar * omega - hbar * np.dot(k, u) - m * c**2 / gamma),
    )


def wavenumber_for_gamma(gamma: float, m: float, constants: PhysicalConstants = NATURAL) -> float:
    """Central wavenumber of a packet whose group motion has Lorentz factor ``gamma``."""
    if gamma < 1:
        raise ValidationError(f"gamma must be >= 1, got {gamma}")
    return m * constants.c * math.sqrt(gamma**2 - 1.0) / constants.hbar


@dataclass(frozen=True)
class WavepacketParams:
    sigma: float
    m: float
    k0: float = 0.0
    A: float = 1.0
    k_grid: np.ndarray = field(default=None, repr=False)
    relativistic: bool = True

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValidationError(f"sigma must be positive, got {self.sigma}")
        if not self.m > 0:
            raise ValidationError(f"mass must be positive, got {self.m}")
        if self.k_grid is None:
            half = DEFAULT_K_SPAN / self.sigma
            grid = np.linspace(self.k0 - half, self.k0 + half, DEFAULT_K_NODES)
        else:
            grid = np.asarray(self.k_grid, dtype=float)
            if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0):
                raise ValidationError("k_grid must be strictly increasing with at least two nodes")
            if not math.isclose(grid[0] + grid[-1], 2 * self.k0, rel_tol=1e-12, abs_tol=1e-12 / self.sigma):
                raise ValidationError("k_grid must be symmetric about the central wavenumber")
        grid.setflags(write=False)
        object.__setattr__(self, "k_grid", grid)

    @classmethod
    def from_velocity(cls, sigma, m, v_center, constants: PhysicalConstants = NATURAL, **kw) -> WavepacketParams:
        g = lorentz_gamma([v_center], constants)
        return cls(sigma, m, k0=m * g * v_center / constants.hbar, **kw)

    @classmethod
    def from_gamma(cls, sigma, m, gamma, constants: PhysicalConstants = NATURAL, **kw) -> WavepacketParams:
        return cls(sigma, m, k0=wavenumber_for_gamma(gamma, m, constants), **kw)

    @property
    def tail_mass(self) -> float:
        """Fraction of the spectral profile ``exp(-sigma^2 (k-k0)^2 / 2)`` outside the k grid."""
        lo = (self.k0 - self.k_grid[0]) * self.sigma
        hi = (self.k_grid[-1] - self.k0) * self.sigma
        return 0.5 * float(erfc(lo / math.sqrt(2)) + erfc(hi / math.sqrt(2)))


def packet_omega(k, p: WavepacketParams, constants: PhysicalConstants = NATURAL):
    """Per-node angular frequency ``k u(k) + m c^2 / (hbar gamma(k))``."""
    hbar, c, m = constants.hbar, constants.c, p.m
    k = np.asarray(k, dtype=float)
    if p.relativistic:
        u, gamma = debroglie_velocity(k, m, constants)
        return k * u + m * c**2 / (hbar * gamma)
    # gamma = 1 with the m u^2 / 2 Lagrangian correction
    u = hbar * k / m
    return k * u - hbar * k**2 / (2 * m) + m * c**2 / hbar


def relativistic_packet_quadrature(p: WavepacketParams, x, t: float, constants: PhysicalConstants = NATURAL):
    """Packet ``2 pi sigma A int exp(-sigma^2 (k-k0)^2/2) exp(i(k x - omega(k) t)) dk`` by trapezoid."""
    if p.tail_mass > MAX_TAIL_MASS:
        raise ValidationError(f"k grid leaves spectral tail mass {p.tail_mass:.3g} > {MAX_TAIL_MASS}")
    x = np.asarray(x, dtype=float)
    k = p.k_grid
    weights = np.full(k.size, 1.0)
    weights[0] = weights[-1] = 0.5
    dk = np.diff(k)
    if np.allclose(dk, dk[0], rtol=1e-9):
        weights = weights * dk[0]
    else:
        weights = np.zeros(k.size)
        weights[:-1] += 0.5 * dk
        weights[1:] += 0.5 * dk
    spec = np.exp(-0.5 * (p.sigma * (k - p.k0)) ** 2) * weights
    spec = spec * np.exp(-1j * packet_omega(k, p, constants) * t)
    flat = x.reshape(-1)
    out = np.empty(flat.size, dtype=complex)
    chunk = max(1, 2**22 // k.size)
    for s in range(0, flat.size, chunk):
        out[s:s + chunk] = np.exp(1j * np.outer(flat[s:s + chunk], k)) @ spec
    return 2 * math.pi * p.sigma * p.A * out.reshape(x.shape)


def schrodinger_packet_closed_form(sigma, m, x, t, constants: PhysicalConstants = NATURAL, a: complex = 1.0):
    """Free Schrödinger Gaussian with the rest-energy phase ``exp(-i m c^2 t / hbar)``."""
    if t < 0:
        raise ValidationError("t must be non-negative")
    hbar, c = constants.hbar, constants.c
    z = sigma**2 + 1j * t * hbar / m
    x = np.asarray(x, dtype=float)
    return a * np.exp(-1j * m * c**2 * t / hbar) * np.sqrt(sigma**2 / z) * np.exp(-(x**2) / (2 * z))


def schrodinger_width(sigma, m, t, constants: PhysicalConstants = NATURAL):
    """Width parameter of the free Schrödinger Gaussian: ``sqrt(sigma^2 + (t hbar / (m sigma))^2)``."""
    return np.sqrt(sigma**2 + (t * constants.hbar / (m * sigma)) ** 2)


def packet_width(grid: WavefunctionGrid) -> float:
    """Width parameter ``s`` of ``|psi|``, read off the second moment of ``|psi|^2``.

    For a modulus ``exp(-(x-x0)^2 / (2 s^2))`` the density ``|psi|^2`` has
    variance ``s^2 / 2``, so this returns ``sqrt(2 * variance)``.
    """
    dens = np.abs(grid.values) ** 2
    total = dens.sum()
    if not total > 0:
        raise ValidationError("packet has zero norm")
    x = grid.x
    mean = np.dot(dens, x) / total
    var = np.dot(dens, (x - mean) ** 2) / total
    return float(math.sqrt(2.0 * var))


def packet_center(p: WavepacketParams, t: float, constants: PhysicalConstants = NATURAL) -> float:
    """Group-velocity position of the packet peak at time ``t``."""
    if p.relativistic:
        u, _ = debroglie_velocity(p.k0, p.m, constants)
    else:
        u = constants.hbar * p.k0 / p.m
    return float(u) * t


def packet_grid(p: WavepacketParams, t: float, constants: PhysicalConstants = NATURAL, n: int = 1024,
                span: float = 10.0) -> WavefunctionGrid:
    """Evaluate the packet on a window that follows the group motion and covers the spread."""
    half = span * float(schrodinger_width(p.sigma, p.m, t, constants))
    if p.relativistic:
        half = min(half, constants.c * t + span * p.sigma)
    centre = packet_center(p, t, constants)
    xs = np.linspace(centre - half, centre + half, n)
    return WavefunctionGrid(xs[0], xs[1] - xs[0], relativistic_packet_quadrature(p, xs, t, constants), tau=t)


def width_series(p: WavepacketParams, times, constants: PhysicalConstants = NATURAL, n: int = 1024) -> np.ndarray:
    return np.array([packet_width(packet_grid(p, t, constants, n)) for t in times])


def positive_energy(p: WavepacketParams, constants: PhysicalConstants = NATURAL) -> bool:
    """Whether every plane wave in the packet carries positive energy ``hbar omega(k)``."""
    return bool(np.all(packet_omega(p.k_grid, p, constants) > 0))
