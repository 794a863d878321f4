"""Shared value types such as physical constants and wavefunction grids.

All containers are frozen after construction. Array fields are copied and
marked read-only so instances can be shared freely.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import constants as _sc


class RQTEError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RQTEError, ValueError):
    """Bad input: non-positive constants, malformed grids, unknown keys."""


class KinematicsError(ValidationError):
    """A speed at or above the speed of light was requested."""


class IntegrationError(RQTEError, ArithmeticError):
    """A non-finite value appeared during a numerical computation."""


class UnitSystem(enum.Enum):
    NATURAL = "natural"
    SI = "si"


def _frozen_array(a, dtype=None) -> np.ndarray:
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float
    c: float
    unit_system: UnitSystem = UnitSystem.NATURAL

    def __post_init__(self):
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise ValidationError(f"hbar must be positive and finite, got {self.hbar}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValidationError(f"c must be positive and finite, got {self.c}")
        if self.unit_system is UnitSystem.NATURAL and (self.hbar != 1.0 or self.c != 1.0):
            raise ValidationError("natural units require hbar = c = 1")


NATURAL = PhysicalConstants(1.0, 1.0, UnitSystem.NATURAL)
SI = PhysicalConstants(_sc.hbar, _sc.c, UnitSystem.SI)

#: CODATA electron mass in kg, for SI-mode checks.
ELECTRON_MASS = _sc.m_e


def make_constants(unit_system=UnitSystem.NATURAL, hbar=None, c=None) -> PhysicalConstants:
    """Build validated constants.

    ``unit_system`` may be a :class:`UnitSystem` or its string value. In
    natural units ``hbar`` and ``c`` are ignored and set to 1. In SI mode a
    missing value defaults to the CODATA constant.
    """
    if isinstance(unit_system, str):
        try:
            unit_system = UnitSystem(unit_system.lower())
        except ValueError:
            raise ValidationError(f"unknown unit system {unit_system!r}") from None
    if unit_system is UnitSystem.NATURAL:
        return NATURAL
    hbar = _sc.hbar if hbar is None else float(hbar)
    c = _sc.c if c is None else float(c)
    return PhysicalConstants(hbar, c, UnitSystem.SI)


@dataclass(frozen=True)
class MassWavenumber:
    """A rest mass together with its conserved wavenumber ``rho = m c / hbar``."""

    m: float
    rho: float
    constants: PhysicalConstants = NATURAL

    def __post_init__(self):
        if not (self.m > 0 and self.rho > 0):
            raise ValidationError(f"mass and wavenumber must be positive (m={self.m}, rho={self.rho})")
        expected = self.m * self.constants.c / self.constants.hbar
        if abs(self.rho - expected) > 1e-12 * expected:
            raise ValidationError(f"rho={self.rho} inconsistent with m c / hbar = {expected}")

    @classmethod
    def from_mass(cls, m: float, constants: PhysicalConstants = NATURAL) -> MassWavenumber:
        if not m > 0:
            raise ValidationError(f"mass must be positive, got {m}")
        return cls(float(m), float(m) * constants.c / constants.hbar, constants)


def mass_from_wavenumber(rho: float, constants: PhysicalConstants = NATURAL) -> MassWavenumber:
    """Mass carried by a trajectory of wavenumber ``rho``: ``m = rho hbar / c``."""
    if not rho > 0:
        raise ValidationError(f"wavenumber must be positive, got {rho}")
    rho = float(rho)
    return MassWavenumber(rho * constants.hbar / constants.c, rho, constants)


@dataclass(frozen=True)
class SpacetimePoint:
    t: float
    x: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.asarray(self.x, dtype=float))
        if x.ndim != 1 or not 1 <= x.size <= 3:
            raise ValidationError(f"spatial part must have 1 to 3 components, got shape {x.shape}")
        object.__setattr__(self, "x", _frozen_array(x))
        object.__setattr__(self, "t", float(self.t))

    @property
    def dim(self) -> int:
        return self.x.size


@dataclass(frozen=True)
class ActionPhase:
    """Action ``S`` and the associated phase ``Y = -S / hbar``."""

    S: float
    Y: float

    @classmethod
    def from_action(cls, S: float, constants: PhysicalConstants = NATURAL) -> ActionPhase:
        return cls(float(S), -float(S) / constants.hbar)


@dataclass(frozen=True)
class WavefunctionGrid:
    """Complex amplitudes on the uniform grid ``origin + i * spacing``."""

    origin: float
    spacing: float
    values: np.ndarray
    tau: float = 0.0
    x: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.spacing > 0:
            raise ValidationError(f"grid spacing must be positive, got {self.spacing}")
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1 or values.size == 0:
            raise ValidationError("grid values must be a non-empty 1-D array")
        if not np.all(np.isfinite(values)):
            raise ValidationError("grid values must be finite")
        object.__setattr__(self, "values", _frozen_array(values))
        object.__setattr__(self, "origin", float(self.origin))
        object.__setattr__(self, "spacing", float(self.spacing))
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "x", _frozen_array(self.origin + self.spacing * np.arange(values.size)))

    @classmethod
    def from_function(cls, f, lo: float, hi: float, n: int, tau: float = 0.0) -> WavefunctionGrid:
        """Sample ``f`` at ``n`` equally spaced nodes spanning ``[lo, hi]``."""
        if n < 2 or not hi > lo:
            raise ValidationError("need n >= 2 and hi > lo")
        xs = np.linspace(lo, hi, n)
        return cls(lo, (hi - lo) / (n - 1), f(xs), tau)

    def with_values(self, values, tau: float | None = None) -> WavefunctionGrid:
        return WavefunctionGrid(self.origin, self.spacing, values, self.tau if tau is None else tau)

    def copy(self) -> WavefunctionGrid:
        return self.with_values(self.values)

    def __len__(self):
        return self.values.size
