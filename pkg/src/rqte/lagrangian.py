"""Lagrangians that generate the phase of the transported wavefunction.

``FOCK`` is the proper-time Lagrangian ``(m/2)||V||^2 - m c^2/2`` with the
``(-1, 1, 1, 1)`` signature, ``REL_FREE`` the textbook ``-m c^2 / gamma``,
``CLASSICAL_POTENTIAL`` the weak-field limit ``m v^2/2 - U - m c^2/2`` where
the last term comes from ``g00``. ``CONSTANT`` covers fixed values such as
``L = -m c^2`` or ``L = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import NATURAL, IntegrationError, MassWavenumber, PhysicalConstants, ValidationError


class LagrangianKind(enum.Enum):
    FOCK = "fock"
    REL_FREE = "rel_free"
    CLASSICAL_POTENTIAL = "classical_potential"
    CONSTANT = "constant"


@dataclass(frozen=True)
class LagrangianSpec:
    """A Lagrangian evaluable along characteristic samples.

    ``config_dim`` selects how many leading state components are the
    particle position; the rest of the state (e.g. the velocity slot of a
    phase-space oscillator) is ignored and the matching components of the
    state derivative are used as the particle velocity. ``rest_term=False``
    drops the ``-m c^2/2`` constant from ``CLASSICAL_POTENTIAL``.
    """

    kind: LagrangianKind
    mass: MassWavenumber | None = None
    potential: Callable[[np.ndarray], np.ndarray] | None = None
    constants: PhysicalConstants = NATURAL
    value: float = 0.0
    config_dim: int | None = None
    rest_term: bool = True

    def __post_init__(self):
        if self.kind is LagrangianKind.CLASSICAL_POTENTIAL:
            if self.potential is None:
                raise ValidationError("CLASSICAL_POTENTIAL requires a potential")
        elif self.potential is not None:
            raise ValidationError(f"{self.kind.name} does not take a potential")
        if self.kind is not LagrangianKind.CONSTANT and self.mass is None:
            raise ValidationError(f"{self.kind.name} requires a mass")
        if self.kind is LagrangianKind.CONSTANT and not math.isfinite(self.value):
            raise ValidationError("constant Lagrangian must be finite")

    @classmethod
    def fock(cls, m: float, constants: PhysicalConstants = NATURAL) -> LagrangianSpec:
        return cls(LagrangianKind.FOCK, MassWavenumber.from_mass(m, constants), constants=constants)

    @classmethod
    def rel_free(cls, m: float, constants: PhysicalConstants = NATURAL) -> LagrangianSpec:
        return cls(LagrangianKind.REL_FREE, MassWavenumber.from_mass(m, constants), constants=constants)

    @classmethod
    def classical(cls, m: float, potential, constants: PhysicalConstants = NATURAL, *,
                  config_dim: int | None = None, rest_term: bool = True) -> LagrangianSpec:
        return cls(LagrangianKind.CLASSICAL_POTENTIAL, MassWavenumber.from_mass(m, constants), potential,
                   constants, config_dim=config_dim, rest_term=rest_term)

    @classmethod
    def constant(cls, value: float, constants: PhysicalConstants = NATURAL) -> LagrangianSpec:
        return cls(LagrangianKind.CONSTANT, constants=constants, value=float(value))

    @classmethod
    def rest(cls, m: float, constants: PhysicalConstants = NATURAL) -> LagrangianSpec:
        """``L = -m c^2``, the free-particle value along any proper-time world line."""
        return cls.constant(-m * constants.c**2, constants)

    @property
    def m(self) -> float:
        return self.mass.m

    def along(self, t, x, xdot, tdot):
        """Evaluate on characteristic samples: state ``x``, ``xdot = dx/dtau``, ``tdot = dt/dtau``."""
        x = np.asarray(x, dtype=float)
        xdot = np.asarray(xdot, dtype=float)
        if self.config_dim is not None:
            x = x[..., : self.config_dim]
            xdot = xdot[..., : self.config_dim]
        kind = self.kind
        if kind is LagrangianKind.CONSTANT:
            return np.full(x.shape[:-1], self.value)
        if kind is LagrangianKind.FOCK:
            c = self.constants.c
            norm2 = -(c * tdot) ** 2 + np.sum(xdot**2, axis=-1)
            return 0.5 * self.m * norm2 - 0.5 * self.m * c**2
        if kind is LagrangianKind.REL_FREE:
            speed2 = np.sum(xdot**2, axis=-1) / tdot**2
            return -self.m * self.constants.c**2 * np.sqrt(1.0 - speed2 / self.constants.c**2)
        # classical limit, tau = t
        v2 = np.sum((xdot / tdot) ** 2, axis=-1)
        out = 0.5 * self.m * v2 - np.asarray(self.potential(x), dtype=float)
        if self.rest_term:
            out = out - 0.5 * self.m * self.constants.c**2
        return out


def _finite(value):
    if not np.all(np.isfinite(value)):
        raise IntegrationError(f"non-finite Lagrangian value {value}")
    return value


def minkowski_norm2(V, constants: PhysicalConstants = NATURAL) -> float:
    """``||V||^2`` in the (-1, 1, 1, 1) signature; ``V[0]`` is ``dt/dtau``."""
    V = np.asarray(V, dtype=float)
    return float(-(constants.c * V[0]) ** 2 + np.sum(V[1:] ** 2))


def eval_fock(spec: LagrangianSpec, V) -> float:
    """Fock Lagrangian for four-velocity ``V = (dt/dtau, dx/dtau, ...)``."""
    if spec.kind is not LagrangianKind.FOCK:
        raise ValidationError(f"expected FOCK, got {spec.kind.name}")
    c = spec.constants.c
    return float(_finite(0.5 * spec.m * minkowski_norm2(V, spec.constants) - 0.5 * spec.m * c**2))


def eval_fock_norm(spec: LagrangianSpec, norm2: float) -> float:
    """Fock Lagrangian given ``||V||^2`` directly."""
    if spec.kind is not LagrangianKind.FOCK:
        raise ValidationError(f"expected FOCK, got {spec.kind.name}")
    return float(_finite(0.5 * spec.m * norm2 - 0.5 * spec.m * spec.constants.c**2))


def eval_classical(spec: LagrangianSpec, x, v) -> float:
    if spec.kind is not LagrangianKind.CLASSICAL_POTENTIAL:
        raise ValidationError(f"expected CLASSICAL_POTENTIAL, got {spec.kind.name}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    out = 0.5 * spec.m * float(np.sum(v**2)) - float(spec.potential(x))
    if spec.rest_term:
        out -= 0.5 * spec.m * spec.constants.c**2
    return float(_finite(out))


def eval_rel_free(spec: LagrangianSpec, v) -> float:
    """``-m c^2 / gamma`` for coordinate velocity ``v``."""
    from .flow import lorentz_gamma

    if spec.kind is not LagrangianKind.REL_FREE:
        raise ValidationError(f"expected REL_FREE, got {spec.kind.name}")
    return float(_finite(-spec.m * spec.constants.c**2 / lorentz_gamma(v, spec.constants)))


def g00_from_potential(U: float, m: float, c: float) -> float:
    """Weak-field time-time metric component ``1 + 2U/(m c^2)``."""
    if not (m > 0 and c > 0):
        raise ValidationError("mass and c must be positive")
    return 1.0 + 2.0 * U / (m * c**2)


def harmonic_potential(k: float):
    """``U(x) = k x^2 / 2`` for states of shape ``(..., d)``."""
    return lambda x: 0.5 * k * np.sum(np.asarray(x, dtype=float) ** 2, axis=-1)
