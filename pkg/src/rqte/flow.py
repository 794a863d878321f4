"""Characteristic flows of spacetime velocity fields.

A field gives the spatial velocity ``dx/dtau`` as a function of coordinate
time and position; coordinate time advances at the constant rate
``dt/dtau = time_rate`` (1 for classical fields, the Lorentz factor for a
boosted free particle). Fields must broadcast over leading batch axes:
``velocity(t, x)`` with ``x.shape == (..., dim)`` returns the same shape and
``divergence(t, x)`` returns shape ``(...)``.

Integration is classical fixed-step RK4. Line integrals of the divergence
(and optionally of a Lagrangian) use the trapezoid rule on the integrator's
own samples, so weights and phases follow exactly the computed path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import (
    NATURAL,
    ActionPhase,
    IntegrationError,
    KinematicsError,
    PhysicalConstants,
    SpacetimePoint,
    ValidationError,
)

DEFAULT_DT = 1e-3
FD_REL_STEP = 1e-5


@dataclass(frozen=True)
class VelocityFieldSpec:
    dim: int
    velocity: Callable[[float, np.ndarray], np.ndarray]
    divergence: Callable[[float, np.ndarray], np.ndarray] | None = None
    autonomous: bool = True
    time_rate: float = 1.0

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValidationError(f"field dimension must be 1, 2 or 3, got {self.dim}")
        if not (self.time_rate > 0 and math.isfinite(self.time_rate)):
            raise ValidationError(f"time_rate must be positive, got {self.time_rate}")

    def __call__(self, t, x):
        return np.asarray(self.velocity(t, x), dtype=float)

    def div(self, t, x) -> np.ndarray:
        """Divergence of the spatial velocity, analytic when available."""
        if self.divergence is not None:
            return np.broadcast_to(np.asarray(self.divergence(t, x), dtype=float), np.shape(x)[:-1])
        return fd_divergence(self, t, x)


def fd_divergence(field: VelocityFieldSpec, t, x) -> np.ndarray:
    # central differences, step 1e-5 * max(1, |x_j|) per axis
    x = np.asarray(x, dtype=float)
    total = np.zeros(x.shape[:-1])
    for j in range(field.dim):
        h = FD_REL_STEP * np.maximum(1.0, np.abs(x[..., j]))
        xp = x.copy()
        xm = x.copy()
        xp[..., j] += h
        xm[..., j] -= h
        total += (field(t, xp)[..., j] - field(t, xm)[..., j]) / (2.0 * h)
    return total


@dataclass(frozen=True)
class Trajectory:
    """Sampled characteristic curve(s).

    ``x`` and ``xdot`` have shape ``(n_samples, *batch, dim)``. ``tau`` is
    signed: it runs from 0 to ``tau_final`` and is strictly monotone.
    Cumulative integrals are signed integrals over ``tau`` and start at 0.
    When integrated without recording, only the first and last samples are
    kept.
    """

    tau: np.ndarray
    t: np.ndarray
    x: np.ndarray
    xdot: np.ndarray
    div_integral: np.ndarray
    action_integral: np.ndarray | None
    time_rate: float = 1.0

    @property
    def samples(self) -> list[tuple[float, SpacetimePoint]]:
        if self.x.ndim != 2:
            raise ValidationError("samples are only defined for a single trajectory")
        return [(float(s), SpacetimePoint(t, x)) for s, t, x in zip(self.tau, self.t, self.x)]

    @property
    def endpoint(self) -> SpacetimePoint:
        if self.x.ndim != 2:
            raise ValidationError("use .x[-1] for batched trajectories")
        return SpacetimePoint(self.t[-1], self.x[-1])

    @property
    def final_state(self) -> np.ndarray:
        return self.x[-1]

    @property
    def tau_final(self) -> float:
        return float(self.tau[-1])


def step_count(tau_final: float, dt: float) -> int:
    # tolerate |tau|/dt landing a hair above an integer through rounding
    return max(1, math.ceil(abs(tau_final) / dt - 1e-9))


def _check_finite(arr, tau, what="state"):
    if not np.all(np.isfinite(arr)):
        raise IntegrationError(f"non-finite {what} encountered at tau={tau:.17g}")


def integrate_batch(
    field: VelocityFieldSpec,
    t0: float,
    x0,
    tau_final: float,
    dt: float = DEFAULT_DT,
    *,
    lagrangian=None,
    record: bool = True,
) -> Trajectory:
    """Integrate a batch of seed points ``x0`` (shape ``(..., dim)``) sharing start time ``t0``.

    ``lagrangian`` is anything with ``along(t, x, xdot, tdot)`` returning an
    array of batch shape; when given, its trapezoid integral over ``tau`` is
    accumulated alongside the divergence integral.
    """
    if not dt > 0:
        raise ValidationError(f"dt must be positive, got {dt}")
    if tau_final == 0 or not math.isfinite(tau_final):
        raise ValidationError(f"tau_final must be finite and non-zero, got {tau_final}")
    x = np.array(x0, dtype=float)
    if x.shape[-1:] != (field.dim,):
        raise ValidationError(f"seed points must have trailing dimension {field.dim}, got {x.shape}")

    n = step_count(tau_final, dt)
    sign = 1.0 if tau_final > 0 else -1.0
    h_full = sign * dt
    rate = field.time_rate

    tau = 0.0
    t = float(t0)
    v = field(t, x)
    _check_finite(v, tau, "velocity")
    d = field.div(t, x)
    _check_finite(d, tau, "divergence")
    lag = None
    if lagrangian is not None:
        lag = np.asarray(lagrangian.along(t, x, v, rate), dtype=float)
        _check_finite(lag, tau, "Lagrangian")

    div_cum = np.zeros(x.shape[:-1])
    act_cum = np.zeros(x.shape[:-1]) if lagrangian is not None else None
    taus, ts, xs, vs, divs, acts = [0.0], [t], [x.copy()], [v], [div_cum.copy()], []
    if act_cum is not None:
        acts.append(act_cum.copy())

    for i in range(n):
        h = h_full if i < n - 1 else tau_final - tau
        k1 = v
        k2 = field(t + 0.5 * h * rate, x + 0.5 * h * k1)
        k3 = field(t + 0.5 * h * rate, x + 0.5 * h * k2)
        k4 = field(t + h * rate, x + h * k3)
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        tau = tau_final if i == n - 1 else tau + h
        t = t0 + rate * tau
        _check_finite(x, tau)
        v = field(t, x)
        _check_finite(v, tau, "velocity")
        d_new = field.div(t, x)
        _check_finite(d_new, tau, "divergence")
        div_cum = div_cum + 0.5 * h * (d + d_new)
        d = d_new
        if lagrangian is not None:
            lag_new = np.asarray(lagrangian.along(t, x, v, rate), dtype=float)
            _check_finite(lag_new, tau, "Lagrangian")
            act_cum = act_cum + 0.5 * h * (lag + lag_new)
            lag = lag_new
        if record or i == n - 1:
            taus.append(tau)
            ts.append(t)
            xs.append(x)
            vs.append(v)
            divs.append(div_cum)
            if act_cum is not None:
                acts.append(act_cum)

    return Trajectory(
        tau=np.array(taus),
        t=np.array(ts),
        x=np.stack(xs),
        xdot=np.stack(vs),
        div_integral=np.stack(divs),
        action_integral=np.stack(acts) if acts else None,
        time_rate=rate,
    )


def integrate_flow(field: VelocityFieldSpec, x0: SpacetimePoint, tau_final: float, dt: float = DEFAULT_DT) -> Trajectory:
    """Trajectory of ``field`` from ``x0`` over proper time ``tau_final`` (negative runs backward)."""
    if x0.dim != field.dim:
        raise ValidationError(f"point has {x0.dim} spatial components, field has {field.dim}")
    return integrate_batch(field, x0.t, x0.x, tau_final, dt)


def backward_point(field: VelocityFieldSpec, y: SpacetimePoint, tau: float, dt: float = DEFAULT_DT) -> SpacetimePoint:
    """Foot of the characteristic that reaches ``y`` after proper time ``tau``."""
    if tau < 0:
        raise ValidationError(f"tau must be non-negative, got {tau}")
    if tau == 0:
        return y
    return integrate_flow(field, y, -tau, dt).endpoint


def divergence_integral(field: VelocityFieldSpec, traj: Trajectory) -> float:
    """Trapezoid integral of ``div V`` over the trajectory samples."""
    if traj.tau.size < 2:
        raise ValidationError("trajectory has fewer than two samples")
    d = np.array([field.div(t, x) for t, x in zip(traj.t, traj.x)])
    _check_finite(d, traj.tau_final, "divergence")
    return _trapezoid(d, traj.tau)


def action_integral(lagrangian, traj: Trajectory, constants: PhysicalConstants | None = None) -> ActionPhase:
    """Action ``S`` as the trapezoid integral of the Lagrangian along ``traj``."""
    if traj.tau.size < 2:
        raise ValidationError("trajectory has fewer than two samples")
    if constants is None:
        constants = getattr(lagrangian, "constants", NATURAL)
    L = np.array([np.asarray(lagrangian.along(t, x, v, traj.time_rate), dtype=float)
                  for t, x, v in zip(traj.t, traj.x, traj.xdot)])
    _check_finite(L, traj.tau_final, "Lagrangian")
    S = _trapezoid(L, traj.tau)
    return ActionPhase.from_action(float(np.squeeze(S)), constants)


def _trapezoid(values, tau):
    h = np.diff(tau).reshape((-1,) + (1,) * (np.ndim(values) - 1))
    return np.sum(0.5 * h * (values[1:] + values[:-1]), axis=0)


# --- standard fields ---------------------------------------------------------

def constant_field(u, time_rate: float = 1.0) -> VelocityFieldSpec:
    """Uniform translation ``dx/dtau = u``; divergence 0."""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    return VelocityFieldSpec(
        u.size,
        lambda t, x: np.broadcast_to(u, np.shape(x)).copy(),
        lambda t, x: np.zeros(np.shape(x)[:-1]),
        True,
        time_rate,
    )


def boosted_field(u, constants: PhysicalConstants = NATURAL) -> VelocityFieldSpec:
    """Free particle at coordinate velocity ``u``, parametrized by proper time.

    Spatial four-velocity ``gamma u`` and ``dt/dtau = gamma`` so the
    Minkowski norm of the four-velocity is ``-c**2``.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    g = lorentz_gamma(u, constants)
    return constant_field(g * u, time_rate=g)


def lorentz_gamma(v, constants: PhysicalConstants = NATURAL) -> float:
    beta2 = float(np.sum(np.square(v))) / constants.c**2
    if not beta2 < 1.0:
        raise KinematicsError(f"|v| = {math.sqrt(beta2) * constants.c} is not below c")
    return 1.0 / math.sqrt(1.0 - beta2)


def linear_field(a: float = 1.0) -> VelocityFieldSpec:
    """``dx/dtau = a x`` in one dimension; divergence ``a`` everywhere."""
    return VelocityFieldSpec(1, lambda t, x: a * np.asarray(x, dtype=float),
                             lambda t, x: np.full(np.shape(x)[:-1], float(a)))


def harmonic_phase_field(omega: float) -> VelocityFieldSpec:
    """Oscillator in phase space, state ``(x, v)``: ``x' = v, v' = -omega**2 x``."""
    w2 = float(omega) ** 2

    def velocity(t, s):
        s = np.asarray(s, dtype=float)
        out = np.empty_like(s)
        out[..., 0] = s[..., 1]
        out[..., 1] = -w2 * s[..., 0]
        return out

    return VelocityFieldSpec(2, velocity, lambda t, s: np.zeros(np.shape(s)[:-1]))


def harmonic_drive_field(amplitude: float, omega: float) -> VelocityFieldSpec:
    """Oscillator world lines in classical spacetime: ``dx/dt = A cos(omega t)``, ``dt/dtau = 1``.

    Autonomous as a vector field on (t, x); divergence 0 and every world
    line returns to its start after ``2 pi / omega``.
    """
    A, w = float(amplitude), float(omega)
    return VelocityFieldSpec(
        1,
        lambda t, x: np.full(np.shape(x), A * np.cos(w * t)),
        lambda t, x: np.zeros(np.shape(x)[:-1]),
        autonomous=False,
    )


def sine_field(a: float, wavenumber: float = 1.0) -> VelocityFieldSpec:
    """Compressible 1-D field ``a sin(kappa x)``; divergence ``a kappa cos(kappa x)``."""
    a, k = float(a), float(wavenumber)
    return VelocityFieldSpec(1, lambda t, x: a * np.sin(k * np.asarray(x, dtype=float)),
                             lambda t, x: a * k * np.cos(k * np.asarray(x, dtype=float))[..., 0])
