"""Dirac matrices in the standard representation and bilinears of boosted spinors.

Bilinears take the conjugate transpose on the left operand. With it the
diagonal bilinears of the four boosted spinors reduce to ``gamma``,
``+-1`` and ``v_j gamma / c``, which is what turns the Dirac equation for
a fixed spinor into a scalar transport equation with ``L = -+ m c^2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import NATURAL, PhysicalConstants, ValidationError
from .flow import lorentz_gamma

_I4 = np.eye(4, dtype=complex)


@dataclass(frozen=True)
class DiracMatrices:
    beta: np.ndarray
    alpha1: np.ndarray
    alpha2: np.ndarray
    alpha3: np.ndarray

    @property
    def alphas(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.alpha1, self.alpha2, self.alpha3)


def dirac_matrices() -> DiracMatrices:
    j = 1j
    beta = np.diag([1, 1, -1, -1]).astype(complex)
    a1 = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=complex)
    a2 = np.array([[0, 0, 0, -j], [0, 0, j, 0], [0, -j, 0, 0], [j, 0, 0, 0]], dtype=complex)
    a3 = np.array([[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]], dtype=complex)
    for m in (beta, a1, a2, a3):
        m.setflags(write=False)
    return DiracMatrices(beta, a1, a2, a3)


MATRICES = dirac_matrices()


def algebra_residuals(mats: DiracMatrices = MATRICES) -> dict[str, float]:
    """Max-entry residuals of the algebra identities, keyed by relation."""
    named = {"beta": mats.beta, "alpha1": mats.alpha1, "alpha2": mats.alpha2, "alpha3": mats.alpha3}
    out = {}
    for name, m in named.items():
        out[f"hermitian[{name}]"] = float(np.abs(m - m.conj().T).max())
        out[f"square[{name}]"] = float(np.abs(m @ m - _I4).max())
    names = list(named)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            ma, mb = named[a], named[b]
            out[f"anticommutator[{a},{b}]"] = float(np.abs(ma @ mb + mb @ ma).max())
    return out


@dataclass(frozen=True)
class SpinorSet:
    u1: np.ndarray
    u2: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    n: float
    E: float
    p: np.ndarray
    gamma: float
    m: float
    v: np.ndarray
    constants: PhysicalConstants = NATURAL

    def __post_init__(self):
        c = self.constants.c
        if abs(self.E - self.m * c**2 * self.gamma) > 1e-12 * self.E:
            raise ValidationError("E != m c^2 gamma")
        if np.abs(self.p - self.m * self.gamma * self.v).max() > 1e-12 * self.m * c * self.gamma:
            raise ValidationError("p != m gamma v")

    def as_dict(self) -> dict[str, np.ndarray]:
        return {"u1": self.u1, "u2": self.u2, "v1": self.v1, "v2": self.v2}


def build_spinors(v, m: float, constants: PhysicalConstants = NATURAL) -> SpinorSet:
    """Free-particle spinors for a frame moving with 3-velocity ``v``."""
    v = np.asarray(v, dtype=float).reshape(3)
    if not m > 0:
        raise ValidationError(f"mass must be positive, got {m}")
    gamma = lorentz_gamma(v, constants)
    c = constants.c
    mc2 = m * c**2
    E = mc2 * gamma
    p = m * gamma * v
    n = math.sqrt((E + mc2) / (2 * mc2))
    d = E + mc2
    pz = p[2] * c / d
    pp = (p[0] + 1j * p[1]) * c / d
    pm = (p[0] - 1j * p[1]) * c / d
    u1 = n * np.array([1, 0, pz, pp], dtype=complex)
    u2 = n * np.array([0, 1, pm, -pz], dtype=complex)
    v1 = n * np.array([pz, pp, 1, 0], dtype=complex)
    v2 = n * np.array([pm, -pz, 0, 1], dtype=complex)
    return SpinorSet(u1, u2, v1, v2, n, E, p, gamma, m, v, constants)


def bilinear(left, M, right) -> complex:
    """``left^H M right``; ``M=None`` stands for the identity."""
    left = np.asarray(left, dtype=complex)
    right = np.asarray(right, dtype=complex)
    if M is None:
        return complex(np.vdot(left, right))
    return complex(np.vdot(left, np.asarray(M) @ right))


@dataclass
class RelationReport:
    """Rows ``(name, value, expected, |value - expected|)`` of the bilinear table."""

    rows: list[tuple[str, complex, float, float]]

    @property
    def max_residual(self) -> float:
        return max(r[3] for r in self.rows)

    def __len__(self):
        return len(self.rows)


def verify_relation_table(s: SpinorSet, mats: DiracMatrices = MATRICES) -> RelationReport:
    """Evaluate the 20 spinor bilinears plus 4 anticommutator spot checks."""
    c = s.constants.c
    rows = []
    spinors = s.as_dict()
    for name, sp in spinors.items():
        val = bilinear(sp, None, sp)
        rows.append((f"{name}^H {name}", val, s.gamma, abs(val - s.gamma)))
    for name, sp in spinors.items():
        expected = 1.0 if name.startswith("u") else -1.0
        val = bilinear(sp, mats.beta, sp)
        rows.append((f"{name}^H beta {name}", val, expected, abs(val - expected)))
    for j, a in enumerate(mats.alphas, start=1):
        expected = s.v[j - 1] * s.gamma / c
        for name, sp in spinors.items():
            val = bilinear(sp, a, sp)
            rows.append((f"{name}^H alpha{j} {name}", val, expected, abs(val - expected)))
    a1, a2, _ = mats.alphas
    checks = [(f"{{alpha{j},beta}}", a, mats.beta) for j, a in enumerate(mats.alphas, start=1)]
    checks.append(("{alpha1,alpha2}", a1, a2))
    for name, x, y in checks:
        r = float(np.abs(x @ y + y @ x).max())
        rows.append((name, complex(r), 0.0, r))
    return RelationReport(rows)


def dirac_hamiltonian(p, m: float, constants: PhysicalConstants = NATURAL, mats: DiracMatrices = MATRICES) -> np.ndarray:
    """Momentum-space Dirac Hamiltonian ``c alpha . p + beta m c^2``."""
    p = np.asarray(p, dtype=float)
    c = constants.c
    return c * sum(pj * a for pj, a in zip(p, mats.alphas)) + mats.beta * m * c**2


def plane_wave_residual(s: SpinorSet, points, times, which: str = "u1", mats: DiracMatrices = MATRICES) -> float:
    """Max residual of the Dirac equation for a spinor plane wave at sample points.

    Positive-energy spinors are paired with ``exp(i (p.x - E t)/hbar)``,
    negative-energy spinors with ``exp(-i (p.x - E t)/hbar)``. The
    derivatives of the exponential are applied analytically.
    """
    hbar, c = s.constants.hbar, s.constants.c
    spinor = s.as_dict()[which]
    sign = 1.0 if which.startswith("u") else -1.0
    worst = 0.0
    for x, t in zip(np.atleast_2d(points), np.atleast_1d(times)):
        phase = np.exp(sign * 1j * (np.dot(s.p, x) - s.E * t) / hbar)
        psi = spinor * phase
        dt_psi = -sign * 1j * s.E / hbar * psi
        grad = [sign * 1j * pj / hbar * psi for pj in s.p]
        lhs = 1j * hbar * dt_psi
        rhs = -1j * hbar * c * sum(a @ g for a, g in zip(mats.alphas, grad)) + mats.beta @ psi * s.m * c**2
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


class Branch(enum.Enum):
    U_PLUS = "u+"
    U_MINUS = "u-"
    V_PLUS = "v+"
    V_MINUS = "v-"

    @property
    def spinor_name(self) -> str:
        return {"u+": "u1", "u-": "u2", "v+": "v1", "v-": "v2"}[self.value]

    @property
    def energy_sign(self) -> int:
        return 1 if self.value.startswith("u") else -1


def scalar_reduction_factor(branch: Branch, m: float, tau: float, constants: PhysicalConstants = NATURAL) -> complex:
    """``psi(tau)/psi(0)`` for ``i hbar D_tau psi = +-m c^2 psi`` (``+`` for positive energy)."""
    if not m > 0:
        raise ValidationError(f"mass must be positive, got {m}")
    phase = branch.energy_sign * m * constants.c**2 * tau / constants.hbar
    return complex(math.cos(phase), -math.sin(phase))


def reduced_lagrangian(branch: Branch, m: float, constants: PhysicalConstants = NATURAL) -> float:
    """Lagrangian whose transport equation reproduces the branch: ``-m c^2`` or ``+m c^2``."""
    return -branch.energy_sign * m * constants.c**2
