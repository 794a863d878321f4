"""Wavefunction transport along spacetime characteristic flows.

The solution operator is a weighted composition operator. Initial data are
pulled back along the flow and multiplied by a divergence weight times a
unit-modulus action phase.
"""

from .core import (
    NATURAL,
    SI,
    ActionPhase,
    IntegrationError,
    KinematicsError,
    MassWavenumber,
    PhysicalConstants,
    RQTEError,
    SpacetimePoint,
    UnitSystem,
    ValidationError,
    WavefunctionGrid,
    make_constants,
    mass_from_wavenumber,
)
from .flow import (
    Trajectory,
    VelocityFieldSpec,
    action_integral,
    backward_point,
    divergence_integral,
    integrate_flow,
)
from .lagrangian import LagrangianKind, LagrangianSpec, eval_classical, eval_fock, g00_from_potential
from .propagator import DivergenceWeight, PropagatorConfig, compose_check, evolve_grid, evolve_point, grid_norm

__version__ = "0.1.0"
