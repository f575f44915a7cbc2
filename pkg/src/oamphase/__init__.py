"""Orbital angular momentum of paraxial light on Poincare spheres.

Laguerre-Gauss modes, SU(2) rotations within an order-``N`` subspace,
closed-form Wigner functions and overlaps, and a small CLI.
"""
from .errors import ConfigurationError, ConsistencyError, OutputError, QuadratureResolutionError
from .modes import BeamFrame, ComplexField2D, GridSpec, ModeIndex, lg_field, lg_momentum, lg_position, order_basis
from .poincare import GeneratorMatrices, SphereState, build_generators, rotate, sphere_coefficients, synthesize_field
from .phasespace import (
    PhaseSpacePoint,
    expectation_L,
    overlap,
    overlap_closed,
    transfer_matrix,
    wigner_closed,
    wigner_oracle,
)
from .angmom import AmplitudeSet, orbital_z, spin_z
from .io import RunConfig

__version__ = "0.1.0"
