"""Plane-wave bookkeeping for paraxial envelope fields.

Covers the map from a plane-wave vector to the carrier wavenumber ``k0``,
the exact circular polarization vectors on the paraxial constraint
surface, and the projection of an angular spectrum onto Fourier-LG modes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angmom import AmplitudeSet
from .errors import QuadratureResolutionError
from .modes import lg_momentum, order_basis
from .special import build_quadrature, default_nodes, default_radius

__all__ = [
    "WaveVector",
    "ParaxialRay",
    "PolarizationVector",
    "LGDecomposition",
    "dispersion_k0",
    "polarization",
    "amplitudes_to_lg",
    "resynthesize",
]


@dataclass(frozen=True)
class WaveVector:
    qx: float
    qy: float
    kz: float

    @property
    def q(self):
        return math.hypot(self.qx, self.qy)

    @property
    def norm(self):
        return math.sqrt(self.qx**2 + self.qy**2 + self.kz**2)


def dispersion_k0(k):
    """Carrier wavenumber ``f(k) = (kz + sqrt(kz^2 + 2 q^2)) / 2`` of a plane wave."""
    q2 = k.qx**2 + k.qy**2
    if q2 == 0.0 and k.kz <= 0.0:
        raise ValueError(f"f(k) must be positive; undefined for q = 0 and kz = {k.kz} <= 0")
    if k.kz >= 0:
        return 0.5 * (k.kz + math.sqrt(k.kz**2 + 2.0 * q2))
    # kz + sqrt(kz^2 + 2q^2) cancels for kz < 0; use the conjugate form
    return q2 / (math.sqrt(k.kz**2 + 2.0 * q2) - k.kz)


@dataclass(frozen=True)
class ParaxialRay:
    """Plane wave on the paraxial constraint surface ``kz = k0 (1 - vartheta^2)``.

    ``vartheta`` is derived from ``q`` and ``k0``, never stored.
    """

    k0: float
    qx: float
    qy: float = 0.0

    def __post_init__(self):
        if not self.k0 > 0:
            raise ValueError(f"k0 must be positive, got {self.k0}")

    @property
    def q(self):
        return math.hypot(self.qx, self.qy)

    @property
    def theta_param(self):
        return self.q / (self.k0 * math.sqrt(2.0))

    @property
    def kz(self):
        return self.k0 * (1.0 - self.theta_param**2)

    @property
    def wave_vector(self):
        return WaveVector(self.qx, self.qy, self.kz)

    @property
    def k_norm(self):
        return self.wave_vector.norm


@dataclass(frozen=True)
class PolarizationVector:
    """Circular polarization vector; ``components`` in the ``(u_rho, u_phi, u_z)`` frame."""

    sigma: int
    varphi: float
    components: np.ndarray

    def cartesian(self):
        c, s = math.cos(self.varphi), math.sin(self.varphi)
        er, ep, ez = self.components
        return np.array([c * er - s * ep, s * er + c * ep, ez])

    def dot(self, vec):
        """Bilinear (unconjugated) product with a Cartesian 3-vector."""
        return complex(self.cartesian() @ np.asarray(vec))


def polarization(sigma, q, varphi, k0):
    """Exact polarization vector ``epsilon_sigma[q, k0 (1 - vartheta^2)]``."""
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma}")
    if q < 0 or not k0 > 0:
        raise ValueError(f"need q >= 0 and k0 > 0, got q={q}, k0={k0}")
    t2 = (q / (k0 * math.sqrt(2.0))) ** 2
    root = math.sqrt(1.0 + t2 * t2)
    comps = np.array([(1.0 - t2) / root, -1j * sigma, -math.sqrt(2.0 * t2) / root])
    comps = comps * np.exp(-1j * sigma * varphi) / math.sqrt(2.0)
    return PolarizationVector(sigma, float(varphi), comps)


@dataclass(frozen=True)
class LGDecomposition:
    amplitudes: AmplitudeSet
    captured_fraction: dict
    input_norm: float

    @property
    def total_captured(self):
        return self.captured_fraction[max(self.captured_fraction)]


def amplitudes_to_lg(alpha_q, frame, basis_orders, sigma=1, quad=None, dk0=1.0):
    """Project an angular spectrum ``alpha(qx, qy)`` onto Fourier-LG modes.

    Parameters
    ----------
    alpha_q : callable
        ``alpha_q(qx, qy)`` returning complex samples for array inputs.
    frame : BeamFrame
        Sets the Fourier-LG waist and the ``k0`` bin of the result.
    basis_orders : int
        Highest mode order ``N = 2p + |l|`` retained.
    quad : Quadrature2D, optional
        Rule in spatial-frequency space. Defaults to radius
        ``6 sqrt(N+1) / w0`` with ``default_nodes(N)`` nodes per axis.

    Returns
    -------
    LGDecomposition
        Amplitudes (classical kind) plus the cumulative captured energy
        fraction per order.
    """
    if basis_orders < 0:
        raise ValueError(f"basis_orders must be >= 0, got {basis_orders}")
    if quad is None:
        quad = build_quadrature(default_radius(1.0 / frame.w0, basis_orders), default_nodes(basis_orders))
    qx, qy = quad.x, quad.y
    rho, varphi = np.hypot(qx, qy), np.arctan2(qy, qx)
    samples = np.asarray(alpha_q(qx, qy), dtype=complex)
    input_norm = float(quad.integrate(np.abs(samples) ** 2).real)
    if not input_norm > 0:
        raise ValueError("alpha_q vanishes on the quadrature nodes")

    entries = {}
    captured = {}
    running = 0.0
    for order in range(basis_orders + 1):
        for mode in order_basis(order):
            c = complex(quad.integrate(np.conj(lg_momentum(mode, frame, rho, varphi)) * samples))
            entries[(sigma, mode.l, mode.p, frame.k0)] = c
            running += abs(c) ** 2
        captured[order] = running / input_norm
    fractions = list(captured.values())
    # Bessel's inequality; exceeding it means the rule cannot resolve the modes
    if fractions[-1] > 1.0 + 1e-6 or any(b < a for a, b in zip(fractions, fractions[1:])):
        raise QuadratureResolutionError(
            f"captured fraction {fractions[-1]:.9g} not monotone/bounded; refine the quadrature"
        )
    amps = AmplitudeSet(entries, kind="classical", dk0=dk0)
    return LGDecomposition(amps, captured, input_norm)


def resynthesize(amplitudes, frame, qx, qy, sigma=1):
    """Sum ``alpha_{sigma,l,p} FLG_{l,p}(q)`` at the ``k0`` of ``frame``."""
    qx = np.asarray(qx, dtype=float)
    qy = np.asarray(qy, dtype=float)
    rho, varphi = np.hypot(qx, qy), np.arctan2(qy, qx)
    out = np.zeros(np.broadcast(qx, qy).shape, dtype=complex)
    for (s, l, p, k0), c in amplitudes.entries.items():
        if s == sigma and k0 == frame.k0:
            out += c * lg_momentum((l, p), frame, rho, varphi)
    return out
