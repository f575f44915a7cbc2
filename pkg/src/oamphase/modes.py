"""Laguerre-Gaussian and Hermite-Gaussian paraxial modes.

Position-space modes are normalized over the transverse plane at every
``z``; the Fourier-LG profiles are their transverse spectra at ``z = 0``
with the convention ``F(q) = (1/2pi) int d^2r exp(-i q.r) f(r)``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .special import hermite, laguerre, log_norm_lg

__all__ = [
    "BeamFrame",
    "ModeIndex",
    "GridSpec",
    "ComplexField2D",
    "ClosureExpansion",
    "order_basis",
    "lg_position",
    "lg_momentum",
    "hg_position",
    "lg_field",
    "closure_expand",
    "default_grid",
]


@dataclass(frozen=True)
class BeamFrame:
    """Waist ``w0`` and carrier wavenumber ``k0`` of a paraxial beam."""

    w0: float = 1.0
    k0: float = 100.0

    def __post_init__(self):
        if not (self.w0 > 0 and self.k0 > 0):
            raise ValueError(f"w0 and k0 must be positive, got w0={self.w0}, k0={self.k0}")
        if self.w0 * self.k0 < 10:
            warnings.warn(
                f"w0*k0 = {self.w0 * self.k0:.3g} < 10: beam is not well inside the paraxial regime",
                stacklevel=3,
            )

    @property
    def z0(self):
        """Rayleigh range ``k0 w0^2 / 2``."""
        return 0.5 * self.k0 * self.w0**2

    @property
    def reduced_wavelength(self):
        return 1.0 / self.k0

    @property
    def paraxiality(self):
        return self.w0 * self.k0

    def width(self, z):
        return self.w0 * np.sqrt(1.0 + (np.asarray(z, dtype=float) / self.z0) ** 2)


class ModeIndex(NamedTuple):
    """LG labels: topological charge ``l`` and radial index ``p``."""

    l: int
    p: int = 0

    @property
    def order(self):
        return 2 * self.p + abs(self.l)

    def validate(self):
        if self.p < 0:
            raise ValueError(f"radial index p must be >= 0, got {self.p}")
        return self


def order_basis(order):
    """LG modes of order ``N`` ordered by ``l = N, N-2, ..., -N``."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    return tuple(ModeIndex(l, (order - abs(l)) // 2) for l in range(order, -order - 1, -2))


def _curvature_and_gouy(frame, r2, z, order):
    # k0 r^2 / (2 R(z)) written without the z = 0 singularity of R(z)
    z = np.asarray(z, dtype=float)
    curvature = frame.k0 * r2 * z / (2.0 * (z * z + frame.z0**2))
    gouy = -(order + 1) * np.arctan(z / frame.z0)
    return curvature + gouy


def lg_position(mode, frame, r, phi, z=0.0):
    """``LG_{l,p}(r, phi, z; k0)`` including curvature and Gouy phases."""
    l, p = int(mode[0]), int(mode[1])
    a = abs(l)
    r = np.asarray(r, dtype=float)
    w = frame.width(z)
    s = 2.0 * r * r / (w * w)
    amp = np.exp(log_norm_lg(l, p)) / w * np.sqrt(s) ** a * laguerre(p, a, s) * np.exp(-0.5 * s)
    phase = l * np.asarray(phi, dtype=float) + _curvature_and_gouy(frame, r * r, z, 2 * p + a)
    return amp * np.exp(1j * phase)


def lg_momentum(mode, frame, rho, varphi):
    """Fourier-transformed LG profile at ``z = 0`` in spatial-frequency polar coordinates."""
    l, p = int(mode[0]), int(mode[1])
    a = abs(l)
    rho = np.asarray(rho, dtype=float)
    w0 = frame.w0
    s = 0.5 * (w0 * rho) ** 2
    log_pref = 0.5 * (2.0 * math.log(w0) + math.lgamma(p + 1) - math.log(2.0 * math.pi) - math.lgamma(a + p + 1))
    amp = math.exp(log_pref) * np.sqrt(s) ** a * laguerre(p, a, s) * np.exp(-0.5 * s)
    phase = l * np.asarray(varphi, dtype=float) - 0.5 * math.pi * (2 * p + a)
    return amp * np.exp(1j * phase)


def hg_position(nx, ny, frame, x, y, z=0.0):
    """Normalized Hermite-Gaussian mode ``HG_{nx,ny}`` with the LG frame conventions."""
    if nx < 0 or ny < 0:
        raise ValueError(f"HG indices must be >= 0, got ({nx}, {ny})")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = frame.width(z)
    order = nx + ny
    log_pref = 0.5 * (
        math.log(2.0 / math.pi) - order * math.log(2.0) - math.lgamma(nx + 1) - math.lgamma(ny + 1)
    )
    u = math.sqrt(2.0) * x / w
    v = math.sqrt(2.0) * y / w
    amp = math.exp(log_pref) / w * hermite(nx, u) * hermite(ny, v) * np.exp(-0.5 * (u * u + v * v))
    return amp * np.exp(1j * _curvature_and_gouy(frame, x * x + y * y, z, order))


@dataclass(frozen=True)
class GridSpec:
    """Square sampling grid ``[-extent, extent]^2`` with ``resolution`` points per side."""

    extent: float
    resolution: int = 256

    def __post_init__(self):
        if not self.extent > 0:
            raise ValueError(f"grid extent must be positive, got {self.extent}")
        if self.resolution < 2:
            raise ValueError(f"grid resolution must be >= 2, got {self.resolution}")

    @property
    def axis(self):
        return np.linspace(-self.extent, self.extent, self.resolution)

    @property
    def spacing(self):
        return 2.0 * self.extent / (self.resolution - 1)

    def mesh(self):
        """``(X, Y)`` arrays in row-major order: rows follow ``y``, columns ``x``."""
        return np.meshgrid(self.axis, self.axis, indexing="xy")


def default_grid(frame, order, resolution=256):
    return GridSpec(4.0 * frame.w0 * math.sqrt(order + 1), resolution)


@dataclass(frozen=True)
class ComplexField2D:
    grid: GridSpec
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = self.grid.resolution
        if self.samples.shape != (n, n):
            raise ValueError(f"expected samples of shape {(n, n)}, got {self.samples.shape}")

    @property
    def intensity(self):
        return np.abs(self.samples) ** 2

    @property
    def phase(self):
        return np.angle(self.samples)


def lg_field(mode, frame, grid, z=0.0):
    X, Y = grid.mesh()
    return ComplexField2D(grid, lg_position(mode, frame, np.hypot(X, Y), np.arctan2(Y, X), z))


class ClosureExpansion(NamedTuple):
    """Truncated closure sum.

    ``value`` is the plain partial sum through ``max_order``;
    ``cesaro_value`` is the arithmetic mean of the partial sums of orders
    ``0..max_order``. The series converges only conditionally pointwise
    (error of order ``max_order**-0.5``); the Cesaro mean converges much
    faster and is the practical convergence indicator.
    """

    value: complex
    cesaro_value: complex
    max_order: int
    target: complex
    residual: float
    cesaro_residual: float


def closure_expand(q, frame, r_perp, z=0.0, max_order=20):
    """Truncated LG closure sum for a paraxial plane wave.

    Sums ``conj(FLG_{l,p}(q)) LG_{l,p}(r, z)`` over all modes with
    ``2p + |l| <= max_order``. For orthonormal position and Fourier bases
    the full sum is the kernel ``<r|q> = exp[i(q.r - q^2 z / (2 k0))] / (2 pi)``,
    which is reported as ``target``.
    """
    if max_order < 0:
        raise ValueError(f"max_order must be >= 0, got {max_order}")
    qx, qy = map(float, q)
    x, y = map(float, r_perp)
    rho, varphi = math.hypot(qx, qy), math.atan2(qy, qx)
    r, phi = math.hypot(x, y), math.atan2(y, x)
    total = 0j
    running = 0j
    for order in range(max_order + 1):
        for mode in order_basis(order):
            total += complex(np.conj(lg_momentum(mode, frame, rho, varphi)) * lg_position(mode, frame, r, phi, z))
        running += total
    cesaro = running / (max_order + 1)
    # k0 vartheta^2 = q^2 / (2 k0)
    target = complex(np.exp(1j * (qx * x + qy * y - rho * rho * z / (2.0 * frame.k0)))) / (2.0 * math.pi)
    return ClosureExpansion(total, cesaro, max_order, target, abs(total - target), abs(cesaro - target))
