"""Optical phase space: Wigner functions, symplectic maps, overlaps.

Phase-space points are ``zeta = (x, y, px, py)`` with ``p`` the transverse
wave vector normalized by ``k0``; the reduced wavelength ``1/k0`` plays the
role of hbar. Functions accept scalars or arrays for each component and
broadcast.

The closed-form Wigner function is evaluated at the waist plane (width
``w0``); propagation to another plane is the shear ``galilean_boost``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConsistencyError
from .modes import lg_momentum
from .poincare import build_generators, unit_radial
from .special import build_quadrature, laguerre

__all__ = [
    "PhaseSpacePoint",
    "QuadraticForms",
    "SymplecticT",
    "PhaseSpaceRule",
    "SYMPLECTIC_METRIC",
    "quadratic_forms",
    "transfer_matrix",
    "boost_matrix",
    "galilean_boost",
    "wigner_closed",
    "wigner_oracle",
    "tau",
    "overlap_closed",
    "overlap",
    "overlap_phase_space",
    "phase_space_rule",
    "expectation_L",
    "expectation_L_phase_space",
]

SYMPLECTIC_METRIC = np.block([[np.zeros((2, 2)), np.eye(2)], [-np.eye(2), np.zeros((2, 2))]])
SYMPLECTIC_METRIC.setflags(write=False)


class PhaseSpacePoint(NamedTuple):
    x: float
    y: float
    px: float
    py: float


class QuadraticForms(NamedTuple):
    q0: np.ndarray
    qx: np.ndarray
    qy: np.ndarray
    qz: np.ndarray

    @property
    def vector(self):
        return np.stack([self.qx, self.qy, self.qz], axis=-1)


def quadratic_forms(zeta, frame):
    """``Q0`` and the Weyl symbols ``Q = (Qx, Qy, Qz)`` of the SU(2) generators."""
    x, y, px, py = (np.asarray(c, dtype=float) for c in zeta)
    w0, lam, z0 = frame.w0, frame.reduced_wavelength, frame.z0
    q0 = 2.0 * (x * x + y * y + (px * px + py * py) * z0 * z0) / (w0 * w0)
    qx = (x * x - y * y) / (2 * w0 * w0) + (px * px - py * py) * w0 * w0 / (8 * lam * lam)
    qy = x * y / (w0 * w0) + px * py * w0 * w0 / (4 * lam * lam)
    qz = (x * py - y * px) / (2 * lam)
    return QuadraticForms(q0, qx, qy, qz)


@dataclass(frozen=True)
class SymplecticT:
    """Ray-transfer matrix of the sphere rotation ``(theta, phi)``."""

    matrix: np.ndarray
    theta: float
    phi: float
    z0: float

    @property
    def det(self):
        return float(np.linalg.det(self.matrix))

    def symplectic_residual(self):
        T, L = self.matrix, SYMPLECTIC_METRIC
        return max(float(np.abs(T @ L @ T.T - L).max()), float(np.abs(T.T @ L @ T - L).max()))

    def inverse(self):
        # T^{-1} = -L T^t L for symplectic T
        L = SYMPLECTIC_METRIC
        return -L @ self.matrix.T @ L

    def apply_inverse(self, zeta):
        return _apply(self.inverse(), zeta)


def _apply(M, zeta):
    comps = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in zeta))
    stacked = np.stack(comps, axis=0)
    out = np.tensordot(M, stacked, axes=1)
    return tuple(out)


def transfer_matrix(theta, phi, frame):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    cp, sp = math.cos(phi), math.sin(phi)
    z0 = frame.z0
    T = np.array(
        [
            [c, 0.0, -z0 * s * sp, z0 * s * cp],
            [0.0, c, z0 * s * cp, z0 * s * sp],
            [s * sp / z0, -s * cp / z0, c, 0.0],
            [-s * cp / z0, -s * sp / z0, 0.0, c],
        ]
    )
    T.setflags(write=False)
    return SymplecticT(T, float(theta), float(phi), z0)


def boost_matrix(z):
    """Shear ``r -> r - z p`` as a 4x4 matrix."""
    M = np.eye(4)
    M[0, 2] = M[1, 3] = -z
    return M


def galilean_boost(zeta, z):
    x, y, px, py = (np.asarray(c, dtype=float) for c in zeta)
    return PhaseSpacePoint(x - z * px, y - z * py, px, py)


def _wigner_from_forms(forms, l, order, u_r, frame):
    proj = forms.qx * u_r[0] + forms.qy * u_r[1] + forms.qz * u_r[2]
    # Q0 - 4|Q.u| >= 0 exactly; clip rounding below zero
    lower = np.maximum(forms.q0 - 4.0 * proj, 0.0)
    upper = np.maximum(forms.q0 + 4.0 * proj, 0.0)
    lam = frame.reduced_wavelength
    pref = (-1) ** order / (math.pi**2 * lam * lam)
    return pref * np.exp(-forms.q0) * laguerre((order - l) // 2, 0, lower) * laguerre((order + l) // 2, 0, upper)


def wigner_closed(state, zeta, frame):
    """Closed-form Wigner function of a sphere state at ``zeta``."""
    forms = quadratic_forms(zeta, frame)
    return _wigner_from_forms(forms, state.l, state.order, unit_radial(state.theta, state.phi), frame)


def _momentum_wavefunction(state, frame, px, py):
    # psi(p) = k0 * sum_i c_i FLG_i(k0 p), normalized over d^2p
    k0 = frame.k0
    rho, varphi = k0 * np.hypot(px, py), np.arctan2(py, px)
    out = np.zeros(np.broadcast(px, py).shape, dtype=complex)
    for m, c in zip(state.basis, state.coeffs):
        if c != 0:
            out += c * lg_momentum(m, frame, rho, varphi)
    return k0 * out


def oracle_rule(frame, half_width=20.0, nodes_per_axis=128):
    """Gauss-Legendre rule over the Wigner shift ``xi``; ``half_width`` in units of ``1/(w0 k0)``."""
    return build_quadrature(half_width / (frame.w0 * frame.k0), nodes_per_axis)


def wigner_oracle(state, zeta, frame, quad=None):
    """Brute-force Wigner function from its defining integral over ``xi``.

    Returns ``(value, error_estimate)``; the estimate is the difference
    from the same integral on a rule with half the nodes per axis (same
    truncation), plus the discarded imaginary part.
    """
    if quad is None:
        quad = oracle_rule(frame)
    coarse = build_quadrature(quad.domain_radius, max(16, quad.nodes_per_axis // 2))
    x, y, px, py = np.broadcast_arrays(*(np.asarray(c, dtype=float) for c in zeta))
    shape = x.shape
    x, y, px, py = (a.reshape(-1, 1) for a in (x, y, px, py))
    lam = frame.reduced_wavelength

    def integrate(rule):
        xi_x, xi_y = rule.x[None, :], rule.y[None, :]
        plus = _momentum_wavefunction(state, frame, px + 0.5 * xi_x, py + 0.5 * xi_y)
        minus = _momentum_wavefunction(state, frame, px - 0.5 * xi_x, py - 0.5 * xi_y)
        kernel = np.exp(1j * (x * xi_x + y * xi_y) / lam)
        return (kernel * plus * np.conj(minus)) @ rule.weights / (2 * math.pi * lam) ** 2

    fine = integrate(quad)
    rough = integrate(coarse)
    value = fine.real.reshape(shape)
    err = (np.abs(fine - rough) + np.abs(fine.imag)).reshape(shape)
    if value.ndim == 0:
        return float(value), float(err)
    return value, err


def tau(theta_a, phi_a, theta_b, phi_b):
    """``cos^2`` of half the angle between two points on the sphere."""
    dphi = 0.5 * (phi_a - phi_b)
    return (
        math.cos(0.5 * (theta_a - theta_b)) ** 2 * math.cos(dphi) ** 2
        + math.cos(0.5 * (theta_a + theta_b)) ** 2 * math.sin(dphi) ** 2
    )


def overlap_closed(l, p, tau_value):
    """``|<a|b>|^2`` for two points on the same sphere separated by ``tau``.

    The ``tau^N ((1-tau)/tau)^k`` powers are folded into
    ``sqrt(tau)^(N-2k) (1-tau)^k`` inside the sum, so ``tau = 0`` is regular.
    """
    a = abs(l)
    order = 2 * p + a
    t = min(max(float(tau_value), 0.0), 1.0)
    root = math.sqrt(t)
    total = 0.0
    for k in range(p + 1):
        total += (-1) ** k * math.comb(p + a, k) * math.comb(p, k) * root ** (order - 2 * k) * (1.0 - t) ** k
    return total * total


def overlap(state_a, state_b):
    """``|<a|b>|^2`` between two sphere states.

    States on the same sphere use the closed form in ``tau``; states of
    different order are orthogonal. Distinct poles of the same order (e.g.
    ``|2,0>`` and ``|0,1>``) are not covered by the closed form and fall
    back to the coefficient inner product.
    """
    if state_a.order != state_b.order:
        return 0.0
    if state_a.mode == state_b.mode:
        t = tau(state_a.theta, state_a.phi, state_b.theta, state_b.phi)
        return overlap_closed(state_a.l, state_a.p, t)
    return float(abs(np.vdot(state_a.coeffs, state_b.coeffs)) ** 2)


@dataclass(frozen=True)
class PhaseSpaceRule:
    """Tensor-product rule over ``R^4`` (points and weights in physical units)."""

    points: PhaseSpacePoint
    weights: np.ndarray
    exponent: float
    nodes_per_axis: int

    def integrate(self, func):
        """Integrate ``func(zeta)`` over phase space; ``func`` may return trailing axes."""
        vals = np.asarray(func(self.points))
        return np.tensordot(self.weights, vals, axes=(0, 0))


def phase_space_rule(frame, exponent=1.0, nodes_per_axis=12):
    """Gauss-Hermite rule for integrands ``exp(-exponent * Q0) * polynomial``.

    In the normalized variables ``u = sqrt(2) x / w0`` and
    ``v = sqrt(2) z0 p / w0`` the Gaussian factor separates per axis, and
    ``n`` nodes per axis integrate polynomial factors up to degree
    ``2n - 1`` per variable exactly. Use ``exponent=1`` for integrals
    linear in a Wigner function and ``exponent=2`` for products of two.
    """
    t, w = np.polynomial.hermite.hermgauss(nodes_per_axis)
    u = t / math.sqrt(exponent)
    wu = w * np.exp(t * t) / math.sqrt(exponent)
    sx = frame.w0 / math.sqrt(2.0)
    sp = frame.w0 / (math.sqrt(2.0) * frame.z0)
    grids = np.meshgrid(u, u, u, u, indexing="ij")
    wgrid = np.einsum("i,j,k,l->ijkl", wu, wu, wu, wu).ravel() * (sx * sx * sp * sp)
    x, y, px, py = (g.ravel() for g in grids)
    pts = PhaseSpacePoint(x * sx, y * sx, px * sp, py * sp)
    return PhaseSpaceRule(pts, wgrid, float(exponent), int(nodes_per_axis))


def overlap_phase_space(state_a, state_b, frame, rule=None):
    """``(2 pi lambda)^2 int W_a W_b d^4 zeta`` by quadrature."""
    rule = rule or phase_space_rule(frame, exponent=2.0)
    lam = frame.reduced_wavelength
    val = rule.integrate(lambda z: wigner_closed(state_a, z, frame) * wigner_closed(state_b, z, frame))
    return float((2 * math.pi * lam) ** 2 * val)


def expectation_L_phase_space(state, frame, rule=None):
    """``int L(zeta) W(zeta) d^4 zeta`` with the Weyl symbols of the generators."""
    rule = rule or phase_space_rule(frame)

    def integrand(z):
        forms = quadratic_forms(z, frame)
        return forms.vector * wigner_closed(state, z, frame)[:, None]

    return np.asarray(rule.integrate(integrand), dtype=float)


def expectation_L(state, frame, rule=None, tol=1e-6):
    """Expectation of the SU(2) generators, cross-checked in phase space.

    The generator-matrix value is returned; a
    :class:`~oamphase.errors.ConsistencyError` is raised if the
    phase-space integral differs by more than ``tol``.
    """
    gens = build_generators(state.order)
    direct = gens.expectation(state.coeffs)
    integral = expectation_L_phase_space(state, frame, rule)
    diff = float(np.abs(direct - integral).max())
    if diff > tol:
        raise ConsistencyError(f"<L> routes disagree by {diff:.3g} (> {tol:g})")
    return direct
