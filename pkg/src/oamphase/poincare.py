"""States on orbital Poincare spheres.

The SU(2) generators act within the order-``N`` LG subspace. In the HG
basis they take the two-mode Schwinger form

    Lx = (n_x - n_y) / 2
    Ly = (a_x^+ a_y + a_y^+ a_x) / 2
    Lz = -i (a_x^+ a_y - a_y^+ a_x) / 2

and are conjugated into the LG basis with the exact HG -> LG change of
basis. Sphere states are ``exp(-i theta L.u_phi)`` applied to a pole mode.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .modes import ComplexField2D, ModeIndex, lg_position, order_basis

__all__ = [
    "OrderNSubspace",
    "GeneratorMatrices",
    "SphereState",
    "hg_to_lg_matrix",
    "build_generators",
    "rotation_matrix",
    "rotate",
    "sphere_coefficients",
    "synthesize_field",
    "unit_radial",
]


@dataclass(frozen=True)
class OrderNSubspace:
    order: int
    basis: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", order_basis(self.order))

    @property
    def dimension(self):
        return self.order + 1

    def index(self, mode):
        mode = ModeIndex(*mode)
        if mode.order != self.order:
            raise ValueError(f"mode {tuple(mode)} has order {mode.order}, not {self.order}")
        return (self.order - mode.l) // 2


def _top_polynomial(l, p):
    """Coefficients of ``(X + i sgn(l) Y)^|l| (X^2 + Y^2)^p``, indexed by the power of ``Y``."""
    a = abs(l)
    s = 1j if l >= 0 else -1j
    first = [math.comb(a, j) * s**j for j in range(a + 1)]
    second = [0] * (2 * p + 1)
    for k in range(p + 1):
        second[2 * k] = math.comb(p, k)
    out = [0j] * (a + 2 * p + 1)
    for i, u in enumerate(first):
        for j, v in enumerate(second):
            out[i + j] += u * v
    return out


def hg_to_lg_matrix(order):
    """Unitary ``V`` with ``V[i, j] = <HG_{N-i, i} | LG_j>``.

    Every state of order ``N`` is fixed by the degree-``N`` part of its
    polynomial prefactor, so matching the leading terms of
    ``L_p^|l|`` times ``(X +- iY)^|l|`` against those of
    ``H_nx(X) H_ny(Y)`` gives the expansion exactly.
    """
    n = order + 1
    V = np.zeros((n, n), dtype=complex)
    for j, mode in enumerate(order_basis(order)):
        poly = _top_polynomial(mode.l, mode.p)
        sign = (-1) ** mode.p  # leading coefficient of L_p is (-1)^p / p!
        col = np.array([sign * poly[ny] * math.sqrt(math.factorial(order - ny) * math.factorial(ny)) for ny in range(n)])
        V[:, j] = col / np.linalg.norm(col)
    return V


def _schwinger_hg(order):
    n = order + 1
    nx = order - np.arange(n)
    Lx = np.diag((nx - (order - nx)) / 2.0).astype(complex)
    # a_x^+ a_y |nx, ny> = sqrt((nx+1) ny) |nx+1, ny-1>; index i = ny
    raise_x = np.zeros((n, n), dtype=complex)
    for i in range(1, n):
        raise_x[i - 1, i] = math.sqrt((nx[i] + 1) * i)
    Ly = 0.5 * (raise_x + raise_x.conj().T)
    Lz = -0.5j * (raise_x - raise_x.conj().T)
    return Lx, Ly, Lz


@dataclass(frozen=True)
class GeneratorMatrices:
    order: int
    Lx: np.ndarray
    Ly: np.ndarray
    Lz: np.ndarray

    def along(self, n):
        return n[0] * self.Lx + n[1] * self.Ly + n[2] * self.Lz

    def casimir(self):
        return self.Lx @ self.Lx + self.Ly @ self.Ly + self.Lz @ self.Lz

    def commutator_residual(self):
        """Max deviation of ``[L_i, L_j] - i eps_ijk L_k`` over the cyclic triples."""
        L = (self.Lx, self.Ly, self.Lz)
        worst = 0.0
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            res = L[i] @ L[j] - L[j] @ L[i] - 1j * L[k]
            worst = max(worst, float(np.abs(res).max(initial=0.0)))
        return worst

    def expectation(self, coeffs):
        c = np.asarray(coeffs)
        return np.array([np.vdot(c, M @ c).real for M in (self.Lx, self.Ly, self.Lz)])

    def variance(self, coeffs):
        c = np.asarray(coeffs)
        mean = self.expectation(c)
        second = np.array([np.vdot(c, M @ (M @ c)).real for M in (self.Lx, self.Ly, self.Lz)])
        return second - mean**2


def build_generators(order, frame=None):
    """SU(2) generators on the order-``N`` LG subspace (dimensionless; ``frame`` is not needed)."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    V = hg_to_lg_matrix(order)
    mats = [V.conj().T @ M @ V for M in _schwinger_hg(order)]
    mats = [0.5 * (M + M.conj().T) for M in mats]
    for M in mats:
        M.setflags(write=False)
    return GeneratorMatrices(order, *mats)


def unit_radial(theta, phi):
    return np.array([math.cos(phi) * math.sin(theta), math.sin(phi) * math.sin(theta), math.cos(theta)])


def rotation_matrix(generators, theta, phi):
    """``exp(-i theta L.u_phi)`` with ``u_phi = (-sin phi, cos phi, 0)``, via eigendecomposition."""
    axis = (-math.sin(phi), math.cos(phi), 0.0)
    evals, evecs = np.linalg.eigh(generators.along(axis))
    return (evecs * np.exp(-1j * theta * evals)) @ evecs.conj().T


def _fix_global_phase(c):
    top = c[0]
    if abs(top) > 1e-12:
        c = c * (abs(top) / top)
        c[0] = abs(top)
    return c


@dataclass(frozen=True)
class SphereState:
    """Point ``(theta, phi)`` on the sphere with pole ``mode``, as LG coefficients."""

    mode: ModeIndex
    theta: float
    phi: float
    coeffs: np.ndarray = field(repr=False)

    @property
    def order(self):
        return self.mode.order

    @property
    def basis(self):
        return order_basis(self.order)

    @property
    def l(self):
        return self.mode.l

    @property
    def p(self):
        return self.mode.p

    def to_json(self):
        doc = {
            "l": self.mode.l,
            "p": self.mode.p,
            "theta": self.theta,
            "phi": self.phi,
            "coeffs": [
                {"l": m.l, "p": m.p, "re": float(c.real), "im": float(c.imag)} for m, c in zip(self.basis, self.coeffs)
            ],
        }
        return json.dumps(doc, indent=2) + "\n"

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        mode = ModeIndex(int(doc["l"]), int(doc["p"]))
        coeffs = np.zeros(mode.order + 1, dtype=complex)
        space = OrderNSubspace(mode.order)
        for row in doc["coeffs"]:
            coeffs[space.index((row["l"], row["p"]))] = complex(row["re"], row["im"])
        coeffs.setflags(write=False)
        return cls(mode, float(doc["theta"]), float(doc["phi"]), coeffs)


def rotate(mode, theta, phi, frame=None, generators=None):
    """Sphere state ``exp(-i theta L.u_phi) |l, p>``.

    The coefficient of the highest-``l`` basis state is made real and
    non-negative when it is nonzero.
    """
    mode = ModeIndex(*mode).validate()
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    gens = generators if generators is not None else build_generators(mode.order)
    pole = np.zeros(mode.order + 1, dtype=complex)
    pole[OrderNSubspace(mode.order).index(mode)] = 1.0
    if theta == 0.0:
        coeffs = pole
    else:
        coeffs = _fix_global_phase(rotation_matrix(gens, theta, phi) @ pole)
    coeffs.setflags(write=False)
    return SphereState(mode, float(theta), float(phi), coeffs)


def sphere_coefficients(mode, theta, phi, frame=None):
    """Coefficients ``C_{l',p'}(theta, phi; l, p)`` in ``l' = N, N-2, ..., -N`` order."""
    return rotate(mode, theta, phi, frame).coeffs


def synthesize_field(state, frame, grid, z=0.0):
    """Transverse field of a sphere state sampled on ``grid`` at plane ``z``."""
    if grid.extent < 4.0 * frame.w0 * math.sqrt(state.order + 1):
        warnings.warn(
            f"grid extent {grid.extent:g} < 4 w0 sqrt(N+1); the mode may be clipped",
            stacklevel=2,
        )
    X, Y = grid.mesh()
    r, ph = np.hypot(X, Y), np.arctan2(Y, X)
    field_ = np.zeros(X.shape, dtype=complex)
    for m, c in zip(state.basis, state.coeffs):
        if c != 0:
            field_ += c * lg_position(m, frame, r, ph, z)
    return ComplexField2D(grid, field_)
