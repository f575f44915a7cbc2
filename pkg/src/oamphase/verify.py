"""Invariant suites run by ``oamphase verify``.

Each suite returns a list of :class:`Check`; randomized sampling draws from
``numpy.random.default_rng(seed)`` so reports are reproducible.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import phasespace as ps
from .modes import BeamFrame, lg_position, order_basis
from .poincare import build_generators, rotate, unit_radial
from .special import build_quadrature, default_nodes, default_radius

__all__ = ["Check", "SUITES", "run_suite", "report", "sphere_poles", "DESIGN_POINTS", "random_zeta"]

# five (theta, phi) points: both poles, the equator, and two generic points
DESIGN_POINTS = ((0.0, 0.0), (math.pi / 3, 1.1), (math.pi / 2, 0.0), (2.5, 4.0), (math.pi, 0.5))


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.residual < self.tolerance)

    def as_dict(self):
        return dict(asdict(self), passed=self.passed)


def sphere_poles(max_order):
    """Pole labels ``(l, p)`` with ``l >= 0`` and ``2p + l <= max_order``."""
    return [m for n in range(max_order + 1) for m in order_basis(n) if m.l >= 0]


def random_zeta(rng, frame, count, spread=2.0):
    """Phase-space points uniform in ``[-spread, spread]`` of each normalized coordinate."""
    u = rng.uniform(-spread, spread, size=(4, count))
    sx = frame.w0 / math.sqrt(2.0)
    sp = frame.w0 / (math.sqrt(2.0) * frame.z0)
    return ps.PhaseSpacePoint(u[0] * sx, u[1] * sx, u[2] * sp, u[3] * sp)


def suite_modes(frame, rng, tol=None):
    checks = []
    worst = 0.0
    for n in range(5):
        quad = build_quadrature(default_radius(frame.w0, n), default_nodes(n))
        r, ph = np.hypot(quad.x, quad.y), np.arctan2(quad.y, quad.x)
        modes = [m for k in range(n + 1) for m in order_basis(k)]
        vals = np.array([lg_position(m, frame, r, ph) for m in modes])
        gram = (vals.conj() * quad.weights) @ vals.T
        worst = max(worst, float(np.abs(gram - np.eye(len(modes))).max()))
    checks.append(Check("lg_orthonormality_N<=4", worst, tol or 1e-8))

    c = rotate((1, 0), 1.234, 0.567).coeffs
    ref = np.array([math.cos(0.617), np.exp(0.567j) * math.sin(0.617)])
    checks.append(Check("n1_rotation_coefficients", float(np.abs(c - ref).max()), tol or 1e-12))

    comm = cas = 0.0
    for n in range(7):
        g = build_generators(n)
        comm = max(comm, g.commutator_residual())
        j = n / 2
        cas = max(cas, float(np.abs(g.casimir() - j * (j + 1) * np.eye(n + 1)).max()))
    checks.append(Check("su2_commutators", comm, tol or 1e-10))
    checks.append(Check("su2_casimir", cas, tol or 1e-10))
    return checks


def suite_symplectic(frame, rng, tol=None):
    det_res = sym_res = 0.0
    for _ in range(1000):
        theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        fr = BeamFrame(frame.w0 * rng.uniform(0.5, 2.0), frame.k0 * rng.uniform(0.5, 2.0))
        T = ps.transfer_matrix(theta, phi, fr)
        det_res = max(det_res, abs(T.det - 1.0))
        sym_res = max(sym_res, T.symplectic_residual())
    return [Check("det_T", det_res, tol or 1e-12), Check("T_Lambda_Tt", sym_res, tol or 1e-12)]


def suite_wigner(frame, rng, tol=None):
    floor = 1e-8 * frame.k0**2 / math.pi**2
    rel = 0.0
    for mode in sphere_poles(3):
        for theta, phi in DESIGN_POINTS:
            state = rotate(mode, theta, phi)
            zeta = random_zeta(rng, frame, 20)
            closed = ps.wigner_closed(state, zeta, frame)
            oracle, _ = ps.wigner_oracle(state, zeta, frame)
            rel = max(rel, float((np.abs(closed - oracle) / np.maximum(np.abs(oracle), floor)).max()))
    law = 0.0
    scale = frame.k0**2 / math.pi**2
    for mode in sphere_poles(4):
        theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        state = rotate(mode, theta, phi)
        pole = rotate(mode, 0.0, 0.0)
        zeta = random_zeta(rng, frame, 100)
        back = ps.transfer_matrix(theta, phi, frame).apply_inverse(zeta)
        diff = ps.wigner_closed(state, zeta, frame) - ps.wigner_closed(pole, back, frame)
        law = max(law, float(np.abs(diff).max()) / scale)
    return [Check("closed_vs_oracle_rel", rel, tol or 1e-6), Check("point_transformation_law", law, tol or 1e-10)]


def suite_overlap(frame, rng, tol=None):
    quad_res = 0.0
    rule = ps.phase_space_rule(frame, exponent=2.0)
    for mode in sphere_poles(2):
        for _ in range(3):
            a = rotate(mode, rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
            b = rotate(mode, rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
            quad_res = max(quad_res, abs(ps.overlap(a, b) - ps.overlap_phase_space(a, b, frame, rule)))
    zeros = 0.0
    for l in range(1, 5):
        theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        a = rotate((l, 0), theta, phi)
        b = rotate((l, 0), math.pi - theta, phi + math.pi)
        zeros = max(zeros, ps.overlap(a, b))
        zeros = max(zeros, ps.overlap_closed(l, 1, (l + 1) / (l + 2)))
    same = 0.0
    for p in range(4):
        a = rotate((0, p), 0.7, 0.2)
        b = rotate((0, p), math.pi - 0.7, 0.2 + math.pi)
        same = max(same, abs(ps.overlap(a, b) - 1.0))
    return [
        Check("closed_vs_phase_space", quad_res, tol or 1e-4),
        Check("orthogonal_points", zeros, tol or 1e-10),
        Check("l0_antipodes_identical", same, tol or 1e-10),
    ]


def suite_angmom(frame, rng, tol=None):
    gen_res = ps_res = 0.0
    for mode in sphere_poles(4):
        theta, phi = rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi)
        state = rotate(mode, theta, phi)
        expected = 0.5 * mode.l * unit_radial(theta, phi)
        gens = build_generators(mode.order)
        gen_res = max(gen_res, float(np.abs(gens.expectation(state.coeffs) - expected).max()))
        ps_res = max(ps_res, float(np.abs(ps.expectation_L_phase_space(state, frame) - expected).max()))
    lz = 0.0
    for mode in sphere_poles(4):
        gens = build_generators(mode.order)
        for theta in np.linspace(0, math.pi, 11):
            state = rotate(mode, float(theta), 0.3)
            lz = max(lz, abs(2 * gens.expectation(state.coeffs)[2] - mode.l * math.cos(theta)))
    slack = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 7))
        mode = order_basis(n)[int(rng.integers(0, n + 1))]
        state = rotate(mode, rng.uniform(0, math.pi), rng.uniform(0, 2 * math.pi))
        gens = build_generators(n)
        var = np.maximum(gens.variance(state.coeffs), 0.0)
        bound = 0.5 * abs(gens.expectation(state.coeffs)[2])
        slack = max(slack, bound - math.sqrt(var[0] * var[1]))
    return [
        Check("L_generator_route", gen_res, tol or 1e-10),
        Check("L_phase_space_route", ps_res, tol or 1e-4),
        Check("Lz_equals_l_cos_theta", lz, tol or 1e-10),
        # residual is the violation of dLx dLy >= |<Lz>|/2; negative means satisfied
        Check("uncertainty_bound", max(slack, 0.0), tol or 1e-10),
    ]


SUITES = {
    "modes": suite_modes,
    "symplectic": suite_symplectic,
    "wigner": suite_wigner,
    "overlap": suite_overlap,
    "angmom": suite_angmom,
}


def run_suite(name, frame=None, seed=0, tol=None):
    frame = frame or BeamFrame()
    names = list(SUITES) if name == "all" else [name]
    checks = []
    for n in names:
        rng = np.random.default_rng([seed, list(SUITES).index(n)])
        checks.extend(Check(f"{n}.{c.name}", c.residual, c.tolerance) for c in SUITES[n](frame, rng, tol))
    return checks


def report(name, checks):
    return {
        "suite": name,
        "checks": [c.as_dict() for c in checks],
        "max_residual": max((c.residual for c in checks), default=0.0),
        "pass": all(c.passed for c in checks),
    }
