import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oamphase.errors import QuadratureResolutionError
from oamphase.fieldsynth import (
    ParaxialRay,
    WaveVector,
    amplitudes_to_lg,
    dispersion_k0,
    polarization,
    resynthesize,
)
from oamphase.modes import BeamFrame, lg_momentum
from oamphase.special import build_quadrature
from oracles import radial_overlap_l0


def test_dispersion_examples():
    assert dispersion_k0(WaveVector(0.0, 0.0, 5.0)) == pytest.approx(5.0, abs=1e-12)
    assert dispersion_k0(WaveVector(3.0, 4.0, 0.0)) == pytest.approx(5 / math.sqrt(2), abs=1e-12)


def test_dispersion_paraxial_limit():
    kz = 7.0
    f = dispersion_k0(WaveVector(1e-6 * kz, 0.0, kz))
    assert f / kz == pytest.approx(1.0, abs=1e-9)


def test_dispersion_backward_branch_is_stable():
    # kz + sqrt(kz^2 + 2q^2) cancels; the conjugate form keeps full precision
    k = WaveVector(1e-5, 0.0, -1.0)
    assert dispersion_k0(k) == pytest.approx(0.5e-10, rel=1e-9)


def test_dispersion_undefined_on_negative_axis():
    with pytest.raises(ValueError):
        dispersion_k0(WaveVector(0.0, 0.0, -1.0))


@given(st.floats(0.1, 100), st.floats(-3, 3), st.floats(-3, 3))
def test_dispersion_inverts_constraint_surface(k0, tx, ty):
    ray = ParaxialRay(k0, tx * k0, ty * k0)
    assert dispersion_k0(ray.wave_vector) == pytest.approx(k0, rel=1e-10)


@given(st.floats(0.1, 100), st.floats(0, 4))
def test_ray_norm(k0, t):
    ray = ParaxialRay(k0, t * k0)
    vt = ray.theta_param
    assert ray.k_norm == pytest.approx(k0 * math.sqrt(1 + vt**4), rel=1e-12)


def test_polarization_on_axis_example():
    eps = polarization(1, 0.0, 0.0, 1.0).cartesian()
    np.testing.assert_allclose(eps, np.array([1, -1j, 0]) / math.sqrt(2), atol=1e-15)


@given(st.sampled_from([1, -1]), st.floats(0, 500), st.floats(-7, 7), st.floats(0.5, 200))
def test_polarization_unit_norm_and_transverse(sigma, q, varphi, k0):
    eps = polarization(sigma, q, varphi, k0)
    assert np.vdot(eps.cartesian(), eps.cartesian()).real == pytest.approx(1.0, abs=1e-12)
    ray = ParaxialRay(k0, q * math.cos(varphi), q * math.sin(varphi))
    k = np.array([ray.qx, ray.qy, ray.kz])
    assert abs(eps.dot(k)) / ray.k_norm < 1e-12


def test_polarization_transverse_at_half_k0():
    for sigma in (1, -1):
        eps = polarization(sigma, 0.5, 0.0, 1.0)
        ray = ParaxialRay(1.0, 0.5)
        assert abs(eps.dot([ray.qx, ray.qy, ray.kz])) < 1e-12


def test_polarization_argument_errors():
    with pytest.raises(ValueError):
        polarization(0, 1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        polarization(1, -1.0, 0.0, 1.0)


def test_single_mode_projection(frame):
    dec = amplitudes_to_lg(lambda qx, qy: lg_momentum((1, 0), frame, np.hypot(qx, qy), np.arctan2(qy, qx)), frame, 3)
    for (s, l, p, k0), c in dec.amplitudes.entries.items():
        assert abs(c - (1.0 if (l, p) == (1, 0) else 0.0)) < 1e-8
    assert dec.total_captured == pytest.approx(1.0, abs=1e-8)


def test_superposition_projection(frame):
    def alpha(qx, qy):
        rho, vp = np.hypot(qx, qy), np.arctan2(qy, qx)
        return (lg_momentum((1, 0), frame, rho, vp) + lg_momentum((-1, 0), frame, rho, vp)) / math.sqrt(2)

    amps = amplitudes_to_lg(alpha, frame, 2).amplitudes.entries
    assert amps[(1, 1, 0, frame.k0)] == pytest.approx(1 / math.sqrt(2), abs=1e-8)
    assert amps[(1, -1, 0, frame.k0)] == pytest.approx(1 / math.sqrt(2), abs=1e-8)


def test_wide_gaussian_matches_radial_oracle(frame):
    wide = BeamFrame(2 * frame.w0, frame.k0)

    def alpha(qx, qy):
        return lg_momentum((0, 0), wide, np.hypot(qx, qy), 0.0)

    dec = amplitudes_to_lg(alpha, frame, 6)
    for p in range(4):
        ref = radial_overlap_l0(p, frame.w0, lambda rho: lg_momentum((0, 0), wide, rho, 0.0).real)
        assert dec.amplitudes.entries[(1, 0, 2 * 0 + p, frame.k0)] == pytest.approx(ref, abs=1e-8)
    fractions = list(dec.captured_fraction.values())
    assert all(b >= a for a, b in zip(fractions, fractions[1:]))
    assert fractions[-1] <= 1 + 1e-9


def test_resynthesis_round_trip(frame):
    def alpha(qx, qy):
        rho, vp = np.hypot(qx, qy), np.arctan2(qy, qx)
        return 0.6 * lg_momentum((2, 0), frame, rho, vp) - 0.8j * lg_momentum((0, 1), frame, rho, vp)

    dec = amplitudes_to_lg(alpha, frame, 2, sigma=-1)
    qx, qy = np.array([0.3, -1.0, 0.0]), np.array([0.1, 0.4, -0.7])
    np.testing.assert_allclose(resynthesize(dec.amplitudes, frame, qx, qy, sigma=-1), alpha(qx, qy), atol=1e-8)
    assert np.all(resynthesize(dec.amplitudes, frame, qx, qy, sigma=1) == 0)


def test_unresolved_quadrature_is_reported(frame):
    # 16 nodes over [-20, 20]^2 cannot resolve order-10 modes; Bessel's inequality breaks
    coarse = build_quadrature(20.0, 16)
    with pytest.raises(QuadratureResolutionError):
        amplitudes_to_lg(lambda qx, qy: np.exp(-2 * (qx * qx + qy * qy)), frame, 10, quad=coarse)


def test_negative_order_rejected(frame):
    with pytest.raises(ValueError):
        amplitudes_to_lg(lambda qx, qy: qx, frame, -1)
