import math

import numpy as np
import pytest

import ymbounds as yb


def test_haar_sample_is_unitary_and_reproducible():
    u = yb.haar_sample(3, seed=5)
    assert u.shape == (3, 3)
    assert np.linalg.norm(u.conj().T @ u - np.eye(3)) < 1e-12
    assert np.array_equal(u, yb.haar_sample(3, seed=5))
    assert not np.array_equal(u, yb.haar_sample(3, seed=5, stream=1))


def test_angular_eigenvalues_of_diagonal():
    u = np.diag([np.exp(1j * math.pi / 3), np.exp(-1j * math.pi / 2)])
    phases = yb.angular_eigenvalues(u)
    assert phases == pytest.approx([math.pi / 3, -math.pi / 2], abs=1e-14)
    with pytest.raises(ValueError):
        yb.angular_eigenvalues(np.array([[1.0, 0.1], [0.0, 1.0]]))


def test_lattice_counts():
    c = yb.lattice_counts(4, 2)
    assert c["retained"] == 17
    assert c["bonds"] - c["retained"] == 2**4 - 1


def test_single_plaquette_values():
    zu = yb.z_u(1, 1.0)
    assert zu["converged"]
    assert zu["value"] == pytest.approx(math.exp(-2.0) * np.i0(2.0), rel=1e-10)
    assert math.exp(yb.c_upper(1)) == pytest.approx(math.sqrt(math.pi) / 4, rel=1e-14)
    b = yb.single_plaquette_bounds(d=2, n=1, a=1.0, g2=1.0, g0=1.0)
    assert b["upper"]["satisfied"] and b["lower"]["satisfied"]
    assert yb.jensen_xi(1, 1.0) == pytest.approx(math.exp(-2.0))


def test_partition_estimate_factorizes():
    mean, err = yb.estimate_partition(2, 2, 1, samples=20000, seed=3)
    assert abs(mean - yb.z_u(1, 1.0)["value"]) <= 4 * err
    assert yb.estimate_partition(2, 2, 1, samples=5000, seed=3, workers=2) == yb.estimate_partition(
        2, 2, 1, samples=5000, seed=3, workers=1
    )
    with pytest.raises(ValueError):
        yb.estimate_partition(2, 2, 1, samples=10, seed=3)


def test_quadratic_bound_sampling():
    r = yb.verify_quadratic_bound(2, 4, 5000, seed=1)
    assert r["violations"] == 0
    assert 0.0 < r["max_ratio"] <= 1.0


def test_scalar_field():
    p = dict(d=3, a=0.5, m_u=1.0, kappa_u=1.0)
    s2 = 0.5 * (1.0 * 0.25 + 6.0)
    assert yb.propagator_scaled(sep=[1, 2, 0], **p) == pytest.approx(s2 * yb.propagator_unscaled(sep=[1, 2, 0], **p), rel=1e-10)
    assert yb.particle_mass(3, 0.5, 1.0, 0.25) == pytest.approx(4.0 * math.log(1 + math.sqrt(2)), rel=1e-14)
    assert yb.coincident_constant(3) == pytest.approx(1.5163860591519780, rel=1e-10)
    with pytest.raises(yb.DivergenceError):
        yb.propagator_scaled(2, 1.0, 0.0, 1.0, [0, 0])
