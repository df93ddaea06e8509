import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusion_gerbe.su2 import (
    IDENTITY,
    PAULI,
    SIGMA1,
    SIGMA2,
    SIGMA3,
    adjoint,
    algebra_coefficients,
    algebra_element,
    class_angle,
    euler,
    exp_algebra,
    exp_pauli,
    frobenius_distance,
    is_special_unitary,
    random_su2,
    torus_element,
)

angles = st.floats(-10, 10, allow_nan=False)


def test_torus_examples():
    assert np.array_equal(torus_element(0, 4), IDENTITY)
    assert frobenius_distance(torus_element(4, 4), -IDENTITY) < 1e-15
    assert frobenius_distance(torus_element(1, 2), np.diag([1j, -1j])) < 1e-15


@pytest.mark.parametrize("lam", [-0.1, 4.0001])
def test_torus_rejects_out_of_range(lam):
    with pytest.raises(ValueError):
        torus_element(lam, 4)


def test_euler_examples():
    assert frobenius_distance(euler(0, 0, 0), IDENTITY) < 1e-15
    assert frobenius_distance(euler(0, math.pi / 2, 0), 1j * SIGMA2) < 1e-15
    phi, psi = 0.3, 1.1
    assert frobenius_distance(euler(phi, 0, psi), np.diag([np.exp(1.4j), np.exp(-1.4j)])) < 1e-15


def test_adjoint_examples():
    x = np.array([[1, 2j], [3, 4]], dtype=complex)
    assert np.array_equal(adjoint(IDENTITY, x), x)
    assert frobenius_distance(adjoint(1j * SIGMA2, SIGMA3), -SIGMA3) < 1e-15
    assert frobenius_distance(adjoint(exp_pauli(0.7, SIGMA3), SIGMA3), SIGMA3) < 1e-15


def test_class_angle_examples(rng):
    assert class_angle(IDENTITY, 4) == 0
    assert class_angle(-IDENTITY, 4) == 4
    for lam in rng.uniform(0, 4, size=50):
        h = random_su2(rng)
        assert abs(class_angle(adjoint(h, torus_element(lam, 4)), 4) - lam) < 1e-10


def test_frobenius_examples():
    assert frobenius_distance(SIGMA1, SIGMA1) == 0
    assert math.isclose(frobenius_distance(IDENTITY, -IDENTITY), 2 * math.sqrt(2))
    # sigma1 - sigma2 has entries 1+i and 1-i
    assert math.isclose(frobenius_distance(SIGMA1, SIGMA2), 2.0)


def test_pauli_algebra_exact():
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (0, 2, 1): -1, (2, 1, 0): -1, (1, 0, 2): -1}
    for a in range(3):
        for b in range(3):
            expected = (a == b) * IDENTITY
            for c in range(3):
                expected = expected + 1j * eps.get((a, b, c), 0) * PAULI[c]
            assert np.array_equal(PAULI[a] @ PAULI[b], expected)


def test_class_angle_roundtrip_on_grid():
    for k in (1, 4, 7):
        for lam in np.linspace(0, k, 41):
            assert abs(class_angle(torus_element(lam, k), k) - lam) < 1e-12


def test_euler_unitary_many(rng):
    g = euler(*rng.uniform(-7, 7, size=(3, 10_000)))
    assert is_special_unitary(g)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_adjoint_is_action(seed):
    rng = np.random.default_rng(seed)
    g, h = random_su2(rng, 2)
    x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    assert frobenius_distance(adjoint(g @ h, x), adjoint(g, adjoint(h, x))) < 1e-12


@given(angles, angles, angles)
def test_exp_matches_pauli_exponential(c1, c2, c3):
    x = algebra_element(c1, c2, c3)
    g = exp_algebra(x)
    assert is_special_unitary(g, 1e-10)
    np.testing.assert_allclose(algebra_coefficients(x), [c1, c2, c3], atol=1e-12)
    if c2 == c3 == 0:
        assert frobenius_distance(g, exp_pauli(c1, SIGMA1)) < 1e-12


def test_exp_small_series():
    x = algebra_element(1e-3, -2e-3, 5e-4)
    series = IDENTITY + x + x @ x / 2 + x @ x @ x / 6 + x @ x @ x @ x / 24
    assert frobenius_distance(exp_algebra(x), series) < 1e-15


def test_random_su2_broadcasts(rng):
    g = random_su2(rng, (3, 4))
    assert g.shape == (3, 4, 2, 2)
    assert is_special_unitary(g)
