import itertools

import numpy as np
import pytest

from fusion_gerbe.alcove import enumerate_FZ
from fusion_gerbe.fusion import (
    FusionVector,
    compute_V,
    fusion_product,
    ring_multiply,
    s_matrix,
    verify_theorem,
    verlinde_coeff,
    verlinde_table,
)


def brute_V(k):
    # independent restatement: inequalities plus even total weight
    return {
        (l, m, n)
        for l, m, n in itertools.product(range(k + 1), repeat=3)
        if abs(l - m) <= n <= min(l + m, 2 * k - l - m) and (l + m + n) % 2 == 0
    }


def test_fusion_product_examples():
    assert fusion_product(0, 3, 4).support() == {3: 1}
    assert fusion_product(1, 1, 2).support() == {0: 1, 2: 1}
    assert fusion_product(3, 3, 4).support() == {0: 1, 2: 1}
    with pytest.raises(ValueError):
        fusion_product(5, 0, 4)


@pytest.mark.parametrize("k", range(1, 13))
def test_compute_V_matches_bruteforce(k):
    assert compute_V(k) == brute_V(k)
    assert compute_V(k) <= {t.as_int() for t in enumerate_FZ(k)}


def test_V_counts():
    assert len(compute_V(4)) == 35
    assert (1, 2, 2) not in compute_V(4)
    assert len(compute_V(1)) == 4


@pytest.mark.parametrize("k", range(1, 17))
def test_unit_and_multiplicity_free(k):
    for mu in range(k + 1):
        assert fusion_product(0, mu, k).support() == {mu: 1}
        for lam in range(k + 1):
            assert set(fusion_product(lam, mu, k).coefficients) <= {0, 1}


def test_ring_examples():
    k = 4
    v = FusionVector.from_dict(k, {1: 2, 3: 1})
    assert ring_multiply(FusionVector.basis(0, k), v) == v
    u = FusionVector.from_dict(k, {2: 1, 4: 3})
    assert ring_multiply(u, v) == ring_multiply(v, u)
    b = FusionVector.basis
    lhs = ring_multiply(ring_multiply(b(1, k), b(1, k)), b(2, k))
    rhs = ring_multiply(b(1, k), ring_multiply(b(1, k), b(2, k)))
    # [1]*[1] = [0]+[2]; ([0]+[2])*[2] = [2] + [0]+[2]+[4]
    assert lhs == rhs == FusionVector.from_dict(k, {0: 1, 2: 2, 4: 1})
    with pytest.raises(ValueError):
        ring_multiply(b(0, 3), b(0, 4))


@pytest.mark.parametrize("k", range(1, 11))
def test_associativity(k):
    b = [FusionVector.basis(w, k) for w in range(k + 1)]
    for x, y, z in itertools.product(b, repeat=3):
        assert ring_multiply(ring_multiply(x, y), z) == ring_multiply(x, ring_multiply(y, z))


def test_verlinde_examples():
    assert verlinde_coeff(1, 1, 0, 1)[1] == 1
    assert verlinde_coeff(1, 2, 2, 4)[1] == 0
    s = s_matrix(7)
    assert np.max(np.abs(s - s.T)) < 1e-14
    assert np.max(np.abs(s @ s - np.eye(8))) < 1e-12


@pytest.mark.parametrize("k", range(1, 17))
def test_verlinde_agreement(k):
    table = verlinde_table(k)
    for lam, mu in itertools.product(range(k + 1), repeat=2):
        exact = np.array(fusion_product(lam, mu, k).coefficients)
        assert np.max(np.abs(table[lam, mu] - exact)) < 1e-9
    raw, rounded = verlinde_coeff(1, 2, 1, k) if k >= 2 else (1.0, 1)
    assert abs(raw - rounded) < 1e-9


def test_set_comparison_examples():
    r1 = verify_theorem(1)
    assert r1.verdict and len(r1.V) == 4
    r4 = verify_theorem(4)
    assert r4.verdict and len(r4.V) == 35
    bad = verify_theorem(4, interior_epsilon=1)
    assert not bad.verdict and (1, 2, 2) in bad.difference
