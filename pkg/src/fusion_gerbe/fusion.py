"""Representation-theoretic su(2)_k fusion, the Verlinde cross-check and the comparison with geometry."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .obstruction import ACCEPTED_INTERIOR_EPSILON, compute_VG
from .su2 import check_level


def _check_weight(w, k: int) -> int:
    if int(w) != w or not 0 <= w <= k:
        raise ValueError(f"weight {w!r} is not in 0..{k}")
    return int(w)


@dataclass(frozen=True)
class FusionVector:
    """Integer combination of the level-``k`` weights, stored densely."""

    k: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        check_level(self.k)
        if len(self.coefficients) != self.k + 1:
            raise ValueError("need one coefficient per weight 0..k")

    @classmethod
    def basis(cls, w: int, k: int) -> "FusionVector":
        c = [0] * (k + 1)
        c[_check_weight(w, k)] = 1
        return cls(k, tuple(c))

    @classmethod
    def from_dict(cls, k: int, d: dict) -> "FusionVector":
        c = [0] * (k + 1)
        for w, n in d.items():
            c[_check_weight(w, k)] = int(n)
        return cls(k, tuple(c))

    def __getitem__(self, nu: int) -> int:
        return self.coefficients[nu]

    def support(self) -> dict[int, int]:
        return {nu: n for nu, n in enumerate(self.coefficients) if n}


def fusion_product(lam: int, mu: int, k: int) -> FusionVector:
    k = check_level(k)
    lam, mu = _check_weight(lam, k), _check_weight(mu, k)
    c = [0] * (k + 1)
    for nu in range(abs(lam - mu), min(lam + mu, 2 * k - lam - mu) + 1, 2):
        c[nu] = 1
    return FusionVector(k, tuple(c))


def compute_V(k: int) -> set[tuple[int, int, int]]:
    k = check_level(k)
    return {
        (lam, mu, nu)
        for lam in range(k + 1)
        for mu in range(k + 1)
        for nu, n in fusion_product(lam, mu, k).support().items()
    }


def ring_multiply(u: FusionVector, v: FusionVector) -> FusionVector:
    if u.k != v.k:
        raise ValueError(f"level mismatch: {u.k} vs {v.k}")
    out = np.zeros(u.k + 1, dtype=np.int64)
    for lam, a in u.support().items():
        for mu, b in v.support().items():
            out += a * b * np.asarray(fusion_product(lam, mu, u.k).coefficients, dtype=np.int64)
    return FusionVector(u.k, tuple(int(x) for x in out))


def s_matrix(k: int) -> np.ndarray:
    k = check_level(k)
    idx = np.arange(k + 1) + 1
    return np.sqrt(2.0 / (k + 2)) * np.sin(np.pi * np.outer(idx, idx) / (k + 2))


def verlinde_table(k: int) -> np.ndarray:
    """Raw Verlinde values ``N[lam, mu, nu]`` for all weights at once."""
    s = s_matrix(k)
    return np.einsum("ls,ms,ns,s->lmn", s, s, s, 1.0 / s[0])


def verlinde_coeff(lam: int, mu: int, nu: int, k: int) -> tuple[float, int]:
    k = check_level(k)
    lam, mu, nu = (_check_weight(w, k) for w in (lam, mu, nu))
    s = s_matrix(k)
    raw = float(np.sum(s[lam] * s[mu] * s[nu] / s[0]))
    return raw, int(round(raw))


@dataclass(frozen=True)
class TheoremReport:
    k: int
    V: frozenset
    VG: frozenset
    difference: tuple = field(default=())

    @property
    def verdict(self) -> bool:
        return not self.difference


def verify_theorem(k: int, interior_epsilon: int = ACCEPTED_INTERIOR_EPSILON, workers: int = 1) -> TheoremReport:
    k = check_level(k)
    v = compute_V(k)
    vg = compute_VG(k, interior_epsilon=interior_epsilon, workers=workers)
    return TheoremReport(k, frozenset(v), frozenset(vg), tuple(sorted(v ^ vg)))
