"""The fusion tetrahedron: membership, strata, lattice points and chart bookkeeping."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

from .su2 import check_level

REGION_TOL = 1e-9


@dataclass(frozen=True, order=True)
class WeightTriple:
    """Weights ``(lam, mu, nu)`` at level ``k``; integer or real valued."""

    lam: float
    mu: float
    nu: float
    k: int

    def __post_init__(self):
        check_level(self.k)

    @property
    def is_integer(self) -> bool:
        return all(float(w).is_integer() for w in (self.lam, self.mu, self.nu))

    def as_int(self) -> tuple[int, int, int]:
        if not self.is_integer:
            raise ValueError(f"{self} has non-integer weights")
        return int(self.lam), int(self.mu), int(self.nu)

    def weights(self) -> tuple:
        return self.lam, self.mu, self.nu


class Region(enum.Enum):
    OUTSIDE = "outside"
    CORNER = "corner"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


@dataclass(frozen=True)
class RegionClass:
    region: Region
    in_f_dot: bool  # all three weights strictly inside (0, k)


def upper_face(lam, mu, k):
    return min(lam + mu, 2 * k - lam - mu)


def in_polytope(t: WeightTriple) -> bool:
    lam, mu, nu = t.weights()
    k = t.k
    if not all(0 <= w <= k for w in (lam, mu, nu)):
        return False
    return abs(lam - mu) <= nu <= upper_face(lam, mu, k)


def classify_region(t: WeightTriple) -> RegionClass:
    tol = 0.0 if t.is_integer else REGION_TOL
    k = t.k
    lam, mu, nu = t.weights()
    f_dot = all(tol < w < k - tol for w in (lam, mu, nu))
    if not in_polytope(t):
        return RegionClass(Region.OUTSIDE, False)
    if all(abs(w) <= tol or abs(w - k) <= tol for w in (lam, mu, nu)):
        return RegionClass(Region.CORNER, False)
    on_face = abs(nu - abs(lam - mu)) <= tol or abs(nu - upper_face(lam, mu, k)) <= tol
    return RegionClass(Region.BOUNDARY if on_face else Region.INTERIOR, f_dot)


def enumerate_FZ(k: int) -> list[WeightTriple]:
    """All integer triples in the tetrahedron, sorted lexicographically."""
    k = check_level(k)
    out = []
    for lam, mu in itertools.product(range(k + 1), repeat=2):
        for nu in range(abs(lam - mu), upper_face(lam, mu, k) + 1):
            out.append(WeightTriple(lam, mu, nu, k))
    return out


def vertices(k: int) -> list[WeightTriple]:
    k = check_level(k)
    return [WeightTriple(*w, k) for w in ((0, 0, 0), (k, k, 0), (k, 0, k), (0, k, k))]


def chart_sum(l: int, m: int) -> int:
    """Chart index of a product: ``l + m`` mod 2."""
    return (l + m) % 2


def chart_vertex(l: int, k: int) -> int:
    """Weight of the vertex a chart is centred on: 0 for chart 0, ``k`` for chart 1."""
    return 0 if l == 0 else k


def chart_valid(l: int, weight, k: int) -> bool:
    # chart 0 misses the class of -e, chart 1 misses the class of e
    return not ((l == 0 and weight == k) or (l == 1 and weight == 0))


def valid_pairs(t: WeightTriple) -> list[tuple[int, int]]:
    lam, mu, nu = t.weights()
    return [
        (l, m)
        for l, m in itertools.product((0, 1), repeat=2)
        if chart_valid(l, lam, t.k) and chart_valid(m, mu, t.k) and chart_valid(chart_sum(l, m), nu, t.k)
    ]


def valid_chart_triples(t: WeightTriple) -> list[tuple[tuple[int, int], ...]]:
    if not (t.is_integer and in_polytope(t)):
        raise ValueError(f"{t} is not an integer point of the fusion polytope")
    return list(itertools.product(valid_pairs(t), repeat=3))


def check_charts(t: WeightTriple, charts) -> None:
    pairs = valid_pairs(t)
    if len(charts) != 3 or any(tuple(p) not in pairs for p in charts):
        raise ValueError(f"charts {charts!r} are not valid for {t}")


def sample_f_dot(rng, k: int, n: int, margin: float = 1e-3) -> list[WeightTriple]:
    """``n`` random real triples of the polytope with every weight in ``(0, k)``.

    ``margin`` keeps samples away from the faces so they classify as interior.
    """
    k = check_level(k)
    out = []
    while len(out) < n:
        lam, mu = rng.uniform(margin, k - margin, size=2)
        lo, hi = abs(lam - mu) + margin, upper_face(lam, mu, k) - margin
        if hi <= lo:
            continue
        nu = rng.uniform(lo, hi)
        t = WeightTriple(float(lam), float(mu), float(nu), k)
        if classify_region(t).in_f_dot:
            out.append(t)
    return out
