"""Integer character data deciding whether the fusion 2-isomorphism exists.

Everything here is exact integer arithmetic.  The characters of the
isotropy torus are tracked by their index ``xi`` (``chi_xi(exp(i phi s3)) =
exp(-i xi phi)``); on the centre Z2 only the index mod 2 matters.
"""

from __future__ import annotations

import cmath
import itertools
from concurrent.futures import ProcessPoolExecutor

from .alcove import (
    Region,
    WeightTriple,
    chart_sum,
    chart_vertex,
    check_charts,
    classify_region,
    valid_chart_triples,
)
from .junction import exact_winding, face_signs
from .su2 import check_level

# Sign left undetermined by the local analysis of the interior; 0 is the
# branch selected by continuity from the boundary, 1 is kept as a negative control.
ACCEPTED_INTERIOR_EPSILON = 0


def character(xi: int, phi: float) -> complex:
    if xi == 0:
        return 1.0 + 0.0j
    return cmath.exp(-1j * xi * phi)


def _chart_weights(t: WeightTriple, charts):
    (l1, _), (_, m2), (l3, m3) = charts
    k = t.k
    return chart_vertex(l1, k), chart_vertex(m2, k), chart_vertex(chart_sum(l3, m3), k)


def _region(t: WeightTriple) -> Region:
    if not t.is_integer:
        raise ValueError(f"{t} must have integer weights")
    return classify_region(t).region


def boundary_char_index(t: WeightTriple, charts) -> int:
    if _region(t) not in (Region.BOUNDARY, Region.CORNER):
        raise ValueError(f"{t} is not on the boundary of the fusion polytope")
    check_charts(t, charts)
    eps_a, eps_b = face_signs(t)
    w1, w2, w3 = _chart_weights(t, charts)
    return 2 * t.k * exact_winding(t) - w1 - eps_a * w2 + eps_b * w3


def interior_char_parity(t: WeightTriple, charts, interior_epsilon: int = ACCEPTED_INTERIOR_EPSILON) -> int:
    if _region(t) is not Region.INTERIOR:
        raise ValueError(f"{t} is not an interior point of the fusion polytope")
    check_charts(t, charts)
    w1, w2, w3 = _chart_weights(t, charts)
    return (w3 - w1 - w2 + interior_epsilon) % 2


def delta_exponent(t: WeightTriple, charts, interior_epsilon: int = ACCEPTED_INTERIOR_EPSILON) -> int:
    """Total character exponent of the obstruction on the isotropy subgroup.

    Zero for corners by convention. On interior points only the value mod 2 means anything.
    """
    region = _region(t)
    if region is Region.OUTSIDE:
        raise ValueError(f"{t} lies outside the fusion polytope")
    check_charts(t, charts)
    if region is Region.CORNER:
        return 0
    lam, mu, nu = t.as_int()
    w1, w2, w3 = _chart_weights(t, charts)
    if region is Region.BOUNDARY:
        eps_a, eps_b = face_signs(t)
        head = boundary_char_index(t, charts)
    else:
        eps_a = eps_b = 1
        head = interior_char_parity(t, charts, interior_epsilon)
    return head + eps_b * (nu - w3) - (lam - w1) - eps_a * (mu - w2)


def fusion_2iso_exists(t: WeightTriple, interior_epsilon: int = ACCEPTED_INTERIOR_EPSILON) -> bool:
    region = _region(t)
    if region is Region.OUTSIDE:
        return False
    if region is Region.CORNER:
        return True
    exps = [delta_exponent(t, c, interior_epsilon) for c in valid_chart_triples(t)]
    if region is Region.BOUNDARY:
        return all(e == 0 for e in exps)
    return all(e % 2 == 0 for e in exps)


def _vg_slice(args):
    k, lam, interior_epsilon = args
    return [
        (lam, mu, nu)
        for mu, nu in itertools.product(range(k + 1), repeat=2)
        if fusion_2iso_exists(WeightTriple(lam, mu, nu, k), interior_epsilon)
    ]


def compute_VG(k: int, interior_epsilon: int = ACCEPTED_INTERIOR_EPSILON, workers: int = 1) -> set[tuple[int, int, int]]:
    """Integer triples for which the obstruction vanishes, as ``(lam, mu, nu)`` tuples."""
    k = check_level(k)
    jobs = [(k, lam, interior_epsilon) for lam in range(k + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_vg_slice, jobs))
    else:
        chunks = [_vg_slice(j) for j in jobs]
    return {t for chunk in chunks for t in chunk}
