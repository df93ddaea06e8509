"""Closed-form solutions of ``t_lam Ad_a(t_mu) = Ad_b(t_nu)`` and the data derived from them."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .alcove import REGION_TOL, Region, WeightTriple, classify_region, enumerate_FZ, in_polytope
from .su2 import IDENTITY, SIGMA2, SIGMA3, adjoint, exp_pauli, frobenius_distance, torus_element

TRIG_TOL = 1e-9
EPSILON_TOL = 1e-9
ISIGMA2 = 1j * SIGMA2


class ConsistencyError(ArithmeticError):
    """A closed-form quantity left its admissible range by more than roundoff."""


class Isotropy(enum.Enum):
    FULL_SU2 = "SU(2)"
    CIRCLE_U1 = "U(1)"
    CENTER_Z2 = "Z2"


@dataclass(frozen=True)
class JunctionFrame:
    a: np.ndarray
    b: np.ndarray
    theta: float
    theta_prime: float
    phi_prime: float


def _require_polytope(t: WeightTriple) -> None:
    if not in_polytope(t):
        raise ValueError(f"{t} lies outside the fusion polytope")


def _interior_weight(w, k) -> bool:
    return 0 < w < k


def _snap(x: float, what: str) -> float:
    if x < -TRIG_TOL or x > 1 + TRIG_TOL:
        raise ConsistencyError(f"{what} = {x!r} outside [0, 1]")
    return 0.0 if abs(x) < TRIG_TOL else min(x, 1.0)


def _angle(sin_sq_num: float, cos_sq_num: float, denom: float, what: str) -> float:
    # Both squares are computed from their own exact numerators so that a
    # vanishing one is recognised as zero instead of as 1 - (1 - 0).
    s2 = _snap(sin_sq_num / denom, f"sin^2 {what}")
    c2 = _snap(cos_sq_num / denom, f"cos^2 {what}")
    return math.atan2(math.sqrt(s2), math.sqrt(c2))


def theta_a(t: WeightTriple) -> float:
    lam, mu, nu = t.weights()
    x = math.pi / t.k
    denom = 2 * math.sin(x * lam) * math.sin(x * mu)
    return _angle(
        math.cos(x * nu) - math.cos(x * (lam + mu)),
        math.cos(x * (lam - mu)) - math.cos(x * nu),
        denom,
        "theta",
    )


def theta_b(t: WeightTriple) -> float:
    lam, mu, nu = t.weights()
    x = math.pi / t.k
    denom = 2 * math.sin(x * lam) * math.sin(x * nu)
    return _angle(
        math.cos(x * (lam - nu)) - math.cos(x * mu),
        math.cos(x * mu) - math.cos(x * (lam + nu)),
        denom,
        "theta'",
    )


def solve_a(t: WeightTriple) -> np.ndarray:
    _require_polytope(t)
    if _interior_weight(t.lam, t.k) and _interior_weight(t.mu, t.k):
        return exp_pauli(theta_a(t), SIGMA2)
    return IDENTITY.copy()


def phi_prime(t: WeightTriple) -> float:
    return math.pi * t.lam / (2 * t.k)


def solve_b(t: WeightTriple) -> np.ndarray:
    _require_polytope(t)
    if t.lam == t.k:
        return ISIGMA2.copy()
    if _interior_weight(t.lam, t.k) and _interior_weight(t.nu, t.k):
        return exp_pauli(phi_prime(t), SIGMA3) @ exp_pauli(theta_b(t), SIGMA2)
    return IDENTITY.copy()


def junction_frame(t: WeightTriple) -> JunctionFrame:
    _require_polytope(t)
    k = t.k
    th = theta_a(t) if _interior_weight(t.lam, k) and _interior_weight(t.mu, k) else 0.0
    if t.lam == k:
        thp = math.pi / 2
    elif _interior_weight(t.lam, k) and _interior_weight(t.nu, k):
        thp = theta_b(t)
    else:
        thp = 0.0
    return JunctionFrame(solve_a(t), solve_b(t), th, thp, phi_prime(t))


def junction_residual(t: WeightTriple) -> float:
    a, b = solve_a(t), solve_b(t)
    lhs = torus_element(t.lam, t.k) @ adjoint(a, torus_element(t.mu, t.k))
    return float(frobenius_distance(lhs, adjoint(b, torus_element(t.nu, t.k))))


def tau(t: WeightTriple, h):
    """Point of the junction space parameterised by ``h``."""
    a = solve_a(t)
    h = np.asarray(h)
    return adjoint(h, torus_element(t.lam, t.k)), adjoint(h @ a, torus_element(t.mu, t.k))


def epsilon(g) -> int:
    """-1 on the coset ``U(1) i sigma_2`` (zero diagonal), +1 elsewhere."""
    return -1 if abs(np.asarray(g)[0, 0]) < EPSILON_TOL else 1


def isotropy_group(t: WeightTriple) -> Isotropy:
    region = classify_region(t).region
    if region is Region.OUTSIDE:
        raise ValueError(f"{t} lies outside the fusion polytope")
    return {
        Region.CORNER: Isotropy.FULL_SU2,
        Region.BOUNDARY: Isotropy.CIRCLE_U1,
        Region.INTERIOR: Isotropy.CENTER_Z2,
    }[region]


def _close(x, y, tol) -> bool:
    return abs(x - y) <= tol


def face_signs(t: WeightTriple) -> tuple[int, int]:
    """``(eps(a), eps(b))`` read off from which face of the polytope ``t`` sits on.

    Integer input is decided exactly; real input uses the region tolerance.
    This is the exact counterpart of applying :func:`epsilon` to the solvers.
    """
    _require_polytope(t)
    tol = 0.0 if t.is_integer else REGION_TOL
    lam, mu, nu = t.weights()
    k = t.k
    eps_a = -1 if (_interior_weight(lam, k) and _interior_weight(mu, k) and _close(nu, abs(lam - mu), tol)) else 1
    if lam == k:
        eps_b = -1
    elif lam == 0 or nu in (0, k):
        eps_b = 1
    elif _close(nu, mu - lam, tol) or _close(nu, 2 * k - lam - mu, tol):
        eps_b = -1
    else:
        eps_b = 1
    return eps_a, eps_b


def _on_boundary(t: WeightTriple) -> bool:
    return classify_region(t).region in (Region.BOUNDARY, Region.CORNER)


def winding_quotient(t: WeightTriple, signs=None) -> float:
    eps_a, eps_b = signs if signs is not None else (epsilon(solve_a(t)), epsilon(solve_b(t)))
    return (t.lam + eps_a * t.mu - eps_b * t.nu) / (2 * t.k)


def winding_integer(t: WeightTriple) -> int:
    """Integer ``n`` with ``lam + eps(a) mu - eps(b) nu = 2 k n`` on the boundary.

    Uses the numeric sign detector on the solved ``a`` and ``b``.
    """
    if not _on_boundary(t):
        raise ValueError(f"{t} is not on the boundary of the fusion polytope")
    q = winding_quotient(t)
    n = round(q)
    if abs(q - n) > 1e-9:
        raise ConsistencyError(f"winding quotient {q!r} is not an integer for {t}")
    return int(n)


def exact_winding(t: WeightTriple) -> int:
    """Same as :func:`winding_integer` but in integer arithmetic from :func:`face_signs`."""
    lam, mu, nu = t.as_int()
    eps_a, eps_b = face_signs(t)
    num = lam + eps_a * mu - eps_b * nu
    if num % (2 * t.k):
        raise ConsistencyError(f"{num} not divisible by {2 * t.k} for {t}")
    return num // (2 * t.k)


# face of the polytope -> (eps(a), eps(b), n) away from its edges
FACE_SIGN_TABLE = {
    "nu=lam+mu": (1, 1, 0),
    "nu=lam-mu": (-1, 1, 0),
    "nu=mu-lam": (-1, -1, 0),
    "nu=2k-lam-mu": (1, -1, 1),
}

_FACE_NU = {
    "nu=lam+mu": lambda lam, mu, k: lam + mu,
    "nu=lam-mu": lambda lam, mu, k: lam - mu,
    "nu=mu-lam": lambda lam, mu, k: mu - lam,
    "nu=2k-lam-mu": lambda lam, mu, k: 2 * k - lam - mu,
}


def faces_containing(t: WeightTriple) -> list[str]:
    tol = 0.0 if t.is_integer else REGION_TOL
    return [f for f, nu in _FACE_NU.items() if _close(t.nu, nu(t.lam, t.mu, t.k), tol)]


def integer_face_points(face: str, k: int) -> list[WeightTriple]:
    """Integer points lying on ``face`` and on no other face."""
    return [t for t in enumerate_FZ(k) if faces_containing(t) == [face]]


def sample_face(rng, face: str, k: int, n: int, margin: float = 1e-2) -> list[WeightTriple]:
    """``n`` random real points on the relative interior of ``face``."""
    nu_of = _FACE_NU[face]
    out = []
    while len(out) < n:
        lam, mu = (float(x) for x in rng.uniform(margin, k - margin, size=2))
        nu = nu_of(lam, mu, k)
        if not margin <= nu <= k - margin:
            continue
        t = WeightTriple(lam, mu, nu, k)
        others = [f for f in _FACE_NU if f != face and abs(nu - _FACE_NU[f](lam, mu, k)) < margin]
        if in_polytope(t) and not others:
            out.append(t)
    return out


def face_report(t: WeightTriple) -> dict:
    """Numeric signs, winding quotient and the ``Ad sigma_3`` residuals for a face point."""
    a, b = solve_a(t), solve_b(t)
    ea, eb = epsilon(a), epsilon(b)
    q = winding_quotient(t, (ea, eb))
    return {
        "signs": (ea, eb, int(round(q))),
        "integrality": abs(q - round(q)),
        "ad_residual": max(
            float(frobenius_distance(adjoint(a, SIGMA3), ea * SIGMA3)),
            float(frobenius_distance(adjoint(b, SIGMA3), eb * SIGMA3)),
        ),
    }
