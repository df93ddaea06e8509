"""Finite-dimensional exterior calculus on SU(2), its products and [0, k] x SU(2).

Tangent vectors are encoded in the right-invariant frame: the algebra
element ``X`` stands for the curve ``eps -> exp(eps X) g``.  On a product
space a tangent vector is a tuple with one entry per factor, and on the
weight line it is a real number.  Forms are plain callables
``form(point, *directions)``.

Wedge products are fully antisymmetrised with no ``1/p!``:
``(a ^ b)(V1, V2) = a(V1) b(V2) - a(V2) b(V1)``.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Sequence

import numpy as np

from .alcove import WeightTriple, chart_sum, chart_vertex, check_charts, classify_region
from .junction import solve_a, solve_b, tau
from .su2 import (
    LAMBDA,
    PAULI,
    SIGMA2,
    SIGMA3,
    adjoint,
    commutator,
    dagger,
    exp_algebra,
    exp_pauli,
    project_algebra,
    tr,
)

DEFAULT_STEP = 1e-4
CHART_STEP = 1e-5

# [R_X, R_Y] = R_{-[X, Y]} for right-invariant fields; pinned by the
# Maurer-Cartan test in the suite.
FRAME_BRACKET_SIGN = -1.0

Form = Callable[..., complex]


class GroupSpace:
    def flow(self, g, x, eps):
        return exp_algebra(eps * np.asarray(x)) @ g

    def bracket(self, x, y):
        return FRAME_BRACKET_SIGN * commutator(x, y)


class LineSpace:
    """A real coordinate with the constant frame ``d/ds``."""

    def flow(self, s, c, eps):
        return s + eps * c

    def bracket(self, c, d):
        return 0.0


class ProductSpace:
    def __init__(self, *factors):
        self.factors = factors

    def flow(self, point, v, eps):
        return tuple(f.flow(p, x, eps) for f, p, x in zip(self.factors, point, v))

    def bracket(self, v, w):
        return tuple(f.bracket(x, y) for f, x, y in zip(self.factors, v, w))


SU2 = GroupSpace()
SU2xSU2 = ProductSpace(SU2, SU2)
WEIGHT_x_SU2 = ProductSpace(LineSpace(), SU2)


def _torus(lam, k):
    # no range check: finite differences step slightly outside [0, k]
    phase = np.exp(1j * np.pi * np.asarray(lam, dtype=float) / k)
    out = np.zeros(np.shape(phase) + (2, 2), dtype=complex)
    out[..., 0, 0] = phase
    out[..., 1, 1] = np.conj(phase)
    return out


def theta_left(g, x):
    """Value of the left Maurer-Cartan form on ``R_x`` at ``g``."""
    return adjoint(dagger(g), x)


def _sign(perm) -> int:
    s = 1
    p = list(perm)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def eval_H(g, x1, x2, x3, k):
    a = [theta_left(g, x) for x in (x1, x2, x3)]
    total = 0
    for perm in itertools.permutations(range(3)):
        total = total + _sign(perm) * tr(a[perm[0]] @ a[perm[1]] @ a[perm[2]])
    return np.real(k / (12 * np.pi) * total)


def eval_Q(lam, h, x1, x2, k):
    a1, a2 = theta_left(h, x1), theta_left(h, x2)
    t = _torus(lam, k)
    val = tr(a1 @ adjoint(t, a2)) - tr(a2 @ adjoint(t, a1))
    return np.real(k / (4 * np.pi) * val)


def eval_F(lam, h, x1, x2):
    a1, a2 = theta_left(h, x1), theta_left(h, x2)
    return np.real(1j * np.asarray(lam) * tr(LAMBDA @ commutator(a1, a2)))


def eval_B(lam, h, x1, x2, k, lam_c):
    """Local curving on the chart centred at weight ``lam_c``."""
    return eval_Q(lam, h, x1, x2, k) + eval_F(np.asarray(lam) - lam_c, h, x1, x2)


def eval_rho(g1, g2, v1, v2, k):
    (x1, y1), (x2, y2) = v1, v2
    val = tr(theta_left(g1, x1) @ y2) - tr(theta_left(g1, x2) @ y1)
    return np.real(k / (4 * np.pi) * val)


def numeric_d(form: Form, space, point, directions: Sequence, step: float = DEFAULT_STEP, richardson: bool = False):
    """Exterior derivative of a ``p``-form on ``p + 1`` frame directions.

    Uses the invariant Cartan formula with central differences along the
    frame flows.  With ``richardson`` the two-step extrapolation
    ``(4 D(h/2) - D(h)) / 3`` is returned.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if richardson:
        coarse = numeric_d(form, space, point, directions, step)
        fine = numeric_d(form, space, point, directions, step / 2)
        return (4 * fine - coarse) / 3
    dirs = list(directions)
    total = 0.0
    for i, v in enumerate(dirs):
        rest = dirs[:i] + dirs[i + 1:]
        fp = form(space.flow(point, v, step), *rest)
        fm = form(space.flow(point, v, -step), *rest)
        total = total + (-1) ** i * (fp - fm) / (2 * step)
    for i, j in itertools.combinations(range(len(dirs)), 2):
        rest = [d for n, d in enumerate(dirs) if n not in (i, j)]
        total = total + (-1) ** (i + j) * form(point, space.bracket(dirs[i], dirs[j]), *rest)
    return total


def rho_form(k):
    return lambda point, v1, v2: eval_rho(point[0], point[1], v1, v2, k)


def multiplication_pushforward(g1, v):
    x, y = v
    return x + adjoint(g1, y)


def pw_residual(g1, g2, frame, k, step: float = DEFAULT_STEP, richardson: bool = False) -> float:
    """``|p1*H + p2*H - m*H - d rho|`` on three product directions ``(X_i, Y_i)``."""
    frame = [tuple(v) for v in frame]
    h1 = eval_H(g1, *(v[0] for v in frame), k)
    h2 = eval_H(g2, *(v[1] for v in frame), k)
    hm = eval_H(g1 @ g2, *(multiplication_pushforward(g1, v) for v in frame), k)
    drho = numeric_d(rho_form(k), SU2xSU2, (g1, g2), frame, step, richardson)
    return float(abs(h1 + h2 - hm - drho))


def _require_f_dot(t: WeightTriple) -> None:
    if not classify_region(t).in_f_dot:
        raise ValueError(f"{t} is not in the open cube (0, k)^3 part of the polytope")


def omega_contract(t: WeightTriple, h, A: int, B: int) -> float:
    """Contraction of the junction 2-form on frame vectors ``i sigma_A``, ``i sigma_B``.

    Assembled from closed-form contractions with ``(g1, g2) = tau(t, h)``.
    """
    _require_f_dot(t)
    g1, g2 = tau(t, h)
    sa, xb = PAULI[A - 1], 1j * PAULI[B - 1]
    k = t.k

    def term(g):
        return 1j * k / (4 * np.pi) * tr(sa @ (adjoint(g, xb) - adjoint(dagger(g), xb)))

    g12 = g1 @ g2
    q_lam, q_mu, q_nu = term(g1), term(g2), term(g12)
    rho = term(g1) + term(g2) - term(g12)
    return float(np.real(q_nu + rho - q_lam - q_mu))


def omega_pullback(t: WeightTriple, h, x1, x2) -> float:
    """Same 2-form, evaluated by pulling each piece back through its own map."""
    _require_f_dot(t)
    k = t.k
    a, b = solve_a(t), solve_b(t)
    g1, g2 = tau(t, h)
    q_lam = eval_Q(t.lam, h, x1, x2, k)
    q_mu = eval_Q(t.mu, h @ a, x1, x2, k)
    q_nu = eval_Q(t.nu, h @ b, x1, x2, k)

    def push(x):
        return (x - adjoint(g1, x), x - adjoint(g2, x))

    rho = eval_rho(g1, g2, push(x1), push(x2), k)
    return float(q_nu + rho - q_lam - q_mu)


def _connection_coefficient(t: WeightTriple, charts):
    check_charts(t, charts)
    (l1, _), (_, m2), (l3, m3) = charts
    k = t.k
    a, b = solve_a(t), solve_b(t)
    w1, w2, w3 = chart_vertex(l1, k), chart_vertex(m2, k), chart_vertex(chart_sum(l3, m3), k)
    return (t.lam - w1) * LAMBDA + (t.mu - w2) * adjoint(a, LAMBDA) - (t.nu - w3) * adjoint(b, LAMBDA)


def eval_A_connection(t: WeightTriple, charts, h, x, k=None) -> float:
    if k is not None and k != t.k:
        raise ValueError("level mismatch")
    m = _connection_coefficient(t, charts)
    return float(np.real(1j * tr(m @ theta_left(h, x))))


def junction_curvature(t: WeightTriple, charts, h, x1, x2) -> float:
    """Sum of pulled-back local curvings plus the pulled-back rho on the junction space."""
    check_charts(t, charts)
    (l1, _), (_, m2), (l3, m3) = charts
    k = t.k
    a, b = solve_a(t), solve_b(t)
    g1, g2 = tau(t, h)
    b1 = eval_B(t.lam, h, x1, x2, k, chart_vertex(l1, k))
    b2 = eval_B(t.mu, h @ a, x1, x2, k, chart_vertex(m2, k))
    b3 = eval_B(t.nu, h @ b, x1, x2, k, chart_vertex(chart_sum(l3, m3), k))

    def push(x):
        return (x - adjoint(g1, x), x - adjoint(g2, x))

    return float(b3 + eval_rho(g1, g2, push(x1), push(x2), k) - b1 - b2)


def chart_map(phi, theta):
    """``exp(i phi s3) exp(i theta s2)``, broadcasting over the angles."""
    return exp_pauli(phi, SIGMA3) @ exp_pauli(theta, SIGMA2)


def chart_pushforwards(phi, theta, step: float = CHART_STEP):
    """Right-invariant frame images of ``d/dphi`` and ``d/dtheta`` by central differences."""
    h = chart_map(phi, theta)
    hinv = dagger(h)
    d_phi = (chart_map(phi + step, theta) - chart_map(phi - step, theta)) / (2 * step)
    d_theta = (chart_map(phi, theta + step) - chart_map(phi, theta - step)) / (2 * step)
    return h, project_algebra(d_phi @ hinv), project_algebra(d_theta @ hinv)


def period_integral(lam: float, l: int, k: int, grid=(400, 200), rule: str = "gauss") -> float:
    """Integral of minus the chart-``l`` curving over the conjugacy class of ``t_lam``.

    The class is covered by ``(phi, theta) in [0, pi) x [0, pi/2]``.  The
    ``phi`` direction is periodic and uses the midpoint rule; ``theta``
    uses Gauss-Legendre nodes by default or the midpoint rule with
    ``rule="midpoint"``.
    """
    n_phi, n_theta = grid
    if n_phi < 64 or n_theta < 32:
        raise ValueError("grid must be at least (64, 32)")
    if l not in (0, 1):
        raise ValueError("chart index must be 0 or 1")
    phi = (np.arange(n_phi) + 0.5) * np.pi / n_phi
    w_phi = np.full(n_phi, np.pi / n_phi)
    if rule == "gauss":
        nodes, weights = np.polynomial.legendre.leggauss(n_theta)
        theta = (nodes + 1) * np.pi / 4
        w_theta = weights * np.pi / 4
    elif rule == "midpoint":
        theta = (np.arange(n_theta) + 0.5) * (np.pi / 2) / n_theta
        w_theta = np.full(n_theta, (np.pi / 2) / n_theta)
    else:
        raise ValueError(f"unknown quadrature rule {rule!r}")
    P, T = np.meshgrid(phi, theta, indexing="ij")
    h, x_phi, x_theta = chart_pushforwards(P, T)
    integrand = -eval_F(lam - chart_vertex(l, k), h, x_phi, x_theta)
    return float(np.einsum("i,j,ij->", w_phi, w_theta, integrand))


def class_map(lam, h, k):
    return adjoint(h, _torus(lam, k))


def class_pushforward(point, v, k, step: float = CHART_STEP):
    """Right-invariant image under ``(lam, h) -> h t_lam h^-1`` by central differences."""
    c = class_map(*point, k)
    plus = class_map(*WEIGHT_x_SU2.flow(point, v, step), k)
    minus = class_map(*WEIGHT_x_SU2.flow(point, v, -step), k)
    return project_algebra((plus - minus) / (2 * step) @ dagger(c))


def hqt_residual(lam, h, frame, k, lam_c, step: float = DEFAULT_STEP) -> float:
    """``|d(Q + F(lam - lam_c)) - c*H|`` on three ``(s, X)`` directions of ``[0, k] x SU(2)``."""

    def curving(point, v1, v2):
        return eval_B(point[0], point[1], v1[1], v2[1], k, lam_c)

    point = (lam, h)
    lhs = numeric_d(curving, WEIGHT_x_SU2, point, frame, step)
    rhs = eval_H(class_map(lam, h, k), *(class_pushforward(point, v, k) for v in frame), k)
    return float(abs(lhs - rhs))


def left_invariant_direction(h, x):
    """Right-frame encoding of the left-invariant field with value ``x``."""
    return adjoint(h, x)
