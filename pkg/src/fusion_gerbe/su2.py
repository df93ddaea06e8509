"""2x2 complex linear algebra for SU(2) and su(2).

All group elements and algebra elements are plain ``numpy`` arrays of
shape ``(..., 2, 2)`` and dtype ``complex128``; every routine broadcasts
over leading axes so that quadrature grids and sample batches can be
pushed through in one call.
"""

from __future__ import annotations

import numpy as np

IDENTITY = np.eye(2, dtype=complex)
SIGMA1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA1, SIGMA2, SIGMA3)

# fundamental weight, identified with the Lie algebra through tr(XY)
LAMBDA = 0.5 * SIGMA3

UNITARY_TOL = 1e-12


def check_level(k) -> int:
    if int(k) != k or k < 1:
        raise ValueError(f"level must be a positive integer, got {k!r}")
    return int(k)


def dagger(g):
    return np.conj(np.swapaxes(g, -1, -2))


def tr(x):
    return np.trace(x, axis1=-2, axis2=-1)


def commutator(x, y):
    return x @ y - y @ x


def algebra_element(c1, c2=None, c3=None):
    """Return ``X = sum_A c_A * i*sigma_A``.

    Accepts either three coefficients or a single array whose last axis
    has length 3.
    """
    if c2 is None:
        c = np.asarray(c1, dtype=float)
        c1, c2, c3 = c[..., 0], c[..., 1], c[..., 2]
    c1, c2, c3 = (np.asarray(v, dtype=float)[..., None, None] for v in (c1, c2, c3))
    return 1j * (c1 * SIGMA1 + c2 * SIGMA2 + c3 * SIGMA3)


def algebra_coefficients(x):
    """Inverse of :func:`algebra_element` for anti-hermitian traceless ``x``."""
    return np.stack([np.real(tr(-0.5j * (s @ x))) for s in PAULI], axis=-1)


def project_algebra(x):
    """Anti-hermitian traceless part of ``x``."""
    x = 0.5 * (x - dagger(x))
    return x - 0.5 * tr(x)[..., None, None] * IDENTITY


def exp_algebra(x):
    """Exponential of an su(2) element, in closed form.

    For ``X = i c.sigma`` one has ``X^2 = -|c|^2``, hence
    ``exp(X) = cos|c| + sin|c|/|c| X``.
    """
    c = algebra_coefficients(x)
    r = np.sqrt(np.sum(c * c, axis=-1))
    sinc = np.sinc(r / np.pi)  # numpy sinc is sin(pi x)/(pi x)
    return np.cos(r)[..., None, None] * IDENTITY + sinc[..., None, None] * x


def exp_pauli(angle, sigma):
    """``exp(i * angle * sigma)`` for a Pauli matrix ``sigma``."""
    angle = np.asarray(angle, dtype=float)[..., None, None]
    return np.cos(angle) * IDENTITY + 1j * np.sin(angle) * sigma


def torus_element(lam, k):
    """``t_lam = diag(exp(i pi lam/k), exp(-i pi lam/k))`` for ``lam`` in ``[0, k]``."""
    k = check_level(k)
    lam_arr = np.asarray(lam, dtype=float)
    if np.any(lam_arr < 0) or np.any(lam_arr > k):
        raise ValueError(f"weight {lam!r} outside the alcove [0, {k}]")
    phase = np.exp(1j * np.pi * lam_arr / k)
    out = np.zeros(lam_arr.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = phase
    out[..., 1, 1] = np.conj(phase)
    return out


def euler(phi, theta, psi):
    """``exp(i phi s3) exp(i theta s2) exp(i psi s3)``."""
    return exp_pauli(phi, SIGMA3) @ exp_pauli(theta, SIGMA2) @ exp_pauli(psi, SIGMA3)


def adjoint(g, x):
    """``g x g^{-1}``; ``g`` is assumed unitary."""
    return g @ x @ dagger(g)


def class_angle(g, k):
    """Weight ``lam`` in ``[0, k]`` with ``g`` in the conjugacy class of ``t_lam``."""
    k = check_level(k)
    c = np.clip(np.real(tr(g)) / 2.0, -1.0, 1.0)
    return k / np.pi * np.arccos(c)


def frobenius_distance(a, b):
    d = np.asarray(a) - np.asarray(b)
    return np.sqrt(np.sum(np.abs(d) ** 2, axis=(-2, -1)))


def is_special_unitary(g, tol=UNITARY_TOL) -> bool:
    g = np.asarray(g)
    unit = frobenius_distance(dagger(g) @ g, IDENTITY)
    det = np.abs(np.linalg.det(g) - 1.0)
    return bool(np.all(unit < tol) and np.all(det < tol))


def random_su2(rng: np.random.Generator, size=None):
    """Haar-random SU(2) elements from normalised Gaussian 4-vectors."""
    shape = () if size is None else (size,) if np.isscalar(size) else tuple(size)
    q = rng.standard_normal(shape + (4,))
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    a, b, c, d = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    out = np.empty(shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a + 1j * d
    out[..., 0, 1] = c + 1j * b
    out[..., 1, 0] = -c + 1j * b
    out[..., 1, 1] = a - 1j * d
    return out


def random_algebra(rng: np.random.Generator, size=None, scale=1.0):
    shape = () if size is None else (size,) if np.isscalar(size) else tuple(size)
    return algebra_element(scale * rng.standard_normal(shape + (3,)))
