"""Covariance-matrix algebra for bosonic Gaussian states.

Conventions: quadratures are ordered (Q1, P1, Q2, P2, ...) and the vacuum
covariance matrix is the identity. Displacements are never tracked, since
every entropic quantity used here is displacement invariant.
"""
from functools import lru_cache

import numpy as np

SYMMETRY_TOL = 1e-10
PHYSICALITY_TOL = 1e-9
SYMPLECTIC_TOL = 1e-9
_PAIRING_TOL = 1e-7

PAULI_Z = np.diag([1.0, -1.0])


@lru_cache(maxsize=None)
def _omega(n):
    J = np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    J.setflags(write=False)
    return J


def symplectic_form(n):
    """Return the 2n x 2n symplectic form, a direct sum of [[0, 1], [-1, 0]]."""
    if int(n) != n or n < 1:
        raise ValueError(f"number of modes must be a positive integer, got {n!r}")
    return _omega(int(n)).copy()


def n_modes(gamma):
    gamma = np.asarray(gamma)
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1] or gamma.shape[0] % 2:
        raise ValueError(f"expected a square matrix of even dimension, got shape {gamma.shape}")
    return gamma.shape[0] // 2


def as_covariance(gamma, check_physical=False, tol=PHYSICALITY_TOL):
    """Validate ``gamma`` as a covariance matrix and return a symmetrized copy.

    Raises ``ValueError`` if the matrix is not square and even-dimensional,
    is asymmetric beyond ``SYMMETRY_TOL`` or, when ``check_physical`` is set,
    violates the uncertainty principle beyond ``tol``.
    """
    gamma = np.array(gamma, dtype=float)
    n_modes(gamma)
    if not np.allclose(gamma, gamma.T, rtol=0.0, atol=SYMMETRY_TOL * max(1.0, np.abs(gamma).max())):
        raise ValueError("covariance matrix is not symmetric")
    gamma = 0.5 * (gamma + gamma.T)
    if check_physical and not is_physical(gamma, tol):
        raise ValueError("covariance matrix violates gamma + iJ >= 0")
    return gamma


def uncertainty_gap(gamma):
    """Smallest eigenvalue of the Hermitian matrix gamma + iJ."""
    gamma = np.asarray(gamma, dtype=float)
    J = _omega(n_modes(gamma))
    return float(np.linalg.eigvalsh(gamma + 1j * J).min())


def is_physical(gamma, tol=PHYSICALITY_TOL):
    """True iff gamma + iJ is positive semidefinite up to ``-tol``."""
    return uncertainty_gap(gamma) >= -tol


def symplectic_eigenvalues(gamma):
    """Williamson spectrum of ``gamma``, sorted in descending order.

    The eigenvalues of J @ gamma come in pairs +-i*nu; the moduli are sorted
    and every second one kept.
    """
    gamma = np.asarray(gamma, dtype=float)
    n = n_modes(gamma)
    if np.linalg.eigvalsh(0.5 * (gamma + gamma.T)).min() <= 0:
        raise ValueError("symplectic eigenvalues require a positive definite matrix")
    moduli = np.sort(np.abs(np.linalg.eigvals(_omega(n) @ gamma)))
    lower, upper = moduli[0::2], moduli[1::2]
    if np.any(np.abs(upper - lower) > _PAIRING_TOL * np.maximum(1.0, upper)):
        raise ValueError("eigenvalues of J @ gamma do not pair up; is gamma symmetric?")
    return 0.5 * (lower + upper)[::-1]


def g_function(x):
    """Entropy in bits of a thermal mode with mean photon number ``x``.

    ``g(x) = (1 + x) log2(1 + x) - x log2(x)`` with ``g(0) = 0``. Accepts
    scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("g_function is defined for x >= 0 only")
    safe = np.where(x > 0, x, 1.0)
    out = np.where(x > 0, (1 + x) * np.log2(1 + x) - x * np.log2(safe), 0.0)
    return float(out) if out.ndim == 0 else out


def gaussian_entropy(gamma, tol=PHYSICALITY_TOL):
    """Von Neumann entropy (bits) of the Gaussian state with covariance ``gamma``."""
    nu = symplectic_eigenvalues(gamma)
    if nu.min() < 1 - tol:
        raise ValueError(f"unphysical covariance matrix: smallest symplectic eigenvalue {nu.min():.3g}")
    return float(np.sum(g_function((np.maximum(nu, 1.0) - 1.0) / 2.0)))


def vacuum(n=1):
    return np.eye(2 * n)


def thermal(N, n=1):
    if N < 0:
        raise ValueError("mean photon number must be non-negative")
    return (2 * N + 1) * np.eye(2 * n)


def tmsv(N):
    """Two-mode squeezed vacuum purifying a thermal mode of mean photon number N."""
    if N < 0:
        raise ValueError("mean photon number must be non-negative")
    c = 2.0 * np.sqrt(N * (N + 1))
    d = (2 * N + 1) * np.eye(2)
    return np.block([[d, c * PAULI_Z], [c * PAULI_Z, d]])


def direct_sum(*blocks):
    """Block-diagonal concatenation of square matrices."""
    blocks = [np.asarray(b, dtype=float) for b in blocks]
    size = sum(b.shape[0] for b in blocks)
    out = np.zeros((size, size))
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i:i + k, i:i + k] = b
        i += k
    return out


def partial_transpose(gamma, modes):
    """Flip the sign of the momentum quadratures of ``modes`` (0-based indices)."""
    gamma = np.asarray(gamma, dtype=float)
    n = n_modes(gamma)
    signs = np.ones(2 * n)
    for m in modes:
        if not 0 <= m < n:
            raise IndexError(f"mode index {m} out of range for {n} modes")
        signs[2 * m + 1] = -1.0
    return gamma * np.outer(signs, signs)


def is_symplectic(S, tol=SYMPLECTIC_TOL):
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError("expected a square matrix")
    if S.shape[0] % 2:
        raise ValueError("symplectic matrices have even dimension")
    J = _omega(S.shape[0] // 2)
    return float(np.abs(S @ J @ S.T - J).max()) < tol


def random_symplectic(n, rng, scale=0.5):
    """exp(J A) for a random symmetric A; used by tests and the self-test."""
    from scipy.linalg import expm

    A = rng.normal(scale=scale, size=(2 * n, 2 * n))
    return expm(_omega(n) @ (A + A.T) / 2)


def random_covariance(n, rng, scale=0.5):
    """Random physical covariance matrix S S^T + 0.1 I."""
    S = random_symplectic(n, rng, scale)
    return S @ S.T + 0.1 * np.eye(2 * n)
