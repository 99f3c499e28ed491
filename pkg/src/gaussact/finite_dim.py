"""Finite-dimensional channel calculus used to check numerically that an
entanglement-breaking channel cannot raise the coherent information of
another channel it is used in parallel with.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import unitary_group

MAX_INPUT_DIM = 9
LEMMA_TOL = 1e-3


def entropy(rho):
    """Von Neumann entropy in bits."""
    w = np.linalg.eigvalsh(np.asarray(rho))
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def validate_density(rho, tol=1e-10):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("density matrix must be square")
    if np.abs(rho - rho.conj().T).max() > 1e-12:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1) > tol:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


@dataclass(frozen=True, eq=False)
class KrausChannel:
    kraus: tuple
    label: str = ""

    def __post_init__(self):
        ops = tuple(np.asarray(K, dtype=complex) for K in self.kraus)
        if not ops:
            raise ValueError("need at least one Kraus operator")
        shape = ops[0].shape
        if any(K.shape != shape for K in ops):
            raise ValueError("Kraus operators must share a shape")
        total = sum(K.conj().T @ K for K in ops)
        if np.abs(total - np.eye(shape[1])).max() > 1e-10:
            raise ValueError("Kraus operators are not trace preserving")
        object.__setattr__(self, "kraus", ops)

    @property
    def dim_in(self):
        return self.kraus[0].shape[1]

    @property
    def dim_out(self):
        return self.kraus[0].shape[0]

    @property
    def dim_env(self):
        return len(self.kraus)


@dataclass(frozen=True, eq=False)
class EBChannel:
    """Measure-and-prepare channel with rank-one Kraus operators |phi_k><b_k|."""

    channel: KrausChannel
    basis: np.ndarray
    prepared: np.ndarray

    def __post_init__(self):
        if any(np.linalg.matrix_rank(K, tol=1e-10) != 1 for K in self.channel.kraus):
            raise ValueError("entanglement-breaking construction requires rank-one Kraus operators")


def _check_dims(ch, rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.dim_in, ch.dim_in):
        raise ValueError(f"channel expects a {ch.dim_in}-dimensional input, got {rho.shape}")
    return rho


def apply_fd(ch, rho):
    rho = _check_dims(ch, rho)
    return sum(K @ rho @ K.conj().T for K in ch.kraus)


def complementary_fd(ch, rho):
    """Environment output: entry (k, j) is Tr(K_k rho K_j^dagger)."""
    rho = _check_dims(ch, rho)
    ops = np.stack(ch.kraus)
    return np.einsum("kab,bc,jac->kj", ops, rho, ops.conj())


def coherent_info_fd(ch, rho):
    return entropy(apply_fd(ch, rho)) - entropy(complementary_fd(ch, rho))


def mutual_info_fd(ch, rho):
    return entropy(rho) + entropy(apply_fd(ch, rho)) - entropy(complementary_fd(ch, rho))


def identity_channel(dim=2):
    return KrausChannel((np.eye(dim),), f"identity({dim})")


def dephasing(p):
    """Qubit phase flip with probability p."""
    return KrausChannel((np.sqrt(1 - p) * np.eye(2), np.sqrt(p) * np.diag([1.0, -1.0])), f"dephasing({p})")


def depolarizing_full(dim=2):
    """Completely depolarizing channel rho -> I/d, via the d^2 operators |i><j|/sqrt(d)."""
    ops = []
    for i in range(dim):
        for j in range(dim):
            K = np.zeros((dim, dim))
            K[i, j] = 1 / np.sqrt(dim)
            ops.append(K)
    return KrausChannel(tuple(ops), f"depolarizing({dim})")


def measure_prepare(basis, prepared, label=""):
    """EB channel measuring in the columns of ``basis`` and preparing the
    columns of ``prepared``."""
    ops = tuple(np.outer(prepared[:, k], basis[:, k].conj()) for k in range(basis.shape[1]))
    return EBChannel(KrausChannel(ops, label), basis, prepared)


def eb_channel_cq(dim, seed):
    """Seeded measure-and-prepare channel on a ``dim``-level system."""
    if dim < 2:
        raise ValueError("dim must be at least 2")
    rng = np.random.default_rng(seed)
    basis = unitary_group.rvs(dim, random_state=rng)
    prepared = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    prepared /= np.linalg.norm(prepared, axis=0)
    return measure_prepare(basis, prepared, f"eb(dim={dim}, seed={seed})")


def tensor_fd(ch1, ch2):
    if isinstance(ch1, EBChannel):
        ch1 = ch1.channel
    if isinstance(ch2, EBChannel):
        ch2 = ch2.channel
    ops = tuple(np.kron(K, L) for K in ch1.kraus for L in ch2.kraus)
    return KrausChannel(ops, f"{ch1.label} x {ch2.label}")


def _state_from_params(x, d):
    # lower-triangular Cholesky factor, real diagonal
    L = np.zeros((d, d), dtype=complex)
    il = np.tril_indices(d)
    m = len(il[0])
    L[il] = x[:m]
    off = np.tril_indices(d, -1)
    L[off] += 1j * x[m:]
    rho = L @ L.conj().T
    return rho / np.trace(rho).real


def max_coherent_info_fd(ch, trials=5, seed=0, maxiter=None):
    """Multi-start simplex maximization of the coherent information.

    Each trial starts from a full-rank random state drawn with seed
    ``seed + trial``; a pure basis state (coherent information exactly zero)
    is always included as a candidate, so the result is never negative.
    """
    if isinstance(ch, EBChannel):
        ch = ch.channel
    d = ch.dim_in
    if d > MAX_INPUT_DIM:
        raise ValueError(f"input dimension {d} exceeds the budget of {MAX_INPUT_DIM}")
    n_params = d * (d + 1) // 2 + d * (d - 1) // 2
    maxiter = maxiter or 400 * n_params
    pure = np.zeros((d, d))
    pure[0, 0] = 1
    best = max(0.0, coherent_info_fd(ch, pure))

    def objective(x):
        return -coherent_info_fd(ch, _state_from_params(x, d))

    for trial in range(trials):
        rng = np.random.default_rng(seed + trial)
        x0 = rng.normal(size=n_params)
        res = minimize(objective, x0, method="Nelder-Mead",
                       options={"maxiter": maxiter, "maxfev": maxiter, "xatol": 1e-8, "fatol": 1e-10,
                                "adaptive": True})
        best = max(best, -float(res.fun))
    return best


@dataclass(frozen=True)
class EBAdditivityReport:
    label: str
    combined: float
    single: float
    passed: bool


def verify_eb_additivity(eb, psi, trials=5, seed=0):
    """Compare max coherent information of eb (x) psi against that of psi."""
    combined_ch = tensor_fd(eb, psi)
    if combined_ch.dim_in > MAX_INPUT_DIM:
        raise ValueError(f"product input dimension {combined_ch.dim_in} exceeds {MAX_INPUT_DIM}")
    L = max_coherent_info_fd(combined_ch, trials, seed)
    R = max_coherent_info_fd(psi, trials, seed)
    return EBAdditivityReport(combined_ch.label, L, R, L <= R + LEMMA_TOL)


def bloch_grid(n_points=500):
    """Qubit density matrices on a deterministic grid filling the Bloch ball."""
    # Fibonacci directions times radii spread over [0, 1]
    k = np.arange(n_points)
    golden = np.pi * (3 - np.sqrt(5))
    z = 1 - 2 * (k + 0.5) / n_points
    r_xy = np.sqrt(1 - z * z)
    x, y = r_xy * np.cos(golden * k), r_xy * np.sin(golden * k)
    radius = ((k % 10) + 1) / 10
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1.0, -1.0]).astype(complex)
    out = []
    for xi, yi, zi, ri in zip(x, y, z, radius):
        out.append(0.5 * (np.eye(2) + ri * (xi * sx + yi * sy + zi * sz)))
    return out
