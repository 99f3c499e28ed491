"""Independent reference computations used to cross-check the library.

Written directly from definitions with no shared helpers: symplectic
eigenvalues via sqrt of eigenvalues of (i J gamma)^2, entropies by explicit
summation, channel outputs by building the full dilation unitary's action.
"""
import numpy as np


def omega(n):
    J = np.zeros((2 * n, 2 * n))
    for k in range(n):
        J[2 * k, 2 * k + 1] = 1
        J[2 * k + 1, 2 * k] = -1
    return J


def sympl_eigs(gamma):
    n = gamma.shape[0] // 2
    M = omega(n) @ gamma
    ev = np.linalg.eigvals(M @ M)  # = -nu^2, each twice
    nus = np.sort(np.sqrt(np.abs(ev.real)))[::-1]
    return nus[::2]


def g(x):
    if x <= 0:
        return 0.0
    return (1 + x) * np.log2(1 + x) - x * np.log2(x)


def entropy(gamma):
    return sum(g(max(nu, 1.0) / 2 - 0.5) for nu in sympl_eigs(gamma))


def tmsv(N):
    c, s = 2 * N + 1, 2 * np.sqrt(N * (N + 1))
    Z = np.diag([1.0, -1.0])
    return np.block([[c * np.eye(2), s * Z], [s * Z, c * np.eye(2)]])


def attenuator_ic_thermal(t, N, n):
    """Coherent information of a thermal attenuator on a thermal input with
    mean photon number n, from the known closed-form output spectra."""
    eta_out = t * (2 * n + 1) + (1 - t) * (2 * N + 1)
    S = np.array([[np.sqrt(t), np.sqrt(1 - t)], [np.sqrt(1 - t), -np.sqrt(t)]])
    # joint state signal + env system + env purifier, modes via 2x2 blocks
    I2 = np.eye(2)
    full = np.zeros((6, 6))
    full[:2, :2] = (2 * n + 1) * I2
    full[2:, 2:] = tmsv(N)
    U = np.eye(6)
    U[:4, :4] = np.kron(S, I2)
    out = U @ full @ U.T
    h_out = g((eta_out - 1) / 2)
    h_env = entropy(out[2:, 2:])
    return h_out - h_env


def q_data(t, N):
    arg = (t - N * (1 - t)) / ((1 + N) * (1 - t))
    return np.log2(arg) if arg > 1 else 0.0


def q_plob(t, N):
    return max(0.0, -np.log2(1 - t) - N * np.log2(t) - g(N))


def von_neumann(rho):
    w = np.linalg.eigvalsh(rho)
    w = w[w > 1e-14]
    return float(-(w * np.log2(w)).sum())
