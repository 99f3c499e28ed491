"""Phase-insensitive Gaussian channels and the two-mode PPT channel, built
from symplectic dilations so that both the channel and its complementary
channel are available.

A dilation is stored as the four blocks of ``S = [[X, Z], [X_c, Z_c]]``
together with the (pure) covariance matrix of the environment input. Thermal
noise is always represented by a two-mode squeezed vacuum, the second mode
of which passes through the dilation untouched.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from .symplectic import (
    PAULI_Z,
    SYMPLECTIC_TOL,
    _omega,
    as_covariance,
    direct_sum,
    is_physical,
    is_symplectic,
    n_modes,
    partial_transpose,
    symplectic_eigenvalues,
    tmsv,
    uncertainty_gap,
)

_I2 = np.eye(2)


@dataclass(frozen=True, eq=False)
class DilatedChannel:
    X: np.ndarray
    Z: np.ndarray
    X_c: np.ndarray
    Z_c: np.ndarray
    env_cov: np.ndarray
    label: str = ""
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        for name in ("X", "Z", "X_c", "Z_c", "env_cov"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if self.X.shape[0] + self.X_c.shape[0] != self.X.shape[1] + self.Z.shape[1]:
            raise ValueError("dilation must be square: n_out + n_env == n_in + n_env")
        if self.Z.shape[1] != self.env_cov.shape[0]:
            raise ValueError("environment covariance does not match the Z block")
        if self.check:
            if not is_symplectic(self.S, SYMPLECTIC_TOL):
                raise ValueError(f"dilation of {self.label or 'channel'} is not symplectic")
            nu = symplectic_eigenvalues(self.env_cov)
            if np.abs(nu - 1).max() > 1e-8:
                raise ValueError("environment state must be pure")

    @property
    def n_in(self):
        return self.X.shape[1] // 2

    @property
    def n_out(self):
        return self.X.shape[0] // 2

    @property
    def n_env(self):
        return self.Z.shape[1] // 2

    @property
    def S(self):
        return np.block([[self.X, self.Z], [self.X_c, self.Z_c]])

    @property
    def Y(self):
        """Additive noise matrix of the channel, Z env_cov Z^T."""
        return self.Z @ self.env_cov @ self.Z.T

    def cptp_gap(self):
        """Smallest eigenvalue of Y + i(J - X J X^T); non-negative for a valid channel."""
        J_in, J_out = _omega(self.n_in), _omega(self.n_out)
        M = self.Y + 1j * (J_out - self.X @ J_in @ self.X.T)
        return float(np.linalg.eigvalsh(M).min())

    def ppt_gap(self):
        """Smallest eigenvalue of Y + i(J + X J X^T).

        Non-negative iff the channel followed by a transposition of its
        output is completely positive, i.e. the channel is PPT.
        """
        J_in, J_out = _omega(self.n_in), _omega(self.n_out)
        M = self.Y + 1j * (J_out + self.X @ J_in @ self.X.T)
        return float(np.linalg.eigvalsh(M).min())


def _check_input(ch, gamma, check_physical):
    gamma = as_covariance(gamma)
    if n_modes(gamma) != ch.n_in:
        raise ValueError(f"channel expects {ch.n_in} input modes, got {n_modes(gamma)}")
    if check_physical and not is_physical(gamma):
        raise ValueError("input covariance matrix is unphysical")
    return gamma


def apply(ch, gamma, check_physical=True):
    """Output covariance X gamma X^T + Z env Z^T."""
    gamma = _check_input(ch, gamma, check_physical)
    return ch.X @ gamma @ ch.X.T + ch.Y


def apply_complementary(ch, gamma, check_physical=True):
    """Covariance of the environment output, X_c gamma X_c^T + Z_c env Z_c^T."""
    gamma = _check_input(ch, gamma, check_physical)
    return ch.X_c @ gamma @ ch.X_c.T + ch.Z_c @ ch.env_cov @ ch.Z_c.T


def apply_dilation(ch, gamma):
    """Full joint output (system then environment) of the dilation.

    Independent of ``apply``/``apply_complementary``; tests use it as the
    reference path.
    """
    gamma = _check_input(ch, gamma, False)
    S = ch.S
    return S @ direct_sum(gamma, ch.env_cov) @ S.T


def _embed_thermal(X0, Z0, Xc0, Zc0, N, label):
    # second TMSV mode is the purifier and bypasses the beam splitter / squeezer
    Z = np.hstack([Z0, np.zeros((2, 2))])
    X_c = np.vstack([Xc0, np.zeros((2, 2))])
    Z_c = direct_sum(Zc0, _I2)
    return DilatedChannel(X0, Z, X_c, Z_c, tmsv(N), label)


def attenuator(t, N=0.0):
    """Thermal attenuator of transmissivity ``t`` in a thermal bath of ``N`` photons."""
    if not 0 < t <= 1:
        raise ValueError(f"transmissivity must lie in (0, 1], got {t}")
    if N < 0:
        raise ValueError("thermal photon number must be non-negative")
    s, c = np.sqrt(t), np.sqrt(1 - t)
    return _embed_thermal(s * _I2, c * _I2, c * _I2, -s * _I2, N, f"attenuator(t={t}, N={N})")


def amplifier(G, N=0.0):
    """Thermal amplifier with gain ``G > 1`` and ``N`` thermal photons."""
    if not G > 1:
        raise ValueError(f"gain must exceed 1, got {G}")
    if N < 0:
        raise ValueError("thermal photon number must be non-negative")
    s, c = np.sqrt(G), np.sqrt(G - 1)
    return _embed_thermal(s * _I2, c * PAULI_Z, c * PAULI_Z, s * _I2, N, f"amplifier(G={G}, N={N})")


def ppt_matrix(a, b):
    """The 8 x 8 symplectic matrix of the two-mode PPT channel.

    Modes 1-2 are the system, modes 3-4 the vacuum environment.
    """
    if a < 1 or b < 1:
        raise ValueError("PPT channel parameters must satisfy a, b >= 1")
    r3, r6, r2 = np.sqrt(3.0), np.sqrt(6.0), np.sqrt(2.0)
    A = (a * a + 1) / a
    B = (b * b + 1) / b
    C = (a + b) * (a * b - 1) / (a * b)
    da = (a * a - 1) / (2 * a)
    db = (b * b - 1) / (2 * b)
    u = (-a + 2 * b - 2 / b + 1 / a) / 6
    v = (-2 * a + b - 1 / b + 2 / a) / 6
    S = np.zeros((8, 8))
    S[0, [0, 2, 4]] = [da, A / (2 * r3), A / r6]
    S[1, [1, 3, 5]] = [-da, A / (2 * r3), A / r6]
    S[2, [0, 2, 4, 6]] = [-A / (2 * r3), u, -C / (3 * r2), -B / r6]
    S[3, [1, 3, 5, 7]] = [-A / (2 * r3), -u, C / (3 * r2), -B / r6]
    S[4, [0, 2, 4, 6]] = [-A / r6, -C / (3 * r2), v, B / (2 * r3)]
    S[5, [1, 3, 5, 7]] = [-A / r6, C / (3 * r2), -v, B / (2 * r3)]
    S[6, [2, 4, 6]] = [B / r6, -B / (2 * r3), -db]
    S[7, [3, 5, 7]] = [B / r6, -B / (2 * r3), db]
    return S


def ppt_channel(a, b):
    S = ppt_matrix(a, b)
    return DilatedChannel(S[:4, :4], S[:4, 4:], S[4:, :4], S[4:, 4:], np.eye(4), f"ppt(a={a}, b={b})")


def is_ppt_parameter(a, b, tol=1e-9):
    """True iff ``ppt_channel(a, b)`` is actually a PPT channel.

    The matrix is symplectic for every a, b >= 1, but the PPT property only
    holds on a sub-region (roughly b >= 1.932 and b not much larger than
    0.7 a).
    """
    return ppt_channel(a, b).ppt_gap() >= -tol


def choi_ppt_gap(ch, r):
    """Uncertainty gap of the partially transposed output of ch (x) id on TMSV(r) pairs.

    Each channel input mode is entangled with its own reference mode; the
    output modes are transposed. Non-negative for a PPT channel.
    """
    n = ch.n_in
    # ordering: inputs 0..n-1, references n..2n-1
    state = np.zeros((4 * n, 4 * n))
    pair = tmsv(r)
    for k in range(n):
        for i, p in enumerate((k, n + k)):
            for j, q in enumerate((k, n + k)):
                state[2 * p:2 * p + 2, 2 * q:2 * q + 2] = pair[2 * i:2 * i + 2, 2 * j:2 * j + 2]
    M = direct_sum(ch.X, np.eye(2 * n))
    out = M @ state @ M.T
    out[:2 * ch.n_out, :2 * ch.n_out] += ch.Y
    return uncertainty_gap(partial_transpose(out, range(ch.n_out)))


def tensor(first, second):
    """Parallel composition; modes of ``first`` precede those of ``second``
    in the input, output and environment."""
    pad = lambda A, B: np.block([[A, np.zeros((A.shape[0], B.shape[1]))],
                                 [np.zeros((B.shape[0], A.shape[1])), B]])
    return DilatedChannel(
        pad(first.X, second.X),
        pad(first.Z, second.Z),
        pad(first.X_c, second.X_c),
        pad(first.Z_c, second.Z_c),
        direct_sum(first.env_cov, second.env_cov),
        f"{first.label} x {second.label}",
    )


def tensor_with_ppt(single, ppt):
    """Combined channel PPT (x) single on three input modes.

    Input modes 1-2 enter the PPT channel and mode 3 the single-mode channel;
    the environment holds the two PPT vacuum modes followed by the thermal
    mode and its purifier.
    """
    if single.n_in != 1 or single.n_out != 1:
        raise ValueError("expected a single-mode channel")
    if ppt.n_in != 2 or ppt.n_out != 2:
        raise ValueError("expected a two-mode PPT channel")
    return tensor(ppt, single)


def weak_complementary_attenuator(t, N, gamma):
    """Thermal-mode output of the attenuator's environment, purifier discarded."""
    if not 0 < t <= 1 or N < 0:
        raise ValueError("require 0 < t <= 1 and N >= 0")
    return (1 - t) * as_covariance(gamma) + (2 * N + 1) * t * np.eye(2)


class Region(enum.Enum):
    NON_PHYSICAL = "NonPhysical"
    ENTANGLEMENT_BREAKING = "EntanglementBreaking"
    INTERIOR = "Interior"

    def __str__(self):
        return self.value


def classify_region(tau, y):
    """Place (tau, y) = (det X, sqrt(det Y)) in the channel plane."""
    if y < abs(tau - 1):
        return Region.NON_PHYSICAL
    if y >= abs(tau) + 1:
        return Region.ENTANGLEMENT_BREAKING
    return Region.INTERIOR


@dataclass(frozen=True)
class PhaseInsensitiveSpec:
    """A thermal attenuator (gain = t <= 1) or amplifier (gain = G > 1)."""

    kind: str
    gain: float
    N: float

    def __post_init__(self):
        if self.kind == "attenuator":
            if not 0 < self.gain <= 1:
                raise ValueError(f"attenuator transmissivity must be in (0, 1], got {self.gain}")
        elif self.kind == "amplifier":
            if not self.gain > 1:
                raise ValueError(f"amplifier gain must exceed 1, got {self.gain}")
        else:
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.N < 0:
            raise ValueError(f"thermal photon number must be non-negative, got {self.N}")

    @classmethod
    def attenuator(cls, t, N=0.0):
        return cls("attenuator", float(t), float(N))

    @classmethod
    def amplifier(cls, G, N=0.0):
        return cls("amplifier", float(G), float(N))

    @classmethod
    def from_tau_y(cls, tau, y):
        """Invert tau = gain and y = |gain - 1| (2N + 1).

        Raises ``ValueError`` for non-physical points (N < 0) and for the
        additive-noise line tau = 1, which has no dilation here.
        """
        if tau <= 0:
            raise ValueError("tau must be positive")
        if tau == 1:
            raise ValueError("additive-noise channels (tau = 1) are not supported")
        N = (y / abs(1 - tau) - 1) / 2
        if N < 0:
            if N > -1e-12:
                N = 0.0
            else:
                raise ValueError(f"(tau, y) = ({tau}, {y}) is not a physical channel")
        return cls("attenuator" if tau < 1 else "amplifier", float(tau), float(N))

    @property
    def tau(self):
        return self.gain

    @property
    def y(self):
        return abs(self.gain - 1) * (2 * self.N + 1)

    @property
    def is_attenuator(self):
        return self.kind == "attenuator"

    def channel(self):
        if self.is_attenuator:
            return attenuator(self.gain, self.N)
        return amplifier(self.gain, self.N)
