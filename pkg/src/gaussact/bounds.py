"""Coherent information of dilated channels and capacity bounds for
phase-insensitive single-mode channels."""
import enum
import math
from typing import NamedTuple

import numpy as np

from .channels import apply, apply_complementary
from .symplectic import g_function, gaussian_entropy


class BoundKind(enum.Enum):
    Q_UPPER = "qu"
    MAX_COHERENT_INFO = "cimax"


class CoherentInfo(NamedTuple):
    value: float
    h_out: float
    h_comp: float


def coherent_information(ch, gamma, check_physical=True):
    """H(output) - H(complementary output), in bits."""
    h_out = gaussian_entropy(apply(ch, gamma, check_physical))
    h_comp = gaussian_entropy(apply_complementary(ch, gamma, check_physical))
    return CoherentInfo(h_out - h_comp, h_out, h_comp)


def _check_attenuator(t, N):
    if not 0 < t < 1:
        raise ValueError(f"bound defined for 0 < t < 1, got t={t}")
    if N < 0:
        raise ValueError("thermal photon number must be non-negative")


def q_data(t, N):
    """Data-processing bound on the thermal attenuator's quantum capacity."""
    _check_attenuator(t, N)
    # (N(1-t) - t) / ((1+N)(t-1)) rewritten with a positive denominator
    arg = (t - N * (1 - t)) / ((1 + N) * (1 - t))
    if arg <= 1:
        return 0.0
    return math.log2(arg)


def q_plob(t, N):
    """Pirandola-Laurenza-Ottaviani-Banchi bound for the thermal attenuator."""
    _check_attenuator(t, N)
    value = -math.log2(1 - t) - N * math.log2(t) - g_function(N)
    return max(0.0, value)


def q_upper(t, N):
    return min(q_data(t, N), q_plob(t, N))


class MaxCoherentInfo(NamedTuple):
    value: float
    n_best: float
    converged: bool
    grid: np.ndarray
    values: np.ndarray


def max_coherent_information(spec, n_max=1e4, grid_points=200, details=False):
    """Largest coherent information over isotropic thermal inputs (2n+1) I.

    The grid is n = 0 followed by ``grid_points - 1`` log-spaced values in
    [1e-4, n_max]. The result is floored at zero. With ``details=True`` a
    ``MaxCoherentInfo`` is returned whose ``converged`` flag is False when the
    supremum sits at the energy cap and the last two grid values still differ
    by 1e-4 bits or more.
    """
    if n_max <= 0:
        raise ValueError("n_max must be positive")
    ch = spec.channel()
    grid = np.concatenate([[0.0], np.geomspace(1e-4, n_max, grid_points - 1)])
    values = np.array([coherent_information(ch, (2 * n + 1) * np.eye(2), False).value for n in grid])
    k = int(np.argmax(values))
    best = max(0.0, float(values[k]))
    converged = not (k == len(grid) - 1 and abs(values[-1] - values[-2]) >= 1e-4)
    if details:
        return MaxCoherentInfo(best, float(grid[k]), converged, grid, values)
    return best


def asymptotic_coherent_information(spec):
    """Infinite-energy limit of the thermal-input coherent information.

    log2(t / (1 - t)) - g(N) for attenuators, log2(G / (G - 1)) - g(N) for
    amplifiers.
    """
    G = spec.gain
    return math.log2(G / abs(1 - G)) - g_function(spec.N)
