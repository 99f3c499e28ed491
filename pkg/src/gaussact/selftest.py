"""Structural invariant suites, run by ``gaussact selftest``."""
import time

import numpy as np

from . import channels
from .activation import SearchConfig, input_family
from .bounds import coherent_information
from .symplectic import (
    is_physical,
    is_symplectic,
    random_covariance,
    random_symplectic,
    symplectic_eigenvalues,
    tmsv,
    uncertainty_gap,
)

ATTENUATOR_GRID = [(t, N) for t in (0.1, 0.3, 0.5, 0.7, 0.9) for N in (0.0, 0.25, 0.5, 1.0, 2.0)]
AMPLIFIER_GRID = [(G, N) for G in (1.1, 1.5, 2.0, 3.0, 5.0) for N in (0.0, 0.25, 0.5, 1.0, 2.0)]
PPT_PAIRS = [(1.0, 1.0), (1.5, 1.5), (2.0, 3.0), (3.3, 1.94)]


class InvariantFailure(AssertionError):
    pass


def _require(cond, message):
    if not cond:
        raise InvariantFailure(message)


def _all_channels():
    chans = [channels.attenuator(t, N) for t, N in ATTENUATOR_GRID]
    chans += [channels.amplifier(G, N) for G, N in AMPLIFIER_GRID]
    chans += [channels.ppt_channel(a, b) for a, b in PPT_PAIRS]
    chans.append(channels.tensor_with_ppt(channels.attenuator(0.5, 0.3), channels.ppt_channel(3.3, 1.94)))
    chans.append(channels.tensor_with_ppt(channels.amplifier(2.0, 0.5), channels.ppt_channel(4.0, 2.1)))
    return chans


def check_symplecticity():
    s = lambda t: (np.sqrt(t), np.sqrt(1 - t))
    for t, N in ATTENUATOR_GRID:
        a, c = s(t)
        S0 = np.block([[a * np.eye(2), c * np.eye(2)], [c * np.eye(2), -a * np.eye(2)]])
        _require(is_symplectic(S0), f"S_0 not symplectic at t={t}")
        _require(is_symplectic(channels.attenuator(t, N).S), f"S_th not symplectic at t={t}, N={N}")
    for G, N in AMPLIFIER_GRID:
        _require(is_symplectic(channels.amplifier(G, N).S), f"S_am not symplectic at G={G}, N={N}")
    for a, b in PPT_PAIRS:
        _require(is_symplectic(channels.ppt_matrix(a, b)), f"S_PPT not symplectic at a={a}, b={b}")


def check_cptp():
    for ch in _all_channels():
        _require(ch.cptp_gap() >= -1e-8, f"CPTP condition fails for {ch.label}")


def check_tmsv_purity():
    for N in (0.0, 0.5, 1.0, 5.0):
        nu = symplectic_eigenvalues(tmsv(N))
        _require(np.abs(nu - 1).max() < 1e-8, f"TMSV({N}) is not pure")


def check_entropy_balance():
    rng = np.random.default_rng(11)
    for ch in _all_channels():
        for trial in range(3):
            if trial == 0:
                gamma = np.eye(2 * ch.n_in)
            else:
                S = random_symplectic(ch.n_in, rng, 0.4)
                gamma = S @ S.T
            ci = coherent_information(ch, gamma)
            _require(abs(ci.value) < 1e-7, f"pure-input entropy balance fails for {ch.label}: {ci.value:.3g}")


def check_input_family():
    rng = np.random.default_rng(5)
    for p in rng.uniform(1, 10, size=(100, 3)):
        _require(uncertainty_gap(input_family(p)) >= -1e-9, f"input family unphysical at {p}")
    _require(np.array_equal(input_family((1, 1, 1)), np.eye(6)), "input_family(1, 1, 1) is not vacuum")


def check_ppt_choi():
    cfg = SearchConfig()
    pairs = [(cfg.ppt_a, cfg.ppt_b)] + list(cfg.ppt_grid)
    for a, b in pairs:
        ch = channels.ppt_channel(a, b)
        for r in (0.5, 1.0, 2.0):
            _require(channels.choi_ppt_gap(ch, r) >= -1e-9, f"PPT test fails for (a, b) = ({a}, {b}) at r={r}")


def check_dilation_oracle():
    rng = np.random.default_rng(3)
    for ch in _all_channels():
        for _ in range(5):
            gamma = random_covariance(ch.n_in, rng, 0.4)
            full = channels.apply_dilation(ch, gamma)
            k = 2 * ch.n_out
            _require(np.abs(full[:k, :k] - channels.apply(ch, gamma)).max() < 1e-10,
                     f"channel output disagrees with the dilation for {ch.label}")
            _require(np.abs(full[k:, k:] - channels.apply_complementary(ch, gamma)).max() < 1e-10,
                     f"complementary output disagrees with the dilation for {ch.label}")


def check_spectrum_invariance():
    rng = np.random.default_rng(17)
    for _ in range(40):
        n = int(rng.integers(1, 4))
        gamma = random_covariance(n, rng)
        _require(is_physical(gamma), "random covariance sample is unphysical")
        nu = symplectic_eigenvalues(gamma)
        _require(nu.min() >= 1 - 1e-8, "physical state with symplectic eigenvalue below 1")
        T = random_symplectic(n, rng, 0.3)
        _require(np.allclose(symplectic_eigenvalues(T @ gamma @ T.T), nu, rtol=0, atol=1e-8),
                 "symplectic spectrum not invariant under a symplectic congruence")


SUITES = [
    ("symplecticity", check_symplecticity),
    ("cptp", check_cptp),
    ("tmsv-purity", check_tmsv_purity),
    ("pure-input-entropy-balance", check_entropy_balance),
    ("input-family-physicality", check_input_family),
    ("ppt-choi", check_ppt_choi),
    ("dilation-oracle", check_dilation_oracle),
    ("spectrum-invariance", check_spectrum_invariance),
]


def run_selftest(out=print):
    """Run every suite; return a list of (name, passed, message, seconds)."""
    results = []
    for name, check in SUITES:
        t0 = time.perf_counter()
        try:
            check()
            passed, message = True, ""
        except (InvariantFailure, ValueError) as exc:
            passed, message = False, str(exc)
        dt = time.perf_counter() - t0
        results.append((name, passed, message, dt))
        if out is not None:
            status = "ok" if passed else "FAIL"
            out(f"{status:4s} {name:30s} {dt:7.3f}s {message}".rstrip())
    return results
