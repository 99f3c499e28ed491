"""Search for (super)activation of quantum capacity.

A three-mode Gaussian input with three squeezing parameters is sent through
PPT (x) single-mode channel. If its coherent information beats an upper
bound on the single-mode channel's capacity (or its maximal coherent
information) the zero-capacity PPT helper has activated the channel.
"""
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .bounds import BoundKind, coherent_information, max_coherent_information, q_upper
from .channels import is_ppt_parameter, ppt_channel, tensor_with_ppt

CERTIFY_MARGIN = 1e-4


@dataclass(frozen=True)
class InputFamilyParams:
    s1: float = 1.0
    s2: float = 1.0
    s3: float = 1.0

    def __post_init__(self):
        if min(self.s1, self.s2, self.s3) < 1:
            raise ValueError("squeezing parameters must be >= 1")

    def as_tuple(self):
        return (self.s1, self.s2, self.s3)


def input_family(p):
    """6 x 6 covariance matrix of the three-parameter input state.

    Modes 1 and 2 are squeezed by ``s1`` and ``s3``; mode 3 is correlated
    with both, with ``s2`` setting the strength. ``(1, 1, 1)`` is vacuum.
    """
    if not isinstance(p, InputFamilyParams):
        p = InputFamilyParams(*p)
    x, y, z = p.as_tuple()
    x2, y2, z2 = x * x, y * y, z * z
    d1 = (x2 * x2 + 1) / (2 * x2)
    d2 = (z2 * z2 + 1) / (2 * z2)
    c13 = (x2 * x2 - 1) * (y2 - 1) / (4 * x2 * y)
    c23 = (y2 + 1) * (z2 * z2 - 1) / (4 * y * z2)
    f = (x2 * (y2 + 1) ** 2 * z2 * z2 + (x2 * x2 + 1) * (y2 - 1) ** 2 * z2 + x2 * (y2 + 1) ** 2) / (8 * x2 * y2 * z2)
    g = np.diag([d1, d1, d2, d2, f, f])
    g[0, 4] = g[4, 0] = g[1, 5] = g[5, 1] = c13
    g[2, 4] = g[4, 2] = c23
    g[3, 5] = g[5, 3] = -c23
    return g


def _validate_pair(pair):
    a, b = map(float, pair)
    if a < 1 or b < 1:
        raise ValueError("PPT parameters must be >= 1")
    return a, b


@dataclass(frozen=True)
class SearchConfig:
    s_max: float = 10.0
    starts: int = 27
    max_iters: int = 500
    f_tol: float = 1e-9
    ppt_a: float = 3.3
    ppt_b: float = 1.94
    optimize_ppt: bool = False
    ppt_grid: tuple = ((3.3, 1.94), (3.5, 1.94), (4.0, 1.94), (4.0, 2.1), (5.0, 2.0))
    require_ppt: bool = True
    certify_margin: float = CERTIFY_MARGIN

    def __post_init__(self):
        if self.s_max < 1:
            raise ValueError("s_max must be >= 1")
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        object.__setattr__(self, "ppt_grid", tuple(_validate_pair(p) for p in self.ppt_grid))
        _validate_pair((self.ppt_a, self.ppt_b))

    def pairs(self):
        return self.ppt_grid if self.optimize_ppt else ((self.ppt_a, self.ppt_b),)


@dataclass(frozen=True)
class ActivationResult:
    spec: object
    best_params: InputFamilyParams
    ppt_ab: tuple
    ic_combined: float
    bound_value: float
    bound_kind: BoundKind
    certified: bool
    flags: tuple = field(default=())

    @property
    def delta(self):
        return self.ic_combined - self.bound_value


def bound_value(spec, bound_kind):
    if bound_kind is BoundKind.Q_UPPER:
        if not spec.is_attenuator or spec.gain >= 1:
            raise ValueError("the Q_U bound is only defined for attenuators with t < 1")
        return q_upper(spec.gain, spec.N)
    return max_coherent_information(spec)


def activation_objective(spec, p, ppt_ab, channel=None):
    """Coherent information of PPT(a, b) (x) spec on input_family(p)."""
    if channel is None:
        channel = tensor_with_ppt(spec.channel(), ppt_channel(*ppt_ab))
    return coherent_information(channel, input_family(p), check_physical=False).value


def start_lattice(dim, starts, upper):
    """Uniform k^dim lattice of the box [0, upper]^dim, k = round(starts^(1/dim)).

    Extra points beyond ``starts`` are dropped in lattice order.
    """
    k = max(1, int(round(starts ** (1.0 / dim))))
    while k ** dim < starts:
        k += 1
    axis = np.linspace(0.0, upper, k) if k > 1 else np.array([upper / 2])
    return [np.array(u) for u in itertools.product(axis, repeat=dim)][:starts]


def fold_into_box(u, upper):
    """Reflect coordinates into [0, upper] at both walls."""
    u = np.mod(u, 2 * upper)
    return np.where(u > upper, 2 * upper - u, u)


def _search_pair(spec, pair, cfg):
    channel = tensor_with_ppt(spec.channel(), ppt_channel(*pair))
    upper = float(np.log(cfg.s_max))

    def negative(u):
        s = np.exp(fold_into_box(u, upper))
        return -coherent_information(channel, input_family(s), check_physical=False).value

    best_val, best_u = -np.inf, None
    for u0 in start_lattice(3, cfg.starts, upper):
        res = minimize(negative, u0, method="Nelder-Mead",
                       options={"maxiter": cfg.max_iters, "fatol": cfg.f_tol, "xatol": 1e-8})
        if -res.fun > best_val:
            best_val, best_u = -float(res.fun), fold_into_box(res.x, upper)
    return best_val, InputFamilyParams(*np.maximum(np.exp(best_u), 1.0))


def optimize_activation(spec, cfg=None, bound_kind=BoundKind.Q_UPPER, bound=None):
    """Maximize the combined coherent information and compare with a bound.

    The search runs in u = ln(s) over the cube [0, ln s_max]^3 from a
    lattice of starting points, and is deterministic for a given ``cfg``.
    ``bound`` may be passed to skip recomputing the single-channel bound.
    """
    cfg = cfg or SearchConfig()
    if bound is None:
        bound = bound_value(spec, bound_kind)
    flags = []
    pairs = []
    for pair in cfg.pairs():
        if is_ppt_parameter(*pair):
            pairs.append(pair)
        elif cfg.require_ppt:
            flags.append(f"non-ppt-skipped:{pair[0]:g},{pair[1]:g}")
        else:
            flags.append(f"non-ppt:{pair[0]:g},{pair[1]:g}")
            pairs.append(pair)
    if not pairs:
        raise ValueError("no (a, b) pair gives a PPT channel; set require_ppt=False to search anyway")
    best = None
    for pair in pairs:
        value, params = _search_pair(spec, pair, cfg)
        if best is None or value > best[0]:
            best = (value, params, pair)
    value, params, pair = best
    return ActivationResult(
        spec=spec,
        best_params=params,
        ppt_ab=pair,
        ic_combined=value,
        bound_value=bound,
        bound_kind=bound_kind,
        certified=value - bound > cfg.certify_margin,
        flags=tuple(flags),
    )


def _map_item(args):
    spec, cfg, bound_kind = args
    try:
        return optimize_activation(spec, cfg, bound_kind)
    except (ValueError, np.linalg.LinAlgError) as exc:
        return exc


def activation_difference_map(specs, cfg=None, bound_kind=BoundKind.Q_UPPER, workers=1):
    """``optimize_activation`` on every spec, in order.

    Failures are returned in place as exception instances rather than
    raised. ``workers > 1`` evaluates the list in a process pool.
    """
    cfg = cfg or SearchConfig()
    jobs = [(spec, cfg, bound_kind) for spec in specs]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_map_item, jobs))
    return [_map_item(job) for job in jobs]
