"""Grid sweeps over the (tau, y) channel plane and their serialization."""
import csv
import io
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .activation import SearchConfig, optimize_activation
from .bounds import BoundKind, max_coherent_information, q_upper
from .channels import PhaseInsensitiveSpec, Region, classify_region

CSV_FIELDS = ("tau", "y", "region", "t_or_G", "N", "q_upper", "ci_max", "ic_combined", "delta",
              "s1", "s2", "s3", "ppt_a", "ppt_b", "certified", "flags")


@dataclass
class ScanRecord:
    tau: float
    y: float
    region: str
    t_or_G: float = None
    N: float = None
    q_upper: float = None
    ci_max: float = None
    ic_combined: float = None
    delta: float = None
    s1: float = None
    s2: float = None
    s3: float = None
    ppt_a: float = None
    ppt_b: float = None
    certified: bool = False
    flags: list = field(default_factory=list)


@dataclass(frozen=True)
class ScanConfig:
    tau_min: float = 0.4
    tau_max: float = 0.6
    tau_steps: int = 3
    y_min: float = 0.3
    y_max: float = 0.7
    y_steps: int = 3
    bound: str = "qu"
    search: SearchConfig = SearchConfig()
    threads: int = 1
    out_path: str = "scan.csv"
    format: str = "csv"

    def __post_init__(self):
        if self.tau_steps < 1 or self.y_steps < 1:
            raise ValueError("grid steps must be >= 1")
        if self.tau_min > self.tau_max or self.y_min > self.y_max:
            raise ValueError("grid ranges must be ordered (min <= max)")
        if self.bound not in ("qu", "cimax"):
            raise ValueError(f"bound must be 'qu' or 'cimax', got {self.bound!r}")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be 'csv' or 'json', got {self.format!r}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    @property
    def bound_kind(self):
        return BoundKind(self.bound)

    def grid(self):
        """Grid points in output order: tau outer, y inner, endpoints included."""
        taus = np.linspace(self.tau_min, self.tau_max, self.tau_steps)
        ys = np.linspace(self.y_min, self.y_max, self.y_steps)
        return [(float(t), float(y)) for t in taus for y in ys]


def scan_point(tau, y, bound_kind, search):
    """Evaluate one grid point; numeric failures end up in ``flags``."""
    region = classify_region(tau, y)
    rec = ScanRecord(tau=tau, y=y, region=region.value)
    if region is Region.NON_PHYSICAL:
        rec.flags.append("skipped")
        return rec
    if tau == 1:
        rec.flags += ["skipped", "additive-noise"]
        return rec
    spec = PhaseInsensitiveSpec.from_tau_y(tau, y)
    rec.t_or_G, rec.N = spec.gain, spec.N
    if bound_kind is BoundKind.Q_UPPER and not spec.is_attenuator:
        rec.flags += ["skipped", "no-amplifier-bound"]
        return rec
    try:
        cimax = max_coherent_information(spec, details=True)
        rec.ci_max = cimax.value
        if not cimax.converged:
            rec.flags.append("cimax-unconverged")
        if spec.is_attenuator:
            rec.q_upper = q_upper(spec.gain, spec.N)
        bound = rec.q_upper if bound_kind is BoundKind.Q_UPPER else rec.ci_max
        res = optimize_activation(spec, search, bound_kind, bound=bound)
    except (ValueError, np.linalg.LinAlgError) as exc:
        rec.flags.append(f"error:{type(exc).__name__}")
        return rec
    rec.ic_combined = res.ic_combined
    rec.delta = res.delta
    rec.s1, rec.s2, rec.s3 = (float(v) for v in res.best_params.as_tuple())
    rec.ppt_a, rec.ppt_b = res.ppt_ab
    rec.certified = bool(res.certified)
    rec.flags += list(res.flags)
    return rec


def _scan_job(args):
    return scan_point(*args)


def run_scan(cfg):
    jobs = [(t, y, cfg.bound_kind, cfg.search) for t, y in cfg.grid()]
    if cfg.threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            return list(pool.map(_scan_job, jobs))
    return [_scan_job(job) for job in jobs]


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, list):
        return ";".join(value)
    return str(value)


def records_to_csv(records):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in records:
        writer.writerow([_fmt(getattr(rec, name)) for name in CSV_FIELDS])
    return buf.getvalue()


def records_to_json(records):
    return json.dumps([asdict(r) for r in records], indent=1) + "\n"


def _parse_cell(name, text):
    if name in ("region",):
        return text
    if name == "certified":
        return text == "true"
    if name == "flags":
        return text.split(";") if text else []
    return float(text) if text != "" else None


def read_csv(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames) != CSV_FIELDS:
            raise ValueError("unexpected CSV header")
        return [ScanRecord(**{k: _parse_cell(k, v) for k, v in row.items()}) for row in reader]


def write_atomic(path, text):
    """Write ``text`` to ``path`` through a temporary file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".scan-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_records(records, path, fmt="csv"):
    write_atomic(path, records_to_csv(records) if fmt == "csv" else records_to_json(records))


# --- key = value configuration files -------------------------------------

_SCAN_KEYS = {f.name: f.type for f in fields(ScanConfig) if f.name != "search"}
_SEARCH_KEYS = {f.name: f.type for f in fields(SearchConfig)}


def parse_ppt_grid(text):
    """Parse ``"a:b, a:b, ..."`` into a tuple of pairs."""
    pairs = []
    for item in text.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        a, b = item.split(":")
        pairs.append((float(a), float(b)))
    if not pairs:
        raise ValueError("empty ppt_grid")
    return tuple(pairs)


def _convert(key, value):
    if key in ("tau_steps", "y_steps", "starts", "max_iters"):
        return int(value)
    if key == "threads":
        if str(value).strip() == "auto":
            return os.cpu_count() or 1
        return int(value)
    if key in ("optimize_ppt", "require_ppt"):
        if isinstance(value, bool):
            return value
        v = str(value).strip().lower()
        if v in ("1", "true", "yes", "on"):
            return True
        if v in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"invalid boolean {value!r} for {key}")
    if key == "ppt_grid":
        return value if isinstance(value, tuple) else parse_ppt_grid(value)
    if key in ("bound", "out_path", "format"):
        return str(value).strip()
    return float(value)


def read_config_file(path):
    """Read ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key == "out":
                key = "out_path"
            if key not in _SCAN_KEYS and key not in _SEARCH_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value
    return values


def build_scan_config(file_values=None, overrides=None):
    """Merge file values with explicit overrides (overrides win)."""
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    search = {k: _convert(k, v) for k, v in merged.items() if k in _SEARCH_KEYS}
    scan = {k: _convert(k, v) for k, v in merged.items() if k in _SCAN_KEYS}
    return ScanConfig(search=SearchConfig(**search), **scan)


def build_search_config(file_values=None, overrides=None):
    merged = dict(file_values or {})
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return SearchConfig(**{k: _convert(k, v) for k, v in merged.items() if k in _SEARCH_KEYS})


def containment_violations(qu_records, cimax_records=None, tol=1e-9, margin=1e-4):
    """Points with 0.5 < tau < 1 certified against Q_U whose max-coherent-
    information delta falls below the Q_U delta although ci_max <= q_upper.

    ``cimax_records`` is a sweep run with bound="cimax", matched on (tau, y);
    without it the cimax delta is taken from the Q_U record itself.
    """
    other = {(r.tau, r.y): r for r in (cimax_records or [])}
    bad = []
    for r in qu_records:
        if r.ic_combined is None or r.q_upper is None or r.ci_max is None or not 0.5 < r.tau < 1:
            continue
        d_qu = r.ic_combined - r.q_upper
        if d_qu <= margin or r.ci_max > r.q_upper:
            continue
        match = other.get((r.tau, r.y)) if cimax_records is not None else r
        if match is None or match.ic_combined is None or match.ci_max is None:
            bad.append(r)
            continue
        if match.ic_combined - match.ci_max < d_qu - tol:
            bad.append(r)
    return bad
