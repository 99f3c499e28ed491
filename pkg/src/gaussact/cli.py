"""Command-line entry point: ``gaussact {scan,point,verify-eb,selftest}``.

Exit codes: 0 success, 1 invariant or lemma failure, 2 usage or
configuration error, 3 I/O error.
"""
import argparse
import json
import sys
import time

from .activation import optimize_activation
from .bounds import BoundKind, max_coherent_information, q_upper
from .channels import PhaseInsensitiveSpec, Region, classify_region
from .finite_dim import MAX_INPUT_DIM, dephasing, eb_channel_cq, identity_channel, verify_eb_additivity
from .scan import build_scan_config, build_search_config, read_config_file, run_scan, write_records
from .selftest import run_selftest

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _bool(text):
    v = text.lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"invalid boolean {text!r}")


def _add_search_flags(p):
    g = p.add_argument_group("search")
    g.add_argument("--s-max", dest="s_max", type=float)
    g.add_argument("--starts", type=int)
    g.add_argument("--max-iters", dest="max_iters", type=int)
    g.add_argument("--f-tol", dest="f_tol", type=float)
    g.add_argument("--ppt-a", dest="ppt_a", type=float)
    g.add_argument("--ppt-b", dest="ppt_b", type=float)
    g.add_argument("--optimize-ppt", dest="optimize_ppt", type=_bool, metavar="BOOL")
    g.add_argument("--ppt-grid", dest="ppt_grid", metavar="A:B,A:B,...")
    g.add_argument("--require-ppt", dest="require_ppt", type=_bool, metavar="BOOL")
    g.add_argument("--certify-margin", dest="certify_margin", type=float)
    g.add_argument("--config", help="key = value configuration file; flags win on conflict")


_SEARCH_DESTS = ("s_max", "starts", "max_iters", "f_tol", "ppt_a", "ppt_b", "optimize_ppt",
                 "ppt_grid", "require_ppt", "certify_margin")
_SCAN_DESTS = ("tau_min", "tau_max", "tau_steps", "y_min", "y_max", "y_steps", "bound", "threads",
               "out_path", "format")


def make_parser():
    parser = _Parser(prog="gaussact", description="Activation of Gaussian channel capacity by a PPT helper.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scan", help="sweep a (tau, y) grid")
    p.add_argument("--tau-min", dest="tau_min", type=float)
    p.add_argument("--tau-max", dest="tau_max", type=float)
    p.add_argument("--tau-steps", dest="tau_steps", type=int)
    p.add_argument("--y-min", dest="y_min", type=float)
    p.add_argument("--y-max", dest="y_max", type=float)
    p.add_argument("--y-steps", dest="y_steps", type=int)
    p.add_argument("--bound", choices=["qu", "cimax"])
    p.add_argument("--threads", help="worker count or 'auto'")
    p.add_argument("--out", dest="out_path")
    p.add_argument("--format", choices=["csv", "json"])
    _add_search_flags(p)

    p = sub.add_parser("point", help="optimize a single (tau, y) point")
    p.add_argument("tau", type=float)
    p.add_argument("y", type=float)
    p.add_argument("--bound", choices=["qu", "cimax"], default="qu")
    p.add_argument("--out", dest="out_path", help="also write the JSON report here")
    _add_search_flags(p)

    p = sub.add_parser("verify-eb", help="numerically check EB additivity of coherent information")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    sub.add_parser("selftest", help="run the structural invariant suites")
    return parser


def _file_values(args):
    if getattr(args, "config", None):
        return read_config_file(args.config)
    return {}


def cmd_scan(args):
    try:
        overrides = {k: getattr(args, k) for k in _SCAN_DESTS + _SEARCH_DESTS}
        cfg = build_scan_config(_file_values(args), overrides)
    except (OSError, ValueError, TypeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    records = run_scan(cfg)
    try:
        write_records(records, cfg.out_path, cfg.format)
    except OSError as exc:
        print(f"write error: {exc}", file=sys.stderr)
        return EXIT_IO
    n_cert = sum(r.certified for r in records)
    print(f"{len(records)} records, {n_cert} certified, written to {cfg.out_path} "
          f"({time.perf_counter() - t0:.1f}s)")
    return EXIT_OK


def point_report(tau, y, bound, search):
    """Optimize one point and return the report dict (raises ValueError if unphysical)."""
    region = classify_region(tau, y)
    if region is Region.NON_PHYSICAL:
        raise ValueError(f"(tau, y) = ({tau}, {y}) is NonPhysical")
    spec = PhaseInsensitiveSpec.from_tau_y(tau, y)
    kind = BoundKind(bound)
    res = optimize_activation(spec, search, kind)
    report = {
        "tau": tau,
        "y": y,
        "region": region.value,
        "kind": spec.kind,
        "t_or_G": spec.gain,
        "N": spec.N,
        "bound": bound,
        "bound_value": res.bound_value,
        "ic_combined": res.ic_combined,
        "delta": res.delta,
        "certified": bool(res.certified),
        "s1": res.best_params.s1,
        "s2": res.best_params.s2,
        "s3": res.best_params.s3,
        "ppt_a": res.ppt_ab[0],
        "ppt_b": res.ppt_ab[1],
        "flags": list(res.flags),
    }
    if spec.is_attenuator:
        report["q_upper"] = q_upper(spec.gain, spec.N)
    report["ci_max"] = max_coherent_information(spec)
    return report


def cmd_point(args):
    try:
        search = build_search_config(_file_values(args), {k: getattr(args, k) for k in _SEARCH_DESTS})
        report = point_report(args.tau, args.y, args.bound, search)
    except (OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"channel        {report['kind']} t_or_G={report['t_or_G']:.6g} N={report['N']:.6g} "
          f"({report['region']})")
    print(f"bound ({args.bound:5s})  {report['bound_value']:.6f} bits")
    print(f"ic_combined    {report['ic_combined']:.6f} bits")
    print(f"delta          {report['delta']:+.6f} bits")
    print(f"certified      {report['certified']}")
    print(f"input (s1,s2,s3) = ({report['s1']:.4f}, {report['s2']:.4f}, {report['s3']:.4f}), "
          f"ppt (a,b) = ({report['ppt_a']:g}, {report['ppt_b']:g})")
    text = json.dumps(report)
    print(text)
    if args.out_path:
        try:
            with open(args.out_path, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"write error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def eb_cases(dim, seed):
    """Seeded (EB channel, reference channel) pairs for the additivity check."""
    partners = [identity_channel(2), dephasing(0.3), dephasing(0.1)]
    return [(eb_channel_cq(dim, seed + i), psi) for i, psi in enumerate(partners)]


def cmd_verify_eb(args):
    if args.dim not in (2, 3) or 2 * args.dim > MAX_INPUT_DIM or args.trials < 1:
        print(f"error: dim must be 2 or 3 and trials >= 1 (got dim={args.dim})", file=sys.stderr)
        return EXIT_USAGE
    ok = True
    for eb, psi in eb_cases(args.dim, args.seed):
        rep = verify_eb_additivity(eb, psi, args.trials, args.seed)
        ok &= rep.passed
        print(f"{'pass' if rep.passed else 'FAIL'}  {rep.label:40s} "
              f"max Ic(EB x psi) = {rep.combined:.6f}  max Ic(psi) = {rep.single:.6f}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selftest(args):
    results = run_selftest()
    failed = [name for name, passed, _, _ in results if not passed]
    if failed:
        print("failed invariants: " + ", ".join(failed))
        return EXIT_FAIL
    print(f"all {len(results)} invariant suites passed")
    return EXIT_OK


COMMANDS = {"scan": cmd_scan, "point": cmd_point, "verify-eb": cmd_verify_eb, "selftest": cmd_selftest}


def main(argv=None):
    args = make_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
