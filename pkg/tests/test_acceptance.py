"""Acceptance criteria, each checked at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v``; one pass/fail line per
criterion is printed in the terminal summary. Criteria 3 and 4 are full
sweeps and take tens of minutes on a single core.
"""
import math
import os
import time

import numpy as np
import pytest

from gaussact import cli
from gaussact.activation import SearchConfig, optimize_activation
from gaussact.bounds import asymptotic_coherent_information, max_coherent_information, q_data, q_plob, q_upper
from gaussact.channels import PhaseInsensitiveSpec
from gaussact.scan import ScanConfig, containment_violations, run_scan

THREADS = os.cpu_count() or 1
EXPANDED_GRID = tuple((a, b) for a in np.arange(1.0, 3.01, 0.25) for b in np.arange(1.0, 3.01, 0.25))


def test_criterion_1_half_attenuator_superactivation(criterion):
    t0 = time.perf_counter()
    res = optimize_activation(PhaseInsensitiveSpec.attenuator(0.5, 0.0), SearchConfig(optimize_ppt=True))
    dt = time.perf_counter() - t0
    qu = q_upper(0.5, 0.0)
    ok = res.ic_combined > 1e-3 and qu == 0 and dt < 60
    criterion(1, ok, f"ic_combined={res.ic_combined:.5f} bits at (a,b)={res.ppt_ab}, q_upper={qu}, {dt:.1f}s")
    assert ok


def test_criterion_2_point_pair(criterion):
    t0 = time.perf_counter()
    cfg = SearchConfig()
    on = cli.point_report(0.53, 0.55, "qu", cfg)
    if not on["certified"]:
        on = cli.point_report(0.53, 0.55, "qu", SearchConfig(optimize_ppt=True, ppt_grid=EXPANDED_GRID))
    off = cli.point_report(0.53, 0.47, "qu", cfg)
    dt = time.perf_counter() - t0
    ok = on["certified"] and on["delta"] > 1e-4 and off["delta"] <= 1e-4 and not off["certified"] and dt < 300
    criterion(2, ok, f"delta(0.53,0.55)={on['delta']:+.5f}, delta(0.53,0.47)={off['delta']:+.5f}, {dt:.0f}s")
    assert ok


def test_criterion_3_low_transmissivity_sweep(criterion):
    cfg = ScanConfig(tau_min=0.05, tau_max=0.25, tau_steps=20, y_min=0.5, y_max=1.2, y_steps=20,
                     bound="qu", threads=THREADS)
    t0 = time.perf_counter()
    recs = run_scan(cfg)
    dt = time.perf_counter() - t0
    low = [r for r in recs if r.tau < 0.2 and r.delta is not None]
    hits = [r for r in low if r.certified]
    best = max(low, key=lambda r: r.delta)
    ok = bool(hits)
    criterion(3, ok, f"{len(hits)} certified of {len(low)} computed points with tau<0.2; "
                     f"best delta={best.delta:.2e} at (tau,y)=({best.tau:.4f},{best.y:.4f}); "
                     f"{dt / 60:.1f} min on {THREADS} worker(s)")
    assert ok


def test_criterion_4_amplifier_null_result(criterion):
    cfg = ScanConfig(tau_min=1.05, tau_max=2.0, tau_steps=10, y_min=0.1, y_max=1.0, y_steps=10,
                     bound="cimax", threads=THREADS)
    t0 = time.perf_counter()
    recs = run_scan(cfg)
    dt = time.perf_counter() - t0
    computed = [r for r in recs if r.delta is not None]
    certified = [r for r in recs if r.certified]
    best = max(r.delta for r in computed)
    ok = not certified and len(computed) > 0
    criterion(4, ok, f"{len(certified)} certified of {len(computed)} computed points; "
                     f"max delta={best:+.4f}; {dt / 60:.1f} min")
    assert ok


def test_criterion_5_containment(criterion):
    base = dict(tau_min=0.52, tau_max=0.62, tau_steps=3, y_min=0.49, y_max=0.6, y_steps=3, threads=THREADS)
    qu = run_scan(ScanConfig(bound="qu", **base))
    ci = run_scan(ScanConfig(bound="cimax", **base))
    n_cert = sum(r.certified for r in qu)
    bad = containment_violations(qu, ci, tol=1e-9)
    ok = not bad and n_cert > 0
    criterion(5, ok, f"{n_cert} Q_U-certified points checked, {len(bad)} containment violations")
    assert ok


def test_criterion_6_bound_formulas(criterion):
    e1 = abs(q_data(0.9, 0) - math.log2(9))
    e2 = abs(q_plob(0.5, 0) - 1)
    mono = all(q_upper(t, N2) <= q_upper(t, N1)
               for t in (0.6, 0.75, 0.9)
               for N1, N2 in zip(np.arange(0, 2.01, 0.1), np.arange(0.1, 2.01, 0.1)))
    ok = e1 < 1e-12 and e2 < 1e-12 and mono
    criterion(6, ok, f"|q_data(0.9,0)-log2 9|={e1:.1e}, |q_plob(0.5,0)-1|={e2:.1e}, monotone={mono}")
    assert ok


def test_criterion_7_max_coherent_info_limits(criterion):
    specs = [PhaseInsensitiveSpec.attenuator(0.7, 0), PhaseInsensitiveSpec.attenuator(0.9, 0.5),
             PhaseInsensitiveSpec.amplifier(2.0, 0), PhaseInsensitiveSpec.amplifier(1.5, 0.3)]
    errs = [abs(max_coherent_information(s) - asymptotic_coherent_information(s)) for s in specs]
    ok = max(errs) < 2e-3
    criterion(7, ok, "errors " + ", ".join(f"{e:.1e}" for e in errs))
    assert ok


def test_criterion_8_selftest(criterion, capsys):
    t0 = time.perf_counter()
    rc = cli.main(["selftest"])
    dt = time.perf_counter() - t0
    ok = rc == 0 and dt < 120
    criterion(8, ok, f"exit {rc}, {dt:.1f}s")
    assert ok


def test_criterion_9_eb_lemma(criterion, capsys):
    t0 = time.perf_counter()
    rc2 = cli.main(["verify-eb", "--dim", "2", "--trials", "5", "--seed", "42"])
    rc3 = cli.main(["verify-eb", "--dim", "3", "--trials", "3", "--seed", "7"])
    dt = time.perf_counter() - t0
    ok = rc2 == 0 and rc3 == 0 and dt < 600
    criterion(9, ok, f"exit codes {rc2}, {rc3}; {dt:.0f}s")
    assert ok
