"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary.

Run standalone with ``python tests/test_acceptance.py`` or via pytest.
"""
import random
import time
from fractions import Fraction

import pytest

from chaoslab.counterexample import (
    AWord,
    a_report,
    a_sensitivity_witness,
    is_in_A,
    last_separation_time,
    separation_bound,
)
from chaoslab.interval_maps import (
    AnglePoint,
    conjugacy_residual,
    logistic_distance,
    logistic_embed,
    logistic_step_enclosure,
    tent_iterate,
    tent_periodic_points,
    tent_step,
)
from chaoslab.symbolic import ZERO, canonicalize, metric, parse_word, period_of, shift_n
from chaoslab.systems import get_system
from chaoslab.witness import asymptotic_witness, verify_certificate

F = Fraction
RESULTS: list[str] = []
WITNESS_PROBES: dict[str, list] = {}

pytestmark = pytest.mark.acceptance


def record(number: int, ok: bool, text: str) -> None:
    RESULTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}")
    assert ok, text


def random_radius(rng: random.Random) -> Fraction:
    # dyadic grid on [2^-16, 1/2]
    return F(rng.randint(2**4, 2**19), 2**20)


def random_center(system_id: str, rng: random.Random):
    if system_id == "full-shift":
        pre = [rng.randint(0, 1) for _ in range(rng.randint(0, 16))]
        cyc = [rng.randint(0, 1) for _ in range(rng.randint(1, 8))]
        return canonicalize(pre, cyc)
    q = rng.randint(1, 10**6)
    if system_id == "tent":
        return F(rng.randint(0, q), q)
    return AnglePoint(F(rng.randrange(q), q))


def theorem_probes(system_id: str, seed: int, depth: int, budget: float):
    sys = get_system(system_id)
    delta = sys.certified_delta
    rng = random.Random(seed)
    failures, widths_ok, exact_ok = [], True, True
    probes = []
    start = time.perf_counter()
    for i in range(100):
        x, r = random_center(system_id, rng), random_radius(rng)
        cert = asymptotic_witness(sys, x, r, delta)
        report = verify_certificate(sys, cert, depth)
        if not report.passed:
            failures.append((i, report.failures))
        if cert.separation_at_k.is_exact:
            exact_ok &= report.clauses.get("recurrence_exact", False)
        else:
            widths_ok &= cert.separation_at_k.hi - cert.separation_at_k.lo <= 1e-12
        probes.append((x, r))
    elapsed = time.perf_counter() - start
    WITNESS_PROBES[system_id] = probes
    return failures, elapsed <= budget, elapsed, exact_ok, widths_ok


def test_criterion_1_full_shift():
    failures, fast, elapsed, exact_ok, _ = theorem_probes("full-shift", 101, 1000, 10.0)
    ok = not failures and fast and exact_ok
    record(1, ok, f"full shift 100 probes, M=1000, exact recurrence={exact_ok}, "
                  f"failures={failures[:3]}, {elapsed:.2f}s <= 10s")


def test_criterion_2_tent():
    failures, fast, elapsed, exact_ok, _ = theorem_probes("tent", 202, 1000, 30.0)
    ok = not failures and fast and exact_ok
    record(2, ok, f"tent 100 probes, M=1000, exact recurrence={exact_ok}, "
                  f"failures={failures[:3]}, {elapsed:.2f}s <= 30s")


def test_criterion_3_logistic():
    failures, fast, elapsed, _, widths_ok = theorem_probes("logistic", 303, 200, 60.0)
    ok = not failures and fast and widths_ok
    record(3, ok, f"logistic 100 probes, M=200, widths<=1e-12={widths_ok}, "
                  f"failures={failures[:3]}, {elapsed:.2f}s <= 60s")


def test_criterion_4_worked_trace():
    cert = asymptotic_witness("full-shift", ZERO, F(1, 4), 1)
    ok = (cert.k, cert.L, cert.separation_at_k.exact, cert.q) == (
        4, 8, F(32, 17), parse_word(":00001111"))
    record(4, ok, f"k={cert.k} L={cert.L} separation={cert.separation_at_k.exact} q={cert.q}")


def test_criterion_5_counterexample():
    start = time.perf_counter()
    seed, delta = 7, F(1, 2)
    report = a_report(1000, seed, delta, workers=1)
    # independent replay of the same sampling: bounds vs a brute-force scan
    import numpy as np
    from chaoslab.counterexample import _random_aword

    rng = np.random.default_rng(seed)
    mismatches = 0
    centers_ok = True
    for _ in range(1000):
        y, z = _random_aword(rng), _random_aword(rng)
        rng.integers(1, 21, size=2)  # keep in step with the report's eps draws
        n0 = separation_bound(y, z)
        wy, wz = y.to_word(), z.to_word()
        dists = [metric(shift_n(wy, n), shift_n(wz, n)) for n in range(n0 + 9)]
        nonzero = [n for n, d in enumerate(dists) if d != 0]
        scanned = nonzero[-1] + 1 if nonzero else 0
        mismatches += scanned != last_separation_time(y, z) or scanned > n0
        for c in (y, z):
            w = a_sensitivity_witness(c, F(1, 2**10), delta)
            centers_ok &= is_in_A(w.z.to_word()) and w.separation.exceeds(delta)
    elapsed = time.perf_counter() - start
    stray = [p for p in report["periodic_in_A"] if p != ":0"]
    ok = (report["all_bounds_finite"] and report["sensitivity_failures"] == 0
          and mismatches == 0 and centers_ok and not stray and elapsed <= 10.0)
    record(5, ok, f"1000 pairs in A: scan mismatches={mismatches}, sensitivity failures="
                  f"{report['sensitivity_failures']}, stray periodic={stray}, {elapsed:.2f}s <= 10s")


def grid_roots(n: int) -> int:
    size = 2 ** (n + 2)
    vals = []
    for j in range(size + 1):
        x = y = F(j, size)
        for _ in range(n):
            y = 1 - abs(2 * y - 1)
        vals.append(y - x)
    return sum(v == 0 for v in vals) + sum(a * b < 0 for a, b in zip(vals, vals[1:]))


def test_criterion_6_periodic_enumeration():
    counts_ok = all(
        len(pts := tent_periodic_points(n)) == 2**n and all(tent_iterate(p, n) == p for p in pts)
        for n in range(1, 13)
    )
    grid_ok = all(grid_roots(n) == 2**n for n in range(1, 9))
    record(6, counts_ok and grid_ok,
           f"|Fix(T^n)| = 2^n for n=1..12: {counts_ok}; grid root isolation n<=8: {grid_ok}")


def test_criterion_7_metric_and_lipschitz():
    rng = random.Random(707)

    def word():
        return canonicalize([rng.randint(0, 1) for _ in range(rng.randint(0, 16))],
                            [rng.randint(0, 1) for _ in range(rng.randint(1, 8))])

    axioms = True
    for _ in range(10_000):
        a, b, c = word(), word(), word()
        dab, dbc, dac = metric(a, b), metric(b, c), metric(a, c)
        axioms &= ((dab == 0) == (a == b)) and dab == metric(b, a) and dac <= dab + dbc
    shift_ok = True
    for _ in range(1000):
        a, b, k = word(), word(), rng.randint(0, 16)
        shift_ok &= metric(shift_n(a, k), shift_n(b, k)) <= 2**k * metric(a, b)
    tent_ok = logistic_ok = True
    for _ in range(1000):
        q1, q2 = rng.randint(1, 10**6), rng.randint(1, 10**6)
        x, y = F(rng.randint(0, q1), q1), F(rng.randint(0, q2), q2)
        tent_ok &= abs(tent_step(x) - tent_step(y)) <= 2 * abs(x - y)
        ex, ey = logistic_embed(AnglePoint(x)), logistic_embed(AnglePoint(y))
        fx, fy = logistic_step_enclosure(ex.lo, ex.hi), logistic_step_enclosure(ey.lo, ey.hi)
        gap_lo = max(0.0, max(fx[0], fy[0]) - min(fx[1], fy[1]))
        logistic_ok &= gap_lo <= 4 * (max(ex.hi, ey.hi) - min(ex.lo, ey.lo))
    ok = axioms and shift_ok and tent_ok and logistic_ok
    record(7, ok, f"metric axioms x10000={axioms}, shift 2^k bound={shift_ok}, "
                  f"tent 2-Lipschitz={tent_ok}, logistic 4-Lipschitz={logistic_ok}")


def test_criterion_8_conjugacy():
    rng = random.Random(808)
    worst = 0.0
    for _ in range(1000):
        q = rng.randint(1, 10**6)
        worst = max(worst, conjugacy_residual(AnglePoint(F(rng.randrange(q), q))))
    record(8, worst <= 1e-12, f"max conjugacy residual {worst:.3e} <= 1e-12")


def test_criterion_9_half_delta_remark():
    checked, bad = 0, 0
    for system_id in ("full-shift", "tent", "logistic"):
        sys = get_system(system_id)
        probes = WITNESS_PROBES.get(system_id)
        if probes is None:
            rng = {"full-shift": random.Random(101), "tent": random.Random(202),
                   "logistic": random.Random(303)}[system_id]
            probes = [(random_center(system_id, rng), random_radius(rng)) for _ in range(100)]
        half = sys.certified_delta / 2
        for x, r in probes:
            w = sys.sensitivity_witness(x, r, sys.certified_delta)
            tx = sys.iterate(x, w.k)
            checked += 1
            bad += not (sys.distance(tx, sys.iterate(w.y, w.k)).exceeds(half)
                        or sys.distance(tx, sys.iterate(w.z, w.k)).exceeds(half))
    record(9, bad == 0 and checked == 300, f"delta/2 remark on {checked} witnesses, violations={bad}")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
