"""Acceptance suite: one test per criterion, each printing a PASS line with
the measured quantities.  Run with ``pytest tests/test_acceptance.py -s``
to see the per-criterion reports.
"""

import json
import random
import time
from fractions import Fraction as F

import pytest

import conftest
from kglab.cli import main as cli_main
from kglab.counting import count_solutions, main_term, normalized_error
from kglab.lattice import (gcd_power_sum, gcd_power_sum_sweep, primorials,
                           shell)
from kglab.psifunc import (PowerLaw, hausdorff_exponent, hausdorff_partial_sum)
from kglab.rng import RngStream
from kglab.surd import QuadraticSurd
from kglab.torus import (TorusSet1D, overlap_2d, overlap_2d_grid_oracle,
                         overlap_exact_1d, overlap_sweep_oracle)
from kglab.variance import vanishing_bound_sweep, variance_full, variance_window
from kglab.witness import NonLiouvilleWitness, fit_witness

SQRT2 = QuadraticSurd.sqrt(2)
PSI_ROOT = PowerLaw(F(1, 4), F(1, 2))


@pytest.fixture(scope="module")
def witness_sqrt2():
    w = fit_witness(SQRT2, PSI_ROOT, 10 ** 5)
    assert isinstance(w, NonLiouvilleWitness)
    assert (w.eta, w.c) == (1, F(4))
    return w


def report(num, text):
    line = f"[criterion {num:2d}] PASS: {text}"
    print("\n" + line)
    conftest.criterion_lines.append(line)


def test_c01_overlap_formula_oracle_grid():
    t0 = time.time()
    radii = (F(1, 20), F(1, 10), F(1, 5))
    shifts = [F(k, 12) for k in range(12)]
    cases = 0
    for d in range(1, 41):
        for e in range(d, 41):
            for t1 in radii:
                for t2 in radii:
                    for s in shifts:
                        A = TorusSet1D(d, s, t1)
                        B = TorusSet1D(e, F(0), t2)
                        assert overlap_exact_1d(A, B) == \
                            overlap_sweep_oracle(A, B), (d, e, t1, t2, s)
                        cases += 1
    elapsed = time.time() - t0
    assert cases > 80_000
    assert elapsed < 120
    report(1, f"{cases} grid cases, formula == sweep oracle exactly, "
              f"{elapsed:.1f}s")


def test_c02_nonparallel_independence():
    psi = PowerLaw(F(1, 10), F(0))
    rng = random.Random(20)
    checked = 0
    worst = F(0)
    while checked < 50:
        q = (rng.randint(-20, 20), rng.randint(-20, 20))
        r = (rng.randint(-20, 20), rng.randint(-20, 20))
        if (q == (0, 0) or r == (0, 0)
                or q[0] * r[1] - q[1] * r[0] == 0):
            continue
        value, tag = overlap_2d(q, r, psi, SQRT2)
        assert tag == "independent"
        assert value == 4 * F(1, 10) * F(1, 10)
        est, bound = overlap_2d_grid_oracle(q, r, psi, SQRT2, 2000)
        assert abs(est - value) <= bound
        worst = max(worst, abs(est - value))
        checked += 1
    report(2, f"50 non-parallel pairs: overlap == 4*psi^2 == 1/25 exactly; "
              f"grid oracle max deviation {float(worst):.2e} within bound")


def test_c03_vanishing_sweep_q400(witness_sqrt2):
    t0 = time.time()
    rows, summary = vanishing_bound_sweep(400, PSI_ROOT, witness_sqrt2, SQRT2,
                                 collect_rows=False)
    elapsed = time.time() - t0
    assert summary.n_violations == 0
    assert summary.n_zero_confirmed > 0
    assert elapsed < 300
    report(3, f"Q=400 sweep: {summary.n_rows} rows, "
              f"{summary.n_zero_confirmed} zero-confirmed, "
              f"{summary.n_bound_satisfied} bound-satisfied, 0 violations, "
              f"max overlap/bound {float(summary.max_bound_ratio):.3f}, "
              f"{elapsed:.1f}s")


def test_c04_variance_boundedness():
    ratios = []
    for Q in (100, 200, 400, 800):
        rep = variance_full(Q, PSI_ROOT, SQRT2)
        ratios.append(float(rep.ratio))
        assert rep.ratio <= 10, (Q, rep.ratio)
    for a, b in zip(ratios, ratios[1:]):
        assert b <= a * 1.10, f"ratio grew more than 10% per doubling: {ratios}"
    report(4, "variance/Psi_exact at Q=100,200,400,800: "
              + ", ".join(f"{r:.4f}" for r in ratios)
              + " (all <= 10, growth < 10%/doubling)")


def test_c05_windowed_variance():
    cap = 40  # 4x the full-range cap of criterion 4
    rng = random.Random(31)
    vec_count = sum(8 * n for n in range(1, 301))
    worst = 0.0
    for k in range(20):
        i, j = sorted(rng.sample(range(vec_count), 2))

        def vec_at(pos):
            n = 1
            while pos >= 8 * n:
                pos -= 8 * n
                n += 1
            return shell(n)[pos]

        u, v = vec_at(i), vec_at(j)
        rep = variance_window(u, v, PSI_ROOT, SQRT2)
        if rep.sum_measures > 0:
            ratio = float(rep.ratio)
            assert ratio <= cap, (u, v, ratio)
            worst = max(worst, ratio)
    report(5, f"20 random order windows in Q<=300: max variance/measure "
              f"ratio {worst:.3f} <= {cap}")


def test_c06_asymptotic_count():
    psi = PowerLaw(F(1), F(3, 4))
    Q = 2000
    delta_log = F(1, 2)
    psi_exact = main_term(psi, Q, "exact-shell")
    errs = []
    t0 = time.time()
    for seed in range(20):
        alpha = RngStream(seed).sample_torus_point(192)
        n = count_solutions(alpha, Q, SQRT2, psi)
        errs.append(normalized_error(n, psi_exact, delta_log))
    per_trial = (time.time() - t0) / 20
    worst = max(abs(e) for e in errs)
    assert worst <= 5, errs
    assert per_trial < 120
    report(6, f"Q=2000, 20 trials (seeds 0-19): max |normalized error| "
              f"{worst:.4f} <= 5 with Psi_exact normalization, "
              f"{per_trial:.2f}s/trial")


def test_c07_shell_count_audit(tmp_path):
    for q in range(1, 201):
        got = len(shell(q))
        assert got == 8 * q, (q, got)
        assert got != 8 * q + 4
    # the discrepancy note is present in count-run metadata
    out = tmp_path / "audit.csv"
    assert cli_main(["count", "--Q", "5", "--trials", "1",
                     "--out", str(out)]) == 0
    meta = json.loads(out.read_bytes().decode().split("\r\n")[0][2:])
    assert meta["shell_count_mode"] == "enumerated-8q"
    assert "8q+4" in meta["main_term_note"]
    report(7, "enumerated |shell(q)| == 8q for q <= 200 (not 8q+4); "
              "normalization discrepancy note present in count metadata")


def test_c08_gcd_sum_diagnostics():
    t0 = time.time()
    rows = gcd_power_sum_sweep(10 ** 5, 2, F(3, 4))
    max_norm = max(norm for _, _, norm in rows)
    assert max_norm <= 4

    prims = primorials(8)
    normalized = [gcd_power_sum(q, 2)[1] for q in prims]
    assert all(a < b for a, b in zip(normalized, normalized[1:]))

    cube_rows = gcd_power_sum_sweep(10 ** 4, 3, None)
    for q, total, _ in cube_rows:
        assert total - q ** 3 <= 2 * q ** 3, q
    elapsed = time.time() - t0
    assert elapsed < 60
    report(8, f"restricted sum (cap 3/4, k=2) <= 4 up to 1e5 "
              f"(max {float(max_norm):.3f}); primorial sums strictly "
              f"increase; sum (q,r)^3 over r<q <= 2q^3 up to 1e4; "
              f"{elapsed:.1f}s")


def test_c09_hausdorff_exponent_probes():
    lines = []
    for a in (F(1, 2), F(1), F(2), F(5)):
        psi = PowerLaw(F(8), a)
        t, dim = hausdorff_exponent(psi)
        assert t == 1 + F(3) / (a + 1)
        assert dim == min(t, F(2))
        above = hausdorff_partial_sum(psi, float(t) + 0.1, 10 ** 6)
        below = hausdorff_partial_sum(psi, float(t) - 0.1, 10 ** 6)
        assert above < 10 ** 3          # bounded on the convergent side
        assert below > 10 ** 3          # divergent side blows past 10^3
        lines.append(f"a={a}: t={t} above={above:.0f} below={below:.0f}")
    report(9, "; ".join(lines))


def test_c10_determinism(tmp_path):
    args = ["count", "--gamma", "sqrt:2", "--psi", "pow:1,3/4", "--Q", "60",
            "--trials", "4", "--seed", "11"]
    bodies = []
    for run, workers in enumerate(("1", "1", "8")):
        out = tmp_path / f"det{run}.csv"
        assert cli_main(args + ["--workers", workers,
                                "--out", str(out)]) == 0
        bodies.append(out.read_bytes())
    assert bodies[0] == bodies[1] == bodies[2]
    report(10, "byte-identical CSV across two runs and worker pools {1, 8}")
