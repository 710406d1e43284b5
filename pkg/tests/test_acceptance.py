"""The nine acceptance criteria, each at its stated tolerance.

Every test measures first, records a single pass/fail summary line
(printed in the terminal summary block), then asserts.  Tolerances and
sample counts are contractual; do not loosen them to make a failure go
away.
"""

from __future__ import annotations

import json
import math
import time

import numpy as np
import pytest

from qgtile import (
    FULL_MODEL_NAMES,
    TILING_NAMES,
    GrapheneSine,
    ZeroPotential,
    ac_range,
    inequality_suite,
    inequality_values,
    bands_zero_potential,
    eigenfunction_suite,
    equivalence_suite,
    evaluate_dispersion,
    identity_suite,
    ranges_suite,
    solve_basis,
)
from qgtile.cli import main as cli_main
from qgtile.dispersion import THETA_ZERO_INT_COEFFS

from conftest import record_criterion

GRAPHENE = GrapheneSine()


def test_criterion_1_determinant_equivalence():
    t0 = time.perf_counter()
    rep = equivalence_suite(n_samples=100, seed=12022, tol=1e-8)
    dt = time.perf_counter() - t0
    ok = rep.passed and rep.max_residual <= 1e-8 and dt <= 10.0
    record_criterion(1, ok,
                     f"5 tilings x 100 samples x 2 potentials, max residual "
                     f"{rep.max_residual:.3e} (tol 1e-8), {dt:.2f}s (limit 10s)")
    assert rep.max_residual <= 1e-8
    assert dt <= 10.0


def test_criterion_2_range_recovery():
    rep = ranges_suite(n=201, tilings=FULL_MODEL_NAMES)
    worst_h = max(r.hausdorff for r in rep.recoveries)
    ok = (rep.passed and worst_h <= 0.03
          and rep.max_soundness <= 1e-6 and rep.max_endpoint_gap <= 1e-6)
    record_criterion(2, ok,
                     f"n=201: hausdorff {worst_h:.4f} (tol 0.03), soundness "
                     f"{rep.max_soundness:.2e} (tol 1e-6), endpoint gap "
                     f"{rep.max_endpoint_gap:.2e} (tol 1e-6)")
    assert worst_h <= 0.03
    assert rep.max_soundness <= 1e-6
    assert rep.max_endpoint_gap <= 1e-6


def _zero_band_oracle(tiling, a, k_max):
    # independent arccos-formula evaluation: on the m-th monotone piece
    # of cos, the preimage of [lo, hi] is written via the reflection
    # cos(u) = cos(2pi ceil(m/2) - u) back to the principal branch
    edges = []
    for m in range(k_max + 1):
        for lo, hi in ac_range(tiling):
            if m % 2 == 0:
                u0 = m * math.pi + math.acos(hi)
                u1 = m * math.pi + math.acos(lo)
            else:
                u0 = (m + 1) * math.pi - math.acos(lo)
                u1 = (m + 1) * math.pi - math.acos(hi)
            edges.append((u0 / a, u1 / a))
    return sorted((u0 * u0, u1 * u1) for u0, u1 in edges)


def test_criterion_3_zero_potential_band_formulas():
    worst = 0.0
    for name in FULL_MODEL_NAMES:
        for a in (1.0, 2.0):
            got = bands_zero_potential(name, a=a, k_max=5)
            want = _zero_band_oracle(name, a, 5)
            assert len(got) == len(want)
            for band, (wlo, whi) in zip(got, want):
                worst = max(worst, abs(band.lambda_lo - wlo),
                            abs(band.lambda_hi - whi))
    ok = worst <= 1e-9
    record_criterion(3, ok,
                     f"5 tilings, a in {{1,2}}, k=0..5: max edge defect "
                     f"{worst:.2e} (tol 1e-9)")
    assert worst <= 1e-9


def test_criterion_4_eigenfunction_residuals():
    rep = eigenfunction_suite()
    kinds = {(e[0], e[1]) for e in rep.entries}
    trh_kinds = {k for t, k in kinds if t == "trH"}
    others = {t for t, k in kinds if k == "polygon_dirichlet" and t != "trH"}
    complete = len(trh_kinds) == 3 and others == {"SS", "RTH", "ST", "trTH"}
    ok = rep.passed and complete and rep.max_residual <= 1e-10
    record_criterion(4, ok,
                     f"3 trH kinds + 4 polygon tilings, q in {{0, graphene}}: "
                     f"max residual {rep.max_residual:.2e} (tol 1e-10)")
    assert complete
    assert rep.max_residual <= 1e-10


def test_criterion_5_inequality_certificates():
    rep = inequality_suite(n=401)
    min_theta = min(s.min_theta for s in rep.stats)
    min_xieta = min(s.min_xieta for s in rep.stats)
    m4 = max(abs(inequality_values(0.5, -1.0)["M4"]),
             abs(inequality_values(-0.5, 1.0)["M4"]))
    ok = (rep.passed and min_theta >= -1e-12 and min_xieta >= -1e-12
          and m4 <= 1e-10 and rep.g_max < 0.0)
    record_criterion(5, ok,
                     f"401^2 grid: min M {min(min_theta, min_xieta):.2e} "
                     f"(tol -1e-12), M4 at critical points {m4:.2e} "
                     f"(tol 1e-10), max g {rep.g_max:.2e} (< 0)")
    assert min_theta >= -1e-12
    assert min_xieta >= -1e-12
    assert m4 <= 1e-10
    assert rep.g_max < 0.0
    assert rep.f_max < 0.0


def test_criterion_6_trigonometric_identities():
    rep = identity_suite(n=201)
    worst = max(rep.max_modulus_residual, rep.max_cosine_residual,
                rep.max_omega3_residual)
    ok = rep.passed and worst <= 1e-12
    record_criterion(6, ok,
                     f"201^2 grid: max identity residual {worst:.2e} "
                     f"(tol 1e-12)")
    assert worst <= 1e-12


def test_criterion_7_interval_solver_quality():
    lams = np.linspace(0.1, 900.0, 100)
    worst_lagrange = 0.0
    worst_even = 0.0
    for lam in lams:
        b = solve_basis(GRAPHENE, 1.0, float(lam))
        worst_lagrange = max(worst_lagrange, b.lagrange_defect())
        worst_even = max(worst_even, abs(b.C - b.Sp))
    ref = solve_basis(GRAPHENE, 1.0, 612.3, n_steps=32768)
    errs = []
    for n in (512, 1024, 2048, 4096):
        b = solve_basis(GRAPHENE, 1.0, 612.3, n_steps=n)
        errs.append(max(abs(b.C - ref.C), abs(b.S - ref.S),
                        abs(b.Cp - ref.Cp), abs(b.Sp - ref.Sp)))
    orders = [math.log2(e0 / e1) for e0, e1 in zip(errs, errs[1:])]
    ok = (worst_lagrange <= 1e-10 and worst_even <= 1e-9
          and min(orders) >= 3.5)
    record_criterion(7, ok,
                     f"lagrange {worst_lagrange:.2e} (tol 1e-10), |C-S'| "
                     f"{worst_even:.2e} (tol 1e-9), convergence order "
                     f"{min(orders):.2f} (need ~4)")
    assert worst_lagrange <= 1e-10
    assert worst_even <= 1e-9
    assert min(orders) >= 3.5


def test_criterion_8_p_at_one_theta_zero():
    exact = all(sum(THETA_ZERO_INT_COEFFS[name]) == 0 for name in TILING_NAMES)
    float_zero = all(evaluate_dispersion(name, 1.0, 0.0, 0.0) == 0.0
                     for name in TILING_NAMES)
    ok = exact and float_zero
    record_criterion(8, ok,
                     "p(1, 0, 0) = 0 for all 11 tilings in integer "
                     "arithmetic and to the last float bit")
    assert exact
    assert float_zero


def test_criterion_9_full_verify_under_budget(tmp_path):
    report = tmp_path / "verify_report.json"
    t0 = time.perf_counter()
    code = cli_main(["verify", "--suite", "all", "--out", str(report)])
    dt = time.perf_counter() - t0
    data = json.loads(report.read_text())
    ok = code == 0 and data["passed"] and dt <= 60.0
    record_criterion(9, ok,
                     f"verify --suite all: exit {code}, passed="
                     f"{data['passed']}, {dt:.1f}s (limit 60s)")
    assert code == 0
    assert data["passed"] is True
    assert dt <= 60.0
