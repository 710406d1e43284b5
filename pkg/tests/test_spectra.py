"""Bands, point spectrum, discriminant-level inversion, eigenfunctions."""

from __future__ import annotations

import math

import numpy as np
import pytest

from qgtile import (
    EIGENFUNCTION_KINDS,
    FULL_MODEL_NAMES,
    TILING_NAMES,
    GrapheneSine,
    ZeroPotential,
    ac_range,
    bands_general,
    bands_zero_potential,
    build_eigenfunction,
    classify_point_lambda,
    invert_discriminant_levels,
    point_spectrum,
    solve_basis,
    spectrum_report,
)

ZERO = ZeroPotential()
GRAPHENE = GrapheneSine()
SQ3 = math.sqrt(3.0)

EXPECTED_RANGES = {
    "trH": ((-2 / 3, 0.0), (1 / 3, 1.0)),
    "SS": ((-3 / 5, 1.0),),
    "RTH": ((-3 / 4, 1.0),),
    "ST": ((-(1 + SQ3) / 5, 1.0),),
    "trTH": ((-1.0, -1 / SQ3), (-1 / 3, 1 / 3), (1 / SQ3, 1.0)),
    "T": ((-1 / 2, 1.0),),
    "TH": ((-1 / 2, 1.0),),
    "ET": ((-13 / 20, 1.0),),
    "S": ((-1.0, 1.0),),
    "H": ((-1.0, 1.0),),
    "trS": ((-1.0, 1.0),),
}


@pytest.mark.parametrize("name", TILING_NAMES)
def test_ac_range_exact_endpoints(name):
    got = ac_range(name)
    want = EXPECTED_RANGES[name]
    assert len(got) == len(want)
    for (glo, ghi), (wlo, whi) in zip(got, want):
        assert glo == pytest.approx(wlo, abs=1e-15)
        assert ghi == pytest.approx(whi, abs=1e-15)


def test_ranges_are_disjoint_and_ascending():
    for name in TILING_NAMES:
        iv = ac_range(name)
        flat = [e for pair in iv for e in pair]
        assert flat == sorted(flat)
        assert all(lo < hi for lo, hi in iv)
        assert all(-1.0 <= lo and hi <= 1.0 for lo, hi in iv)


def test_bands_zero_potential_frozen_ss():
    got = [(b.lambda_lo, b.lambda_hi) for b in bands_zero_potential("SS", k_max=2)]
    want = [(0.0, 4.903113133252393),
            (16.555848511583637, 39.47841760435743),
            (39.47841760435743, 72.20721296363601)]
    assert len(got) == 3
    for (glo, ghi), (wlo, whi) in zip(got, want):
        assert glo == pytest.approx(wlo, abs=1e-9)
        assert ghi == pytest.approx(whi, abs=1e-9)


def test_bands_general_matches_zero_formulas():
    for name in FULL_MODEL_NAMES:
        for a in (1.0, 2.0):
            explicit = bands_zero_potential(name, a=a, k_max=3)
            lam_max = explicit[-1].lambda_hi + 1e-6
            scanned = bands_general(name, ZERO, lam_max, a=a)
            assert len(scanned) >= len(explicit)
            for be, bs in zip(explicit, scanned):
                assert bs.lambda_lo == pytest.approx(be.lambda_lo, abs=2e-8)
                assert bs.lambda_hi == pytest.approx(
                    min(be.lambda_hi, lam_max), abs=2e-8)


def test_band_edges_scale_inverse_square_in_a():
    one = bands_zero_potential("trH", a=1.0, k_max=4)
    two = bands_zero_potential("trH", a=2.0, k_max=4)
    for b1, b2 in zip(one, two):
        assert b2.lambda_lo == pytest.approx(b1.lambda_lo / 4.0, abs=1e-12)
        assert b2.lambda_hi == pytest.approx(b1.lambda_hi / 4.0, abs=1e-12)


def test_bands_merge_flag():
    split = bands_general("SS", ZERO, 50.0)
    merged = bands_general("SS", ZERO, 50.0, merge=True)
    assert len(split) == 3
    assert len(merged) == 2
    assert merged[1].lambda_lo == pytest.approx(16.55584851158364, abs=1e-9)
    assert merged[1].lambda_hi == 50.0


def test_frozen_trh_zero_bands():
    got = [(b.lambda_lo, b.lambda_hi) for b in bands_general("trH", ZERO, 50.0)]
    want = [(0.0, 1.5152610871399395),
            (2.4674011002723395, 5.292410596458776),
            (15.861591222941751, 22.206609902451056),
            (25.524986441957573, 39.47841760435743),
            (39.47841760435743, 50.0)]
    assert len(got) == 5
    for (glo, ghi), (wlo, whi) in zip(got, want):
        assert glo == pytest.approx(wlo, abs=1e-8)
        assert ghi == pytest.approx(whi, abs=1e-8)


def test_invert_interior_levels_zero_potential():
    groups = invert_discriminant_levels(ZERO, 1.0, (0.0, 1.0 / 3.0), 30.0)
    assert groups[0] == pytest.approx(
        (2.4674011002723395, 22.206609902451056), abs=1e-9)
    assert groups[1] == pytest.approx(
        (1.5152610871399395, 25.524986441957573), abs=1e-9)


def test_invert_tangential_levels_zero_potential():
    # S' touches +-1 without crossing; these come from the S and C'
    # zero families, not from sign changes.
    plus = invert_discriminant_levels(ZERO, 1.0, (1.0,), 40.0)[0]
    assert plus == pytest.approx((0.0, 4 * math.pi ** 2), abs=1e-9)
    minus = invert_discriminant_levels(ZERO, 1.0, (-1.0,), 30.0)[0]
    assert minus == pytest.approx((math.pi ** 2,), abs=1e-9)


def test_invert_finds_narrow_graphene_gap():
    # this gap is narrower than the coarse lambda grid spacing, so a
    # pure sign-change scan skips it entirely
    edges = invert_discriminant_levels(GRAPHENE, 1.0, (-1.0,), 30.0)[0]
    in_gap = [v for v in edges if 9.0 < v < 9.7]
    assert len(in_gap) == 2
    assert in_gap[0] == pytest.approx(9.205731766411521, abs=1e-8)
    assert in_gap[1] == pytest.approx(9.578864011463065, abs=1e-8)
    # stable under a larger sweep window
    again = invert_discriminant_levels(GRAPHENE, 1.0, (-1.0,), 45.0)[0]
    assert any(abs(v - in_gap[0]) < 1e-9 for v in again)


def test_point_spectrum_trh_frozen():
    groups = {g.generator: g.lambdas for g in point_spectrum("trH", ZERO, 50.0)}
    assert groups["S_zero"] == pytest.approx(
        (math.pi ** 2, 4 * math.pi ** 2), abs=1e-9)
    assert groups["Sprime_zero"] == pytest.approx(
        (2.4674011002723395, 22.206609902451056), abs=1e-9)
    assert groups["Sprime_minus_two_thirds"] == pytest.approx(
        (5.292410596458776, 15.861591222941751), abs=1e-9)


def test_point_spectrum_every_tiling_has_dirichlet_values():
    for name in FULL_MODEL_NAMES:
        groups = {g.generator: g.lambdas for g in point_spectrum(name, ZERO, 45.0)}
        assert math.pi ** 2 == pytest.approx(groups["S_zero"][0], abs=1e-9)


def test_classify_point_lambda():
    assert classify_point_lambda("trH", ZERO, 1.0) == "interior"
    assert classify_point_lambda("trH", ZERO, 2.0) == "gap"
    assert classify_point_lambda("trH", ZERO, (math.pi / 2) ** 2) == "edge"
    assert classify_point_lambda("trH", ZERO, 9.0) == "gap"


def test_spectrum_report_composition():
    rep = spectrum_report("SS", ZERO, 20.0)
    assert rep.tiling == "SS"
    assert len(rep.ac_bands) >= 1
    assert any(g.generator == "S_zero" for g in rep.point_spectrum)


@pytest.mark.parametrize("q", [ZERO, GRAPHENE], ids=["zero", "graphene"])
def test_trh_eigenfunction_kinds(q):
    lams = {
        "polygon_dirichlet": invert_discriminant_levels(q, 1.0, (-1.0,), 30.0),
        "dodecagon_sprime_zero": invert_discriminant_levels(q, 1.0, (0.0,), 30.0),
        "triangle_ring_sprime_minus23":
            invert_discriminant_levels(q, 1.0, (-2.0 / 3.0,), 30.0),
    }
    for kind in EIGENFUNCTION_KINDS:
        built = None
        for lam in lams[kind][0]:
            try:
                built = build_eigenfunction(kind, q, lam)
            except ValueError:
                continue
            break
        assert built is not None, kind
        rep = built.residual_report(q)
        assert rep.max_residual <= 1e-10
        assert rep.generator_residual <= 1e-10


def test_polygon_dirichlet_on_even_faces_both_parities():
    # the smallest even face supports the alternating construction at
    # S' = -1 (lam = pi^2) and the equal-sign one at S' = +1 (4 pi^2)
    for name in FULL_MODEL_NAMES:
        for lam in (math.pi ** 2, 4 * math.pi ** 2):
            fn = build_eigenfunction("polygon_dirichlet", ZERO, lam, tiling=name)
            assert fn.residual_report(ZERO).max_residual <= 1e-10


def test_build_eigenfunction_rejects_wrong_lambda():
    with pytest.raises(ValueError, match="generator"):
        build_eigenfunction("polygon_dirichlet", ZERO, 10.0)


def test_ring_kinds_are_trh_only():
    from qgtile import UnsupportedTilingError

    with pytest.raises(UnsupportedTilingError):
        build_eigenfunction("dodecagon_sprime_zero", ZERO,
                            2.4674011002723395, tiling="SS")


def test_eigenfunction_sampling_vanishes_at_dirichlet_vertices():
    # at lam = pi^2 we have S(1) = 0, so both endpoint values u*S and
    # v*S of every edge vanish: the function is zero on all vertices
    fn = build_eigenfunction("polygon_dirichlet", ZERO, math.pi ** 2)
    data = fn.sample(ZERO, n_points=65)
    for label, (xs, ys) in data.items():
        assert np.all(np.isfinite(ys))
        assert abs(ys[0]) <= 1e-12
        assert abs(ys[-1]) <= 1e-12
    assert set(fn.coefficients) == set(data)
    # the support is genuinely nontrivial
    assert any(np.max(np.abs(ys)) > 0.1 for _, ys in data.values())
