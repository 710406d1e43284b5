"""Dispersion polynomials: frozen coefficients, identities, root finding."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgtile import (
    TILING_NAMES,
    dispersion_coefficients,
    dispersion_root_set,
    evaluate_dispersion,
    identity_residuals,
    roots_for_coefficient_stack,
    trig_invariants,
)
from qgtile.dispersion import THETA_ZERO_INT_COEFFS

THETAS = st.floats(min_value=-math.pi, max_value=math.pi)


@pytest.mark.parametrize("name", sorted(THETA_ZERO_INT_COEFFS))
def test_integer_coefficients_at_theta_zero(name):
    # At theta = 0 every cosine is exactly 1, so the coefficient
    # arithmetic is exact and must hit the frozen integers dead on.
    got = dispersion_coefficients(name, 0.0, 0.0)
    assert list(got) == list(map(float, THETA_ZERO_INT_COEFFS[name]))


@pytest.mark.parametrize("name", TILING_NAMES)
def test_p_one_zero_zero_vanishes(name):
    assert evaluate_dispersion(name, 1.0, 0.0, 0.0) == 0.0
    # same fact in integer arithmetic: the coefficients sum to zero
    assert sum(THETA_ZERO_INT_COEFFS[name]) == 0


@settings(max_examples=40, deadline=None)
@given(t1=THETAS, t2=THETAS, x=st.floats(min_value=-1.5, max_value=1.5))
def test_theta_point_symmetry(t1, t2, x):
    a = evaluate_dispersion("trH", x, t1, t2)
    b = evaluate_dispersion("trH", x, -t1, -t2)
    assert a == pytest.approx(b, abs=1e-11 * (1 + abs(a)))


@settings(max_examples=40, deadline=None)
@given(t1=THETAS, t2=THETAS, x=st.floats(min_value=-1.5, max_value=1.5))
def test_two_pi_periodicity(t1, t2, x):
    a = evaluate_dispersion("SS", x, t1, t2)
    b = evaluate_dispersion("SS", x, t1 + 2 * math.pi, t2 - 2 * math.pi)
    assert a == pytest.approx(b, abs=1e-9 * (1 + abs(a)))


def test_trh_factorized_value():
    # G(x) = 3x(3x+2) p(x) at x=2, theta=0 evaluates to 34560; a drift
    # in either the prefactor or the quartic would break this product.
    p = evaluate_dispersion("trH", 2.0, 0.0, 0.0)
    assert p == 720.0
    assert 3 * 2.0 * (3 * 2.0 + 2.0) * p == 34560.0


def test_trth_sextic_in_big_x():
    # p(x, theta) is a sextic L in X = 9x^2 whose coefficients are
    # affine in the difference-angle invariants.
    rng = np.random.default_rng(11)
    for _ in range(60):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        x = rng.uniform(-1.5, 1.5)
        ti = trig_invariants(t1, t2)
        w1, w2, w3 = ti.omega1_tilde, ti.omega2_tilde, ti.omega3_tilde
        X = 9.0 * x * x
        L = (X**6 - 18 * X**5 + 111 * X**4 - (48 * w2 + 268) * X**3
             + (240 * w2 + 207) * X**2 - (32 * w3 + 240 * w2 + 34) * X
             + 8 * w1 + 64 * w2 + 16 * w3 - 7)
        p = evaluate_dispersion("trTH", x, t1, t2)
        assert abs(p - L) <= 1e-9 * max(1.0, abs(p))


def test_st_omega_form():
    rng = np.random.default_rng(12)
    for _ in range(60):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        x = rng.uniform(-1.5, 1.5)
        ti = trig_invariants(t1, t2)
        w1, w2, w3 = ti.omega1_tilde, ti.omega2_tilde, ti.omega3_tilde
        form = (15625 * x**6 - 9375 * x**4 - (4000 * w2 + 1000) * x**3
                - (2400 * w2 - 1275) * x**2 - (240 * w2 + 80 * w3 - 200) * x
                + 8 * w1 + 32 * w2 - 32 * w3 - 13)
        p = evaluate_dispersion("ST", x, t1, t2)
        assert abs(p - form) <= 1e-9 * max(1.0, abs(p))


@settings(max_examples=50, deadline=None)
@given(t1=THETAS, t2=THETAS)
def test_trigonometric_identities(t1, t2):
    r_mod, r_cos, r_w3 = identity_residuals(t1, t2)
    assert r_mod <= 1e-12
    assert r_cos <= 1e-12
    assert r_w3 <= 1e-12


@settings(max_examples=50, deadline=None)
@given(t1=THETAS, t2=THETAS)
def test_invariant_conversions(t1, t2):
    # plain-omega invariants as quartics in the half-angle cosines
    ti = trig_invariants(t1, t2)
    xi, eta = ti.xi, ti.eta
    assert ti.omega2 == pytest.approx(xi * xi / 2 + xi * eta / 2, abs=1e-12)
    assert ti.omega3 == pytest.approx(
        2 * xi**3 * eta - 1.5 * xi * eta + eta * eta / 2, abs=1e-12)
    assert ti.omega1 == pytest.approx(
        2 * xi**4 + 2 * xi * xi * eta * eta - 3 * xi * xi - eta * eta + 1,
        abs=1e-12)


def test_trth_even_in_x():
    rng = np.random.default_rng(13)
    for _ in range(20):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        x = rng.uniform(0.0, 1.5)
        assert evaluate_dispersion("trTH", x, t1, t2) == pytest.approx(
            evaluate_dispersion("trTH", -x, t1, t2), rel=1e-12, abs=1e-12)


def test_root_set_against_exact_trth_factorization():
    # At theta = 0 the sextic factors as (X-1)^3 (X-3)^2 (X-9), giving
    # x-roots of multiplicity 3, 2 and 1.  All three multiplicity
    # classes must come out, pinned well below the soundness margin.
    roots = dispersion_root_set("trTH", (0.0, 0.0))
    exact = np.array([-1.0, -1 / math.sqrt(3.0), -1.0 / 3.0,
                      1.0 / 3.0, 1 / math.sqrt(3.0), 1.0])
    assert roots.size == exact.size
    assert np.max(np.abs(roots - exact)) <= 1e-7


def test_no_missed_roots_when_step_shrinks():
    rng = np.random.default_rng(5)
    for name in ("trH", "trTH", "SS"):
        for _ in range(6):
            theta = tuple(rng.uniform(-math.pi, math.pi, 2))
            coarse = dispersion_root_set(name, theta, step=1e-3)
            fine = dispersion_root_set(name, theta, step=1e-4)
            for x in fine:
                assert np.min(np.abs(coarse - x)) <= 5e-4


def test_roots_for_coefficient_stack_shapes():
    coef = np.stack([
        dispersion_coefficients("SS", 0.3, -0.8),
        dispersion_coefficients("SS", 1.1, 2.2),
    ], axis=1)
    roots, cols = roots_for_coefficient_stack(coef)
    assert roots.shape == cols.shape
    assert set(np.unique(cols)) <= {0, 1}
    for r, c in zip(roots, cols):
        val = evaluate_dispersion("SS", float(r), *((0.3, -0.8) if c == 0
                                                    else (1.1, 2.2)))
        assert abs(val) <= 1e-7


def test_simple_roots_are_machine_accurate():
    # Away from degenerate theta the roots are simple; bisection plus
    # the compensated polish should land at ~1e-12 or better.
    theta = (0.83, -1.37)
    roots = dispersion_root_set("SS", theta)
    vals = evaluate_dispersion("SS", roots, *theta)
    assert np.max(np.abs(vals)) <= 1e-11
