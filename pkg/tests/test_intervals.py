"""Edge solution solver: closed forms, identities, convergence order."""

from __future__ import annotations

import math
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgtile import (
    EdgeSolutionBasis,
    GrapheneSine,
    SampledTable,
    ZeroPotential,
    backend_name,
    basis_arrays,
    evenness_residual,
    load_potential_csv,
    potential_from_spec,
    solve_basis,
)

ZERO = ZeroPotential()
GRAPHENE = GrapheneSine()


def test_zero_potential_closed_forms():
    for lam in (4.0, 0.0, -9.0, 137.2):
        b = solve_basis(ZERO, 1.0, lam)
        if lam > 0:
            r = math.sqrt(lam)
            assert b.C == pytest.approx(math.cos(r), abs=1e-14)
            assert b.S == pytest.approx(math.sin(r) / r, abs=1e-14)
            assert b.Cp == pytest.approx(-r * math.sin(r), abs=1e-14)
        elif lam == 0:
            assert (b.C, b.S, b.Cp, b.Sp) == (1.0, 1.0, 0.0, 1.0)
        else:
            k = math.sqrt(-lam)
            assert b.C == pytest.approx(math.cosh(k), rel=1e-14)
            assert b.S == pytest.approx(math.sinh(k) / k, rel=1e-14)
        assert b.Sp == pytest.approx(b.C, abs=1e-13)


def test_graphene_frozen_values():
    # Reference values from an independent high-order integration,
    # frozen; both backends must reproduce them.
    b = solve_basis(GRAPHENE, 1.0, 1.0)
    assert b.C == pytest.approx(0.3472899956016876, abs=1e-12)
    assert b.S == pytest.approx(0.7885100557513213, abs=1e-12)
    assert b.Cp == pytest.approx(-1.1152548436646912, abs=1e-12)
    assert b.Sp == pytest.approx(0.3472899956016872, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    lam=st.floats(min_value=-20.0, max_value=400.0),
    a=st.sampled_from([0.5, 1.0, 2.0]),
)
def test_lagrange_identity(lam, a):
    # The identity is exact for the flow; the fixed-step integrator
    # violates it at O(h^4), worst near a=2 (h doubles) at large lam.
    b = solve_basis(GRAPHENE, a, lam)
    scale = max(1.0, abs(b.C), abs(b.S), abs(b.Cp), abs(b.Sp))
    assert b.lagrange_defect() <= 2e-10 * scale


@settings(max_examples=40, deadline=None)
@given(lam=st.floats(min_value=-10.0, max_value=300.0))
def test_even_potential_symmetry(lam):
    b = solve_basis(GRAPHENE, 1.0, lam)
    assert abs(b.C - b.Sp) <= 1e-9


def test_zero_potential_edge_scaling():
    # For q = 0 everything is a function of rho * a.
    for lam in (3.7, 21.0):
        for a in (0.5, 2.0):
            b = solve_basis(ZERO, a, lam)
            ref = solve_basis(ZERO, 1.0, lam * a * a)
            assert b.C == pytest.approx(ref.C, abs=1e-13)
            assert b.S == pytest.approx(a * ref.S, abs=1e-13)
            assert b.Cp == pytest.approx(ref.Cp / a, abs=1e-13)


def test_rho_property():
    assert solve_basis(ZERO, 1.0, 4.0).rho == pytest.approx(2.0)
    assert solve_basis(ZERO, 1.0, 0.0).rho == 0.0


def test_fourth_order_convergence():
    lam = 17.3
    ref = solve_basis(GRAPHENE, 1.0, lam, n_steps=32768)
    errs = []
    for n in (512, 1024, 2048, 4096):
        b = solve_basis(GRAPHENE, 1.0, lam, n_steps=n)
        errs.append(max(abs(b.C - ref.C), abs(b.S - ref.S),
                        abs(b.Cp - ref.Cp), abs(b.Sp - ref.Sp)))
    for e_coarse, e_fine in zip(errs, errs[1:]):
        assert e_coarse / e_fine > 10.0  # nominal ratio 16


def test_basis_arrays_matches_scalar_solves():
    lams = np.array([-4.0, 0.3, 9.0, 80.0])
    C, S, Cp, Sp = basis_arrays(GRAPHENE, 1.0, lams)
    for i, lam in enumerate(lams):
        b = solve_basis(GRAPHENE, 1.0, float(lam))
        assert C[i] == pytest.approx(b.C, abs=1e-14)
        assert S[i] == pytest.approx(b.S, abs=1e-14)
        assert Cp[i] == pytest.approx(b.Cp, abs=1e-14)
        assert Sp[i] == pytest.approx(b.Sp, abs=1e-14)


def test_sampled_table_reproduces_graphene():
    xs = np.linspace(0.0, 1.0, 8193)
    table = SampledTable(abscissae=tuple(xs), values=tuple(GRAPHENE.sample(xs)))
    bt = solve_basis(table, 1.0, 5.0)
    bg = solve_basis(GRAPHENE, 1.0, 5.0)
    assert bt.C == pytest.approx(bg.C, abs=1e-7)
    assert bt.Sp == pytest.approx(bg.Sp, abs=1e-7)


def test_potential_csv_roundtrip(tmp_path):
    path = tmp_path / "pot.csv"
    xs = np.linspace(0.0, 1.0, 33)
    ys = GRAPHENE.sample(xs)
    with open(path, "w") as fh:
        fh.write("x,q\n")
        for x, y in zip(xs, ys):
            fh.write(f"{float(x)!r},{float(y)!r}\n")
    table = load_potential_csv(path)
    assert np.allclose(table.sample(xs), ys, atol=1e-15)


def test_potential_from_spec():
    assert isinstance(potential_from_spec("zero"), ZeroPotential)
    assert isinstance(potential_from_spec("GRAPHENE"), GrapheneSine)
    with pytest.raises(ValueError):
        potential_from_spec("mystery")


def test_evenness_residual():
    assert evenness_residual(ZERO, 1.0) == 0.0
    assert evenness_residual(GRAPHENE, 1.0) <= 1e-12
    # graphene potential on a half-integer edge is not even
    assert evenness_residual(GrapheneSine(scale=1.0), 1.5) > 1e-3


def test_backends_agree():
    code = (
        "from qgtile import solve_basis, GrapheneSine, backend_name\n"
        "b = solve_basis(GrapheneSine(), 1.0, 37.0)\n"
        "print(backend_name())\n"
        "print(repr(b.C), repr(b.S), repr(b.Cp), repr(b.Sp))\n"
    )
    env = dict(os.environ, QGTILE_PURE_PY="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    lines = out.stdout.strip().splitlines()
    assert lines[0] == "python"
    vals = [float(v.replace("np.float64(", "").replace(")", ""))
            for v in lines[1].split()]
    b = solve_basis(GRAPHENE, 1.0, 37.0)
    for got, ref in zip(vals, (b.C, b.S, b.Cp, b.Sp)):
        assert got == pytest.approx(ref, abs=1e-13)


def test_compiled_backend_active():
    # The build ships the compiled kernel; the fallback is opt-in.
    if os.environ.get("QGTILE_PURE_PY"):
        pytest.skip("pure-python run requested")
    assert backend_name() == "compiled"
