"""Fundamental solutions of -u'' + q u = lam u on a single edge.

Every edge of a periodic quantum graph studied here carries the same
length ``a`` and the same potential ``q``.  The two fundamental
solutions are normalised by

    C(0) = 1, C'(0) = 0,      S(0) = 0, S'(0) = 1,

and the whole vertex calculus downstream is expressed through the four
endpoint values C(a), S(a), C'(a), S'(a).  Their Wronskian (Lagrange)
identity C S' - S C' = 1 holds for every real ``lam``; when ``q`` is
even about a/2 one additionally has C(a) = S'(a), which makes
x = S'(a) the single spectral variable of the dispersion relations.

Negative ``lam`` is fully supported: the propagation works with ``lam``
itself, never with rho = sqrt(lam), so nothing special happens at or
below zero.  For the zero potential the closed forms

    C = cos(rho a), S = sin(rho a)/rho, C' = -lam S, S' = C

are returned directly (with the hyperbolic/series branches for
lam <= 0).
"""

import csv
import math
import os
from dataclasses import dataclass

import numpy as np

from . import _kernel_py

__all__ = [
    "DEFAULT_STEPS",
    "ZeroPotential",
    "GrapheneSine",
    "SampledTable",
    "Potential",
    "EdgeSolutionBasis",
    "backend_name",
    "solve_basis",
    "basis_arrays",
    "discriminant_scan",
    "sample_solution",
    "evenness_residual",
    "load_potential_csv",
    "potential_from_spec",
]

DEFAULT_STEPS = 4096

_FORCE_PY = os.environ.get("QGTILE_PURE_PY", "").strip() not in ("", "0")
if not _FORCE_PY:
    try:
        from . import _kernel as _impl
    except ImportError:  # extension not built; fall back silently
        _impl = _kernel_py
else:
    _impl = _kernel_py


def backend_name():
    """Name of the active propagation backend: 'compiled' or 'python'."""
    return "python" if _impl is _kernel_py else "compiled"


@dataclass(frozen=True)
class ZeroPotential:
    """q = 0; solved in closed form."""

    def sample(self, x):
        return np.zeros_like(np.asarray(x, dtype=np.float64))


@dataclass(frozen=True)
class GrapheneSine:
    """q(x) = depth + (scale/1.34) sin^2(pi x / scale).

    The default depth -0.85 with scale equal to the edge length is the
    potential used throughout for non-trivial checks.  It is even about
    a/2 precisely when a/scale is an integer; use
    :func:`evenness_residual` to verify rather than assuming.
    """

    depth: float = -0.85
    scale: float = 1.0

    def sample(self, x):
        x = np.asarray(x, dtype=np.float64)
        return self.depth + (self.scale / 1.34) * np.sin(np.pi * x / self.scale) ** 2


@dataclass(frozen=True)
class SampledTable:
    """Piecewise-linear potential through (abscissae, values) points.

    Abscissae must be strictly increasing and must span the edge on
    which the table is used; this is enforced at solve time since the
    table itself does not know the edge length.
    """

    abscissae: tuple
    values: tuple

    def __post_init__(self):
        xs = np.asarray(self.abscissae, dtype=np.float64)
        ys = np.asarray(self.values, dtype=np.float64)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise ValueError("table needs matching 1-d abscissae/values, >= 2 points")
        if not np.all(np.diff(xs) > 0):
            raise ValueError("table abscissae must be strictly increasing")

    def sample(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.interp(x, np.asarray(self.abscissae), np.asarray(self.values))

    def check_span(self, a):
        xs = self.abscissae
        if xs[0] > 1e-12 or xs[-1] < a - 1e-12:
            raise ValueError(
                f"table spans [{xs[0]:g}, {xs[-1]:g}] but the edge needs [0, {a:g}]"
            )


Potential = ZeroPotential | GrapheneSine | SampledTable


@dataclass(frozen=True)
class EdgeSolutionBasis:
    """Endpoint data of the fundamental system at one (a, lam).

    ``rho`` is sqrt(lam) for lam >= 0 and 0.0 otherwise; ``lam`` is the
    authoritative encoding (negative lam means imaginary frequency).
    """

    a: float
    lam: float
    C: float
    S: float
    Cp: float
    Sp: float

    @property
    def rho(self):
        return math.sqrt(self.lam) if self.lam >= 0 else 0.0

    def lagrange_defect(self):
        """|C S' - S C' - 1|; zero in exact arithmetic."""
        return abs(self.C * self.Sp - self.S * self.Cp - 1.0)


def _zero_closed_form(a, lams):
    """Vectorized closed forms for q = 0, stable through lam = 0."""
    lams = np.asarray(lams, dtype=np.float64)
    z = lams * a * a
    C = np.empty_like(lams)
    S = np.empty_like(lams)

    osc = z > 1e-8
    hyp = z < -1e-8
    mid = ~(osc | hyp)
    if np.any(osc):
        r = np.sqrt(lams[osc])
        C[osc] = np.cos(r * a)
        S[osc] = np.sin(r * a) / r
    if np.any(hyp):
        m = np.sqrt(-lams[hyp])
        C[hyp] = np.cosh(m * a)
        S[hyp] = np.sinh(m * a) / m
    if np.any(mid):
        zz = z[mid]
        C[mid] = 1.0 - zz / 2.0 + zz * zz / 24.0
        S[mid] = a * (1.0 - zz / 6.0 + zz * zz / 120.0)
    return C, S, -lams * S, C.copy()


def _potential_samples(q, a, n_steps):
    xs = np.linspace(0.0, a, 2 * n_steps + 1)
    if isinstance(q, SampledTable):
        q.check_span(a)
    return np.ascontiguousarray(q.sample(xs), dtype=np.float64)


def basis_arrays(q, a, lams, n_steps=DEFAULT_STEPS):
    """(C, S, Cp, Sp) endpoint arrays over a batch of lam values."""
    if a <= 0:
        raise ValueError("edge length must be positive")
    lams = np.ascontiguousarray(lams, dtype=np.float64)
    if isinstance(q, ZeroPotential):
        return _zero_closed_form(a, lams)
    qs = _potential_samples(q, a, n_steps)
    return _impl.propagate(qs, lams, a / n_steps, n_steps)


def solve_basis(q, a, lam, n_steps=DEFAULT_STEPS):
    """Fundamental-solution endpoint values at a single lam."""
    C, S, Cp, Sp = basis_arrays(q, a, np.array([float(lam)]), n_steps)
    return EdgeSolutionBasis(a=a, lam=float(lam), C=C[0], S=S[0], Cp=Cp[0], Sp=Sp[0])


def discriminant_scan(q, a, lams, n_steps=DEFAULT_STEPS):
    """Endpoint table over a lam grid, shape (m, 4), columns C, S, Cp, Sp.

    For an even potential column 3 is the spectral variable x = S'(a)
    (equal to column 0 up to integration error).
    """
    C, S, Cp, Sp = basis_arrays(q, a, lams, n_steps)
    return np.stack([C, S, Cp, Sp], axis=1)


def sample_solution(q, a, lam, n_record=256, n_steps=DEFAULT_STEPS):
    """Tabulate C, S and derivatives on n_record+1 equispaced points.

    Returns (xs, C, S, Cp, Sp) as 1-d arrays.  Used for writing out
    eigenfunction components; always runs on the Python backend.
    """
    if n_steps % n_record != 0:
        n_steps = n_record * max(1, round(n_steps / n_record))
    if isinstance(q, ZeroPotential):
        xs = np.linspace(0.0, a, n_record + 1)
        out = [np.empty(n_record + 1) for _ in range(4)]
        for i, x in enumerate(xs):
            C, S, Cp, Sp = _zero_closed_form(x, np.array([float(lam)]))
            out[0][i], out[1][i], out[2][i], out[3][i] = C[0], S[0], Cp[0], Sp[0]
        return (xs, *out)
    qs = _potential_samples(q, a, n_steps)
    lam_arr = np.array([float(lam)])
    C, S, Cp, Sp = _kernel_py.propagate_dense(
        qs, lam_arr, a / n_steps, n_steps, n_steps // n_record
    )
    xs = np.linspace(0.0, a, n_record + 1)
    return xs, C[:, 0], S[:, 0], Cp[:, 0], Sp[:, 0]


def evenness_residual(q, a, n_check=1025):
    """max |q(x) - q(a - x)| on a uniform grid; 0 for an even potential."""
    xs = np.linspace(0.0, a, n_check)
    vals = q.sample(xs)
    return float(np.max(np.abs(vals - vals[::-1])))


def load_potential_csv(path):
    """Read a two-column CSV (abscissa, value) into a SampledTable.

    A single header row is tolerated and skipped if its cells do not
    parse as numbers.
    """
    xs, ys = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: need two columns, got {row!r}")
            try:
                x, y = float(row[0]), float(row[1])
            except ValueError:
                if not xs:  # header row
                    continue
                raise
            xs.append(x)
            ys.append(y)
    if len(xs) < 2:
        raise ValueError(f"{path}: fewer than two data rows")
    return SampledTable(abscissae=tuple(xs), values=tuple(ys))


def potential_from_spec(text, a=1.0):
    """Parse a CLI potential designator: 'zero', 'graphene', 'file:PATH'."""
    t = text.strip().lower()
    if t == "zero":
        return ZeroPotential()
    if t == "graphene":
        return GrapheneSine(depth=-0.85, scale=a)
    if text.strip().startswith("file:"):
        return load_potential_csv(text.strip()[5:])
    raise ValueError(f"unknown potential designator {text!r}")
