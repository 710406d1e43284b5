"""Spectra of the tiling graphs from the interval discriminant.

For an even potential the whole spectral problem reduces to the scalar
function x(lam) = S'(a, lam): the absolutely continuous spectrum is the
preimage of a tiling-specific union of closed x-intervals, and the
point spectrum (flat bands) is generated by the zeros of the prefactor
S^i (S')^j (2S'+1)^k (3S'+2)^l.  This module computes both, plus the
explicit compactly supported eigenfunctions that witness the flat
bands.

Band convention: a band is one monotone run of the discriminant, so
two bands that meet at a tangency |S'| = 1 are reported separately
(pass merge=True to join them).
"""

import math
from dataclasses import dataclass

import numpy as np

from .dispersion import dispersion_form
from .intervals import (
    DEFAULT_STEPS,
    GrapheneSine,
    SampledTable,
    ZeroPotential,
    basis_arrays,
    evenness_residual,
    sample_solution,
    solve_basis,
)
from .tilings import UnsupportedTilingError, get_tiling

__all__ = [
    "SpectralBand",
    "PointSpectrumGroup",
    "SpectrumReport",
    "ac_range",
    "bands_zero_potential",
    "bands_general",
    "point_spectrum",
    "spectrum_report",
    "classify_point_lambda",
    "invert_discriminant_levels",
    "EdgewiseFunction",
    "VertexJoint",
    "ResidualReport",
    "build_eigenfunction",
    "EIGENFUNCTION_KINDS",
]

_SQ3 = math.sqrt(3.0)

# Closed x-intervals of S'(a, rho) carrying absolutely continuous
# spectrum, with exact algebraic endpoints.
_AC_RANGE = {
    "trH": ((-2.0 / 3.0, 0.0), (1.0 / 3.0, 1.0)),
    "SS": ((-3.0 / 5.0, 1.0),),
    "RTH": ((-3.0 / 4.0, 1.0),),
    "ST": ((-(1.0 + _SQ3) / 5.0, 1.0),),
    "trTH": ((-1.0, -1.0 / _SQ3), (-1.0 / 3.0, 1.0 / 3.0), (1.0 / _SQ3, 1.0)),
    "T": ((-1.0 / 2.0, 1.0),),
    "TH": ((-1.0 / 2.0, 1.0),),
    # The elongated-triangular roots are x = (2 cos t1 +- sqrt(1 + 8w))/5
    # with 1 + 8w = |1 + e^{i t1} + e^{i t2}|^2.  Writing u = cos(t1/2),
    # the reachable minimum of the minus branch is (4u^2 - 2u - 3)/5,
    # smallest at u = 1/4, giving -13/20 (not -3/5, which is the value
    # at u = 0 or 1/2 only).
    "ET": ((-13.0 / 20.0, 1.0),),
    "S": ((-1.0, 1.0),),
    "H": ((-1.0, 1.0),),
    "trS": ((-1.0, 1.0),),
}

_EVEN_TOL = 1e-6


def ac_range(tiling):
    """Union of closed S'-intervals supporting ac spectrum, ascending."""
    spec = get_tiling(tiling) if isinstance(tiling, str) else tiling
    return _AC_RANGE[spec.name]


@dataclass(frozen=True)
class SpectralBand:
    lambda_lo: float
    lambda_hi: float
    band_index: int

    def width(self):
        return self.lambda_hi - self.lambda_lo


@dataclass(frozen=True)
class PointSpectrumGroup:
    generator: str
    lambdas: tuple


@dataclass(frozen=True)
class SpectrumReport:
    tiling: str
    ac_bands: tuple
    point_spectrum: tuple


def _index_bands(pairs, merge):
    pairs = sorted(pairs)
    if merge:
        merged = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1] + 1e-9 * (1.0 + abs(lo)):
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        pairs = [(lo, hi) for lo, hi in merged]
    return tuple(SpectralBand(lo, hi, i) for i, (lo, hi) in enumerate(pairs))


def bands_zero_potential(tiling, a=1.0, k_max=5, merge=False):
    """Explicit q = 0 bands.

    With q = 0 the discriminant is S'(a, rho) = cos(rho a), monotone on
    each piece rho a in [m pi, (m+1) pi], so every ac interval [lo, hi]
    pulls back to one arccos window per piece.  k_max is the largest
    piece index.
    """
    if a <= 0:
        raise ValueError("edge length a must be positive")
    ranges = ac_range(tiling)
    pairs = []
    for m in range(k_max + 1):
        for lo, hi in ranges:
            alo, ahi = math.acos(hi), math.acos(lo)
            if m % 2 == 0:
                r0, r1 = m * math.pi + alo, m * math.pi + ahi
            else:
                r0, r1 = (m + 1) * math.pi - ahi, (m + 1) * math.pi - alo
            pairs.append(((r0 / a) ** 2, (r1 / a) ** 2))
    return _index_bands(pairs, merge)


def _q_floor(q):
    if isinstance(q, ZeroPotential):
        return 0.0
    if isinstance(q, GrapheneSine):
        return q.depth
    if isinstance(q, SampledTable):
        return float(np.min(q.values))
    raise TypeError(f"unknown potential type {type(q).__name__}")


def _require_even(q, a):
    r = evenness_residual(q, a)
    if r > _EVEN_TOL:
        raise ValueError(
            f"potential evenness residual {r:.3e} exceeds {_EVEN_TOL:.1e}"
        )


def _lambda_grid(q, a, lam_max):
    lam_min = min(0.0, _q_floor(q)) - 1.0
    span = math.sqrt(max(lam_max - lam_min, 1.0))
    n = int(math.ceil(span / (math.pi / (50.0 * a)))) + 1
    us = np.linspace(0.0, span, n)
    return lam_min + us * us


def _column(q, a, lams, col, n_steps):
    table = basis_arrays(q, a, np.asarray(lams, dtype=np.float64), n_steps)
    return table[col]


def _grid_roots(q, a, lams, vals, targets, col, n_steps, iters=52):
    """All lam with column(lam) = t for each target t, by bracketing.

    Exact zeros that happen to sit on grid points are taken as-is;
    strict sign changes are bisected (vectorised across all brackets
    and targets at once).  Returns a list of root arrays, one per
    target.
    """
    lams = np.asarray(lams)
    lo_list, hi_list, t_list, owner = [], [], [], []
    hits = [[] for _ in targets]
    for k, t in enumerate(targets):
        f = vals - t
        zero = f == 0.0
        hits[k].extend(lams[zero])
        sw = np.nonzero(f[:-1] * f[1:] < 0.0)[0]
        lo_list.extend(lams[sw])
        hi_list.extend(lams[sw + 1])
        t_list.extend([t] * sw.size)
        owner.extend([k] * sw.size)
    if lo_list:
        lo = np.array(lo_list)
        hi = np.array(hi_list)
        ts = np.array(t_list)
        flo = _column(q, a, lo, col, n_steps) - ts
        for _ in range(iters):
            mid = 0.5 * (lo + hi)
            fm = _column(q, a, mid, col, n_steps) - ts
            left = flo * fm <= 0.0
            hi = np.where(left, mid, hi)
            lo = np.where(left, lo, mid)
            flo = np.where(left, flo, fm)
        roots = 0.5 * (lo + hi)
        for k, r in zip(owner, roots):
            hits[k].append(float(r))
    return [np.sort(np.array(h)) for h in hits]


def _dedupe_sorted(vals, tol=1e-8):
    out = []
    for v in vals:
        if not out or v - out[-1] > tol:
            out.append(v)
    return out


def bands_general(tiling, q, lam_max, a=1.0, n_steps=DEFAULT_STEPS, merge=False):
    """Bands of an even-potential graph up to lam_max.

    Band edges are located by bisecting S'(a, .) against every ac
    interval endpoint; the split points between touching bands are the
    zeros of S(a, .), where |S'| = 1 for any even potential.
    """
    if a <= 0:
        raise ValueError("edge length a must be positive")
    _require_even(q, a)
    ranges = ac_range(tiling)
    lams = _lambda_grid(q, a, lam_max)
    table = basis_arrays(q, a, lams, n_steps)
    svals, xvals = table[1], table[3]
    endpoints = sorted({e for pair in ranges for e in pair})
    edge_roots = _grid_roots(q, a, lams, xvals, endpoints, 3, n_steps)
    s_roots = _grid_roots(q, a, lams, svals, [0.0], 1, n_steps)[0]
    cuts = [float(lams[0]), float(lam_max)]
    for arr in edge_roots:
        cuts.extend(float(v) for v in arr)
    cuts.extend(float(v) for v in s_roots)
    cuts = _dedupe_sorted(sorted(c for c in cuts if lams[0] <= c <= lam_max))

    mids = np.array([0.5 * (cuts[i] + cuts[i + 1]) for i in range(len(cuts) - 1)])
    if mids.size == 0:
        return ()
    xm = _column(q, a, mids, 3, n_steps)
    inside = np.zeros(mids.size, dtype=bool)
    for lo, hi in ranges:
        inside |= (xm >= lo - 1e-10) & (xm <= hi + 1e-10)

    pairs = []
    start = None
    for i, ok in enumerate(inside):
        if ok and start is None:
            start = cuts[i]
        if ok and (i == inside.size - 1 or not inside[i + 1] or not merge):
            pairs.append((start, cuts[i + 1]))
            start = None
        if not ok:
            start = None
    return _index_bands(pairs, merge)


_GENERATOR_LEVELS = (
    ("Sprime_zero", "sp_power", 0.0),
    ("TwoSprimePlusOne_zero", "two_sp_plus_one_power", -0.5),
    ("Sprime_minus_two_thirds", "three_sp_plus_two_power", -2.0 / 3.0),
)


def point_spectrum(tiling, q, lam_max, a=1.0, n_steps=DEFAULT_STEPS):
    """Flat-band eigenvalues up to lam_max, grouped by generator.

    Every tiling contributes the zeros of S(a, .); a nontrivial
    prefactor adds the preimages of the corresponding S' level
    (0, -1/2 or -2/3).
    """
    _require_even(q, a)
    spec = get_tiling(tiling) if isinstance(tiling, str) else tiling
    form = dispersion_form(spec.name)
    lams = _lambda_grid(q, a, lam_max)
    table = basis_arrays(q, a, lams, n_steps)
    svals, xvals = table[1], table[3]

    groups = []
    s_roots = _grid_roots(q, a, lams, svals, [0.0], 1, n_steps)[0]
    groups.append(PointSpectrumGroup(
        "S_zero", tuple(float(v) for v in s_roots if v <= lam_max)))
    levels = [(name, lvl) for name, attr, lvl in _GENERATOR_LEVELS
              if getattr(form, attr) > 0]
    if levels:
        roots = _grid_roots(q, a, lams, xvals, [lvl for _, lvl in levels],
                            3, n_steps)
        for (name, _), arr in zip(levels, roots):
            groups.append(PointSpectrumGroup(
                name, tuple(float(v) for v in arr if v <= lam_max)))
    return tuple(groups)


def spectrum_report(tiling, q, lam_max, a=1.0, n_steps=DEFAULT_STEPS, merge=False):
    spec = get_tiling(tiling) if isinstance(tiling, str) else tiling
    return SpectrumReport(
        tiling=spec.name,
        ac_bands=bands_general(spec, q, lam_max, a, n_steps, merge),
        point_spectrum=point_spectrum(spec, q, lam_max, a, n_steps),
    )


def classify_point_lambda(tiling, q, lam, a=1.0, n_steps=DEFAULT_STEPS, x_tol=1e-6):
    """'interior', 'edge' or 'gap' relative to the ac x-ranges.

    The margin is taken in x-space, where a lambda perturbation of
    1e-8 moves the discriminant by far less than x_tol.
    """
    x = solve_basis(q, a, lam, n_steps).Sp
    verdict = "gap"
    for lo, hi in ac_range(tiling):
        if lo + x_tol < x < hi - x_tol:
            return "interior"
        if abs(x - lo) <= x_tol or abs(x - hi) <= x_tol:
            verdict = "edge"
    return verdict


def invert_discriminant_levels(q, a, levels, lam_max, n_steps=DEFAULT_STEPS):
    """All lam <= lam_max with S'(a, lam) = level, one tuple per level.

    The levels +1 and -1 need extra care: where a spectral gap closes,
    the discriminant only touches the level without crossing it, and
    where a gap is narrower than the scan grid both crossings can hide
    between samples.  The Lagrange identity with C = S' gives
    S'^2 = 1 + S C', so every point with S' = +-1 is a zero of S(a, .)
    or of C'(a, .); both of those families are transversal and easy to
    bracket, so for these levels they are located directly and merged
    with whatever plain bracketing found.
    """
    _require_even(q, a)
    lams = _lambda_grid(q, a, lam_max)
    table = basis_arrays(q, a, lams, n_steps)
    roots = _grid_roots(q, a, lams, table[3], list(levels), 3, n_steps)
    aux = None
    out = []
    for level, arr in zip(levels, roots):
        vals = [float(v) for v in arr if v <= lam_max]
        if abs(abs(level) - 1.0) <= 1e-12:
            if aux is None:
                aux = []
                for col in (1, 2):
                    zs = _grid_roots(q, a, lams, table[col], [0.0], col, n_steps)[0]
                    zs = zs[zs <= lam_max] if zs.size else zs
                    xs = (_column(q, a, zs, 3, n_steps)
                          if zs.size else np.empty(0))
                    aux.append((zs, xs))
            for zs, xs in aux:
                vals.extend(float(v) for v, x in zip(zs, xs)
                            if abs(x - level) <= 1e-6)
        out.append(tuple(_dedupe_sorted(sorted(vals))))
    return out


# ---------------------------------------------------------------------------
# Flat-band eigenfunctions.
#
# All constructions use one scalar profile f(x) = S(x, lam) per edge and
# combine it as u f(x) + v f(a - x).  Endpoint values and derivatives
# then involve only s = S(a) and x* = S'(a):
#     value(0) = v s        value(a) = u s
#     deriv(0) = u - v x*   deriv(a) = u x* - v
# (the derivative formulas use C(a) = S'(a), i.e. evenness of q).
# ---------------------------------------------------------------------------

EIGENFUNCTION_KINDS = (
    "polygon_dirichlet",
    "dodecagon_sprime_zero",
    "triangle_ring_sprime_minus23",
)

_GENERATOR_OF_KIND = {
    "polygon_dirichlet": "S_zero",
    "dodecagon_sprime_zero": "Sprime_zero",
    "triangle_ring_sprime_minus23": "Sprime_minus_two_thirds",
}

# Smallest even face of each tiling, and the common vertex degree.
_POLYGON = {"trH": 12, "SS": 4, "RTH": 4, "ST": 6, "trTH": 4}
_DEGREE = {"trH": 3, "SS": 5, "RTH": 4, "ST": 5, "trTH": 3}


@dataclass(frozen=True)
class VertexJoint:
    name: str
    attachments: tuple  # ((edge_label, 'Start'|'End'), ...)
    n_stubs: int


@dataclass(frozen=True)
class ResidualReport:
    max_continuity: float
    max_kirchhoff: float
    generator_residual: float

    @property
    def max_residual(self):
        return max(self.max_continuity, self.max_kirchhoff)


@dataclass(frozen=True)
class EdgewiseFunction:
    """Compactly supported eigenfunction given by per-edge (u, v) pairs."""

    tiling: str
    kind: str
    lam: float
    a: float
    coefficients: dict  # edge label -> (u, v)
    joints: tuple
    generator: str

    def endpoint_data(self, basis):
        """Per-joint (values, outgoing derivative sum)."""
        s, x = basis.S, basis.Sp
        out = []
        for joint in self.joints:
            vals, ksum = [], 0.0
            for label, end in joint.attachments:
                u, v = self.coefficients[label]
                if end == "Start":
                    vals.append(v * s)
                    ksum += u - v * x
                else:
                    vals.append(u * s)
                    ksum += v - u * x
            out.append((vals, ksum))
        return out

    def residual_report(self, q, n_steps=DEFAULT_STEPS):
        basis = solve_basis(q, self.a, self.lam, n_steps)
        max_c = 0.0
        max_k = 0.0
        for joint, (vals, ksum) in zip(self.joints, self.endpoint_data(basis)):
            spread = max(vals) - min(vals)
            if joint.n_stubs > 0:
                spread = max(spread, max(abs(v) for v in vals))
            max_c = max(max_c, spread)
            max_k = max(max_k, abs(ksum))
        return ResidualReport(max_c, max_k, _generator_residual(
            self.generator, basis))

    def sample(self, q, n_points=257, n_steps=DEFAULT_STEPS):
        """Per-edge sampled values; dict label -> (xs, ys)."""
        xs, _, sv, _, _ = sample_solution(q, self.a, self.lam,
                                          n_points - 1, n_steps)
        rev = sv[::-1]
        return {label: (xs, u * sv + v * rev)
                for label, (u, v) in self.coefficients.items()}


def _generator_residual(generator, basis):
    if generator == "S_zero":
        return abs(basis.S)
    if generator == "Sprime_zero":
        return abs(basis.Sp)
    if generator == "Sprime_minus_two_thirds":
        return abs(3.0 * basis.Sp + 2.0) / 3.0
    if generator == "TwoSprimePlusOne_zero":
        return abs(2.0 * basis.Sp + 1.0) / 2.0
    raise ValueError(f"unknown generator {generator}")


def _polygon_function(spec, lam, a, basis):
    n = _POLYGON[spec.name]
    stubs = _DEGREE[spec.name] - 2
    x = basis.Sp
    xr = round(x)
    if abs(x - xr) > 1e-8 or xr not in (-1, 1):
        raise ValueError(
            f"S'(a) = {x!r} is not within 1e-8 of +-1; "
            "S(a) = 0 forces S'^2 = 1 for even potentials")
    if xr == -1 and n % 2:
        raise ValueError("odd cycle cannot close with S'(a) = -1")
    coeff = {f"e{i}": (float(xr) ** i, 0.0) for i in range(n)}
    joints = tuple(
        VertexJoint(f"v{i}", ((f"e{(i - 1) % n}", "End"), (f"e{i}", "Start")),
                    stubs)
        for i in range(n))
    return coeff, joints


def _ring_function(chi):
    """Dodecagon-plus-triangles ring; chi = +-1 selects the flavour.

    Ring vertices w0..w11 carry the dodecagon edges T_i: w(2i)->w(2i+1)
    and L_i: w(2i+1)->w(2i+2); each triangle apex u_i sends spokes
    p_i -> w(2i) and r_i -> w(2i+1).  Kirchhoff at the ring vertices
    reduces to 3 x* + 1 + chi = 0, so chi = +1 needs x* = -2/3 and
    chi = -1 needs x* = 0; apex vertices balance identically.
    """
    coeff = {}
    for i in range(6):
        sg = float(chi) ** i
        coeff[f"p{i}"] = (sg, 0.0)
        coeff[f"r{i}"] = (-sg, 0.0)
        coeff[f"T{i}"] = (-sg, sg)
        coeff[f"L{i}"] = (float(chi) ** (i + 1), -sg)
    joints = []
    for i in range(6):
        joints.append(VertexJoint(
            f"u{i}", ((f"p{i}", "Start"), (f"r{i}", "Start")), 1))
        joints.append(VertexJoint(
            f"w{2 * i}",
            ((f"T{i}", "Start"), (f"L{(i - 1) % 6}", "End"), (f"p{i}", "End")),
            0))
        joints.append(VertexJoint(
            f"w{2 * i + 1}",
            ((f"T{i}", "End"), (f"L{i}", "Start"), (f"r{i}", "End")),
            0))
    return coeff, tuple(joints)


def build_eigenfunction(kind, q, lam, tiling="trH", a=1.0, n_steps=DEFAULT_STEPS):
    """Construct the compactly supported eigenfunction of one kind.

    The ring kinds exist on the truncated hexagonal tiling only; the
    polygon kind runs around the smallest even face of any of the five
    modelled tilings.
    """
    spec = get_tiling(tiling) if isinstance(tiling, str) else tiling
    if kind not in EIGENFUNCTION_KINDS:
        raise ValueError(f"unknown eigenfunction kind {kind!r}")
    if not spec.has_vertex_model:
        raise UnsupportedTilingError(
            f"tiling {spec.name} carries no vertex model")
    _require_even(q, a)
    generator = _GENERATOR_OF_KIND[kind]
    basis = solve_basis(q, a, lam, n_steps)
    res = _generator_residual(generator, basis)
    if res > 1e-10:
        raise ValueError(
            f"lambda = {lam!r} violates generator {generator}: "
            f"residual {res:.3e} exceeds 1e-10")
    if kind == "polygon_dirichlet":
        coeff, joints = _polygon_function(spec, lam, a, basis)
    else:
        if spec.name != "trH":
            raise UnsupportedTilingError(
                f"{kind} lives on the truncated hexagonal tiling only")
        chi = 1 if kind == "triangle_ring_sprime_minus23" else -1
        coeff, joints = _ring_function(chi)
    return EdgewiseFunction(
        tiling=spec.name, kind=kind, lam=float(lam), a=float(a),
        coefficients=coeff, joints=joints, generator=generator)
