"""Dispersion relations of the eleven tilings in the variable x = S'(a).

For an even potential the characteristic determinant of every tiling
factors as

    det = sigma * mu(theta) * S^i * S'^j * (2S'+1)^k * (3S'+2)^l * p(x, theta)

with x = S'(a, rho) and p a polynomial in x whose coefficients are
trigonometric polynomials of the quasimomentum.  This module holds the
eleven p forms with exact integer coefficients, the prefactor powers
(i, j, k, l), the trigonometric invariants used throughout, and a
bracketing/bisection root finder over the spectral window that powers
both single-point queries and full Brillouin-zone scans.
"""

import math
from dataclasses import dataclass

import numpy as np

from .tilings import get_tiling

__all__ = [
    "TrigInvariants",
    "trig_invariants",
    "identity_residuals",
    "DispersionForm",
    "dispersion_form",
    "evaluate_dispersion",
    "dispersion_coefficients",
    "prefactor_value",
    "mu_value",
    "dispersion_root_set",
    "roots_for_coefficient_stack",
    "THETA_ZERO_INT_COEFFS",
    "DEFAULT_WINDOW",
    "DEFAULT_STEP",
]

DEFAULT_WINDOW = (-1.5, 1.5)
DEFAULT_STEP = 1e-3
_EPS = np.finfo(np.float64).eps


@dataclass(frozen=True)
class TrigInvariants:
    """The trigonometric quantities appearing in the dispersion forms.

    omega  = cos(t1/2) cos(t2/2) cos((t1-t2)/2)
    omega1 = cos t1 cos t2 cos(t1+t2)
    omega2 = cos(t1/2) cos(t2/2) cos((t1+t2)/2)
    omega3 = cos((2t1+t2)/2) cos((t2-t1)/2) cos((t1+2t2)/2)

    and the tilde variants obtained by t2 -> -t2 (note omega2~ = omega).
    xi = cos((t1+t2)/2), eta = cos((t1-t2)/2) are the half-angle
    variables used in the inequality proofs; cos1, cos2 are the plain
    cosines.
    """

    omega: np.ndarray
    omega1: np.ndarray
    omega2: np.ndarray
    omega3: np.ndarray
    omega1_tilde: np.ndarray
    omega2_tilde: np.ndarray
    omega3_tilde: np.ndarray
    xi: np.ndarray
    eta: np.ndarray
    cos1: np.ndarray
    cos2: np.ndarray


def trig_invariants(theta1, theta2):
    t1 = np.asarray(theta1, dtype=np.float64)
    t2 = np.asarray(theta2, dtype=np.float64)
    h1, h2 = t1 / 2.0, t2 / 2.0
    omega = np.cos(h1) * np.cos(h2) * np.cos(h1 - h2)
    omega1 = np.cos(t1) * np.cos(t2) * np.cos(t1 + t2)
    omega2 = np.cos(h1) * np.cos(h2) * np.cos(h1 + h2)
    omega3 = np.cos(t1 + h2) * np.cos(h2 - h1) * np.cos(h1 + t2)
    omega1t = np.cos(t1) * np.cos(t2) * np.cos(t1 - t2)
    omega3t = np.cos(t1 - h2) * np.cos(h1 + h2) * np.cos(h1 - t2)
    return TrigInvariants(
        omega=omega, omega1=omega1, omega2=omega2, omega3=omega3,
        omega1_tilde=omega1t, omega2_tilde=omega, omega3_tilde=omega3t,
        xi=np.cos(h1 + h2), eta=np.cos(h1 - h2),
        cos1=np.cos(t1), cos2=np.cos(t2),
    )


def identity_residuals(theta1, theta2):
    """Residuals of the two identities tying omega and omega3 to cosines.

    Returns (r_modulus, r_cosine_sum, r_omega3):
      r_modulus:    |(1+8*omega) - |1+e^{i t1}+e^{i t2}|^2|
      r_cosine_sum: |(1+8*omega) - (3+2(cos t1+cos t2+cos(t1-t2)))|
      r_omega3:     |cos(t1+2t2)+cos(2t1+t2)+cos(t2-t1) - (4*omega3-1)|
    """
    t1 = np.asarray(theta1, dtype=np.float64)
    t2 = np.asarray(theta2, dtype=np.float64)
    inv = trig_invariants(t1, t2)
    lhs = 1.0 + 8.0 * inv.omega
    mod2 = np.abs(1.0 + np.exp(1j * t1) + np.exp(1j * t2)) ** 2
    csum = 3.0 + 2.0 * (np.cos(t1) + np.cos(t2) + np.cos(t1 - t2))
    r1 = np.abs(lhs - mod2)
    r2 = np.abs(lhs - csum)
    lhs3 = np.cos(t1 + 2 * t2) + np.cos(2 * t1 + t2) + np.cos(t2 - t1)
    r3 = np.abs(lhs3 - (4.0 * inv.omega3 - 1.0))
    return r1, r2, r3


def _const(value, like):
    return np.full_like(like, value)


def _coeffs_T(t1, t2):
    om = trig_invariants(t1, t2).omega
    return np.stack([1.0 - 4.0 * om, _const(3.0, om)])


def _coeffs_S(t1, t2):
    c = np.cos(np.asarray(t1) / 2.0) * np.cos(np.asarray(t2) / 2.0)
    return np.stack([-(c * c), _const(0.0, c), _const(1.0, c)])


def _coeffs_H(t1, t2):
    om = trig_invariants(t1, t2).omega
    return np.stack([-1.0 - 8.0 * om, _const(0.0, om), _const(9.0, om)])


def _coeffs_TH(t1, t2):
    om = trig_invariants(t1, t2).omega
    return np.stack([-om, _const(-1.0, om), _const(2.0, om)])


def _coeffs_ET(t1, t2):
    om = trig_invariants(t1, t2).omega
    c = np.cos(np.asarray(t1, dtype=np.float64))
    c = np.broadcast_to(c, om.shape).astype(np.float64, copy=True)
    return np.stack([4.0 * c * c - 1.0 - 8.0 * om, -20.0 * c, _const(25.0, om)])


def _coeffs_trS(t1, t2):
    c = np.cos(np.asarray(t1, dtype=np.float64))
    d = np.cos(np.asarray(t2, dtype=np.float64))
    c, d = np.broadcast_arrays(c, d)
    z = np.zeros_like(c, dtype=np.float64)
    return np.stack([1.0 - 4.0 * c * d, -12.0 * (c + d), z - 54.0, z, z + 81.0])


def _coeffs_trH(t1, t2):
    om = trig_invariants(t1, t2).omega
    return np.stack([
        8.0 - 8.0 * om, _const(18.0, om), _const(-45.0, om),
        _const(-54.0, om), _const(81.0, om),
    ])


def _coeffs_SS(t1, t2):
    c = np.cos(np.asarray(t1, dtype=np.float64))
    d = np.cos(np.asarray(t2, dtype=np.float64))
    c, d = np.broadcast_arrays(c, d)
    z = np.zeros_like(c, dtype=np.float64)
    return np.stack([
        1.0 - 4.0 * (c + d + 4.0 * c * d - c * c - d * d),
        -40.0 - 40.0 * (c + d + c * d),
        -250.0 - 100.0 * (c + d),
        z,
        z + 625.0,
    ])


def _sum_triplets(t1, t2, minus=False):
    """(S1, S2, S3) cosine sums; minus=True uses the t2 -> -t2 variants."""
    t1 = np.asarray(t1, dtype=np.float64)
    t2 = np.asarray(t2, dtype=np.float64)
    s = -1.0 if minus else 1.0
    w = t1 + s * t2
    S1 = np.cos(t1) + np.cos(t2) + np.cos(w)
    S2 = np.cos(t1 + w) + np.cos(s * t2 + w) + np.cos(s * t2 - t1)
    S3 = np.cos(2 * t1) + np.cos(2 * t2) + np.cos(2 * w)
    return np.broadcast_arrays(S1, S2, S3)


def _coeffs_RTH(t1, t2):
    S1, S2, S3 = _sum_triplets(t1, t2)
    z = np.zeros_like(S1)
    return np.stack([
        -3.0 + 2.0 * S1 + S3 - 2.0 * S2,
        z,
        192.0 - 64.0 * S1,
        -128.0 - 128.0 * S1,
        z - 1536.0,
        z,
        z + 2048.0,
    ])


def _coeffs_ST(t1, t2):
    # The cosine families pair theta1 with -theta2 here, exactly as in
    # the Laurent-monomial form of the 30x30 determinant; a naive
    # reading of the condensed display flips that sign.
    S1, S2, S3 = _sum_triplets(t1, t2, minus=True)
    z = np.zeros_like(S1)
    return np.stack([
        -11.0 + 2.0 * S3 - 8.0 * S2 + 8.0 * S1,
        120.0 - 20.0 * S2 - 60.0 * S1,
        675.0 - 600.0 * S1,
        -2000.0 - 1000.0 * S1,
        z - 9375.0,
        z,
        z + 15625.0,
    ])


def _coeffs_trTH(t1, t2):
    S1, S2, S3 = _sum_triplets(t1, t2, minus=True)
    z = np.zeros_like(S1)
    return np.stack([
        15.0 + 2.0 * S3 + 4.0 * S2 + 16.0 * S1,
        z,
        -918.0 - 72.0 * S2 - 540.0 * S1,
        z,
        21627.0 + 4860.0 * S1,
        z,
        -204120.0 - 8748.0 * S1,
        z,
        z + 728271.0,
        z,
        z - 1062882.0,
        z,
        z + 531441.0,
    ])


@dataclass(frozen=True)
class DispersionForm:
    """One tiling's dispersion polynomial and determinant prefactor."""

    tiling: str
    degree: int
    s_power: int
    sp_power: int
    two_sp_plus_one_power: int
    three_sp_plus_two_power: int

    def coefficients(self, theta1, theta2):
        """Coefficient stack, ascending powers, shape (degree+1, ...)."""
        return _COEFF_FN[self.tiling](theta1, theta2)

    def __call__(self, x, theta1, theta2):
        return evaluate_dispersion(self.tiling, x, theta1, theta2)


_COEFF_FN = {
    "T": _coeffs_T, "ST": _coeffs_ST, "ET": _coeffs_ET, "SS": _coeffs_SS,
    "TH": _coeffs_TH, "RTH": _coeffs_RTH, "trH": _coeffs_trH, "S": _coeffs_S,
    "trTH": _coeffs_trTH, "trS": _coeffs_trS, "H": _coeffs_H,
}

_FORMS = {
    "T": DispersionForm("T", 1, 2, 0, 0, 0),
    "ST": DispersionForm("ST", 6, 9, 0, 0, 0),
    "ET": DispersionForm("ET", 2, 3, 0, 0, 0),
    "SS": DispersionForm("SS", 4, 6, 0, 0, 0),
    "TH": DispersionForm("TH", 2, 3, 0, 1, 0),
    "RTH": DispersionForm("RTH", 6, 6, 0, 0, 0),
    "trH": DispersionForm("trH", 4, 3, 1, 0, 1),
    "S": DispersionForm("S", 2, 2, 0, 0, 0),
    "trTH": DispersionForm("trTH", 12, 6, 0, 0, 0),
    "trS": DispersionForm("trS", 4, 2, 0, 0, 0),
    "H": DispersionForm("H", 2, 2, 0, 0, 0),
}

# Exact integer coefficients of p(., 0, 0), ascending powers.  Kept as a
# literal table so that p(1, 0, 0) = 0 can be checked in pure integer
# arithmetic; a test pins each entry against coefficients(0, 0).
THETA_ZERO_INT_COEFFS = {
    "T": [-3, 3],
    "ST": [-5, -120, -1125, -5000, -9375, 0, 15625],
    "ET": [-5, -20, 25],
    "SS": [-15, -160, -450, 0, 625],
    "TH": [-1, -1, 2],
    "RTH": [0, 0, 0, -512, -1536, 0, 2048],
    "trH": [0, 18, -45, -54, 81],
    "S": [-1, 0, 1],
    "trTH": [81, 0, -2754, 0, 36207, 0, -230364, 0, 728271, 0, -1062882, 0, 531441],
    "trS": [-3, -24, -54, 0, 81],
    "H": [-9, 0, 9],
}


def dispersion_form(tiling):
    name = get_tiling(tiling).name
    return _FORMS[name]


def dispersion_coefficients(tiling, theta1, theta2):
    return dispersion_form(tiling).coefficients(theta1, theta2)


def _horner(coef, x):
    """Evaluate sum coef[k] x^k; coef shape (deg+1, m), x broadcastable."""
    acc = np.multiply(coef[-1], np.ones_like(x))
    for k in range(coef.shape[0] - 2, -1, -1):
        acc = acc * x + coef[k]
    return acc


def evaluate_dispersion(tiling, x, theta1, theta2):
    """p(x, theta); broadcasts over x and theta simultaneously."""
    coef = dispersion_coefficients(tiling, theta1, theta2)
    x = np.asarray(x, dtype=np.float64)
    res = _horner(coef, x)
    if res.ndim == 0:
        return float(res)
    return res


def prefactor_value(tiling, S, Sp):
    """S^i S'^j (2S'+1)^k (3S'+2)^l for the tiling's recorded powers."""
    f = dispersion_form(tiling)
    return (S ** f.s_power * Sp ** f.sp_power
            * (2.0 * Sp + 1.0) ** f.two_sp_plus_one_power
            * (3.0 * Sp + 2.0) ** f.three_sp_plus_two_power)


_MU_BUILDERS = {
    "trH": lambda a, b: 3.0 * np.exp(1j * (b - a)),
    "SS": lambda a, b: np.exp(3j * (a + b)),
    "RTH": lambda a, b: np.exp(2j * (a + b)),
    "ST": lambda a, b: np.exp(6j * (b - a)),
    "trTH": lambda a, b: -np.exp(2j * (a + b)),
}


def mu_value(tiling, theta1, theta2):
    """Unimodular (up to a constant) determinant factor of the 5 full models."""
    name = get_tiling(tiling).name
    try:
        fn = _MU_BUILDERS[name]
    except KeyError:
        from .tilings import UnsupportedTilingError

        raise UnsupportedTilingError(
            f"tiling {name} has no assembled determinant, so no mu factor"
        ) from None
    return fn(theta1, theta2)


def _column_scale(coef, window):
    xm = max(abs(window[0]), abs(window[1]), 1.0)
    scale = np.zeros(coef.shape[1])
    pw = 1.0
    for k in range(coef.shape[0]):
        scale += np.abs(coef[k]) * pw
        pw *= xm
    return scale


def _newton_polish(coef_cols, x, steps=3):
    """A few guarded Newton steps on p per point; coef_cols (deg+1, n)."""
    deg = coef_cols.shape[0] - 1
    dcoef = coef_cols[1:] * np.arange(1, deg + 1)[:, None]
    for _ in range(steps):
        fx = _horner(coef_cols, x)
        dfx = _horner(dcoef, x)
        safe = np.abs(dfx) > 1e-12
        delta = np.where(safe, fx / np.where(safe, dfx, 1.0), 0.0)
        delta = np.clip(delta, -1e-3, 1e-3)
        x = x - delta
    return x


def _two_sum(a, b):
    s = a + b
    z = s - a
    return s, (a - (s - z)) + (b - z)


def _two_prod(a, b):
    p = a * b
    f = 134217729.0 * a  # Dekker split at 2^27 + 1
    ah = f - (f - a)
    al = a - ah
    f = 134217729.0 * b
    bh = f - (f - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _comp_horner(coef_cols, x):
    """Compensated Horner evaluation of p(x).

    Carries the rounding error of every product and sum in a parallel
    accumulator, which beats plain Horner by a factor of about eps in
    the ill-conditioned regime.  Needed to pin roots of multiplicity
    three: the trigonal-lattice polynomial has coefficient sums around
    1e3, so plain evaluation noise of ~1e-13 stops bisection a few 1e-6
    away from such a root, while the compensated value stays faithful
    down to ~1e-28.
    """
    s = np.multiply(coef_cols[-1], np.ones_like(x))
    c = np.zeros_like(x)
    for k in range(coef_cols.shape[0] - 2, -1, -1):
        p, pe = _two_prod(s, x)
        s, se = _two_sum(p, coef_cols[k])
        c = c * x + (pe + se)
    return s + c


def _final_polish(coef_cols, x, steps=24):
    """Newton with compensated residuals, tolerant of multiple roots.

    For a root of multiplicity m plain Newton contracts by (m-1)/m per
    step, so two dozen steps push even a triple root from the plain
    noise floor down to ~1e-10 while leaving simple roots untouched.
    Points with a vanishing derivative (the even-multiplicity
    candidates, already polished on p') are left as they are.
    """
    deg = coef_cols.shape[0] - 1
    dcoef = coef_cols[1:] * np.arange(1, deg + 1)[:, None]
    for _ in range(steps):
        fx = _comp_horner(coef_cols, x)
        dfx = _horner(dcoef, x)
        safe = np.abs(dfx) > 1e-14
        delta = np.where(safe, fx / np.where(safe, dfx, 1.0), 0.0)
        delta = np.clip(delta, -1e-4, 1e-4)
        x = x - delta
        if not np.any(np.abs(delta) > 1e-15):
            break
    return x


def roots_for_coefficient_stack(coef, window=DEFAULT_WINDOW, step=DEFAULT_STEP,
                                dedupe=1e-9, bisect_tol=1e-13):
    """All real roots of each coefficient column inside the window.

    coef has shape (deg+1, m): m independent polynomials.  Returns
    (roots, cols): flat arrays, cols[i] telling which polynomial
    roots[i] belongs to.  Handles three cases:

    * plain sign changes (bracketing + bisection + Newton polish),
    * values that vanish on the sample grid within evaluation noise
      (exact roots falling on grid points),
    * even-multiplicity roots, detected as local extrema of p whose
      polished critical value lies below the evaluation-noise bound.
      The noise bound keeps this sound: a genuine near-miss of order
      1e-4 is rejected, a true double root evaluates to ~1e-12.
    """
    lo, hi = window
    nx = int(round((hi - lo) / step)) + 1
    xs = np.linspace(lo, hi, nx)
    deg = coef.shape[0] - 1
    m = coef.shape[1]
    vals = _horner(coef, xs[:, None])  # (nx, m)

    colscale = _column_scale(coef, window)
    noise = np.maximum(colscale * (deg + 1) * _EPS * 64.0, 1e-300)

    sgn = np.sign(vals)
    # Two-stage grid-zero test.  The column-scale bound is taken at the
    # window edge, which for steep columns overstates the noise near the
    # origin by orders of magnitude; candidates passing the cheap bound
    # are re-tested against a bound accumulated at their own abscissa.
    cand_i, cand_j = np.nonzero(np.abs(vals) <= noise[None, :])
    tiny = np.zeros(vals.shape, dtype=bool)
    if cand_i.size:
        local = np.zeros(cand_i.size)
        pw = np.ones(cand_i.size)
        ax = np.abs(xs[cand_i])
        acoef = np.abs(coef[:, cand_j])
        for k in range(deg + 1):
            local += acoef[k] * pw
            pw *= ax
        local = np.maximum(local, 1.0) * (deg + 1) * _EPS * 64.0
        keep = np.abs(vals[cand_i, cand_j]) <= local
        tiny[cand_i[keep], cand_j[keep]] = True
    sgn[tiny] = 0.0

    root_xs = []
    root_cols = []

    # grid points that are roots to within noise
    zi, zj = np.nonzero(tiny)
    if zi.size:
        keep = np.ones(zi.size, dtype=bool)
        for t in range(1, zi.size):
            if zj[t] == zj[t - 1] and zi[t] == zi[t - 1] + 1:
                keep[t] = False  # collapse runs of consecutive tiny samples
        zi, zj = zi[keep], zj[keep]
        cc = coef[:, zj]
        xz = _final_polish(cc, xs[zi].astype(np.float64))
        inside = (xz >= lo - step) & (xz <= hi + step)
        root_xs.append(xz[inside])
        root_cols.append(zj[inside])

    # sign-change brackets
    prod = sgn[:-1, :] * sgn[1:, :]
    bi, bj = np.nonzero(prod < 0)
    if bi.size:
        lo_b = xs[bi].astype(np.float64)
        hi_b = xs[bi + 1].astype(np.float64)
        cc = coef[:, bj]
        flo = _horner(cc, lo_b)
        nit = int(math.ceil(math.log2(step / bisect_tol)))
        for _ in range(nit):
            mid = 0.5 * (lo_b + hi_b)
            fm = _horner(cc, mid)
            left = flo * fm <= 0.0
            hi_b = np.where(left, mid, hi_b)
            lo_b = np.where(left, lo_b, mid)
            flo = np.where(left, flo, fm)
        xb = _final_polish(cc, 0.5 * (lo_b + hi_b))
        root_xs.append(xb)
        root_cols.append(bj)

    # even-multiplicity candidates: interior extrema of p with small value
    v0, v1, v2 = vals[:-2, :], vals[1:-1, :], vals[2:, :]
    is_min = (np.abs(v1) < np.abs(v0)) & (np.abs(v1) <= np.abs(v2))
    small = np.abs(v1) <= 1e-5 * np.maximum(colscale[None, :], 1.0)
    same_side = sgn[:-2, :] * sgn[2:, :] > 0
    ci, cj = np.nonzero(is_min & small & same_side & ~tiny[1:-1, :])
    if ci.size:
        cc = coef[:, cj]
        dcoef = cc[1:] * np.arange(1, deg + 1)[:, None]
        d2coef = dcoef[1:] * np.arange(1, deg)[:, None] if deg >= 2 else None
        xc = xs[ci + 1].astype(np.float64)
        if d2coef is not None:
            for _ in range(30):
                g = _horner(dcoef, xc)
                h = _horner(d2coef, xc)
                safe = np.abs(h) > 1e-10
                delta = np.where(safe, g / np.where(safe, h, 1.0), 0.0)
                delta = np.clip(delta, -2 * step, 2 * step)
                xc = xc - delta
        pc = np.abs(_horner(cc, xc))
        acc_noise = np.zeros_like(pc)
        pw = np.ones_like(xc)
        for k in range(deg + 1):
            acc_noise += np.abs(cc[k]) * pw
            pw *= np.abs(xc)
        acc_noise = (deg + 1) * _EPS * 8.0 * np.maximum(acc_noise, 1.0)
        ok = (pc <= acc_noise) & (np.abs(xc - xs[ci + 1]) <= 4 * step)
        ok &= (xc >= lo) & (xc <= hi)
        root_xs.append(xc[ok])
        root_cols.append(cj[ok])

    if not root_xs:
        return np.empty(0), np.empty(0, dtype=np.intp)
    roots = np.concatenate(root_xs)
    cols = np.concatenate(root_cols)
    roots = np.clip(roots, lo, hi)

    # per-column dedupe
    order = np.lexsort((roots, cols))
    roots, cols = roots[order], cols[order]
    if roots.size:
        keep = np.ones(roots.size, dtype=bool)
        same = (cols[1:] == cols[:-1]) & (np.abs(roots[1:] - roots[:-1]) < dedupe)
        keep[1:][same] = False
        roots, cols = roots[keep], cols[keep]
    return roots, cols


def dispersion_root_set(tiling, theta, window=DEFAULT_WINDOW, step=DEFAULT_STEP,
                        dedupe=1e-9):
    """Sorted real roots of p(., theta) in the window for one theta."""
    t1, t2 = float(theta[0]), float(theta[1])
    coef = dispersion_coefficients(tiling, t1, t2).reshape(-1, 1)
    roots, _ = roots_for_coefficient_stack(coef, window, step, dedupe)
    return np.sort(roots)
