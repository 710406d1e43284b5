# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled RK4 propagation of the fundamental system u'' = (q(x) - lam) u.

Both fundamental solutions are advanced together with a classical
fixed-step Runge-Kutta sweep, batched over a vector of spectral
parameters.  The potential is supplied pre-sampled on the half-step
grid x_j = j*h/2, so the inner loop touches no Python objects.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def propagate(double[::1] qs, double[::1] lams, double h, Py_ssize_t nsteps):
    """Integrate from 0 to nsteps*h; qs holds q at the 2*nsteps+1 half steps.

    Returns four float64 arrays (C, S, Cp, Sp) of endpoint values, one
    entry per lambda.
    """
    if qs.shape[0] != 2 * nsteps + 1:
        raise ValueError("potential sample count must be 2*nsteps + 1")
    cdef Py_ssize_t m = lams.shape[0]
    cdef cnp.ndarray[double, ndim=1] C = np.empty(m)
    cdef cnp.ndarray[double, ndim=1] S = np.empty(m)
    cdef cnp.ndarray[double, ndim=1] Cp = np.empty(m)
    cdef cnp.ndarray[double, ndim=1] Sp = np.empty(m)
    cdef double[::1] Cv = C, Sv = S, Cpv = Cp, Spv = Sp
    cdef Py_ssize_t i, j
    cdef double lam, w0, w1, w2, h2, h6
    cdef double uc, vc, us, vs
    cdef double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v
    cdef double l1u, l1v, l2u, l2v, l3u, l3v, l4u, l4v

    h2 = 0.5 * h
    h6 = h / 6.0
    for j in range(m):
        lam = lams[j]
        uc = 1.0
        vc = 0.0
        us = 0.0
        vs = 1.0
        for i in range(nsteps):
            w0 = qs[2 * i] - lam
            w1 = qs[2 * i + 1] - lam
            w2 = qs[2 * i + 2] - lam

            k1u = vc
            k1v = w0 * uc
            k2u = vc + h2 * k1v
            k2v = w1 * (uc + h2 * k1u)
            k3u = vc + h2 * k2v
            k3v = w1 * (uc + h2 * k2u)
            k4u = vc + h * k3v
            k4v = w2 * (uc + h * k3u)

            l1u = vs
            l1v = w0 * us
            l2u = vs + h2 * l1v
            l2v = w1 * (us + h2 * l1u)
            l3u = vs + h2 * l2v
            l3v = w1 * (us + h2 * l2u)
            l4u = vs + h * l3v
            l4v = w2 * (us + h * l3u)

            uc += h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
            vc += h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            us += h6 * (l1u + 2.0 * l2u + 2.0 * l3u + l4u)
            vs += h6 * (l1v + 2.0 * l2v + 2.0 * l3v + l4v)

        Cv[j] = uc
        Cpv[j] = vc
        Sv[j] = us
        Spv[j] = vs

    return C, S, Cp, Sp
