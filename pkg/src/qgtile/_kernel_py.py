"""Pure numpy fallback for the compiled propagation kernel.

Mirrors :mod:`qgtile._kernel` exactly: classical RK4 with fixed step on
the system u'' = (q(x) - lam) u, batched over lambda.  The step loop
runs in Python but every arithmetic operation is a vector operation
over the lambda batch, so throughput stays acceptable when the
compiled extension is unavailable.
"""

import numpy as np

__all__ = ["propagate", "propagate_dense"]


def propagate(qs, lams, h, nsteps):
    """Endpoint values (C, S, Cp, Sp) of both fundamental solutions.

    Parameters
    ----------
    qs : ndarray, shape (2*nsteps + 1,)
        Potential sampled on the half-step grid x_j = j*h/2.
    lams : ndarray, shape (m,)
        Spectral parameters, integrated simultaneously.
    h : float
        Step size.
    nsteps : int
        Number of RK4 steps; nsteps*h is the edge length.
    """
    qs = np.asarray(qs, dtype=np.float64)
    lams = np.asarray(lams, dtype=np.float64)
    if qs.shape[0] != 2 * nsteps + 1:
        raise ValueError("potential sample count must be 2*nsteps + 1")

    uc = np.ones_like(lams)
    vc = np.zeros_like(lams)
    us = np.zeros_like(lams)
    vs = np.ones_like(lams)
    h2 = 0.5 * h
    h6 = h / 6.0
    for i in range(nsteps):
        w0 = qs[2 * i] - lams
        w1 = qs[2 * i + 1] - lams
        w2 = qs[2 * i + 2] - lams

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

        uc = uc + h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        vc = vc + h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        us = us + h6 * (l1u + 2.0 * l2u + 2.0 * l3u + l4u)
        vs = vs + h6 * (l1v + 2.0 * l2v + 2.0 * l3v + l4v)

    return uc, us, vc, vs


def propagate_dense(qs, lams, h, nsteps, stride):
    """Like :func:`propagate` but records the state every `stride` steps.

    Returns (C, S, Cp, Sp), each of shape (nsteps//stride + 1, m).  Used
    for tabulating eigenfunction components; not performance critical,
    so only the Python backend provides it.
    """
    qs = np.asarray(qs, dtype=np.float64)
    lams = np.asarray(lams, dtype=np.float64)
    if qs.shape[0] != 2 * nsteps + 1:
        raise ValueError("potential sample count must be 2*nsteps + 1")
    if nsteps % stride != 0:
        raise ValueError("stride must divide nsteps")

    nrec = nsteps // stride
    m = lams.shape[0]
    out = [np.empty((nrec + 1, m)) for _ in range(4)]
    uc = np.ones_like(lams)
    vc = np.zeros_like(lams)
    us = np.zeros_like(lams)
    vs = np.ones_like(lams)
    for arr, state in zip(out, (uc, us, vc, vs)):
        arr[0] = state
    h2 = 0.5 * h
    h6 = h / 6.0
    for i in range(nsteps):
        w0 = qs[2 * i] - lams
        w1 = qs[2 * i + 1] - lams
        w2 = qs[2 * i + 2] - lams

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

        uc = uc + h6 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        vc = vc + h6 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        us = us + h6 * (l1u + 2.0 * l2u + 2.0 * l3u + l4u)
        vs = vs + h6 * (l1v + 2.0 * l2v + 2.0 * l3v + l4v)
        if (i + 1) % stride == 0:
            k = (i + 1) // stride
            for arr, state in zip(out, (uc, us, vc, vs)):
                arr[k] = state

    return tuple(out)
