"""Compare the compiled propagation kernel against the numpy fallback.

Both backends expose the same ``propagate(qs, lams, h, nsteps)`` entry
point: classical RK4 over the edge, batched over the spectral
parameter.  The compiled extension loops over (lambda, step) in C; the
fallback keeps the step loop in Python and vectorises over the batch,
so its relative cost shrinks as the batch grows.  This script times
both on identical inputs, checks that they agree to near machine
precision, and prints the speedup per batch size.

Run from the repository root after building the extension:

    python benchmarks/bench_kernel.py
    python benchmarks/bench_kernel.py --batches 16 256 4096 --repeats 7
"""

import argparse
import sys
import time

import numpy as np

from qgtile import GrapheneSine
from qgtile import _kernel_py

try:
    from qgtile import _kernel
except ImportError:
    _kernel = None


def edge_samples(a, n_steps):
    """Graphene-type potential on the half-step grid the kernels expect."""
    xs = np.linspace(0.0, a, 2 * n_steps + 1)
    return np.ascontiguousarray(GrapheneSine().sample(xs), dtype=np.float64)


def best_time(fn, repeats):
    """Minimum wall time over several runs (first run warms caches)."""
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batches", type=int, nargs="+", default=[16, 128, 1024],
                    help="lambda batch sizes to time")
    ap.add_argument("--steps", type=int, default=4096,
                    help="RK4 steps per edge (matches the library default)")
    ap.add_argument("--repeats", type=int, default=5,
                    help="timing repeats; the minimum is reported")
    args = ap.parse_args(argv)

    if _kernel is None:
        print("compiled extension qgtile._kernel is not built; "
              "run pip install -e . --no-build-isolation first")
        return 1

    a = 1.0
    h = a / args.steps
    qs = edge_samples(a, args.steps)

    print(f"steps per edge: {args.steps}, repeats: {args.repeats} (min taken)")
    print(f"{'batch':>7} {'python [s]':>12} {'compiled [s]':>13} {'speedup':>8} {'max diff':>10}")
    for m in args.batches:
        lams = np.linspace(0.1, 900.0, m)
        ref = _kernel_py.propagate(qs, lams, h, args.steps)
        out = _kernel.propagate(qs, lams, h, args.steps)
        diff = max(float(np.max(np.abs(r - o))) for r, o in zip(ref, out))
        t_py = best_time(lambda: _kernel_py.propagate(qs, lams, h, args.steps),
                         args.repeats)
        t_c = best_time(lambda: _kernel.propagate(qs, lams, h, args.steps),
                        args.repeats)
        print(f"{m:>7d} {t_py:>12.4f} {t_c:>13.4f} {t_py / t_c:>8.1f} {diff:>10.2e}")
        if diff > 1e-12:
            print("backends disagree beyond 1e-12, aborting", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
