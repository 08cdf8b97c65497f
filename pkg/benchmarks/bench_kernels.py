"""Throughput comparison of the numba and numpy kernel backends.

Run directly:

    python benchmarks/bench_kernels.py

The active backend is chosen by HYPERIOD_BACKEND; this script times both
implementations in-process (importing the numba variants only when
available) on synthetic workloads shaped like the real quadrature calls,
plus one end-to-end period computation.
"""

import time

import numpy as np

from hyperiod import _kernels
from hyperiod.hypercurve import curve_from_branch_points
from hyperiod.periods import normalized_period_matrix, raw_periods


def _time(fn, *args, repeat=5):
    fn(*args)  # warmup (JIT compile, cache touch)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _workload(n_nodes, n_roots, seed=0):
    rng = np.random.default_rng(seed)
    roots = rng.normal(size=n_roots) + 1j * rng.normal(size=n_roots)
    ts = np.linspace(0.0, 2 * np.pi, n_nodes)
    path = (3.0 + 0.2 * rng.normal(size=n_nodes)) * np.exp(1j * ts)
    return roots, path.astype(complex)


def bench_kernels():
    impls = {"numpy": (_kernels._poly_product_numpy,
                       _kernels._continue_sqrt_numpy)}
    try:
        from numba import njit  # noqa: F401
        import hyperiod._kernels as k

        if k.BACKEND == "numba":
            impls["numba"] = (k._poly_product_numba, k._continue_sqrt_numba)
        else:
            print("numba installed but not active "
                  "(HYPERIOD_BACKEND forces numpy); re-run without the flag "
                  "to benchmark it")
    except ImportError:
        print("numba not installed; benchmarking numpy only")

    print(f"{'workload':<38}" + "".join(f"{name:>12}" for name in impls))
    for n_nodes, n_roots in ((256, 6), (4096, 12), (65536, 12)):
        roots, path = _workload(n_nodes, n_roots)
        row = []
        for poly_product, continue_sqrt in impls.values():
            fvals = poly_product(roots, path)
            y0 = complex(np.sqrt(fvals[0]))
            t_poly = _time(poly_product, roots, path)
            t_sqrt = _time(continue_sqrt, fvals, y0, 0.3)
            row.append(t_poly + t_sqrt)
        label = f"poly+sqrt nodes={n_nodes} roots={n_roots}"
        print(f"{label:<38}" + "".join(f"{t * 1e3:>10.3f}ms" for t in row))


def bench_end_to_end():
    rng = np.random.default_rng(42)
    # well-separated near-real points: always admits a clear spanning path
    pts = [float(k) + 0.2j * rng.normal() for k in range(10)]
    curve = curve_from_branch_points(pts)

    def run():
        normalized_period_matrix(raw_periods(curve))

    t = _time(run, repeat=3)
    print(f"\nend-to-end genus-4 period matrix ({_kernels.BACKEND} backend): "
          f"{t:.3f}s")


if __name__ == "__main__":
    print(f"active backend: {_kernels.BACKEND}\n")
    bench_kernels()
    bench_end_to_end()
