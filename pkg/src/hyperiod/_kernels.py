"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Backend selection (environment variable ``HYPERIOD_BACKEND``):

* ``auto``  (default) -- use numba when importable, else numpy
* ``numba`` -- require numba, raise if unavailable
* ``numpy`` -- force the vectorized numpy implementations

Both backends implement identical semantics; ``benchmarks/bench_kernels.py``
compares their throughput.
"""

import os

import numpy as np

_BACKEND_ENV = "HYPERIOD_BACKEND"


def _requested_backend():
    return os.environ.get(_BACKEND_ENV, "auto").strip().lower()


def _resolve_backend():
    req = _requested_backend()
    if req not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown {_BACKEND_ENV}={req!r}")
    if req == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
        return "numba"
    except ImportError:
        if req == "numba":
            raise
        return "numpy"


BACKEND = _resolve_backend()


# --- numpy implementations -------------------------------------------------

def _poly_product_numpy(roots, xs):
    """Evaluate prod(x - r_i) at each x, in product form."""
    return np.prod(xs[:, None] - roots[None, :], axis=1)


def _continue_sqrt_numpy(fvals, y0, rel_step):
    """Continuous branch of sqrt along a sampled path.

    Given f-values at consecutive path nodes and the branch value ``y0``
    at the first node (with y0**2 == fvals[0]), pick at every node the
    square root closest to the previous one.  Returns the branch values
    and a per-step flag marking steps too coarse to trust: a step is bad
    when the nearer root still differs from the previous value by more
    than ``rel_step`` times its magnitude.
    """
    s = np.sqrt(fvals)
    # parity of sign flips between consecutive principal roots
    flip = np.abs(s[1:] - s[:-1]) > np.abs(s[1:] + s[:-1])
    parity = np.empty(len(s), dtype=np.int64)
    parity[0] = 0
    np.cumsum(flip.astype(np.int64), out=parity[1:])
    signs = np.where(parity % 2 == 0, 1.0, -1.0)
    if abs(s[0] - y0) > abs(s[0] + y0):
        signs = -signs
    y = signs * s
    prev = np.abs(y[:-1])
    step = np.minimum(np.abs(s[1:] - y[:-1]), np.abs(s[1:] + y[:-1]))
    bad = step > rel_step * (prev + np.abs(y[1:]))
    return y, bad


# --- numba implementations -------------------------------------------------

if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def _poly_product_numba(roots, xs):
        n = xs.shape[0]
        m = roots.shape[0]
        out = np.empty(n, dtype=np.complex128)
        for i in range(n):
            acc = 1.0 + 0.0j
            x = xs[i]
            for j in range(m):
                acc *= x - roots[j]
            out[i] = acc
        return out

    @njit(cache=True)
    def _continue_sqrt_numba(fvals, y0, rel_step):
        n = fvals.shape[0]
        y = np.empty(n, dtype=np.complex128)
        bad = np.zeros(n - 1, dtype=np.bool_)
        s0 = np.sqrt(fvals[0])
        if abs(s0 - y0) > abs(s0 + y0):
            s0 = -s0
        y[0] = s0
        for k in range(1, n):
            s = np.sqrt(fvals[k])
            if abs(s - y[k - 1]) > abs(s + y[k - 1]):
                s = -s
            step = abs(s - y[k - 1])
            if step > rel_step * (abs(y[k - 1]) + abs(s)):
                bad[k - 1] = True
            y[k] = s
        return y, bad

    poly_product = _poly_product_numba
    continue_sqrt = _continue_sqrt_numba
else:
    poly_product = _poly_product_numpy
    continue_sqrt = _continue_sqrt_numpy
