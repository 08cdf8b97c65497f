"""Abelian integrals along straight chords between branch points.

The inverse-square-root endpoint singularities are absorbed analytically:
with f(x) = (x - b_a)(x - b_b) h(x) and x(t) = m + r t on [-1, 1],

    dx / y  =  dt / (i sqrt(1 - t^2) sqrt(h(x(t))))

so the Gauss-Chebyshev rule (weight 1/sqrt(1-t^2)) integrates the smooth
factor.  The branch of sqrt(h) is tracked by analytic continuation from
the chord midpoint, principal root at t = 0 for start_sign +1.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import (
    BranchPointOnSegmentError,
    NonAdjacentEndpointsError,
    PathThroughBranchPointError,
    StepRefinementExceededError,
)

DEFAULT_ORDER = 64
#: largest tolerated relative jump of the tracked root per continuation step
DEFAULT_STEP_RTOL = 0.3
MAX_REFINEMENTS = 20


@dataclass(frozen=True)
class SheetTrace:
    """A continuous branch of sqrt(f) along a sampled path."""

    path_nodes: tuple
    y_values: tuple
    start_sign: int


@dataclass(frozen=True)
class SegmentIntegralResult:
    value: complex
    order: int
    error_estimate: float


def _point_segment_distance(w, a, b):
    """Distance from w to the closed segment [a, b] in the plane."""
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(w - a)
    t = ((w - a) * np.conj(ab)).real / denom
    t = min(1.0, max(0.0, t))
    return abs(w - (a + t * ab))


def _tracked_sqrt(roots, nodes, y0, step_rtol, septol):
    """Branch values of sqrt(prod(x - roots)) at ``nodes``, continued from y0.

    Refines the sampling between nodes (up to MAX_REFINEMENTS rounds of
    midpoint insertion) until every continuation step is unambiguous, then
    returns values at the original nodes only.
    """
    nodes = np.asarray(nodes, dtype=complex)
    if len(roots):
        dmin = np.abs(nodes[:, None] - np.asarray(roots)[None, :]).min()
        if dmin <= septol:
            raise PathThroughBranchPointError(
                f"path node within {septol:.3e} of a branch point",
                distance=float(dmin),
            )
    keep = np.ones(len(nodes), dtype=bool)
    pts = nodes
    for _ in range(MAX_REFINEMENTS + 1):
        fvals = _kernels.poly_product(np.asarray(roots, dtype=complex), pts)
        if np.any(np.abs(fvals) == 0.0):
            raise PathThroughBranchPointError("path passes through a branch point")
        y, bad = _kernels.continue_sqrt(fvals, complex(y0), float(step_rtol))
        if not np.any(bad):
            return pts, y, keep
        # insert a midpoint into every flagged step
        new_pts = []
        new_keep = []
        for k in range(len(pts) - 1):
            new_pts.append(pts[k])
            new_keep.append(keep[k])
            if bad[k]:
                new_pts.append(0.5 * (pts[k] + pts[k + 1]))
                new_keep.append(False)
        new_pts.append(pts[-1])
        new_keep.append(keep[-1])
        pts = np.asarray(new_pts, dtype=complex)
        keep = np.asarray(new_keep, dtype=bool)
    raise StepRefinementExceededError(
        f"sqrt continuation did not stabilize after {MAX_REFINEMENTS} refinements"
    )


def analytic_sqrt_continuation(curve, path, start_sign=+1, step_rtol=DEFAULT_STEP_RTOL):
    """Track a continuous branch of sqrt(f) along ``path``.

    The branch at the first node is ``start_sign`` times the principal
    square root of f there.
    """
    if start_sign not in (+1, -1):
        raise ValueError("start_sign must be +1 or -1")
    roots = curve.branch.as_array()
    nodes = np.asarray(path, dtype=complex)
    septol = curve.branch.separation_tolerance
    f0 = complex(np.prod(nodes[0] - roots))
    y0 = start_sign * np.sqrt(f0)
    pts, y, keep = _tracked_sqrt(roots, nodes, y0, step_rtol, septol)
    return SheetTrace(
        path_nodes=tuple(pts[keep]),
        y_values=tuple(y[keep]),
        start_sign=start_sign,
    )


def _chebyshev_nodes(order):
    k = np.arange(1, order + 1)
    return np.cos((2 * k - 1) * np.pi / (2 * order))


def _sqrt_h_on_chord(curve, b_a, b_b, ts, step_rtol):
    """sqrt(h) at chord points x(t) = m + r t, continued from the midpoint.

    h is f with the two chord-end factors removed; the branch is principal
    at t = 0 and tracked outward separately on each half of the chord.
    """
    roots = curve.branch.as_array()
    others = np.array(
        [r for r in roots if r != complex(b_a) and r != complex(b_b)], dtype=complex
    )
    m = 0.5 * (b_a + b_b)
    r = 0.5 * (b_b - b_a)
    septol = curve.branch.separation_tolerance
    h_mid = complex(np.prod(m - others)) if len(others) else 1.0 + 0.0j
    y_mid = np.sqrt(h_mid)

    ts = np.asarray(ts, dtype=float)
    out = np.empty(len(ts), dtype=complex)
    idx_sorted = np.argsort(ts)
    ts_sorted = ts[idx_sorted]
    pos_mask = ts_sorted >= 0
    halves = (
        (ts_sorted[pos_mask], idx_sorted[pos_mask]),          # outward to +1
        (ts_sorted[~pos_mask][::-1], idx_sorted[~pos_mask][::-1]),  # to -1
    )
    for half_ts, half_idx in halves:
        if len(half_ts) == 0:
            continue
        nodes = m + r * np.concatenate(([0.0], half_ts))
        _, y, keep = _tracked_sqrt(others, nodes, y_mid, step_rtol, septol)
        out[half_idx] = y[keep][1:]  # drop the midpoint seed
    return out


def _gauss_chebyshev_value(curve, b_a, b_b, j, order, step_rtol):
    m = 0.5 * (b_a + b_b)
    r = 0.5 * (b_b - b_a)
    ts = _chebyshev_nodes(order)
    xs = m + r * ts
    sqrt_h = _sqrt_h_on_chord(curve, b_a, b_b, ts, step_rtol)
    integrand = xs**j / sqrt_h
    return complex((np.pi / order) * integrand.sum() / 1j)


def segment_integral(curve, endpoints, j, order=DEFAULT_ORDER,
                     step_rtol=DEFAULT_STEP_RTOL):
    """Integral of x^(j-1) dx / y along the chord between two branch points.

    ``j`` is the differential index (1-based); the returned value is on the
    sheet fixed by the principal-root-at-midpoint convention.  The error
    estimate is |value(order) - value(2*order)| and the reported value is
    the doubled-order one.
    """
    b_a, b_b = complex(endpoints[0]), complex(endpoints[1])
    pts = set(curve.branch.points)
    if b_a not in pts or b_b not in pts or b_a == b_b:
        raise NonAdjacentEndpointsError(
            "segment endpoints must be two distinct branch points of the curve"
        )
    if not 1 <= j <= curve.genus:
        raise ValueError(f"differential index {j} outside 1..{curve.genus}")
    septol = curve.branch.separation_tolerance
    for w in curve.branch.points:
        if w in (b_a, b_b):
            continue
        if _point_segment_distance(w, b_a, b_b) <= septol:
            raise BranchPointOnSegmentError(
                "foreign branch point on or near the integration chord",
                point=[w.real, w.imag],
            )
    v1 = _gauss_chebyshev_value(curve, b_a, b_b, j - 1, order, step_rtol)
    v2 = _gauss_chebyshev_value(curve, b_a, b_b, j - 1, 2 * order, step_rtol)
    return SegmentIntegralResult(value=v2, order=2 * order,
                                 error_estimate=abs(v1 - v2))
