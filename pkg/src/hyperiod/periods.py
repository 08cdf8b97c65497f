"""Period tables, normalization to the Siegel matrix, Riemann diagnostics.

Each segment integral is computed with a local branch convention
(principal sqrt at its own midpoint).  To assemble cycle periods the
local conventions must be stitched to one global branch of sqrt(f) on
the complement of the cuts: we continue sqrt(f) along a polyline offset
to the left of the spanning path (rounding each branch point with a
clockwise arc) and record, per segment, the sign relating the global
branch to the local one.  With that stitching,

    pair period  P_k = 2 * sigma_{2k}   * (segment integral of cut k)
    cross period Q_k = 2 * sigma_{2k-1} * (segment integral of rung k)

and the sum of all pair periods vanishes (the loop around every cut
contracts through infinity), which is the null homology relation.
"""

from dataclasses import dataclass

import numpy as np

from . import homology, quadrature
from .errors import RiemannViolationError, SingularAMatrixError

DEFAULT_SYMMETRY_TOL = 1e-6
MAX_CONDITION = 1e12


@dataclass(frozen=True)
class PeriodTable:
    A: np.ndarray             # A[i][j] = period of omega_i over alpha_j
    B: np.ndarray             # B[i][j] = period of omega_i over beta_j
    pair_periods: np.ndarray  # pair_periods[k][i] = period of omega_i over C_k
    error_bound: float
    transform: homology.SymplecticTransform
    path: homology.SpanningPath
    cycles: homology.CycleSet

    @property
    def genus(self):
        return self.A.shape[0]


@dataclass(frozen=True)
class PeriodMatrix:
    omega: np.ndarray
    symmetry_residual: float
    min_imag_eigenvalue: float

    @property
    def genus(self):
        return self.omega.shape[0]


def riemann_residuals(omega):
    """Symmetry residual and smallest eigenvalue of the imaginary part."""
    om = np.asarray(omega, dtype=complex)
    if om.ndim != 2 or om.shape[0] != om.shape[1]:
        raise ValueError("omega must be a square matrix")
    scale = float(np.abs(om).max())
    if scale == 0.0:
        sym = 0.0
    else:
        sym = float(np.abs(om - om.T).max() / scale)
    imag = 0.5 * (om.imag + om.imag.T)
    min_eig = float(np.linalg.eigvalsh(imag).min())
    return sym, min_eig


def _offset_walk_points(points, path):
    """Sample points of the left-offset polyline along the spanning path.

    For each segment the walk runs parallel to the chord at a small
    leftward offset; at each interior branch point it rounds the vertex
    with a clockwise arc.  Returns the node list and the index of each
    segment's offset midpoint within it.
    """
    order = path.order
    chords = [points[b] - points[a] for a, b in path.segments]
    units = [c / abs(c) for c in chords]
    clear = []
    for s, (a, b) in enumerate(path.segments):
        foreign = [
            points[k] for k in range(len(points)) if k not in (a, b)
        ]
        clear.append(min(
            homology._seg_distance(w, points[a], points[b]) for w in foreign
        ))
    deltas = [min(0.05 * clear[s], 0.05 * abs(chords[s]))
              for s in range(len(chords))]

    nodes = []
    mid_index = {}
    for s, (a, b) in enumerate(path.segments):
        pa, pb = points[a], points[b]
        u = units[s]
        off = 1j * u * deltas[s]
        mid = 0.5 * (pa + pb) + off
        if s == 0:
            nodes.append(pa + 0.1 * chords[s] + off)
        mid_index[s] = len(nodes)
        nodes.append(mid)
        if s == len(path.segments) - 1:
            break
        # approach the shared vertex, then round it clockwise
        w = points[order[s + 1]]
        u_next = units[s + 1]
        rho = 0.2 * min(abs(chords[s]), abs(chords[s + 1]))
        q_in = w - rho * u + off
        q_out = w + rho * u_next + 1j * u_next * deltas[s + 1]
        nodes.append(q_in)
        a_in = np.angle(q_in - w)
        a_out = np.angle(q_out - w)
        sweep = (a_in - a_out) % (2 * np.pi)  # clockwise angular distance
        r_in, r_out = abs(q_in - w), abs(q_out - w)
        nsteps = max(3, int(np.ceil(sweep / 0.2)))
        for t in np.linspace(0.0, 1.0, nsteps + 1)[1:]:
            ang = a_in - t * sweep
            rad = r_in * (r_out / r_in) ** t
            nodes.append(w + rad * np.exp(1j * ang))
    return np.asarray(nodes, dtype=complex), mid_index


def _segment_signs(curve, path, step_rtol):
    """Sign of (global branch of sqrt f) / (local segment branch) per segment.

    The global branch is continued along the left-offset walk; at each
    segment's offset midpoint it is compared against the local convention
    i * r * sqrt(h(midpoint)) used by the segment integrals.
    """
    points = curve.branch.as_array()
    nodes, mid_index = _offset_walk_points(points, path)
    trace = quadrature.analytic_sqrt_continuation(
        curve, nodes, start_sign=+1, step_rtol=step_rtol
    )
    yvals = np.asarray(trace.y_values)
    signs = []
    for s, (a, b) in enumerate(path.segments):
        pa, pb = points[a], points[b]
        m = 0.5 * (pa + pb)
        r = 0.5 * (pb - pa)
        others = np.array(
            [points[k] for k in range(len(points)) if k not in (a, b)],
            dtype=complex,
        )
        h_mid = complex(np.prod(m - others)) if len(others) else 1.0 + 0.0j
        y_loc = 1j * r * np.sqrt(h_mid)
        y_glob = yvals[mid_index[s]]
        signs.append(+1 if abs(y_glob - y_loc) <= abs(y_glob + y_loc) else -1)
    return signs


def raw_periods(curve, order=quadrature.DEFAULT_ORDER,
                step_rtol=quadrature.DEFAULT_STEP_RTOL,
                clearance=homology.DEFAULT_CLEARANCE):
    """Periods of every basis cycle and every pair-cycle.

    Computes one segment integral per (segment, differential) pair, stitches
    the local branch conventions with the global offset walk, doubles them
    into cycle periods, and maps through the integer symplectic transform.
    """
    path, cycles, transform = homology.canonical_basis(curve, clearance=clearance)
    g = curve.genus
    points = curve.branch.as_array()
    nseg = path.nsegments

    vals = np.empty((nseg, g), dtype=complex)
    errs = np.empty((nseg, g), dtype=float)
    for s, (a, b) in enumerate(path.segments):
        for j in range(1, g + 1):
            res = quadrature.segment_integral(
                curve, (points[a], points[b]), j, order=order,
                step_rtol=step_rtol,
            )
            vals[s, j - 1] = res.value
            errs[s, j - 1] = res.error_estimate

    sigma = _segment_signs(curve, path, step_rtol)

    # generator periods: rows C_1..C_g then D_1..D_g, columns differentials
    pair = np.empty((g + 1, g), dtype=complex)
    pair_err = np.empty((g + 1, g), dtype=float)
    for k in range(g + 1):
        pair[k] = 2.0 * sigma[2 * k] * vals[2 * k]
        pair_err[k] = 2.0 * errs[2 * k]
    cross = np.empty((g, g), dtype=complex)
    cross_err = np.empty((g, g), dtype=float)
    for k in range(1, g + 1):
        cross[k - 1] = 2.0 * sigma[2 * k - 1] * vals[2 * k - 1]
        cross_err[k - 1] = 2.0 * errs[2 * k - 1]

    gen = np.vstack([pair[1:], cross])          # (2g, g)
    gen_err = np.vstack([pair_err[1:], cross_err])
    T = transform.as_array().astype(float)
    basis = T @ gen                              # rows: alpha_1..g, beta_1..g
    basis_err = np.abs(T) @ gen_err

    A = basis[:g].T                              # A[i][j] = omega_i over alpha_j
    B = basis[g:].T
    # floor at the roundoff scale of the periods themselves
    floor = 1e-15 * float(np.abs(gen).max())
    error_bound = float(max(basis_err.max(), pair_err.max(), floor))

    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularAMatrixError(
            f"normalization matrix condition {cond:.3e} exceeds {MAX_CONDITION:.0e}",
            condition=float(cond),
        )
    return PeriodTable(
        A=A, B=B, pair_periods=pair, error_bound=error_bound,
        transform=transform, path=path, cycles=cycles,
    )


def normalized_period_matrix(table, symmetry_tol=DEFAULT_SYMMETRY_TOL):
    """Siegel matrix Omega = A^{-1} B with residual diagnostics."""
    cond = np.linalg.cond(table.A)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularAMatrixError(
            f"normalization matrix condition {cond:.3e} exceeds {MAX_CONDITION:.0e}",
            condition=float(cond),
        )
    omega = np.linalg.solve(table.A, table.B)
    sym, min_eig = riemann_residuals(omega)
    if sym > symmetry_tol or min_eig <= 0.0:
        raise RiemannViolationError(
            "computed matrix violates the Riemann conditions "
            f"(symmetry {sym:.3e}, min imag eigenvalue {min_eig:.3e}); "
            "this indicates an internal failure, not a property of the curve",
            symmetry_residual=sym, min_imag_eigenvalue=min_eig,
        )
    return PeriodMatrix(omega=omega, symmetry_residual=sym,
                        min_imag_eigenvalue=min_eig)
