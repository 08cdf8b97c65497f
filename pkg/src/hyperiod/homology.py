"""Canonical homology basis from a spanning path through the branch points.

The branch points are threaded by a spanning path whose odd-position
segments (0-based positions 0, 2, 4, ...) are the g+1 cuts.  Pair-cycles
C_0..C_g encircle one cut each; cross-cycles D_1..D_g run along the
connecting segment between consecutive cuts on one sheet and back on the
other.  Intersection numbers follow the ladder pattern

    C_{k-1} . D_k = +1,    C_k . D_k = -1,

with all other products zero; the 2g x 2g block on (C_1..C_g, D_1..D_g)
is unimodular and reduced to the standard symplectic form by an exact
integer congruence.
"""

from dataclasses import dataclass

import numpy as np

from .errors import NoClearPathError, NotAntisymmetricError, NotUnimodularError

#: a chord must keep foreign points at this fraction of its length
DEFAULT_CLEARANCE = 0.3
_TWO_OPT_ROUNDS = 400


def _seg_distance(w, a, b):
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return abs(w - a)
    t = ((w - a) * np.conj(ab)).real / denom
    t = min(1.0, max(0.0, t))
    return abs(w - (a + t * ab))


@dataclass(frozen=True)
class SpanningPath:
    """An ordering of the branch points whose consecutive chords are clear."""

    order: tuple          # permutation of branch point indices
    segments: tuple       # 2g+1 consecutive (i, j) index pairs

    @property
    def nsegments(self):
        return len(self.segments)


@dataclass(frozen=True)
class Cycle:
    """Closed loop as oriented, sheet-labelled traversals of path segments."""

    traversals: tuple     # (segment position, direction +-1, sheet +-1)
    label: str


@dataclass(frozen=True)
class CycleSet:
    cycles: tuple         # C_0..C_g then D_1..D_g
    intersection: tuple   # (2g+1) x (2g+1) integer rows, same ordering
    genus: int

    @property
    def pair_cycles(self):
        return self.cycles[: self.genus + 1]

    @property
    def cross_cycles(self):
        return self.cycles[self.genus + 1:]


@dataclass(frozen=True)
class SymplecticTransform:
    """Integer T with T M T^t = J on the (C_1..C_g, D_1..D_g) lattice."""

    T: tuple  # 2g x 2g integer rows

    def as_array(self):
        return np.array(self.T, dtype=np.int64)


def _min_normalized_clearance(points, order):
    """Worst chord clearance / chord length over the path; -inf on zero chord."""
    worst = np.inf
    n = len(order)
    for s in range(n - 1):
        a = points[order[s]]
        b = points[order[s + 1]]
        chord = abs(b - a)
        if chord == 0.0:
            return -np.inf
        clear = min(
            _seg_distance(points[k], a, b)
            for k in range(n)
            if k not in (order[s], order[s + 1])
        )
        worst = min(worst, clear / chord)
    return worst


def _angular_order(points):
    """Angular sweep about the centroid, anchored at the farthest point.

    The anchor and the sweep direction are equivariant under affine maps
    b -> a*b + c, so the combinatorial path transports along them.
    """
    pts = np.asarray(points, dtype=complex)
    centroid = pts.mean()
    radii = np.abs(pts - centroid)
    anchor = int(np.lexsort((np.arange(len(pts)), -radii))[0])
    base = np.angle(pts[anchor] - centroid)
    rel = np.mod(np.angle(pts - centroid) - base, 2 * np.pi)
    rel[anchor] = 0.0
    return list(np.lexsort((radii, rel)))


def _nearest_neighbor_order(points, start):
    order = [start]
    remaining = set(range(len(points))) - {start}
    while remaining:
        cur = points[order[-1]]
        nxt = min(remaining, key=lambda k: (abs(points[k] - cur), k))
        order.append(nxt)
        remaining.discard(nxt)
    return order


def _two_opt_improve(points, order, target):
    """Greedy best-improvement 2-opt on the worst normalized clearance."""
    n = len(order)
    best = _min_normalized_clearance(points, order)
    for _ in range(_TWO_OPT_ROUNDS):
        if best >= target:
            break
        cand_order, cand_val = None, best
        for i in range(n - 1):
            for j in range(i + 1, n):
                trial = order[:i] + order[i:j + 1][::-1] + order[j + 1:]
                val = _min_normalized_clearance(points, trial)
                if val > cand_val:
                    cand_order, cand_val = trial, val
        if cand_order is None:
            break
        order, best = cand_order, cand_val
    return order, best


def spanning_path(branch, clearance=DEFAULT_CLEARANCE):
    """Order the branch points so every chord is clear of foreign points.

    Tries the angular sweep plus nearest-neighbor tours from every start,
    each improved by greedy 2-opt reversals on the worst normalized
    clearance.  Raises NoClearPathError (reporting the offending triple)
    if the threshold cannot be met.
    """
    points = branch.as_array()
    n = len(points)
    starts = [_angular_order(points)]
    starts += [_nearest_neighbor_order(points, s) for s in range(n)]
    best_order, best_val = None, -np.inf
    for init in starts:
        order, val = _two_opt_improve(points, init, clearance)
        if val > best_val:
            best_order, best_val = order, val
        if best_val >= clearance:
            break
    if best_val < clearance:
        witness = _worst_triple(points, best_order)
        raise NoClearPathError(
            f"no ordering found with clearance >= {clearance}",
            worst_clearance=float(best_val),
            offending=[int(i) for i in witness] if witness else None,
        )
    order = [int(i) for i in best_order]
    segments = tuple((order[s], order[s + 1]) for s in range(n - 1))
    return SpanningPath(order=tuple(order), segments=segments)


def _worst_triple(points, order):
    worst = (np.inf, None)
    n = len(order)
    for s in range(n - 1):
        a, b = points[order[s]], points[order[s + 1]]
        chord = abs(b - a)
        for k in range(n):
            if k in (order[s], order[s + 1]):
                continue
            d = _seg_distance(points[k], a, b) / chord if chord else -1.0
            if d < worst[0]:
                worst = (d, (order[s], order[s + 1], k))
    return worst[1]


def build_cycles(curve, path):
    """Pair-cycles around the cuts and cross-cycles between adjacent cuts."""
    g = curve.genus
    cycles = []
    for k in range(g + 1):
        seg = 2 * k
        cycles.append(Cycle(
            traversals=((seg, +1, +1), (seg, -1, -1)),
            label=f"pair-{k}",
        ))
    for k in range(1, g + 1):
        seg = 2 * k - 1
        cycles.append(Cycle(
            traversals=((seg, +1, +1), (seg, -1, -1)),
            label=f"cross-{k}",
        ))
    inter = _ladder_intersection(g)
    return CycleSet(cycles=tuple(cycles), intersection=inter, genus=g)


def _ladder_intersection(g):
    n = 2 * g + 1
    m = np.zeros((n, n), dtype=np.int64)
    for k in range(1, g + 1):
        d = g + k           # index of D_k
        m[k - 1, d] = +1    # C_{k-1} . D_k
        m[k, d] = -1        # C_k . D_k
        m[d, k - 1] = -1
        m[d, k] = +1
    return tuple(tuple(int(v) for v in row) for row in m)


def intersection_matrix(cycles):
    """The stored integer antisymmetric pairing of a cycle set."""
    return np.array(cycles.intersection, dtype=np.int64)


def cycle_closure_holds(cycles):
    """Every cycle returns to its starting sheet (sheet-flip parity check)."""
    for cyc in cycles.cycles:
        # each traversal endpoint passes around one branch point: one flip per
        # traversal boundary; the cycle is closed iff the number of sheet
        # changes along the traversal list is even.
        sheets = [t[2] for t in cyc.traversals]
        flips = sum(
            1 for a, b in zip(sheets, sheets[1:] + sheets[:1]) if a != b
        )
        if flips % 2 != 0:
            return False
    return True


def _int_det(mat):
    """Fraction-free Bareiss determinant of an integer matrix."""
    m = [[int(v) for v in row] for row in mat]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1]


def symplectic_reduce(M):
    """Exact integer congruence of a unimodular antisymmetric M to J.

    Returns T with T M T^t = J = [[0, I], [-I, 0]], |det T| = 1.  Works by
    repeatedly extracting a hyperbolic pair (e, f) with <e, f> = 1 via
    integer Euclidean elimination and projecting the complement.
    """
    M = [[int(v) for v in row] for row in M]
    n = len(M)
    if any(len(row) != n for row in M):
        raise NotAntisymmetricError("matrix is not square")
    for i in range(n):
        for j in range(n):
            if M[i][j] != -M[j][i]:
                raise NotAntisymmetricError("matrix is not antisymmetric")
    if n % 2 != 0:
        raise NotUnimodularError("odd-dimensional antisymmetric matrix is singular")
    det = _int_det(M)
    if abs(det) != 1:
        raise NotUnimodularError(f"|det| = {abs(det)} != 1")

    def form(u, v):
        return sum(u[i] * M[i][j] * v[j] for i in range(n) for j in range(n))

    vectors = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    es, fs = [], []
    while vectors:
        e = vectors.pop(0)
        vals = [form(e, v) for v in vectors]
        if all(v == 0 for v in vals):
            raise NotUnimodularError("degenerate vector encountered")
        # Euclidean elimination on the pairing values to isolate gcd = +-1
        while sum(1 for v in vals if v != 0) > 1:
            jmin = min(
                (i for i in range(len(vals)) if vals[i] != 0),
                key=lambda i: abs(vals[i]),
            )
            for i in range(len(vals)):
                if i == jmin or vals[i] == 0:
                    continue
                q = vals[i] // vals[jmin]
                if q != 0:
                    vectors[i] = [a - q * b for a, b in zip(vectors[i], vectors[jmin])]
                    vals[i] -= q * vals[jmin]
        jpiv = next(i for i in range(len(vals)) if vals[i] != 0)
        f = vectors.pop(jpiv)
        piv = vals.pop(jpiv)
        if abs(piv) != 1:
            raise NotUnimodularError("pairing gcd exceeds 1; matrix not unimodular")
        if piv == -1:
            f = [-a for a in f]
        # project the rest into the symplectic complement of (e, f)
        vectors = [
            [
                v[t] + form(f, v) * e[t] - form(e, v) * f[t]
                for t in range(n)
            ]
            for v in vectors
        ]
        es.append(e)
        fs.append(f)
    T = es + fs
    return SymplecticTransform(T=tuple(tuple(int(v) for v in row) for row in T))


def canonical_basis(curve, clearance=DEFAULT_CLEARANCE):
    """Spanning path, cycles, and the integer symplectic change of basis.

    Returns (path, cycle set, transform); the transform acts on the
    generator lattice ordered (C_1..C_g, D_1..D_g), dropping the dependent
    pair-cycle C_0 which is retained in the cycle set for the homology
    relation checks.
    """
    path = spanning_path(curve.branch, clearance=clearance)
    cycles = build_cycles(curve, path)
    g = curve.genus
    full = intersection_matrix(cycles)
    idx = list(range(1, g + 1)) + list(range(g + 1, 2 * g + 1))
    block = full[np.ix_(idx, idx)]
    transform = symplectic_reduce(block.tolist())
    return path, cycles, transform
