"""Hyperelliptic curve model: branch points, f(x), holomorphic differentials.

A curve y^2 = f(x) = prod(x - b_i) is stored through its 2g+2 distinct
finite branch points.  Odd-length inputs (implicit branch point at
infinity) are first moved to the even-degree model by a Mobius map.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DuplicatePointError, OddCountError, TooFewPointsError

#: inputs closer than this fraction of the point-set diameter are duplicates
SEPARATION_RTOL = 1e-9


def _pairwise_min_distance(points):
    pts = np.asarray(points, dtype=complex)
    diff = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(diff, np.inf)
    return float(diff.min())


def _diameter(points):
    pts = np.asarray(points, dtype=complex)
    return float(np.abs(pts[:, None] - pts[None, :]).max())


@dataclass(frozen=True)
class BranchPointSet:
    """Distinct finite ramification points on the Riemann sphere's finite chart."""

    points: tuple

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise TooFewPointsError(f"need at least 2 points, got {len(pts)}")
        diam = _diameter(pts)
        tol = SEPARATION_RTOL * (diam if diam > 0 else 1.0)
        mind = _pairwise_min_distance(pts)
        if mind <= tol:
            raise DuplicatePointError(
                f"branch points closer than separation tolerance "
                f"({mind:.3e} <= {tol:.3e})",
                min_distance=mind, tolerance=tol,
            )

    def __len__(self):
        return len(self.points)

    @property
    def diameter(self):
        return _diameter(self.points)

    @property
    def separation_tolerance(self):
        return SEPARATION_RTOL * self.diameter

    def as_array(self):
        return np.asarray(self.points, dtype=complex)


@dataclass(frozen=True)
class TransformRecord:
    """Mobius map x -> 1/(x - c) applied to an odd-length input."""

    c: complex

    def to_json(self):
        return {"map": "x -> 1/(x - c)", "c": [self.c.real, self.c.imag]}


@dataclass(frozen=True)
class Differential:
    """Holomorphic differential x^exponent dx / y."""

    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("differential exponent must be nonnegative")


@dataclass(frozen=True)
class HyperellipticCurve:
    branch: BranchPointSet
    genus: int = field(init=False)
    fcoeffs: tuple = field(init=False)

    def __post_init__(self):
        n = len(self.branch)
        object.__setattr__(self, "genus", n // 2 - 1)
        coeffs = np.poly(self.branch.as_array())
        object.__setattr__(self, "fcoeffs", tuple(coeffs))

    @property
    def npoints(self):
        return len(self.branch)


def mobius_normalize(points):
    """Move the implicit branch point at infinity to a finite location.

    Takes 2g+1 finite points, applies x -> 1/(x - c) with c = centroid +
    (1 + max pairwise distance), and appends the image of infinity (zero).
    Returns the even-size point set and the transform record.
    """
    pts = [complex(p) for p in points]
    if len(pts) < 3:
        raise TooFewPointsError(f"need at least 3 points, got {len(pts)}")
    # validate distinctness before mapping
    BranchPointSet(tuple(pts))
    arr = np.asarray(pts, dtype=complex)
    c = complex(arr.mean() + (1.0 + _diameter(arr)))
    mapped = tuple(1.0 / (p - c) for p in pts) + (0.0 + 0.0j,)
    return BranchPointSet(mapped), TransformRecord(c)


def curve_from_branch_points(points):
    """Build the even-degree model curve from a flat list of branch points."""
    pts = [complex(p) for p in points]
    if len(pts) < 4:
        raise TooFewPointsError(f"need at least 4 branch points, got {len(pts)}")
    if len(pts) % 2 != 0:
        raise OddCountError(
            "odd number of branch points: pass through mobius_normalize first"
        )
    return HyperellipticCurve(BranchPointSet(tuple(pts)))


def evaluate_f(curve, x):
    """Evaluate f in product form directly from the branch points."""
    xs = np.atleast_1d(np.asarray(x, dtype=complex))
    vals = _kernels.poly_product(curve.branch.as_array(), xs)
    return complex(vals[0]) if np.isscalar(x) or np.ndim(x) == 0 else vals


def differential_basis(curve):
    """The monomial basis x^(j-1) dx / y, j = 1..g."""
    return [Differential(j) for j in range(curve.genus)]
