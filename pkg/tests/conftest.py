import numpy as np
import pytest

from hyperiod.hypercurve import curve_from_branch_points


def random_branch_points(n, rng, min_sep=None):
    """n well-separated points in the unit disk.

    Rejection-samples until every pairwise distance exceeds ``min_sep``
    (default 1.4 / sqrt(n)); such clouds reliably admit a clear spanning
    path at the default clearance threshold.
    """
    if min_sep is None:
        min_sep = 1.4 / np.sqrt(n)
    while True:
        pts = []
        for _ in range(10 * n):
            r = np.sqrt(rng.uniform())
            a = rng.uniform(0.0, 2.0 * np.pi)
            z = r * np.exp(1j * a)
            if all(abs(z - p) > min_sep for p in pts):
                pts.append(z)
                if len(pts) == n:
                    break
        if len(pts) == n:
            return pts


def random_curve(genus, rng):
    return curve_from_branch_points(random_branch_points(2 * genus + 2, rng))


def quartic_curve(k):
    """Branch points {+-1, +-1/k} for 0 < k < 1."""
    return curve_from_branch_points([-1.0 / k, -1.0, 1.0, 1.0 / k])


def sixth_roots_curve():
    return curve_from_branch_points(
        [np.exp(1j * np.pi * m / 3) for m in range(6)]
    )


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger any one-time kernel compilation outside timed assertions."""
    from hyperiod import _kernels

    xs = np.linspace(2.0, 3.0, 8).astype(complex)
    roots = np.array([0.0 + 0.0j, 1.0 + 0.0j])
    fvals = _kernels.poly_product(roots, xs)
    _kernels.continue_sqrt(fvals, complex(np.sqrt(fvals[0])), 0.3)
