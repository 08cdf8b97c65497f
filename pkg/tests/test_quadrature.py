import numpy as np
import pytest

from hyperiod.errors import (
    BranchPointOnSegmentError,
    NonAdjacentEndpointsError,
    PathThroughBranchPointError,
)
from hyperiod.quadrature import analytic_sqrt_continuation, segment_integral

from conftest import quartic_curve, sixth_roots_curve
from oracles import ellip_k

# mpmath (dps=40) reference for the chord 1 -> exp(i pi/3) on y^2 = x^6 - 1,
# principal-root-at-midpoint branch convention
SIXTH_SEG_J1 = complex(-1.0516365789940906959, -0.60716266197189540295)
SIXTH_SEG_J2 = complex(-0.60716266197189540295, -1.0516365789940906959)


@pytest.fixture(scope="module")
def sixth():
    return sixth_roots_curve()


def _loop(center, radius, n=600):
    ts = np.linspace(0.0, 2 * np.pi, n)
    return center + radius * np.exp(1j * ts)


class TestSqrtContinuation:
    def test_branch_squares_back_to_f(self, sixth):
        path = _loop(3.0, 0.5)
        trace = analytic_sqrt_continuation(sixth, path)
        y = np.asarray(trace.y_values)
        f = np.asarray([np.prod(p - sixth.branch.as_array())
                        for p in trace.path_nodes])
        assert np.allclose(y**2, f, rtol=1e-10)

    def test_monodromy_around_one_branch_point(self, sixth):
        trace = analytic_sqrt_continuation(sixth, _loop(1.0, 0.3))
        y = np.asarray(trace.y_values)
        assert abs(y[-1] + y[0]) < 1e-8 * abs(y[0])

    def test_monodromy_around_two_branch_points(self, sixth):
        # a loop enclosing a full cut's worth of points returns to its sheet
        center = np.exp(1j * np.pi / 6)  # between roots at angles 0 and 60 deg
        trace = analytic_sqrt_continuation(sixth, _loop(center, 0.65))
        y = np.asarray(trace.y_values)
        assert abs(y[-1] - y[0]) < 1e-8 * abs(y[0])

    def test_start_sign_negates_trace(self, sixth):
        path = _loop(2.0, 0.4, n=200)
        tp = analytic_sqrt_continuation(sixth, path, start_sign=+1)
        tm = analytic_sqrt_continuation(sixth, path, start_sign=-1)
        assert np.allclose(np.asarray(tp.y_values), -np.asarray(tm.y_values))

    def test_refinement_recovers_coarse_paths(self, sixth):
        # 16 nodes around a branch point is far too coarse without refinement
        coarse = _loop(1.0, 0.2, n=17)
        fine = _loop(1.0, 0.2, n=2000)
        tc = analytic_sqrt_continuation(sixth, coarse)
        tf = analytic_sqrt_continuation(sixth, fine)
        assert len(tc.path_nodes) == 17  # inserted nodes are not reported
        assert abs(tc.y_values[-1] - tf.y_values[-1]) < 1e-8
        assert abs(tc.y_values[-1] + tc.y_values[0]) < 1e-8

    def test_path_through_branch_point_rejected(self, sixth):
        path = np.array([2.0, 1.0, 0.5], dtype=complex)
        with pytest.raises(PathThroughBranchPointError):
            analytic_sqrt_continuation(sixth, path)

    def test_bad_start_sign(self, sixth):
        with pytest.raises(ValueError):
            analytic_sqrt_continuation(sixth, _loop(3.0, 0.1), start_sign=2)


class TestSegmentIntegral:
    def test_quartic_real_cut_matches_agm(self):
        # int over (-1, 1) of dx/y on y^2 = (x^2-1)(x^2-4) is a complete
        # elliptic integral of modulus 1/2 up to the branch convention sign
        curve = quartic_curve(0.5)
        res = segment_integral(curve, (-1.0, 1.0), 1)
        assert abs(res.value) == pytest.approx(ellip_k(0.5), rel=1e-12)
        assert abs(res.value.imag) < 1e-13 * abs(res.value)
        assert res.order == 128
        assert res.error_estimate < 1e-12

    def test_sixth_roots_frozen_reference(self, sixth):
        one = 1.0 + 0.0j
        zeta = np.exp(1j * np.pi / 3)
        r1 = segment_integral(sixth, (one, zeta), 1)
        r2 = segment_integral(sixth, (one, zeta), 2)
        assert abs(r1.value - SIXTH_SEG_J1) < 1e-12
        assert abs(r2.value - SIXTH_SEG_J2) < 1e-12

    def test_reversal_keeps_local_convention_value(self, sixth):
        # the principal-root-at-midpoint convention co-varies with the
        # parametrization, so the reported value is orientation-free
        one = 1.0 + 0.0j
        zeta = np.exp(1j * np.pi / 3)
        fwd = segment_integral(sixth, (one, zeta), 1)
        rev = segment_integral(sixth, (zeta, one), 1)
        assert abs(fwd.value - rev.value) < 1e-12

    def test_spectral_convergence_ladder(self):
        from hyperiod.hypercurve import curve_from_branch_points

        # a foreign point hugging the chord slows convergence enough to
        # expose the spectral error ladder
        curve = curve_from_branch_points(
            [-1.0, 1.0, 0.3 + 0.25j, -2.0, 2.0, 3.0]
        )
        errs = [segment_integral(curve, (-1.0, 1.0), 1, order=n).error_estimate
                for n in (8, 16, 32)]
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 1e-8
        # reported value sits at the doubled order
        v32 = segment_integral(curve, (-1.0, 1.0), 1, order=32)
        v64 = segment_integral(curve, (-1.0, 1.0), 1, order=64)
        assert abs(v32.value - v64.value) <= max(10 * v32.error_estimate, 1e-13)

    def test_error_estimate_brackets_truth(self, sixth):
        one = 1.0 + 0.0j
        zeta = np.exp(1j * np.pi / 3)
        res = segment_integral(sixth, (one, zeta), 1, order=12)
        assert abs(res.value - SIXTH_SEG_J1) < 10 * res.error_estimate + 1e-13

    def test_endpoints_must_be_branch_points(self, sixth):
        with pytest.raises(NonAdjacentEndpointsError):
            segment_integral(sixth, (0.5, 1.0), 1)
        with pytest.raises(NonAdjacentEndpointsError):
            segment_integral(sixth, (1.0, 1.0), 1)

    def test_foreign_point_on_chord_rejected(self):
        from hyperiod.hypercurve import curve_from_branch_points

        curve = curve_from_branch_points([-1.0, 0.0, 1.0, 5j])
        with pytest.raises(BranchPointOnSegmentError):
            segment_integral(curve, (-1.0, 1.0), 1)

    def test_differential_index_range(self, sixth):
        one = 1.0 + 0.0j
        zeta = np.exp(1j * np.pi / 3)
        with pytest.raises(ValueError):
            segment_integral(sixth, (one, zeta), 0)
        with pytest.raises(ValueError):
            segment_integral(sixth, (one, zeta), 3)
