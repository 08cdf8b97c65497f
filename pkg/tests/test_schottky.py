import itertools

import numpy as np
import pytest

from hyperiod import distribution as dist_mod
from hyperiod.errors import (
    ConstructionFailedError,
    LengthMismatchError,
    ZeroMatrixError,
)
from hyperiod.periods import raw_periods, riemann_residuals
from hyperiod.schottky import (
    custom_relation_residual,
    equal_modulus_abelian_variety,
    flatness_measure,
    hyperelliptic_exclusion,
    null_relation_residual,
)

from conftest import random_curve, sixth_roots_curve


def _zero_sum_rows(g, rng):
    m = rng.normal(size=(g + 1, g)) + 1j * rng.normal(size=(g + 1, g))
    m[-1] = -m[:-1].sum(axis=0)
    return m


class TestRelations:
    def test_null_relation_on_computed_curve(self):
        table = raw_periods(sixth_roots_curve())
        rel = null_relation_residual(table.pair_periods)
        assert rel.coefficients == (1, 1, 1)
        assert rel.max_relative <= 1e-12

    def test_equal_rows_violate_loudly(self):
        rows = np.tile(np.array([[1 + 1j, 2.0]]), (4, 1))
        rel = null_relation_residual(rows)
        assert rel.max_relative == pytest.approx(4.0)

    def test_zero_sum_rows_give_zero_residual(self):
        m = _zero_sum_rows(3, np.random.default_rng(1))
        rel = null_relation_residual(m)
        assert rel.max_relative < 1e-14

    def test_all_ones_coefficients_equal_null(self):
        m = np.random.default_rng(2).normal(size=(3, 2)).astype(complex)
        assert custom_relation_residual(m, [1, 1, 1]).residuals == \
            null_relation_residual(m).residuals

    def test_zero_coefficients(self):
        m = np.ones((3, 2), dtype=complex)
        rel = custom_relation_residual(m, [0, 0, 0])
        assert rel.max_relative == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            custom_relation_residual(np.ones((3, 2), dtype=complex), [1, 1])

    def test_some_signed_pattern_vanishes_for_genus_three(self):
        # the oriented pair-cycles admit at least one +-1 pattern with a
        # vanishing combination: the all-plus one, by the null relation
        rng = np.random.default_rng(3)
        table = raw_periods(random_curve(3, rng))
        best = min(
            custom_relation_residual(table.pair_periods, signs).max_relative
            for signs in itertools.product((1, -1), repeat=4)
        )
        assert best <= 1e-8

    def test_scaling_invariance(self):
        m = _zero_sum_rows(2, np.random.default_rng(4)) + 0.1
        for lam in (2.0, -0.001, 3j):
            a = null_relation_residual(m).max_relative
            b = null_relation_residual(lam * m).max_relative
            assert abs(a - b) <= 1e-12 * max(a, 1.0)
            assert abs(flatness_measure(m) - flatness_measure(lam * m)) <= 1e-12


class TestFlatness:
    def test_identical_rows(self):
        assert flatness_measure(np.ones((3, 2), dtype=complex)) == 0.0

    def test_antipodal_rows(self):
        m = np.array([[1.0 + 0j, 2.0], [-1.0, -2.0]])
        assert flatness_measure(m) == pytest.approx(2.0)

    def test_zero_matrix(self):
        with pytest.raises(ZeroMatrixError):
            flatness_measure(np.zeros((2, 2), dtype=complex))

    def test_computed_curve_strictly_positive(self):
        table = raw_periods(sixth_roots_curve())
        assert flatness_measure(table.pair_periods) > 1e-3


class TestExclusion:
    def test_flat_rows_excluded_with_witness(self):
        rows = np.tile(np.exp(0.7j) * np.ones((1, 3)), (4, 1))
        verdict = hyperelliptic_exclusion(rows)
        assert verdict.excluded
        assert "null homology relation" in verdict.witness
        doc = verdict.to_json()
        assert doc["excluded"] is True
        assert doc["flatness"] == 0.0

    def test_computed_curves_never_excluded(self):
        rng = np.random.default_rng(5)
        for g in (2, 3):
            table = raw_periods(random_curve(g, rng))
            verdict = hyperelliptic_exclusion(table.pair_periods)
            assert not verdict.excluded
            assert verdict.flatness > 1e-3

    @pytest.mark.parametrize("g", [1, 2, 3, 4, 5, 6])
    def test_quantitative_bound_on_near_flat_data(self, g):
        """Rows within eps of a common row, summing to within eps of zero,
        have norm at most C * eps with C = (2g+1)/(g+1) + 1."""
        rng = np.random.default_rng(10 + g)
        eps = 1e-3
        c_bound = (2 * g + 1) / (g + 1) + 1
        for _ in range(20):
            noise = eps * 0.3 * (rng.normal(size=(g + 1, g))
                                 + 1j * rng.normal(size=(g + 1, g)))
            noise[-1] = -noise[:-1].sum(axis=0)  # keep the zero row sum
            r = noise[0] * 0 + rng.normal() * eps * 0.1
            m = np.tile(r, (g + 1, 1)) + noise
            scale = np.abs(m).max(axis=1).max()
            if scale == 0:
                continue
            # hypotheses of the lemma, measured
            flat = flatness_measure(m)
            rel_sum = np.abs(m.sum(axis=0)).max() / scale
            eps_eff = max(flat, rel_sum)
            norms = np.abs(m).max(axis=1)
            assert np.all(norms <= c_bound * eps_eff * scale + 1e-12)

    def test_zero_matrix_rejected(self):
        with pytest.raises(ZeroMatrixError):
            hyperelliptic_exclusion(np.zeros((3, 2), dtype=complex))


class TestEqualModulusVariety:
    @pytest.mark.parametrize("g", [1, 2, 3, 4, 5, 6])
    def test_postconditions(self, g):
        m = equal_modulus_abelian_variety(g, seed=g)
        assert m.shape == (g, g)
        assert np.max(np.abs(m - m.T)) == 0.0
        mods = np.abs(m)
        assert np.max(mods) - np.min(mods) <= 1e-12
        _, eig = riemann_residuals(m)
        assert eig > 0

    def test_genus_one_is_i(self):
        m = equal_modulus_abelian_variety(1, seed=0)
        assert m[0, 0] == 1j

    def test_deterministic_per_seed(self):
        a = equal_modulus_abelian_variety(4, seed=7)
        b = equal_modulus_abelian_variety(4, seed=7)
        c = equal_modulus_abelian_variety(4, seed=8)
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_bad_genus(self):
        with pytest.raises(ValueError):
            equal_modulus_abelian_variety(0)

    def test_bounded_retries(self):
        with pytest.raises(ConstructionFailedError):
            equal_modulus_abelian_variety(6, seed=0, retries=0)

    def test_feeds_flat_distribution(self):
        m = equal_modulus_abelian_variety(3, seed=1)
        entries = dist_mod.matrix_entries(m)
        reals = dist_mod.to_real_list(entries, "modulus")
        prof = dist_mod.concavity_profile(dist_mod.sorted_distribution(reals))
        assert prof.verdict == "straight"
