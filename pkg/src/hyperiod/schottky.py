"""Homology-relation residuals and the flat-period exclusion test.

In the even-degree model the g+1 pair-cycles sum to a null-homologous
cycle, so their period rows must sum to zero.  If all rows were equal
and the sum vanishes, each row would be (almost) zero, contradicting the
nondegeneracy of the periods: all-equal-modulus ("flat") pair-period
configurations therefore cannot come from a hyperelliptic curve.  An
equal-modulus abelian variety, by contrast, is easy to construct.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConstructionFailedError, LengthMismatchError, ZeroMatrixError
from .periods import riemann_residuals

DEFAULT_FLATNESS_EPSILON = 1e-6
ZERO_RTOL = 1e-12
_SAMPLE_RETRIES = 32


@dataclass(frozen=True)
class RelationResidual:
    coefficients: tuple   # integer weights on C_0..C_g
    residuals: tuple      # per-differential residual of the weighted row sum
    max_relative: float


@dataclass(frozen=True)
class ExclusionVerdict:
    excluded: bool
    flatness: float
    witness: str

    def to_json(self):
        return {
            "excluded": self.excluded,
            "flatness": self.flatness,
            "witness": self.witness,
        }


def _as_matrix(pair_periods):
    m = np.asarray(pair_periods, dtype=complex)
    if m.ndim != 2 or m.size == 0:
        raise ValueError("pair period data must be a nonempty 2-d matrix")
    return m


def custom_relation_residual(pair_periods, coefficients):
    """Residual of the integer combination sum_k c_k * pair_periods[k]."""
    m = _as_matrix(pair_periods)
    coeffs = [int(c) for c in coefficients]
    if len(coeffs) != m.shape[0]:
        raise LengthMismatchError(
            f"{len(coeffs)} coefficients for {m.shape[0]} pair-cycles"
        )
    resid = np.asarray(coeffs, dtype=float) @ m
    col_scale = np.abs(m).max(axis=0)
    col_scale[col_scale == 0.0] = 1.0
    max_rel = float((np.abs(resid) / col_scale).max())
    return RelationResidual(
        coefficients=tuple(coeffs),
        residuals=tuple(complex(v) for v in resid),
        max_relative=max_rel,
    )


def null_relation_residual(pair_periods):
    """Residual of the null homology relation sum_k C_k ~ 0."""
    m = _as_matrix(pair_periods)
    return custom_relation_residual(m, [1] * m.shape[0])


def flatness_measure(pair_periods, zero_rtol=ZERO_RTOL):
    """Max pairwise row distance over max row norm, in the max-modulus norm."""
    m = _as_matrix(pair_periods)
    norms = np.abs(m).max(axis=1)
    scale = float(norms.max())
    if scale <= zero_rtol * max(1.0, float(np.abs(m).max())) or scale == 0.0:
        raise ZeroMatrixError("flatness undefined for (near-)zero period data")
    worst = 0.0
    for i in range(m.shape[0]):
        for k in range(i + 1, m.shape[0]):
            worst = max(worst, float(np.abs(m[i] - m[k]).max()))
    return worst / scale


def hyperelliptic_exclusion(pair_periods, epsilon=DEFAULT_FLATNESS_EPSILON,
                            zero_rtol=ZERO_RTOL):
    """Verdict on whether flat pair-period data is excluded.

    Data whose rows are all equal (within ``epsilon``) and nonzero cannot
    satisfy the null relation except with near-zero rows: equal rows r
    with zero row sum force (g+1) r ~ 0.  Quantitatively, rows within
    eps*R of each other with row sum within eps*R of zero have norm at
    most C*eps*R, C = (2g+1)/(g+1) + 1.
    """
    m = _as_matrix(pair_periods)
    flat = flatness_measure(m, zero_rtol=zero_rtol)
    g = m.shape[0] - 1
    bound_c = (2 * g + 1) / (g + 1) + 1
    excluded = flat <= epsilon
    relation = null_relation_residual(m)
    if excluded:
        witness = (
            f"all {g + 1} pair-period rows agree within {epsilon:.3e} of the "
            f"maximal row norm, yet the null homology relation forces the row "
            f"sum to vanish, so (g+1) times the common row is ~0 and every "
            f"row norm is bounded by C*eps*max-norm with C = {bound_c:.6g}; "
            f"nondegenerate hyperelliptic periods cannot be this flat "
            f"(observed null-relation residual {relation.max_relative:.3e})"
        )
    else:
        witness = (
            f"pair-period rows differ by {flat:.3e} of the maximal row norm "
            f"(> epsilon = {epsilon:.3e}); the flat-configuration exclusion "
            f"does not apply"
        )
    return ExclusionVerdict(excluded=excluded, flatness=flat, witness=witness)


def equal_modulus_abelian_variety(g, seed=0, retries=_SAMPLE_RETRIES):
    """A g x g symmetric matrix, positive-definite imaginary part, all
    entries of equal modulus.

    Construction: unit-modulus entries with random symmetric off-diagonal
    phases and diagonal phase pi/2; the phase spread shrinks with each
    retry until the imaginary part is positive definite.
    """
    if g < 1:
        raise ValueError("genus must be >= 1")
    rng = np.random.default_rng(seed)
    for attempt in range(retries):
        # Gershgorin: diag imag is 1, off-diagonal imag <= sin(theta)
        theta = 0.5 / max(1, g - 1) * 0.9 ** attempt
        phases = rng.uniform(-theta, theta, size=(g, g))
        phases = np.triu(phases, k=1)
        phases = phases + phases.T
        m = np.exp(1j * phases)
        np.fill_diagonal(m, 1j)
        _, min_eig = riemann_residuals(m)
        if min_eig > 0.0:
            return m
    raise ConstructionFailedError(
        f"no positive-definite sample after {retries} retries"
    )
