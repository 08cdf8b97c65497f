"""Period matrices of hyperelliptic curves from their branch points.

Pipeline: branch points -> spanning path and canonical homology basis ->
segment integrals -> normalized Siegel period matrix -> distribution and
homology-relation analysis.
"""

from .hypercurve import (
    BranchPointSet,
    Differential,
    HyperellipticCurve,
    TransformRecord,
    curve_from_branch_points,
    differential_basis,
    evaluate_f,
    mobius_normalize,
)
from .periods import (
    PeriodMatrix,
    PeriodTable,
    normalized_period_matrix,
    raw_periods,
    riemann_residuals,
)

__all__ = [
    "BranchPointSet",
    "Differential",
    "HyperellipticCurve",
    "TransformRecord",
    "curve_from_branch_points",
    "differential_basis",
    "evaluate_f",
    "mobius_normalize",
    "PeriodMatrix",
    "PeriodTable",
    "normalized_period_matrix",
    "raw_periods",
    "riemann_residuals",
]

__version__ = "0.1.0"
