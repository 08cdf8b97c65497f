"""Exception hierarchy.

Every error carries a module-qualified ``code`` so the CLI can emit
machine-readable error objects (e.g. ``hypercurve.DuplicatePoint``).
"""


class HyperiodError(Exception):
    code = "hyperiod.Error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


# --- hypercurve ---

class DuplicatePointError(HyperiodError):
    code = "hypercurve.DuplicatePoint"


class TooFewPointsError(HyperiodError):
    code = "hypercurve.TooFewPoints"


class OddCountError(HyperiodError):
    code = "hypercurve.OddCount"


# --- quadrature ---

class PathThroughBranchPointError(HyperiodError):
    code = "quadrature.PathThroughBranchPoint"


class StepRefinementExceededError(HyperiodError):
    code = "quadrature.StepRefinementExceeded"


class BranchPointOnSegmentError(HyperiodError):
    code = "quadrature.BranchPointOnSegment"


class NonAdjacentEndpointsError(HyperiodError):
    code = "quadrature.NonAdjacentEndpoints"


# --- homology ---

class NoClearPathError(HyperiodError):
    code = "homology.NoClearPath"


class NotAntisymmetricError(HyperiodError):
    code = "homology.NotAntisymmetric"


class NotUnimodularError(HyperiodError):
    code = "homology.NotUnimodular"


# --- periods ---

class SingularAMatrixError(HyperiodError):
    code = "periods.SingularAMatrix"


class RiemannViolationError(HyperiodError):
    code = "periods.RiemannViolation"


# --- distribution ---

class ParseError(HyperiodError):
    code = "distribution.ParseError"


class NonSquareError(HyperiodError):
    code = "distribution.NonSquare"


class ArgumentOfZeroError(HyperiodError):
    code = "distribution.ArgumentOfZero"


class TooShortError(HyperiodError):
    code = "distribution.TooShort"


# --- schottky ---

class ZeroMatrixError(HyperiodError):
    code = "schottky.ZeroMatrix"


class LengthMismatchError(HyperiodError):
    code = "schottky.LengthMismatch"


class ConstructionFailedError(HyperiodError):
    code = "schottky.ConstructionFailed"
