"""Signal-style analysis of period lists.

Periods (matrix entries) are turned into real lists (modulus, squared
modulus, or argument), sorted in descending order, and profiled for
concavity; the axial spread of the period arguments is measured by the
circular variance of the doubled angles, so that z and -z count as the
same direction.  External period matrices can be ingested from a plain
text format or from the JSON emitted by the periods pipeline.
"""

import cmath
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentOfZeroError, NonSquareError, ParseError, TooShortError
from .periods import riemann_residuals

MODES = ("modulus", "modulus_squared", "argument")
FLATNESS_RTOL = 1e-9


@dataclass(frozen=True)
class PeriodDistribution:
    mode: str
    values: tuple        # weakly decreasing reals
    source: str          # provenance tag

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class ConcavityProfile:
    second_differences: tuple
    fraction_nonnegative: float
    verdict: str         # concave_up | straight | mixed


def to_real_list(periods, mode):
    """Elementwise real reduction of complex periods."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    periods = [complex(z) for z in periods]
    if not periods:
        raise ValueError("empty period list")
    if mode == "modulus":
        return [abs(z) for z in periods]
    if mode == "modulus_squared":
        return [abs(z) ** 2 for z in periods]
    out = []
    for z in periods:
        if z == 0:
            raise ArgumentOfZeroError("argument of zero period is undefined")
        a = cmath.phase(z)  # principal value in (-pi, pi]
        out.append(a if a != -math.pi else math.pi)
    return out


def sorted_distribution(values, source="unknown", mode="modulus"):
    """Descending stable sort of the real period list."""
    vals = [float(v) for v in values]
    if not vals:
        raise ValueError("empty value list")
    idx = sorted(range(len(vals)), key=lambda i: -vals[i])  # stable on ties
    return PeriodDistribution(
        mode=mode, values=tuple(vals[i] for i in idx), source=source
    )


def concavity_profile(dist, flatness_rtol=FLATNESS_RTOL):
    """Second differences of the sorted list and a straight/concave verdict."""
    p = dist.values
    if len(p) < 3:
        raise TooShortError("concavity needs at least 3 values")
    d2 = tuple(p[n + 1] - 2 * p[n] + p[n - 1] for n in range(1, len(p) - 1))
    scale = max(abs(v) for v in p)
    tol = flatness_rtol * (scale if scale > 0 else 1.0)
    nonneg = sum(1 for v in d2 if v >= -tol)
    frac = nonneg / len(d2)
    if max(abs(v) for v in d2) <= tol:
        verdict = "straight"
    elif all(v >= -tol for v in d2):
        verdict = "concave_up"
    else:
        verdict = "mixed"
    return ConcavityProfile(
        second_differences=d2, fraction_nonnegative=frac, verdict=verdict
    )


def argument_spread(periods):
    """Circular variance of doubled period angles, in [0, 1].

    0 means the periods lie on one line through the origin; 1 means the
    doubled angles cancel completely.
    """
    zs = [complex(z) for z in periods]
    if not zs:
        raise ValueError("empty period list")
    if any(z == 0 for z in zs):
        raise ArgumentOfZeroError("argument of zero period is undefined")
    doubled = [cmath.exp(2j * cmath.phase(z)) for z in zs]
    mean = sum(doubled) / len(doubled)
    return 1.0 - abs(mean)


def matrix_entries(matrix, selection="upper_triangle"):
    """Flatten a period matrix into the period list.

    ``upper_triangle`` (default) takes the g(g+1)/2 entries on and above
    the diagonal; ``all`` takes all g^2 entries row-major.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquareError(f"matrix shape {m.shape} is not square")
    if selection == "all":
        return [complex(v) for v in m.ravel()]
    if selection != "upper_triangle":
        raise ValueError("selection must be 'upper_triangle' or 'all'")
    g = m.shape[0]
    return [complex(m[i, j]) for i in range(g) for j in range(i, g)]


def parse_matrix_text(text):
    """Parse the plain matrix format: one row per line, entries 're im'."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        toks = body.split()
        if len(toks) % 2 != 0:
            raise ParseError(
                f"line {lineno}: odd token count {len(toks)} "
                "(entries are 're im' pairs)"
            )
        try:
            nums = [float(t) for t in toks]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        rows.append([complex(nums[2 * i], nums[2 * i + 1])
                     for i in range(len(nums) // 2)])
    if not rows:
        raise ParseError("no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("ragged rows: all rows must have the same width")
    if len(rows) != width:
        raise NonSquareError(f"{len(rows)} rows x {width} columns is not square")
    return np.array(rows, dtype=complex)


def format_matrix_text(matrix, comments=()):
    """Serialize a complex matrix in the ingestible text format."""
    m = np.asarray(matrix, dtype=complex)
    lines = [f"# {c}" for c in comments]
    for row in m:
        lines.append(" ".join(f"{v.real:.17g} {v.imag:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def ingest_matrix(text):
    """Parse an external period matrix (text format or periods JSON).

    Returns (matrix, riemann residuals).
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc}") from None
        if "omega" not in doc:
            raise ParseError("JSON input lacks an 'omega' field")
        try:
            m = np.array(
                [[complex(re, im) for re, im in row] for row in doc["omega"]],
                dtype=complex,
            )
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad omega layout: {exc}") from None
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise NonSquareError(f"omega shape {m.shape} is not square")
    else:
        m = parse_matrix_text(text)
    return m, riemann_residuals(m)


def distribution_csv(dist):
    """The (n, p_n) plot data as CSV text."""
    lines = ["rank,value"]
    for n, v in enumerate(dist.values, start=1):
        lines.append(f"{n},{v:.17g}")
    return "\n".join(lines) + "\n"
