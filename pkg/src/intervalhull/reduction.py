"""Normal forms of interval families: hat family, irreducibility, wideness."""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import EmptyHull, InstanceError, UnboundedHull
from .feasibility import bound_family, is_nonempty
from .model import DEFAULT_TOL, Instance, Interval, IntervalFamily, Tolerances, is_affinely_independent


class MinimalityStatus(enum.Enum):
    NOT_MINIMAL = "NotMinimal"
    MINIMAL = "Minimal"
    IRREDUCIBLE_BUT_UNDECIDED = "IrreducibleButUndecided"


def _require_finite(fam: IntervalFamily) -> None:
    if not fam.is_finite:
        raise UnboundedHull("family has infinite endpoints; apply bound_family first")


def hat(fam: IntervalFamily, tol: Tolerances = DEFAULT_TOL) -> IntervalFamily:
    """Tighten every interval to the exact range its coefficient can take.

    ``lo_j -> max(lo_j, hi_j - (beta - 1))`` and
    ``hi_j -> min(hi_j, lo_j + (1 - alpha))``. An endpoint only moves when
    it moves by more than ``eps_feas`` (relative to the family scale); this
    makes the operation exactly idempotent in floating point.
    """
    _require_finite(fam)
    if not is_nonempty(fam):
        raise EmptyHull(f"alpha={fam.alpha}, beta={fam.beta}")
    alpha, beta = fam.alpha, fam.beta
    snap = tol.eps_feas * fam.scale()
    lo, hi = fam.lo.copy(), fam.hi.copy()
    raised = hi - (beta - 1.0) > lo + snap
    lowered = lo + (1.0 - alpha) < hi - snap
    lo[raised] = (fam.hi - (beta - 1.0))[raised]
    hi[lowered] = (fam.lo + (1.0 - alpha))[lowered]
    crossed = lo > hi
    # both ends moved inward and crossed by rounding only
    lo[crossed] = hi[crossed] = 0.5 * (lo[crossed] + hi[crossed])
    _restore_sums(lo, raised, hi, lowered)
    return IntervalFamily(tuple(Interval(float(a), float(b)) for a, b in zip(lo, hi)))


def _restore_sums(lo, raised, hi, lowered) -> None:
    """Undo rounding that pushed ``sum(lo)`` above 1 or ``sum(hi)`` below 1.

    Only endpoints that the tightening moved (by more than the snap) are
    nudged, by a few ulps, so they stay inside the original intervals.
    """
    for _ in range(64):
        excess = math.fsum(lo) - 1.0
        if excess <= 0.0 or not raised.any():
            break
        j = int(np.flatnonzero(raised)[np.argmax(lo[raised])])
        lo[j] = min(lo[j] - excess, np.nextafter(lo[j], -np.inf))
    for _ in range(64):
        deficit = 1.0 - math.fsum(hi)
        if deficit <= 0.0 or not lowered.any():
            break
        j = int(np.flatnonzero(lowered)[np.argmin(hi[lowered])])
        hi[j] = max(hi[j] + deficit, np.nextafter(hi[j], np.inf))


def is_irreducible(fam: IntervalFamily, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Every width is at most ``min(1 - alpha, beta - 1)`` (with slack eps_feas)."""
    _require_finite(fam)
    limit = min(1.0 - fam.alpha, fam.beta - 1.0) + tol.eps_feas * fam.scale()
    return bool(all(w <= limit for w in fam.widths))


def is_wide(fam: IntervalFamily, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Every pair of distinct widths sums to more than ``1 - alpha``.

    The comparison is strict by a margin of eps_feas, so borderline families
    are never reported as wide.
    """
    _require_finite(fam)
    if len(fam) < 2:
        return False
    w = sorted(fam.widths)
    # the smallest pair sum decides
    return bool(w[0] + w[1] > (1.0 - fam.alpha) + tol.eps_feas * fam.scale())


def minimality_status(inst: Instance, tol: Tolerances = DEFAULT_TOL) -> MinimalityStatus:
    fam = inst.family
    if not fam.is_finite:
        fam = bound_family(fam)
    if not is_nonempty(fam):
        raise EmptyHull(f"alpha={fam.alpha}, beta={fam.beta}")
    if not is_irreducible(fam, tol):
        return MinimalityStatus.NOT_MINIMAL
    if is_affinely_independent(inst.points, tol):
        return MinimalityStatus.MINIMAL
    return MinimalityStatus.IRREDUCIBLE_BUT_UNDECIDED


def coefficient_range(fam: IntervalFamily, k: int, tol: Tolerances = DEFAULT_TOL) -> Interval:
    """Exact range of the ``k``-th coefficient (0-based) over all feasible ones."""
    if not 0 <= k < len(fam):
        raise InstanceError(f"index {k} out of range for a family of {len(fam)} intervals")
    if not fam.is_finite:
        fam = bound_family(fam)
    return hat(fam, tol)[k]

