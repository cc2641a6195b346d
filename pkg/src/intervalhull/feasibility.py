"""Emptiness and boundedness of interval hulls, witnesses, bounded families."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyHull, UnboundedHull
from .model import Instance, Interval, IntervalFamily


@dataclass(frozen=True)
class FeasibilityReport:
    nonempty: bool
    bounded: bool
    witness: tuple[float, ...] | None = None
    unbounded_direction: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "nonempty": self.nonempty,
            "bounded": self.bounded,
            "witness": list(self.witness) if self.witness is not None else None,
            "unbounded_direction": list(self.unbounded_direction) if self.unbounded_direction else None,
        }


def is_nonempty(fam: IntervalFamily) -> bool:
    """alpha <= 1 <= beta (closed intervals make the other conditions vacuous)."""
    return fam.alpha <= 1.0 <= fam.beta


def _finite_subfamily(fam: IntervalFamily) -> IntervalFamily:
    """Shrink infinite ends to finite ones while keeping alpha <= 1 <= beta."""
    finite = [abs(x) for iv in fam for x in (iv.lo, iv.hi) if math.isfinite(x)]
    big = 1.0 + len(fam) + math.fsum(finite)
    out = []
    for iv in fam:
        lo = iv.lo if math.isfinite(iv.lo) else min(iv.hi, 0.0) - big
        hi = iv.hi if math.isfinite(iv.hi) else max(iv.lo, 0.0) + big
        out.append(Interval(lo, hi))
    return IntervalFamily(tuple(out))


def witness(fam: IntervalFamily) -> tuple[float, ...]:
    """Coefficients xi_j in I_j with sum 1.

    Uses the convex combination of the lower and upper endpoint vectors
    that hits sum 1; infinite ends are first replaced by finite ones.
    """
    if not is_nonempty(fam):
        raise EmptyHull(f"alpha={fam.alpha}, beta={fam.beta}: no coefficients sum to 1")
    if not fam.is_finite:
        fam = bound_family(fam) if family_bounded(fam) else _finite_subfamily(fam)
    alpha, beta = fam.alpha, fam.beta
    if alpha == beta:
        return tuple(float(a) for a in fam.lo)
    s, t = (beta - 1.0) / (beta - alpha), (1.0 - alpha) / (beta - alpha)
    xi = s * fam.lo + t * fam.hi
    # guard the last ulp: stay inside the closed intervals
    xi = np.clip(xi, fam.lo, fam.hi)
    return tuple(float(v) for v in xi)


def family_bounded(fam: IntervalFamily) -> bool:
    """Whether the hull is bounded (the family alone decides, given distinct points)."""
    below = all(math.isfinite(iv.lo) for iv in fam)
    above = all(math.isfinite(iv.hi) for iv in fam)
    n_unbounded = sum(not iv.is_bounded for iv in fam)
    return below or above or n_unbounded <= 1


def boundedness(inst: Instance) -> bool:
    return family_bounded(inst.family)


def unbounded_direction(fam: IntervalFamily) -> tuple[int, int] | None:
    """Indices (j, k), j != k, with I_j unbounded below and I_k unbounded above.

    ``x_k - x_j`` is then a recession direction of the hull. Returns None for
    bounded families.
    """
    if family_bounded(fam):
        return None
    below = [j for j, iv in enumerate(fam) if iv.lo == -math.inf]
    above = [k for k, iv in enumerate(fam) if iv.hi == math.inf]
    for j in below:
        for k in above:
            if j != k:
                return (j, k)
    raise AssertionError("unbounded family without a pair of opposite rays")


def bound_family(fam: IntervalFamily) -> IntervalFamily:
    """An all-finite family with the same hull."""
    if not is_nonempty(fam):
        raise EmptyHull(f"alpha={fam.alpha}, beta={fam.beta}")
    if fam.is_finite:
        return fam
    alpha, beta = fam.alpha, fam.beta
    if math.isfinite(alpha):
        return IntervalFamily(tuple(Interval(iv.lo, min(iv.hi, iv.lo + (1.0 - alpha))) for iv in fam))
    if math.isfinite(beta):
        return IntervalFamily(tuple(Interval(max(iv.lo, iv.hi - (beta - 1.0)), iv.hi) for iv in fam))
    unbounded = [j for j, iv in enumerate(fam) if not iv.is_bounded]
    if len(unbounded) != 1:
        raise UnboundedHull("two intervals are unbounded in opposite directions")
    k = unbounded[0]
    rest = [iv for j, iv in enumerate(fam) if j != k]
    sum_lo = math.fsum(iv.lo for iv in rest)
    sum_hi = math.fsum(iv.hi for iv in rest)
    out = list(fam)
    out[k] = Interval(1.0 - sum_hi, 1.0 - sum_lo)
    return IntervalFamily(tuple(out))


def check(inst: Instance) -> FeasibilityReport:
    fam = inst.family
    nonempty = is_nonempty(fam)
    bounded = family_bounded(fam)
    return FeasibilityReport(
        nonempty=nonempty,
        bounded=bounded,
        witness=witness(fam) if nonempty else None,
        unbounded_direction=None if bounded else unbounded_direction(fam),
    )
