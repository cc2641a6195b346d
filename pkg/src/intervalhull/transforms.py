"""Affine images, homotheties and the homothet-difference decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphaNotBelowOne,
    GammaIsOne,
    NotAffinelyIndependent,
    NotInAffineHull,
    NotIrreducible,
    UnboundedHull,
)
from .feasibility import family_bounded
from .model import (
    DEFAULT_TOL,
    Instance,
    Interval,
    IntervalFamily,
    PointSet,
    Tolerances,
    coordinate_scale,
    is_affinely_independent,
)
from .reduction import is_irreducible


@dataclass(frozen=True, eq=False)
class Homothety:
    """``x -> center + ratio * x``; ratio 0 stands for the empty homothet."""

    center: np.ndarray
    ratio: float

    def __post_init__(self):
        c = np.array(self.center, dtype=float).reshape(-1)
        c.flags.writeable = False
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "ratio", float(self.ratio))

    @property
    def is_empty(self) -> bool:
        return self.ratio == 0.0

    def __call__(self, x) -> np.ndarray:
        return self.center + self.ratio * np.asarray(x, dtype=float)

    def to_json(self) -> dict:
        if self.is_empty:
            return {"center": self.center.tolist(), "ratio": 0.0, "empty": True}
        return {"center": self.center.tolist(), "ratio": self.ratio}


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Outer homothet of conv(base) minus the union of the inner ones."""

    outer: Homothety
    inner: tuple[Homothety, ...]
    base: PointSet

    def to_json(self) -> dict:
        return {"outer": self.outer.to_json(), "inner": [h.to_json() for h in self.inner]}


def apply_affine(inst: Instance, matrix, offset=None, tol: Tolerances = DEFAULT_TOL) -> Instance:
    """Instance whose hull is the image of ``inst``'s hull under ``x -> A x + t``.

    Points with the same image merge and their intervals add.
    """
    if not family_bounded(inst.family):
        raise UnboundedHull("affine images are only defined here for bounded hulls")
    A = np.atleast_2d(np.asarray(matrix, dtype=float))
    if A.shape[1] != inst.d:
        raise ValueError(f"matrix has {A.shape[1]} columns, points have dimension {inst.d}")
    t = np.zeros(A.shape[0]) if offset is None else np.asarray(offset, dtype=float).reshape(-1)
    Y = inst.coords @ A.T + t
    eps = tol.eps_dedup * coordinate_scale(Y)
    reps: list[np.ndarray] = []
    sums: list[Interval] = []
    labels: list[str] = []
    for j, y in enumerate(Y):
        for r, q in enumerate(reps):
            if np.max(np.abs(q - y)) <= eps:
                sums[r] = sums[r] + inst.family[j]
                if inst.labels is not None:
                    labels[r] += "+" + inst.labels[j]
                break
        else:
            reps.append(y)
            sums.append(inst.family[j])
            if inst.labels is not None:
                labels.append(inst.labels[j])
    return Instance(PointSet(np.array(reps), tol), IntervalFamily(tuple(sums)),
                    labels if inst.labels is not None else None)


def solve_coefficients(points: PointSet, v, delta: float, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Some ``nu`` with ``sum nu_j x_j = v`` and ``sum nu_j = 1 - delta``.

    Least squares on the stacked system; a residual above eps_geom (scaled)
    means ``v`` cannot serve as a centre, i.e. the homothety leaves aff S.
    """
    if delta == 0:
        raise ValueError("delta must be nonzero")
    X = points.coords
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size != points.d:
        raise ValueError(f"centre has dimension {v.size}, points have {points.d}")
    M = np.vstack([X.T, np.ones(points.m)])
    rhs = np.concatenate([v, [1.0 - delta]])
    nu = np.linalg.lstsq(M, rhs, rcond=None)[0]
    residual = float(np.max(np.abs(M @ nu - rhs)))
    scale = max(coordinate_scale(X), coordinate_scale(v), abs(delta))
    if residual > tol.eps_geom * scale:
        raise NotInAffineHull(f"residual {residual:.3g}: homothety does not preserve aff S")
    return nu


def homothety_pullback(inst: Instance, v, delta: float, tol: Tolerances = DEFAULT_TOL) -> Instance:
    """Instance whose hull is ``v + delta * hull(inst)``."""
    nu = solve_coefficients(inst.points, v, delta, tol)
    fam = IntervalFamily(tuple(iv.affine(float(n), delta) for iv, n in zip(inst.family, nu)))
    return inst.with_family(fam)


def homothet_of_conv(points: PointSet, c) -> Instance:
    """Instance whose hull is ``v + (1 - gamma) conv S`` with ``v = sum c_j x_j``."""
    c = np.asarray(c, dtype=float).reshape(-1)
    if c.size != points.m:
        raise ValueError("need one coefficient per point")
    gamma = math.fsum(c)
    if gamma == 1.0:
        raise GammaIsOne("sum of coefficients is 1: the homothety ratio would be 0")
    unit = Interval(0.0, 1.0)
    fam = IntervalFamily(tuple(unit.affine(float(cj), 1.0 - gamma) for cj in c))
    return Instance(points, fam)


def decompose(inst: Instance, tol: Tolerances = DEFAULT_TOL) -> Decomposition:
    """Outer/inner homothets of conv S whose closed difference is the hull."""
    fam = inst.family
    if not is_affinely_independent(inst.points, tol):
        raise NotAffinelyIndependent("decomposition needs affinely independent points")
    if not fam.is_finite or not is_irreducible(fam, tol):
        raise NotIrreducible("decomposition needs an irreducible family")
    alpha = fam.alpha
    if not alpha < 1.0:
        raise AlphaNotBelowOne(f"alpha = {alpha} is not below 1")
    X = inst.coords
    v = fam.lo @ X
    delta = 1.0 - alpha
    inner = []
    for j, d in enumerate(fam.widths):
        ratio = max(delta - float(d), 0.0)
        inner.append(Homothety(v + d * X[j], ratio))
    return Decomposition(Homothety(v, delta), tuple(inner), inst.points)


def outer_instance(dec: Decomposition) -> Instance:
    """Instance realising the outer homothet of the decomposition."""
    return _homothet_instance(dec.base, dec.outer)


def inner_instance(dec: Decomposition, k: int) -> Instance | None:
    """Instance realising the ``k``-th inner homothet, or None if it is empty."""
    h = dec.inner[k]
    if h.is_empty:
        return None
    return _homothet_instance(dec.base, h)


def _homothet_instance(points: PointSet, h: Homothety) -> Instance:
    c = solve_coefficients(points, h.center, h.ratio)
    return homothet_of_conv(points, c)
