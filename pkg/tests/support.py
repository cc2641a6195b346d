"""Random instance generators and comparison helpers shared by the test modules."""

from __future__ import annotations

import numpy as np

from intervalhull.feasibility import is_nonempty
from intervalhull.model import Instance, IntervalFamily, PointSet


def random_family(rng: np.random.Generator, m: int, spread: float = 1.0) -> IntervalFamily:
    """Random finite nonempty family; roughly a quarter of the intervals are singletons."""
    while True:
        a = rng.uniform(-spread, spread, m)
        w = rng.exponential(0.6 * spread, m)
        w[rng.random(m) < 0.25] = 0.0
        fam = IntervalFamily.of(np.c_[a, a + w])
        if is_nonempty(fam):
            return fam


def random_points(rng: np.random.Generator, m: int, d: int) -> np.ndarray:
    X = rng.normal(size=(m, d))
    if rng.random() < 0.2 and m > 2:
        # one point on the segment of two others: affinely dependent input
        t = rng.uniform(0.2, 0.8)
        X[-1] = t * X[0] + (1 - t) * X[1]
    return X


def random_instance(rng: np.random.Generator, m: int | None = None, d: int | None = None,
                    m_max: int = 6, d_max: int = 3) -> Instance:
    m = int(rng.integers(1, m_max + 1)) if m is None else m
    d = int(rng.integers(1, d_max + 1)) if d is None else d
    return Instance(PointSet(random_points(rng, m, d)), random_family(rng, m))


def irreducible_family(rng: np.random.Generator, m: int) -> IntervalFamily:
    """Random irreducible family with alpha < 1 (all widths at most 1 - alpha)."""
    while True:
        a = rng.uniform(-0.3, 0.3, m)
        delta = 1.0 - a.sum()
        if delta <= 0.05:
            continue
        d = rng.uniform(0.05, 1.0, m) * delta
        fam = IntervalFamily.of(np.c_[a, a + d])
        if fam.beta - 1.0 >= d.max():
            return fam


def same_vertex_set(A: np.ndarray, B: np.ndarray, eps: float) -> bool:
    """Setwise equality of two vertex arrays up to ``eps`` in the max norm."""
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.shape != B.shape:
        return False
    if A.size == 0:
        return True
    dist = np.max(np.abs(A[:, None, :] - B[None, :, :]), axis=2)
    return bool(np.all(dist.min(axis=1) <= eps) and np.all(dist.min(axis=0) <= eps))


def polygon_area(cycle: np.ndarray) -> float:
    x, y = cycle[:, 0], cycle[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))
