"""Vertex representation of convex interval hulls.

Substituting ``xi_j = a_j + (b_j - a_j) mu_j`` turns the coefficient polytope
into the section of the unit cube by the hyperplane
``sum_j (b_j - a_j) mu_j = 1 - alpha``.  Its vertices sit on cube edges, so
they are found by solving one linear equation per edge.  The hull is the
image of that section under ``mu -> sum a_j x_j + sum (b_j - a_j) mu_j x_j``;
the image points are then pruned to true vertices with LP certificates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import CapExceeded, EmptyHull, UnboundedHull
from .feasibility import bound_family, family_bounded, is_nonempty
from .lp import LinearProgram, lp_solve
from .model import DEFAULT_TOL, Instance, IntervalFamily, Tolerances, affine_dim, coordinate_scale
from .reduction import hat, is_wide

EDGE_CAP = 22


@dataclass(frozen=True, eq=False)
class CoefficientSection:
    """Cube section ``{mu in [0,1]^m' : weights . mu = rhs}``.

    ``base`` holds the lower endpoint a_j of every original interval;
    ``index_map[r]`` is the original index of reduced coordinate ``r`` and
    ``fixed`` lists ``(index, value)`` for the singleton intervals.
    """

    weights: np.ndarray
    rhs: float
    fixed: tuple[tuple[int, float], ...]
    index_map: tuple[int, ...]
    base: np.ndarray

    @property
    def m_reduced(self) -> int:
        return len(self.index_map)


@dataclass(frozen=True, eq=False)
class VPolytope:
    """A polytope given by its vertices.

    ``order`` is a counterclockwise cyclic ordering (indices into
    ``vertices``) when ``dim == 2``; otherwise None.  ``dim`` is -1 for the
    empty polytope.
    """

    vertices: np.ndarray
    dim: int
    order: tuple[int, ...] | None = None

    @property
    def count(self) -> int:
        return self.vertices.shape[0]

    @property
    def is_empty(self) -> bool:
        return self.count == 0

    def cycle(self) -> np.ndarray:
        """Vertices in cyclic order (dim 2) or as stored."""
        if self.order is None:
            return self.vertices
        return self.vertices[list(self.order)]

    def to_json(self) -> dict:
        return {
            "vertices": self.cycle().tolist(),
            "dim": self.dim,
            "count": self.count,
        }


def coefficient_section(fam: IntervalFamily, tol: Tolerances = DEFAULT_TOL) -> CoefficientSection:
    if not fam.is_finite:
        raise UnboundedHull("coefficient_section needs a finite family")
    if not is_nonempty(fam):
        raise EmptyHull(f"alpha={fam.alpha}, beta={fam.beta}")
    lo, w = np.array(fam.lo), np.array(fam.widths)
    # widths at rounding level are frozen at their lower end
    thin = w <= tol.eps_feas * fam.scale()
    fixed = tuple((int(j), float(lo[j])) for j in np.flatnonzero(thin))
    index_map = tuple(int(j) for j in np.flatnonzero(~thin))
    weights = w[~thin]
    weights.flags.writeable = False
    lo.flags.writeable = False
    rhs = max(0.0, 1.0 - fam.alpha)
    return CoefficientSection(weights, rhs, fixed, index_map, lo)


def _subset_sums(weights: np.ndarray) -> np.ndarray:
    """``sums[v] = sum of weights[j] over the set bits j of v``."""
    sums = np.zeros(1)
    for w in weights:
        sums = np.concatenate([sums, sums + w])
    return sums


def _bits(indices: np.ndarray, m: int) -> np.ndarray:
    return ((indices[:, None] >> np.arange(m)) & 1).astype(float)


def dedup_points(points: np.ndarray, eps: float) -> np.ndarray:
    """Canonically sorted points with max-norm clusters of radius eps merged.

    The first point of each cluster (in lexicographic order) is kept.
    """
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] <= 1:
        return pts.copy()
    # np.unique sorts lexicographically and drops exact repeats
    pts = np.unique(pts, axis=0)
    if pts.shape[1] == 0:
        return pts[:1]
    tree = cKDTree(pts)
    keep = np.ones(pts.shape[0], dtype=bool)
    for i in range(pts.shape[0]):
        if not keep[i]:
            continue
        for j in tree.query_ball_point(pts[i], eps, p=np.inf):
            if j > i:
                keep[j] = False
    return pts[keep]


def section_vertices(
    sec: CoefficientSection, tol: Tolerances = DEFAULT_TOL, edge_cap: int = EDGE_CAP
) -> np.ndarray:
    """Vertices of the cube section, as rows of an ``(p, m')`` array.

    Every edge of the cube (one free coordinate, the others at 0 or 1) is
    intersected with the hyperplane; cube vertices lying on the hyperplane
    are kept as well, which covers edges contained in the hyperplane.
    """
    m = sec.m_reduced
    if m > edge_cap:
        raise CapExceeded(f"{m} non-singleton intervals exceed the edge cap {edge_cap}", required=m)
    w, rhs = np.asarray(sec.weights), sec.rhs
    if m == 0:
        if abs(rhs) <= tol.eps_geom:
            return np.zeros((1, 0))
        return np.zeros((0, 0))
    sums = _subset_sums(w)
    all_idx = np.arange(sums.size)
    band = tol.eps_geom
    chunks = []
    on_plane = np.abs(sums - rhs) <= band * max(1.0, float(w.max()))
    if np.any(on_plane):
        chunks.append(_bits(all_idx[on_plane], m))
    for k in range(m):
        idx = all_idx[(all_idx >> k) & 1 == 0]
        mu = (rhs - sums[idx]) / w[k]
        ok = (mu >= -band) & (mu <= 1.0 + band)
        if not np.any(ok):
            continue
        pts = _bits(idx[ok], m)
        pts[:, k] = np.clip(mu[ok], 0.0, 1.0)
        chunks.append(pts)
    if not chunks:
        return np.zeros((0, m))
    return dedup_points(np.vstack(chunks), tol.eps_dedup)


def map_to_ambient(inst: Instance, sec: CoefficientSection, coeff_points: np.ndarray) -> np.ndarray:
    """Image of section points under ``mu -> sum a_j x_j + sum w_j mu_j x_j``."""
    X = inst.coords
    origin = sec.base @ X
    mu = np.asarray(coeff_points, dtype=float)
    if sec.m_reduced == 0:
        return np.repeat(origin[None, :], mu.shape[0] if mu.ndim == 2 else 1, axis=0)
    mu = mu.reshape(-1, sec.m_reduced)
    directions = np.asarray(sec.weights)[:, None] * X[list(sec.index_map)]
    return origin + mu @ directions


def _in_hull_lp(p: np.ndarray, others: np.ndarray, eps: float) -> bool:
    """Is ``p`` a convex combination of the rows of ``others``?"""
    n = others.shape[0]
    if n == 0:
        return False
    A = np.vstack([np.ones(n), (others - p).T])
    b = np.zeros(A.shape[0])
    b[0] = 1.0
    lp = LinearProgram(np.zeros(n), np.full(n, np.inf), A, b)
    return lp_solve(lp, tol=eps).feasible


def _directional_extremes(pts: np.ndarray, margin: float, rng: np.random.Generator) -> np.ndarray:
    """Points that are the strict unique maximiser in some direction."""
    n, d = pts.shape
    dirs = np.vstack([np.eye(d), -np.eye(d), rng.normal(size=(8 * d + 16, d))])
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    vals = pts @ dirs.T
    certain = np.zeros(n, dtype=bool)
    if n == 1:
        certain[:] = True
        return certain
    top2 = np.argsort(-vals, axis=0)[:2]
    gap = vals[top2[0], np.arange(dirs.shape[0])] - vals[top2[1], np.arange(dirs.shape[0])]
    certain[top2[0][gap > margin]] = True
    return certain


def _ccw_order(vertices: np.ndarray) -> tuple[int, ...]:
    centred = vertices - vertices.mean(axis=0)
    if vertices.shape[1] == 2:
        plane = centred
    else:
        # coordinates in an orthonormal basis of the affine hull
        _, _, vt = np.linalg.svd(centred, full_matrices=False)
        plane = centred @ vt[:2].T
    angles = np.arctan2(plane[:, 1], plane[:, 0])
    order = np.argsort(angles, kind="stable")
    # start the cycle at the lowest, then left-most vertex
    start_key = min(range(len(order)), key=lambda i: (round(vertices[order[i]][1], 12), vertices[order[i]][0]))
    order = np.roll(order, -start_key)
    return tuple(int(i) for i in order)


def extract_vertices(
    points: np.ndarray, tol: Tolerances = DEFAULT_TOL, scale: float | None = None, seed: int = 0
) -> VPolytope:
    """Deduplicate and keep only extreme points.

    A point is kept iff "p in conv(others)" is infeasible.  Points that are a
    strict unique maximiser of a linear functional are accepted without an
    LP, and candidates are first tested against the already accepted
    vertices; both shortcuts only ever skip LPs whose outcome is implied.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        d = pts.shape[1] if pts.ndim == 2 else 0
        return VPolytope(np.zeros((0, d)), -1)
    if scale is None:
        scale = coordinate_scale(pts)
    pts = dedup_points(pts, tol.eps_dedup * scale)
    n = pts.shape[0]
    rng = np.random.default_rng(seed)
    accepted = _directional_extremes(pts, tol.eps_geom * scale, rng)
    alive = np.ones(n, dtype=bool)
    eps = tol.eps_geom * scale
    for i in np.flatnonzero(~accepted):
        p = pts[i]
        if _in_hull_lp(p, pts[accepted & alive], eps):
            alive[i] = False
            continue
        pool = alive.copy()
        pool[i] = False
        if _in_hull_lp(p, pts[pool], eps):
            alive[i] = False
        else:
            accepted[i] = True
    verts = pts[alive]
    dim = affine_dim(verts, tol) if verts.shape[0] > 1 else 0
    order = _ccw_order(verts) if dim == 2 else None
    verts.flags.writeable = False
    return VPolytope(verts, dim, order)


def prepared_family(fam: IntervalFamily, tol: Tolerances = DEFAULT_TOL, reduce: bool = True) -> IntervalFamily:
    """Finite (and, if ``reduce``, hat-reduced) family with the same hull."""
    if not family_bounded(fam):
        raise UnboundedHull("the hull is unbounded")
    fam = bound_family(fam)
    return hat(fam, tol) if reduce else fam


def co_hull(
    inst: Instance,
    tol: Tolerances = DEFAULT_TOL,
    edge_cap: int = EDGE_CAP,
    reduce: bool = True,
    seed: int = 0,
) -> VPolytope:
    """Vertices of the convex interval hull of ``inst``.

    Empty hulls give an empty :class:`VPolytope`; unbounded ones raise
    :class:`UnboundedHull`.  ``reduce=False`` skips the hat tightening,
    which never changes the result but enlarges the enumeration.
    """
    fam = inst.family
    if not is_nonempty(fam):
        return VPolytope(np.zeros((0, inst.d)), -1)
    fam = prepared_family(fam, tol, reduce)
    sec = coefficient_section(fam, tol)
    mu = section_vertices(sec, tol, edge_cap)
    ambient = map_to_ambient(inst, sec, mu)
    return extract_vertices(ambient, tol, coordinate_scale(inst.coords), seed)


def vertex_bound(m: int) -> int:
    """Largest possible vertex count for m points: ``n * C(m, n)``, ``n = m // 2 + 1``."""
    if m < 1:
        raise ValueError("m must be positive")
    n = m // 2 + 1
    return n * math.comb(m, n)


def wide_vertex_bound(m: int) -> int:
    if m < 2:
        raise ValueError("m must be at least 2")
    return m * (m - 1)


def hull_bounds(fam: IntervalFamily, tol: Tolerances = DEFAULT_TOL) -> dict:
    """Vertex-count bounds for the hull of ``fam``.

    ``thm43_if_wide`` is ``m(m-1)`` when the (bounded) family is wide and
    None otherwise.
    """
    m = len(fam)
    out = {"thm41": vertex_bound(m), "thm43_if_wide": None}
    if m < 2 or not is_nonempty(fam) or not family_bounded(fam):
        return out
    if is_wide(bound_family(fam), tol):
        out["thm43_if_wide"] = wide_vertex_bound(m)
    return out
