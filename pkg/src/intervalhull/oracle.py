"""Independent checks of computed hulls.

Everything here realises the definition directly (LP membership, brute-force
grids, greedy support points) and shares no code path with the cube-section
enumeration in :mod:`intervalhull.hull`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded
from .feasibility import bound_family, is_nonempty
from .hull import VPolytope, dedup_points
from .lp import LinearProgram, LPResult, lp_solve
from .model import DEFAULT_TOL, Instance, IntervalFamily, Tolerances, coordinate_scale

GRID_MAX_POINTS = 6

__all__ = [
    "LinearProgram",
    "LPResult",
    "lp_solve",
    "coefficient_lp",
    "member",
    "point_in_vpolytope",
    "points_in_vpolytope",
    "grid_sample",
    "compare_hulls",
    "ComparisonReport",
    "support_point",
    "support_vertices",
]


def coefficient_lp(inst: Instance, x, objective=None, maximize=False) -> LinearProgram:
    """LP over coefficients: ``xi in prod I_j``, ``sum xi = 1``, ``sum xi_j x_j = x``.

    Pass ``x=None`` to drop the point constraint (feasible coefficients only).
    """
    fam = inst.family
    rows = [np.ones(inst.m)]
    rhs = [1.0]
    if x is not None:
        rows.extend(inst.coords.T)
        rhs.extend(np.asarray(x, dtype=float).reshape(-1))
    return LinearProgram(fam.lo, fam.hi, np.array(rows), np.array(rhs), objective, maximize)


def member(inst: Instance, x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Is ``x`` in the convex interval hull of ``inst``?"""
    fam = inst.family
    if not is_nonempty(fam):
        return False
    if not fam.is_finite:
        inst = inst.with_family(bound_family(fam))
    return lp_solve(coefficient_lp(inst, x), tol=tol.eps_feas).feasible


def point_in_vpolytope(p: VPolytope, x, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Is ``x`` a convex combination of the vertices of ``p``?"""
    V = p.vertices
    n = V.shape[0]
    if n == 0:
        return False
    rows = np.vstack([np.ones(n), V.T])
    rhs = np.concatenate([[1.0], np.asarray(x, dtype=float).reshape(-1)])
    lp = LinearProgram(np.zeros(n), np.full(n, np.inf), rows, rhs)
    return lp_solve(lp, tol=tol.eps_feas).feasible


def grid_sample(inst: Instance, resolution: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Hull points from a uniform grid over all coefficients but one.

    The widest interval (lowest index on ties) is the dependent coefficient,
    fixed by the sum-to-one constraint; a grid point is kept when that
    coefficient lands in its interval.
    """
    fam = inst.family
    if inst.m > GRID_MAX_POINTS:
        raise CapExceeded(f"grid sampling supports at most {GRID_MAX_POINTS} points", required=inst.m)
    if not is_nonempty(fam):
        return np.zeros((0, inst.d))
    if not fam.is_finite:
        raise ValueError("grid sampling needs a finite family; apply bound_family first")
    free = int(np.argmax(fam.widths))
    others = [j for j in range(inst.m) if j != free]
    axes = [
        np.array([fam[j].lo]) if fam[j].is_singleton or resolution <= 1
        else np.linspace(fam[j].lo, fam[j].hi, resolution)
        for j in others
    ]
    grids = np.meshgrid(*axes, indexing="ij") if axes else []
    combos = np.stack([g.reshape(-1) for g in grids], axis=1) if axes else np.zeros((1, 0))
    rest = 1.0 - combos.sum(axis=1)
    slack = tol.eps_feas * fam.scale()
    lo_f, hi_f = fam[free].lo, fam[free].hi
    ok = (rest >= lo_f - slack) & (rest <= hi_f + slack)
    xi = np.empty((int(ok.sum()), inst.m))
    xi[:, others] = combos[ok]
    xi[:, free] = np.clip(rest[ok], lo_f, hi_f)
    return xi @ inst.coords


def points_in_vpolytope(p: VPolytope, xs, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Vectorised :func:`point_in_vpolytope`.

    Points are first located in a Delaunay simplex of the vertices; a point
    whose barycentric coordinates there are all >= -eps is certified inside.
    A point more than ``2 eps`` beyond a facet of the vertices' qhull hull, or
    off their affine hull, is certified outside. Only the points in the band
    between the two are decided by the LP.
    """
    xs = np.asarray(xs, dtype=float).reshape(-1, p.vertices.shape[1] if p.count else 0)
    inside = np.zeros(xs.shape[0], dtype=bool)
    if p.count == 0 or xs.shape[0] == 0:
        return inside
    eps = tol.eps_geom * coordinate_scale(p.vertices)
    outside = np.zeros(xs.shape[0], dtype=bool)
    if p.dim >= 1:
        inside, outside = _certify(p, xs, eps)
    for i in np.flatnonzero(~inside & ~outside):
        inside[i] = point_in_vpolytope(p, xs[i], tol)
    return inside


def _certify(p: VPolytope, xs: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Masks of points certified inside and certified outside ``p``."""
    from scipy.spatial import ConvexHull, Delaunay, QhullError

    V = p.vertices
    origin = V.mean(axis=0)
    _, _, vt = np.linalg.svd(V - origin, full_matrices=False)
    basis = vt[: p.dim]
    local = (xs - origin) @ basis.T
    off_plane = np.linalg.norm((xs - origin) - local @ basis, axis=1)
    Vl = (V - origin) @ basis.T
    none = np.zeros(xs.shape[0], dtype=bool)
    if p.dim == 1:
        lo, hi = Vl.min(), Vl.max()
        inside = (off_plane <= eps) & (local[:, 0] >= lo) & (local[:, 0] <= hi)
        outside = (off_plane > 2 * eps) | (local[:, 0] < lo - 2 * eps) | (local[:, 0] > hi + 2 * eps)
        return inside, outside
    try:
        tri = Delaunay(Vl)
        facets = ConvexHull(Vl).equations
    except QhullError:
        return none, none.copy()
    outside = (off_plane > 2 * eps) | ((local @ facets[:, :-1].T + facets[:, -1]).max(axis=1) > 2 * eps)
    simplex = tri.find_simplex(local)
    found = simplex >= 0
    inside = np.zeros(xs.shape[0], dtype=bool)
    if not np.any(found):
        return inside, outside
    # recompute barycentric coordinates from the vertex data itself
    idx = np.flatnonzero(found)
    corners = Vl[tri.simplices[simplex[idx]]]           # (k, dim+1, dim)
    mat = np.transpose(corners[:, 1:] - corners[:, :1], (0, 2, 1))
    lam = np.linalg.solve(mat, (local[idx] - corners[:, 0])[..., None])[..., 0]
    bary = np.concatenate([1.0 - lam.sum(axis=1, keepdims=True), lam], axis=1)
    recon = np.einsum("kj,kjd->kd", bary, corners)
    good = (bary.min(axis=1) >= -1e-12) & (np.linalg.norm(recon - local[idx], axis=1) <= eps)
    inside[idx] = good & (off_plane[idx] <= eps)
    return inside, outside & ~inside


@dataclass
class ComparisonReport:
    passed: bool
    samples: int
    vertices: int
    samples_outside: list[int] = field(default_factory=list)
    vertices_not_member: list[int] = field(default_factory=list)
    max_vertex_to_sample: float = 0.0

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "samples": self.samples,
            "vertices": self.vertices,
            "samples_outside": self.samples_outside,
            "vertices_not_member": self.vertices_not_member,
            "max_vertex_to_sample": self.max_vertex_to_sample,
        }


def compare_hulls(
    computed: VPolytope, inst: Instance, resolution: int, tol: Tolerances = DEFAULT_TOL
) -> ComparisonReport:
    """Grid samples must lie in ``computed``; its vertices must be hull members.

    ``max_vertex_to_sample`` is the largest distance from a computed vertex
    to its nearest grid sample, a coarse measure of how well the grid covers
    the computed polytope.
    """
    fam = inst.family
    if not is_nonempty(fam):
        ok = computed.is_empty
        return ComparisonReport(ok, 0, computed.count, [], list(range(computed.count)))
    if not fam.is_finite:
        inst = inst.with_family(bound_family(fam))
    samples = grid_sample(inst, resolution, tol)
    if computed.count:
        outside = np.flatnonzero(~points_in_vpolytope(computed, samples, tol)).tolist()
    else:
        outside = list(range(samples.shape[0]))
    not_member = [i for i, v in enumerate(computed.vertices) if not member(inst, v, tol)]
    gap = 0.0
    if samples.shape[0] and computed.count:
        dists = np.linalg.norm(computed.vertices[:, None, :] - samples[None, :, :], axis=2)
        gap = float(dists.min(axis=1).max())
    passed = not outside and not not_member and not computed.is_empty
    return ComparisonReport(passed, int(samples.shape[0]), computed.count, outside, not_member, gap)


def support_point(fam: IntervalFamily, X: np.ndarray, direction) -> np.ndarray:
    """Maximiser of ``<direction, x>`` over the hull, by a greedy fill.

    Start every coefficient at its lower end and hand out the remaining
    ``1 - alpha`` to the points with the largest projections first.
    """
    proj = X @ np.asarray(direction, dtype=float)
    xi = np.array(fam.lo, dtype=float)
    budget = 1.0 - fam.alpha
    for j in np.argsort(-proj, kind="stable"):
        if budget <= 0:
            break
        step = min(fam.widths[j], budget)
        xi[j] += step
        budget -= step
    return xi @ X


def support_vertices(inst: Instance, n_directions: int = 4000, seed: int = 0,
                     tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Distinct support points over many random directions.

    For a polytope every vertex has a normal cone of positive measure, so
    with enough directions this recovers the vertex set.
    """
    fam = inst.family
    if not is_nonempty(fam):
        return np.zeros((0, inst.d))
    fam = bound_family(fam)
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(n_directions, inst.d))
    pts = np.array([support_point(fam, inst.coords, u) for u in dirs])
    eps = 1e3 * tol.eps_dedup * coordinate_scale(inst.coords)
    return dedup_points(pts, eps)
