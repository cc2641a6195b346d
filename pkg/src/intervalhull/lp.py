"""Dense two-phase simplex for the small LPs used throughout the package.

Problems are tiny (tens of variables, a handful of rows), so the solver keeps
a full tableau and pivots with Bland's rule, which cannot cycle.  Every
answer is re-checked against the original constraints before it is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalBreakdown

PIVOT_TOL = 1e-13
_RATIO_TOL = 1e-9
_COST_TOL = 1e-12
_RESIDUAL_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """``min/max c.x  s.t.  A_eq x = b_eq,  lower <= x <= upper``."""

    lower: np.ndarray
    upper: np.ndarray
    A_eq: np.ndarray
    b_eq: np.ndarray
    objective: np.ndarray | None = None
    maximize: bool = False

    def __post_init__(self):
        lower = np.asarray(self.lower, dtype=float).reshape(-1)
        upper = np.asarray(self.upper, dtype=float).reshape(-1)
        n = lower.size
        A = np.asarray(self.A_eq, dtype=float).reshape(-1, n) if n else np.zeros((len(self.b_eq), 0))
        b = np.asarray(self.b_eq, dtype=float).reshape(-1)
        if upper.size != n or A.shape != (b.size, n):
            raise ValueError("LP dimensions are inconsistent")
        if np.any(lower > upper) or np.any(lower == np.inf) or np.any(upper == -np.inf):
            raise ValueError("LP box bounds must satisfy lower <= upper")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise ValueError("LP constraint data must be finite")
        c = None
        if self.objective is not None:
            c = np.asarray(self.objective, dtype=float).reshape(-1)
            if c.size != n:
                raise ValueError("objective length must match the variable count")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "A_eq", A)
        object.__setattr__(self, "b_eq", b)
        object.__setattr__(self, "objective", c)

    @property
    def n(self) -> int:
        return self.lower.size


@dataclass(frozen=True, eq=False)
class LPResult:
    feasible: bool
    x: np.ndarray | None = None
    objective: float | None = None
    infeasibility: float = 0.0
    iterations: int = 0

    def __bool__(self) -> bool:
        return self.feasible


def _standard_form(lp: LinearProgram):
    """Rewrite as ``A y = b, y >= 0`` and return the map back to ``x``.

    ``x = shift + M @ y`` where ``M`` is a sparse-ish dense matrix of +-1s.
    """
    n = lp.n
    cols = []       # (original index, sign)
    upper_rows = []  # (column index, capacity)
    shift = np.zeros(n)
    for i in range(n):
        lo, hi = lp.lower[i], lp.upper[i]
        if math.isfinite(lo) and math.isfinite(hi):
            shift[i] = lo
            if hi > lo:
                upper_rows.append((len(cols), hi - lo))
                cols.append((i, 1.0))
        elif math.isfinite(lo):
            shift[i] = lo
            cols.append((i, 1.0))
        elif math.isfinite(hi):
            shift[i] = hi
            cols.append((i, -1.0))
        else:
            cols.append((i, 1.0))
            cols.append((i, -1.0))
    n_struct = len(cols)
    n_slack = len(upper_rows)
    M = np.zeros((n, n_struct + n_slack))
    for j, (i, s) in enumerate(cols):
        M[i, j] = s
    rows_eq = lp.A_eq @ M
    rhs_eq = lp.b_eq - lp.A_eq @ shift
    rows_ub = np.zeros((n_slack, n_struct + n_slack))
    rhs_ub = np.zeros(n_slack)
    for r, (j, cap) in enumerate(upper_rows):
        rows_ub[r, j] = 1.0
        rows_ub[r, n_struct + r] = 1.0
        rhs_ub[r] = cap
    A = np.vstack([rows_eq, rows_ub])
    b = np.concatenate([rhs_eq, rhs_ub])
    return A, b, M, shift


class _Tableau:
    """Tableau with the cost row stored last and the rhs in the last column."""

    def __init__(self, T: np.ndarray, basis: list[int]):
        self.T = T
        self.basis = basis
        self.iterations = 0

    def pivot(self, r: int, c: int) -> None:
        T = self.T
        piv = T[r, c]
        if abs(piv) < PIVOT_TOL:
            raise NumericalBreakdown(f"pivot magnitude {abs(piv):.3g} below {PIVOT_TOL}")
        T[r] /= piv
        col = T[:, c].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        T[:, c] = 0.0
        T[r, c] = 1.0
        self.basis[r] = c
        self.iterations += 1

    def run(self, allowed: np.ndarray, max_iter: int) -> bool:
        """Bland's rule; returns False if the objective is unbounded."""
        T = self.T
        rows = T.shape[0] - 1
        while True:
            cost = T[-1, :-1]
            candidates = np.flatnonzero((cost < -_COST_TOL) & allowed)
            if candidates.size == 0:
                return True
            c = int(candidates[0])
            column = T[:rows, c]
            # entries this small are rounding noise; pivoting on them wrecks the tableau
            eligible = np.flatnonzero(column > _RATIO_TOL)
            if eligible.size == 0:
                return False
            ratios = T[eligible, -1] / column[eligible]
            best = ratios.min()
            ties = eligible[ratios <= best + 1e-12 * (1.0 + abs(best))]
            r = int(min(ties, key=lambda i: self.basis[i]))
            self.pivot(r, c)
            if self.iterations > max_iter:
                raise NumericalBreakdown("simplex iteration limit exceeded")


def lp_solve(lp: LinearProgram, tol: float = 1e-10) -> LPResult:
    """Solve ``lp``; infeasibility is judged with slack ``tol`` on scaled rows.

    Returns an :class:`LPResult`; ``feasible`` is False for infeasible
    problems. Raises :class:`NumericalBreakdown` when a pivot degenerates or
    the reported point fails to satisfy the constraints it claims to.
    """
    A, b, M, shift = _standard_form(lp)
    rows, ncols = A.shape
    # equilibrate rows so that tolerances mean the same thing on every row
    norms = np.max(np.abs(np.hstack([A, b[:, None]])), axis=1) if rows else np.zeros(0)
    norms[norms == 0] = 1.0
    A = A / norms[:, None]
    b = b / norms
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1

    if rows == 0:
        y = np.zeros(ncols)
        return _finish(lp, y, M, shift, 0, tol)

    T = np.zeros((rows + 1, ncols + rows + 1))
    T[:rows, :ncols] = A
    T[:rows, ncols:ncols + rows] = np.eye(rows)
    T[:rows, -1] = b
    T[-1, :ncols] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    tab = _Tableau(T, list(range(ncols, ncols + rows)))
    max_iter = 50 * (ncols + rows) + 1000
    allowed = np.ones(ncols + rows, dtype=bool)
    tab.run(allowed, max_iter)

    infeas = -T[-1, -1]
    if infeas < -1e3 * tol * max(1.0, float(b.max(initial=0.0))):
        raise NumericalBreakdown(f"phase-one objective {infeas:.3g} is negative")
    if infeas > tol * max(1.0, float(b.max(initial=0.0))):
        return LPResult(False, infeasibility=float(infeas), iterations=tab.iterations)

    # drive remaining artificials out of the basis; drop redundant rows
    keep = []
    for r in range(rows):
        if tab.basis[r] >= ncols:
            row = T[r, :ncols]
            nz = np.flatnonzero(np.abs(row) > 1e-9)
            if nz.size:
                tab.pivot(r, int(nz[0]))
                keep.append(r)
        else:
            keep.append(r)
    T2 = np.zeros((len(keep) + 1, ncols + 1))
    T2[:-1, :ncols] = T[keep, :ncols]
    T2[:-1, -1] = T[keep, -1]
    basis = [tab.basis[r] for r in keep]
    phase2 = _Tableau(T2, basis)
    phase2.iterations = tab.iterations

    if lp.objective is not None:
        c_x = -lp.objective if lp.maximize else lp.objective
        c_y = M.T @ c_x
        T2[-1, :ncols] = c_y
        for r, j in enumerate(basis):
            if T2[-1, j] != 0.0:
                T2[-1] -= T2[-1, j] * T2[r]
        if not phase2.run(np.ones(ncols, dtype=bool), max_iter):
            raise NumericalBreakdown("objective is unbounded on the feasible set")

    y = np.zeros(ncols)
    for r, j in enumerate(phase2.basis):
        y[j] = max(T2[r, -1], 0.0)
    return _finish(lp, y, M, shift, phase2.iterations, tol, float(infeas))


def _finish(lp, y, M, shift, iterations, tol, infeas=0.0) -> LPResult:
    x = shift + M @ y
    x = np.clip(x, lp.lower, lp.upper)
    scale = max(1.0, float(np.max(np.abs(lp.b_eq), initial=0.0)),
                float(np.max(np.abs(lp.A_eq), initial=0.0)) * max(1.0, float(np.max(np.abs(x), initial=0.0))))
    residual = float(np.max(np.abs(lp.A_eq @ x - lp.b_eq), initial=0.0))
    if residual > max(_RESIDUAL_TOL, 1e3 * tol) * scale:
        raise NumericalBreakdown(f"solution residual {residual:.3g} exceeds tolerance")
    obj = None
    if lp.objective is not None:
        obj = float(lp.objective @ x)
    return LPResult(True, x, obj, infeas, iterations)
