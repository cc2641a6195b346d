"""SVG and Wavefront OBJ output for computed hulls."""

from __future__ import annotations

import itertools

import numpy as np

from .errors import DimensionUnsupported
from .hull import VPolytope
from .model import DEFAULT_TOL, Instance, Tolerances, coordinate_scale


def _fmt(x: float) -> str:
    s = f"{x:.6f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def svg(inst: Instance, poly: VPolytope, size: int = 400) -> str:
    """Shaded polygon with the generating points drawn as dots."""
    if inst.d != 2 or poly.dim != 2:
        raise DimensionUnsupported(f"svg needs a 2-dimensional hull in the plane (dim={poly.dim}, d={inst.d})")
    cyc = poly.cycle()
    allpts = np.vstack([cyc, inst.coords])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = float(max(hi - lo))
    pad = 0.1 * span
    lo, span = lo - pad, span + 2 * pad
    k = size / span

    def tx(p):
        # flip y: SVG grows downwards
        return (p[0] - lo[0]) * k, size - (p[1] - lo[1]) * k

    path = " ".join(("M" if i == 0 else "L") + f"{_fmt(x)},{_fmt(y)}" for i, (x, y) in enumerate(map(tx, cyc)))
    dots = "\n".join(
        f'  <circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3" fill="black"/>' for x, y in map(tx, inst.coords)
    )
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
        f'  <path d="{path} Z" fill="#c8c8c8" stroke="#555555" stroke-width="1.5"/>\n'
        f"{dots}\n"
        "</svg>\n"
    )


def facets(poly: VPolytope, tol: Tolerances = DEFAULT_TOL) -> list[list[int]]:
    """Facets of a 3-polytope as vertex index cycles, counterclockwise from outside.

    A vertex triple spans a facet plane iff every vertex lies weakly on one
    side of it.
    """
    V = poly.vertices
    if V.shape[1] != 3 or poly.dim != 3:
        raise DimensionUnsupported(f"facets need a 3-dimensional hull in space (dim={poly.dim})")
    eps = tol.eps_geom * 1e3 * coordinate_scale(V)
    seen: set[frozenset] = set()
    out = []
    for i, j, k in itertools.combinations(range(V.shape[0]), 3):
        n = np.cross(V[j] - V[i], V[k] - V[i])
        norm = np.linalg.norm(n)
        if norm <= eps:
            continue
        n /= norm
        s = (V - V[i]) @ n
        if np.all(s <= eps):
            pass
        elif np.all(s >= -eps):
            n, s = -n, -s
        else:
            continue
        on = frozenset(np.flatnonzero(np.abs(s) <= eps).tolist())
        if on in seen:
            continue
        seen.add(on)
        idx = sorted(on)
        fc = V[idx].mean(axis=0)
        u = V[idx[0]] - fc
        u /= np.linalg.norm(u)
        w = np.cross(n, u)
        ang = [float(np.arctan2((V[t] - fc) @ w, (V[t] - fc) @ u)) for t in idx]
        out.append([idx[t] for t in np.argsort(ang)])
    return sorted(out)


def obj(poly: VPolytope, tol: Tolerances = DEFAULT_TOL, name: str = "hull") -> str:
    """Vertex records plus fan-triangulated facets."""
    faces = facets(poly, tol)
    lines = [f"# {name}: {poly.count} vertices, {len(faces)} facets", f"o {name}"]
    lines += ["v " + " ".join(_fmt(c) for c in v) for v in poly.vertices]
    for face in faces:
        for a, b in zip(face[1:-1], face[2:]):
            lines.append(f"f {face[0] + 1} {a + 1} {b + 1}")
    return "\n".join(lines) + "\n"
