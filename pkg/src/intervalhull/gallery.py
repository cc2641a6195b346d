"""Built-in gallery of planar and spatial interval hulls with golden data.

Triangle-based entries use the equilateral triangle (-1, 0), (1, 0),
(0, sqrt 3) and its orthocenter (0, 1/sqrt 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hull import VPolytope
from .model import Instance

SQ2, SQ3, SQ5 = math.sqrt(2.0), math.sqrt(3.0), math.sqrt(5.0)

TRIANGLE = [[-1.0, 0.0], [1.0, 0.0], [0.0, SQ3]]
TRIANGLE_WITH_CENTER = TRIANGLE + [[0.0, 1.0 / SQ3]]
TETRAHEDRON = [
    [-1.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.0, SQ3, 0.0],
    [0.0, 1.0 / SQ3, 2.0 * math.sqrt(2.0 / 3.0)],
]
TETRAHEDRON_WITH_CENTER = TETRAHEDRON + [[0.0, 1.0 / SQ3, 1.0 / math.sqrt(6.0)]]

REGULAR_POLYGON = "regular_polygon"
EQUAL_EDGES = "equal_edges"
NAMED_SOLID = "named_solid"


@dataclass(frozen=True)
class Expected:
    vertex_count: int
    regularity: str | None = None
    faces: int | None = None
    notes: str = ""


@dataclass(frozen=True, eq=False)
class GalleryEntry:
    id: str
    instance: Instance
    expected: Expected
    corrected: bool = field(default=False)


def _entry(id_, points, intervals, expected, corrected=False):
    return GalleryEntry(id_, Instance.build(points, intervals), expected, corrected)


def _build() -> dict[str, GalleryEntry]:
    right = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
    r = math.sqrt(10.0 + 2.0 * SQ5)
    pentagon_pts = [[0.0, -5.0 - 2.0 * SQ5], [r, SQ5], [0.0, 5.0], [-r, SQ5]]
    square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    u = [0.0, 1.0]
    steps = {
        "fig7": ([[0, 2], [0, 2], [0, 2], [-1, 0]], Expected(3, EQUAL_EDGES, notes="equilateral triangle")),
        "fig8": ([[0, 1], [0, 2], [0, 2], [-1, 0]], Expected(5, notes="step 2")),
        "fig9": ([[0, 1], [0, 1], [0, 2], [-1, 0]], Expected(6, notes="step 3")),
        "fig10": ([u, u, u, [-1, 0]], Expected(6, REGULAR_POLYGON, notes="step 4, regular hexagon")),
        "fig11": ([u, u, u, [1 - SQ3, 0]], Expected(9, notes="step 5")),
        "fig12": ([u, u, u, [1 - SQ3, -2 + SQ3]], Expected(12, REGULAR_POLYGON, notes="regular dodecagon")),
    }
    entries = [
        _entry("fig1", right, [[-1, 1], [0, 1], [0, 1]], Expected(4, REGULAR_POLYGON, notes="square")),
        _entry("fig2", right, [[0, 1], [0, 2 / 3], [0, 2 / 3]], Expected(5, notes="irregular pentagon")),
        _entry("fig3", TRIANGLE, [[0, 2 / 3]] * 3, Expected(6, REGULAR_POLYGON, notes="regular hexagon"), True),
        _entry("fig4", pentagon_pts, [[0, 3 - SQ5], [0, 2], [-1, 1], [0, 2]],
               Expected(5, REGULAR_POLYGON, notes="regular pentagon")),
        _entry("fig5", square, [[0, SQ2 / 2]] * 4, Expected(8, REGULAR_POLYGON, notes="regular octagon")),
        _entry("fig6", TRIANGLE_WITH_CENTER, [u, u, u, [(SQ3 - 3) / 2, 1]],
               Expected(9, EQUAL_EDGES, notes="irregular nonagon with equal sides"), True),
    ]
    for id_, (intervals, expected) in steps.items():
        entries.append(_entry(id_, TRIANGLE_WITH_CENTER, intervals, expected, True))
    entries += [
        _entry("fig13", TETRAHEDRON, [[0, 2 / 3]] * 4,
               Expected(12, NAMED_SOLID, faces=8, notes="truncated tetrahedron")),
        _entry("fig14", [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]], [[-2, 1], [0, 1], [0, 1], [0, 1]],
               Expected(8, NAMED_SOLID, faces=6, notes="cube")),
        _entry("fig15", TETRAHEDRON_WITH_CENTER, [u, u, u, u, [-2, 0]],
               Expected(14, NAMED_SOLID, faces=12, notes="rhombic dodecahedron")),
        _entry("fig16", TETRAHEDRON_WITH_CENTER, [u, u, u, u, [-0.5, 0]],
               Expected(16, notes="unnamed solid; count recorded from a verified run")),
    ]
    return {e.id: e for e in entries}


GALLERY = _build()


def gallery_ids() -> list[str]:
    return sorted(GALLERY, key=lambda s: int(s[3:]))


def polygon_edges(poly: VPolytope) -> np.ndarray:
    cyc = poly.cycle()
    return np.linalg.norm(np.roll(cyc, -1, axis=0) - cyc, axis=1)


def has_equal_edges(poly: VPolytope, rel: float = 1e-6) -> bool:
    edges = polygon_edges(poly)
    return bool(edges.max() - edges.min() <= rel * edges.max())


def is_regular_polygon(poly: VPolytope, rel: float = 1e-6) -> bool:
    if poly.dim != 2 or not has_equal_edges(poly, rel):
        return False
    cyc = poly.cycle()
    c = cyc.mean(axis=0)
    a = cyc - c
    b = np.roll(a, -1, axis=0)
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0] if cyc.shape[1] == 2 else np.linalg.norm(np.cross(a, b), axis=1)
    angles = np.arctan2(cross, np.sum(a * b, axis=1))
    return bool(angles.max() - angles.min() <= rel * abs(angles.mean()))


def solid_edges(poly: VPolytope, faces: list[list[int]]) -> np.ndarray:
    edges = {tuple(sorted((a, b))) for face in faces for a, b in zip(face, face[1:] + face[:1])}
    V = poly.vertices
    return np.array([np.linalg.norm(V[a] - V[b]) for a, b in sorted(edges)])


def verify_entry(entry: GalleryEntry, poly: VPolytope, rel: float = 1e-6) -> list[str]:
    """Failed golden checks for one computed entry (empty when all pass)."""
    from .render import facets

    exp = entry.expected
    failures = []
    if poly.count != exp.vertex_count:
        failures.append(f"expected {exp.vertex_count} vertices, got {poly.count}")
    if exp.regularity == REGULAR_POLYGON and not is_regular_polygon(poly, rel):
        failures.append("not a regular polygon")
    if exp.regularity == EQUAL_EDGES and not (poly.dim == 2 and has_equal_edges(poly, rel)):
        failures.append("edges are not all equal")
    if exp.regularity == NAMED_SOLID:
        faces = facets(poly)
        edges = solid_edges(poly, faces)
        if exp.faces is not None and len(faces) != exp.faces:
            failures.append(f"expected {exp.faces} faces, got {len(faces)}")
        if poly.count - len(edges) + len(faces) != 2:
            failures.append("Euler characteristic is not 2")
        if edges.max() - edges.min() > rel * edges.max():
            failures.append("edges are not all equal")
    return failures
