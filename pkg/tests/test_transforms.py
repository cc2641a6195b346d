import itertools

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from intervalhull.errors import (
    AlphaNotBelowOne,
    GammaIsOne,
    NotAffinelyIndependent,
    NotInAffineHull,
    NotIrreducible,
    UnboundedHull,
)
from intervalhull.gallery import TRIANGLE, TRIANGLE_WITH_CENTER
from intervalhull.hull import co_hull, extract_vertices
from intervalhull.model import Instance, IntervalFamily, PointSet
from intervalhull.oracle import member
from intervalhull.transforms import (
    Homothety,
    apply_affine,
    decompose,
    homothet_of_conv,
    homothety_pullback,
    inner_instance,
    outer_instance,
    solve_coefficients,
)
from support import irreducible_family, polygon_area, random_instance, same_vertex_set

F = IntervalFamily.of
SQUARE_INST = Instance.build([[0, 0], [1, 0], [0, 1]], [[-1, 1], [0, 1], [0, 1]])


def test_apply_identity():
    assert apply_affine(SQUARE_INST, np.eye(2)) == SQUARE_INST


def test_apply_projection_merges_points():
    out = apply_affine(SQUARE_INST, [[1, 0], [0, 0]])
    np.testing.assert_array_equal(out.coords, [[0, 0], [1, 0]])
    assert out.family == F([[-1, 2], [0, 1]])
    poly = co_hull(out)
    assert same_vertex_set(poly.vertices, np.array([[0.0, 0.0], [1.0, 0.0]]), 1e-12)


def test_apply_scaling_doubles_vertices():
    out = co_hull(apply_affine(SQUARE_INST, 2 * np.eye(2)))
    assert same_vertex_set(out.vertices, 2 * co_hull(SQUARE_INST).vertices, 1e-12)


def test_apply_merges_labels():
    inst = Instance.build([[0, 0], [1, 0], [0, 1]], [[0, 1]] * 3, labels=["a", "b", "c"])
    out = apply_affine(inst, [[1, 0]])
    assert out.labels == ("a+c", "b")


def test_apply_requires_bounded_hull():
    inst = Instance.build([[0], [1]], [[-np.inf, 0], [0, np.inf]])
    with pytest.raises(UnboundedHull):
        apply_affine(inst, [[1.0]])


def test_solve_coefficients():
    unit = PointSet([[0, 0], [1, 0], [0, 1]])
    np.testing.assert_allclose(solve_coefficients(unit, [0, 0], 0.5), [0.5, 0, 0], atol=1e-14)
    S = PointSet(TRIANGLE)
    nu = solve_coefficients(S, TRIANGLE[0], 0.5)
    np.testing.assert_allclose(nu @ np.array(TRIANGLE), TRIANGLE[0], atol=1e-14)
    assert abs(nu.sum() - 0.5) < 1e-14
    with pytest.raises(NotInAffineHull):
        solve_coefficients(PointSet([[0, 0, 0], [1, 0, 0], [0, 1, 0]]), [0, 0, 1], 0.5)
    with pytest.raises(ValueError):
        solve_coefficients(S, TRIANGLE[0], 0.0)


def test_pullback_identity():
    out = homothety_pullback(SQUARE_INST, [0, 0], 1.0)
    np.testing.assert_allclose(np.c_[out.family.lo, out.family.hi], [[-1, 1], [0, 1], [0, 1]], atol=1e-14)


def test_pullback_quarter():
    inst = Instance.build(TRIANGLE, [[0, 1]] * 3)
    v = np.sum(TRIANGLE, axis=0) / 4
    out = homothety_pullback(inst, v, 0.25)
    np.testing.assert_allclose(np.c_[out.family.lo, out.family.hi], [[0.25, 0.5]] * 3, atol=1e-14)
    expected = v + 0.25 * np.array(TRIANGLE)
    assert same_vertex_set(co_hull(out).vertices, expected, 1e-12)


def test_pullback_reflection():
    out = homothety_pullback(SQUARE_INST, [0, 0], -1.0)
    assert same_vertex_set(co_hull(out).vertices, -co_hull(SQUARE_INST).vertices, 1e-12)
    assert all(iv.lo <= iv.hi for iv in out.family)


def test_homothety_commutation_random():
    rng = np.random.default_rng(41)
    for _ in range(80):
        inst = random_instance(rng, m_max=5, d_max=3)
        if inst.m < 2:
            continue
        delta = float(rng.choice([-1, 1]) * rng.uniform(0.2, 2.0))
        # any coefficients summing to 1 - delta give a centre inside aff S
        lam = rng.normal(size=inst.m)
        lam += (1 - delta - lam.sum()) / inst.m
        v = lam @ inst.coords
        out = co_hull(homothety_pullback(inst, v, delta))
        mapped = v + delta * co_hull(inst).vertices
        assert same_vertex_set(out.vertices, mapped, 1e-8)


def test_homothet_of_conv():
    S = PointSet(TRIANGLE)
    assert homothet_of_conv(S, [0, 0, 0]).family == F([[0, 1]] * 3)
    quarter = homothet_of_conv(S, [0.25] * 3)
    assert quarter.family == F([[0.25, 0.5]] * 3)
    centroid = np.mean(TRIANGLE, axis=0)
    # fixed point v / gamma is the centroid
    expected = centroid + 0.25 * (np.array(TRIANGLE) - centroid)
    assert same_vertex_set(co_hull(quarter).vertices, expected, 1e-12)
    refl = co_hull(homothet_of_conv(S, [2, 0, 0]))
    x1 = np.array(TRIANGLE[0])
    assert same_vertex_set(refl.vertices, 2 * x1 - np.array(TRIANGLE), 1e-12)
    with pytest.raises(GammaIsOne):
        homothet_of_conv(S, [0.5, 0.5, 0])


def test_homothet_contraction_inside_conv():
    rng = np.random.default_rng(42)
    for _ in range(40):
        m, d = int(rng.integers(2, 6)), int(rng.integers(1, 4))
        S = PointSet(rng.normal(size=(m, d)))
        c = rng.dirichlet(np.ones(m)) * rng.uniform(0.05, 0.95)
        base = Instance(S, F([[0, 1]] * m))
        assert all(member(base, x) for x in co_hull(homothet_of_conv(S, c)).vertices)


def test_decompose_hexagon():
    dec = decompose(Instance.build(TRIANGLE, [[0, 2 / 3]] * 3))
    assert dec.outer.ratio == 1.0
    np.testing.assert_allclose(dec.outer.center, [0, 0])
    for h, x in zip(dec.inner, TRIANGLE):
        assert abs(h.ratio - 1 / 3) < 1e-15
        np.testing.assert_allclose(h.center, 2 / 3 * np.array(x))


def test_decompose_pentagon_has_empty_inner():
    dec = decompose(Instance.build([[0, 0], [1, 0], [0, 1]], [[0, 1], [0, 2 / 3], [0, 2 / 3]]))
    ratios = [h.ratio for h in dec.inner]
    np.testing.assert_allclose(ratios, [0, 1 / 3, 1 / 3], atol=1e-15)
    assert dec.inner[0].is_empty and inner_instance(dec, 0) is None
    doc = dec.to_json()
    assert doc["inner"][0]["empty"] is True and "empty" not in doc["inner"][1]


def test_decompose_errors():
    with pytest.raises(NotAffinelyIndependent):
        decompose(Instance.build(TRIANGLE_WITH_CENTER, [[0, 1]] * 4))
    with pytest.raises(NotIrreducible):
        decompose(Instance.build(TRIANGLE, [[0, 3], [0, 2], [0, 5]]))
    with pytest.raises(AlphaNotBelowOne):
        decompose(Instance.build(TRIANGLE, [[0.2, 0.2], [0.3, 0.3], [0.5, 0.5]]))


def test_homothety_json():
    assert Homothety([1, 2], 0.5).to_json() == {"center": [1.0, 2.0], "ratio": 0.5}
    assert Homothety([1, 2], 0).to_json()["empty"] is True
    np.testing.assert_allclose(Homothety([1, 1], 2)([1, 0]), [3, 1])


def _simplex_interior(rng, X, n, margin=0.02):
    lam = rng.dirichlet(np.ones(X.shape[0]), size=4 * n)
    lam = lam[lam.min(axis=1) > margin][:n]
    return lam @ X


def test_decomposition_disjoint_and_cover():
    rng = np.random.default_rng(43)
    for _ in range(15):
        d = int(rng.integers(2, 4))
        X = rng.normal(size=(d + 1, d))
        fam = irreducible_family(rng, d + 1)
        inst = Instance(PointSet(X), fam)
        dec = decompose(inst)
        for h in dec.inner:
            if h.ratio < 0.05:
                continue
            for p in _simplex_interior(rng, X, 10):
                assert not member(inst, h(p))
        inners = [inner_instance(dec, k) for k in range(len(dec.inner))]
        outer = outer_instance(dec)
        for p in _simplex_interior(rng, X, 30, margin=0.0):
            x = dec.outer(p)
            assert member(outer, x)
            assert member(inst, x) or any(i is not None and member(i, x) for i in inners)


def test_area_identity():
    rng = np.random.default_rng(44)
    for _ in range(100):
        X = rng.normal(size=(3, 2))
        fam = irreducible_family(rng, 3)
        poly = co_hull(Instance(PointSet(X), fam))
        ratio = polygon_area(poly.cycle()) / polygon_area(X)
        delta = 1 - fam.alpha
        expected = delta**2 - np.sum(np.maximum(delta - fam.widths, 0) ** 2)
        assert abs(ratio - expected) <= 1e-9 * expected


def test_volume_inclusion_exclusion_3d():
    # the inclusion-exclusion volume of the coefficient polytope holds for
    # every irreducible family, overlapping inner homothets included
    rng = np.random.default_rng(45)
    for _ in range(40):
        X = rng.normal(size=(4, 3))
        fam = irreducible_family(rng, 4)
        poly = co_hull(Instance(PointSet(X), fam))
        ratio = ConvexHull(poly.vertices).volume / ConvexHull(X).volume
        delta, d = 1 - fam.alpha, fam.widths
        expected = sum(
            (-1) ** len(T) * max(delta - sum(d[list(T)]), 0.0) ** 3
            for r in range(5)
            for T in itertools.combinations(range(4), r)
        )
        assert abs(ratio - expected) <= 1e-9 * expected


def test_hexagon_area_ratio():
    poly = co_hull(Instance.build(TRIANGLE, [[0, 2 / 3]] * 3))
    tri = extract_vertices(np.array(TRIANGLE))
    assert abs(polygon_area(poly.cycle()) / polygon_area(tri.cycle()) - 2 / 3) <= 1e-9
