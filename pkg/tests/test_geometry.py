import json
import math
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from udortho.geometry import (
    Polytope,
    ball_volume,
    builtin,
    crofton_constant,
    hull_measure,
    load_polytope,
    polytope_to_dict,
    project,
    random_spherical_polytope,
)
from udortho.grassmann import Subspace
from udortho.orthogonal import coset_rep, random_ortho_batch

KIRKMAN_EXPECTED = {
    tuple(v)
    for v in (
        [(9 * sx, 6 * sy, 6 * sz) for sx, sy, sz in product((1, -1), repeat=3)]
        + [(12 * sx, 4 * sy, 0) for sx, sy in product((1, -1), repeat=2)]
        + [(0, 12 * sy, 8 * sz) for sy, sz in product((1, -1), repeat=2)]
        + [(6 * sx, 0, 12 * sz) for sx, sz in product((1, -1), repeat=2)]
    )
}


# ---------------------------------------------------------------- catalog


def test_builtin_vertex_counts():
    assert builtin("3-cube").vertices.shape == (8, 3)
    assert builtin("3-simplex").vertices.shape == (4, 3)
    assert builtin("k-icosahedron").vertices.shape == (20, 3)
    assert builtin("4-cube").vertices.shape == (16, 4)
    assert builtin("4-simplex").vertices.shape == (5, 4)


def test_kirkman_vertices_exact():
    got = {tuple(int(c) for c in v) for v in builtin("k-icosahedron").vertices}
    assert got == KIRKMAN_EXPECTED


def test_builtin_unknown_label():
    with pytest.raises(ValueError):
        builtin("5-cube")


def test_random_spherical_polytope():
    poly = random_spherical_polytope(3, 50, seed=7)
    assert poly.vertices.shape == (50, 3)
    np.testing.assert_allclose(np.linalg.norm(poly.vertices, axis=1), 1.0, atol=1e-12)
    assert "seed7" in poly.label
    again = random_spherical_polytope(3, 50, seed=7)
    assert np.array_equal(poly.vertices, again.vertices)
    big = random_spherical_polytope(3, 150, seed=8)
    assert big.vertices.shape == (150, 3)
    with pytest.raises(ValueError):
        random_spherical_polytope(5, 50, seed=1)
    with pytest.raises(ValueError):
        random_spherical_polytope(3, 3, seed=1)


def test_polytope_validation():
    with pytest.raises(ValueError):
        Polytope(3, np.array([[1.0, 2.0]]))
    with pytest.raises(ValueError):
        Polytope(2, np.array([[np.nan, 0.0]]))


def test_polytope_json_roundtrip(tmp_path):
    poly = builtin("3-simplex")
    path = tmp_path / "poly.json"
    path.write_text(json.dumps(polytope_to_dict(poly)))
    loaded = load_polytope(path)
    assert loaded.label == poly.label
    assert np.array_equal(loaded.vertices, poly.vertices)
    with pytest.raises(ValueError):
        load_polytope({"label": "no-vertices"})


# ---------------------------------------------------------------- projection


def test_project_coordinate_planes():
    cube = builtin("3-cube")
    onto_xy = project(cube, np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
    assert hull_measure(onto_xy) == pytest.approx(1.0)
    onto_x = project(cube, np.array([[1.0], [0.0], [0.0]]))
    assert hull_measure(onto_x) == pytest.approx(1.0)


def test_project_diagonal_hexagon():
    # shadow of the unit cube along its main diagonal is a hexagon of area sqrt(3)
    cube = builtin("3-cube")
    diag = np.ones(3) / math.sqrt(3.0)
    basis = coset_rep(diag)[:, 1:]
    assert hull_measure(project(cube, basis)) == pytest.approx(math.sqrt(3.0), abs=1e-12)


def test_project_accepts_subspace():
    cube = builtin("3-cube")
    sub = Subspace(basis=np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]))
    assert hull_measure(project(cube, sub)) == pytest.approx(1.0)


def test_project_validation():
    cube = builtin("3-cube")
    with pytest.raises(ValueError):
        project(cube, np.eye(4)[:, :2])
    with pytest.raises(ValueError):
        project(builtin("4-cube"), np.eye(4))  # d = 4 unsupported


# ---------------------------------------------------------------- hull measures


def _cross2(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def brute_area(pts: np.ndarray) -> float:
    """Independent 2-D hull area: drop every point lying in a triangle (or on
    a segment) of the others, then fan out the survivors by angle.

    Exact for grid-valued inputs, where every orientation predicate is an
    exact double-precision product."""
    pts = np.unique(np.asarray(pts, dtype=float), axis=0)
    if len(pts) < 3:
        return 0.0

    def in_triangle(p, a, b, c):
        if _cross2(b - a, c - a) == 0.0:
            return False  # degenerate; collinear containment is on_segment's job
        d1 = _cross2(b - a, p - a)
        d2 = _cross2(c - b, p - b)
        d3 = _cross2(a - c, p - c)
        has_neg = min(d1, d2, d3) < 0.0
        has_pos = max(d1, d2, d3) > 0.0
        return not (has_neg and has_pos)

    def on_segment(p, a, b):
        if _cross2(b - a, p - a) != 0.0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and (
            min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
        )

    keep = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        dominated = any(
            in_triangle(p, a, b, c) for a, b, c in combinations(others, 3)
        ) or any(on_segment(p, a, b) for a, b in combinations(others, 2))
        if not dominated:
            keep.append(p)
    if len(keep) < 3:
        return 0.0
    keep = np.array(keep)
    center = keep.mean(axis=0)
    order = np.argsort(np.arctan2(keep[:, 1] - center[1], keep[:, 0] - center[0]))
    ring = keep[order]
    acc = 0.0
    for p, q in zip(ring, np.roll(ring, -1, axis=0)):
        acc += p[0] * q[1] - q[0] * p[1]
    return abs(acc) / 2.0


def brute_volume(pts: np.ndarray) -> float:
    """Independent 3-D hull volume: find every supporting plane by brute
    force, take the facet polygon area in-plane, and cone over an interior
    point (each plane counted once)."""
    pts = np.unique(np.asarray(pts, dtype=float), axis=0)
    if len(pts) < 4:
        return 0.0
    origin = pts.mean(axis=0)
    seen = set()
    vol = 0.0
    for a, b, c in combinations(range(len(pts)), 3):
        normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        norm = np.linalg.norm(normal)
        if norm < 1e-12:
            continue
        normal = normal / norm
        side = (pts - pts[a]) @ normal
        if side.min() >= -1e-9:
            normal, side = -normal, -side
        if side.max() > 1e-9:
            continue  # not a supporting plane
        key = tuple(np.round(normal, 9)) + (round(float(pts[a] @ normal), 9),)
        if key in seen:
            continue
        seen.add(key)
        on_plane = pts[np.abs(side) <= 1e-9]
        helper = np.eye(3)[np.argmin(np.abs(normal))]
        t1 = np.cross(normal, helper)
        t1 /= np.linalg.norm(t1)
        t2 = np.cross(normal, t1)
        local = np.column_stack([(on_plane - pts[a]) @ t1, (on_plane - pts[a]) @ t2])
        height = float((pts[a] - origin) @ normal)
        vol += brute_area(local) * height / 3.0
    return vol


def test_hull_measure_examples():
    assert hull_measure(np.array([[0.0], [1.0], [0.5]])) == 1.0
    square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    assert hull_measure(square) == pytest.approx(1.0)
    assert hull_measure(builtin("3-cube").vertices) == pytest.approx(1.0)


def test_hull_measure_degenerate_inputs():
    assert hull_measure(np.array([[0.3]])) == 0.0
    collinear = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
    assert hull_measure(collinear) == 0.0
    flat = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]])
    assert hull_measure(flat) == 0.0


grid_coord = st.integers(-80, 80).map(lambda v: v / 8.0)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(grid_coord, grid_coord), min_size=3, max_size=8))
def test_area_against_brute_force(coords):
    # grid coordinates keep every orientation predicate exact, so duplicate
    # and collinear configurations are decided identically by both routes
    pts = np.array(coords)
    assert hull_measure(pts) == pytest.approx(brute_area(pts), abs=1e-12)


def test_volume_against_brute_force():
    rng = np.random.default_rng(5)
    for _ in range(25):
        pts = rng.uniform(-1.0, 1.0, size=(rng.integers(4, 9), 3))
        assert hull_measure(pts) == pytest.approx(brute_volume(pts), abs=1e-9)
    assert brute_volume(builtin("3-cube").vertices) == pytest.approx(1.0)


def test_hull_measure_permutation_invariant():
    rng = np.random.default_rng(11)
    pts = rng.uniform(-5.0, 5.0, size=(12, 2))
    base = hull_measure(pts)
    for _ in range(10):
        assert hull_measure(rng.permutation(pts)) == base


def test_hull_measure_rigid_motion_invariant():
    rng = np.random.default_rng(13)
    pts2 = rng.uniform(-2.0, 2.0, size=(10, 2))
    base2 = hull_measure(pts2)
    pts3 = rng.uniform(-2.0, 2.0, size=(10, 3))
    base3 = hull_measure(pts3)
    for seed in range(5):
        g2 = random_ortho_batch(2, 1, np.random.default_rng(seed))[0]
        shift2 = rng.uniform(-3.0, 3.0, size=2)
        assert hull_measure(pts2 @ g2.T + shift2) == pytest.approx(base2, abs=1e-9)
        g3 = random_ortho_batch(3, 1, np.random.default_rng(seed))[0]
        shift3 = rng.uniform(-3.0, 3.0, size=3)
        assert hull_measure(pts3 @ g3.T + shift3) == pytest.approx(base3, abs=1e-9)


def test_hull_measure_interior_point_monotone():
    rng = np.random.default_rng(17)
    for d in (1, 2, 3):
        pts = rng.uniform(-1.0, 1.0, size=(8, d))
        base = hull_measure(pts)
        centroid = pts.mean(axis=0, keepdims=True)
        assert abs(hull_measure(np.vstack([pts, centroid])) - base) <= 1e-12 * max(1.0, base)


def test_cauchy_cross_check():
    # average shadow area of the unit cube over uniform planes = surface / 4
    rng = np.random.default_rng(123)
    frames = random_ortho_batch(3, 100000, rng)
    verts = builtin("3-cube").vertices
    total = 0.0
    for i in range(frames.shape[0]):
        total += hull_measure(verts @ frames[i][:, 1:])
    mean = total / frames.shape[0]
    assert abs(mean - 1.5) / 1.5 < 0.01


# ---------------------------------------------------------------- constants


def test_ball_volumes():
    assert ball_volume(0) == pytest.approx(1.0)
    assert ball_volume(1) == pytest.approx(2.0)
    assert ball_volume(2) == pytest.approx(math.pi)
    assert ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0)
    with pytest.raises(ValueError):
        ball_volume(-1)


def test_crofton_constants():
    assert crofton_constant(3, 1) == pytest.approx(2.0)
    assert crofton_constant(3, 2) == pytest.approx(2.0)
    assert crofton_constant(4, 3) == pytest.approx(3.0 * math.pi / 4.0)
    assert crofton_constant(4, 3) * (16.0 / (3.0 * math.pi)) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        crofton_constant(3, 3)
    with pytest.raises(ValueError):
        crofton_constant(3, -1)
