"""Polytopes, orthogonal projections, hull measures, and Crofton constants.

The estimation pipeline only ever needs the d-dimensional volume of a
projected vertex cloud for d <= 3, so the measures here stop at interval
length, polygon area, and polyhedron volume.  Degenerate (flat) inputs are
legal everywhere and measure zero.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from math import comb, gamma, pi, sqrt
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .grassmann import Subspace

# Cross products below 1e-12 x (coordinate scale)^2 count as collinear.
_FLAT_REL_TOL = 1e-12

BUILTIN_LABELS = ("3-cube", "3-simplex", "k-icosahedron", "4-cube", "4-simplex")


@dataclass
class Polytope:
    """Finite vertex list in R^n; the convex hull is implied."""

    n: int
    vertices: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != self.n:
            raise ValueError(f"vertices must be (count, {self.n}), got shape {v.shape}")
        if v.shape[0] < 1:
            raise ValueError("need at least one vertex")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        self.vertices = v

    def scaled(self, factor: float) -> "Polytope":
        return Polytope(self.n, self.vertices * factor, f"{self.label}*{factor:g}")


def _cube(n: int) -> np.ndarray:
    return np.array(list(product((0.0, 1.0), repeat=n)))


def _simplex(n: int) -> np.ndarray:
    return np.vstack([np.zeros(n), np.eye(n)])


def _kirkman_icosahedron() -> np.ndarray:
    rows = []
    for sx, sy, sz in product((1, -1), repeat=3):
        rows.append((9 * sx, 6 * sy, 6 * sz))
    for sx, sy in product((1, -1), repeat=2):
        rows.append((12 * sx, 4 * sy, 0))
    for sy, sz in product((1, -1), repeat=2):
        rows.append((0, 12 * sy, 8 * sz))
    for sx, sz in product((1, -1), repeat=2):
        rows.append((6 * sx, 0, 12 * sz))
    return np.array(rows, dtype=float)


def builtin(label: str) -> Polytope:
    """Catalog polytope by label: unit cubes, standard simplices, and the
    20-vertex Kirkman icosahedron."""
    if label == "3-cube":
        return Polytope(3, _cube(3), label)
    if label == "4-cube":
        return Polytope(4, _cube(4), label)
    if label == "3-simplex":
        return Polytope(3, _simplex(3), label)
    if label == "4-simplex":
        return Polytope(4, _simplex(4), label)
    if label == "k-icosahedron":
        return Polytope(3, _kirkman_icosahedron(), label)
    raise ValueError(f"unknown polytope label {label!r}")


def random_spherical_polytope(n: int, count: int, seed: int) -> Polytope:
    """`count` uniform points on S^(n-1); the seed is part of the label."""
    if n not in (3, 4):
        raise ValueError(f"random spherical polytopes are built for n in (3, 4), got {n}")
    if count < n + 1:
        raise ValueError(f"need at least {n + 1} vertices, got {count}")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((count, n))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    return Polytope(n, v, f"r-polytope-{n}d-{count}v-seed{seed}")


def load_polytope(source: str | Path | dict) -> Polytope:
    """Polytope from a JSON document {"n": ..., "label": ..., "vertices": [[...]]}."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)
    else:
        doc = source
    if not isinstance(doc, dict):
        raise ValueError("polytope document must be a JSON object")
    missing = {"n", "vertices"} - doc.keys()
    if missing:
        raise ValueError(f"polytope document lacks keys: {sorted(missing)}")
    return Polytope(int(doc["n"]), np.asarray(doc["vertices"], dtype=float), str(doc.get("label", "")))


def polytope_to_dict(p: Polytope) -> dict:
    return {"n": p.n, "label": p.label, "vertices": p.vertices.tolist()}


def project(p: Polytope, sub: Subspace | np.ndarray) -> np.ndarray:
    """Vertex coordinates in the orthonormal basis of the target subspace.

    Convexity makes this enough: the hull of the projected vertices is the
    projection of the hull.
    """
    basis = sub.basis if isinstance(sub, Subspace) else np.asarray(sub, dtype=float)
    if basis.ndim != 2 or basis.shape[0] != p.n:
        raise ValueError(f"basis must be ({p.n}, d), got shape {basis.shape}")
    d = basis.shape[1]
    if not 1 <= d <= 3:
        raise ValueError(f"projection dimension must be 1..3, got {d}")
    return p.vertices @ basis


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(pts: np.ndarray, tol: float) -> list[np.ndarray]:
    """Monotone-chain hull vertices in counterclockwise order."""
    lower: list[np.ndarray] = []
    for q in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= tol:
            lower.pop()
        lower.append(q)
    upper: list[np.ndarray] = []
    for q in pts[::-1]:
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= tol:
            upper.pop()
        upper.append(q)
    return lower[:-1] + upper[:-1]


def _area_2d(pts: np.ndarray) -> float:
    pts = np.unique(pts, axis=0)
    if pts.shape[0] < 3:
        return 0.0
    scale = max(1.0, float(np.abs(pts).max()))
    hull = _hull_2d(pts, _FLAT_REL_TOL * scale * scale)
    if len(hull) < 3:
        return 0.0
    acc = 0.0
    for p, q in zip(hull, hull[1:] + hull[:1]):
        acc += p[0] * q[1] - q[0] * p[1]
    return abs(acc) / 2.0


def _volume_3d(pts: np.ndarray) -> float:
    pts = np.unique(pts, axis=0)
    if pts.shape[0] < 4:
        return 0.0
    try:
        return float(ConvexHull(pts).volume)
    except QhullError:
        # flat or lower-dimensional input
        return 0.0


def hull_measure(pts: np.ndarray) -> float:
    """d-volume of the convex hull of a point cloud, d = pts.shape[1] in 1..3."""
    pts = np.asarray(pts, dtype=float)
    if pts.ndim != 2:
        raise ValueError(f"points must be a (count, d) array, got shape {pts.shape}")
    d = pts.shape[1]
    if d == 1:
        return float(pts.max() - pts.min())
    if d == 2:
        return _area_2d(pts)
    if d == 3:
        return _volume_3d(pts)
    raise ValueError(f"hull measures are implemented for d in 1..3, got {d}")


def ball_volume(j: int) -> float:
    """Volume of the j-dimensional unit ball."""
    if j < 0:
        raise ValueError(f"dimension must be >= 0, got {j}")
    return pi ** (j / 2.0) / gamma(j / 2.0 + 1.0)


def crofton_constant(n: int, k: int) -> float:
    """Normalization c = binom(n, k) b_n / (b_k b_{n-k}) turning subspace
    averages of projection volumes into intrinsic volumes."""
    if n < 1 or not 0 <= k <= n - 1:
        raise ValueError(f"need n >= 1 and 0 <= k <= n-1, got n={n}, k={k}")
    return comb(n, k) * ball_volume(n) / (ball_volume(k) * ball_volume(n - k))


def simplex_mean_projection_area() -> float:
    """Mean shadow area of the standard 3-simplex: surface area / 4."""
    return (1.5 + sqrt(3.0) / 2.0) / 4.0


def cube_mean_projection_length_4d() -> float:
    """Mean 1-D shadow of the unit 4-cube: E sum |u_i| = 16 / (3 pi) on S^3."""
    return 16.0 / (3.0 * pi)
