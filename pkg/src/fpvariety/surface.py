"""Projective surfaces: exact singular-point checks and isosurface export."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .polyring import SparsePoly


@dataclass(frozen=True)
class ProjectiveSurface:
    """A homogeneous polynomial in ``(x, y, z, t)``."""

    poly: SparsePoly

    def __post_init__(self):
        if self.poly.nvars != 4:
            raise ValueError("projective surfaces live in four homogeneous variables")
        if self.poly.is_zero() or not self.poly.is_homogeneous():
            raise ValueError("surface polynomial must be nonzero and homogeneous")

    @classmethod
    def from_affine(cls, f: SparsePoly) -> "ProjectiveSurface":
        if f.nvars != 3:
            raise ValueError("expected a polynomial in x, y, z")
        return cls(f.homogenize())

    @property
    def degree(self) -> int:
        return self.poly.degree()

    def gradient(self) -> tuple[SparsePoly, ...]:
        return tuple(self.poly.diff(i) for i in range(4))


def verify_singular(s: ProjectiveSurface, point: Sequence) -> bool:
    """All four partials vanish exactly at ``point`` (ints or rationals)."""
    pt = [Fraction(v) for v in point]
    if len(pt) != 4:
        raise ValueError("point needs four homogeneous coordinates")
    if all(v == 0 for v in pt):
        raise ValueError("the zero vector is not a projective point")
    return all(g.evaluate(pt) == 0 for g in s.gradient())


def _normalize(pt: tuple[int, ...]) -> tuple[Fraction, ...]:
    """Scale so the last nonzero coordinate is 1."""
    k = max(i for i, v in enumerate(pt) if v)
    return tuple(Fraction(v, pt[k]) for v in pt)


def search_singular(s: ProjectiveSurface, B: int, at_infinity: bool = False) -> list[tuple]:
    """Integer singular points with coordinates bounded by ``B`` in absolute value.

    The affine chart scans ``(x, y, z, 1)``.  With ``at_infinity`` the plane
    ``t = 0`` is scanned through ``(x, y, 1, 0)``, ``(x, 1, 0, 0)`` and
    ``(1, 0, 0, 0)``.  Points come back as tuples in the scale with last
    nonzero coordinate 1, sorted.
    """
    if B < 1:
        raise ValueError("box bound must be at least 1")
    f = s.poly
    grad = s.gradient()
    r = range(-B, B + 1)
    if at_infinity:
        cands = [(x, y, 1, 0) for x, y in itertools.product(r, r)]
        cands += [(x, 1, 0, 0) for x in r] + [(1, 0, 0, 0)]
    else:
        cands = [(x, y, z, 1) for x, y, z in itertools.product(r, r, r)]
    found = set()
    for pt in cands:
        if f.evaluate(pt) != 0:
            continue
        if all(g.evaluate(pt) == 0 for g in grad):
            found.add(_normalize(pt))
    return sorted(found)


def as_ints(pt: Sequence[Fraction]) -> tuple:
    return tuple(int(v) if Fraction(v).denominator == 1 else v for v in pt)


# --- mesh export -----------------------------------------------------------

@dataclass
class Mesh:
    vertices: np.ndarray
    faces: np.ndarray

    @property
    def empty(self) -> bool:
        return len(self.faces) == 0

    def to_text(self) -> str:
        lines = [f"v {x:.6f} {y:.6f} {z:.6f}" for x, y, z in self.vertices]
        lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in self.faces]
        return "\n".join(lines) + ("\n" if lines else "")

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_text())
        return path


def evaluate_grid(f: SparsePoly, axis: np.ndarray) -> np.ndarray:
    """``f`` sampled on the cube ``axis^3`` (float64), indexed ``[i, j, k] -> (x_i, y_j, z_k)``."""
    if f.nvars != 3:
        raise ValueError("mesh export needs a polynomial in three variables")
    X, Y, Z = np.meshgrid(axis, axis, axis, indexing="ij")
    out = np.zeros_like(X)
    for (a, b, c), coef in f.terms.items():
        out += float(coef) * X ** a * Y ** b * Z ** c
    return out


def export_mesh(f: SparsePoly, box: float = 5.0, resolution: int = 64,
                path: str | Path | None = None) -> Mesh:
    """Marching-cubes triangulation of ``f = 0`` over ``[-box, box]^3``.

    With no sign change in the box an empty mesh is returned (and written)
    with a warning.
    """
    from skimage.measure import marching_cubes

    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    if box <= 0:
        raise ValueError("box must be positive")
    axis = np.linspace(-box, box, resolution)
    vals = evaluate_grid(f, axis)
    if vals.min() > 0 or vals.max() < 0 or vals.min() == vals.max():
        warnings.warn("surface has no zero crossing in the box; mesh is empty", RuntimeWarning)
        mesh = Mesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=int))
    else:
        step = axis[1] - axis[0]
        verts, faces, _, _ = marching_cubes(vals, level=0.0, spacing=(step, step, step))
        mesh = Mesh(verts - box, faces)
    if path is not None:
        mesh.write(path)
    return mesh
