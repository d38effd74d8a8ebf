"""Proportional-edge proximity regions and their Gamma-1 duals.

For a point x of the triangle T, let v(x) be the vertex whose barycentric
coordinate at x is largest (smallest index on ties) and let
``t(x) = 1 - b_v(x)`` be x's distance from that vertex as a fraction of the
height.  The region N_r(x) is the part of T on the vertex side of the line
parallel to the opposite edge at height fraction ``r * t(x)``:

    z in N_r(x)  <=>  1 - b_v(z) <= r * t(x).

Comparisons are plain, closed double comparisons.  ``r = inf`` gives N = T,
and a point sitting on a vertex catches only itself.
"""

from __future__ import annotations

import math
from typing import List, NamedTuple

import numpy as np

from .errors import DegeneratePoint, DomainError, OutsideDomain
from .geometry import Triangle


def check_r(r) -> float:
    r = float(r)
    if math.isnan(r) or r < 1.0:
        raise DomainError(f"expansion parameter must satisfy r >= 1, got {r}")
    return r


def parse_r(text) -> float:
    """Read r from a number or the spelling "inf"."""
    if isinstance(text, str) and text.strip().lower() in ("inf", "infinity", "+inf"):
        return math.inf
    return check_r(float(text))


def _bary_inside(tri: Triangle, points, what: str) -> np.ndarray:
    b = tri.barycentric_many(points)
    out = (b < 0.0).any(axis=1)
    if out.any():
        i = int(np.argmax(out))
        raise OutsideDomain(f"{what} {i} lies outside the triangle", index=i)
    return b


def vertex_regions(bary: np.ndarray) -> np.ndarray:
    """0-based vertex-region index from barycentric rows (first max wins)."""
    return np.argmax(bary, axis=1)


def vertex_region(tri: Triangle, x) -> int:
    """1-based index of the vertex region holding x."""
    b = _bary_inside(tri, x, "point")
    return int(vertex_regions(b)[0]) + 1


def catch_matrix(bx: np.ndarray, bz: np.ndarray, r: float) -> np.ndarray:
    """``M[i, j] = (z_j in N_r(x_i))`` from barycentric rows of x and z.

    Points on a vertex (``t == 0``) catch only points with the same
    barycentric row; the caller removes self-loops if needed.
    """
    v = vertex_regions(bx)
    t = 1.0 - bx[np.arange(bx.shape[0]), v]
    lhs = 1.0 - bz.T[v]  # lhs[i, j] = 1 - b_{v(x_i)}(z_j)
    if math.isinf(r):
        m = np.ones(lhs.shape, dtype=bool)
    else:
        m = lhs <= (r * t)[:, None]
    at_vertex = t == 0.0
    if at_vertex.any():
        same = (bx[at_vertex][:, None, :] == bz[None, :, :]).all(axis=2)
        m[at_vertex] = same
    return m


def in_proximity_region(tri: Triangle, r, x, z) -> bool:
    """Is z in N_r(x)?"""
    r = check_r(r)
    bx = _bary_inside(tri, x, "x")
    bz = _bary_inside(tri, z, "z")
    return bool(catch_matrix(bx, bz, r)[0, 0])


def in_gamma1_region(tri: Triangle, r, x, z) -> bool:
    """Is z in Gamma1_r(x), i.e. is x in N_r(z)?"""
    return in_proximity_region(tri, r, z, x)


class ConvexPolygon(NamedTuple):
    vertices: np.ndarray  # (k, 2), counter-clockwise

    @property
    def area(self) -> float:
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))

    def to_json(self) -> List[List[float]]:
        return self.vertices.tolist()


def proximity_polygon(tri: Triangle, r, x) -> ConvexPolygon:
    """N_r(x) as an explicit polygon for finite r.

    It is the triangle with apex y_v scaled by ``min(1, r t(x))``.
    """
    r = check_r(r)
    if math.isinf(r):
        raise DomainError("proximity_polygon needs a finite r; N is the whole triangle at r = inf")
    b = _bary_inside(tri, x, "x")
    v = int(vertex_regions(b)[0])
    t = 1.0 - b[0, v]
    if t == 0.0:
        raise DegeneratePoint("x sits on a vertex; its region is the point itself")
    s = min(1.0, r * t)
    Y = tri.vertices
    if s >= 1.0:
        return ConvexPolygon(np.array(Y))
    apex = Y[v]
    j, k = (v + 1) % 3, (v + 2) % 3
    verts = np.array([apex, apex + s * (Y[j] - apex), apex + s * (Y[k] - apex)])
    return ConvexPolygon(verts)


def quadrilateral_region(tri: Triangle, i: int) -> np.ndarray:
    """Vertices (y_i, M_k, M_C, M_j) of the vertex region of 0-based vertex i,
    built from the edge midpoints and the centroid."""
    Y = tri.vertices
    j, k = (i + 1) % 3, (i + 2) % 3
    m_ij = 0.5 * (Y[i] + Y[j])
    m_ik = 0.5 * (Y[i] + Y[k])
    return np.array([Y[i], m_ij, tri.centroid, m_ik])
