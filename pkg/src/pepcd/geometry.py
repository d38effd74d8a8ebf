"""Planar primitives: triangles, barycentric coordinates, affine maps,
convex hulls and Delaunay triangulations.

Orientation and in-circle tests run in double precision behind a forward
error bound and fall back to exact rational arithmetic when the sign is not
certified, so every combinatorial decision is exact for finite doubles.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from .errors import DegenerateInput, OutsideDomain

SQRT3 = math.sqrt(3.0)
TE_VERTICES = ((0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2.0))


class Point2(NamedTuple):
    x: float
    y: float


class Barycentric(NamedTuple):
    b1: float
    b2: float
    b3: float


def as_points(points) -> np.ndarray:
    """Coerce to a float array of shape (n, 2), rejecting NaN and Inf."""
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1 and arr.size == 2:
        arr = arr.reshape(1, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DegenerateInput(f"expected points of shape (n, 2), got {arr.shape}")
    bad = ~np.isfinite(arr).all(axis=1)
    if bad.any():
        raise DegenerateInput(f"non-finite coordinates at index {int(np.argmax(bad))}")
    return arr


# ---------------------------------------------------------------------------
# predicates

# forward error bounds for the plain double evaluations (Shewchuk 1997)
_EPS = 2.0 ** -53
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_BOUND = (10.0 + 96.0 * _EPS) * _EPS


def _sign(v) -> int:
    return int(v > 0) - int(v < 0)


def orient2d(a, b, c, exact: bool = True) -> int:
    """Sign of twice the signed area of (a, b, c): +1 left turn, -1 right turn."""
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    if not exact:
        return _sign(det)
    bound = _CCW_BOUND * (abs(detleft) + abs(detright))
    if det > bound or -det > bound:
        return _sign(det)
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (a[0], a[1], b[0], b[1], c[0], c[1]))
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def incircle(a, b, c, d, exact: bool = True) -> int:
    """+1 if d is inside the circle through the CCW triangle (a, b, c),
    0 if on it, -1 outside."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    bc = bdx * cdy - cdx * bdy
    ca = cdx * ady - adx * cdy
    ab = adx * bdy - bdx * ady
    det = alift * bc + blift * ca + clift * ab
    if not exact:
        return _sign(det)
    perm = (abs(bdx * cdy) + abs(cdx * bdy)) * alift \
        + (abs(cdx * ady) + abs(adx * cdy)) * blift \
        + (abs(adx * bdy) + abs(bdx * ady)) * clift
    bound = _ICC_BOUND * perm
    if det > bound or -det > bound:
        return _sign(det)
    dx, dy = Fraction(d[0]), Fraction(d[1])
    rows = []
    for p in (a, b, c):
        x, y = Fraction(p[0]) - dx, Fraction(p[1]) - dy
        rows.append((x, y, x * x + y * y))
    (ax_, ay_, al), (bx_, by_, bl), (cx_, cy_, cl) = rows
    return _sign(al * (bx_ * cy_ - cx_ * by_)
                 + bl * (cx_ * ay_ - ax_ * cy_)
                 + cl * (ax_ * by_ - bx_ * ay_))


# ---------------------------------------------------------------------------
# triangles


class Triangle:
    """A non-degenerate triangle with counter-clockwise vertices.

    If the vertices are given clockwise, the second and third are swapped so
    that ``vertices[0]`` is always the first input vertex.
    """

    __slots__ = ("vertices", "swapped", "_det", "_v0", "_v1")

    def __init__(self, y1, y2, y3):
        v = as_points([y1, y2, y3])
        o = orient2d(v[0], v[1], v[2])
        if o == 0:
            raise DegenerateInput("triangle vertices are collinear")
        self.swapped = o < 0
        if self.swapped:
            v = v[[0, 2, 1]]
        v.setflags(write=False)
        self.vertices = v
        self._v0 = v[1] - v[0]
        self._v1 = v[2] - v[0]
        self._det = self._v0[0] * self._v1[1] - self._v1[0] * self._v0[1]

    @classmethod
    def from_array(cls, arr) -> "Triangle":
        a = np.asarray(arr, dtype=float).reshape(3, 2)
        return cls(a[0], a[1], a[2])

    def __repr__(self) -> str:
        pts = ", ".join(f"({x!r}, {y!r})" for x, y in self.vertices)
        return f"Triangle({pts})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangle) and np.array_equal(self.vertices, other.vertices)

    def __hash__(self) -> int:
        return hash(self.vertices.tobytes())

    @property
    def area(self) -> float:
        return 0.5 * self._det

    @property
    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def edge_midpoint(self, i: int) -> np.ndarray:
        """Midpoint of the edge opposite vertex ``i`` (0-based)."""
        j, k = [m for m in range(3) if m != i]
        return 0.5 * (self.vertices[j] + self.vertices[k])

    def barycentric_many(self, points) -> np.ndarray:
        """Barycentric coordinates, shape (n, 3).  Vertices map exactly to unit rows."""
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        y1 = self.vertices[0]
        v0, v1 = self._v0, self._v1
        wx = p[:, 0] - y1[0]
        wy = p[:, 1] - y1[1]
        b2 = (wx * v1[1] - v1[0] * wy) / self._det
        b3 = (v0[0] * wy - wx * v0[1]) / self._det
        out = np.empty((p.shape[0], 3))
        out[:, 0] = 1.0 - b2 - b3
        out[:, 1] = b2
        out[:, 2] = b3
        return out

    def cartesian(self, bary) -> np.ndarray:
        b = np.asarray(bary, dtype=float)
        return b @ self.vertices

    def contains_many(self, points, tol: float = 0.0) -> np.ndarray:
        """Closed-triangle membership: every barycentric coordinate >= -tol."""
        return (self.barycentric_many(points) >= -tol).all(axis=1)

    def contains(self, p, tol: float = 0.0) -> bool:
        return bool(self.contains_many(p, tol)[0])


def equilateral() -> Triangle:
    """The standard triangle with vertices (0,0), (1,0), (1/2, sqrt3/2)."""
    return Triangle(*TE_VERTICES)


def barycentric(tri: Triangle, p) -> Barycentric:
    return Barycentric(*(float(v) for v in tri.barycentric_many(p)[0]))


# ---------------------------------------------------------------------------
# affine maps


@dataclass(frozen=True)
class AffineMap:
    """``p -> linear @ p + shift``."""

    linear: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        lin = np.array(self.linear, dtype=float).reshape(2, 2)
        sh = np.array(self.shift, dtype=float).reshape(2)
        if np.linalg.det(lin) == 0.0:
            raise DegenerateInput("affine map is singular")
        lin.setflags(write=False)
        sh.setflags(write=False)
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "shift", sh)

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(np.eye(2), np.zeros(2))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def __call__(self, points) -> np.ndarray:
        p = np.asarray(points, dtype=float)
        return p @ self.linear.T + self.shift

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self after inner``."""
        return AffineMap(self.linear @ inner.linear, self.linear @ inner.shift + self.shift)

    def inverse(self) -> "AffineMap":
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.shift)

    def apply_triangle(self, tri: Triangle) -> Triangle:
        return Triangle.from_array(self(tri.vertices))


def standardize_map(tri: Triangle) -> AffineMap:
    """Affine map sending y1 -> (0,0), y2 -> (1,0), y3 -> (1/2, sqrt3/2).

    The triangle is already counter-clockwise, so no reflection is needed.
    For y1 = (0,0), y2 = (1,0), y3 = (c1, c2) this is
    ``(u, v) -> (u + (1 - 2 c1) v / (2 c2), sqrt3 v / (2 c2))``.
    """
    y = tri.vertices
    V = np.column_stack([y[1] - y[0], y[2] - y[0]])
    E = np.array([[1.0, 0.5], [0.0, SQRT3 / 2.0]])
    lin = E @ np.linalg.inv(V)
    return AffineMap(lin, -lin @ y[0])


# ---------------------------------------------------------------------------
# convex hull


def _distinct_order(pts: np.ndarray) -> List[int]:
    """Indices of distinct points sorted lexicographically; first index wins."""
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    keep: List[int] = []
    last = None
    for i in order:
        key = (pts[i, 0], pts[i, 1])
        if key != last:
            keep.append(int(i))
            last = key
        elif int(i) < keep[-1]:
            keep[-1] = int(i)
    return keep


def convex_hull(points, exact: bool = True) -> List[int]:
    """Counter-clockwise convex hull, collinear boundary points included.

    The list starts at the lexicographically smallest point.
    """
    arr = as_points(points)
    order = _distinct_order(arr)
    pts = arr.tolist()
    if len(order) < 3:
        raise DegenerateInput("need at least 3 distinct points")

    def chain(seq):
        out: List[int] = []
        for i in seq:
            while len(out) >= 2 and orient2d(pts[out[-2]], pts[out[-1]], pts[i], exact) < 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(order[::-1])
    if len(lower) == len(order) and all(
            orient2d(pts[order[0]], pts[order[-1]], pts[i], exact) == 0 for i in order):
        raise DegenerateInput("all points are collinear")
    hull = lower[:-1] + upper[:-1]
    return hull


# ---------------------------------------------------------------------------
# Delaunay triangulation

_INF = -1  # the vertex at infinity


@dataclass
class Triangulation:
    sites: np.ndarray
    triangles: np.ndarray  # (J, 3) int, counter-clockwise, smallest index first
    hull: List[int]
    _tris: List[Triangle] = field(default=None, repr=False, compare=False)

    @property
    def n_triangles(self) -> int:
        return int(self.triangles.shape[0])

    def triangle(self, j: int) -> Triangle:
        return self.triangle_objects()[j]

    def triangle_objects(self) -> List[Triangle]:
        if self._tris is None:
            self._tris = [Triangle.from_array(self.sites[t]) for t in self.triangles]
        return self._tris

    def areas(self) -> np.ndarray:
        return np.array([t.area for t in self.triangle_objects()])

    def weights(self) -> np.ndarray:
        """Triangle areas relative to the hull area."""
        a = self.areas()
        return a / a.sum()

    def locate(self, points, tol: float = 1e-12) -> np.ndarray:
        """Index of the lowest-numbered closed triangle holding each point.

        Points that no triangle holds exactly (rounding on a shared or hull
        edge) go to the triangle with the largest minimum barycentric
        coordinate if that is at least ``-tol``; otherwise -1.
        """
        p = as_points(points) if len(points) else np.zeros((0, 2))
        out = np.full(p.shape[0], -1, dtype=np.int64)
        best = np.full(p.shape[0], -np.inf)
        best_j = np.full(p.shape[0], -1, dtype=np.int64)
        for j, tri in enumerate(self.triangle_objects()):
            mb = tri.barycentric_many(p).min(axis=1)
            hit = (out < 0) & (mb >= 0.0)
            out[hit] = j
            better = mb > best
            best[better] = mb[better]
            best_j[better] = j
        fix = (out < 0) & (best >= -tol)
        out[fix] = best_j[fix]
        return out

    def to_json(self) -> dict:
        return {"sites": self.sites.tolist(), "triangles": self.triangles.tolist()}

    @classmethod
    def from_json(cls, obj) -> "Triangulation":
        sites = as_points(obj["sites"])
        tris = np.asarray(obj["triangles"], dtype=np.int64).reshape(-1, 3)
        return cls(sites, tris, convex_hull(sites))


def _canon(t: Tuple[int, int, int]) -> Tuple[int, int, int]:
    i = t.index(min(t))
    return t[i:] + t[:i]


class _BowyerWatson:
    """Incremental insertion with a single symbolic vertex at infinity.

    A triangle (a, b, INF) stands for the unbounded region beyond hull edge
    a->b.  Its circumcircle degenerates to the open half-plane left of a->b
    plus the open segment ab, which is the limit of a finite super-triangle
    pushed to infinity and keeps the hull exact.
    """

    def __init__(self, pts: np.ndarray, exact: bool):
        self.p = [(float(x), float(y)) for x, y in pts]
        self.exact = exact
        self.tris: set = set()

    def _conflict(self, t, q) -> bool:
        a, b, c = t
        P = self.p
        if c == _INF:
            o = orient2d(P[a], P[b], P[q], self.exact)
            if o > 0:
                return True
            if o < 0:
                return False
            # collinear: inside the open segment ab?
            ax, ay = P[a]
            bx, by = P[b]
            qx, qy = P[q]
            return (min(ax, bx) <= qx <= max(ax, bx) and min(ay, by) <= qy <= max(ay, by)
                    and P[q] != P[a] and P[q] != P[b])
        return incircle(P[a], P[b], P[c], P[q], self.exact) > 0

    @staticmethod
    def _rot(t):
        # keep INF in the last slot so the conflict test can find it
        a, b, c = t
        if a == _INF:
            return (b, c, a)
        if b == _INF:
            return (c, a, b)
        return t

    def start(self, i, j, k):
        if orient2d(self.p[i], self.p[j], self.p[k], self.exact) < 0:
            j, k = k, j
        self.tris = {(i, j, k), (j, i, _INF), (k, j, _INF), (i, k, _INF)}

    def insert(self, q: int):
        bad = [t for t in self.tris if self._conflict(t, q)]
        edges = {}
        for t in bad:
            for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                edges[e] = edges.get(e, 0) + 1
        boundary = [e for e in edges if (e[1], e[0]) not in edges]
        for t in bad:
            self.tris.discard(t)
        for a, b in boundary:
            self.tris.add(self._rot((a, b, q)))

    def finite(self) -> List[Tuple[int, int, int]]:
        return [t for t in self.tris if _INF not in t]


def _cocircular_cells(tris: List[Tuple[int, int, int]], P, exact: bool):
    """Group triangles joined across edges whose quadrilateral is cocircular."""
    parent = list(range(len(tris)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner = {}
    for ti, t in enumerate(tris):
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            owner[e] = ti
    for (a, b), ti in owner.items():
        tj = owner.get((b, a))
        if tj is None or ti > tj:
            continue
        t = tris[ti]
        d = [v for v in tris[tj] if v != a and v != b][0]
        if incircle(P[t[0]], P[t[1]], P[t[2]], P[d], exact) == 0:
            parent[find(ti)] = find(tj)
    cells = {}
    for ti in range(len(tris)):
        cells.setdefault(find(ti), []).append(ti)
    return [c for c in cells.values() if len(c) > 1]


def _cell_boundary(cell_tris) -> List[int]:
    """CCW boundary cycle of a union of triangles forming a convex polygon."""
    edges = set()
    for t in cell_tris:
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            edges.add(e)
    bnd = {a: b for (a, b) in edges if (b, a) not in edges}
    start = min(bnd)
    cycle = [start]
    while True:
        nxt = bnd[cycle[-1]]
        if nxt == start:
            break
        cycle.append(nxt)
    return cycle


def _lexmin_split(cycle: List[int]) -> List[Tuple[int, int, int]]:
    """Triangulation of a convex cocircular cell with the smallest sorted
    triangle list.

    Any set of pairwise non-crossing triangles on points in convex position
    extends to a triangulation, so taking triples in sorted order and keeping
    each one that crosses nothing kept so far is optimal.
    """
    k = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    kept: List[Tuple[int, int, int]] = []  # cycle positions, ascending

    def fits(t, u):
        # u lies within one closed arc between consecutive corners of t
        a, b, c = t
        return all(a <= x <= b for x in u) or all(b <= x <= c for x in u) or \
            all(x >= c or x <= a for x in u)

    for trip in combinations(sorted(cycle), 3):
        t = tuple(sorted(pos[v] for v in trip))
        if all(fits(s, t) and fits(t, s) for s in kept):
            kept.append(t)
            if len(kept) == k - 2:
                break
    # positions ascend counter-clockwise, so each triple is already CCW
    return [_canon(tuple(cycle[i] for i in t)) for t in kept]


def delaunay(points, exact: bool = True) -> Triangulation:
    """Delaunay triangulation of distinct, not-all-collinear sites.

    Where four or more sites are cocircular the triangulation is not unique;
    each cocircular cell is then split so that the sorted triangle list is
    lexicographically smallest.
    """
    pts = as_points(points)
    n = pts.shape[0]
    if n < 3:
        raise DegenerateInput("need at least 3 points")
    seen = {}
    for i, (x, y) in enumerate(pts):
        key = (float(x), float(y))
        if key in seen:
            raise DegenerateInput(f"duplicate site at index {i} (same as {seen[key]})")
        seen[key] = i
    hull = convex_hull(pts, exact)
    P = [(float(x), float(y)) for x, y in pts]
    # sites 0 and 1 are distinct and not every site is on their line
    k = next(k for k in range(2, n) if orient2d(P[0], P[1], P[k], exact) != 0)
    first = (0, 1, k)
    bw = _BowyerWatson(pts, exact)
    bw.start(*first)
    for q in range(n):
        if q not in first:
            bw.insert(q)
    tris = [_canon(t) for t in bw.finite()]
    cells = _cocircular_cells(tris, P, exact)
    if cells:
        merged = {i for cell in cells for i in cell}
        split = []
        for cell in cells:
            split += _lexmin_split(_cell_boundary([tris[i] for i in cell]))
        tris = [t for i, t in enumerate(tris) if i not in merged] + split
    tris.sort(key=lambda t: (sorted(t), t))
    arr = np.array(tris, dtype=np.int64).reshape(-1, 3)
    return Triangulation(pts, arr, hull)


def check_delaunay(tri: Triangulation, exact: bool = True) -> List[Tuple[int, int]]:
    """(triangle, site) pairs violating the empty-circumcircle property."""
    P = [(float(x), float(y)) for x, y in tri.sites]
    bad = []
    for j, (a, b, c) in enumerate(tri.triangles):
        for q in range(len(P)):
            if q in (a, b, c):
                continue
            if incircle(P[a], P[b], P[c], P[q], exact) > 0:
                bad.append((j, q))
    return bad


def interior_and_hull_counts(points) -> Tuple[int, int]:
    """(i, h): sites strictly inside the hull and sites on its boundary."""
    hull = convex_hull(points)
    n = len(_distinct_order(as_points(points)))
    return n - len(hull), len(hull)


# ---------------------------------------------------------------------------
# IO


def read_points_csv(path_or_buf) -> np.ndarray:
    """Read "x,y" rows; a literal "x,y" header line is skipped."""
    if hasattr(path_or_buf, "read"):
        text = path_or_buf.read()
    else:
        with open(path_or_buf, newline="") as fh:
            text = fh.read()
    rows = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if lineno == 1 and [c.strip().lower() for c in row] == ["x", "y"]:
            continue
        if len(row) != 2:
            raise DegenerateInput(f"line {lineno}: expected 2 fields, got {len(row)}")
        try:
            rows.append((float(row[0]), float(row[1])))
        except ValueError:
            raise DegenerateInput(f"line {lineno}: not a number: {row!r}") from None
    if not rows:
        return np.zeros((0, 2))
    return as_points(rows)


def write_points_csv(points, path_or_buf, header: bool = True) -> None:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    lines = ["x,y"] if header else []
    lines += [f"{x:.17g},{y:.17g}" for x, y in pts]
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_buf, "write"):
        path_or_buf.write(text)
    else:
        with open(path_or_buf, "w", newline="\n") as fh:
            fh.write(text)


def triangulation_json(tri: Triangulation) -> str:
    return json.dumps(tri.to_json())
