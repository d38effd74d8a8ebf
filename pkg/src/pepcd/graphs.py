"""The proximity catch digraph, its AND/OR graphs, densities and domination.

Arcs only join points of the same Delaunay triangle: a proximity region is
confined to the triangle holding its centre, so it never reaches another one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DegenerateInput, OutsideDomain, TooFewVertices
from .geometry import Triangle, Triangulation, as_points, delaunay
from .kinds import Kind
from .proximity import catch_matrix, check_r


@dataclass(frozen=True)
class DigraphAdjacency:
    arcs: np.ndarray  # (n, n) bool, diagonal False

    @property
    def n(self) -> int:
        return int(self.arcs.shape[0])

    @property
    def arc_count(self) -> int:
        return int(self.arcs.sum())

    def to_json(self) -> dict:
        ii, jj = np.nonzero(self.arcs)
        return {"n": self.n, "arcs": [[int(i), int(j)] for i, j in zip(ii, jj)]}


@dataclass(frozen=True)
class EdgeSet:
    edges: np.ndarray  # (n, n) bool, symmetric, diagonal False
    kind: Optional[Kind] = None

    @property
    def n(self) -> int:
        return int(self.edges.shape[0])

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.edges, 1).sum())

    def edge_list(self) -> List[Tuple[int, int]]:
        ii, jj = np.nonzero(np.triu(self.edges, 1))
        return [(int(i), int(j)) for i, j in zip(ii, jj)]

    def to_json(self) -> dict:
        return {"n": self.n, "kind": None if self.kind is None else self.kind.value,
                "edges": [list(e) for e in self.edge_list()]}


def as_triangulation(anchors) -> Triangulation:
    """Anchors may be a Triangulation, a Triangle, or an array of points."""
    if isinstance(anchors, Triangulation):
        return anchors
    if isinstance(anchors, Triangle):
        v = anchors.vertices
        return Triangulation(np.array(v), np.array([[0, 1, 2]]), [0, 1, 2], [anchors])
    pts = as_points(anchors)
    if pts.shape[0] == 3:
        tri = Triangle.from_array(pts)
        return as_triangulation(tri)
    return delaunay(pts)


@dataclass
class PcdInstance:
    """A built proximity catch digraph.

    ``sample`` holds the retained points; ``excluded`` the input indices of
    points dropped for lying outside the hull; ``assignment`` the triangle
    index of each retained point.
    """

    triangulation: Triangulation
    sample: np.ndarray
    r: float
    assignment: np.ndarray
    digraph: DigraphAdjacency
    excluded: List[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return int(self.sample.shape[0])

    @property
    def anchors(self) -> np.ndarray:
        return self.triangulation.sites


def arc_matrix_single(tri: Triangle, points: np.ndarray, r: float) -> np.ndarray:
    b = tri.barycentric_many(points)
    m = catch_matrix(b, b, r)
    np.fill_diagonal(m, False)
    return m


def build_pcd(anchors, sample, r, drop_outside: bool = False,
              locate_tol: float = 1e-12) -> PcdInstance:
    """Build the digraph with arc i -> j iff X_j is in N_r(X_i).

    Points outside the hull raise :class:`OutsideDomain` carrying the point
    index unless ``drop_outside`` is set, in which case they are skipped and
    listed in ``excluded``.
    """
    r = check_r(r)
    tri = as_triangulation(anchors)
    pts = as_points(sample) if len(sample) else np.zeros((0, 2))
    loc = tri.locate(pts, tol=locate_tol) if pts.shape[0] else np.zeros(0, dtype=np.int64)
    outside = np.nonzero(loc < 0)[0]
    if outside.size and not drop_outside:
        i = int(outside[0])
        raise OutsideDomain(f"sample point {i} lies outside the convex hull of the anchors",
                            index=i)
    keep = loc >= 0
    pts = pts[keep]
    loc = loc[keep]
    n = pts.shape[0]
    arcs = np.zeros((n, n), dtype=bool)
    tris = tri.triangle_objects()
    for j in np.unique(loc):
        idx = np.nonzero(loc == j)[0]
        arcs[np.ix_(idx, idx)] = arc_matrix_single(tris[j], pts[idx], r)
    arcs.setflags(write=False)
    return PcdInstance(tri, pts, r, loc, DigraphAdjacency(arcs), [int(i) for i in outside])


def underlying_graph(d: DigraphAdjacency) -> EdgeSet:
    return EdgeSet(d.arcs | d.arcs.T, Kind.OR)


def reflexivity_graph(d: DigraphAdjacency) -> EdgeSet:
    return EdgeSet(d.arcs & d.arcs.T, Kind.AND)


def graph_of(d: DigraphAdjacency, kind) -> EdgeSet:
    k = Kind.parse(kind)
    if k is Kind.AND:
        return reflexivity_graph(d)
    if k is Kind.OR:
        return underlying_graph(d)
    raise ValueError("the arc kind has no associated graph")


def _pairs(n: int) -> int:
    if n < 2:
        raise TooFewVertices(f"density needs n >= 2 vertices, got {n}")
    return n * (n - 1)


def arc_density(d: DigraphAdjacency, exact: bool = False):
    """|A| / (n (n - 1))."""
    N = _pairs(d.n)
    return Fraction(d.arc_count, N) if exact else d.arc_count / N


def edge_density(e: EdgeSet, exact: bool = False):
    """2 |E| / (n (n - 1))."""
    N = _pairs(e.n)
    return Fraction(2 * e.edge_count, N) if exact else 2 * e.edge_count / N


def density(d: DigraphAdjacency, kind, exact: bool = False):
    k = Kind.parse(kind)
    if k is Kind.ARC:
        return arc_density(d, exact)
    return edge_density(graph_of(d, k), exact)


def density_report(inst: PcdInstance) -> dict:
    d = inst.digraph
    return {
        "rho_a": arc_density(d),
        "rho_and": edge_density(reflexivity_graph(d)),
        "rho_or": edge_density(underlying_graph(d)),
        "n": d.n,
        "r": inst.r,
    }


class Domination(NamedTuple):
    gamma: int
    exact: bool
    dominating_set: Tuple[int, ...]


def _cover_masks(d: DigraphAdjacency, mode) -> List[int]:
    k = Kind.parse(mode)
    if k is Kind.ARC:
        m = d.arcs
    elif k is Kind.AND:
        m = d.arcs & d.arcs.T
    else:
        m = d.arcs | d.arcs.T
    m = m | np.eye(d.n, dtype=bool)
    return [sum(1 << int(j) for j in np.nonzero(row)[0]) for row in m]


def _greedy_cover(masks: List[int], full: int) -> List[int]:
    chosen: List[int] = []
    covered = 0
    while covered != full:
        gains = [bin(m & ~covered).count("1") for m in masks]
        best = int(np.argmax(gains))
        chosen.append(best)
        covered |= masks[best]
    return sorted(chosen)


def _first_cover(masks: List[int], full: int, k: int, budget: int):
    """Lexicographically first k-subset covering ``full``; None if there is
    none, Ellipsis if the budget ran out first."""
    for count, combo in enumerate(combinations(range(len(masks)), k)):
        if count >= budget:
            return ...
        acc = 0
        for i in combo:
            acc |= masks[i]
        if acc == full:
            return combo
    return None


def domination_number(d: DigraphAdjacency, mode="arc", max_exact: int = 5,
                      budget: int = 2_000_000) -> Domination:
    """Smallest k such that k vertices' closed covers hold every vertex.

    Subsets are tried in lexicographic order for k = 1, 2, ... up to
    ``max_exact`` (and at most ``budget`` subsets per k).  If the search
    cannot settle the value, the greedy cover is returned with
    ``exact=False``; it is an upper bound.
    """
    n = d.n
    if n == 0:
        return Domination(0, True, ())
    masks = _cover_masks(d, mode)
    full = (1 << n) - 1
    greedy = _greedy_cover(masks, full)
    for k in range(1, min(max_exact, len(greedy)) + 1):
        hit = _first_cover(masks, full, k, budget)
        if hit is ...:
            break
        if hit is not None:
            return Domination(k, True, hit)
    return Domination(len(greedy), False, tuple(greedy))


# ---------------------------------------------------------------------------
# kernel joint distribution on triples


@dataclass(frozen=True)
class KernelJointPmf:
    """Empirical law of (h12, h13) over independent triples.

    For the arc kernel the values are 2h in {0, 1, 2}; for AND/OR kernels
    they are in {0, 1}.
    """

    kind: Kind
    counts: Dict[Tuple[int, int], int]
    replicates: int

    @property
    def levels(self) -> Tuple[int, ...]:
        return (0, 1, 2) if self.kind is Kind.ARC else (0, 1)

    @property
    def pmf(self) -> Dict[Tuple[int, int], float]:
        return {k: c / self.replicates for k, c in self.counts.items()}

    def prob(self, a: int, b: int) -> float:
        return self.counts.get((a, b), 0) / self.replicates

    def se(self, a: int, b: int) -> float:
        p = self.prob(a, b)
        return math.sqrt(p * (1.0 - p) / self.replicates)

    def symmetric_pmf(self) -> Dict[Tuple[int, int], float]:
        """Average of the pmf and its transpose; for the 0/1 kernels the
        off-diagonal mass is then half of 1 - P(0,0) - P(1,1)."""
        out = {}
        for a in self.levels:
            for b in self.levels:
                out[(a, b)] = 0.5 * (self.prob(a, b) + self.prob(b, a))
        return out

    def moments(self) -> Tuple[float, float]:
        """(E h12, Cov(h12, h13)) in kernel units (h, not 2h)."""
        scale = 2.0 if self.kind is Kind.ARC else 1.0
        e1 = sum(a * p for (a, b), p in self.pmf.items()) / scale
        e2 = sum(b * p for (a, b), p in self.pmf.items()) / scale
        e12 = sum(a * b * p for (a, b), p in self.pmf.items()) / (scale * scale)
        return 0.5 * (e1 + e2), e12 - e1 * e2


def triple_kernels(tri: Triangle, triples: np.ndarray, r, kind) -> Tuple[np.ndarray, np.ndarray]:
    """Kernel values (h12, h13) for each triple; shape (N, 3, 2) input."""
    r = check_r(r)
    k = Kind.parse(kind)
    t = np.asarray(triples, dtype=float)
    if t.ndim != 3 or t.shape[1:] != (3, 2):
        raise DegenerateInput(f"expected triples of shape (N, 3, 2), got {t.shape}")
    b = [tri.barycentric_many(t[:, i]) for i in range(3)]
    if any((bi < 0).any() for bi in b):
        raise OutsideDomain("a triple point lies outside the triangle")

    def arc(i, j):
        # z_j in N(x_i) for every replicate, without forming N x N matrices
        bx, bz = b[i], b[j]
        v = np.argmax(bx, axis=1)
        rows = np.arange(bx.shape[0])
        tx = 1.0 - bx[rows, v]
        lhs = 1.0 - bz[rows, v]
        hit = np.ones_like(tx, dtype=bool) if math.isinf(r) else lhs <= r * tx
        at_v = tx == 0.0
        if at_v.any():
            hit[at_v] = (bx[at_v] == bz[at_v]).all(axis=1)
        return hit.astype(np.int64)

    g12, g21, g13, g31 = arc(0, 1), arc(1, 0), arc(0, 2), arc(2, 0)
    if k is Kind.ARC:
        return g12 + g21, g13 + g31
    if k is Kind.AND:
        return g12 & g21, g13 & g31
    return g12 | g21, g13 | g31


def joint_kernel_pmf(tri: Triangle, triples, r, kind) -> KernelJointPmf:
    t = np.asarray(triples, dtype=float)
    if t.ndim != 3 or t.shape[1:] != (3, 2) or t.shape[0] < 1:
        raise DegenerateInput("need at least one replicate of exactly 3 points")
    h12, h13 = triple_kernels(tri, t, r, kind)
    code = h12 * 3 + h13
    cnt = np.bincount(code, minlength=9)
    counts = {(a, b): int(cnt[3 * a + b]) for a in range(3) for b in range(3) if cnt[3 * a + b]}
    return KernelJointPmf(Kind.parse(kind), counts, int(t.shape[0]))


def er_random_graph(n: int, p: float, seed) -> EdgeSet:
    """G(n, p): each of the n(n-1)/2 edges present independently."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    u = rng.random((n, n))
    upper = np.triu(u < p, 1)
    return EdgeSet(upper | upper.T, None)
