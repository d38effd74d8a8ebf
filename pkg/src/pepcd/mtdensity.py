"""Edge densities over a Delaunay triangulation of the anchors.

With n_i points in triangle i and n_t = sum n_i (n_i - 1) / 2 within-triangle
pairs:

    rho_I   = 2|E| / (n (n - 1))          all pairs
    rho_II  = |E| / n_t                   within-triangle pairs only
    Xi      = sum (n_i (n_i - 1) / (n (n - 1))) rho_[i]    (equals rho_I)
    Xi_hat  = sum w_i^2 rho_[i]           w_i = area share of triangle i

Exact rational versions are kept next to the floats so the counting
identities can be checked without rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import numpy as np

from .errors import TooFewVertices
from .graphs import PcdInstance, graph_of
from .kinds import Kind


@dataclass(frozen=True)
class MultiDensityReport:
    kind: Kind
    n: int
    counts: List[int]  # n_i
    edge_counts: List[int]  # |E_[i]| (arcs for the arc kind)
    weights: List[float]
    n_t: int
    rho_I_exact: Fraction
    rho_II_exact: Optional[Fraction]
    xi_exact: Fraction
    excluded: int = 0

    @property
    def rho_I(self) -> float:
        return float(self.rho_I_exact)

    @property
    def rho_II(self) -> Optional[float]:
        return None if self.rho_II_exact is None else float(self.rho_II_exact)

    @property
    def xi(self) -> float:
        return float(self.xi_exact)

    def local_densities_exact(self) -> List[Optional[Fraction]]:
        """rho_[i] per triangle, None where n_i < 2."""
        scale = 1 if self.kind is Kind.ARC else 2
        return [Fraction(scale * e, c * (c - 1)) if c >= 2 else None
                for c, e in zip(self.counts, self.edge_counts)]

    @property
    def local_densities(self) -> List[Optional[float]]:
        return [None if v is None else float(v) for v in self.local_densities_exact()]

    @property
    def xi_hat(self) -> float:
        return float(sum(w * w * float(rho) for w, rho in
                         zip(self.weights, self.local_densities_exact()) if rho is not None))

    def identities_hold(self) -> bool:
        ok = self.xi_exact == self.rho_I_exact
        if self.rho_II_exact is not None:
            ok = ok and self.rho_I_exact == Fraction(2 * self.n_t, self.n * (self.n - 1)) \
                * self.rho_II_exact
        return ok

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value, "n": self.n, "counts": self.counts,
            "edge_counts": self.edge_counts, "weights": self.weights,
            "local_densities": self.local_densities, "n_t": self.n_t,
            "rho_I": self.rho_I, "rho_II": self.rho_II, "xi": self.xi,
            "xi_hat": self.xi_hat, "excluded": self.excluded,
        }


def multi_density(inst: PcdInstance, kind="and") -> MultiDensityReport:
    k = Kind.parse(kind)
    n = inst.n
    if n < 2:
        raise TooFewVertices(f"density needs n >= 2 vertices, got {n}")
    J = inst.triangulation.n_triangles
    if k is Kind.ARC:
        m = inst.digraph.arcs
        scale = 1
    else:
        m = np.triu(graph_of(inst.digraph, k).edges, 1)
        scale = 2
    counts = np.bincount(inst.assignment, minlength=J).astype(int)
    # every edge joins two points of the same triangle
    row_tri = inst.assignment[np.nonzero(m)[0]]
    edge_counts = np.bincount(row_tri, minlength=J).astype(int)
    total = int(edge_counts.sum())
    n_t = int(sum(c * (c - 1) // 2 for c in counts))
    pairs = n * (n - 1)
    rho_I = Fraction(scale * total, pairs)
    # for arcs the within-triangle count is ordered pairs, 2 n_t
    rho_II = Fraction(scale * total, 2 * n_t) if n_t > 0 else None
    xi = Fraction(0)
    for c, e in zip(counts, edge_counts):
        if c >= 2:
            xi += Fraction(c * (c - 1), pairs) * Fraction(scale * int(e), int(c * (c - 1)))
    return MultiDensityReport(k, n, counts.tolist(), edge_counts.tolist(),
                              inst.triangulation.weights().tolist(), n_t, rho_I, rho_II, xi,
                              len(inst.excluded))
