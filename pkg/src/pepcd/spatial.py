"""Testing complete spatial randomness with the all-pairs edge density.

Under CSR (X uniform on the convex hull of Y, conditional on Y), the
all-pairs density rho_I is approximately normal with mean ``p sum w^2`` and
variance ``4 nu_I / n``.  The result reports both one-sided p-values and
leaves the reading of each tail to the caller; see the README for what the
simulations here show about the direction of each alternative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy import stats

from .asymptotics import check_clt_range, multi_triangle_params_I
from .errors import DegenerateInput, DegenerateLimit, TooFewVertices
from .geometry import Triangulation, as_points, delaunay
from .graphs import build_pcd
from .kinds import Kind
from .montecarlo import sample_uniform_hull, stream, uniform_barycentric
from .mtdensity import multi_density
from .proximity import check_r


@dataclass(frozen=True)
class CsrTestResult:
    kind: Kind
    observed: float
    null_mean: float
    null_variance: float
    z: float
    p_lower: float
    p_upper: float
    p_two_sided: float
    n: int
    r: float
    m: int
    excluded: int

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value, "version": "I", "observed": self.observed,
            "null_mean": self.null_mean, "null_variance": self.null_variance,
            "z": self.z, "p_lower": self.p_lower, "p_upper": self.p_upper,
            "p_two_sided": self.p_two_sided, "n": self.n, "r": self.r,
            "m": self.m, "excluded": self.excluded,
        }


def csr_test(X, Y, r, kind="and", triangulation: Optional[Triangulation] = None,
             allow_degenerate: bool = False) -> CsrTestResult:
    """Standardized rho_I against its CSR null.

    Points of X outside the hull of Y are dropped and counted.  ``r = inf``
    is refused.  At r = 1 the AND density is identically zero within each
    triangle; it is tested only with ``allow_degenerate`` and a weight vector
    with sum w^3 > (sum w^2)^2, and even then a zero null variance is refused.
    """
    k = Kind.parse(kind)
    if k is Kind.ARC:
        raise ValueError("the CSR test uses the and/or edge densities")
    r = check_r(r)
    tri = triangulation if triangulation is not None else delaunay(as_points(Y))
    w = tri.weights()
    degenerate_and = k is Kind.AND and r == 1.0
    if degenerate_and and allow_degenerate:
        if not np.sum(w ** 3) > np.sum(w ** 2) ** 2:
            raise DegenerateLimit("r = 1 and kind = and need unequal triangle weights")
    else:
        check_clt_range(r, k)
    inst = build_pcd(tri, X, r, drop_outside=True)
    if inst.n < 2:
        raise TooFewVertices(f"need at least 2 points inside the hull, got {inst.n}")
    rep = multi_density(inst, k)
    params = multi_triangle_params_I(w, r, k)
    var = params.variance(inst.n)
    if not var > 0.0:
        raise DegenerateLimit("null variance is zero; the normal reference does not apply")
    z = (rep.rho_I - params.mean) / math.sqrt(var)
    p_lower = float(stats.norm.cdf(z))
    p_upper = float(stats.norm.sf(z))
    return CsrTestResult(k, rep.rho_I, params.mean, var, float(z), p_lower, p_upper,
                         min(1.0, 2.0 * min(p_lower, p_upper)), inst.n, r,
                         int(tri.sites.shape[0]), len(inst.excluded))


# ---------------------------------------------------------------------------
# scenario generators: callables (rng, n) -> points


def csr_scenario(tri: Triangulation) -> Callable:
    def gen(rng, n):
        return sample_uniform_hull(tri, n, rng)
    return gen


def _hull_barycentric(tri: Triangulation, n: int, rng, transform) -> np.ndarray:
    w = tri.weights()
    which = rng.choice(len(w), size=n, p=w)
    b = transform(uniform_barycentric(n, rng), rng)
    verts = tri.sites[tri.triangles[which]]
    return np.einsum("ij,ijk->ik", b, verts)


def segregation_scenario(tri: Triangulation, strength: float) -> Callable:
    """X uniform on each triangle shrunk towards its centroid by ``strength``
    (0 is CSR; near 1 every point sits at a centre, far from the anchors)."""
    if not 0.0 <= strength < 1.0:
        raise ValueError("strength must lie in [0, 1)")

    def gen(rng, n):
        return _hull_barycentric(tri, n, rng,
                                 lambda b, _: (1.0 - strength) * b + strength / 3.0)
    return gen


def association_scenario(tri: Triangulation, strength: float) -> Callable:
    """X uniform on the corner triangles {b_i >= strength} of a random vertex
    (0 is CSR; near 1 every point sits on an anchor)."""
    if not 0.0 <= strength < 1.0:
        raise ValueError("strength must lie in [0, 1)")

    def shrink(b, rng):
        corner = rng.integers(0, 3, size=b.shape[0])
        out = (1.0 - strength) * b
        out[np.arange(b.shape[0]), corner] += strength
        return out

    def gen(rng, n):
        return _hull_barycentric(tri, n, rng, shrink)
    return gen


def power_curve(scenarios: Dict[str, Callable], Y, r_grid: Sequence[float], n: int,
                reps: int, seed: int = 0, kind="and", alpha: float = 0.05,
                alternative: str = "two-sided") -> List[dict]:
    """Rejection rate of the CSR test for each (scenario, r).

    Replicate i of every scenario uses stream (seed, i), so rows are
    reproducible and scenarios share random numbers.
    """
    tri = Y if isinstance(Y, Triangulation) else delaunay(as_points(Y))
    key = {"two-sided": "p_two_sided", "less": "p_lower", "greater": "p_upper"}[alternative]
    rows = []
    for name, gen in scenarios.items():
        for r in r_grid:
            hits = 0
            for i in range(reps):
                X = gen(stream(seed, i), n)
                res = csr_test(X, tri.sites, r, kind, triangulation=tri)
                hits += getattr(res, key) < alpha
            p = hits / reps
            rows.append({"scenario": name, "r": float(r), "n": n, "reps": reps,
                         "power": p, "se": math.sqrt(p * (1.0 - p) / reps)})
    return rows
