"""Seeded sampling and the replication engine.

Replicate ``i`` draws from its own Philox stream keyed by ``(seed, i)``, so
results do not depend on how replicates are spread over worker threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from .errors import TooFewVertices
from .geometry import Triangle, Triangulation, equilateral
from .graphs import as_triangulation, build_pcd, reflexivity_graph, underlying_graph, \
    arc_density, edge_density, triple_kernels
from .kinds import Kind
from .proximity import catch_matrix, check_r


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for replicate ``index`` under master ``seed``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def uniform_barycentric(count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform barycentric rows via the square-root construction."""
    u = rng.random(count)
    v = rng.random(count)
    s = np.sqrt(u)
    return np.column_stack([1.0 - s, s * (1.0 - v), s * v])


def sample_uniform_triangle(tri: Triangle, count: int, rng: np.random.Generator) -> np.ndarray:
    return uniform_barycentric(count, rng) @ tri.vertices


def sample_uniform_hull(triangulation: Triangulation, count: int,
                        rng: np.random.Generator) -> np.ndarray:
    """Uniform on the hull: pick triangle j with probability w_j, then uniform in it."""
    w = triangulation.weights()
    if len(w) == 1:
        return sample_uniform_triangle(triangulation.triangle(0), count, rng)
    which = rng.choice(len(w), size=count, p=w)
    b = uniform_barycentric(count, rng)
    verts = triangulation.sites[triangulation.triangles[which]]  # (count, 3, 2)
    return np.einsum("ij,ijk->ik", b, verts)


# ---------------------------------------------------------------------------
# summaries


@dataclass(frozen=True)
class MomentReport:
    n: int
    mean: float
    variance: float
    skewness: float
    kurtosis: float  # excess
    ks_statistic: float
    ks_pvalue: float
    ks_reference: Tuple[float, float]  # (mean, sd) of the normal compared against
    degenerate: bool  # constant sample: shape statistics and KS are NaN

    def to_json(self) -> dict:
        return {
            "n": self.n, "mean": self.mean, "variance": self.variance,
            "skewness": self.skewness, "kurtosis": self.kurtosis,
            "ks_statistic": self.ks_statistic, "ks_pvalue": self.ks_pvalue,
            "ks_reference": list(self.ks_reference), "degenerate": self.degenerate,
        }


def moment_report(values, reference: Optional[Tuple[float, float]] = None) -> MomentReport:
    """Mean, unbiased variance, skewness, excess kurtosis and a KS test.

    The KS test compares against N(mean, sd) given as ``reference``, or the
    fitted normal by default.
    """
    x = np.asarray(values, dtype=float).ravel()
    if x.size < 2:
        raise TooFewVertices("moment_report needs at least 2 values")
    mean = float(x.mean())
    var = float(x.var(ddof=1))
    if reference is None:
        reference = (mean, math.sqrt(var))
    degenerate = var == 0.0
    if degenerate:
        skew = kurt = ks = ksp = math.nan
    else:
        skew = float(stats.skew(x, bias=False))
        kurt = float(stats.kurtosis(x, fisher=True, bias=False))
        if reference[1] > 0:
            res = stats.kstest(x, "norm", args=reference)
            ks, ksp = float(res.statistic), float(res.pvalue)
        else:
            ks = ksp = math.nan
    return MomentReport(int(x.size), mean, var, skew, kurt, ks, ksp,
                        (float(reference[0]), float(reference[1])), degenerate)


@dataclass(frozen=True)
class Histogram:
    edges: np.ndarray
    counts: np.ndarray

    def to_csv(self) -> str:
        rows = ["bin_left,bin_right,count"]
        for lo, hi, c in zip(self.edges[:-1], self.edges[1:], self.counts):
            rows.append(f"{lo:.17g},{hi:.17g},{int(c)}")
        return "\n".join(rows) + "\n"


def histogram(values, bins=None) -> Histogram:
    """Freedman-Diaconis bins unless ``bins`` is given."""
    x = np.asarray(values, dtype=float).ravel()
    if bins is None:
        bins = "fd" if np.ptp(x) > 0 and stats.iqr(x) > 0 else 1
    counts, edges = np.histogram(x, bins=bins)
    return Histogram(edges, counts)


@dataclass(frozen=True)
class ReplicateStats:
    kind: Kind
    values: np.ndarray
    report: MomentReport
    hist: Histogram

    @property
    def mean(self) -> float:
        return self.report.mean

    @property
    def variance(self) -> float:
        return self.report.variance

    @property
    def se(self) -> float:
        return math.sqrt(self.report.variance / self.values.size)

    def to_json(self, with_values: bool = False) -> dict:
        out = {"kind": self.kind.value, **self.report.to_json(),
               "histogram": {"edges": self.hist.edges.tolist(),
                             "counts": self.hist.counts.tolist()}}
        if with_values:
            out["values"] = self.values.tolist()
        return out


# ---------------------------------------------------------------------------
# replication engine


@dataclass
class SimConfig:
    r: float
    n: int
    reps: int
    seed: int = 0
    anchors: object = None  # None -> the equilateral triangle
    kinds: Tuple[str, ...] = ("arc", "and", "or")
    workers: int = 1
    bins: Optional[int] = None
    references: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def __post_init__(self):
        self.r = check_r(self.r)
        if self.n < 1 or self.reps < 1:
            raise ValueError("n and reps must be at least 1")
        self.kinds = tuple(Kind.parse(k) for k in self.kinds)


def replicate_sample(cfg: SimConfig, tri: Triangulation, i: int) -> np.ndarray:
    return sample_uniform_hull(tri, cfg.n, stream(cfg.seed, i))


def _single_densities(tri: Triangle, pts: np.ndarray, r: float) -> Tuple[int, int, int]:
    b = tri.barycentric_many(pts)
    m = catch_matrix(b, b, r)
    np.fill_diagonal(m, False)
    a = int(m.sum())
    e_and = int((m & m.T).sum()) // 2
    e_or = int((m | m.T).sum()) // 2
    return a, e_and, e_or


def _replicate(cfg: SimConfig, tri: Triangulation, i: int) -> Tuple[float, ...]:
    pts = replicate_sample(cfg, tri, i)
    if tri.n_triangles == 1:
        a, ea, eo = _single_densities(tri.triangle(0), pts, cfg.r)
    else:
        d = build_pcd(tri, pts, cfg.r).digraph
        a = d.arc_count
        ea = reflexivity_graph(d).edge_count
        eo = underlying_graph(d).edge_count
    N = cfg.n * (cfg.n - 1)
    vals = {Kind.ARC: a / N, Kind.AND: 2 * ea / N, Kind.OR: 2 * eo / N}
    return tuple(vals[k] for k in cfg.kinds)


def run_replicates(cfg: SimConfig) -> Dict[Kind, ReplicateStats]:
    """Density statistics over ``cfg.reps`` independent samples."""
    if cfg.n < 2:
        raise TooFewVertices("densities need n >= 2")
    tri = as_triangulation(equilateral() if cfg.anchors is None else cfg.anchors)
    if cfg.workers <= 1:
        rows = [_replicate(cfg, tri, i) for i in range(cfg.reps)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as ex:
            rows = list(ex.map(lambda i: _replicate(cfg, tri, i), range(cfg.reps)))
    arr = np.array(rows, dtype=float).reshape(cfg.reps, len(cfg.kinds))
    out = {}
    for col, k in enumerate(cfg.kinds):
        vals = arr[:, col].copy()
        ref = cfg.references.get(k.value)
        rep = moment_report(vals, ref) if cfg.reps >= 2 else \
            MomentReport(1, float(vals[0]), math.nan, math.nan, math.nan, math.nan,
                         math.nan, (math.nan, math.nan), True)
        out[k] = ReplicateStats(k, vals, rep, histogram(vals, cfg.bins))
    return out


# ---------------------------------------------------------------------------
# kernel-level estimates on the standard triangle


@dataclass(frozen=True)
class KernelEstimate:
    mean: float
    mean_se: float
    cov: float
    cov_se: float


def kernel_moments_mc(r, kind, triples: int, seed: int, chunk: int = 200_000) -> KernelEstimate:
    """Estimate E h12 and Cov(h12, h13) from independent uniform triples.

    The mean uses all three pairs of each triple; the covariance uses the
    two pairs sharing the first point, with a delta-method standard error.
    """
    tri = equilateral()
    k = Kind.parse(kind)
    scale = 2.0 if k is Kind.ARC else 1.0
    h12s, h13s = [], []
    done = 0
    block = 0
    while done < triples:
        m = min(chunk, triples - done)
        rng = stream(seed, block)
        t = np.stack([sample_uniform_triangle(tri, m, rng) for _ in range(3)], axis=1)
        a, b = triple_kernels(tri, t, r, k)
        h12s.append(a / scale)
        h13s.append(b / scale)
        done += m
        block += 1
    h12 = np.concatenate(h12s)
    h13 = np.concatenate(h13s)
    N = h12.size
    mean = float(0.5 * (h12.mean() + h13.mean()))
    mean_se = float(np.std(0.5 * (h12 + h13), ddof=1) / math.sqrt(N))
    m1, m2 = h12.mean(), h13.mean()
    cov = float(np.mean((h12 - m1) * (h13 - m2)) * N / (N - 1))
    cov_se = float(np.std((h12 - m1) * (h13 - m2), ddof=1) / math.sqrt(N))
    return KernelEstimate(mean, mean_se, cov, cov_se)


def arc_probability_mc(r, pairs: int, seed: int) -> Tuple[float, float]:
    """P(X2 in N_r(X1)) for independent uniform points; (estimate, se)."""
    r = check_r(r)
    tri = equilateral()
    rng = stream(seed, 0)
    bx = uniform_barycentric(pairs, rng)
    bz = uniform_barycentric(pairs, rng)
    rows = np.arange(pairs)
    v = np.argmax(bx, axis=1)
    t = 1.0 - bx[rows, v]
    hit = (1.0 - bz[rows, v] <= r * t) if math.isfinite(r) else np.ones(pairs, dtype=bool)
    p = float(hit.mean())
    return p, math.sqrt(p * (1.0 - p) / pairs)


def lag1_autocorrelation(values) -> float:
    x = np.asarray(values, dtype=float)
    x = x - x.mean()
    den = float(np.dot(x, x))
    return math.nan if den == 0 else float(np.dot(x[:-1], x[1:]) / den)
