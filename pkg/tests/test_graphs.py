import math
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest

from pepcd.asymptotics import cov_kernel_and, mean_and
from pepcd.errors import DegenerateInput, OutsideDomain, TooFewVertices
from pepcd.geometry import SQRT3, Triangle, delaunay, equilateral, standardize_map
from pepcd.graphs import (DigraphAdjacency, arc_density, build_pcd, density, density_report,
                          domination_number, edge_density, er_random_graph, joint_kernel_pmf,
                          reflexivity_graph, underlying_graph)
from pepcd.montecarlo import sample_uniform_hull, sample_uniform_triangle, stream

TE = equilateral()


def te_bary(p):
    # closed form for the standard triangle, independent of Triangle
    x, y = p
    b3 = 2 * y / SQRT3
    b2 = x - y / SQRT3
    return np.array([1 - b2 - b3, b2, b3])


def digraph(n, arcs):
    m = np.zeros((n, n), dtype=bool)
    for i, j in arcs:
        m[i, j] = True
    return DigraphAdjacency(m)


def brute_gamma(d, mode):
    a = d.arcs
    m = {"arc": a, "and": a & a.T, "or": a | a.T}[mode] | np.eye(d.n, dtype=bool)
    for k in range(1, d.n + 1):
        for s in combinations(range(d.n), k):
            if m[list(s)].any(axis=0).all():
                return k


# --- construction ---------------------------------------------------------


def test_single_point_has_no_arcs():
    inst = build_pcd(TE, [(0.5, 0.2)], 2)
    assert inst.digraph.arc_count == 0
    with pytest.raises(TooFewVertices):
        arc_density(inst.digraph)


def test_empty_sample():
    inst = build_pcd(TE, np.zeros((0, 2)), 2)
    assert inst.n == 0


def test_infinite_r_is_complete():
    X = sample_uniform_triangle(TE, 40, stream(1, 0))
    inst = build_pcd(TE, X, math.inf)
    assert inst.digraph.arc_count == 40 * 39
    rep = density_report(inst)
    assert rep["rho_a"] == rep["rho_and"] == rep["rho_or"] == 1.0


def test_hand_example():
    X = [(0.25, 0.05), (0.6, 0.05)]
    inst = build_pcd(TE, X, 2)
    b1, b2 = te_bary(X[0]), te_bary(X[1])
    v1, v2 = int(np.argmax(b1)), int(np.argmax(b2))
    arc12 = 1 - b2[v1] <= 2 * (1 - b1[v1])
    arc21 = 1 - b1[v2] <= 2 * (1 - b2[v2])
    assert (arc12, arc21) == (False, True)
    assert inst.digraph.arcs.tolist() == [[False, arc12], [arc21, False]]


def test_no_arcs_across_triangles():
    Y = [(0, 0), (2, 0), (2, 2), (0, 2)]
    X = [(1.5, 0.3), (0.3, 1.5), (1.6, 0.2), (0.2, 1.6)]
    inst = build_pcd(Y, X, math.inf)
    a = inst.assignment
    assert a[0] == a[2] != a[1] == a[3]
    arcs = inst.digraph.arcs
    for i in range(4):
        for j in range(4):
            if i != j:
                assert arcs[i, j] == (a[i] == a[j])


def test_outside_point_reported_with_index():
    X = [(0.5, 0.2), (0.4, 0.1), (3.0, 3.0), (0.5, 0.3)]
    with pytest.raises(OutsideDomain) as e:
        build_pcd(TE, X, 2)
    assert e.value.index == 2
    inst = build_pcd(TE, X, 2, drop_outside=True)
    assert inst.excluded == [2]
    assert inst.n == 3


def test_shared_edge_goes_to_lowest_triangle():
    Y = [(0, 0), (1, 0), (1, 1), (0, 1)]
    inst = build_pcd(Y, [(0.5, 0.5), (0.25, 0.25)], 2)
    assert inst.assignment.tolist() == [0, 0]


def test_collinear_anchors_rejected():
    with pytest.raises(DegenerateInput):
        build_pcd([(0, 0), (1, 1), (2, 2)], [(0.5, 0.5)], 2)


# --- graphs and densities -------------------------------------------------


def test_graph_examples():
    empty = digraph(4, [])
    assert underlying_graph(empty).edge_count == reflexivity_graph(empty).edge_count == 0
    full = digraph(4, [(i, j) for i in range(4) for j in range(4) if i != j])
    assert underlying_graph(full).edge_count == reflexivity_graph(full).edge_count == 6
    one = digraph(3, [(0, 1)])
    assert underlying_graph(one).edge_list() == [(0, 1)]
    assert reflexivity_graph(one).edge_count == 0


def test_density_examples():
    full = digraph(5, [(i, j) for i in range(5) for j in range(5) if i != j])
    assert arc_density(full) == 1.0
    assert arc_density(digraph(5, [])) == 0.0
    d = digraph(3, [(0, 1), (1, 0), (0, 2)])
    assert arc_density(d, exact=True) == Fraction(1, 2)
    assert edge_density(underlying_graph(d), exact=True) == Fraction(2, 3)
    assert edge_density(reflexivity_graph(d), exact=True) == Fraction(1, 3)


def test_density_identity_and_inclusion():
    rng = np.random.default_rng(2)
    for _ in range(200):
        n = int(rng.integers(2, 40))
        r = float(rng.choice([1.0, rng.uniform(1, 4), math.inf]))
        inst = build_pcd(TE, sample_uniform_triangle(TE, n, rng), r)
        d = inst.digraph
        ra = density(d, "arc", exact=True)
        rand, ror = density(d, "and", exact=True), density(d, "or", exact=True)
        assert ra == (rand + ror) / 2
        # the float quotients round separately, so only ulps may differ
        mix = (density(d, "and") + density(d, "or")) / 2
        assert abs(density(d, "arc") - mix) <= 2 * math.ulp(mix)
        a, o = reflexivity_graph(d).edges, underlying_graph(d).edges
        assert not (a & ~o).any()


def test_densities_invariant_under_relabeling():
    rng = np.random.default_rng(3)
    X = sample_uniform_triangle(TE, 50, rng)
    base = build_pcd(TE, X, 1.6)
    perm = rng.permutation(50)
    again = build_pcd(TE, X[perm], 1.6)
    assert density_report(again) == density_report(base)
    assert np.array_equal(again.digraph.arcs, base.digraph.arcs[np.ix_(perm, perm)])


def test_and_density_zero_at_r_one():
    rng = np.random.default_rng(4)
    for _ in range(100):
        inst = build_pcd(TE, sample_uniform_triangle(TE, 30, rng), 1.0)
        assert density(inst.digraph, "and") == 0.0


def test_geometry_invariance_bit_identical():
    rng = np.random.default_rng(5)
    for _ in range(50):
        tri = Triangle.from_array(rng.uniform(-3, 3, size=6))
        X = sample_uniform_triangle(tri, 30, rng)
        r = float(rng.uniform(1, 3))
        a = build_pcd(tri, X, r).digraph.arcs
        b = build_pcd(TE, standardize_map(tri)(X), r).digraph.arcs
        assert np.array_equal(a, b)


# --- domination -----------------------------------------------------------


def test_domination_examples():
    assert domination_number(digraph(1, [])).gamma == 1
    full = digraph(6, [(i, j) for i in range(6) for j in range(6) if i != j])
    assert domination_number(full) == (1, True, (0,))
    # 0 -> 1, 2 -> 3: no single vertex covers, {0, 2} does
    d = digraph(4, [(0, 1), (2, 3)])
    assert brute_gamma(d, "arc") == 2
    assert domination_number(d) == (2, True, (0, 2))


def test_domination_matches_brute_force_and_orders():
    rng = np.random.default_rng(6)
    for _ in range(150):
        n = int(rng.integers(1, 11))
        r = float(rng.uniform(1, 2.5))
        d = build_pcd(TE, sample_uniform_triangle(TE, n, rng), r).digraph
        g = {m: domination_number(d, m, max_exact=n) for m in ("arc", "and", "or")}
        for m in g:
            assert g[m].exact
            assert g[m].gamma == brute_gamma(d, m)
        assert g["or"].gamma <= g["arc"].gamma <= g["and"].gamma


def test_domination_cap_returns_flagged_upper_bound():
    d = digraph(8, [])
    res = domination_number(d, max_exact=3)
    assert res == (8, False, tuple(range(8)))
    assert domination_number(d, max_exact=8).exact


def test_arc_domination_at_most_three():
    rng = np.random.default_rng(7)
    for i in range(500):
        r = float(rng.uniform(1, 3))
        d = build_pcd(TE, sample_uniform_triangle(TE, 20, rng), r).digraph
        g = domination_number(d, "arc")
        assert g.exact and g.gamma <= 3


# --- joint kernel pmf -----------------------------------------------------


def triples(n, seed):
    return sample_uniform_triangle(TE, 3 * n, stream(seed, 0)).reshape(n, 3, 2)


def test_pmf_degenerate_cases():
    t = triples(2000, 8)
    assert joint_kernel_pmf(TE, t, math.inf, "and").pmf == {(1, 1): 1.0}
    assert joint_kernel_pmf(TE, t, math.inf, "arc").pmf == {(2, 2): 1.0}
    assert joint_kernel_pmf(TE, t, 1.0, "and").pmf == {(0, 0): 1.0}


def test_pmf_wrong_shape():
    with pytest.raises(DegenerateInput):
        joint_kernel_pmf(TE, np.zeros((5, 4, 2)), 2, "and")
    with pytest.raises(DegenerateInput):
        joint_kernel_pmf(TE, np.zeros((0, 3, 2)), 2, "and")


@pytest.mark.parametrize("kind", ["arc", "and", "or"])
def test_pmf_sums_to_one_and_is_symmetric(kind):
    pmf = joint_kernel_pmf(TE, triples(100_000, 9), 1.7, kind)
    assert sum(pmf.pmf.values()) == pytest.approx(1.0, abs=1e-12)
    for a in pmf.levels:
        for b in pmf.levels:
            diff = pmf.prob(a, b) - pmf.prob(b, a)
            assert abs(diff) < 3 * math.hypot(pmf.se(a, b), pmf.se(b, a)) + 1e-12
    sym = pmf.symmetric_pmf()
    if kind != "arc":
        assert sym[(0, 1)] == pytest.approx(0.5 * (1 - sym[(0, 0)] - sym[(1, 1)]))


@pytest.mark.slow
def test_pmf_and_corner_matches_closed_form():
    pmf = joint_kernel_pmf(TE, triples(10 ** 6, 10), 2, "and")
    target = cov_kernel_and(2) + mean_and(2) ** 2
    assert abs(pmf.prob(1, 1) - target) < 3 * pmf.se(1, 1)


# --- Erdos-Renyi ----------------------------------------------------------


def test_er_extremes_and_determinism():
    assert er_random_graph(10, 0.0, 1).edge_count == 0
    assert er_random_graph(10, 1.0, 1).edge_count == 45
    a, b = er_random_graph(30, 0.4, 7), er_random_graph(30, 0.4, 7)
    assert np.array_equal(a.edges, b.edges)
    assert np.array_equal(a.edges, a.edges.T) and not a.edges.diagonal().any()
    with pytest.raises(ValueError):
        er_random_graph(5, 1.5, 0)


def test_er_density_concentrates():
    n, p, reps = 200, 0.3, 500
    vals = np.array([edge_density(er_random_graph(n, p, stream(12, i))) for i in range(reps)])
    pairs = n * (n - 1) // 2
    se = math.sqrt(p * (1 - p) / pairs / reps)
    assert abs(vals.mean() - p) < 3 * se
    # sample variance of a chi-square with reps - 1 dof: 4 SD band
    ratio = vals.var(ddof=1) / (p * (1 - p) / pairs)
    assert abs(ratio - 1) < 4 * math.sqrt(2 / (reps - 1))


def test_json_exports():
    d = digraph(3, [(0, 1), (2, 0)])
    assert d.to_json() == {"n": 3, "arcs": [[0, 1], [2, 0]]}
    e = underlying_graph(d).to_json()
    assert e["edges"] == [[0, 1], [0, 2]]


def test_multi_triangle_sample_everything_assigned():
    Y = np.random.default_rng(13).uniform(size=(10, 2))
    tri = delaunay(Y)
    X = sample_uniform_hull(tri, 400, stream(13, 0))
    inst = build_pcd(tri, X, 2)
    assert inst.excluded == [] and (inst.assignment >= 0).all()
    for j, t in enumerate(tri.triangle_objects()):
        assert t.contains_many(X[inst.assignment == j], tol=1e-12).all()
