"""Acceptance suite: one test and one summary line per criterion.

Run on its own with ``pytest tests/test_acceptance.py -v``; the lines are
collected under "acceptance criteria" at the end of the run.
"""
import math
from fractions import Fraction

import numpy as np
from scipy import stats

from pepcd.asymptotics import (NU_AND, NU_OR, P_AND, P_OR, VAR_AND, VAR_OR, cov_kernel_and,
                               mean_and, mean_or, multi_triangle_params_I, normal_params)
from pepcd.geometry import Triangle, delaunay, equilateral, standardize_map
from pepcd.graphs import build_pcd, density, domination_number, joint_kernel_pmf
from pepcd.kinds import Kind
from pepcd.montecarlo import (SimConfig, arc_probability_mc, run_replicates,
                              sample_uniform_hull, sample_uniform_triangle, stream)
from pepcd.mtdensity import multi_density
from pepcd.spatial import association_scenario, csr_test, segregation_scenario

from oracles import mp_piece, mp_surd

TE = equilateral()
SEED = 1
ANCHORS = stream(2024, 0).random((10, 2))


def test_criterion_01_spot_values(criterion):
    cases = [(P_AND, 2, Fraction(11, 24)), (P_OR, 2, Fraction(19, 24)),
             (P_AND, 1, Fraction(0)), (P_OR, 1, Fraction(37, 108)),
             (NU_AND, 1, Fraction(0)), (NU_OR, 1, Fraction(1, 3240)),
             (VAR_OR, 1, Fraction(2627, 11664))]
    bad = [f"{fn.name}({r})" for fn, r, want in cases
           if fn.exact(Fraction(r)) != want or abs(fn(r) - float(want)) >= 1e-12]
    ok = criterion(1, not bad, "7 exact rational values" + (f"; wrong: {bad}" if bad else ""))
    assert ok


def test_criterion_02_transcription(criterion):
    worst_var = 0.0
    pairs = ((P_AND, VAR_AND), (P_OR, VAR_OR))
    for p, v in pairs:
        grid = list(np.linspace(1, 6, 200)) + [float(b) for b in p.breakpoints + v.breakpoints]
        for r in grid:
            worst_var = max(worst_var, abs(v(r) - p(r) * (1 - p(r))))
    worst_jump = 0.0
    for fn in (P_AND, P_OR, NU_AND, NU_OR):
        for i in range(1, len(fn.breakpoints)):
            b = fn.breakpoints[i]
            left, right = fn.pieces[i - 1], fn.pieces[i]
            x = mp_surd(b)
            worst_jump = max(worst_jump, float(abs(mp_piece(left, x) - mp_piece(right, x))))
    ok = worst_var < 1e-9 and worst_jump < 1e-9
    criterion(2, ok, f"max |Var - p(1-p)| = {worst_var:.1e}, max jump = {worst_jump:.1e}")
    assert ok


def test_criterion_03_monte_carlo_means(criterion):
    res = run_replicates(SimConfig(r=2, n=100, reps=1000, seed=SEED, kinds=("and", "or")))
    da = abs(res[Kind.AND].mean - 11 / 24)
    do = abs(res[Kind.OR].mean - 19 / 24)
    ok = da < 0.005 and do < 0.004
    criterion(3, ok, f"|mean_and - 11/24| = {da:.5f} (< 0.005), "
                     f"|mean_or - 19/24| = {do:.5f} (< 0.004)")
    assert ok


def test_criterion_04_normalization(criterion):
    n = 200
    res = run_replicates(SimConfig(r=2, n=n, reps=5000, seed=SEED, kinds=("and",), workers=4))
    est = n * res[Kind.AND].variance
    theta = cov_kernel_and(2)
    readings = {"tables give nu, variance 4 nu": 4 * theta,
                "curve is 4 nu, variance = curve": theta}
    close = [k for k, v in readings.items() if abs(est / v - 1) < 0.10]
    wired = normal_params(n, 2, "and").variance * n
    ok = len(close) == 1 and abs(wired - readings[close[0]]) < 1e-15
    detail = f"n Var = {est:.5f}; 4 nu = {4 * theta:.5f}, nu = {theta:.5f}; matches {close}"
    criterion(4, ok, detail)
    assert ok


def test_criterion_05_fuzz_identities(criterion):
    rng = np.random.default_rng(SEED)
    failures = []
    for i in range(10_000):
        tri = Triangle.from_array(rng.uniform(-5, 5, size=6))
        if tri.area < 1e-2:
            tri = TE
        n = int(rng.integers(2, 16))
        r = math.inf if i % 50 == 0 else float(rng.uniform(1, 5))
        X = sample_uniform_triangle(tri, n, rng)
        d = build_pcd(tri, X, r).digraph
        a = d.arcs
        arc, conj, disj = (density(d, k, exact=True) for k in ("arc", "and", "or"))
        if arc != (conj + disj) / 2:
            failures.append((i, "identity"))
        if ((a & a.T) & ~(a | a.T)).any():
            failures.append((i, "inclusion"))
        g = [domination_number(d, m, max_exact=n).gamma for m in ("or", "arc", "and")]
        if not g[0] <= g[1] <= g[2]:
            failures.append((i, "domination"))
        b = build_pcd(TE, standardize_map(tri)(X), r).digraph.arcs
        if not np.array_equal(a, b):
            failures.append((i, "invariance"))
    ok = not failures
    criterion(5, ok, f"10000 instances, {len(failures)} failures {failures[:5]}")
    assert ok


def test_criterion_06_arc_probability_ordering(criterion):
    notes = []
    ok = True
    for r in (1.2, 1.5, 2, 3, 5):
        p, se = arc_probability_mc(r, 10 ** 5, SEED)
        lo, hi = mean_and(r), mean_or(r)
        sep = p - lo > 3 * se and hi - p > 3 * se
        ok &= sep
        notes.append(f"r={r}: {lo:.4f} < {p:.4f} < {hi:.4f}")
    p1, se1 = arc_probability_mc(1, 10 ** 5, SEED)
    at_one = abs(p1 - 37 / 216) < 3 * se1
    ok &= at_one
    notes.append(f"r=1: {p1:.4f} vs 37/216 = {37 / 216:.4f} (3 SE {3 * se1:.4f})")
    criterion(6, ok, "; ".join(notes))
    assert ok


def test_criterion_07_degenerate_limits(criterion):
    inf = run_replicates(SimConfig(r=math.inf, n=20, reps=1000, seed=SEED))
    ones = all((inf[k].values == 1.0).all() for k in (Kind.ARC, Kind.AND, Kind.OR))
    one = run_replicates(SimConfig(r=1.0, n=20, reps=1000, seed=SEED, kinds=("and",)))
    zeros = bool((one[Kind.AND].values == 0.0).all())
    ok = ones and zeros
    criterion(7, ok, f"r = inf all densities 1: {ones}; AND at r = 1 all 0: {zeros} "
                     "(1000 instances each)")
    assert ok


# sign of the skewness, fixed from the seeded runs: the AND density at
# r = 1.05 piles up at 0 (right tail), the OR density at r = 5 piles up at 1
EXPECTED_SKEW_SIGN = {("and", 1.05): +1, ("or", 5.0): -1}


def test_criterion_08_small_sample_skewness(criterion):
    notes = []
    ok = True
    for (kind, r), sign in EXPECTED_SKEW_SIGN.items():
        res = run_replicates(SimConfig(r=r, n=10, reps=10_000, seed=SEED, kinds=(kind,)))
        sk = res[Kind(kind)].report.skewness
        ok &= abs(sk) > 0.5 and np.sign(sk) == sign
        notes.append(f"{kind} r={r}: skewness {sk:+.3f} (expected sign {sign:+d})")
    criterion(8, ok, "; ".join(notes))
    assert ok


def test_criterion_09_multi_triangle(criterion):
    rng = np.random.default_rng(SEED)
    exact_ok = True
    for _ in range(1000):
        tri = delaunay(rng.random((int(rng.integers(3, 15)), 2)))
        n = int(rng.integers(2, 60))
        inst = build_pcd(tri, sample_uniform_hull(tri, n, rng), float(rng.uniform(1, 4)))
        for kind in ("and", "or"):
            rep = multi_density(inst, kind)
            exact_ok &= rep.xi_exact == rep.rho_I_exact
            if rep.n_t:
                exact_ok &= rep.rho_I_exact == \
                    Fraction(2 * rep.n_t, n * (n - 1)) * rep.rho_II_exact
    jensen_ok = True
    for _ in range(1000):
        w = delaunay(rng.random((int(rng.integers(3, 30)), 2))).weights()
        jensen_ok &= bool(np.sum(w ** 3) >= np.sum(w ** 2) ** 2 * (1 - 1e-12))
    tri = delaunay(ANCHORS)
    rho = np.array([multi_density(build_pcd(tri, sample_uniform_hull(tri, 500, stream(SEED, i)),
                                            2), "and").rho_I for i in range(500)])
    target = multi_triangle_params_I(tri.weights(), 2, "and").mean
    se = rho.std(ddof=1) / math.sqrt(rho.size)
    mean_ok = abs(rho.mean() - target) < 3 * se
    ok = exact_ok and jensen_ok and mean_ok
    criterion(9, ok, f"exact identities {exact_ok}, Jensen {jensen_ok}, mean rho_I "
                     f"{rho.mean():.5f} vs {target:.5f} (3 SE {3 * se:.5f})")
    assert ok


def test_criterion_10_joint_kernel_pmf(criterion):
    N = 10 ** 6
    t = sample_uniform_triangle(TE, 3 * N, stream(SEED, 0)).reshape(N, 3, 2)
    pmf = joint_kernel_pmf(TE, t, 2, "and")
    total = sum(pmf.pmf.values())
    p01, p10 = pmf.prob(0, 1), pmf.prob(1, 0)
    se_diff = math.sqrt((p01 + p10 - (p01 - p10) ** 2) / N)
    sym = abs(p01 - p10) < 3 * se_diff
    target = cov_kernel_and(2) + mean_and(2) ** 2
    corner = abs(pmf.prob(1, 1) - target) < 3 * pmf.se(1, 1)
    ok = abs(total - 1) < 1e-12 and sym and corner
    criterion(10, ok, f"sum {total:.12f}; P(0,1) - P(1,0) = {p01 - p10:+.5f} "
                      f"(3 SE {3 * se_diff:.5f}); P(1,1) = {pmf.prob(1, 1):.5f} vs "
                      f"{target:.5f} (3 SE {3 * pmf.se(1, 1):.5f})")
    assert ok


def test_criterion_11_csr_test(criterion):
    tri = delaunay(ANCHORS)
    pvals = [csr_test(sample_uniform_hull(tri, 200, stream(SEED, i)), ANCHORS, 2, "and",
                      triangulation=tri).p_two_sided for i in range(200)]
    rate = float(np.mean(np.array(pvals) < 0.05))
    level_ok = 0.02 <= rate <= 0.10
    # stated direction: segregation lowers the density (Z < 0), association raises it
    seg = segregation_scenario(tri, 0.6)
    assoc = association_scenario(tri, 0.8)
    z_seg = np.mean([csr_test(seg(stream(SEED + 1, i), 200), ANCHORS, 2, "and",
                              triangulation=tri).z for i in range(20)])
    z_assoc = np.mean([csr_test(assoc(stream(SEED + 2, i), 200), ANCHORS, 2, "and",
                                triangulation=tri).z for i in range(20)])
    seg_ok, assoc_ok = z_seg < -2, z_assoc > 2
    ok = level_ok and seg_ok and assoc_ok
    criterion(11, ok, f"level {rate:.3f} in [0.02, 0.10]: {level_ok}; mean Z segregation "
                      f"{z_seg:+.2f} (want < -2): {seg_ok}; mean Z association "
                      f"{z_assoc:+.2f} (want > +2): {assoc_ok}")
    assert ok


def test_null_z_is_standard_normal_at_scale():
    # not a numbered criterion: the CSR level above relies on this
    tri = delaunay(ANCHORS)
    z = [csr_test(sample_uniform_hull(tri, 200, stream(SEED + 3, i)), ANCHORS, 2, "and",
                  triangulation=tri).z for i in range(200)]
    assert stats.kstest(z, "norm").pvalue > 0.001
