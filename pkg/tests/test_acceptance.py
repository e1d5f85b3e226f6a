"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here, nothing is calibrated at runtime.
"""

import math
import random
import time
from fractions import Fraction

from ugwldp.entropy import (
    INF,
    discontinuity_bound,
    entropy_constant,
    entropy_increments,
    rate_binomial,
    rate_degree_er,
    rate_fixed_degrees,
    relative_entropy_poisson,
    sigma_ugw1,
    ugw_entropy,
)
from ugwldp.experiments import (
    concentrate_experiment,
    converge_experiment,
    cycles_experiment,
)
from ugwldp.neighborhood import (
    NeighborhoodLaw,
    mean_degree,
    poisson_law,
    truncate_law,
)
from ugwldp.oracle import brute_ugw_marginal, exact_equivalent_count
from ugwldp.tree_encoding import count_equivalent_graphs
from ugwldp.ugw import consistency_check, edge_law_identity, marginal_ugw
from ugwldp.verify import (
    check_exact_counts,
    marginal_law_pool,
    treelike_graph_pool,
)

HALF = Fraction(1, 2)


def report(num, name, detail):
    print(f"ACCEPTANCE {num} {name}: PASS ({detail})")


def test_criterion_1_exact_count_suite():
    t0 = time.time()
    ok, detail = check_exact_counts(quick=False)
    elapsed = time.time() - t0
    assert ok, detail
    n_cases = int(detail.split()[0])
    assert n_cases >= 200
    assert elapsed < 120
    report(1, "exact-count suite", f"{detail}, {elapsed:.1f}s")


def test_criterion_2_equivalent_graph_counts():
    t0 = time.time()
    pool = treelike_graph_pool(full=True)
    assert len(pool) >= 20
    for G, h in pool:
        assert G.n <= 6
        assert count_equivalent_graphs(G, h) == exact_equivalent_count(G, h)
    elapsed = time.time() - t0
    assert elapsed < 300
    report(2, "neighborhood-count identity", f"{len(pool)} graphs, {elapsed:.1f}s")


def test_criterion_3_marginal_suite():
    t0 = time.time()
    pool = marginal_law_pool()
    assert len(pool) >= 10
    combos = set()
    for P, h, k in pool:
        assert P.depth == h
        assert marginal_ugw(P, k) == brute_ugw_marginal(P, k)
        assert consistency_check(P, k)
        assert edge_law_identity(P)
        combos.add((h, k))
    assert combos == {(1, 2), (1, 3), (2, 3)}
    elapsed = time.time() - t0
    assert elapsed < 120
    report(3, "exact tree-marginal suite", f"{len(pool)} laws, {elapsed:.1f}s")


def test_criterion_4_entropy_identities():
    t0 = time.time()
    rng = random.Random(404)
    checked = 0
    while checked < 20:
        ks = rng.sample(range(7), rng.randint(2, 4))
        ws = [rng.randint(1, 9) for _ in ks]
        tot = sum(ws)
        P = {k: Fraction(w, tot) for k, w in zip(ks, ws)}
        if sum(k * p for k, p in P.items()) == 0:
            continue
        law = NeighborhoodLaw.from_degree_law(P)
        d = float(mean_degree(law))
        gap = abs(
            ugw_entropy(law) - (entropy_constant(d) - relative_entropy_poisson(P, d))
        )
        assert gap <= 1e-12
        checked += 1

    want = 1.5 * math.log(3) - 1.5 - math.log(6)
    got = ugw_entropy(NeighborhoodLaw.from_degree_law({3: Fraction(1)}))
    assert abs(got - want) <= 1e-12

    grid = [
        NeighborhoodLaw.from_degree_law({1: HALF, 2: HALF}),
        NeighborhoodLaw.from_degree_law({1: Fraction(1, 3), 3: Fraction(2, 3)}),
        NeighborhoodLaw.from_degree_law({2: Fraction(1)}),
    ]
    for base in grid:
        rho = marginal_ugw(base, 3)
        d = float(mean_degree(rho))
        incs = entropy_increments(rho)
        assert all(x >= -1e-12 for x in incs)
        assert abs(entropy_constant(d) - sum(incs) - ugw_entropy(rho)) <= 1e-10
        values = [ugw_entropy(truncate_law(rho, k)) for k in (1, 2, 3)]
        assert all(b <= a + 1e-10 for a, b in zip(values, values[1:]))
    elapsed = time.time() - t0
    assert elapsed < 60
    report(4, "entropy identities", f"20 laws + 3 towers, {elapsed:.1f}s")


def test_criterion_5_cycle_statistics():
    t0 = time.time()
    rows = cycles_experiment(d=3, n=1000, samples=2000, seed=1205)
    by_len = {r["length"]: r for r in rows}
    for ell, target in ((3, 4 / 3), (4, 2.0)):
        row = by_len[ell]
        assert abs(row["mean"] - target) <= 3 * row["stderr"], row
    acc = by_len["simple_rate"]
    assert abs(acc["target"] - math.exp(-2)) < 1e-12
    assert abs(acc["mean"] - acc["target"]) <= 3 * acc["stderr"], acc
    elapsed = time.time() - t0
    assert elapsed < 600
    report(
        5,
        "cycle statistics",
        f"tri {by_len[3]['mean']:.3f} vs 4/3, quad {by_len[4]['mean']:.3f} vs 2, "
        f"simple {acc['mean']:.4f} vs {acc['target']:.4f}, {elapsed:.1f}s",
    )


def test_criterion_6_local_convergence():
    t0 = time.time()
    details = []
    for deg_law in ({3: 1}, {1: HALF, 2: HALF}):
        rows = converge_experiment(
            deg_law, [200, 800, 3200], samples=200, depth=2, seed=1206
        )
        tvs = [r["tv"] for r in rows]
        assert tvs[0] > tvs[1] > tvs[2], tvs
        assert tvs[2] <= 0.05, tvs
        details.append("->".join(f"{x:.4f}" for x in tvs))
    elapsed = time.time() - t0
    assert elapsed < 600
    report(6, "local convergence", f"tv {details[0]} and {details[1]}, {elapsed:.1f}s")


def test_criterion_7_concentration():
    t0 = time.time()
    rows = concentrate_experiment(d=3, n_list=[500, 2000], samples=300, seed=1207)
    fitted = [r["fitted_C"] for r in rows]
    assert max(fitted) <= 2 * min(fitted), fitted
    for row in rows:
        for point in row["tail"]:
            assert point["empirical"] <= point["bound"] + 1e-12, (row["n"], point)
    elapsed = time.time() - t0
    assert elapsed < 600
    report(
        7,
        "concentration",
        f"fitted C {fitted[0]:.3f}/{fitted[1]:.3f}, envelope holds, {elapsed:.1f}s",
    )


def test_criterion_8_rate_function_zeros():
    t0 = time.time()
    P = {1: HALF, 2: HALF}
    Q = marginal_ugw(NeighborhoodLaw.from_degree_law(P), 3)
    assert abs(rate_fixed_degrees(Q, P)) <= 1e-10

    lam = 2.0
    assert rate_degree_er(poisson_law(lam, tail=1e-14).degree_law(), lam) <= 1e-8
    assert abs(rate_binomial(poisson_law(lam, tail=1e-14), lam)) <= 1e-8

    # regular ensemble: any law whose degree marginal is not the constant
    # is infinitely unlikely
    d = 3
    others = [
        NeighborhoodLaw.from_degree_law({2: Fraction(1)}),
        NeighborhoodLaw.from_degree_law({2: HALF, 3: HALF}),
        marginal_ugw(NeighborhoodLaw.from_degree_law({2: HALF, 4: HALF}), 2),
        NeighborhoodLaw.from_degree_law({0: Fraction(1)}),
    ]
    for Qbad in others:
        assert rate_fixed_degrees(Qbad, {d: 1}) == INF
    reg = marginal_ugw(NeighborhoodLaw.from_degree_law({d: Fraction(1)}), 2)
    assert abs(rate_fixed_degrees(reg, {d: 1})) <= 1e-12
    elapsed = time.time() - t0
    assert elapsed < 60
    report(8, "rate-function zeros", f"zeros and the regular dichotomy, {elapsed:.1f}s")


def test_criterion_9_discontinuity_gap():
    t0 = time.time()
    P = {2: HALF, 3: HALF}
    d = 2.5
    limit = sigma_ugw1(P) - (d / 2 - 1) * math.log(2)
    table = []
    for n in (4, 10, 100, 1000, 10000):
        Pn = {2: HALF * (1 + Fraction(1, n)), 3: HALF * (1 - Fraction(1, n))}
        bound = discontinuity_bound(P, Pn)
        table.append((n, bound, bound - limit))
    # the bound approaches the two-block limit from above; the margin
    # criterion holds once the perturbation is small
    gaps = [row[2] for row in table]
    assert all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))
    for n, bound, gap in table:
        if n >= 100:
            assert bound < limit + 0.01, (n, bound, limit)
    assert all(bound < sigma_ugw1(P) for _, bound, _ in table)
    elapsed = time.time() - t0
    assert elapsed < 60
    lines = ", ".join(f"n={n}: {gap:+.4f}" for n, _, gap in table)
    report(9, "two-block entropy gap", f"{lines}, {elapsed:.1f}s")
