"""Seeded statistical experiments over the configuration model.

Three experiments back the quantitative claims: short-cycle counts
against their limiting intensities, local convergence of neighborhood
laws toward the prescribed-law tree, and switch-Lipschitz concentration
of neighborhood frequencies.  All runs are deterministic in (parameters,
seed); fan-out across threads partitions the sample index range and
reduces in index order.
"""

from __future__ import annotations

import math
import random
import statistics
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .config_model import (
    DegreeSequence,
    colorblind,
    colorblind_simple,
    graph_of,
    has_cycle_leq,
    sample_G_Dh,
    sample_configuration,
)
from .neighborhood import NeighborhoodLaw, empirical_distribution, tv_distance
from .ugw import marginal_ugw


def count_loops(bar) -> int:
    return sum(m // 2 for (u, v), m in bar.w.items() if u == v)


def count_parallel_pairs(bar) -> int:
    return sum(m * (m - 1) // 2 for (u, v), m in bar.w.items() if u != v)


def count_triangles(bar) -> int:
    adj = bar.adjacency()
    total = 0
    for x in range(bar.n):
        nbrs = sorted(w for w in adj[x] if w > x)
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                muw = adj[u].get(w, 0)
                if muw:
                    total += adj[x][u] * adj[x][w] * muw
    return total


def count_four_cycles(bar) -> int:
    adj = bar.adjacency()
    acc: dict = {}
    for x in range(bar.n):
        nbrs = sorted(adj[x])
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1 :]:
                m = adj[x][u] * adj[x][w]
                s, sq = acc.get((u, w), (0, 0))
                acc[(u, w)] = (s + m, sq + m * m)
    total = 0
    for s, sq in acc.values():
        total += s * s - sq
    assert total % 4 == 0
    return total // 4


def cycle_counts(bar, max_len=4) -> dict:
    out = {}
    if max_len >= 1:
        out[1] = count_loops(bar)
    if max_len >= 2:
        out[2] = count_parallel_pairs(bar)
    if max_len >= 3:
        out[3] = count_triangles(bar)
    if max_len >= 4:
        out[4] = count_four_cycles(bar)
    return out


def regular_intensity(d: int, ell: int) -> float:
    """Limiting mean number of length-ell cycles in the d-regular model."""
    return (d - 1) ** ell / (2 * ell)


def _fan_out(worker, samples, seed, threads):
    """Deterministic fan-out: one derived seed per sample, ordered reduce."""
    seeds = [seed * 1_000_003 + i for i in range(samples)]
    if threads <= 1:
        return [worker(s) for s in seeds]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(worker, seeds))


def cycles_experiment(d: int, n: int, samples: int, seed: int, threads: int = 1):
    """Short-cycle counts and simpleness rate of the d-regular pairing model."""
    D = DegreeSequence.single_color([d] * n)

    def one(s):
        rng = random.Random(s)
        bar = colorblind(graph_of(sample_configuration(D, rng)))
        counts = cycle_counts(bar, 4)
        counts["simple"] = 0 if has_cycle_leq(bar, 2) else 1
        return counts

    rows = _fan_out(one, samples, seed, threads)
    out = []
    for ell in (1, 2, 3, 4):
        values = [r[ell] for r in rows]
        mean = statistics.fmean(values)
        sd = statistics.pstdev(values)
        stderr = sd / math.sqrt(samples)
        out.append(
            {
                "length": ell,
                "mean": mean,
                "stderr": stderr,
                "target": regular_intensity(d, ell),
            }
        )
    acc = statistics.fmean(r["simple"] for r in rows)
    lam2 = regular_intensity(d, 1) + regular_intensity(d, 2)
    out.append(
        {
            "length": "simple_rate",
            "mean": acc,
            "stderr": math.sqrt(max(acc * (1 - acc), 1e-12) / samples),
            "target": math.exp(-lam2),
        }
    )
    return out


def degree_sequence_for_law(P_deg: dict, n: int) -> DegreeSequence:
    """Deterministic single-color degree sequence matching a degree law.

    Largest-remainder rounding of n * P(k); if the total is odd, one vertex
    is moved between two support values of different parity.
    """
    items = sorted((int(k), Fraction(p)) for k, p in P_deg.items() if p)
    counts = {k: int(n * p) for k, p in items}
    rem = sorted(
        ((n * p - counts[k], k) for k, p in items), reverse=True
    )
    short = n - sum(counts.values())
    for i in range(short):
        counts[rem[i % len(rem)][1]] += 1
    if sum(k * c for k, c in counts.items()) % 2 == 1:
        odd_gaps = [
            (a, b)
            for a in counts
            for b in counts
            if a != b and (a - b) % 2 == 1 and counts[a] > 0
        ]
        if not odd_gaps:
            raise ValueError("cannot fix parity within the law's support")
        a, b = odd_gaps[0]
        counts[a] -= 1
        counts[b] += 1
    degrees = []
    for k in sorted(counts):
        degrees.extend([k] * counts[k])
    return DegreeSequence.single_color(degrees)


def converge_experiment(
    P_deg: dict,
    n_list,
    samples: int,
    depth: int,
    seed: int,
    threads: int = 1,
    girth_bound: int = 2,
):
    """Distance from the mean empirical law to the tree-marginal target."""
    law = NeighborhoodLaw.from_degree_law(
        {k: Fraction(p) for k, p in P_deg.items()}
    )
    target = marginal_ugw(law, depth)
    rows = []
    for n in n_list:
        D = degree_sequence_for_law(P_deg, n)

        def one(s, D=D):
            rng = random.Random(s)
            G, _ = sample_G_Dh(D, girth_bound, rng)
            return empirical_distribution(colorblind_simple(G), depth)

        laws = _fan_out(one, samples, seed + n, threads)
        mean_support: dict = {}
        for lw in laws:
            for cls, p in lw.items():
                mean_support[cls] = mean_support.get(cls, 0) + Fraction(p, samples)
        mean_law = NeighborhoodLaw(depth, mean_support)
        rows.append(
            {
                "n": n,
                "samples": samples,
                "tv": float(tv_distance(mean_law, target)),
            }
        )
    return rows


def concentration_envelope_delta(theta: int, L: int, k: int, mean_half_edges: float):
    """Exponent constant of the switch-Lipschitz tail bound.

    One switch moves a depth-k class frequency count by at most 4*kappa
    with kappa = 2 * sum_{s<k} (theta L^2)^s; the bound on the frequency
    deviation is 2 exp(-delta n t^2) with delta = n / ((4 kappa)^2 N).
    """
    kappa = 2 * sum((theta * L * L) ** s for s in range(k))
    return 1.0 / ((4 * kappa) ** 2 * mean_half_edges)


def concentrate_experiment(
    d: int, n_list, samples: int, seed: int, threads: int = 1, depth: int = 1
):
    """Frequency concentration of the plain depth-1 star class."""
    rows = []
    for n in n_list:
        D = DegreeSequence.single_color([d] * n)

        def one(s, D=D, n=n):
            # frequency of the plain d-star ball: d distinct simple edges,
            # no loops anywhere in the ball, no edges among the neighbors
            rng = random.Random(s)
            bar = colorblind(graph_of(sample_configuration(D, rng)))
            adj = bar.adjacency()
            loops = {u for (u, v), m in bar.w.items() if u == v and m > 0}
            hits = 0
            for v in range(n):
                if v in loops:
                    continue
                nbrs = adj[v]
                if len(nbrs) != d or any(m != 1 for m in nbrs.values()):
                    continue
                if any(u in loops for u in nbrs):
                    continue
                ns = sorted(nbrs)
                if any(w in adj[u] for i, u in enumerate(ns) for w in ns[i + 1 :]):
                    continue
                hits += 1
            return hits / n

        freqs = _fan_out(one, samples, seed + n, threads)
        mean = statistics.fmean(freqs)
        sd = statistics.pstdev(freqs)
        delta = concentration_envelope_delta(d, 1, depth, d)
        grid = [0.002, 0.005, 0.01, 0.02, 0.05]
        tail = []
        for t in grid:
            emp = sum(1 for f in freqs if abs(f - mean) >= t) / samples
            bound = 2 * math.exp(-delta * n * t * t)
            tail.append({"t": t, "empirical": emp, "bound": bound})
        rows.append(
            {
                "n": n,
                "samples": samples,
                "mean": mean,
                "sd": sd,
                "fitted_C": sd * math.sqrt(n),
                "delta": delta,
                "tail": tail,
            }
        )
    return rows
