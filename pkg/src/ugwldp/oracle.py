"""Brute-force enumeration oracles.

Everything here recomputes quantities by definition (exhaustive
enumeration, literal formula evaluation) so the closed-form
implementations elsewhere have something independent to agree with.
Oracles share only the canonical-class machinery and the definitional
configuration-to-graph map; they are allowed to be exponentially slow.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .config_model import (
    Configuration,
    DegreeSequence,
    Multigraph,
    bijection_colors,
    colorblind,
    conj,
    graph_of,
    half_edges,
    matching_colors,
)
from .neighborhood import NeighborhoodLaw, empirical_distribution
from .rooted import (
    LabeledRootedGraph,
    SimpleGraph,
    canonicalize,
    children_subtrees,
    declare_depth,
    drop_root_child,
    edge_type_count,
    join_at_root,
    truncate,
)


def enumerate_graphs(n: int, m: int):
    """All simple graphs on {0..n-1} with exactly m edges."""
    if n > 8:
        raise ValueError("graph enumeration is capped at n <= 8")
    slots = list(itertools.combinations(range(n), 2))
    for chosen in itertools.combinations(slots, m):
        yield SimpleGraph(n, frozenset(chosen))


def _all_matchings(points):
    if not points:
        yield ()
        return
    first = points[0]
    for i in range(1, len(points)):
        partner = points[i]
        rest = points[1:i] + points[i + 1 :]
        for sub in _all_matchings(rest):
            yield ((first, partner),) + sub


def enumerate_configurations(D: DegreeSequence, limit: int = 10**6):
    """Every configuration of D exactly once (guarded by the space size)."""
    from .config_model import config_space_size

    if config_space_size(D) > limit:
        raise ValueError("configuration space beyond the oracle limit")
    match_groups = []
    for c in matching_colors(D.L):
        match_groups.append((c, list(_all_matchings(tuple(half_edges(D, c))))))
    bij_groups = []
    for c in bijection_colors(D.L):
        left = half_edges(D, c)
        right = half_edges(D, conj(c))
        if len(left) != len(right):
            raise ValueError("unbalanced conjugate colors")
        maps = [dict(zip(left, perm)) for perm in itertools.permutations(right)]
        bij_groups.append((c, maps))
    match_choices = [g[1] for g in match_groups]
    bij_choices = [g[1] for g in bij_groups]
    for mcombo in itertools.product(*match_choices):
        matchings = {c: pairs for (c, _), pairs in zip(match_groups, mcombo)}
        for bcombo in itertools.product(*bij_choices):
            bijections = {c: bij for (c, _), bij in zip(bij_groups, bcombo)}
            yield Configuration(D, dict(matchings), dict(bijections))


def exact_cm_law(D: DegreeSequence, limit: int = 10**6):
    """Exact law of the projected configuration, keyed by graph."""
    total = 0
    counts = {}
    for sigma in enumerate_configurations(D):
        total += 1
        if total > limit:
            raise ValueError("configuration space beyond the oracle limit")
        G = graph_of(sigma)
        counts[G] = counts.get(G, 0) + 1
    return {G: Fraction(c, total) for G, c in counts.items()}


def exact_fiber_sizes(D: DegreeSequence, limit: int = 10**6):
    total = 0
    counts = {}
    for sigma in enumerate_configurations(D):
        total += 1
        if total > limit:
            raise ValueError("configuration space beyond the oracle limit")
        G = graph_of(sigma)
        counts[G] = counts.get(G, 0) + 1
    return counts, total


def _has_short_cycle_brute(G: Multigraph, h: int) -> bool:
    """Definitional short-cycle test: loops, parallel pairs, subset cycles."""
    for (u, v), m in G.w.items():
        if u == v and m > 0:
            return True
        if h >= 2 and u != v and m >= 2:
            return True
    for ell in range(3, h + 1):
        for subset in itertools.combinations(range(G.n), ell):
            rest = subset[1:]
            for perm in itertools.permutations(rest):
                cycle = (subset[0],) + perm
                if all(
                    G.weight(cycle[i], cycle[(i + 1) % ell]) >= 1 for i in range(ell)
                ):
                    return True
    return False


def exact_acceptance_fraction(D: DegreeSequence, h: int, limit: int = 10**6) -> Fraction:
    """Fraction of configurations whose projection has no cycle <= h."""
    total = 0
    good = 0
    for sigma in enumerate_configurations(D):
        total += 1
        if total > limit:
            raise ValueError("configuration space beyond the oracle limit")
        if not _has_short_cycle_brute(colorblind(graph_of(sigma)), h):
            good += 1
    return Fraction(good, total)


def exact_equivalent_count(G: SimpleGraph, h: int) -> int:
    """Graphs on [n] with the same edge count and depth-h law, by full scan."""
    if G.n > 7:
        raise ValueError("equivalent-graph scan is capped at n <= 7")
    target = empirical_distribution(G, h)
    count = 0
    for H in enumerate_graphs(G.n, G.m):
        if empirical_distribution(H, h) == target:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Independent finite-depth marginal of the prescribed-neighborhood tree
# ---------------------------------------------------------------------------


def _oracle_edge_intensity(P: NeighborhoodLaw, t, t_prime):
    h = P.depth
    return sum(p * edge_type_count(g, h, t, t_prime) for g, p in P.items())


def _oracle_branch_law(P: NeighborhoodLaw, t, t_prime):
    """Literal evaluation of the typed size-biased extension law.

    Weight of tau is P(tau joined with a new root child carrying t') times
    one plus the number of existing root children of tau with subtree t',
    over the edge intensity of (t, t').
    """
    h = P.depth
    t = declare_depth(t, h - 1)
    t_prime = declare_depth(t_prime, h - 1)
    e = _oracle_edge_intensity(P, t, t_prime)
    if e == 0:
        raise ValueError(f"zero intensity for {(t, t_prime)}")
    candidates = set()
    for S in P:
        for sub in set(children_subtrees(S)):
            if sub is t_prime:
                tau = drop_root_child(S, sub)
                if truncate(tau, h - 1) is t:
                    candidates.add(tau)
    out = {}
    for tau in candidates:
        joined = join_at_root(tau, t_prime)
        mult = 1 + children_subtrees(tau).count(t_prime)
        w = P.prob(joined) * mult
        if w:
            out[tau] = Fraction(w) / e
    return out


def _attach_subtree(g: LabeledRootedGraph, sub):
    """Graft a fresh copy of `sub` as a new child of g's root (vertex 0)."""
    offset = max(g.adj) + 1
    for v, nb in enumerate(sub.rep):
        for u in nb:
            if u > v:
                g.add_edge(v + offset, u + offset)
    g._ensure(offset)
    g.add_edge(0, offset)


def brute_ugw_marginal(P: NeighborhoodLaw, k: int) -> NeighborhoodLaw:
    """Exact depth-k marginal by direct summation over ordered child assignments.

    Recursion on the law of the depth-j subtree seen across an edge of a
    given type; no multinomial grouping anywhere.  The look-back pattern
    of a grandchild is rebuilt explicitly from the sampled block and the
    parent's truncated view.
    """
    h = P.depth
    if k < h:
        raise ValueError("target depth below the law depth")
    if k == h:
        return P
    memo = {}

    def branch(t, t_prime, j):
        """Law of the depth-j subtree at a vertex of type (t, t'), j >= h."""
        key = (t, t_prime, j)
        if key in memo:
            return memo[key]
        base = _oracle_branch_law(P, t, t_prime)
        if j == h:
            memo[key] = base
            return base
        out = {}
        for tau, w in base.items():
            for sub_tree, wt in _extend(tau, t_prime, j):
                out[sub_tree] = out.get(sub_tree, 0) + w * wt
        memo[key] = out
        return out

    def _extend(tau, t_prime, j):
        """Depth-j refinements of the depth-h subtree tau at a (., t') vertex."""
        kids = children_subtrees(tau)
        parent_stub = truncate(t_prime, h - 2) if h >= 2 else None
        options = []
        for s in kids:
            if h >= 2:
                rest = truncate(drop_root_child(tau, s), h - 1)
                look = join_at_root(rest, parent_stub)
            else:
                look = truncate(tau, 0)
            sub_laws = branch(s, look, j - 1)
            options.append(sorted(sub_laws.items(), key=lambda kv: kv[0].wire()))
        for combo in itertools.product(*options):
            g = LabeledRootedGraph(root=0)
            wt = Fraction(1)
            for sub, w in combo:
                wt *= w
                _attach_subtree(g, sub)
            yield canonicalize(g, j), wt

    out = {}
    for g, p in P.items():
        kids = children_subtrees(g)
        options = []
        for s in kids:
            look = truncate(drop_root_child(g, s), h - 1)
            sub_laws = branch(s, look, k - 1)
            options.append(sorted(sub_laws.items(), key=lambda kv: kv[0].wire()))
        for combo in itertools.product(*options):
            tree = LabeledRootedGraph(root=0)
            wt = Fraction(p)
            for sub, w in combo:
                wt *= w
                _attach_subtree(tree, sub)
            cls = canonicalize(tree, k)
            out[cls] = out.get(cls, 0) + wt
    return NeighborhoodLaw(k, out, mode=P.mode)
