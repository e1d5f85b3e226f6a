"""Unimodular Galton-Watson trees with a prescribed neighborhood law.

Given an admissible depth-h law P, the tree is grown by sampling the
depth-h ball from P and then extending each vertex with a typed
size-biased law: a vertex whose subtree pattern is t and whose view back
toward its parent is t' extends its subtree one level using the branch
law for (t, t').  The same branch laws drive an exact finite-depth
marginal computation (multinomial over child-subtree assignments), a
sampler, and the consistency checks tying the two together.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .neighborhood import (
    NeighborhoodLaw,
    edge_intensity_table,
    is_admissible,
)
from .rooted import (
    TREE,
    CanonicalClass,
    KindMismatchError,
    LabeledRootedGraph,
    canonicalize,
    children_subtrees,
    declare_depth,
    drop_root_child,
    instantiate,
    split_at_edge,
    truncate,
)


class SupportExplosionError(RuntimeError):
    """Raised when an exact marginal exceeds its support cap."""


class MissingBranchError(RuntimeError):
    """A sampler asked for a branch type with zero intensity.

    Types generated by a consistent recursion always have positive
    intensity, so hitting this means the input law was not admissible.
    """


def size_biased(P):
    """Size-biased offspring law of a degree law on the nonnegative integers.

    Maps k to (k+1) P(k+1) / mean(P); requires a positive finite mean.
    """
    mean = sum(k * p for k, p in P.items())
    if mean == 0:
        raise ValueError("size bias of a zero-mean law")
    return {k - 1: k * p / mean for k, p in P.items() if k >= 1 and p != 0}


@dataclass(frozen=True)
class TypedBranchingLaw:
    """Branch laws of an admissible depth-h law, one per edge type.

    table maps (t, t') with positive intensity to the law of the depth-h
    subtree at a vertex of that type; each entry is supported on trees
    whose depth-(h-1) truncation equals t.
    """

    h: int
    base: NeighborhoodLaw
    table: dict

    def law(self, t, t_prime):
        key = (declare_depth(t, self.h - 1), declare_depth(t_prime, self.h - 1))
        got = self.table.get(key)
        if got is None:
            raise MissingBranchError(f"no branch law for type {key}")
        return got


def typed_branching_law(P: NeighborhoodLaw) -> TypedBranchingLaw:
    """All branch laws of P at once, with exact normalization checks."""
    h = P.depth
    if h < 1:
        raise ValueError("branch laws need depth >= 1")
    rep = is_admissible(P)
    if not rep:
        raise ValueError(f"law is not admissible: {rep.violations[:3]}")
    acc: dict = {}
    for S, p in P.items():
        if S.kind != TREE:
            raise KindMismatchError("branching laws are defined for tree laws")
        subs = children_subtrees(S)
        seen = set()
        for v, sub in zip(S.rep[0], subs):
            if sub in seen:
                continue
            seen.add(sub)
            mult = subs.count(sub)
            tau = drop_root_child(S, sub)
            key = (truncate(tau, h - 1), sub)
            cell = acc.setdefault(key, {})
            cell[tau] = cell.get(tau, 0) + p * mult
    intens = edge_intensity_table(P).as_dict()
    table = {}
    for key, cell in acc.items():
        e = intens[key]
        weights = {tau: w / e for tau, w in cell.items()}
        table[key] = NeighborhoodLaw(h, weights, mode=P.mode)
    return TypedBranchingLaw(h, P, table)


def branch_law(P: NeighborhoodLaw, t: CanonicalClass, t_prime: CanonicalClass):
    """The branch law of P for one edge type (t, t')."""
    return typed_branching_law(P).law(t, t_prime)


# ---------------------------------------------------------------------------
# Exact marginals
# ---------------------------------------------------------------------------


def _child_types(block: CanonicalClass):
    """Distinct (subtree, look-back) types among the root children of a block.

    Returns [(s, s_complement, multiplicity)].  Children with the same
    subtree class automatically share the same complement.
    """
    h = block.depth
    subs = children_subtrees(block)
    counts = Counter(subs)
    out = []
    for s, n_a in sorted(counts.items(), key=lambda kv: kv[0].wire()):
        t_minus = drop_root_child(block, s)
        out.append((s, truncate(t_minus, h - 1), n_a))
    return out


def _extend_block(block, branching, cap, acc, weight):
    """One-step extension of a depth-h block to depth h+1, exact weights."""
    h = block.depth
    groups = []
    for s, s_comp, n_a in _child_types(block):
        law = branching.law(s, s_comp)
        opts = law.sorted_items()
        combos = []
        for combo in _multisets(len(opts), n_a):
            w = _multinomial(n_a, combo)
            pr = Fraction(1) if isinstance(weight, Fraction) else 1.0
            chosen = []
            for idx, cnt in enumerate(combo):
                if cnt == 0:
                    continue
                tau, p = opts[idx]
                pr = pr * p**cnt
                chosen.append((tau, cnt))
            combos.append((chosen, w * pr))
        groups.append(combos)
    for pick in _product(groups):
        chosen_all = []
        pr = weight
        for chosen, w in pick:
            chosen_all.extend(chosen)
            pr = pr * w
        tau = _assemble(chosen_all, h + 1)
        acc[tau] = acc.get(tau, 0) + pr
        if len(acc) > cap:
            raise SupportExplosionError(
                f"marginal support exceeded cap of {cap} classes"
            )


def _multisets(n_options, total):
    """All count vectors of length n_options summing to total."""
    if n_options == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _multisets(n_options - 1, total - first):
            yield (first,) + rest


def _multinomial(n, counts):
    out = 1
    rem = n
    for c in counts:
        out *= comb(rem, c)
        rem -= c
    return out


def _product(groups):
    if not groups:
        yield ()
        return
    head, *tail = groups
    for item in head:
        for rest in _product(tail):
            yield (item,) + rest


def _assemble(chosen, depth):
    """Tree class from a multiset of child-subtree classes."""
    g = LabeledRootedGraph(root=0)
    next_id = 1
    for sub, cnt in chosen:
        for _ in range(cnt):
            offset = next_id
            for v, nb in enumerate(sub.rep):
                for u in nb:
                    if u > v:
                        g.add_edge(v + offset, u + offset)
            g._ensure(offset)
            g.add_edge(0, offset)
            next_id += len(sub.rep)
    return canonicalize(g, depth)


def marginal_ugw(P: NeighborhoodLaw, k: int, support_cap: int = 10**6) -> NeighborhoodLaw:
    """Exact depth-k marginal of the UGW tree with depth-h law P.

    Iterates the one-step multinomial extension from depth h up to k.
    """
    if k < P.depth:
        raise ValueError(f"target depth {k} below law depth {P.depth}")
    law = P
    while law.depth < k:
        branching = typed_branching_law(law)
        acc: dict = {}
        for block, p in law.items():
            _extend_block(block, branching, support_cap, acc, p)
        law = NeighborhoodLaw(law.depth + 1, acc, mode=P.mode)
    return law


def consistency_check(P: NeighborhoodLaw, k: int) -> bool:
    """Marginals of the restarted recursion agree with the original.

    Computes Q as the depth-k marginal and compares the depth-(k+1)
    marginals of Q and of P for exact equality.
    """
    if not is_admissible(P):
        raise ValueError("consistency check requires an admissible law")
    Q = marginal_ugw(P, k)
    return marginal_ugw(Q, k + 1) == marginal_ugw(P, k + 1)


def edge_law_identity(P: NeighborhoodLaw) -> bool:
    """One-step edge intensities factor through the branch laws.

    With Q the depth-(h+1) marginal, checks
    e_Q(t, t') = e_P(s, s') * B(s,s')(t) * B(s',s)(t') exactly for every
    pair, where s, s' are the depth-(h-1) truncations of t, t' and B is
    the branch-law table of P.
    """
    rep = is_admissible(P)
    if not rep:
        raise ValueError("edge law identity requires an admissible law")
    h = P.depth
    branching = typed_branching_law(P)
    e_P = edge_intensity_table(P).as_dict()
    Q = marginal_ugw(P, h + 1)
    e_Q = edge_intensity_table(Q).as_dict()
    rhs = {}
    for (s, s_p), e in e_P.items():
        fwd = branching.table.get((s, s_p))
        bwd = branching.table.get((s_p, s))
        if fwd is None or bwd is None:
            return False
        for t, pt in fwd.items():
            for t_p, ptp in bwd.items():
                key = (t, t_p)
                rhs[key] = rhs.get(key, 0) + e * pt * ptp
    rhs = {k: v for k, v in rhs.items() if v != 0}
    return rhs == e_Q


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _draw(items, rng: random.Random):
    """Weighted draw from [(item, weight)] with a deterministic item order."""
    total = float(sum(w for _, w in items))
    x = rng.random() * total
    acc = 0.0
    for item, w in items:
        acc += float(w)
        if x < acc:
            return item
    return items[-1][0]


def _graft(tree: LabeledRootedGraph, v: int, new_sub: CanonicalClass):
    """Replace the subtree hanging at v (away from its parent) by new_sub.

    new_sub's root is identified with v; new vertex ids are fresh.
    """
    parent = _parent_of(tree, v)
    old = _collect_subtree(tree, parent, v)
    old.discard(v)
    for x in old:
        for w in list(tree.adj[x]):
            tree.adj[w].discard(x)
        del tree.adj[x]
    tree.adj[v] = {parent}
    base = max(tree.adj) + 1
    rep = new_sub.rep
    ids = {0: v}
    for i in range(1, len(rep)):
        ids[i] = base + i - 1
    for i, nb in enumerate(rep):
        for j in nb:
            if j > i:
                tree.add_edge(ids[i], ids[j])


def _parent_of(tree, v):
    # BFS parents from the root; trees are small here.
    seen = {tree.root: None}
    stack = [tree.root]
    while stack:
        x = stack.pop()
        for w in tree.adj[x]:
            if w not in seen:
                seen[w] = x
                stack.append(w)
    return seen[v]


def _collect_subtree(tree, parent, v):
    keep = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for w in tree.adj[x]:
            if (x, w) in ((parent, v), (v, parent)):
                continue
            if w not in keep:
                keep.add(w)
                stack.append(w)
    return keep


def sample_ugw(P: NeighborhoodLaw, k: int, rng: random.Random) -> LabeledRootedGraph:
    """Depth-k truncation of a UGW tree sample with depth-h law P.

    The root block is drawn from P; the tree then grows one level per
    round by drawing, for each frontier vertex, the typed branch law of
    its (subtree pattern, look-back pattern) pair.  Both patterns are
    recomputed from the partially built tree by edge splitting, never
    cached.
    """
    h = P.depth
    if k < h:
        raise ValueError(f"output depth {k} below law depth {h}")
    rep = is_admissible(P)
    if not rep:
        raise ValueError("sampling requires an admissible law")
    branching = typed_branching_law(P)
    block = _draw(P.sorted_items(), rng)
    tree = instantiate(block)
    depths = _depths(tree)
    for r in range(1, k - h + 1):
        frontier = [v for v, d in depths.items() if d == r]
        for v in sorted(frontier):
            parent = _parent_of(tree, v)
            own = canonicalize(split_at_edge(tree, parent, v), h - 1)
            back = canonicalize(split_at_edge(tree, v, parent), h - 1)
            law = branching.law(own, back)
            tau = _draw(law.sorted_items(), rng)
            _graft(tree, v, tau)
        depths = _depths(tree)
    return tree


def _depths(tree):
    out = {tree.root: 0}
    frontier = [tree.root]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in tree.adj[u]:
                if w not in out:
                    out[w] = d
                    nxt.append(w)
        frontier = nxt
    return out


def empirical_law(samples, h: int) -> NeighborhoodLaw:
    """Empirical depth-h law of a list of sampled rooted trees."""
    counts: Counter = Counter(canonicalize(t, h) for t in samples)
    n = len(samples)
    return NeighborhoodLaw(h, {c: Fraction(v, n) for c, v in counts.items()})


# ---------------------------------------------------------------------------
# Colored multi-type trees
# ---------------------------------------------------------------------------


def _mat_get(M, c):
    return M[c[0] - 1][c[1] - 1]


def _mat_add(M, c, delta):
    rows = [list(r) for r in M]
    rows[c[0] - 1][c[1] - 1] += delta
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class ColoredOffspringLaw:
    """Offspring law on L x L count matrices with conjugate-balanced means."""

    L: int
    base: dict  # matrix -> weight

    def __post_init__(self):
        colors = [(i, j) for i in range(1, self.L + 1) for j in range(1, self.L + 1)]
        for i, j in colors:
            if i < j:
                a = self.color_mean((i, j))
                b = self.color_mean((j, i))
                if isinstance(a, Fraction) and isinstance(b, Fraction):
                    ok = a == b
                else:
                    ok = abs(float(a) - float(b)) <= 1e-9
                if not ok:
                    raise ValueError(
                        f"mean of color {(i, j)} is {a} but conjugate mean is {b}"
                    )

    def color_mean(self, c):
        return sum(p * _mat_get(M, c) for M, p in self.base.items())


def colored_branch_law(P: ColoredOffspringLaw, c) -> dict:
    """Size-biased offspring law seen across an edge of color c.

    Conjugate-weighted shift of the base law; a color with zero mean
    degenerates to a point mass at the zero matrix.
    """
    cbar = (c[1], c[0])
    mean = P.color_mean(c)
    if mean == 0:
        zero = tuple(tuple(0 for _ in range(P.L)) for _ in range(P.L))
        return {zero: Fraction(1)}
    out = {}
    for M, p in P.base.items():
        mc = _mat_get(M, cbar)
        if mc >= 1:
            shifted = _mat_add(M, cbar, -1)
            out[shifted] = out.get(shifted, 0) + mc * p / mean
    return out


@dataclass
class ColoredRootedTree:
    """Rooted tree whose non-root vertices carry the color of their parent edge."""

    n: int
    root: int
    parents: dict  # vertex -> parent
    types: dict  # vertex -> color (absent for the root)

    def children(self):
        out = {v: [] for v in range(self.n)}
        for v, p in self.parents.items():
            out[p].append(v)
        return out

    def depth_counts(self):
        depths = {self.root: 0}
        order = sorted(self.parents, key=lambda v: v)
        for v in order:
            depths[v] = depths[self.parents[v]] + 1
        return Counter(depths.values())

    def colorblind(self) -> LabeledRootedGraph:
        g = LabeledRootedGraph(root=self.root, vertices=range(self.n))
        for v, p in self.parents.items():
            g.add_edge(v, p)
        return g


def sample_ugw_colored(P: ColoredOffspringLaw, k: int, rng: random.Random) -> ColoredRootedTree:
    """Multi-type tree: root offspring from the base law, then per-color branch laws."""
    colors = [(i, j) for i in range(1, P.L + 1) for j in range(1, P.L + 1)]
    hats = {c: sorted(colored_branch_law(P, c).items()) for c in colors}
    base_items = sorted(P.base.items())
    parents: dict = {}
    types: dict = {}
    n = 1
    frontier = [(0, None, 0)]  # (vertex, type, depth)
    while frontier:
        v, ctype, depth = frontier.pop(0)
        if depth >= k:
            continue
        M = _draw(base_items, rng) if ctype is None else _draw(hats[ctype], rng)
        for c in colors:
            for _ in range(_mat_get(M, c)):
                parents[n] = v
                types[n] = c
                frontier.append((n, c, depth + 1))
                n += 1
    return ColoredRootedTree(n, 0, parents, types)


def sample_ugw_bipartite(P1, P2, k: int, rng: random.Random) -> LabeledRootedGraph:
    """Tree with alternating types; root type i drawn with odds of the opposite mean.

    P1 and P2 are degree laws with positive finite means d1, d2.  The root
    is type i with probability d_{other}/(d1+d2) and reproduces by P_i;
    deeper type-i vertices reproduce by the size-biased law of P_i.
    """
    d1 = sum(kk * p for kk, p in P1.items())
    d2 = sum(kk * p for kk, p in P2.items())
    if d1 <= 0 or d2 <= 0:
        raise ValueError("both degree laws need positive mean")
    p1 = d2 / (d1 + d2)
    laws = {1: sorted(P1.items()), 2: sorted(P2.items())}
    hats = {1: sorted(size_biased(P1).items()), 2: sorted(size_biased(P2).items())}
    root_type = 1 if rng.random() < float(p1) else 2
    tree = LabeledRootedGraph(root=0)
    n = 1
    frontier = [(0, root_type, 0, True)]
    while frontier:
        v, tpe, depth, is_root = frontier.pop(0)
        if depth >= k:
            continue
        deg = _draw(laws[tpe] if is_root else hats[tpe], rng)
        for _ in range(deg):
            tree.add_edge(v, n)
            frontier.append((n, 3 - tpe, depth + 1, False))
            n += 1
    return tree


def bipartite_root_probability(P1, P2):
    d1 = sum(k * p for k, p in P1.items())
    d2 = sum(k * p for k, p in P2.items())
    tot = d1 + d2
    if isinstance(tot, float):
        return d2 / tot, d1 / tot
    return Fraction(d2) / tot, Fraction(d1) / tot
