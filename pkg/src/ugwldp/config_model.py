"""Directed colored multigraphs and their uniform configuration model.

Colors are ordered pairs (i, j) of indices in 1..L; the conjugate of
(i, j) is (j, i).  A degree sequence assigns every vertex an L x L count
matrix; half-edges of a diagonal color are paired by a uniform perfect
matching, and half-edges of color (i, j) with i < j are matched to
half-edges of the conjugate color by a uniform bijection.  Exact fiber
and probability formulas, cycle statistics, rejection sampling of the
short-cycle-free set, and a lazy neighborhood exploration live here.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

Color = tuple  # (i, j), 1-based


def conj(c: Color) -> Color:
    return (c[1], c[0])


def all_colors(L):
    return [(i, j) for i in range(1, L + 1) for j in range(1, L + 1)]


def matching_colors(L):
    return [(i, i) for i in range(1, L + 1)]


def bijection_colors(L):
    return [(i, j) for i in range(1, L + 1) for j in range(i + 1, L + 1)]


@dataclass(frozen=True)
class ColorSet:
    """The L^2 ordered color pairs with their conjugation and partitions."""

    L: int

    @property
    def colors(self):
        return all_colors(self.L)

    @property
    def below(self):
        return bijection_colors(self.L)

    @property
    def diagonal(self):
        return matching_colors(self.L)

    @property
    def above(self):
        return [conj(c) for c in self.below]

    def conj(self, c):
        return conj(c)


class InvalidDegreeSequenceError(ValueError):
    pass


class DegreeMismatchError(ValueError):
    pass


class RejectionExhaustedError(RuntimeError):
    def __init__(self, attempts, rate):
        super().__init__(
            f"no short-cycle-free sample in {attempts} attempts"
            f" (estimated acceptance rate <= {rate:.2e})"
        )
        self.attempts = attempts
        self.estimated_rate = rate


@dataclass(frozen=True)
class DegreeSequence:
    """Per-vertex L x L count matrices; row sums drive the half-edge sets."""

    L: int
    mats: tuple  # n matrices, each a tuple of L tuples of ints

    @staticmethod
    def from_rows(L, rows):
        mats = tuple(
            tuple(tuple(int(x) for x in row[i * L : (i + 1) * L]) for i in range(L))
            for row in rows
        )
        return DegreeSequence(L, mats)

    @staticmethod
    def single_color(degrees):
        return DegreeSequence(1, tuple(((int(d),),) for d in degrees))

    @property
    def n(self):
        return len(self.mats)

    def D(self, u, c: Color) -> int:
        return self.mats[u][c[0] - 1][c[1] - 1]

    def S(self, c: Color) -> int:
        return sum(self.D(u, c) for u in range(self.n))

    def total_half_edges(self):
        return sum(self.S(c) for c in all_colors(self.L))


def validate_degree_sequence(D: DegreeSequence) -> bool:
    """Column-sum symmetry plus even diagonal totals."""
    for u in range(D.n):
        for row in D.mats[u]:
            if any(x < 0 for x in row):
                return False
    for c in bijection_colors(D.L):
        if D.S(c) != D.S(conj(c)):
            return False
    for c in matching_colors(D.L):
        if D.S(c) % 2 != 0:
            return False
    return True


def graphical_check(degrees) -> bool:
    """Erdos-Gallai test: is the scalar degree vector realizable by a simple graph."""
    d = sorted((int(x) for x in degrees), reverse=True)
    n = len(d)
    if any(x < 0 or x >= n and x > 0 for x in d):
        return False
    if sum(d) % 2 != 0:
        return False
    prefix = 0
    for k in range(1, n + 1):
        prefix += d[k - 1]
        tail = sum(min(x, k) for x in d[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


# ---------------------------------------------------------------------------
# Colored multigraphs
# ---------------------------------------------------------------------------


class ColoredMultigraph:
    """Vertex set {0..n-1} with per-color weight maps.

    The weight dict stores every nonzero entry (c, u, v) -> count and
    maintains w[c][u][v] == w[conj c][v][u].  Diagonal entries of
    matching colors are even (two per loop); a diagonal entry of an
    off-diagonal color counts loops of that color pair once on each of
    the two conjugate keys.
    """

    __slots__ = ("L", "n", "w")

    def __init__(self, L, n, w=None):
        self.L = L
        self.n = n
        self.w = dict(w or {})

    def omega(self, c, u, v):
        return self.w.get((c, u, v), 0)

    def add_edge(self, c, u, v):
        """Insert one directed edge (u, v) of color c plus its conjugate twin."""
        cb = conj(c)
        if u == v:
            if c == cb:
                self.w[(c, u, u)] = self.w.get((c, u, u), 0) + 2
            else:
                self.w[(c, u, u)] = self.w.get((c, u, u), 0) + 1
                self.w[(cb, u, u)] = self.w.get((cb, u, u), 0) + 1
        else:
            self.w[(c, u, v)] = self.w.get((c, u, v), 0) + 1
            self.w[(cb, v, u)] = self.w.get((cb, v, u), 0) + 1

    def key(self):
        return (self.L, self.n, tuple(sorted(self.w.items())))

    def __eq__(self, other):
        return isinstance(other, ColoredMultigraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"<ColoredMultigraph n={self.n} L={self.L} entries={len(self.w)}>"


def degree_sequence_of(G: ColoredMultigraph) -> DegreeSequence:
    mats = [[[0] * G.L for _ in range(G.L)] for _ in range(G.n)]
    for (c, u, _v), m in G.w.items():
        mats[u][c[0] - 1][c[1] - 1] += m
    return DegreeSequence(G.L, tuple(tuple(tuple(r) for r in mat) for mat in mats))


class Multigraph:
    """Undirected multigraph: symmetric weights, even diagonal (two per loop)."""

    __slots__ = ("n", "w")

    def __init__(self, n, w=None):
        self.n = n
        self.w = dict(w or {})  # (u, v) with u <= v -> count; (u,u) even

    def weight(self, u, v):
        return self.w.get((min(u, v), max(u, v)), 0)

    def degree(self, v):
        total = 0
        for (a, b), m in self.w.items():
            if a == v:
                total += m
            if b == v and a != b:
                total += m
        return total

    def adjacency(self):
        adj = {v: {} for v in range(self.n)}
        for (u, v), m in self.w.items():
            if u == v:
                continue
            adj[u][v] = m
            adj[v][u] = m
        return adj

    def edge_count(self):
        """Edges counting multiplicity, loops counted once each."""
        total = 0
        for (u, v), m in self.w.items():
            total += m // 2 if u == v else m
        return total


def colorblind(G: ColoredMultigraph) -> Multigraph:
    out = {}
    for (c, u, v), m in G.w.items():
        if u <= v:
            out[(u, v)] = out.get((u, v), 0) + m
    return Multigraph(G.n, out)


def colorblind_simple(G: ColoredMultigraph):
    """Colorblind projection as a SimpleGraph; raises on loops or multi-edges."""
    from .rooted import SimpleGraph

    bar = colorblind(G)
    edges = []
    for (u, v), m in bar.w.items():
        if u == v or m > 1:
            raise ValueError("colorblind projection is not simple")
        edges.append((u, v))
    return SimpleGraph.from_edges(G.n, edges)


def from_simple(G) -> Multigraph:
    return Multigraph(G.n, {(u, v): 1 for u, v in G.edges})


def has_cycle_leq(G: Multigraph, h: int) -> bool:
    """Any cycle of length <= h: loops count as 1, double edges as 2."""
    if h < 1:
        raise ValueError("cycle length bound must be >= 1")
    for (u, v), m in G.w.items():
        if u == v and m > 0:
            return True
    if h >= 2:
        for (u, v), m in G.w.items():
            if u != v and m >= 2:
                return True
    if h < 3:
        return False
    # girth of the underlying simple graph via truncated BFS from every vertex
    adj = {v: sorted(G.adjacency()[v]) for v in range(G.n)}
    limit = h // 2 + 1
    for s in range(G.n):
        dist = {s: 0}
        parent = {s: None}
        frontier = [s]
        while frontier:
            nxt = []
            for u in frontier:
                if dist[u] >= limit:
                    continue
                for w in adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w:
                        if dist[u] + dist[w] + 1 <= h:
                            return True
            frontier = nxt
    return False


# ---------------------------------------------------------------------------
# Configurations
# ---------------------------------------------------------------------------


def half_edges(D: DegreeSequence, c: Color):
    """W_c in the fixed order (vertex ascending, slot ascending)."""
    return [(c, i, j) for i in range(D.n) for j in range(1, D.D(i, c) + 1)]


@dataclass
class Configuration:
    """Per-color pairings: matchings on diagonal colors, bijections across conjugates."""

    D: DegreeSequence
    matchings: dict  # c in C_= -> tuple of half-edge pairs
    bijections: dict  # c in C_< -> dict half-edge -> half-edge of conj color


def sample_configuration(D: DegreeSequence, rng: random.Random) -> Configuration:
    """Uniform configuration: sequential uniform pairing per color."""
    if not validate_degree_sequence(D):
        raise InvalidDegreeSequenceError("degree sequence outside the valid set")
    matchings = {}
    for c in matching_colors(D.L):
        pool = half_edges(D, c)
        pairs = []
        # repeatedly match the least unmatched half-edge with a uniform partner
        while pool:
            first = pool[0]
            k = rng.randrange(1, len(pool))
            partner = pool[k]
            pairs.append((first, partner))
            pool[k] = pool[-1]
            pool.pop()
            pool.pop(0)
        matchings[c] = tuple(pairs)
    bijections = {}
    for c in bijection_colors(D.L):
        left = half_edges(D, c)
        right = half_edges(D, conj(c))
        if len(left) != len(right):
            raise InvalidDegreeSequenceError(
                f"half-edge sets of color {c} and conjugate differ in size"
            )
        perm = list(right)
        rng.shuffle(perm)
        bijections[c] = dict(zip(left, perm))
    return Configuration(D, matchings, bijections)


def graph_of(sigma: Configuration) -> ColoredMultigraph:
    D = sigma.D
    G = ColoredMultigraph(D.L, D.n)
    for c, pairs in sigma.matchings.items():
        for (c1, u, _), (c2, v, _) in pairs:
            if u == v:
                G.w[(c, u, u)] = G.w.get((c, u, u), 0) + 2
            else:
                G.w[(c, u, v)] = G.w.get((c, u, v), 0) + 1
                G.w[(c, v, u)] = G.w.get((c, v, u), 0) + 1
    for c, bij in sigma.bijections.items():
        cb = conj(c)
        for (c1, u, _), (c2, v, _) in bij.items():
            if u == v:
                G.w[(c, u, u)] = G.w.get((c, u, u), 0) + 1
                G.w[(cb, u, u)] = G.w.get((cb, u, u), 0) + 1
            else:
                G.w[(c, u, v)] = G.w.get((c, u, v), 0) + 1
                G.w[(cb, v, u)] = G.w.get((cb, v, u), 0) + 1
    return G


def apply_switch(sigma: Configuration, rng: random.Random) -> Configuration:
    """One uniform switch: swap the partners of two pairs of one color."""
    candidates = [c for c in matching_colors(sigma.D.L) if len(sigma.matchings[c]) >= 2]
    candidates += [
        c for c in bijection_colors(sigma.D.L) if len(sigma.bijections[c]) >= 2
    ]
    if not candidates:
        return sigma
    c = candidates[rng.randrange(len(candidates))]
    matchings = dict(sigma.matchings)
    bijections = dict(sigma.bijections)
    if c in matchings:
        pairs = list(matchings[c])
        i, j = rng.sample(range(len(pairs)), 2)
        (a, b), (x, y) = pairs[i], pairs[j]
        if rng.random() < 0.5:
            pairs[i], pairs[j] = (a, x), (b, y)
        else:
            pairs[i], pairs[j] = (a, y), (b, x)
        matchings[c] = tuple(pairs)
    else:
        bij = dict(bijections[c])
        keys = sorted(bij)
        i, j = rng.sample(range(len(keys)), 2)
        k1, k2 = keys[i], keys[j]
        bij[k1], bij[k2] = bij[k2], bij[k1]
        bijections[c] = bij
    return Configuration(sigma.D, matchings, bijections)


def sample_G_Dh(
    D: DegreeSequence, h: int, rng: random.Random, max_attempts: int | None = None
):
    """Rejection sampling of a uniform colored multigraph with no short cycles.

    Accepts once the colorblind projection has no cycle of length <= h.
    Returns (graph, attempts).
    """
    if h < 2:
        raise ValueError("short-cycle-free sampling needs h >= 2")
    cap = max_attempts if max_attempts is not None else 100_000
    for attempt in range(1, cap + 1):
        G = graph_of(sample_configuration(D, rng))
        if not has_cycle_leq(colorblind(G), h):
            return G, attempt
    raise RejectionExhaustedError(cap, 1.0 / cap)


# ---------------------------------------------------------------------------
# Exact counting
# ---------------------------------------------------------------------------


def double_factorial(n):
    if n <= 0:
        return 1
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def config_space_size(D: DegreeSequence) -> int:
    out = 1
    for c in bijection_colors(D.L):
        out *= math.factorial(D.S(c))
    for c in matching_colors(D.L):
        out *= double_factorial(D.S(c) - 1)
    return out


def _b_factor(H: ColoredMultigraph) -> int:
    """Product of per-edge-slot multiplicities distinguishing configurations."""
    out = 1
    for c in bijection_colors(H.L):
        for u in range(H.n):
            for v in range(H.n):
                out *= math.factorial(H.omega(c, u, v))
    for c in matching_colors(H.L):
        for u in range(H.n):
            loops = H.omega(c, u, u) // 2
            out *= math.factorial(loops) * 2**loops
            for v in range(u + 1, H.n):
                out *= math.factorial(H.omega(c, u, v))
    return out


def fiber_size(D: DegreeSequence, H: ColoredMultigraph) -> int:
    """Number of configurations mapping to H: per-color product formulas."""
    if degree_sequence_of(H) != D:
        raise DegreeMismatchError("graph degrees do not match the sequence")
    out = 1
    for c in matching_colors(D.L):
        num = 1
        for u in range(D.n):
            num *= math.factorial(D.D(u, c))
        den = 1
        for u in range(D.n):
            loops = H.omega(c, u, u) // 2
            den *= math.factorial(loops) * 2**loops
            for v in range(u + 1, D.n):
                den *= math.factorial(H.omega(c, u, v))
        assert num % den == 0
        out *= num // den
    for c in bijection_colors(D.L):
        num = 1
        for u in range(D.n):
            num *= math.factorial(D.D(u, c)) * math.factorial(D.D(u, conj(c)))
        den = 1
        for u in range(D.n):
            for v in range(D.n):
                den *= math.factorial(H.omega(c, u, v))
        assert num % den == 0
        out *= num // den
    return out


def cm_probability(D: DegreeSequence, H: ColoredMultigraph) -> Fraction:
    """Probability that the uniform configuration projects to H."""
    if degree_sequence_of(H) != D:
        raise DegreeMismatchError("graph degrees do not match the sequence")
    num = 1
    for c in all_colors(D.L):
        for u in range(D.n):
            num *= math.factorial(D.D(u, c))
    return Fraction(num, _b_factor(H) * config_space_size(D))


def excess(H: ColoredMultigraph) -> int:
    """Colorblind edge count (loops once) minus vertex count."""
    total_deg = sum(m for m in H.w.values())
    return total_deg // 2 - H.n


def automorphism_count(H: ColoredMultigraph) -> int:
    """Vertex permutations preserving every color weight; brute force."""
    if H.n > 8:
        raise ValueError("automorphism count is brute force; n <= 8 only")
    D = degree_sequence_of(H)
    groups = {}
    for u in range(H.n):
        groups.setdefault(D.mats[u], []).append(u)
    count = 0
    blocks = sorted(groups.values())
    for perms in itertools.product(*[itertools.permutations(b) for b in blocks]):
        pi = {}
        for block, perm in zip(blocks, perms):
            for src, dst in zip(block, perm):
                pi[src] = dst
        ok = True
        for (c, u, v), m in H.w.items():
            if H.omega(c, pi[u], pi[v]) != m:
                ok = False
                break
        if ok:
            count += 1
    return count


def _dc_of(H: ColoredMultigraph):
    d = {}
    for (c, u, _v), m in H.w.items():
        d[(c, u)] = d.get((c, u), 0) + m
    return d


def _falling(x, k):
    out = 1
    for i in range(k):
        out *= x - i
    return out


def _falling_pairs(S, s):
    """Product (S-1)(S-3)...: one factor per half-edge pair consumed."""
    assert s % 2 == 0
    out = 1
    for i in range(1, s // 2 + 1):
        out *= S - 2 * i + 1
    return out


def subgraph_count_expectation(
    H: ColoredMultigraph, degrees: DegreeSequence | None = None, limit: dict | None = None
):
    """Expected number of embedded copies of a small motif.

    Exactly one of `degrees` (finite-sequence mode, exact rational) or
    `limit` (limit-law mode, the n-free intensity prefactor scaling as
    n^-excess) must be given.  `limit` maps L x L matrices to weights.
    """
    if (degrees is None) == (limit is None):
        raise ValueError("give exactly one of degrees= or limit=")
    if H.n > 8:
        raise ValueError("motif too large for brute-force symmetry counting")
    a = automorphism_count(H)
    b = _b_factor(H)
    dH = _dc_of(H)
    k = H.n
    if degrees is not None:
        D = degrees
        total = Fraction(0)
        for tau in itertools.permutations(range(D.n), k):
            term = Fraction(1)
            for i in range(k):
                for c in all_colors(D.L):
                    need = dH.get((c, i), 0)
                    if need:
                        term *= _falling(D.D(tau[i], c), need)
                if term == 0:
                    break
            total += term
        den = a * b
        for c in bijection_colors(D.L):
            sc = sum(dH.get((c, i), 0) for i in range(k))
            den *= _falling(D.S(c), sc)
        for c in matching_colors(D.L):
            sc = sum(dH.get((c, i), 0) for i in range(k))
            den *= _falling_pairs(D.S(c), sc)
        return total / den
    L = H.L
    num = 1.0
    for i in range(k):
        factor = 0.0
        for M, p in limit.items():
            term = float(p)
            for c in all_colors(L):
                need = dH.get((c, i), 0)
                if need:
                    term *= _falling(M[c[0] - 1][c[1] - 1], need)
            factor += term
        num *= factor
    den = float(a * b)
    for c in all_colors(L):
        sc = sum(dH.get((c, i), 0) for i in range(k))
        if sc:
            ed = sum(float(p) * M[c[0] - 1][c[1] - 1] for M, p in limit.items())
            den *= ed ** (sc / 2)
    return num / den


def cycle_family(L: int, h: int):
    """Distinct colored motifs whose colorblind projection is a short cycle.

    Loops have length 1 and parallel pairs length 2.  Deduplicated by
    brute-force isomorphism; intended for small L and h.
    """
    out = []
    seen = set()

    def add(H):
        key = min(
            tuple(
                sorted(
                    ((c, pi[u], pi[v]), m) for (c, u, v), m in H.w.items()
                )
            )
            for pi in (
                dict(zip(range(H.n), perm))
                for perm in itertools.permutations(range(H.n))
            )
        )
        if key not in seen:
            seen.add(key)
            out.append(H)

    colors = all_colors(L)
    if h >= 1:
        for c in colors:
            if c[0] > c[1]:
                continue
            H = ColoredMultigraph(L, 1)
            H.add_edge(c, 0, 0)
            add(H)
    if h >= 2:
        for c1 in colors:
            for c2 in colors:
                H = ColoredMultigraph(L, 2)
                H.add_edge(c1, 0, 1)
                H.add_edge(c2, 0, 1)
                add(H)
    for ell in range(3, h + 1):
        for combo in itertools.product(colors, repeat=ell):
            H = ColoredMultigraph(L, ell)
            for idx in range(ell):
                H.add_edge(combo[idx], idx, (idx + 1) % ell)
            add(H)
    return out


def short_cycle_intensity(limit: dict, L: int, h: int) -> float:
    """Sum of limiting motif intensities over the short-cycle family.

    Derived estimate: exp(-value) approximates the limiting acceptance
    rate of the short-cycle rejection sampler.
    """
    return sum(
        float(subgraph_count_expectation(H, limit=limit)) for H in cycle_family(L, h)
    )


def acceptance_estimate(limit: dict, L: int, h: int) -> float:
    return math.exp(-short_cycle_intensity(limit, L, h))


# ---------------------------------------------------------------------------
# Lazy exploration
# ---------------------------------------------------------------------------


@dataclass
class ExploredNeighborhood:
    """Depth-k ball of a vertex under the configuration model, lazily paired."""

    root: int
    vertices: dict  # original vertex -> distance from root
    edges: list  # (u, v, color) triples with original ids, one entry per edge
    is_tree: bool

    def signature(self):
        """Canonical key of the rooted colored ball (root-fixing relabelings).

        Brute-force minimization; only for small balls.
        """
        verts = sorted(self.vertices)
        if len(verts) > 9:
            raise ValueError("ball signature is brute force; too many vertices")
        others = [v for v in verts if v != self.root]
        best = None
        for perm in itertools.permutations(range(1, len(verts))):
            lab = {self.root: 0}
            lab.update(zip(others, perm))
            key = tuple(
                sorted(
                    min((c, lab[u], lab[v]), (conj(c), lab[v], lab[u]))
                    for u, v, c in self.edges
                )
            )
            if best is None or key < best:
                best = key
        return (len(verts), best)


def explore_neighborhood(
    D: DegreeSequence, v: int, depth: int, rng: random.Random
) -> ExploredNeighborhood:
    """Sample the depth-k ball of v without building the whole graph.

    Half-edges are revealed in breadth-first order (vertices by discovery,
    slots in the fixed (color, slot) order); each reveal draws a uniform
    partner among the not-yet-matched half-edges of the conjugate color.
    The result is distributed as the ball of v in a full uniform sample.
    """
    if not validate_degree_sequence(D):
        raise InvalidDegreeSequenceError("degree sequence outside the valid set")
    pools = {}
    index = {}
    for c in all_colors(D.L):
        hes = half_edges(D, c)
        pools[c] = hes
        index.update({he: (c, i) for i, he in enumerate(hes)})
    matched = {}

    def pool_remove(he):
        c, i = index[he]
        pool = pools[c]
        last = pool[-1]
        pool[i] = last
        index[last] = (c, i)
        pool.pop()
        del index[he]

    def draw_partner(he):
        c = he[0]
        target = conj(c)
        pool = pools[target]
        if c == target:
            # avoid self-pairing
            my_c, my_i = index[he]
            k = rng.randrange(len(pool) - 1)
            if k >= my_i:
                k += 1
            partner = pool[k]
        else:
            partner = pool[rng.randrange(len(pool))]
        pool_remove(he)
        pool_remove(partner)
        matched[he] = partner
        matched[partner] = he
        return partner

    dist = {v: 0}
    order = [v]
    edges = []
    is_tree = True
    qi = 0
    while qi < len(order):
        u = order[qi]
        qi += 1
        du = dist[u]
        for c in all_colors(D.L):
            for j in range(1, D.D(u, c) + 1):
                he = (c, u, j)
                if he in matched:
                    continue
                if du >= depth:
                    partner = draw_partner(he)
                    w = partner[1]
                    if w in dist and dist[w] <= depth:
                        edges.append((u, w, c))
                        is_tree = False
                    continue
                partner = draw_partner(he)
                w = partner[1]
                if w in dist:
                    is_tree = False
                else:
                    dist[w] = du + 1
                    order.append(w)
                edges.append((u, w, c))
    return ExploredNeighborhood(v, dist, edges, is_tree)


def ball_of(G: ColoredMultigraph, v: int, depth: int) -> ExploredNeighborhood:
    """Induced depth-k ball of v in a realized colored multigraph.

    Produces the same structure as :func:`explore_neighborhood` so the two
    can be compared by signature.
    """
    bar = colorblind(G).adjacency()
    dist = {v: 0}
    frontier = [v]
    d = 0
    while frontier and d < depth:
        d += 1
        nxt = []
        for u in frontier:
            for w in sorted(bar[u]):
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    edges = []
    for (c, a, b), m in sorted(G.w.items()):
        if a not in dist or b not in dist:
            continue
        if a == b:
            if c != min(c, conj(c)):
                continue  # the conjugate entry carries the same loops
            count = m // 2 if c == conj(c) else m
            edges.extend((a, a, c) for _ in range(count))
        else:
            # one entry per undirected edge: keep the (c, a, b) orientation
            # with the lexicographically smaller key
            if (c, a, b) <= (conj(c), b, a):
                edges.extend((a, b, c) for _ in range(m))
    n_ball = len(dist)
    simple_edges = len(edges)
    is_tree = simple_edges == n_ball - 1 and all(u != w for u, w, _ in edges)
    return ExploredNeighborhood(v, dist, edges, is_tree)


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def write_degree_file(path, D: DegreeSequence):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{D.L} {D.n}\n")
        for u in range(D.n):
            flat = [str(x) for row in D.mats[u] for x in row]
            fh.write(" ".join(flat) + "\n")


def read_degree_file(path) -> DegreeSequence:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        L, n = int(header[0]), int(header[1])
        rows = []
        for _ in range(n):
            rows.append([int(x) for x in fh.readline().split()])
    return DegreeSequence.from_rows(L, rows)


def write_colored_graph(path, G: ColoredMultigraph):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{G.L} {G.n}\n")
        for (c, u, v), m in sorted(G.w.items()):
            fh.write(f"{u} {v} {c[0]} {c[1]} {m}\n")


def read_colored_graph(path) -> ColoredMultigraph:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        L, n = int(header[0]), int(header[1])
        w = {}
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            u, v, i, j, m = (int(x) for x in parts)
            w[((i, j), u, v)] = m
    return ColoredMultigraph(L, n, w)


def write_colorblind(path, G: Multigraph):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{G.n}\n")
        for (u, v), m in sorted(G.w.items()):
            fh.write(f"{u} {v} {m}\n")
