"""Canonical forms and structural operations for finite rooted graphs.

An unlabeled rooted graph is an isomorphism class of (graph, root) pairs.
This module encodes those classes into interned, hashable handles
(:class:`CanonicalClass`) so that all higher-level machinery (laws on
neighborhoods, branching recursions, exact counting) can use plain dict
lookups and identity comparison in its hot loops.

Two encodings are used:

* rooted trees: the classic recursive parenthesis string, where a node's
  encoding is ``"(" + <children encodings, sorted> + ")"``.  Linear time,
  unique, and printable (``"()"`` is the isolated root).
* general rooted graphs (neighborhoods containing cycles): a byte string
  obtained by minimizing the adjacency matrix over all vertex labelings
  consistent with a distance-plus-refinement partition.  Exponential in
  the worst case but only ever applied to small neighborhoods.

Every class records the depth at which it was truncated.  Operations that
read structure beyond that depth are rejected instead of silently using
the truncated object.
"""

from __future__ import annotations

import itertools
import threading
from collections import Counter
from dataclasses import dataclass


class EdgeAbsentError(ValueError):
    """Raised when an operation names an edge that is not in the graph."""


class KindMismatchError(TypeError):
    """Raised when a tree-only operation receives a general-graph class."""


TREE = "tree"
GENERAL = "general"

# Safety valve for the general-graph canonical form: the number of candidate
# labelings after partition refinement.  Neighborhoods handled by this code
# path are tiny; anything past this bound is a misuse, not a workload.
_MAX_LABELINGS = 2_000_000


class LabeledRootedGraph:
    """A finite rooted graph with integer vertex labels (simple, undirected).

    Mutable working representation; the immutable currency of the library
    is :class:`CanonicalClass`.
    """

    __slots__ = ("adj", "root")

    def __init__(self, edges=(), root=0, vertices=()):
        self.adj: dict[int, set[int]] = {}
        self.root = root
        self._ensure(root)
        for v in vertices:
            self._ensure(v)
        for u, v in edges:
            self.add_edge(u, v)

    def _ensure(self, v):
        if v not in self.adj:
            self.adj[v] = set()

    def add_edge(self, u, v):
        if u == v:
            raise ValueError("loops are not allowed in simple rooted graphs")
        self._ensure(u)
        self._ensure(v)
        self.adj[u].add(v)
        self.adj[v].add(u)

    def has_edge(self, u, v):
        return u in self.adj and v in self.adj[u]

    def neighbors(self, v):
        return self.adj[v]

    def degree(self, v):
        return len(self.adj[v])

    def vertices(self):
        return self.adj.keys()

    def edges(self):
        return [(u, v) for u in self.adj for v in self.adj[u] if u < v]

    def copy(self):
        g = LabeledRootedGraph(root=self.root)
        g.adj = {v: set(nb) for v, nb in self.adj.items()}
        return g

    def relabel(self, mapping):
        g = LabeledRootedGraph(root=mapping[self.root])
        g.adj = {mapping[v]: {mapping[u] for u in nb} for v, nb in self.adj.items()}
        return g


@dataclass(frozen=True)
class SimpleGraph:
    """A labeled simple graph on vertex set {0, ..., n-1}."""

    n: int
    edges: frozenset  # of (u, v) tuples with u < v

    @staticmethod
    def from_edges(n, edges):
        out = set()
        for u, v in edges:
            if u == v:
                raise ValueError("loops not allowed in a simple graph")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex out of range: {(u, v)}")
            out.add((u, v) if u < v else (v, u))
        return SimpleGraph(n, frozenset(out))

    @property
    def m(self):
        return len(self.edges)

    def adjacency(self):
        adj = {v: set() for v in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def rooted_at(self, v):
        g = LabeledRootedGraph(root=v, vertices=range(self.n))
        for a, b in self.edges:
            g.add_edge(a, b)
        return g


# ---------------------------------------------------------------------------
# Canonical classes and the intern table
# ---------------------------------------------------------------------------


class CanonicalClass:
    """Interned handle of an unlabeled rooted graph truncated at `depth`.

    Instances are unique per (kind, depth, encoding), so equality is
    identity and hashing is O(1).  `rep` is a canonical labeled
    representative: a tuple of neighbor-tuples indexed by vertex id, with
    the root at 0.
    """

    __slots__ = ("kind", "depth", "encoding", "id", "rep")

    def __init__(self, kind, depth, encoding, cid, rep):
        self.kind = kind
        self.depth = depth
        self.encoding = encoding
        self.id = cid
        self.rep = rep

    @property
    def n_vertices(self):
        return len(self.rep)

    def wire(self):
        """Serialized form: parenthesis string for trees, "G<d>:<hex>" else."""
        if self.kind == TREE:
            return self.encoding
        return f"G{self.depth}:{self.encoding.hex()}"

    def __repr__(self):
        return f"<class {self.wire()} depth={self.depth}>"

    def __reduce__(self):
        return (_rebuild_class, (self.kind, self.depth, self.wire()))


_INTERN: dict[tuple, CanonicalClass] = {}
_INTERN_LOCK = threading.Lock()


def _intern(kind, depth, encoding, rep):
    key = (kind, depth, encoding)
    got = _INTERN.get(key)
    if got is not None:
        return got
    with _INTERN_LOCK:
        got = _INTERN.get(key)
        if got is None:
            got = CanonicalClass(kind, depth, encoding, len(_INTERN), rep)
            _INTERN[key] = got
        return got


def _rebuild_class(kind, depth, wire):
    return parse_class(wire, depth)


# ---------------------------------------------------------------------------
# Ball extraction and encodings
# ---------------------------------------------------------------------------


def _ball(adj, root, h):
    """BFS distances for the vertices within distance h of the root."""
    dist = {root: 0}
    frontier = [root]
    d = 0
    while frontier and d < h:
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def _induced_edges(adj, keep):
    return [(u, v) for u in keep for v in adj[u] if v in keep and u < v]


def _tree_paren(adj_sets, root):
    """Recursive parenthesis encoding of a labeled rooted tree."""

    def enc(v, parent):
        subs = sorted(enc(w, v) for w in adj_sets[v] if w != parent)
        return "(" + "".join(subs) + ")"

    return enc(root, None)


def _parse_paren(s):
    """Parse a parenthesis encoding into (rep_adj, n). Root gets id 0."""
    adj: list[set[int]] = []

    def new_node():
        adj.append(set())
        return len(adj) - 1

    pos = 0

    def parse(parent):
        nonlocal pos
        if pos >= len(s) or s[pos] != "(":
            raise ValueError(f"bad tree encoding: {s!r}")
        pos += 1
        me = new_node()
        if parent is not None:
            adj[me].add(parent)
            adj[parent].add(me)
        while pos < len(s) and s[pos] == "(":
            parse(me)
        if pos >= len(s) or s[pos] != ")":
            raise ValueError(f"bad tree encoding: {s!r}")
        pos += 1
        return me

    parse(None)
    if pos != len(s):
        raise ValueError(f"trailing characters in tree encoding: {s!r}")
    return tuple(tuple(sorted(nb)) for nb in adj)


def _canonical_tree_rep(encoding):
    """Deterministic labeled representative of a tree encoding."""
    return _parse_paren(encoding)


def _refine_partition(adj_sets, order, dist):
    """Iteratively refined vertex coloring; label-independent ranks.

    Starts from (distance-to-root, degree) and sharpens each vertex's color
    with the sorted multiset of its neighbors' colors until stable.
    """
    colors = {v: (dist[v], len(adj_sets[v])) for v in order}
    ncells = len(set(colors.values()))
    while True:
        sig = {
            v: (colors[v], tuple(sorted(colors[u] for u in adj_sets[v])))
            for v in order
        }
        ranks = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        colors = {v: ranks[sig[v]] for v in order}
        k = len(set(colors.values()))
        if k == ncells:
            return colors
        ncells = k


def _canonical_general(adj_sets, root, dist):
    """Minimum adjacency bytes over labelings consistent with refinement.

    Returns (encoding_bytes, rep_adj).  The root is always labeled 0 since
    it is alone in its distance cell.
    """
    order = sorted(adj_sets, key=lambda v: (dist[v], v))
    colors = _refine_partition(adj_sets, order, dist)
    cells: dict[int, list[int]] = {}
    for v in order:
        cells.setdefault(colors[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]

    total = 1
    for cell in cell_list:
        for i in range(2, len(cell) + 1):
            total *= i
        if total > _MAX_LABELINGS:
            raise ValueError("general canonical form: neighborhood too symmetric/large")

    n = len(order)
    best_bits = None
    best_layout = None
    for perm_combo in itertools.product(
        *[itertools.permutations(cell) for cell in cell_list]
    ):
        layout = [v for cell in perm_combo for v in cell]
        pos = {v: i for i, v in enumerate(layout)}
        bits = 0
        for i, v in enumerate(layout):
            for u in adj_sets[v]:
                j = pos[u]
                if j > i:
                    bits |= 1 << (i * n + j)
        if best_bits is None or bits < best_bits:
            best_bits = bits
            best_layout = layout

    assert best_layout is not None
    pos = {v: i for i, v in enumerate(best_layout)}
    rep = tuple(
        tuple(sorted(pos[u] for u in adj_sets[v])) for v in best_layout
    )
    nbytes = (n * n + 7) // 8
    encoding = n.to_bytes(2, "little") + best_bits.to_bytes(max(nbytes, 1), "little")
    return encoding, rep


def _decode_general(encoding):
    n = int.from_bytes(encoding[:2], "little")
    bits = int.from_bytes(encoding[2:], "little")
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if bits >> (i * n + j) & 1:
                adj[i].add(j)
                adj[j].add(i)
    return tuple(tuple(sorted(nb)) for nb in adj)


def canonical_from_adjacency(adj, root, h):
    """Canonical class of the depth-h truncation of (adj, root)."""
    if h < 0:
        raise ValueError("depth must be nonnegative")
    dist = _ball(adj, root, h)
    keep = dist.keys()
    sub = {v: {u for u in adj[v] if u in keep} for v in keep}
    n = len(keep)
    m = sum(len(nb) for nb in sub.values()) // 2
    if m == n - 1:
        enc = _tree_paren(sub, root)
        rep = _canonical_tree_rep(enc)
        return _intern(TREE, h, enc, rep)
    enc, rep = _canonical_general(sub, root, dist)
    return _intern(GENERAL, h, enc, rep)


def canonicalize(g: LabeledRootedGraph, h: int) -> CanonicalClass:
    """Class of the rooted graph truncated at depth h.

    Invariant under any relabeling of g; only the root component matters.
    """
    return canonical_from_adjacency(g.adj, g.root, h)


def parse_class(wire: str, depth: int | None = None) -> CanonicalClass:
    """Inverse of :meth:`CanonicalClass.wire`.

    Tree encodings carry no depth of their own, so the caller supplies it
    (defaulting to the tree's own radius).
    """
    if wire.startswith("("):
        rep = _parse_paren(wire)
        radius = _radius(rep)
        d = radius if depth is None else depth
        if d < radius:
            raise ValueError(f"declared depth {d} below radius {radius}")
        return _intern(TREE, d, wire, rep)
    if wire.startswith("G"):
        head, _, hexpart = wire.partition(":")
        d = int(head[1:])
        if depth is not None and depth != d:
            raise ValueError(f"depth mismatch: {depth} vs {wire!r}")
        enc = bytes.fromhex(hexpart)
        rep = _decode_general(enc)
        dist = _ball({i: set(nb) for i, nb in enumerate(rep)}, 0, d)
        if len(dist) != len(rep):
            raise ValueError(f"encoding not connected within depth {d}: {wire!r}")
        # Re-canonicalize: hand-written hex need not be in minimal form.
        return canonical_from_adjacency(
            {i: set(nb) for i, nb in enumerate(rep)}, 0, d
        )
    raise ValueError(f"unrecognized class encoding: {wire!r}")


def _radius(rep):
    adj = {i: set(nb) for i, nb in enumerate(rep)}
    dist = _ball(adj, 0, len(rep))
    return max(dist.values(), default=0)


def radius(g: CanonicalClass) -> int:
    """Eccentricity of the root in the representative (<= declared depth)."""
    return _radius(g.rep)


def declare_depth(g: CanonicalClass, h: int) -> CanonicalClass:
    """The same structure re-declared at truncation depth h >= depth(g)."""
    if h == g.depth:
        return g
    if h < g.depth:
        return truncate(g, h)
    return _intern(g.kind, h, g.encoding, g.rep)


def truncate(g: CanonicalClass, h: int) -> CanonicalClass:
    """Class of the induced subgraph within distance h of the root.

    Identity when h >= depth(g).
    """
    if h < 0:
        raise ValueError("depth must be nonnegative")
    if h >= g.depth:
        return g
    adj = {i: set(nb) for i, nb in enumerate(g.rep)}
    return canonical_from_adjacency(adj, 0, h)


def instantiate(g: CanonicalClass) -> LabeledRootedGraph:
    """A fresh mutable labeled copy of the canonical representative."""
    out = LabeledRootedGraph(root=0, vertices=range(len(g.rep)))
    for v, nb in enumerate(g.rep):
        for u in nb:
            if u > v:
                out.add_edge(v, u)
    return out


def split_at_edge(g: LabeledRootedGraph, u: int, v: int) -> LabeledRootedGraph:
    """The component of v after removing edge {u, v}, rooted at v."""
    if not g.has_edge(u, v):
        raise EdgeAbsentError(f"{{{u}, {v}}} is not an edge")
    keep = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for w in g.adj[x]:
            if (x, w) in ((u, v), (v, u)):
                continue
            if w not in keep:
                keep.add(w)
                stack.append(w)
    out = LabeledRootedGraph(root=v, vertices=keep)
    for x in keep:
        for w in g.adj[x]:
            if w in keep and x < w and (x, w) not in ((u, v), (v, u)):
                out.add_edge(x, w)
    return out


def _split_class(adj, a, b, h):
    """Canonical depth-h class of the component of b in adj minus edge {a,b}."""
    keep = {b}
    stack = [b]
    while stack:
        x = stack.pop()
        for w in adj[x]:
            if (x, w) in ((a, b), (b, a)):
                continue
            if w not in keep:
                keep.add(w)
                stack.append(w)
    sub = {
        x: {w for w in adj[x] if w in keep and (x, w) not in ((a, b), (b, a))}
        for x in keep
    }
    return canonical_from_adjacency(sub, b, h)


def join_at_root(tau: CanonicalClass, t_prime: CanonicalClass) -> CanonicalClass:
    """Attach a new root-neighbor carrying t_prime's tree to tau.

    tau must be a depth-h tree and t_prime a tree of depth <= h-1; the
    result is declared at depth h.
    """
    if tau.kind != TREE or t_prime.kind != TREE:
        raise KindMismatchError("join_at_root requires tree classes")
    h = tau.depth
    if t_prime.depth > h - 1:
        raise ValueError(f"child depth {t_prime.depth} exceeds {h - 1}")
    base = instantiate(tau)
    offset = len(tau.rep)
    for v, nb in enumerate(t_prime.rep):
        for u in nb:
            if u > v:
                base.add_edge(v + offset, u + offset)
    base._ensure(offset)
    base.add_edge(0, offset)
    return canonicalize(base, h)


def root_degree(g: CanonicalClass) -> int:
    return len(g.rep[0])


def children_subtrees(g: CanonicalClass) -> list[CanonicalClass]:
    """For a tree class: the subtree class hanging at each root child.

    Each subtree is declared at depth(g) - 1 (its natural bound).
    """
    if g.kind != TREE:
        raise KindMismatchError("children_subtrees requires a tree class")
    adj = {i: set(nb) for i, nb in enumerate(g.rep)}
    return [_split_class(adj, 0, v, g.depth - 1) for v in g.rep[0]]


def drop_root_child(g: CanonicalClass, subtree: CanonicalClass) -> CanonicalClass:
    """Remove one root child whose subtree class equals `subtree`.

    Result declared at depth(g).  Raises if no such child exists.
    """
    if g.kind != TREE:
        raise KindMismatchError("drop_root_child requires a tree class")
    adj = {i: set(nb) for i, nb in enumerate(g.rep)}
    for v in g.rep[0]:
        if _split_class(adj, 0, v, g.depth - 1) is subtree:
            keep = set(adj) - _subtree_vertices(adj, 0, v)
            sub = {x: {w for w in adj[x] if w in keep} for x in keep}
            return canonical_from_adjacency(sub, 0, g.depth)
    raise ValueError("no root child carries the requested subtree")


def _subtree_vertices(adj, parent, child):
    keep = {child}
    stack = [child]
    while stack:
        x = stack.pop()
        for w in adj[x]:
            if (x, w) in ((parent, child), (child, parent)):
                continue
            if w not in keep:
                keep.add(w)
                stack.append(w)
    return keep


def edge_type_table(g: CanonicalClass, h: int) -> dict:
    """All root edge-type counts of g at depth h.

    Maps (t, t') -> number of root neighbors v whose outward component
    (rooted at v) truncates to t and whose inward component (rooted at the
    root) truncates to t', both at depth h-1.  Summing the table gives the
    root degree.
    """
    if h < 1:
        raise ValueError("edge types need h >= 1")
    if g.depth < h:
        raise ValueError(
            f"class truncated at depth {g.depth} cannot answer depth-{h} edge types"
        )
    adj = {i: set(nb) for i, nb in enumerate(g.rep)}
    out: Counter = Counter()
    for v in g.rep[0]:
        far = _split_class(adj, 0, v, h - 1)
        near = _split_class(adj, v, 0, h - 1)
        out[(far, near)] += 1
    return dict(out)


def edge_type_count(
    g: CanonicalClass, h: int, t: CanonicalClass, t_prime: CanonicalClass
) -> int:
    """Number of root neighbors of g realizing the ordered pattern (t, t')."""
    if t.depth > h - 1 or t_prime.depth > h - 1:
        raise ValueError("patterns must have depth <= h-1")
    key = (declare_depth(t, h - 1), declare_depth(t_prime, h - 1))
    return edge_type_table(g, h).get(key, 0)


def star(k: int, depth: int = 1) -> CanonicalClass:
    """The rooted star with k leaf children, declared at `depth`."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if depth < 1 and k > 0:
        raise ValueError("a star with children needs depth >= 1")
    return _intern(TREE, depth, "(" + "()" * k + ")", _parse_paren("(" + "()" * k + ")"))


def isolated_root(depth: int = 0) -> CanonicalClass:
    return star(0, depth) if depth >= 1 else _intern(TREE, 0, "()", _parse_paren("()"))
