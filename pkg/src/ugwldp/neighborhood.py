"""Empirical neighborhood distributions and edge-type statistics.

A :class:`NeighborhoodLaw` is a finite-support probability measure on
canonical rooted-graph classes of a fixed truncation depth.  Laws derived
from finite graphs or finite recursions carry exact rational weights;
float mode exists for tail-truncated analytic families (Poisson).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .rooted import (
    CanonicalClass,
    SimpleGraph,
    canonical_from_adjacency,
    declare_depth,
    edge_type_table,
    parse_class,
    root_degree,
    star,
    truncate,
)

RATIONAL = "rational"
FLOAT = "float"

_FLOAT_MASS_TOL = 1e-12


class NeighborhoodLaw:
    """Finite-support probability measure on depth-h canonical classes."""

    __slots__ = ("depth", "support", "mode")

    def __init__(self, depth, support, mode=RATIONAL, _normalize=False):
        self.depth = depth
        self.mode = mode
        cleaned = {}
        for cls, p in support.items():
            if p == 0:
                continue
            if p < 0:
                raise ValueError(f"negative weight for {cls}")
            if cls.depth > depth:
                raise ValueError(
                    f"support class of depth {cls.depth} in a depth-{depth} law"
                )
            key = declare_depth(cls, depth)
            cleaned[key] = cleaned.get(key, 0) + p
        if _normalize:
            total = sum(cleaned.values())
            cleaned = {c: p / total for c, p in cleaned.items()}
        self.support = cleaned
        total = sum(cleaned.values())
        if mode == RATIONAL:
            if total != 1:
                raise ValueError(f"rational law has total mass {total}")
        else:
            if abs(total - 1) > _FLOAT_MASS_TOL:
                raise ValueError(f"float law has total mass {total!r}")

    def __eq__(self, other):
        return (
            isinstance(other, NeighborhoodLaw)
            and self.depth == other.depth
            and self.support == other.support
        )

    def __hash__(self):
        return hash((self.depth, frozenset(self.support.items())))

    def __len__(self):
        return len(self.support)

    def __iter__(self):
        return iter(self.support)

    def items(self):
        return self.support.items()

    def prob(self, cls):
        return self.support.get(declare_depth(cls, self.depth), 0)

    def sorted_items(self):
        return sorted(self.support.items(), key=lambda kv: kv[0].wire())

    # -- construction -------------------------------------------------

    @staticmethod
    def point_mass(cls, depth=None):
        d = cls.depth if depth is None else depth
        return NeighborhoodLaw(d, {cls: Fraction(1)})

    @staticmethod
    def from_degree_law(P, mode=RATIONAL):
        """Depth-1 law from a probability map {root degree: weight}."""
        return NeighborhoodLaw(1, {star(k, 1): p for k, p in P.items()}, mode=mode)

    def degree_law(self):
        """Projection to the law of the root degree (plain dict)."""
        out = {}
        for cls, p in self.support.items():
            k = root_degree(cls)
            out[k] = out.get(k, 0) + p
        return out

    # -- serialization -------------------------------------------------

    def to_json(self):
        entries = []
        for cls, p in self.sorted_items():
            val = f"{p.numerator}/{p.denominator}" if self.mode == RATIONAL else float(p)
            entries.append({"class": cls.wire(), "p": val})
        return {"depth": self.depth, "mode": self.mode, "support": entries}

    @staticmethod
    def from_json(obj):
        depth = obj["depth"]
        mode = obj["mode"]
        support = {}
        for entry in obj["support"]:
            cls = parse_class(entry["class"], depth if entry["class"][0] == "(" else None)
            p = entry["p"]
            if mode == RATIONAL:
                if isinstance(p, str):
                    num, _, den = p.partition("/")
                    p = Fraction(int(num), int(den or 1))
                else:
                    p = Fraction(p)
            else:
                p = float(p)
            support[cls] = support.get(cls, 0) + p
        return NeighborhoodLaw(depth, support, mode=mode)

    def dump(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")

    @staticmethod
    def load(path):
        with open(path, encoding="utf-8") as fh:
            return NeighborhoodLaw.from_json(json.load(fh))


@dataclass(frozen=True)
class EdgeTypeLaw:
    """Weights on ordered pairs of depth-(h-1) classes, plus total mass."""

    depth: int  # depth of the pair components
    weights: tuple  # sorted tuple of ((t, t'), weight)
    total: object

    def as_dict(self):
        return dict(self.weights)

    def prob(self, pair):
        return self.as_dict().get(pair, 0)

    def swap_symmetric(self, tol=0):
        table = self.as_dict()
        worst = 0
        for (t, tp), w in table.items():
            diff = abs(w - table.get((tp, t), 0))
            worst = max(worst, diff)
        return worst <= tol, worst


@dataclass(frozen=True)
class AdmissibilityReport:
    ok: bool
    mean_degree: object
    violations: tuple  # of ((t, t'), e_forward, e_backward)

    def __bool__(self):
        return self.ok


def empirical_distribution(G: SimpleGraph, h: int) -> NeighborhoodLaw:
    """Uniform-root law of depth-h neighborhood classes of a finite graph."""
    if G.n == 0:
        raise ValueError("empirical distribution of an empty vertex set")
    adj = G.adjacency()
    counts = {}
    for v in range(G.n):
        cls = canonical_from_adjacency(adj, v, h)
        counts[cls] = counts.get(cls, 0) + 1
    return NeighborhoodLaw(
        h, {cls: Fraction(c, G.n) for cls, c in counts.items()}
    )


def mean_degree(P: NeighborhoodLaw):
    return sum(p * root_degree(cls) for cls, p in P.items())


def edge_intensity_table(P: NeighborhoodLaw) -> EdgeTypeLaw:
    """Unnormalized edge-type intensities e(t, t') of a depth-h law.

    e(t, t') is the expected number of root neighbors realizing the ordered
    pattern (t, t'); the total mass is the mean degree.
    """
    if P.depth < 1:
        raise ValueError("edge intensities need depth >= 1")
    acc = {}
    for cls, p in P.items():
        for pair, cnt in edge_type_table(cls, P.depth).items():
            acc[pair] = acc.get(pair, 0) + p * cnt
    weights = tuple(sorted(acc.items(), key=lambda kv: (kv[0][0].wire(), kv[0][1].wire())))
    return EdgeTypeLaw(P.depth - 1, weights, sum(acc.values()))


def edge_intensity(P: NeighborhoodLaw, t: CanonicalClass, t_prime: CanonicalClass):
    key = (declare_depth(t, P.depth - 1), declare_depth(t_prime, P.depth - 1))
    return edge_intensity_table(P).as_dict().get(key, 0)


def edge_type_distribution(P: NeighborhoodLaw) -> EdgeTypeLaw:
    """Edge intensities normalized by the mean degree (total mass one)."""
    table = edge_intensity_table(P)
    d = table.total
    if d == 0:
        raise ValueError("zero mean degree: edge-type distribution undefined")
    weights = tuple((pair, w / d) for pair, w in table.weights)
    return EdgeTypeLaw(table.depth, weights, sum(w for _, w in weights))


def is_admissible(P: NeighborhoodLaw) -> AdmissibilityReport:
    """Finite mean degree plus swap symmetry of the edge intensities."""
    d = mean_degree(P)
    table = edge_intensity_table(P).as_dict()
    tol = 0 if P.mode == RATIONAL else 1e-9 * max(1.0, float(d))
    bad = []
    for (t, tp), w in sorted(
        table.items(), key=lambda kv: (kv[0][0].wire(), kv[0][1].wire())
    ):
        back = table.get((tp, t), 0)
        if abs(w - back) > tol:
            bad.append(((t, tp), w, back))
    return AdmissibilityReport(not bad, d, tuple(bad))


def tv_distance(P: NeighborhoodLaw, Q: NeighborhoodLaw):
    """Half L1 distance between two laws of the same depth."""
    if P.depth != Q.depth:
        raise ValueError(f"depth mismatch: {P.depth} vs {Q.depth}")
    keys = set(P.support) | set(Q.support)
    tot = sum(abs(P.support.get(k, 0) - Q.support.get(k, 0)) for k in keys)
    return tot / 2


def truncate_law(P: NeighborhoodLaw, k: int) -> NeighborhoodLaw:
    """Push the law through depth-k truncation of its support classes."""
    if k > P.depth:
        raise ValueError(f"cannot deepen a law from {P.depth} to {k}")
    if k == P.depth:
        return P
    out = {}
    for cls, p in P.items():
        t = truncate(cls, k)
        out[t] = out.get(t, 0) + p
    return NeighborhoodLaw(k, out, mode=P.mode)


def poisson_law(lam: float, depth: int = 1, tail: float = 1e-12) -> NeighborhoodLaw:
    """Tail-truncated Poisson degree law as a float-mode depth-1 law.

    Truncates once the remaining tail mass drops below `tail`, then
    renormalizes; the truncation point is recoverable from the support.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0:
        return NeighborhoodLaw(depth, {star(0, depth): 1.0}, mode=FLOAT)
    probs = {}
    p = math.exp(-lam)
    k = 0
    acc = 0.0
    while acc < 1 - tail:
        if p > 0:
            probs[k] = p
        acc += p
        k += 1
        p *= lam / k
        if k > 10 * lam + 200:
            break
    total = sum(probs.values())
    return NeighborhoodLaw(
        depth,
        {star(k, depth): v / total for k, v in probs.items()},
        mode=FLOAT,
    )
