"""Multilayer sentence graph: construction, inter-layer reweighting, and
removal of the weakest edges.

Nodes are sentence ids 0..n-1, each tagged with the layer (document) it
belongs to. Edges are undirected, stored once with i < j, and carry a
positive weight plus a kind: "intra" (same layer) or "inter" (different
layers). Graphs are immutable; every transform returns a new value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptyGraph, InvalidInput, InvalidParameter
from .tfidf import cosine

INTRA, INTER = "intra", "inter"


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: float
    kind: str


@dataclass(frozen=True)
class MultilayerGraph:
    n_nodes: int
    layer_of: tuple
    edges: tuple
    weighted: bool = True


@dataclass(frozen=True)
class GraphParams:
    """alpha scales inter-layer weights; r is the removed edge fraction."""

    alpha: float = 1.0
    r: float = 0.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise InvalidParameter(f"alpha must be > 0, got {self.alpha}")
        if not 0 <= self.r < 1:
            raise InvalidParameter(f"r must be in [0, 1), got {self.r}")


def build(vectors: list, layers) -> MultilayerGraph:
    """Connect every sentence pair with cosine > 0.

    vectors: SentenceVectors indexed by position; node i is vectors[i].
    layers: mapping or sequence giving each sentence's layer index.
    """
    n = len(vectors)
    layer_of = tuple(layers[i] for i in range(n))
    if n < 2 or len(set(layer_of)) < 2:
        raise InvalidInput(
            "need at least 2 sentences spanning at least 2 layers")
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            w = cosine(vectors[i], vectors[j])
            if w > 0.0:
                kind = INTRA if layer_of[i] == layer_of[j] else INTER
                edges.append(Edge(i, j, w, kind))
    if not edges:
        raise EmptyGraph("all pairwise similarities are zero")
    return MultilayerGraph(n, layer_of, tuple(edges), weighted=True)


def from_edges(n_nodes: int, layer_of, edge_tuples, weighted=True
               ) -> MultilayerGraph:
    """Assemble a graph from raw (i, j, weight) triples; kinds derived."""
    layer_of = tuple(layer_of)
    seen = set()
    edges = []
    for i, j, w in edge_tuples:
        if i == j:
            raise InvalidInput(f"self-loop on node {i}")
        if w <= 0:
            raise InvalidInput(f"edge ({i},{j}) has non-positive weight {w}")
        u, v = (i, j) if i < j else (j, i)
        if (u, v) in seen:
            raise InvalidInput(f"duplicate edge ({u},{v})")
        seen.add((u, v))
        kind = INTRA if layer_of[u] == layer_of[v] else INTER
        edges.append(Edge(u, v, float(w), kind))
    return MultilayerGraph(n_nodes, layer_of, tuple(edges), weighted)


def apply_alpha(g: MultilayerGraph, alpha: float) -> MultilayerGraph:
    """Scale inter-layer weights by alpha; intra edges pass through as-is."""
    if alpha <= 0:
        raise InvalidParameter(f"alpha must be > 0, got {alpha}")
    edges = tuple(
        Edge(e.u, e.v, e.weight * alpha, e.kind) if e.kind == INTER else e
        for e in g.edges)
    return MultilayerGraph(g.n_nodes, g.layer_of, edges, g.weighted)


def remove_weakest(g: MultilayerGraph, r: float) -> MultilayerGraph:
    """Drop the floor(r * |E|) smallest-weight edges and flag the result
    unweighted. Ties at the cut break by (u, v) order; surviving weights are
    retained for callers that still want them."""
    if not g.weighted:
        raise InvalidInput("remove_weakest expects a weighted graph")
    if not 0 <= r < 1:
        raise InvalidParameter(f"r must be in [0, 1), got {r}")
    # epsilon guards products like 0.3 * 10 that land just below an integer
    k = math.floor(r * len(g.edges) + 1e-9)
    ordered = sorted(g.edges, key=lambda e: (e.weight, e.u, e.v))
    survivors = frozenset((e.u, e.v) for e in ordered[k:])
    edges = tuple(e for e in g.edges if (e.u, e.v) in survivors)
    return MultilayerGraph(g.n_nodes, g.layer_of, edges, weighted=False)


def adjacency(g: MultilayerGraph) -> list:
    """Per-node dict neighbour -> weight (1.0 when the graph is unweighted)."""
    adj = [dict() for _ in range(g.n_nodes)]
    for e in g.edges:
        w = e.weight if g.weighted else 1.0
        adj[e.u][e.v] = w
        adj[e.v][e.u] = w
    return adj


def connected_components(g: MultilayerGraph) -> list:
    """Components as sorted node lists, ordered by smallest member."""
    adj = adjacency(g)
    seen = [False] * g.n_nodes
    comps = []
    for start in range(g.n_nodes):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps
