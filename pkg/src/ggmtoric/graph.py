"""Undirected simple graphs on vertices 1..n and their block structure.

Self-loops are never stored.  Every vertex implicitly carries a loop, which
is why consumers always treat the diagonal entry ``k_ii`` as present.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable

import networkx as nx

from .errors import GraphFormatError, NotCentral, NotConnected, NotUnique

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphFormatError("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise GraphFormatError(f"self-loop {e} must not be stored")
            i, j = min(i, j), max(i, j)
            if not (1 <= i and j <= self.n):
                raise GraphFormatError(f"edge {e} outside 1..{self.n}")
            norm.add((i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_json(cls, data: dict | str) -> "Graph":
        if isinstance(data, str):
            try:
                data = json.loads(data)
            except json.JSONDecodeError as exc:
                raise GraphFormatError(f"invalid graph JSON: {exc}") from None
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise GraphFormatError('graph JSON must be an object with "n" and "edges"')
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphFormatError('"n" must be an integer')
        edges = []
        seen = set()
        for e in data["edges"]:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise GraphFormatError(f"bad edge entry {e!r}")
            i, j = e
            if i >= j:
                raise GraphFormatError(f"edge {e} must satisfy i < j")
            if (i, j) in seen:
                raise GraphFormatError(f"duplicate edge {e}")
            seen.add((i, j))
            edges.append((i, j))
        return cls(n, frozenset(edges))

    @classmethod
    def load(cls, path: str | Path) -> "Graph":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise GraphFormatError(str(exc)) from None
        return cls.from_json(text)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return {v: frozenset(s) for v, s in adj.items()}

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g

    def components(self, removed: Iterable[int] = ()) -> list[frozenset[int]]:
        """Connected components of the graph with ``removed`` vertices deleted."""
        gone = set(removed)
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in gone or s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if w not in gone and w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Induced subgraph, relabelled 1..m in increasing order of the old labels."""
        vs = sorted(set(vertices))
        relabel = {v: t + 1 for t, v in enumerate(vs)}
        edges = {(relabel[i], relabel[j]) for i, j in self.edges if i in relabel and j in relabel}
        return Graph(len(vs), frozenset(edges))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = sorted(set(vertices))
        return all(self.has_edge(i, j) for i, j in itertools.combinations(vs, 2))


@dataclass(frozen=True)
class OneCliquePartition:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]

    @property
    def c(self) -> int:
        (c,) = self.C
        return c

    def to_json(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "C": sorted(self.C)}


@dataclass(frozen=True)
class Separation:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]

    def to_json(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "C": sorted(self.C)}


def _partition_key(p) -> tuple:
    return (len(p.C), tuple(sorted(p.C)), tuple(sorted(p.A)), tuple(sorted(p.B)))


def biconnected_components(g: Graph) -> list[frozenset[int]]:
    """Maximal 2-connected blocks; a bridge forms its own two-vertex block."""
    blocks = [frozenset(b) for b in nx.biconnected_components(g.to_networkx())]
    return sorted(blocks, key=lambda b: (min(b), sorted(b)))


def is_block_graph(g: Graph) -> bool:
    return all(g.is_clique(b) for b in biconnected_components(g))


def non_clique_blocks(g: Graph) -> list[frozenset[int]]:
    return [b for b in biconnected_components(g) if not g.is_clique(b)]


def shortest_path(g: Graph, i: int, j: int) -> list[int]:
    """The unique shortest path from ``i`` to ``j``.

    Raises NotConnected when no path exists and NotUnique when two distinct
    shortest paths exist.
    """
    for v in (i, j):
        if v not in g.adjacency:
            raise ValueError(f"vertex {v} not in 1..{g.n}")
    if i == j:
        return [i]
    dist = {i: 0}
    count = {i: 1}
    parent: dict[int, int] = {}
    queue = deque([i])
    while queue:
        v = queue.popleft()
        if v == j:
            break
        for w in sorted(g.adjacency[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                count[w] = count[v]
                parent[w] = v
                queue.append(w)
            elif dist[w] == dist[v] + 1:
                count[w] += count[v]
    if j not in dist:
        raise NotConnected(f"no path between {i} and {j}")
    # counts of vertices at j's level are final once j is dequeued
    if count[j] > 1:
        raise NotUnique(f"{count[j]} shortest paths between {i} and {j}")
    path = [j]
    while path[-1] != i:
        path.append(parent[path[-1]])
    return path[::-1]


def path_edges(path: list[int]) -> list[Edge]:
    return [(min(a, b), max(a, b)) for a, b in zip(path, path[1:])]


def central_vertices(g: Graph) -> frozenset[int]:
    """Vertices c such that some 1-clique partition has C = {c} (the cut vertices)."""
    return frozenset(nx.articulation_points(g.to_networkx()))


def _two_group_splits(comps: list[frozenset[int]]):
    """Unordered splits of ``comps`` into two nonempty groups, first group holding comps[0]."""
    k = len(comps)
    rest = comps[1:]
    for mask in range(2 ** (k - 1) - 1):
        a = set(comps[0])
        b = set()
        for t, comp in enumerate(rest):
            (a if mask >> t & 1 else b).update(comp)
        yield frozenset(a), frozenset(b)


def one_clique_partitions(g: Graph) -> list[OneCliquePartition]:
    if not g.is_connected():
        raise NotConnected("one_clique_partitions requires a connected graph")
    out = []
    for c in sorted(central_vertices(g)):
        comps = sorted(g.components(removed=[c]), key=min)
        for a, b in _two_group_splits(comps):
            out.append(OneCliquePartition(a, b, frozenset([c])))
    return sorted(out, key=_partition_key)


def separations(g: Graph, max_c: int) -> list[Separation]:
    """All (A, B, C) with |C| <= max_c and C separating A from B, A and B nonempty."""
    if not g.is_connected():
        raise NotConnected("separations requires a connected graph")
    if g.n > 12:
        raise ValueError("separation enumeration is limited to n <= 12")
    out = []
    for size in range(0, min(max_c, g.n - 2) + 1):
        for cset in itertools.combinations(g.vertices, size):
            comps = sorted(g.components(removed=cset), key=min)
            if len(comps) < 2:
                continue
            for a, b in _two_group_splits(comps):
                out.append(Separation(a, b, frozenset(cset)))
    return sorted(out, key=_partition_key)


def contract_to_center(g: Graph, c: int) -> tuple[dict[int, int], Graph]:
    """Map each vertex to its entry point into the star of cliques around ``c``.

    Returns the vertex map and the image graph, kept on the original labels:
    the edges among ``c`` and its neighbours, with every other vertex isolated.
    """
    if c not in central_vertices(g):
        raise NotCentral(f"vertex {c} is not a cut vertex")
    nbrs = g.adjacency[c]
    rho = {}
    for v in g.vertices:
        if v == c or v in nbrs:
            rho[v] = v
        else:
            rho[v] = shortest_path(g, v, c)[-2]
    star = {c} | set(nbrs)
    edges = frozenset(e for e in g.edges if e[0] in star and e[1] in star)
    return rho, Graph(g.n, edges)


def random_block_graph(n: int, rng: random.Random, max_clique: int = 4) -> Graph:
    """Connected block graph built by gluing random cliques at existing vertices."""
    if n < 1:
        raise ValueError("n must be positive")
    edges: set[Edge] = set()
    placed = [1]
    while len(placed) < n:
        anchor = rng.choice(placed)
        size = rng.randint(1, min(max_clique - 1, n - len(placed)))
        new = list(range(len(placed) + 1, len(placed) + size + 1))
        block = [anchor] + new
        edges.update((min(a, b), max(a, b)) for a, b in itertools.combinations(block, 2))
        placed.extend(new)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    relabel = dict(zip(range(1, n + 1), perm))
    return Graph(n, frozenset((min(relabel[a], relabel[b]), max(relabel[a], relabel[b])) for a, b in edges))


def random_block_graphs(count: int, max_n: int, seed: int = 0, min_n: int = 2) -> list[Graph]:
    """A reproducible suite of ``count`` random connected block graphs with min_n <= n <= max_n."""
    rng = random.Random(f"blocks:{seed}")
    return [random_block_graph(rng.randint(min_n, max_n), rng) for _ in range(count)]


def random_connected_graph(n: int, rng: random.Random, p: float = 0.5) -> Graph:
    """Random connected graph: a random spanning tree plus independent extra edges."""
    edges: set[Edge] = set()
    order = list(range(1, n + 1))
    rng.shuffle(order)
    for t in range(1, n):
        a, b = order[t], order[rng.randrange(t)]
        edges.add((min(a, b), max(a, b)))
    for a, b in itertools.combinations(range(1, n + 1), 2):
        if rng.random() < p:
            edges.add((a, b))
    return Graph(n, frozenset(edges))


# -- small named families ------------------------------------------------------

def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> Graph:
    edges = {(i, i + 1) for i in range(1, n)}
    if n >= 3:
        edges.add((1, n))
    return Graph(n, frozenset(edges))


def star_graph(leaves: int) -> Graph:
    """Star K_{1,leaves} with center 1."""
    return Graph(leaves + 1, frozenset((1, v) for v in range(2, leaves + 2)))
