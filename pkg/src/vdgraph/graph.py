"""Immutable simple graphs, structural predicates and products."""

from __future__ import annotations

import hashlib
import json
import math
from collections import deque
from typing import Iterable, Sequence

__all__ = [
    "Graph",
    "GraphFormatError",
    "is_vd",
    "bipartition",
    "distance",
    "distances_from",
    "common_neighbor_count",
    "has_odd_cycle",
    "components",
    "component_count",
    "is_connected",
    "tensor_product",
    "bipartite_double",
    "induced_subgraph",
    "to_text",
    "from_text",
    "to_json",
    "from_json",
]


class GraphFormatError(ValueError):
    pass


class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Neighbor lists are sorted tuples; ``bits[v]`` is the same neighborhood
    as an int bitmask, which is what the counting code uses.
    """

    __slots__ = ("n", "adjacency", "labels", "bits", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise ValueError("label count does not match vertex count")
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.labels = labels
        bits = []
        for s in nbrs:
            b = 0
            for w in s:
                b |= 1 << w
            bits.append(b)
        self.bits: tuple[int, ...] = tuple(bits)
        self._m = sum(len(s) for s in nbrs) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]], labels=None) -> "Graph":
        return cls(len(adjacency), ((u, v) for u, row in enumerate(adjacency) for v in row if u < v), labels)

    @property
    def m(self) -> int:
        return self._m

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in ascending lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return (self.bits[u] >> v) & 1 == 1

    def is_automorphism(self, images: Sequence[int]) -> bool:
        """True iff the vertex map ``images`` preserves adjacency and non-adjacency."""
        if len(images) != self.n:
            return False
        bits = self.bits
        for u in range(self.n):
            b = 0
            for w in self.adjacency[u]:
                b |= 1 << images[w]
            if b != bits[images[u]]:
                return False
        return True

    def relabeled(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.edges(), labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def digest(self) -> str:
        """SHA-256 of the text serialization (labels excluded)."""
        return hashlib.sha256(to_text(self).encode()).hexdigest()


def is_vd(g: Graph) -> tuple[bool, tuple[int, int] | None]:
    """Check that distinct vertices have distinct neighborhoods.

    Returns ``(True, None)`` or ``(False, (x, y))`` with ``x < y`` sharing a
    neighborhood; the witness is the lexicographically first such pair.
    """
    seen: dict[int, int] = {}
    best = None
    for v in range(g.n):
        b = g.bits[v]
        if b in seen:
            pair = (seen[b], v)
            if best is None or pair < best:
                best = pair
        else:
            seen[b] = v
    return (best is None, best)


def bipartition(g: Graph) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Two-coloring ``(U, W)`` as sorted tuples, or ``None`` if an odd cycle exists.

    Each component's smallest vertex goes to ``U``.
    """
    color = [-1] * g.n
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if color[w] == -1:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return (
        tuple(v for v in range(g.n) if color[v] == 0),
        tuple(v for v in range(g.n) if color[v] == 1),
    )


def distances_from(g: Graph, v: int) -> list[float]:
    dist: list[float] = [math.inf] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in g.adjacency[x]:
            if dist[y] == math.inf:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def distance(g: Graph, v: int, w: int) -> float:
    """BFS distance; ``math.inf`` when ``v`` and ``w`` lie in different components."""
    if not (0 <= v < g.n and 0 <= w < g.n):
        raise IndexError("vertex out of range")
    return distances_from(g, v)[w]


def common_neighbor_count(g: Graph, v: int, w: int) -> int:
    if v == w:
        raise ValueError("common_neighbor_count needs distinct vertices")
    return (g.bits[v] & g.bits[w]).bit_count()


def has_odd_cycle(g: Graph) -> bool:
    return bipartition(g) is None


def components(g: Graph) -> list[list[int]]:
    comp = [-1] * g.n
    out = []
    for root in range(g.n):
        if comp[root] != -1:
            continue
        comp[root] = len(out)
        members = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if comp[w] == -1:
                    comp[w] = comp[root]
                    members.append(w)
                    queue.append(w)
        out.append(sorted(members))
    return out


def component_count(g: Graph) -> int:
    return len(components(g))


def is_connected(g: Graph) -> bool:
    return component_count(g) <= 1


def tensor_product(g1: Graph, g2: Graph) -> Graph:
    """Direct product; vertex ``(a, b)`` has index ``a * g2.n + b``."""
    n2 = g2.n
    edges = []
    for a, c in g1.edges():
        for b, d in g2.edges():
            edges.append((a * n2 + b, c * n2 + d))
            edges.append((a * n2 + d, c * n2 + b))
    labels = None
    if g1.labels is not None and g2.labels is not None:
        labels = [f"({x},{y})" for x in g1.labels for y in g2.labels]
    return Graph(g1.n * n2, edges, labels)


def bipartite_double(g: Graph) -> Graph:
    """``G x K2`` with layer 0 at indices ``0..n-1`` and layer 1 at ``n..2n-1``."""
    n = g.n
    edges = []
    for u, v in g.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    names = g.labels if g.labels is not None else [str(v) for v in range(n)]
    labels = [f"({x},0)" for x in names] + [f"({x},1)" for x in names]
    return Graph(2 * n, edges, labels)


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on ``s`` relabeled in ascending order, with the old->new map."""
    verts = sorted(set(s))
    for v in verts:
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[w]) for u in verts for w in g.adjacency[u] if u < w and w in index]
    labels = [g.labels[v] for v in verts] if g.labels is not None else None
    return Graph(len(verts), edges, labels), index


# -- serialization ---------------------------------------------------------

def to_text(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise GraphFormatError("empty graph file")
    try:
        n, m = (int(x) for x in rows[0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphFormatError(f"malformed graph text: {exc}") from None
    if len(edges) != m:
        raise GraphFormatError(f"header promises {m} edges, found {len(edges)}")
    try:
        g = Graph(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    if g.m != m:
        raise GraphFormatError("duplicate edges in graph text")
    return g


def to_json(g: Graph) -> str:
    data = {"n": g.n, "edges": [list(e) for e in g.edges()], "labels": list(g.labels) if g.labels is not None else None}
    return json.dumps(data, sort_keys=True) + "\n"


def from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
        return Graph(int(data["n"]), [tuple(e) for e in data["edges"]], data.get("labels"))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"malformed graph JSON: {exc}") from None
