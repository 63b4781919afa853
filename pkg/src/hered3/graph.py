"""Mutable simple undirected graphs with stable integer vertex ids."""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator

from .errors import InputError


class Graph:
    """Simple undirected graph backed by per-vertex neighbor sets.

    Vertex ids are plain integers and are never recycled: once an id has
    been handed out (or seen in a bulk constructor) it stays retired for
    the lifetime of this graph and of every copy derived from it.  Replay
    logs and witness maps therefore stay unambiguous across arbitrary
    sequences of deletions and insertions.
    """

    __slots__ = ("_adj", "_next_id")

    def __init__(self) -> None:
        self._adj: dict[int, set[int]] = {}
        self._next_id = 1

    @classmethod
    def from_edges(cls, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        g = cls()
        for v in vertices:
            g.add_vertex(v)
        for u, v in edges:
            if u not in g._adj:
                g.add_vertex(u)
            if v not in g._adj:
                g.add_vertex(v)
            g.add_edge(u, v)
        return g

    # -- basic queries ---------------------------------------------------

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def vertex_count(self) -> int:
        return len(self._adj)

    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def vertices(self) -> list[int]:
        """All vertex ids in ascending order."""
        return sorted(self._adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """All edges as (u, v) with u < v, in ascending order."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def neighbors(self, v: int) -> set[int]:
        """Neighbor set of v.  Callers must treat the result as read-only."""
        self._check(v)
        return self._adj[v]

    def sorted_neighbors(self, v: int) -> list[int]:
        self._check(v)
        return sorted(self._adj[v])

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def _check(self, v: int) -> None:
        if v not in self._adj:
            raise InputError(f"unknown vertex {v}")

    # -- mutation --------------------------------------------------------

    def add_vertex(self, vid: int | None = None) -> int:
        """Add a vertex.  Without an explicit id a fresh, never-used id is issued."""
        if vid is None:
            vid = self._next_id
        elif vid in self._adj:
            raise InputError(f"vertex {vid} already present")
        self._adj[vid] = set()
        if vid >= self._next_id:
            self._next_id = vid + 1
        return vid

    def add_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise InputError(f"self-loop at vertex {u}")
        self._adj[u].add(v)
        self._adj[v].add(u)

    def remove_vertex(self, v: int) -> None:
        self._check(v)
        for u in self._adj[v]:
            self._adj[u].discard(v)
        del self._adj[v]

    def copy(self) -> "Graph":
        g = Graph()
        g._adj = {v: set(nbrs) for v, nbrs in self._adj.items()}
        g._next_id = self._next_id
        return g


# -- module level operations ----------------------------------------------


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Subgraph induced by `keep`, preserving vertex ids and the id counter."""
    keep_set = set(keep)
    for v in keep_set:
        g._check(v)
    sub = Graph()
    sub._adj = {v: g._adj[v] & keep_set for v in keep_set}
    sub._next_id = g._next_id
    return sub


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[set[int]]:
    """Connected components ordered by their smallest contained vertex id.

    With `within`, components of the induced subgraph on that vertex set.
    """
    verts = g._adj if within is None else set(within)
    seen: set[int] = set()
    comps: list[set[int]] = []
    for start in sorted(verts):
        if start in seen:
            continue
        g._check(start)
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g._adj[u]:
                if w in verts and w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def bipartition(g: Graph, within: Iterable[int] | None = None) -> tuple[set[int], set[int]] | None:
    """Two-color the (sub)graph, or return None when some component is odd.

    Within each component the side holding the component's smallest vertex
    id is assigned to the first set, which makes the result deterministic
    (the first set always contains the globally smallest vertex id).
    """
    verts = g._adj if within is None else set(within)
    side: dict[int, int] = {}
    first: set[int] = set()
    second: set[int] = set()
    for start in sorted(verts):
        if start in side:
            continue
        g._check(start)
        side[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g._adj[u]:
                if w not in verts:
                    continue
                if w not in side:
                    side[w] = side[u] ^ 1
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    for v, s in side.items():
        (first if s == 0 else second).add(v)
    return first, second


def common_neighbors(g: Graph, u: int, v: int) -> set[int]:
    g._check(u)
    g._check(v)
    return g._adj[u] & g._adj[v]


def complement_components(g: Graph, within: Iterable[int] | None = None) -> list[set[int]]:
    """Connected components of the complement, without materializing it.

    Uses the standard unvisited-set BFS so the cost stays near-linear in
    the size of the original graph even when the complement is dense.
    """
    verts = set(g._adj) if within is None else set(within)
    for v in verts:
        g._check(v)
    unvisited = set(verts)
    comps: list[set[int]] = []
    while unvisited:
        start = min(unvisited)
        unvisited.discard(start)
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            reach = unvisited - g._adj[u]
            unvisited &= g._adj[u]
            for w in reach:
                comp.add(w)
                queue.append(w)
        comps.append(comp)
    comps.sort(key=min)
    return comps


def shortest_odd_cycle(g: Graph, within: Iterable[int] | None = None) -> list[int] | None:
    """A shortest odd cycle of the (sub)graph, or None when bipartite.

    A shortest odd cycle is always chordless, so the returned vertex list
    induces a cycle.  Runs one BFS per vertex and keeps the global best.
    """
    verts = sorted(g._adj) if within is None else sorted(within)
    vset = set(verts)
    best: list[int] | None = None
    for root in verts:
        dist = {root: 0}
        parent = {root: root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and dist[u] * 2 + 1 >= len(best):
                break
            for w in g._adj[u]:
                if w not in vset:
                    continue
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif dist[w] == dist[u]:
                    cycle = _lift_cycle(parent, u, w)
                    if cycle is not None and (best is None or len(cycle) < len(best)):
                        best = cycle
    return best


def _lift_cycle(parent: dict[int, int], u: int, w: int) -> list[int] | None:
    # Walk both BFS branches toward the root until they meet.
    pu = [u]
    pw = [w]
    while parent[pu[-1]] != pu[-1]:
        pu.append(parent[pu[-1]])
    while parent[pw[-1]] != pw[-1]:
        pw.append(parent[pw[-1]])
    su, sw = set(pu), set(pw)
    meet = None
    for x in pu:
        if x in sw:
            meet = x
            break
    if meet is None:
        return None
    cu = pu[: pu.index(meet) + 1]
    cw = pw[: pw.index(meet)]
    cycle = cu + cw[::-1]
    if len(cycle) % 2 == 0 or len(set(cycle)) != len(cycle):
        return None
    return cycle
