"""Cotree construction and list 3-coloring of P4-free graphs.

The coloring routine works on "achievable color sets": for a cotree node,
the family of exact color sets that some proper palette-respecting coloring
of its leaves uses.  With 3 colors every table has at most 7 entries, so
the dynamic program is linear in the cotree size.
"""

from __future__ import annotations

import sys
from typing import Iterable, Mapping

from .errors import ContractViolationError
from .graph import Graph, complement_components, connected_components

LEAF = "leaf"
UNION = "union"
JOIN = "join"

ColorSet = frozenset


class Cotree:
    __slots__ = ("kind", "vertex", "children", "min_vertex")

    def __init__(self, kind: str, vertex: int | None = None, children: list["Cotree"] | None = None):
        self.kind = kind
        self.vertex = vertex
        self.children = children or []
        self.min_vertex = vertex if vertex is not None else self.children[0].min_vertex

    def leaves(self) -> list[int]:
        if self.kind == LEAF:
            return [self.vertex]
        out: list[int] = []
        for c in self.children:
            out.extend(c.leaves())
        return out


class _NotCograph(Exception):
    def __init__(self, verts: frozenset):
        self.verts = verts


def _ensure_recursion_room(n: int) -> None:
    # cotrees of threshold-like graphs are ~2n deep
    want = 4 * n + 200
    if sys.getrecursionlimit() < want:
        sys.setrecursionlimit(want)


def _build(g: Graph, verts: set) -> Cotree:
    if len(verts) == 1:
        v = next(iter(verts))
        return Cotree(LEAF, vertex=v)
    comps = connected_components(g, within=verts)
    if len(comps) > 1:
        return Cotree(UNION, children=[_build(g, c) for c in comps])
    cocomps = complement_components(g, within=verts)
    if len(cocomps) > 1:
        return Cotree(JOIN, children=[_build(g, c) for c in cocomps])
    raise _NotCograph(frozenset(verts))


def cotree_or_failure(g: Graph, within: Iterable[int] | None = None):
    """Build the cotree, or report failure without extracting a witness.

    Returns (root, None) for a cograph and (None, bad_set) otherwise, where
    bad_set is a vertex set that is connected in both the graph and its
    complement (hence contains an induced P4).  Keeping witness extraction
    out of this function keeps recognition near-linear.
    """
    verts = set(g.vertices()) if within is None else set(within)
    if not verts:
        return None, None
    _ensure_recursion_room(len(verts))
    try:
        return _build(g, verts), None
    except _NotCograph as exc:
        return None, exc.verts


def is_p4_free(g: Graph, within: Iterable[int] | None = None) -> bool:
    root, bad = cotree_or_failure(g, within)
    return bad is None


def _set_key(s: ColorSet) -> tuple:
    return (len(s), tuple(sorted(s)))


def _node_table(node: Cotree, palettes: Mapping[int, frozenset], memo: dict) -> dict:
    """Map achievable color set -> tuple of per-child color set choices."""
    key = id(node)
    if key in memo:
        return memo[key]
    if node.kind == LEAF:
        table = {frozenset((c,)): None for c in palettes[node.vertex]}
    else:
        acc = {s: (s,) for s in _node_table(node.children[0], palettes, memo)}
        for child in node.children[1:]:
            child_table = _node_table(child, palettes, memo)
            nxt: dict = {}
            for s_acc in sorted(acc, key=_set_key):
                for s_child in sorted(child_table, key=_set_key):
                    if node.kind == JOIN and s_acc & s_child:
                        continue
                    merged = s_acc | s_child
                    if merged not in nxt:
                        nxt[merged] = acc[s_acc] + (s_child,)
            acc = nxt
        table = acc
    memo[key] = table
    return table


def _extract(node: Cotree, target: ColorSet, memo: dict, out: dict) -> None:
    if node.kind == LEAF:
        (color,) = target
        out[node.vertex] = color
        return
    cert = memo[id(node)][target]
    for child, child_set in zip(node.children, cert):
        _extract(child, child_set, memo, out)


def list3color(
    g: Graph,
    palettes: Mapping[int, frozenset],
    within: Iterable[int] | None = None,
) -> dict | None:
    """A proper palette-respecting coloring of a P4-free (sub)graph, or None.

    Raises ContractViolationError when the target is not P4-free.  The
    result, when present, is verified against the edges and palettes.
    """
    verts = set(g.vertices()) if within is None else set(within)
    if not verts:
        return {}
    missing = [v for v in verts if v not in palettes]
    if missing:
        raise ContractViolationError(f"no palette for vertices {sorted(missing)[:5]}")
    root, bad = cotree_or_failure(g, verts)
    if root is None:
        raise ContractViolationError(f"subgraph on {len(bad)} vertices is not P4-free")
    memo: dict = {}
    table = _node_table(root, palettes, memo)
    if not table:
        return None
    target = min(table, key=_set_key)
    coloring: dict = {}
    _extract(root, target, memo, coloring)
    for v in verts:
        if coloring[v] not in palettes[v]:
            raise AssertionError(f"cograph coloring left palette at {v}")
        for w in g.neighbors(v):
            if w in coloring and coloring[w] == coloring[v]:
                raise AssertionError(f"cograph coloring improper on edge {v},{w}")
    return coloring
