"""Decision pipeline for 3-coloring within the supported graph class.

Up front the solver rejects two certificates that rule out any 3-coloring
regardless of class membership: an induced complement-of-C7, and a vertex
whose neighborhood contains an odd cycle (the vertex plus the cycle forms
an odd wheel).  Each connected component is then solved independently.

A component containing an induced 7-cycle is anchored on that cycle: all
126 proper colorings of the anchor are enumerated, and each branch runs
the palette fixpoint followed by a ladder of structural stages that either
branch further (bounded by the structure), shrink the graph, reject, or
finish through a 2-SAT assembly.  A component with an induced 9-cycle but
no 7-cycle is anchored the same way (510 colorings), and the fixpoint
alone must settle every branch.  A component with neither anchor cycle is
3-colorable outright once the preflight has passed; a witness for it comes
from a bounded backtracking colorer.

Deleted vertices re-enter the final coloring through the replay records
collected by the reduction engine.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from time import perf_counter

from . import cograph, patterns
from .errors import ClassViolationError, StageAssertionError
from .graph import Graph, bipartition, common_neighbors, connected_components, induced_subgraph
from .reductions import (
    ALL_COLORS,
    REJECTED,
    SOLVED,
    Instance,
    RecDominated,
    RecComponent,
    RecKeyedDrop,
    Stats,
    collapse_neighborhood,
    cut_reduction,
    run_fixpoint,
    _palette_lit,
)
from .twosat import TwoSat, lit

_TRACKER_LOCK = threading.Lock()


@dataclass
class SolveReport:
    decision: str               # "colorable" | "not_colorable"
    witness: dict | None        # vertex -> color, only in witness mode
    mode: str                   # "witness" | "decision_only"
    stats: dict


def solve(
    g: Graph,
    *,
    witness: bool = False,
    assume_class: bool = False,
    threads: int = 1,
    probe_class: bool = False,
    witness_ceiling: int = 64,
) -> SolveReport:
    """Decide 3-colorability of g; optionally produce a coloring.

    Raises ClassViolationError when the input is outside the supported
    class, unless assume_class skips the membership check.  On out-of-class
    input with assume_class the structural stages may fail loudly; they
    never return a wrong answer silently for in-class graphs.
    """
    start = perf_counter()
    stats = Stats()
    if not assume_class:
        offending = patterns.check_class(g)
        if offending is not None:
            raise ClassViolationError(offending)

    if patterns.find_co_c7(g) is not None:
        stats.bump("preflight_co_c7")
        return _report("not_colorable", None, False, stats, start)
    odd = patterns.find_nonbipartite_neighborhood(g)
    if odd is not None:
        stats.bump("preflight_odd_neighborhood_" + odd.kind)
        return _report("not_colorable", None, False, stats, start)

    witness_map: dict[int, int] = {}
    complete = True
    for comp in connected_components(g):
        ok, cmap, full = _solve_component(
            g, comp, stats, witness, threads, probe_class, witness_ceiling)
        if not ok:
            return _report("not_colorable", None, False, stats, start)
        if witness:
            if cmap is None:
                complete = False
            else:
                witness_map.update(cmap)
    if witness and complete:
        _verify_witness(g, witness_map)
        return _report("colorable", witness_map, True, stats, start)
    return _report("colorable", None, False, stats, start)


def _report(decision, witness_map, full_witness, stats, start) -> SolveReport:
    out = stats.to_dict()
    out.setdefault("branches", 0)
    out["reductions"] = stats.reductions_total()
    out["millis"] = int((perf_counter() - start) * 1000)
    mode = "witness" if full_witness else "decision_only"
    return SolveReport(decision, witness_map if full_witness else None, mode, out)


def _verify_witness(g: Graph, coloring: dict) -> None:
    for v in g.vertices():
        c = coloring.get(v)
        if c not in ALL_COLORS:
            raise AssertionError(f"witness misses vertex {v}")
        for w in g.neighbors(v):
            if coloring.get(w) == c:
                raise AssertionError(f"witness colors edge {v},{w} monochromatically")


def _solve_component(g, comp, stats, want_witness, threads, probe, ceiling):
    """Returns (colorable, coloring or None, witness-complete flag)."""
    sub = induced_subgraph(g, comp)
    cyc = patterns.find_induced_cycle(sub, 7)
    if cyc is not None:
        stats.bump("components_anchored_7")
        won = _run_anchored(sub, cyc, stats, threads, probe, direct=False)
        if won is None:
            return False, None, True
        return True, won.assemble_witness(comp) if want_witness else None, True
    cyc = patterns.find_induced_cycle(sub, 9)
    if cyc is not None:
        stats.bump("components_anchored_9")
        won = _run_anchored(sub, cyc, stats, threads, probe, direct=True)
        if won is None:
            return False, None, True
        return True, won.assemble_witness(comp) if want_witness else None, True
    # no anchor cycle: with the preflight certificates gone the component
    # is 3-colorable, so only the witness still takes work
    stats.bump("components_plain")
    if not want_witness:
        return True, None, True
    if len(comp) > ceiling:
        return True, None, False
    coloring = _backtrack_color(sub)
    if coloring is None:
        # reachable only when assume_class waived the membership check on
        # a graph that genuinely needs four colors
        return False, None, True
    return True, coloring, True


def _proper_cycle_colorings(k: int) -> list[tuple]:
    """All proper 3-colorings of a k-cycle, lexicographic."""
    out: list[tuple] = []
    colors = (1, 2, 3)

    def grow(prefix):
        if len(prefix) == k:
            if prefix[-1] != prefix[0]:
                out.append(tuple(prefix))
            return
        for c in colors:
            if prefix and c == prefix[-1]:
                continue
            prefix.append(c)
            grow(prefix)
            prefix.pop()

    grow([])
    return out


def _run_anchored(comp_graph, cycle, stats, threads, probe, direct):
    """Enumerate anchor colorings; in direct mode the fixpoint must finish
    each branch, otherwise the structural stage ladder drives a DFS."""
    base = Instance(comp_graph, stats, probe_class=probe)
    base.anchor_order = tuple(cycle)
    colorings = _proper_cycle_colorings(len(cycle))
    stats.bump("anchor_colorings", len(colorings))
    tracker = {"leaves": 0, "pair_width": {}}

    def attempt(coloring):
        child = base.clone()
        for v, c in zip(cycle, coloring):
            child.commit_color(v, c, keep=True)
        if direct:
            stats.bump("branches")
            out = run_fixpoint(child)
            if out == SOLVED:
                return child
            if out == REJECTED:
                return None
            raise StageAssertionError("fixpoint did not fully resolve a C9 branch")
        return _dfs(child, tracker, stats)

    winner = None
    if threads <= 1:
        for col in colorings:
            winner = attempt(col)
            if winner is not None:
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(attempt, col) for col in colorings]
            try:
                for fut in futures:
                    got = fut.result()
                    if got is not None:
                        winner = got
                        break
            finally:
                pool.shutdown(wait=False, cancel_futures=True)

    if not direct:
        # every branching stage is structurally bounded: one two-way split
        # per anchor position, and per opposing anchor pair one split into
        # at most 1 + 9 * width children
        bound = len(colorings) * 2 ** len(cycle)
        for i in range(len(cycle)):
            bound *= 1 + 9 * tracker["pair_width"].get(i, 0)
        if tracker["leaves"] > bound:
            raise AssertionError("explored leaves exceed the structural branch bound")
    return winner


def _count_leaf(tracker) -> None:
    with _TRACKER_LOCK:
        tracker["leaves"] += 1


def _dfs(root, tracker, stats):
    stack = [root]
    while stack:
        inst = stack.pop()
        stats.bump("branches")
        if inst is None:
            # a branch whose planned colors were already infeasible
            _count_leaf(tracker)
            continue
        out, kids = _advance(inst, tracker)
        if out == "solved":
            return inst
        if out == "rejected":
            _count_leaf(tracker)
            continue
        stack.extend(reversed(kids))
    return None


def _advance(inst, tracker):
    """Drive one branch to a verdict or a branching point."""
    while True:
        out = run_fixpoint(inst)
        if out == REJECTED:
            return "rejected", None
        if out == SOLVED:
            return "solved", None
        view = _analyze(inst)
        kids = _branch_single_anchor(inst, view)
        if kids is None:
            kids = _branch_opposing_pair(inst, view, tracker)
        if kids is not None:
            return "children", kids
        rotated, frame = _normalize_rotation(inst, view)
        if rotated:
            view = _analyze(inst)
        live_before = inst.g.vertex_count()

        status = _reduce_relevant_edges(inst, view, frame)
        if status == "clean":
            status = _reduce_equivalence_cuts(inst, view, frame)
        payloads = None
        if status == "clean":
            status, payloads = _component_cases(inst, view, frame)
        if status == "rejected":
            return "rejected", None
        if status == "mutated":
            if not inst.g.vertex_count() < live_before:
                raise AssertionError("structural stage fired without shrinking the graph")
            continue
        return _final_assembly(inst, view, frame, payloads), None


# -- structure analysis -------------------------------------------------------


class _View:
    """Indexes over one anchored branch at a rule fixpoint."""

    __slots__ = ("anchors", "acolor", "rim", "outer", "comps", "comp_relevant",
                 "comp_of", "supports", "relevant", "adj_comps", "full_adj",
                 "outer_nbrs", "dominators")


def _analyze(inst) -> _View:
    g = inst.g
    if len(connected_components(g)) != 1:
        raise StageAssertionError("anchored branch split into several components")
    anchors = inst.anchor_order
    if not anchors:
        raise StageAssertionError("structural stage entered without an anchor cycle")
    for v in anchors:
        if not g.has_vertex(v) or v not in inst.colors:
            raise StageAssertionError("anchor cycle vertex lost before the structural stages")
    k = len(anchors)

    view = _View()
    view.anchors = anchors
    view.acolor = tuple(inst.colors[v] for v in anchors)
    rim: list[int] = []
    outer: set[int] = set()
    supports: dict[int, frozenset] = {}
    for v in sorted(inst.palettes):
        sup = frozenset(i for i, u in enumerate(anchors) if g.has_edge(v, u))
        if sup:
            rim.append(v)
            supports[v] = sup
        else:
            outer.add(v)
    for v, p in inst.palettes.items():
        if len(p) == 3 and v not in outer:
            raise StageAssertionError("full palette vertex adjacent to the anchor cycle")
    for v in rim:
        sup = supports[v]
        ok = len(sup) == 1
        if len(sup) == 2:
            i, j = sorted(sup)
            ok = (j - i) % k in (2, k - 2)
        if not ok:
            raise StageAssertionError("rim vertex touches the anchor cycle in a forbidden shape")

    comps = [frozenset(c) for c in connected_components(g, within=outer)]
    comp_of = {}
    for idx, c in enumerate(comps):
        for v in c:
            comp_of[v] = idx
    comp_relevant = []
    for c in comps:
        if not cograph.is_p4_free(g, c):
            raise StageAssertionError("outer component is not P4-free")
        comp_relevant.append(any(len(inst.palettes[v]) == 3 for v in c))
    if not any(comp_relevant):
        raise StageAssertionError("no relevant outer component at a stable fixpoint")

    adj_comps = {}
    outer_nbrs = {}
    full_adj = {}
    relevant = []
    for v in rim:
        nb = frozenset(g.neighbors(v) & outer)
        outer_nbrs[v] = nb
        touched = frozenset(comp_of[w] for w in nb)
        adj_comps[v] = touched
        for idx in touched:
            full_adj[(v, idx)] = comps[idx] <= nb
        if any(comp_relevant[idx] for idx in touched):
            relevant.append(v)
    if not relevant:
        raise StageAssertionError("relevant component with an empty boundary")
    for v in relevant:
        for idx in adj_comps[v]:
            if not full_adj[(v, idx)]:
                if len(adj_comps[v]) != 1 or len(supports[v]) != 2:
                    raise StageAssertionError("partial outer neighbor outside its allowed shape")

    dominators = {}
    for idx, c in enumerate(comps):
        if comp_relevant[idx]:
            dom = _dominating_set(g, c)
            if dom is None:
                raise StageAssertionError("relevant component lacks a dominating set of size two")
            dominators[idx] = dom

    view.rim = rim
    view.outer = outer
    view.comps = comps
    view.comp_relevant = comp_relevant
    view.comp_of = comp_of
    view.supports = supports
    view.relevant = relevant
    view.adj_comps = adj_comps
    view.full_adj = full_adj
    view.outer_nbrs = outer_nbrs
    view.dominators = dominators
    _consume_checks(inst, view)
    return view


def _consume_checks(inst, view) -> None:
    checks, inst.post_checks = inst.post_checks, []
    for kind, data in checks:
        if kind == "single_anchor_cleared":
            if any(view.supports[x] == frozenset((data,)) for x in view.relevant):
                raise StageAssertionError("single-anchor relevant set survived its branching")
        else:  # "pair_cleared"
            i, j = data
            low = any(i in view.supports[x] for x in view.relevant)
            high = any(j in view.supports[x] for x in view.relevant)
            if low and high:
                raise StageAssertionError("opposing anchor pair survived its branching")


def _dominating_set(g, verts):
    """A dominating set of size <= 2 inside verts, scanning by vertex id."""
    order = sorted(verts)
    vs = set(verts)
    for v in order:
        if vs <= (g.neighbors(v) & vs) | {v}:
            return (v,)
    for i, v in enumerate(order):
        cov = (g.neighbors(v) & vs) | {v}
        for w in order[i + 1:]:
            if vs <= cov | (g.neighbors(w) & vs) | {w}:
                return (v, w)
    return None


# -- branching stages ---------------------------------------------------------


def _branch_single_anchor(inst, view):
    """Branch on the widest relevant vertex whose support is one anchor."""
    for i in range(len(view.anchors)):
        members = [x for x in view.relevant if view.supports[x] == frozenset((i,))]
        if not members:
            continue
        chain = sorted(members, key=lambda x: (len(view.outer_nbrs[x]), x))
        for prev, nxt in zip(chain, chain[1:]):
            if not view.outer_nbrs[prev] <= view.outer_nbrs[nxt]:
                raise StageAssertionError("single-anchor outer neighborhoods do not nest")
        z = max(chain, key=lambda x: (len(view.outer_nbrs[x]), -x))
        inst.stats.bump("stage_single_anchor")
        kids = []
        for c in sorted(inst.palettes[z]):
            child = inst.clone()
            ok = child.try_color(z, c)
            child.post_checks.append(("single_anchor_cleared", i))
            kids.append(child if ok else None)
        return kids
    return None


def _branch_opposing_pair(inst, view, tracker):
    """Branch on the relevant sets of two anchors three steps apart.

    Every member is either given the color its side does not share with
    the other side, or a first member takes the shared color; in the
    latter case a partial neighbor additionally branches over the (at
    most nine) colorings of its component's dominating set.
    """
    k = len(view.anchors)
    at = [[x for x in view.relevant if i in view.supports[x]] for i in range(k)]
    for i in range(k):
        j = (i + 3) % k
        if not at[i] or not at[j]:
            continue
        ci, cj = view.acolor[i], view.acolor[j]
        side_i = set(at[i])
        for x in at[i]:
            if inst.palettes[x] != ALL_COLORS - {ci}:
                raise StageAssertionError("relevant palette disagrees with its anchor color")
        for x in at[j]:
            if inst.palettes[x] != ALL_COLORS - {cj}:
                raise StageAssertionError("relevant palette disagrees with its anchor color")
        zs = sorted(set(at[i]) | set(at[j]),
                    key=lambda x: (-len(view.outer_nbrs[x]), x))
        if ci != cj:
            (shared,) = ALL_COLORS - {ci, cj}
            base = {x: (cj if x in side_i else ci) for x in zs}
            alt = {x: shared for x in zs}
        else:
            # both anchors carry one color, so both sides share the same
            # two-color palette; split it by order
            lo, hi = sorted(ALL_COLORS - {ci})
            base = {x: lo for x in zs}
            alt = {x: hi for x in zs}

        check = ("pair_cleared", (i, j))
        kids = []

        def spawn(plan):
            child = inst.clone()
            ok = all(child.try_color(v, c) for v, c in plan)
            child.post_checks.append(check)
            kids.append(child if ok else None)

        spawn([(z, base[z]) for z in zs])
        for pos, zj in enumerate(zs):
            plan = [(z, base[z]) for z in zs[:pos]] + [(zj, alt[zj])]
            partial = any(not view.full_adj[(zj, idx)] for idx in view.adj_comps[zj])
            if partial:
                (tidx,) = view.adj_comps[zj]
                dom = view.dominators[tidx]
                for combo in product((1, 2, 3), repeat=len(dom)):
                    spawn(plan + list(zip(dom, combo)))
            else:
                spawn(plan)
        if len(kids) > 1 + 9 * len(zs):
            raise StageAssertionError("opposing-pair branching exceeded its child bound")
        with _TRACKER_LOCK:
            width = tracker["pair_width"]
            width[i] = max(width.get(i, 0), len(zs))
        inst.stats.bump("stage_opposing_pairs")
        return kids
    return None


def _normalize_rotation(inst, view):
    """Rotate the anchor order so all relevant supports sit on (0, 2).

    Once no single-anchor set and no opposing pair remains, every relevant
    vertex must touch the same two anchors, two steps apart and equally
    colored.  Returns (rotated?, (low, high, third)) where low/high are
    the shared relevant palette and third is the color of the touched
    anchors.
    """
    k = len(view.anchors)
    for x in view.relevant:
        if len(view.supports[x]) != 2:
            raise StageAssertionError("single-anchor relevant vertex survived branching")
    occupied = sorted({i for x in view.relevant for i in view.supports[x]})
    if len(occupied) != 2:
        raise StageAssertionError("relevant supports span more than one anchor pair")
    p, q = occupied
    if (q - p) % k == 2:
        r = p
    elif (p - q) % k == 2:
        r = q
    else:
        raise StageAssertionError("relevant supports are not two apart on the anchor cycle")
    if view.acolor[p] != view.acolor[q]:
        raise StageAssertionError("anchors under the relevant vertices differ in color")
    third = view.acolor[p]
    low, high = sorted(ALL_COLORS - {third})
    pal = frozenset((low, high))
    for x in view.relevant:
        if inst.palettes[x] != pal:
            raise StageAssertionError("relevant palette differs from the anchor complement")
    if r:
        inst.anchor_order = inst.anchor_order[r:] + inst.anchor_order[:r]
    return bool(r), (low, high, third)


# -- mutating stages ----------------------------------------------------------


def _reduce_relevant_edges(inst, view, frame):
    """Resolve one edge-containing component among the relevant vertices.

    Such a component is a complete join of two sides whose members share
    their outer neighborhoods.  Which of the two side colorings extend
    into the attached outer vertices decides between rejection, committing
    the sides, or deleting the attachments.
    """
    low, high, _ = frame
    g = inst.g
    for comp in connected_components(g, within=set(view.relevant)):
        if len(comp) < 2:
            continue
        sides = bipartition(g, within=comp)
        inst.stats.bump("stage_relevant_edges")
        if sides is None:
            return "rejected"
        left, right = sorted(sides[0]), sorted(sides[1])
        for p in left:
            for q in right:
                if not g.has_edge(p, q):
                    raise StageAssertionError("adjacent relevant vertices not completely joined")
        left_outer = view.outer_nbrs[left[0]]
        right_outer = view.outer_nbrs[right[0]]
        for p in left[1:]:
            if view.outer_nbrs[p] != left_outer:
                raise StageAssertionError("joined relevant side has unequal outer neighborhoods")
        for q in right[1:]:
            if view.outer_nbrs[q] != right_outer:
                raise StageAssertionError("joined relevant side has unequal outer neighborhoods")
        if not left_outer or not right_outer:
            raise StageAssertionError("joined relevant side lost its outer attachment")
        if left_outer & right_outer:
            raise StageAssertionError("joined relevant sides share an outer neighbor")
        for p in sorted(set(left) | right_outer):
            for q in sorted(set(right) | left_outer):
                if not g.has_edge(p, q):
                    raise StageAssertionError("relevant edge block is not completely joined")
        block = set(left) | set(right) | left_outer | right_outer
        for v in left_outer | right_outer:
            if not g.neighbors(v) <= block:
                raise StageAssertionError("outer attachment reaches past the relevant edge block")
        if not cograph.is_p4_free(g, block):
            raise StageAssertionError("relevant edge block is not P4-free")

        def fits(cl, cr):
            pal = {}
            for v in block:
                if v in comp:
                    pal[v] = frozenset((cl if v in sides[0] else cr,))
                else:
                    pal[v] = inst.palettes[v]
            return cograph.list3color(g, pal, within=block)

        ext_lh = fits(low, high)
        ext_hl = fits(high, low)
        if ext_lh is None and ext_hl is None:
            return "rejected"
        if ext_lh is not None and ext_hl is not None:
            drop = left_outer | right_outer
            rec = RecKeyedDrop(left[0], {
                low: {v: ext_lh[v] for v in drop},
                high: {v: ext_hl[v] for v in drop},
            })
            inst.remove_region(drop, rec)
            return "mutated"
        ext, cl, cr = (ext_lh, low, high) if ext_lh is not None else (ext_hl, high, low)
        for p in left:
            inst.commit_color(p, cl)
        for q in right:
            inst.commit_color(q, cr)
        return "mutated"
    return "clean"


def _reduce_equivalence_cuts(inst, view, frame):
    """Cut off the relevant components behind one multi-component class.

    Relevant vertices touching the same set of outer components form a
    class; a class touching two or more components is a uniform cut in
    front of the union of its relevant components.
    """
    _, _, third = frame
    groups: dict[frozenset, list] = {}
    for x in view.relevant:
        groups.setdefault(view.adj_comps[x], []).append(x)
    keys = sorted(groups, key=lambda fs: sorted(fs))
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1:]:
            if k1 & k2:
                raise StageAssertionError("component contact sets are neither equal nor disjoint")
    pick = None
    for key in keys:
        if len(key) >= 2 and (pick is None or min(groups[key]) < min(groups[pick])):
            pick = key
    if pick is None:
        return "clean"
    members = sorted(groups[pick])
    for x in members:
        for idx in pick:
            if not view.full_adj[(x, idx)]:
                raise StageAssertionError("multi-component relevant vertex is a partial neighbor")
    rel_idx = [idx for idx in sorted(pick) if view.comp_relevant[idx]]
    if not rel_idx:
        raise StageAssertionError("relevant vertex with no relevant component contact")
    region = set().union(*(view.comps[idx] for idx in rel_idx))
    inst.stats.bump("stage_equivalence_cuts")
    if len(region) == 1:
        # a lone full-palette vertex seen only by this class: the anchors'
        # color is always free for it
        (y,) = region
        if inst.palettes[y] != ALL_COLORS:
            raise StageAssertionError("singleton relevant component without a full palette")
        if not inst.g.neighbors(y) <= set(members):
            raise StageAssertionError("singleton relevant component seen outside its class")
        inst.commit_color(y, third)
        return "mutated"
    if cut_reduction(inst, members, region) == REJECTED:
        return "rejected"
    return "mutated"


def _component_cases(inst, view, frame):
    """Case ladder on the border each relevant component shows its class.

    Mutating cases return early; a component that mutates nothing yields a
    terminal wing payload for the final assembly.
    """
    low, high, third = frame
    g = inst.g
    payloads = []
    for idx in range(len(view.comps)):
        if not view.comp_relevant[idx]:
            continue
        comp = view.comps[idx]
        cls = [x for x in view.relevant if idx in view.adj_comps[x]]
        if not cls:
            raise StageAssertionError("relevant component with no adjacent relevant vertex")
        for x in cls:
            if view.adj_comps[x] != frozenset((idx,)):
                raise StageAssertionError("relevant vertex still touches several components")
        pivot = max(cls, key=lambda v: (len(view.outer_nbrs[v]), -v))
        border = sorted(view.outer_nbrs[pivot])
        inst.stats.bump("stage_component_cases")

        if len(connected_components(g, within=border)) > 1:
            inst.stats.bump("case_border_disconnected")
            if cut_reduction(inst, cls, comp) == REJECTED:
                return "rejected", None
            return "mutated", None

        if len(border) >= 3:
            status = _merge_border_sides(inst, border)
            if status == "rejected":
                return "rejected", None
            return "mutated", None

        if len(border) == 1:
            inst.stats.bump("case_border_single_vertex")
            y = border[0]
            if comp == frozenset((y,)):
                if inst.palettes[y] != ALL_COLORS:
                    raise StageAssertionError("singleton component must carry a full palette")
                if not g.neighbors(y) <= set(cls):
                    raise StageAssertionError("singleton component seen outside its class")
                inst.commit_color(y, third)
                return "mutated", None
            if cut_reduction(inst, cls, comp) == REJECTED:
                return "rejected", None
            return "mutated", None

        outcome = _single_edge_border(inst, view, frame, comp, cls, pivot, border)
        if outcome == "rejected" or outcome == "mutated":
            return outcome, None
        payloads.append(outcome)
    return "terminal", payloads


def _merge_border_sides(inst, border):
    """A border on >= 3 vertices is a complete join of two twin classes;
    keep one vertex per side."""
    g = inst.g
    sides = bipartition(g, within=border)
    if sides is None:
        # an odd cycle inside one vertex's neighborhood
        inst.stats.bump("case_border_merge")
        return "rejected"
    for p in sides[0]:
        for q in sides[1]:
            if not g.has_edge(p, q):
                raise StageAssertionError("large border is not a complete join")
    plans = []
    for side in sides:
        order = sorted(side)
        keep = order[0]
        for y in order[1:]:
            if g.neighbors(y) != g.neighbors(keep):
                raise StageAssertionError("border side vertices with distinct neighborhoods")
            if inst.palettes[y] != inst.palettes[keep]:
                raise StageAssertionError("border side vertices with distinct palettes")
            plans.append((y, keep))
    for y, keep in plans:
        inst.delete_recorded(y, RecDominated(y, keep))
    inst.stats.bump("case_border_merge")
    return "mutated"


@dataclass(frozen=True)
class _Terminal:
    comp: frozenset          # the component's vertices (star center included)
    cls: tuple               # the relevant class in front of it
    touch_low: tuple         # class members attached to a {low, third} wing
    touch_high: tuple        # class members attached to a {high, third} wing


def _single_edge_border(inst, view, frame, comp, cls, pivot, border):
    """Border is one edge: peel the component down to a star, then either
    mutate or emit the star's wing payload."""
    low, high, third = frame
    g = inst.g
    inst.stats.bump("case_border_single_edge")
    first, second = border
    center, leaf = sorted(border, key=lambda v: (-g.degree(v), v))
    if not g.has_edge(first, second):
        raise StageAssertionError("connected two-vertex border without its edge")
    for w in sorted((set(cls) | comp) - {center}):
        if not g.has_edge(center, w):
            raise StageAssertionError("border edge endpoint is not universal on its block")

    shared = sorted(common_neighbors(g, center, leaf) & comp)
    if shared:
        y = shared[0]
        if inst.palettes[y] != frozenset((low, high)):
            raise StageAssertionError("border edge twin with an unexpected palette")
        if g.neighbors(y) != {center, leaf}:
            raise StageAssertionError("border edge twin with outside contacts")
        inst.delete_recorded(y, RecDominated(y, pivot))
        inst.stats.bump("case_edge_twin_drop")
        return "mutated"

    rest = comp - {center}
    cls_set = set(cls)
    for part in connected_components(g, within=rest):
        if len(part) < 2:
            continue
        if leaf in part:
            raise StageAssertionError("border edge partner not isolated in the peeled component")
        for w in part:
            if g.neighbors(w) & cls_set:
                raise StageAssertionError("inner component with relevant contacts")
            if not g.neighbors(w) <= part | {center}:
                raise StageAssertionError("inner component leaks past the star center")
        feasible = {}
        for c in sorted(inst.palettes[center]):
            pal = {w: inst.palettes[w] - {c} for w in part}
            if any(not p for p in pal.values()):
                continue
            got = cograph.list3color(g, pal, within=part)
            if got is not None:
                feasible[c] = got
        inst.stats.bump("case_inner_component_split")
        if not feasible:
            return "rejected"
        inst.palettes[center] = frozenset(feasible)
        inst.remove_region(part, RecKeyedDrop(center, feasible))
        return "mutated"

    crowded = [w for w in sorted(rest) if len(g.neighbors(w) & cls_set) >= 2]
    if crowded:
        w = crowded[0]
        if not g.neighbors(w) <= cls_set | {center}:
            raise StageAssertionError("star point with contacts outside center and class")
        collapse_neighborhood(inst, w)
        inst.stats.bump("case_star_collapse")
        return "mutated"

    for w in sorted(rest):
        if len(g.neighbors(w) & cls_set) != 1:
            raise StageAssertionError("star point without exactly one relevant contact")
        if len(inst.palettes[w]) != 2:
            raise StageAssertionError("star point without a binary palette")
    if inst.palettes[center] != ALL_COLORS:
        raise StageAssertionError("star center lost its full palette")
    if any(inst.palettes[w] == frozenset((low, high)) for w in rest):
        # such a point and its class neighbor exhaust both non-anchor
        # colors, forcing the center onto the anchors' color
        inst.commit_color(center, third)
        inst.stats.bump("case_forced_center")
        return "mutated"

    wing_low = [w for w in sorted(rest) if inst.palettes[w] == frozenset((low, third))]
    wing_high = [w for w in sorted(rest) if inst.palettes[w] == frozenset((high, third))]
    if len(wing_low) + len(wing_high) != len(rest):
        raise StageAssertionError("star point with a palette outside both wings")
    touch_low = sorted({x for x in cls if any(g.has_edge(x, w) for w in wing_low)})
    touch_high = sorted({x for x in cls if any(g.has_edge(x, w) for w in wing_high)})
    inst.stats.bump("case_terminal_wings")
    return _Terminal(comp, tuple(sorted(cls)), tuple(touch_low), tuple(touch_high))


def _final_assembly(inst, view, frame, payloads):
    """Close the branch with one 2-SAT over all binary palettes.

    The wing payload of a terminal component admits exactly three coloring
    shapes on its class: all low, all high, or low-wing contacts high and
    high-wing contacts low.  Two clause families per payload encode that;
    ordinary edge clauses cover the rest of the graph.
    """
    g = inst.g
    covered = set()
    for pay in payloads:
        covered |= pay.comp
    region = sorted(v for v in inst.palettes if v not in covered)
    for v in region:
        if len(inst.palettes[v]) != 2:
            raise StageAssertionError("assembly region vertex without a binary palette")
    var_of = {v: i for i, v in enumerate(region)}
    sat = TwoSat(len(region))
    for v in region:
        for w in g.sorted_neighbors(v):
            if w < v or w not in var_of:
                continue
            for c in sorted(inst.palettes[v] & inst.palettes[w]):
                sat.add_clause(_palette_lit(inst, var_of, v, c, negate=True),
                               _palette_lit(inst, var_of, w, c, negate=True))
    for pay in payloads:
        # variable true = the vertex takes its smaller palette color (low)
        for p in pay.touch_low:
            for q in pay.cls:
                if q != p:
                    sat.add_clause(lit(var_of[p], False), lit(var_of[q], True))
        for p in pay.touch_high:
            for q in pay.cls:
                if q != p:
                    sat.add_clause(lit(var_of[p], True), lit(var_of[q], False))
    inst.stats.bump("stage_final_assembly")
    model = sat.solve()
    if model is None:
        return "rejected"
    solved = {}
    for v in region:
        lo, hi = sorted(inst.palettes[v])
        solved[v] = lo if model[var_of[v]] else hi
    for pay in payloads:
        pal = {w: inst.palettes[w] for w in pay.comp}
        pal.update({x: frozenset((solved[x],)) for x in pay.cls})
        got = cograph.list3color(g, pal, within=pay.comp | set(pay.cls))
        if got is None:
            raise StageAssertionError("satisfiable assembly failed to extend into a component")
        for w in pay.comp:
            solved[w] = got[w]
    for v, c in solved.items():
        if c not in inst.palettes[v]:
            raise AssertionError("assembly coloring leaves a palette")
        for w in g.neighbors(v):
            if solved.get(w, inst.colors.get(w)) == c:
                raise AssertionError("assembly coloring is monochromatic on an edge")
    inst.replay.append(RecComponent(solved))
    return "solved"


# -- plain components ---------------------------------------------------------


def _backtrack_color(g) -> dict | None:
    """Exact 3-coloring by saturation-ordered backtracking."""
    assign: dict[int, int] = {}
    verts = g.vertices()

    def free_colors(v):
        used = {assign[w] for w in g.neighbors(v) if w in assign}
        return [c for c in (1, 2, 3) if c not in used]

    def go():
        best = None
        best_key = None
        for v in verts:
            if v in assign:
                continue
            key = (len(free_colors(v)), -g.degree(v), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        if best is None:
            return True
        for c in free_colors(best):
            assign[best] = c
            if go():
                return True
            del assign[best]
        return False

    return dict(assign) if go() else None
