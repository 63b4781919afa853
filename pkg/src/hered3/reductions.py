"""Palette propagation rules, replay-based witness records, and the two
structural operations (cut reduction, neighborhood collapse).

An Instance owns a working graph plus per-vertex palettes.  Rules either
commit a color, shrink palettes, or delete vertices; every deletion appends
a replay record holding enough data to re-color the vertex once everything
that outlived it is colored.  Witness assembly processes the record list in
reverse order of creation.
"""

from __future__ import annotations

import threading
from typing import Iterable

from . import cograph, patterns
from .errors import ContractViolationError, StageAssertionError
from .graph import Graph, bipartition, common_neighbors, connected_components
from .twosat import TwoSat, lit

REJECTED = "rejected"
SOLVED = "solved"
CONTINUE = "continue"

ALL_COLORS = frozenset((1, 2, 3))


# -- replay records ---------------------------------------------------------


class RecColor:
    """Vertex v was committed to a color."""

    __slots__ = ("v", "color")

    def __init__(self, v: int, color: int):
        self.v = v
        self.color = color

    def apply(self, coloring: dict) -> None:
        coloring[self.v] = self.color


class RecDegree:
    """Vertex deleted because it had more palette colors than neighbors."""

    __slots__ = ("v", "palette", "neighbors")

    def __init__(self, v: int, palette: frozenset, neighbors: tuple):
        self.v = v
        self.palette = palette
        self.neighbors = neighbors

    def apply(self, coloring: dict) -> None:
        used = {coloring[u] for u in self.neighbors}
        for c in sorted(self.palette):
            if c not in used:
                coloring[self.v] = c
                return
        raise AssertionError(f"replay found no free color for {self.v}")


class RecDominated:
    """Vertex deleted because a dominating vertex can lend its color."""

    __slots__ = ("v", "dominator")

    def __init__(self, v: int, dominator: int):
        self.v = v
        self.dominator = dominator

    def apply(self, coloring: dict) -> None:
        coloring[self.v] = coloring[self.dominator]


class RecComponent:
    """A removed region whose full coloring was solved on the spot."""

    __slots__ = ("colors",)

    def __init__(self, colors: dict):
        self.colors = dict(colors)

    def apply(self, coloring: dict) -> None:
        coloring.update(self.colors)


class RecKeyedDrop:
    """A removed region whose coloring depends on one surviving vertex.

    At replay time the key vertex is already colored; its color selects
    which stored extension to merge.  Synthetic helper vertices listed in
    `drop` are scrubbed from the final coloring.
    """

    __slots__ = ("key", "extensions", "drop")

    def __init__(self, key: int, extensions: dict, drop: tuple = ()):
        self.key = key
        self.extensions = {c: dict(ext) for c, ext in extensions.items()}
        self.drop = drop

    def apply(self, coloring: dict) -> None:
        coloring.update(self.extensions[coloring[self.key]])
        for v in self.drop:
            coloring.pop(v, None)


class RecCollapse:
    """Two merged sides re-expanded: members copy their representative."""

    __slots__ = ("x_new", "y_new", "x_members", "y_members")

    def __init__(self, x_new: int, y_new: int, x_members: tuple, y_members: tuple):
        self.x_new = x_new
        self.y_new = y_new
        self.x_members = x_members
        self.y_members = y_members

    def apply(self, coloring: dict) -> None:
        cx = coloring.pop(self.x_new)
        cy = coloring.pop(self.y_new)
        for v in self.x_members:
            coloring[v] = cx
        for v in self.y_members:
            coloring[v] = cy


# -- stats ------------------------------------------------------------------


class Stats:
    """Flat counter bag shared by all branch instances of one solve call."""

    def __init__(self) -> None:
        self.counters: dict[str, int] = {}
        self.lock = threading.Lock()

    def bump(self, key: str, by: int = 1) -> None:
        with self.lock:
            self.counters[key] = self.counters.get(key, 0) + by

    def get(self, key: str) -> int:
        return self.counters.get(key, 0)

    def reductions_total(self) -> int:
        return sum(n for k, n in self.counters.items() if k.startswith("rule_") or k.startswith("op_"))

    def to_dict(self) -> dict:
        return dict(sorted(self.counters.items()))


# -- instance ---------------------------------------------------------------


class Instance:
    """One branch of the search: working graph, palettes, replay log.

    palettes holds exactly the live uncolored vertices.  colors holds every
    committed color; a colored vertex stays in the graph only while it is
    anchored (member of `anchored`).
    """

    def __init__(self, g: Graph, stats: Stats, probe_class: bool = False):
        self.g = g
        self.palettes: dict[int, frozenset] = {v: ALL_COLORS for v in g.vertices()}
        self.colors: dict[int, int] = {}
        self.anchored: set[int] = set()
        self.replay: list = []
        self.synthetic: set[int] = set()
        self.stats = stats
        self.probe_class = probe_class
        # branch bookkeeping used by the anchored pipeline
        self.anchor_order: tuple = ()
        self.post_checks: list = []

    def clone(self) -> "Instance":
        other = Instance.__new__(Instance)
        other.g = self.g.copy()
        other.palettes = dict(self.palettes)
        other.colors = dict(self.colors)
        other.anchored = set(self.anchored)
        other.replay = list(self.replay)
        other.synthetic = set(self.synthetic)
        other.stats = self.stats
        other.probe_class = self.probe_class
        other.anchor_order = self.anchor_order
        other.post_checks = list(self.post_checks)
        return other

    def eff_palette(self, v: int) -> frozenset:
        if v in self.colors:
            return frozenset((self.colors[v],))
        return self.palettes[v]

    def metric(self) -> tuple[int, int]:
        return (self.g.vertex_count(), sum(len(p) for p in self.palettes.values()))

    def commit_color(self, v: int, color: int, keep: bool = False) -> None:
        """Color v, record it, propagate to neighbor palettes.

        Non-anchored vertices leave the graph; anchored ones stay so later
        structural stages can see their adjacency.
        """
        if v not in self.palettes:
            raise ContractViolationError(f"vertex {v} is not live and uncolored")
        if color not in self.palettes[v]:
            raise ContractViolationError(f"color {color} not in palette of {v}")
        for w in self.g.neighbors(v):
            if w in self.colors and self.colors[w] == color:
                raise AssertionError(f"coloring {v} with {color} clashes with {w}")
        self.colors[v] = color
        del self.palettes[v]
        self.replay.append(RecColor(v, color))
        for w in self.g.neighbors(v):
            if w in self.palettes and color in self.palettes[w]:
                self.palettes[w] = self.palettes[w] - {color}
        if keep:
            self.anchored.add(v)
        else:
            self.g.remove_vertex(v)

    def try_color(self, v: int, color: int) -> bool:
        """Commit a planned color; False when the plan is already infeasible."""
        if v not in self.palettes or color not in self.palettes[v]:
            return False
        self.commit_color(v, color)
        return True

    def delete_recorded(self, v: int, record) -> None:
        if v in self.colors:
            raise ContractViolationError(f"cannot delete colored vertex {v}")
        del self.palettes[v]
        self.g.remove_vertex(v)
        self.replay.append(record)

    def remove_region(self, verts: Iterable[int], record=None) -> None:
        for v in sorted(verts):
            self.palettes.pop(v, None)
            self.anchored.discard(v)
            self.g.remove_vertex(v)
        if record is not None:
            self.replay.append(record)

    def fresh_synthetic(self) -> int:
        v = self.g.add_vertex()
        self.synthetic.add(v)
        return v

    def assemble_witness(self, original_vertices: Iterable[int]) -> dict:
        """Run the replay log backwards into a full coloring.

        Committed colors seed the map up front: a record may consult a vertex
        that was colored before the record fired, which reverse order alone
        would visit too late.
        """
        coloring: dict[int, int] = dict(self.colors)
        for rec in reversed(self.replay):
            rec.apply(coloring)
        out = {}
        for v in original_vertices:
            if v not in coloring:
                raise AssertionError(f"witness replay missed vertex {v}")
            out[v] = coloring[v]
        return out


# -- basic reduction rules --------------------------------------------------

_FIRED = "fired"


def run_fixpoint(inst: Instance) -> str:
    """Apply the seven basic rules by priority until none fires.

    Every firing pass strictly shrinks (live vertices, total palette size)
    lexicographically; asserted to guarantee termination.
    """
    while True:
        before = inst.metric()
        out = _one_pass(inst)
        if out == _FIRED:
            if not inst.metric() < before:
                raise AssertionError("reduction pass did not shrink the instance")
            continue
        return out


def _one_pass(inst: Instance) -> str:
    if not inst.palettes:
        if inst.g.vertex_count():
            # only anchored vertices left; clear them after a final check
            _assert_colored_edges_proper(inst, set(inst.g.vertices()))
            inst.remove_region(inst.g.vertices())
        return SOLVED

    # rule 1: singleton palette commits its color
    singles = sorted(v for v, p in inst.palettes.items() if len(p) == 1)
    if singles:
        v = singles[0]
        (c,) = inst.palettes[v]
        inst.commit_color(v, c)
        inst.stats.bump("rule_singleton_color")
        return _FIRED

    # rule 2: empty palette rejects the branch
    if any(not p for p in inst.palettes.values()):
        inst.stats.bump("rule_empty_palette")
        return REJECTED

    # rule 3: more colors than neighbors -> vertex always colorable later
    if _prune_low_degree(inst):
        return _FIRED

    # rule 4: diamond consistency
    verdict = _diamond_pass(inst)
    if verdict is not None:
        return verdict

    # rule 5: neighborhood domination
    if _domination_pass(inst):
        return _FIRED

    comps = connected_components(inst.g)

    # rule 6: component with all palettes of size 2 -> 2-SAT
    for comp in comps:
        verdict = _two_sat_component(inst, comp)
        if verdict is not None:
            return verdict

    # rule 7: P4-free component -> direct list coloring
    for comp in comps:
        verdict = _cograph_component(inst, comp)
        if verdict is not None:
            return verdict

    return CONTINUE


def _prune_low_degree(inst: Instance) -> bool:
    fired = False
    while True:
        cands = sorted(v for v in inst.palettes if len(inst.palettes[v]) > inst.g.degree(v))
        if not cands:
            return fired
        for v in cands:
            if v not in inst.palettes:
                continue
            if len(inst.palettes[v]) <= inst.g.degree(v):
                continue
            rec = RecDegree(v, inst.palettes[v], tuple(sorted(inst.g.neighbors(v))))
            inst.delete_recorded(v, rec)
            inst.stats.bump("rule_degree_prune")
            fired = True


def _diamond_pass(inst: Instance):
    """One palette-intersection update on a diamond, or a rejection.

    Candidate pairs are the nonadjacent common neighbors of each edge; in
    any 3-coloring the two edge endpoints use two colors, so both common
    neighbors are forced to the remaining one and their palettes must agree.
    """
    if not inst.colors and all(len(p) == 3 for p in inst.palettes.values()):
        return None  # nothing is constrained yet, no pair can differ
    for u, w in inst.g.edges():
        shared = sorted(common_neighbors(inst.g, u, w))
        for i in range(len(shared)):
            y = shared[i]
            py = inst.eff_palette(y)
            for j in range(i + 1, len(shared)):
                yp = shared[j]
                if inst.g.has_edge(y, yp):
                    continue
                pyp = inst.eff_palette(yp)
                if py == pyp:
                    continue
                inter = py & pyp
                if not inter:
                    inst.stats.bump("rule_diamond")
                    return REJECTED
                for z in (y, yp):
                    if z in inst.palettes and inst.palettes[z] != inter:
                        inst.palettes[z] = inter
                inst.stats.bump("rule_diamond")
                return _FIRED
    return None


def _domination_pass(inst: Instance) -> bool:
    """Delete vertices whose neighborhood and palette are dominated."""
    fired = False
    for y in sorted(inst.palettes):
        if not inst.g.has_vertex(y):
            continue
        ny = inst.g.neighbors(y)
        if not ny:
            continue
        gate = min(ny, key=lambda x: (inst.g.degree(x), x))
        for yp in inst.g.sorted_neighbors(gate):
            if yp == y:
                continue
            if not inst.eff_palette(yp) <= inst.palettes[y]:
                continue
            if not ny <= inst.g.neighbors(yp):
                continue
            inst.delete_recorded(y, RecDominated(y, yp))
            inst.stats.bump("rule_domination")
            fired = True
            break
    return fired


def _assert_colored_edges_proper(inst: Instance, comp: set) -> None:
    for v in comp:
        cv = inst.colors.get(v)
        if cv is None:
            continue
        for w in inst.g.neighbors(v):
            if w in inst.colors and inst.colors[w] == cv:
                raise AssertionError(f"colored edge {v},{w} is monochromatic")
            if w in inst.palettes and cv in inst.palettes[w]:
                raise AssertionError(f"palette of {w} kept its colored neighbor's color")


def _two_sat_component(inst: Instance, comp: set):
    unc = sorted(v for v in comp if v in inst.palettes)
    if not unc:
        _assert_colored_edges_proper(inst, comp)
        inst.remove_region(comp)
        inst.stats.bump("rule_two_sat_component")
        return _FIRED
    if any(len(inst.palettes[v]) != 2 for v in unc):
        return None
    _assert_colored_edges_proper(inst, comp)
    var_of = {v: i for i, v in enumerate(unc)}
    sat = TwoSat(len(unc))
    for v in unc:
        for w in inst.g.sorted_neighbors(v):
            if w < v or w not in inst.palettes:
                continue
            for c in sorted(inst.palettes[v] & inst.palettes[w]):
                sat.add_clause(_palette_lit(inst, var_of, v, c, negate=True),
                               _palette_lit(inst, var_of, w, c, negate=True))
    model = sat.solve()
    inst.stats.bump("rule_two_sat_component")
    if model is None:
        return REJECTED
    solved = {}
    for v in unc:
        a, b = sorted(inst.palettes[v])
        solved[v] = a if model[var_of[v]] else b
    _verify_region_coloring(inst, comp, solved)
    inst.remove_region(comp, RecComponent(solved))
    return _FIRED


def _palette_lit(inst: Instance, var_of: dict, v: int, color: int, negate: bool) -> int:
    """Literal for "v takes `color`"; variable true means the smaller color."""
    a, b = sorted(inst.palettes[v])
    positive = color == a
    if negate:
        positive = not positive
    return lit(var_of[v], positive)


def _cograph_component(inst: Instance, comp: set):
    root, bad = cograph.cotree_or_failure(inst.g, comp)
    if bad is not None:
        return None
    eff = {v: inst.eff_palette(v) for v in comp}
    solved = cograph.list3color(inst.g, eff, within=comp)
    inst.stats.bump("rule_cograph_component")
    if solved is None:
        return REJECTED
    solved = {v: c for v, c in solved.items() if v in inst.palettes}
    _verify_region_coloring(inst, comp, solved)
    inst.remove_region(comp, RecComponent(solved) if solved else None)
    return _FIRED


def _verify_region_coloring(inst: Instance, region: set, solved: dict) -> None:
    for v, c in solved.items():
        if c not in inst.palettes[v]:
            raise AssertionError(f"solved color for {v} leaves its palette")
        for w in inst.g.neighbors(v):
            cw = solved.get(w, inst.colors.get(w))
            if cw == c:
                raise AssertionError(f"solved coloring monochromatic on {v},{w}")


# -- cut reduction ----------------------------------------------------------


def cut_reduction(inst: Instance, cut: Iterable[int], region: Iterable[int]) -> str:
    """Replace a P4-free region behind a uniform two-palette cut.

    The cut X is an independent set, every cut vertex sees the same
    nonempty subset of the region C, and C has no neighbors outside X and
    itself.  Tests which uniform/mixed colorings of X extend into C; the
    region is then deleted, stubbed by a placeholder, or the branch is
    rejected.  Returns _FIRED or REJECTED.
    """
    x_ids = sorted(cut)
    c_ids = set(region)
    _check_cut_contract(inst, x_ids, c_ids)
    pal = inst.palettes[x_ids[0]]
    a, b = sorted(pal)
    (t,) = ALL_COLORS - pal
    inst.stats.bump("op_cut_reduction")

    def extend(clamp: dict):
        eff = {v: inst.eff_palette(v) for v in c_ids}
        eff.update({x: frozenset((c,)) for x, c in clamp.items()})
        sol = cograph.list3color(inst.g, eff, within=c_ids | set(x_ids))
        if sol is None:
            return None
        return {v: sol[v] for v in c_ids}

    if len(x_ids) >= 2:
        mixed = {x: b for x in x_ids}
        mixed[x_ids[0]] = a
        ext = extend(mixed)
        if ext is not None:
            border = inst.g.neighbors(x_ids[0]) & c_ids
            for v in border:
                if ext[v] != t:
                    raise StageAssertionError("mixed cut extension not third-colored on the border")
            inst.remove_region(c_ids, RecComponent(ext))
            return _FIRED

    ext_a = extend({x: a for x in x_ids})
    ext_b = extend({x: b for x in x_ids})
    if ext_a is None and ext_b is None:
        return REJECTED
    if ext_a is not None and ext_b is not None:
        stub = inst.fresh_synthetic()
        inst.palettes[stub] = pal
        for x in x_ids:
            inst.g.add_edge(stub, x)
        inst.remove_region(c_ids, RecKeyedDrop(x_ids[0], {a: ext_a, b: ext_b}, drop=(stub,)))
        return _FIRED
    ext, forced = (ext_a, a) if ext_a is not None else (ext_b, b)
    inst.remove_region(c_ids, RecComponent(ext))
    for x in x_ids:
        inst.commit_color(x, forced)
    return _FIRED


def _check_cut_contract(inst: Instance, x_ids: list, c_ids: set) -> None:
    if len(c_ids) < 2:
        raise ContractViolationError("cut region must have at least 2 vertices")
    if not x_ids:
        raise ContractViolationError("empty cut")
    if c_ids & set(x_ids):
        raise ContractViolationError("cut and region overlap")
    for v in list(c_ids) + x_ids:
        if not inst.g.has_vertex(v):
            raise ContractViolationError(f"vertex {v} not live")
    for v in c_ids:
        if v not in inst.palettes:
            raise ContractViolationError("region contains a colored vertex")
    pal = inst.palettes.get(x_ids[0])
    for x in x_ids:
        if inst.palettes.get(x) != pal or pal is None or len(pal) != 2:
            raise ContractViolationError("cut vertices need one shared palette of size 2")
    for i, x in enumerate(x_ids):
        for x2 in x_ids[i + 1:]:
            if inst.g.has_edge(x, x2):
                raise ContractViolationError("cut is not independent")
    border = inst.g.neighbors(x_ids[0]) & c_ids
    if not border:
        raise ContractViolationError("cut does not touch the region")
    for x in x_ids[1:]:
        if inst.g.neighbors(x) & c_ids != border:
            raise ContractViolationError("cut vertices see different region parts")
    allowed = c_ids | set(x_ids)
    for v in c_ids:
        if not inst.g.neighbors(v) <= allowed:
            raise ContractViolationError("region has neighbors outside the cut")
    if not cograph.is_p4_free(inst.g, c_ids | set(x_ids)):
        raise ContractViolationError("region plus cut is not P4-free")


# -- neighborhood collapse --------------------------------------------------


def collapse_neighborhood(inst: Instance, v: int) -> tuple[int, int]:
    """Merge both sides of v's connected bipartite neighborhood.

    Each side becomes one fresh representative vertex carrying the side's
    shared palette and outside adjacency.  Returns the two representative
    ids (side containing the smallest neighbor first).
    """
    if v not in inst.palettes:
        raise ContractViolationError(f"collapse target {v} not live and uncolored")
    nbrs = set(inst.g.neighbors(v))
    if len(nbrs) < 2:
        raise ContractViolationError("neighborhood too small to collapse")
    if any(w not in inst.palettes for w in nbrs):
        raise ContractViolationError("neighborhood contains colored vertices")
    if len(connected_components(inst.g, within=nbrs)) != 1:
        raise ContractViolationError("neighborhood not connected")
    sides = bipartition(inst.g, within=nbrs)
    if sides is None:
        raise ContractViolationError("neighborhood not bipartite")
    side_x, side_y = sides
    if not side_x or not side_y:
        raise ContractViolationError("collapse needs two nonempty sides")
    pal_x = _shared_palette(inst, side_x)
    pal_y = _shared_palette(inst, side_y)

    was_clean = None
    if inst.probe_class:
        was_clean = patterns.find_induced_2p4(inst.g) is None

    ext_x = _outside_adjacency(inst, side_x, nbrs | {v})
    ext_y = _outside_adjacency(inst, side_y, nbrs | {v})
    x_new = inst.fresh_synthetic()
    y_new = inst.fresh_synthetic()
    inst.palettes[x_new] = pal_x
    inst.palettes[y_new] = pal_y
    inst.g.add_edge(x_new, y_new)
    inst.g.add_edge(x_new, v)
    inst.g.add_edge(y_new, v)
    for w in sorted(ext_x):
        inst.g.add_edge(x_new, w)
    for w in sorted(ext_y):
        inst.g.add_edge(y_new, w)
    rec = RecCollapse(x_new, y_new, tuple(sorted(side_x)), tuple(sorted(side_y)))
    inst.remove_region(side_x | side_y, rec)
    inst.stats.bump("op_collapse")

    if inst.probe_class and was_clean:
        if patterns.find_induced_2p4(inst.g) is not None:
            raise StageAssertionError("neighborhood collapse introduced a 2P4")
    return x_new, y_new


def _shared_palette(inst: Instance, side: set) -> frozenset:
    pals = {inst.palettes[w] for w in side}
    if len(pals) != 1:
        raise ContractViolationError("collapse side palettes differ")
    return pals.pop()


def _outside_adjacency(inst: Instance, side: set, exclude: set) -> set:
    out: set = set()
    for w in side:
        out |= inst.g.neighbors(w)
    return out - exclude
