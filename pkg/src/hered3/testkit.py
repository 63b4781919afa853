"""Independent oracles, graph generators, and a differential fuzz driver.

Everything here is deliberately naive.  The oracles re-derive answers by
exhaustive search so the solver and detector modules can be checked
against code that shares none of their logic.
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from random import Random

from . import patterns
from .errors import GenerationError
from .graph import Graph, connected_components
from .solver import solve

ALL = (1, 2, 3)

# drafts tried / drafts accepted, per guaranteed-class generator; tests read
# this to confirm rejection sampling stays cheap
generation_stats: dict[str, int] = {}


def _tally(key: str, by: int = 1) -> None:
    generation_stats[key] = generation_stats.get(key, 0) + by

_GOLD = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def split_seed(seed: int, *path: int) -> int:
    """Derive an independent 64-bit stream seed from a root seed and path."""
    x = seed & _MASK
    for step in path:
        x = (x + _GOLD + (step & _MASK)) & _MASK
        x = ((x ^ (x >> 30)) * _MIX1) & _MASK
        x = ((x ^ (x >> 27)) * _MIX2) & _MASK
        x ^= x >> 31
    return x


# -- oracles ------------------------------------------------------------------


def verify_coloring(g: Graph, coloring: dict) -> bool:
    """Plain proper-coloring check with colors drawn from 1..3."""
    for v in g.vertices():
        if coloring.get(v) not in ALL:
            return False
        for w in g.neighbors(v):
            if coloring.get(w) == coloring.get(v):
                return False
    return True


def oracle_list3color(g: Graph, palettes: dict | None = None) -> dict | None:
    """Exhaustive list-coloring oracle: backtracking with forward checking."""
    verts = g.vertices()
    if len(verts) > 24:
        warnings.warn("oracle coloring call on a large graph", RuntimeWarning)
    if palettes is None:
        avail = {v: {1, 2, 3} for v in verts}
    else:
        avail = {v: set(palettes[v]) for v in verts}
    if any(not s for s in avail.values()):
        return None
    assign: dict[int, int] = {}

    def pick():
        best = None
        key = None
        for v in verts:
            if v in assign:
                continue
            k = (len(avail[v]), v)
            if key is None or k < key:
                best, key = v, k
        return best

    def go():
        v = pick()
        if v is None:
            return True
        for c in sorted(avail[v]):
            assign[v] = c
            pruned = []
            dead = False
            for w in g.neighbors(v):
                if w not in assign and c in avail[w]:
                    avail[w].discard(c)
                    pruned.append(w)
                    if not avail[w]:
                        dead = True
            if not dead and go():
                return True
            for w in pruned:
                avail[w].add(c)
            del assign[v]
        return False

    return dict(assign) if go() else None


def count_proper_3colorings(g: Graph) -> int:
    """Count all proper colorings with colors 1..3 by direct enumeration."""
    verts = g.vertices()
    if len(verts) > 20:
        raise ValueError("coloring count supported up to 20 vertices")
    total = 0

    def go(i):
        nonlocal total
        if i == len(verts):
            total += 1
            return
        v = verts[i]
        for c in ALL:
            if all(assign.get(w) != c for w in g.neighbors(v)):
                assign[v] = c
                go(i + 1)
                del assign[v]

    assign: dict[int, int] = {}
    go(0)
    return total


def naive_has_p4(g: Graph) -> bool:
    return any(_is_path4(g, quad) for quad in combinations(g.vertices(), 4))


def _is_path4(g, quad) -> bool:
    # exactly a path on 4 vertices: 3 edges with degree multiset 1,1,2,2
    degs = []
    edges = 0
    for v in quad:
        d = sum(1 for w in quad if w != v and g.has_edge(v, w))
        degs.append(d)
        edges += d
    return edges == 6 and sorted(degs) == [1, 1, 2, 2]


def naive_has_2p4(g: Graph) -> bool:
    verts = g.vertices()
    quads = [q for q in combinations(verts, 4) if _is_path4(g, q)]
    for i, qa in enumerate(quads):
        sa = set(qa)
        for qb in quads[i + 1:]:
            if sa & set(qb):
                continue
            if not any(g.has_edge(a, b) for a in qa for b in qb):
                return True
    return False


def naive_has_cycle(g: Graph, k: int) -> bool:
    """Induced k-cycle test by subset enumeration."""
    for sub in combinations(g.vertices(), k):
        degs = [sum(1 for w in sub if w != v and g.has_edge(v, w)) for v in sub]
        if any(d != 2 for d in degs):
            continue
        if len(connected_components(g, within=set(sub))) == 1:
            return True
    return False


def naive_has_k4(g: Graph) -> bool:
    for quad in combinations(g.vertices(), 4):
        if all(g.has_edge(a, b) for a, b in combinations(quad, 2)):
            return True
    return False


def naive_has_co_c7(g: Graph) -> bool:
    for sub in combinations(g.vertices(), 7):
        degs = [sum(1 for w in sub if w != v and not g.has_edge(v, w)) for v in sub]
        if any(d != 2 for d in degs):
            continue
        comp = Graph()
        for v in sub:
            comp.add_vertex(v)
        for a, b in combinations(sub, 2):
            if not g.has_edge(a, b):
                comp.add_edge(a, b)
        if len(connected_components(comp)) == 1:
            return True
    return False


def naive_in_class(g: Graph) -> bool:
    return not naive_has_cycle(g, 5) and not naive_has_2p4(g)


# -- generators ---------------------------------------------------------------


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    rng = Random(seed)
    g = Graph()
    ids = [g.add_vertex() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                g.add_edge(ids[i], ids[j])
    return g


def path_graph(n: int) -> Graph:
    g = Graph()
    ids = [g.add_vertex() for _ in range(n)]
    for a, b in zip(ids, ids[1:]):
        g.add_edge(a, b)
    return g


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    g = path_graph(n)
    ids = g.vertices()
    g.add_edge(ids[-1], ids[0])
    return g


def complete_graph(n: int) -> Graph:
    g = Graph()
    ids = [g.add_vertex() for _ in range(n)]
    for a, b in combinations(ids, 2):
        g.add_edge(a, b)
    return g


def petersen_graph() -> Graph:
    g = Graph()
    outer = [g.add_vertex() for _ in range(5)]
    inner = [g.add_vertex() for _ in range(5)]
    for i in range(5):
        g.add_edge(outer[i], outer[(i + 1) % 5])
        g.add_edge(inner[i], inner[(i + 2) % 5])
        g.add_edge(outer[i], inner[i])
    return g


def co_c7_graph() -> Graph:
    """Complement of the 7-cycle."""
    g = Graph()
    ids = [g.add_vertex() for _ in range(7)]
    for i in range(7):
        for j in range(i + 1, 7):
            if j - i not in (1, 6):
                g.add_edge(ids[i], ids[j])
    return g


def named_graph(name: str) -> Graph:
    name = name.lower()
    if name == "petersen":
        return petersen_graph()
    if name == "k4":
        return complete_graph(4)
    if name == "co_c7":
        return co_c7_graph()
    if name.startswith("c") and name[1:].isdigit():
        return cycle_graph(int(name[1:]))
    if name.startswith("p") and name[1:].isdigit():
        return path_graph(int(name[1:]))
    raise ValueError(f"unknown graph name: {name}")


def _anchored_base(k: int) -> tuple[Graph, list]:
    g = Graph()
    anchors = [g.add_vertex() for _ in range(k)]
    for i in range(k):
        g.add_edge(anchors[i], anchors[(i + 1) % k])
    return g, anchors


def _attach(g, anchors, supports, extra_edges=()):
    """Add one vertex adjacent to the given anchor positions and extras."""
    v = g.add_vertex()
    for i in supports:
        g.add_edge(v, anchors[i])
    for w in extra_edges:
        g.add_edge(v, w)
    return v


def _blob(g, anchors, rng, max_side=3):
    """Complete-bipartite blob fully joined to one random anchor."""
    host = anchors[rng.randrange(len(anchors))]
    left = [g.add_vertex() for _ in range(rng.randint(1, max_side))]
    right = [g.add_vertex() for _ in range(rng.randint(1, max_side))]
    for a in left:
        for b in right:
            g.add_edge(a, b)
    for v in left + right:
        g.add_edge(v, host)


def _gadget_single_anchor(g, anchors, r):
    # hub with three one-anchor arms two steps apart
    hub = g.add_vertex()
    _attach(g, anchors, ((0 + r) % 7,), (hub,))
    _attach(g, anchors, ((2 + r) % 7,), (hub,))
    _attach(g, anchors, ((4 + r) % 7,), (hub,))


def _gadget_opposing_rims(g, anchors, r):
    # one rim on each of two opposing anchor pairs, tied to a shared
    # triangle; the full join between the rims' attachment sets keeps the
    # block P4-free
    x1 = g.add_vertex()
    x2 = g.add_vertex()
    a = g.add_vertex()
    b = g.add_vertex()
    bp = g.add_vertex()
    for i in ((0 + r) % 7, (2 + r) % 7):
        g.add_edge(x1, anchors[i])
    for i in ((3 + r) % 7, (5 + r) % 7):
        g.add_edge(x2, anchors[i])
    g.add_edge(x1, a)
    g.add_edge(x2, b)
    g.add_edge(x2, bp)
    g.add_edge(a, b)
    g.add_edge(a, bp)
    g.add_edge(b, bp)


_C7_TEMPLATES = ("plain", "single_anchor", "opposing_pair", "component_cases")


def c7_gadget(seed: int, decorate: bool = True) -> Graph:
    """In-class graph built around an induced 7-cycle.

    Templates target specific solver stages; random blobs and an anchor
    rotation vary the surroundings.  Out-of-class drafts are discarded
    and retried with a fresh stream.
    """
    for attempt in range(200):
        rng = Random(split_seed(seed, attempt))
        g, anchors = _anchored_base(7)
        kind = _C7_TEMPLATES[rng.randrange(len(_C7_TEMPLATES))]
        if kind == "single_anchor":
            _gadget_single_anchor(g, anchors, rng.randrange(7))
        elif kind == "opposing_pair":
            # rotation 0 lands the two rim classes on an opposing index
            # pair of the anchored cycle
            _gadget_opposing_rims(g, anchors, 0)
        elif kind == "component_cases":
            # rotations 1..3 shift the anchoring so the surviving rim
            # class faces a lone full-palette vertex
            _gadget_opposing_rims(g, anchors, rng.randrange(1, 4))
        if kind in ("plain", "single_anchor") and decorate:
            for _ in range(rng.randrange(3)):
                if g.vertex_count() <= 14:
                    _blob(g, anchors, rng)
        _tally("c7_drafts")
        if g.vertex_count() > 20:
            continue
        if patterns.check_class(g) is None:
            _tally("c7_accepted")
            return g
    raise GenerationError("no in-class 7-cycle gadget found for this seed")


def c9_gadget(seed: int) -> Graph:
    """In-class graph around an induced 9-cycle and no induced 7-cycle."""
    for attempt in range(200):
        rng = Random(split_seed(seed, 1, attempt))
        g, anchors = _anchored_base(9)
        for _ in range(rng.randrange(4)):
            i = rng.randrange(9)
            _attach(g, anchors, (i, (i + 2) % 9))
        _tally("c9_drafts")
        if patterns.check_class(g) is not None:
            continue
        if patterns.find_induced_cycle(g, 7) is None:
            _tally("c9_accepted")
            return g
    raise GenerationError("no in-class 9-cycle gadget found for this seed")


def cograph_composite(n: int, seed: int) -> Graph:
    """Large benchmark graph: a 7-cycle spine with blob attachments.

    Grows complete-bipartite blobs, each fully joined to one spine
    vertex, until n vertices are reached.  The result is meant for the
    assume-class solver path; it is not guaranteed to stay in class.
    """
    if n < 7:
        raise ValueError("composite needs at least 7 vertices")
    rng = Random(split_seed(seed, 2))
    g, anchors = _anchored_base(7)
    host = 0
    while g.vertex_count() < n:
        room = n - g.vertex_count()
        side_a = min(rng.randint(1, 4), room)
        side_b = min(rng.randint(1, 4), max(room - side_a, 1)) if room > side_a else 0
        left = [g.add_vertex() for _ in range(side_a)]
        right = [g.add_vertex() for _ in range(side_b)]
        for a in left:
            for b in right:
                g.add_edge(a, b)
        anchor = anchors[host % 7]
        host += 1
        for v in left + right:
            g.add_edge(v, anchor)
    return g


# -- differential fuzzing -----------------------------------------------------


@dataclass
class FuzzReport:
    cases: int = 0
    in_class: int = 0
    mismatches: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    witness_checked: int = 0
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.violations

    def summary(self) -> str:
        return (f"{self.cases} cases, {self.in_class} in class, "
                f"{len(self.mismatches)} mismatches, "
                f"{len(self.violations)} invariant violations "
                f"({self.elapsed:.1f}s)")


def _case_record(g, note):
    return {"edges": list(g.edges()), "vertices": g.vertices(), "note": note}


def graph_from_record(record) -> Graph:
    """Rebuild the graph captured in a fuzz mismatch record."""
    return Graph.from_edges(record["vertices"], record["edges"])


def differential_fuzz(budget: int, seed: int, sizes=(8, 10, 12, 14, 16),
                      probabilities=(0.15, 0.25, 0.4), probe: bool = True,
                      generator=None) -> FuzzReport:
    """Run the solver against the exhaustive oracle on random graphs.

    Out-of-class samples are discarded.  With probe on, the solver also
    self-checks that neighborhood collapses never introduce a 2P4.
    """
    report = FuzzReport()
    start = time.monotonic()
    for i in range(budget):
        rng = Random(split_seed(seed, 3, i))
        if generator is None:
            n = sizes[rng.randrange(len(sizes))]
            p = probabilities[rng.randrange(len(probabilities))]
            g = erdos_renyi(n, p, split_seed(seed, 4, i))
        else:
            g = generator(split_seed(seed, 4, i))
        report.cases += 1
        if patterns.check_class(g) is not None:
            continue
        report.in_class += 1
        expected = oracle_list3color(g)
        try:
            got = solve(g, witness=True, probe_class=probe)
        except Exception as exc:  # any solver failure is a finding
            report.violations.append(
                _case_record(g, f"{type(exc).__name__}: {exc}"))
            continue
        want = "colorable" if expected is not None else "not_colorable"
        if got.decision != want:
            report.mismatches.append(
                _case_record(g, f"solver={got.decision} oracle={want}"))
            continue
        if got.decision == "colorable":
            if got.mode != "witness" or not verify_coloring(g, got.witness):
                report.mismatches.append(_case_record(g, "bad witness"))
                continue
            report.witness_checked += 1
    report.elapsed = time.monotonic() - start
    return report
