"""Acceptance gates: the release checklist, one test per gate.

Every gate re-derives its expected values from an independent oracle or a
closed form, runs at the full stated population, and prints a single PASS
line with the measured numbers.  A failing gate is a plain test failure.
"""

import math
import time
from functools import lru_cache
from itertools import combinations
from random import Random

from hered3 import cograph
from hered3.graph import Graph
from hered3.patterns import check_class
from hered3.reductions import (
    REJECTED,
    SOLVED,
    Instance,
    Stats,
    _one_pass,
    collapse_neighborhood,
)
from hered3.solver import solve
from hered3.testkit import (
    c7_gadget,
    c9_gadget,
    cograph_composite,
    count_proper_3colorings,
    cycle_graph,
    differential_fuzz,
    erdos_renyi,
    named_graph,
    naive_has_2p4,
    oracle_list3color,
    split_seed,
    verify_coloring,
)
from hered3.twosat import TwoSat


# -- gate 1: exhaustive small-graph equivalence -------------------------------

def test_exhaustive_small_graphs_match_oracle():
    start = time.monotonic()
    total = members = 0
    for n in range(7):
        pairs = list(combinations(range(1, n + 1), 2))
        for mask in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
            g = Graph.from_edges(range(1, n + 1), edges)
            total += 1
            if check_class(g) is not None:
                continue
            members += 1
            rep = solve(g, witness=True, assume_class=True)
            want = oracle_list3color(g)
            assert (rep.decision == "colorable") == (want is not None), \
                f"n={n} mask={mask}"
            if rep.witness is not None:
                assert verify_coloring(g, rep.witness), f"n={n} mask={mask}"
    elapsed = time.monotonic() - start
    assert total == 33868
    assert elapsed < 300
    print(f"PASS exhaustive small-n: {members}/{total} class members "
          f"agree with the oracle in {elapsed:.1f}s")


# -- gate 2: randomized equivalence at scale ----------------------------------

def test_randomized_class_equivalence_at_scale():
    rep = differential_fuzz(10_000, seed=416)
    assert rep.cases == 10_000
    assert rep.mismatches == []
    assert rep.violations == []
    assert rep.in_class >= 1_000
    assert rep.witness_checked > 0
    assert rep.elapsed < 600
    print(f"PASS randomized equivalence: {rep.summary()}, "
          f"{rep.witness_checked} witnesses checked")


# -- gate 3: anchored-pipeline coverage ----------------------------------------

def test_anchored_gadgets_cover_every_stage_family():
    stage_keys = ("stage_single_anchor", "stage_opposing_pairs",
                  "stage_component_cases")
    totals = dict.fromkeys(stage_keys, 0)
    start = time.monotonic()
    for seed in range(1000):
        g = c7_gadget(seed)
        assert g.vertex_count() <= 20, f"c7 seed {seed} oversized"
        rep = solve(g, witness=True)
        want = oracle_list3color(g)
        assert (rep.decision == "colorable") == (want is not None), f"c7 seed {seed}"
        if rep.witness is not None:
            assert verify_coloring(g, rep.witness), f"c7 seed {seed}"
        for k in stage_keys:
            totals[k] += rep.stats.get(k, 0)
    for seed in range(1000):
        g = c9_gadget(seed)
        rep = solve(g, witness=True)
        want = oracle_list3color(g)
        assert (rep.decision == "colorable") == (want is not None), f"c9 seed {seed}"
        if rep.witness is not None:
            assert verify_coloring(g, rep.witness), f"c9 seed {seed}"
    for k in stage_keys:
        assert totals[k] >= 1, f"{k} never fired across 1000 directed instances"
    elapsed = time.monotonic() - start
    print(f"PASS anchored coverage: 1000+1000 gadgets, zero mismatches, "
          f"stage firings {totals} in {elapsed:.1f}s")


# -- gate 4: exact anchor enumeration counts ------------------------------------

def test_anchor_enumeration_counts_are_exact():
    want7 = count_proper_3colorings(cycle_graph(7))
    want9 = count_proper_3colorings(cycle_graph(9))
    got7 = solve(cycle_graph(7)).stats["anchor_colorings"]
    got9 = solve(cycle_graph(9)).stats["anchor_colorings"]
    assert got7 == want7 == 126
    assert got9 == want9 == 510
    print(f"PASS anchor counts: 7-cycle enumerates {got7}, 9-cycle {got9}")


# -- gate 5: collapse safety -----------------------------------------------------

def _random_collapse_setup(rng):
    """A center whose neighborhood is a random even cycle or path, with
    uniform side palettes and a few outside attachments.  Returns None
    when the draft falls outside the supported class."""
    g = Graph()
    center = g.add_vertex()
    k = rng.choice((2, 3, 4, 5, 6))
    ring = rng.random() < 0.3 and k in (4, 6)
    nbrs = [g.add_vertex() for _ in range(k)]
    for v in nbrs:
        g.add_edge(center, v)
    for a, b in zip(nbrs, nbrs[1:]):
        g.add_edge(a, b)
    if ring:
        g.add_edge(nbrs[-1], nbrs[0])
    outside = []
    for _ in range(rng.randrange(4)):
        v = g.add_vertex()
        hosts = [w for w in nbrs + outside if rng.random() < 0.4]
        for w in hosts:
            g.add_edge(v, w)
        outside.append(v)
    if check_class(g) is not None:
        return None
    inst = Instance(g, Stats())
    sides = ([nbrs[0::2], nbrs[1::2]])
    for side in sides:
        pal = frozenset(rng.sample((1, 2, 3), rng.randint(1, 3)))
        for v in side:
            inst.palettes[v] = pal
    return inst, center


def test_collapse_never_introduces_the_forbidden_pair():
    rep = differential_fuzz(2000, seed=77)
    assert rep.violations == [], "self-probe flagged a collapse during fuzzing"
    assert rep.ok

    rng = Random(515)
    exercised = 0
    attempts = 0
    while exercised < 300:
        attempts += 1
        assert attempts < 5000, "collapse sampler starved"
        setup = _random_collapse_setup(rng)
        if setup is None:
            continue
        inst, center = setup
        assert not naive_has_2p4(inst.g)
        collapse_neighborhood(inst, center)
        assert not naive_has_2p4(inst.g), "collapse introduced a forbidden pair"
        exercised += 1
    print(f"PASS collapse safety: fuzz self-probe clean over 2000 cases, "
          f"{exercised} direct collapses verified by the naive detector")


# -- gate 6: single reduction steps preserve colorability -------------------------

def _live_feasible(inst):
    live = sorted(inst.palettes)
    sub = Graph.from_edges(live, [(a, b) for a, b in inst.g.edges()
                                  if a in inst.palettes and b in inst.palettes])
    return oracle_list3color(sub, {v: set(inst.palettes[v]) for v in live}) is not None


def test_reduction_steps_preserve_colorability():
    rng = Random(606)
    steps = instances = 0
    start = time.monotonic()
    while steps < 1000:
        instances += 1
        assert instances < 3000, "reduction sampler starved"
        n = rng.randint(4, 12)
        g = erdos_renyi(n, rng.choice((0.2, 0.35, 0.5)), rng.getrandbits(32))
        inst = Instance(g, Stats())
        for v in list(inst.palettes):
            if rng.random() < 0.4:
                inst.palettes[v] = frozenset(
                    rng.sample((1, 2, 3), rng.randint(1, 3)))
        before = _live_feasible(inst)
        while True:
            out = _one_pass(inst)
            if out == REJECTED:
                assert not before, "a reduction pass rejected a colorable instance"
                break
            if out == SOLVED:
                assert before, "a reduction pass solved an uncolorable instance"
                break
            if out != "fired":
                break
            steps += 1
            after = _live_feasible(inst)
            assert after == before, "a reduction step changed colorability"
            before = after
    elapsed = time.monotonic() - start
    print(f"PASS reduction soundness: {steps} fired steps over {instances} "
          f"instances, colorability preserved, {elapsed:.1f}s")


# -- gate 7: 2-SAT against exhaustive enumeration ---------------------------------

@lru_cache(maxsize=None)
def _assignment_mask(nvars, var):
    """Bitset over all 2^nvars assignments where `var` is true."""
    block = (1 << (1 << var)) - 1
    period = 1 << (var + 1)
    m = 0
    for start in range(1 << var, 1 << nvars, period):
        m |= block << start
    return m


def test_two_sat_matches_exhaustive_enumeration():
    rng = Random(707)
    sat = unsat = 0
    start = time.monotonic()
    for case in range(10_000):
        nvars = rng.randint(1, 12)
        full = (1 << (1 << nvars)) - 1
        clauses = []
        # a third of the cases get dense formulas so both outcomes show up
        top = 2 * nvars if rng.random() < 0.67 else 4 * nvars
        for _ in range(rng.randint(0, top)):
            a = (rng.randrange(nvars), rng.random() < 0.5)
            b = (rng.randrange(nvars), rng.random() < 0.5)
            clauses.append((a, b))

        surviving = full
        for (va, pa), (vb, pb) in clauses:
            ma = _assignment_mask(nvars, va)
            mb = _assignment_mask(nvars, vb)
            surviving &= (ma if pa else full ^ ma) | (mb if pb else full ^ mb)

        ts = TwoSat(nvars)
        for (va, pa), (vb, pb) in clauses:
            ts.add_clause(2 * va + (0 if pa else 1), 2 * vb + (0 if pb else 1))
        model = ts.solve()
        assert (model is not None) == (surviving != 0), f"case {case}"
        if model is None:
            unsat += 1
            continue
        sat += 1
        for (va, pa), (vb, pb) in clauses:
            assert (model[va] == pa) or (model[vb] == pb), f"case {case}"
    assert sat > 1000 and unsat > 1000
    elapsed = time.monotonic() - start
    print(f"PASS 2-SAT: 10000 formulas ({sat} sat, {unsat} unsat) "
          f"match enumeration in {elapsed:.1f}s")


# -- gate 8: cograph coloring against brute force ----------------------------------

def _random_cograph(rng, size):
    g = Graph()
    blocks = [[g.add_vertex()] for _ in range(size)]
    while len(blocks) > 1:
        a = blocks.pop(rng.randrange(len(blocks)))
        b = blocks.pop(rng.randrange(len(blocks)))
        if rng.random() < 0.5:
            for u in a:
                for w in b:
                    g.add_edge(u, w)
        blocks.append(a + b)
    return g


def test_cograph_coloring_matches_brute_force():
    rng = Random(808)
    sat = unsat = 0
    for case in range(1000):
        g = _random_cograph(rng, rng.randint(1, 8))
        palettes = {v: frozenset(rng.sample((1, 2, 3), rng.randint(1, 3)))
                    for v in g.vertices()}
        got = cograph.list3color(g, palettes)
        want = oracle_list3color(g, palettes)
        assert (got is None) == (want is None), f"case {case}"
        if got is None:
            unsat += 1
            continue
        sat += 1
        assert verify_coloring(g, got), f"case {case}"
        assert all(got[v] in palettes[v] for v in g.vertices()), f"case {case}"
    assert sat > 100 and unsat > 100
    print(f"PASS cograph engine: 1000 pairs ({sat} colorable, {unsat} not) "
          f"match brute force")


# -- gate 9: scaling on large guaranteed instances ----------------------------------

def test_scaling_stays_polynomial_on_large_instances():
    times = []
    for n in (200, 500, 1000):
        g = cograph_composite(n, seed=3)
        best = None
        for _ in range(2):
            t0 = time.perf_counter()
            rep = solve(g, assume_class=True)
            dt = time.perf_counter() - t0
            assert rep.decision == "colorable"
            best = dt if best is None else min(best, dt)
        assert best < 60, f"n={n} took {best:.1f}s"
        times.append(best)
    assert times[0] <= times[1] <= times[2], f"runtime not monotone: {times}"
    slope = (math.log(times[2]) - math.log(times[0])) / (math.log(1000) - math.log(200))
    assert slope < 3, f"log-log slope {slope:.2f}"
    print(f"PASS scaling: n=200/500/1000 in "
          f"{times[0]:.2f}/{times[1]:.2f}/{times[2]:.2f}s, slope {slope:.2f}")


# -- gate 10: fixed verdicts on named graphs -----------------------------------------

def test_fixed_verdicts_on_named_graphs():
    for name in ("k4", "co_c7"):
        g = named_graph(name)
        assert oracle_list3color(g) is None
        assert solve(g).decision == "not_colorable", name
    for name, waive in (("c5", True), ("c7", False), ("c9", False),
                        ("petersen", True)):
        g = named_graph(name)
        assert oracle_list3color(g) is not None
        rep = solve(g, witness=True, assume_class=waive)
        assert rep.decision == "colorable", name
        assert verify_coloring(g, rep.witness), name
    print("PASS fixed verdicts: k4 and co_c7 rejected; "
          "c5, c7, c9, petersen colored and verified")
