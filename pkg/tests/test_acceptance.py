"""The twelve acceptance criteria, one test (or a small group) per criterion.

Each test carries ``@pytest.mark.acceptance(number, title)``; the conftest hook
prints a PASS/FAIL line per criterion at the end of the run.
"""
import itertools
import math
import time
from fractions import Fraction

import pytest

from chiforb import cli, coloring, digraph, generators, patterns, verify
from chiforb.errors import StructureViolation
from chiforb.patterns import C3, PPLUS21, PPLUS111, S11, TT3, PatternKind, find_induced, iter_holes

import oracles

S22 = PatternKind.star(2, 2)
C31 = patterns.parse_pattern("c31")
C22 = patterns.parse_pattern("c22")


def corpus(count, forbid, max_n, seed, bases=(None,), densities=(0.3, 0.5, 0.7)):
    """Seeded instances: random-then-repair and grown samples alternate."""
    rng = generators.SplitMix64(seed)
    for i in range(count):
        sub = rng.next_u64()
        base = bases[i % len(bases)]
        low = base.n if base is not None else 3
        n = low + rng.below(max_n - low + 1)
        p = densities[i % len(densities)]
        if base is None and i % 2:
            yield generators.random_f_free(n, p, sub, forbid, max_tries=10_000)
        else:
            yield generators.grow_f_free(n, p, sub, forbid, max_tries=10_000, base=base)


# 1 -----------------------------------------------------------------------------

@pytest.mark.acceptance(1, "two-pentagon gadget: 10 vertices, 25 arcs, {TT3,P+(2,1)}-free, chi = 4")
def test_gadget_exactness():
    start = time.perf_counter()
    g = generators.two_pentagon_gadget()
    assert (g.n, g.m) == (10, 25)
    assert find_induced(g, TT3) is None
    assert find_induced(g, PPLUS21) is None
    assert coloring.chi_exact(g)[0] == 4
    assert time.perf_counter() - start < 1.0
    # independent confirmation
    assert oracles.chromatic_number(g) == 4
    assert not oracles.induced_embeddings(g, TT3.graph)
    assert not oracles.induced_embeddings(g, PPLUS21.graph)


# 2 -----------------------------------------------------------------------------

_TT3P21_BASES = (None, generators.directed_cycle(5), generators.directed_cycle(7),
                 generators.two_pentagon_gadget(), generators.directed_cycle(9), None)


@pytest.mark.acceptance(2, "(TT3,P+(2,1))-free: <= 4 colours, <= 3 with an odd hole >= 7")
def test_tt3_p21_theorem():
    start = time.perf_counter()
    seen_long_hole = seen_four = 0
    count = 0
    for g in corpus(600, [TT3, PPLUS21], 14, seed=2, bases=_TT3P21_BASES):
        count += 1
        assert g.n <= 14
        try:
            col = coloring.color_tt3_p21(g)
        except StructureViolation as exc:  # pragma: no cover - a failure is the point
            pytest.fail(f"structure violation on {g.to_json()}: {exc}")
        assert col.is_valid(g)
        assert col.num_colors <= 4
        seen_four += col.num_colors == 4
        for comp in digraph.weak_components(g):
            sub, _ = g.induced(comp)
            if next(iter_holes(sub, min_length=7), None) is not None:
                seen_long_hole += 1
                assert len({col.colors[v] for v in comp}) <= 3
    assert count >= 500
    # the corpus must actually exercise both regimes
    assert seen_long_hole >= 50 and seen_four >= 50
    assert time.perf_counter() - start < 300


# 3 -----------------------------------------------------------------------------

@pytest.mark.acceptance(3, "(C3,TT3,P+(2,1))-free: <= 3 colours, directed odd cycles need 3")
def test_c3_tt3_p21_theorem():
    start = time.perf_counter()
    bases = (None, generators.directed_cycle(5), generators.directed_cycle(7), None)
    count = 0
    for g in corpus(600, [C3, TT3, PPLUS21], 14, seed=3, bases=bases):
        count += 1
        assert g.n <= 14
        col = coloring.color_c3_tt3_p21(g)
        assert col.is_valid(g)
        assert col.num_colors <= 3
    assert count >= 500
    for q in (5, 7, 9, 11, 13):
        col = coloring.color_c3_tt3_p21(generators.directed_cycle(q))
        assert col.num_colors == 3
    assert time.perf_counter() - start < 300


# 4 -----------------------------------------------------------------------------

def _oracle_pi(g, hole):
    """Class each outside vertex by its exact in/out sets on the hole, then colour."""
    pos = {v: j + 1 for j, v in enumerate(hole)}  # v_1..v_5
    m = lambda j: (j - 1) % 5 + 1
    A = oracles.arcset(g)
    kinds = {}
    for x in range(g.n):
        if x in pos:
            continue
        ins = frozenset(pos[h] for h in hole if (h, x) in A)
        outs = frozenset(pos[h] for h in hole if (x, h) in A)
        found = []
        for i in range(1, 6):
            if ins == {m(i - 1)} and outs == {m(i + 1), m(i + 3)}:
                found.append(("A", i))
            if ins == {m(i - 1), m(i + 2)} and outs == {m(i + 1)}:
                found.append(("B", i))
            if ins == {m(i - 1)} and outs == {m(i + 1)}:
                found.append(("C", i))
        assert len(found) == 1, (x, ins, outs)
        kinds[x] = found[0]
    table = {("X", 1): 1, ("A", 4): 1, ("B", 2): 1,
             ("A", 5): 2, ("C", 5): 2,
             ("X", 3): 3, ("B", 5): 3,
             ("A", 2): 4, ("B", 4): 4, ("C", 4): 4}
    hole_colour = {1: 1, 2: 2, 3: 3, 4: 4, 5: 2}
    colour = {}
    for v, j in pos.items():
        colour[v] = hole_colour[j]
    for x, (letter, i) in kinds.items():
        if (letter, i) == ("C", 2):
            continue
        colour[x] = table.get((letter, i), table.get(("X", i)))
    c5 = {x for x, k in kinds.items() if k == ("C", 5)}
    for x, k in kinds.items():
        if k == ("C", 2):
            colour[x] = 4 if any(oracles.adjacent(A, x, y) for y in c5) else 2
    return kinds, colour


@pytest.mark.acceptance(4, "5-hole colouring matches the schema class by class; 7-hole blow-ups use 3 colours")
def test_hole_lemmas():
    g = generators.two_pentagon_gadget()
    assert digraph.is_strong(g)
    hole = patterns.find_odd_hole(g)
    assert hole.length == 5
    col, cls = coloring.color_strong_5hole(g, hole)
    kinds, expected = _oracle_pi(g, hole.cycle)
    assert cls.kind == kinds
    assert col.is_valid(g) and col.num_colors == 4
    # colours are 0-based in the library, 1-based in the schema
    assert {v: c + 1 for v, c in enumerate(col.colors)} == expected
    # any labelling of the same hole starting elsewhere gives the same agreement
    for r in range(5):
        rotated = patterns.HoleCertificate(hole.cycle[r:] + hole.cycle[:r], hole.directed)
        col, cls = coloring.color_strong_5hole(g, rotated)
        kinds, expected = _oracle_pi(g, rotated.cycle)
        assert cls.kind == kinds
        assert {v: c + 1 for v, c in enumerate(col.colors)} == expected

    c7 = generators.directed_cycle(7)
    rng = generators.SplitMix64(4)
    for trial in range(60):
        sizes = [1 + rng.below(3) for _ in range(7)] if trial else [1] * 7
        b, witness = digraph.blow_up(c7, sizes)
        h = next(iter_holes(b, min_length=7))
        col = coloring.color_strong_7hole(b, h)
        assert col.is_valid(b)
        assert col.num_colors == 3


# 5 -----------------------------------------------------------------------------

@pytest.mark.acceptance(5, "Erdos-Moser bound on every 4-vertex tournament and 1000 random ones")
def test_erdos_moser():
    pairs = list(itertools.combinations(range(4), 2))
    assert len(pairs) == 6
    for bits in range(2 ** 6):
        arcs = [(i, j) if bits >> e & 1 else (j, i) for e, (i, j) in enumerate(pairs)]
        t = digraph.OrientedGraph(4, arcs)
        rep = verify.check_erdos_moser(t)
        assert rep.verdict == verify.HOLDS
        assert rep.details["trans"] == oracles.trans_number(t)
    rng = generators.SplitMix64(5)
    for _ in range(1000):
        n = 1 + rng.below(10)
        t = generators.random_tournament(n, rng.next_u64())
        rep = verify.check_erdos_moser(t)
        assert rep.verdict == verify.HOLDS
        assert rep.details["trans"] >= 1 + math.floor(math.log2(n))


# 6 -----------------------------------------------------------------------------

@pytest.mark.acceptance(6, "(TT3,S2,2)-free: neighbourhood relation holds and chi <= 6 tri")
def test_nbr_and_tchi():
    count = 0
    for g in corpus(220, [TT3, S22], 12, seed=6):
        count += 1
        assert g.n <= 12
        rep = verify.check_nbr_lemma(g, 2)
        assert rep.verdict == verify.HOLDS, rep.to_json()
        chi = coloring.chi_exact(g)[0]
        tri = coloring.tri_exact(g)[0]
        assert chi <= 6 * tri
    assert count >= 200


# 7 -----------------------------------------------------------------------------

@pytest.mark.acceptance(7, "(C3,TT3,S2,2)-free: chi <= 6")
def test_star_triangle():
    count = 0
    for g in corpus(220, [C3, TT3, S22], 12, seed=7):
        count += 1
        assert g.n <= 12
        assert coloring.chi_exact(g)[0] <= 6
        assert verify.check_star_triangle_bound(g, 2, 2).verdict == verify.HOLDS
    assert count >= 200


# 8 -----------------------------------------------------------------------------

def s11_corpus(count, seed=8):
    """Connected (TT3, S1,1)-free instances: the largest weak component of a grown sample."""
    rng = generators.SplitMix64(seed)
    out, i = [], 0
    while len(out) < count:
        i += 1
        n = 2 + rng.below(11)
        g = generators.grow_f_free(n, (0.3, 0.6, 0.9)[i % 3], rng.next_u64(), [TT3, S11], max_tries=10_000)
        g = g.induced(max(digraph.weak_components(g), key=len))[0]
        if g.n >= 2:
            out.append(g)
    return out


@pytest.mark.acceptance(8, "connected (TT3,S1,1)-free: structure holds, chi = 2 if C3-free else <= 3")
def test_s11_structure():
    failures = {"structure": [], "chi": []}
    c3_free = with_c3 = 0
    for g in s11_corpus(220):
        assert digraph.is_connected(g)
        rep = verify.check_s11_structure(g)
        if rep.verdict != verify.HOLDS:
            failures["structure"].append(rep.details.get("case"))
        chi = coloring.chi_exact(g)[0]
        if find_induced(g, C3) is None:
            c3_free += 1
            if chi != 2:
                failures["chi"].append(g.to_json())
        else:
            with_c3 += 1
            if chi > 3:
                failures["chi"].append(g.to_json())
    assert c3_free >= 20 and with_c3 >= 20
    # C3-free members are bipartite (sources versus sinks) but not always complete
    # bipartite, e.g. 1->0<-3->2<-4, so the TT2-extension part is expected to fail
    assert not failures["chi"], failures["chi"][:3]
    assert not failures["structure"], (
        f"{len(failures['structure'])} of 220 instances are not extensions: "
        f"{sorted(set(failures['structure']))}"
    )


# 9 -----------------------------------------------------------------------------

@pytest.mark.acceptance(9, "shift graphs and line digraphs of TT_n: freeness flags and chi growth")
def test_families():
    start = time.perf_counter()
    for n in range(3, 9):
        g = generators.shift_graph(2, n)
        for f in (C3, TT3, PPLUS111):
            assert find_induced(g, f) is None
        assert coloring.chi_exact(g)[0] == math.ceil(math.log2(n))
    for n in range(3, 8):
        tt = generators.transitive_tournament(n)
        line = generators.line_digraph(tt)
        for f in (TT3, PPLUS111, C31, C22):
            assert find_induced(line, f) is None
        chi_tt = coloring.chi_exact(tt)[0]
        assert chi_tt == n
        assert coloring.chi_exact(line)[0] >= math.ceil(math.log2(chi_tt))
    assert time.perf_counter() - start < 60


# 10 ----------------------------------------------------------------------------

@pytest.mark.acceptance(10, "8-vertex spider forces P+(3) or P+(1,1,1); P4 does not")
def test_tree_orientations():
    start = time.perf_counter()
    rep = verify.check_tree_all_orientations(*verify.spider8())
    assert rep.verdict == verify.HOLDS
    assert rep.details["orientations"] == 128
    p4 = verify.check_tree_all_orientations(4, [(0, 1), (1, 2), (2, 3)])
    assert p4.verdict == verify.VIOLATED
    assert p4.witness is not None
    assert time.perf_counter() - start < 1.0


# 11 ----------------------------------------------------------------------------

@pytest.mark.acceptance(11, "constant chain consistent and finite; counting lemma agrees with enumeration")
def test_constants_and_comb():
    c = verify.skk_constants(2)
    eqs = c.equations()
    assert eqs and all(eqs.values()), eqs
    for value in (c.s, c.eps, c.t, c.bound):
        assert isinstance(value, Fraction)
    assert 0 < c.bound < math.inf
    assert c.bound == 2 * c.d

    grid = [(1, Fraction(1, 2)), (2, Fraction(1, 2)), (2, Fraction(2, 3)), (2, Fraction(3, 4)),
            (2, Fraction(4, 5)), (2, Fraction(9, 10)), (3, Fraction(9, 10))]
    checked = applicable = 0
    for k, p in grid:
        N = verify.comb_threshold(k, p)
        bound = Fraction(k) / p ** k
        for n in range(1, 8):
            for fam in oracles.comb_families(n, k, p):
                h = verify.Hypergraph.make(n, fam)
                rep = verify.check_comb_lemma(h, k, p)
                checked += 1
                if n < N:
                    assert rep.verdict == verify.VACUOUS
                    continue
                applicable += 1
                expected = verify.HOLDS if len(fam) < bound else verify.VIOLATED
                assert rep.verdict == expected
                # the lemma itself: no admissible family reaches the bound
                assert rep.verdict == verify.HOLDS
    assert checked > 500 and applicable > 100


# 12 ----------------------------------------------------------------------------

@pytest.mark.acceptance(12, "search for chi 5 in Forb(TT3,P+(2,1)) finds nothing")
def test_falsification_search(capsys):
    start = time.perf_counter()
    code = cli.main(["search", "--forbid", "tt3,p21+", "--target-chi", "5", "--n", "14",
                     "--seed", "12", "--budget", "2000", "--json"])
    out = capsys.readouterr().out
    assert code == 0
    import json

    report = json.loads(out)
    assert report["found"] is False
    assert report["best_chi"] <= 4
    assert report["job"]["budget"] == 2000
    assert time.perf_counter() - start < 600
