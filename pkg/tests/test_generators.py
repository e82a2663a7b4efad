import itertools

import pytest
from hypothesis import given, strategies as st

from chiforb import families, generators
from chiforb.coloring import chi_exact
from chiforb.digraph import OrientedGraph, is_strong
from chiforb.errors import BadSpec, BudgetExhausted, NotAcyclic
from chiforb.generators import GenSpec, SplitMix64, generate, repair
from chiforb.patterns import C3, PPLUS21, TT3, PatternKind, find_induced, is_f_free

import oracles
from conftest import oriented_graphs

MASK = (1 << 64) - 1


def test_splitmix_reference_vectors():
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_splitmix_helpers_are_deterministic():
    a, b = SplitMix64(99), SplitMix64(99)
    assert [a.below(7) for _ in range(50)] == [b.below(7) for _ in range(50)]
    assert all(0 <= SplitMix64(s).below(5) < 5 for s in range(100))
    assert 0.0 <= SplitMix64(3).random() < 1.0
    with pytest.raises(ValueError):
        SplitMix64(0).below(0)


def _reference_orientation(n, p, seed):
    """The documented procedure, written out independently."""
    state = seed & MASK

    def nxt():
        nonlocal state
        state = (state + 0x9E3779B97F4A7C15) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    arcs = []
    for i, j in itertools.combinations(range(n), 2):
        if (nxt() >> 11) * 2.0 ** -53 < p:
            arcs.append((i, j) if nxt() & 1 == 0 else (j, i))
    return sorted(arcs)


@given(st.integers(0, 12), st.sampled_from([0.0, 0.25, 0.5, 1.0]), st.integers(0, 2**64 - 1))
def test_random_orientation_follows_documented_procedure(n, p, seed):
    assert list(generators.random_orientation(n, p, seed).arcs) == _reference_orientation(n, p, seed)


@given(st.integers(1, 10), st.integers(0, 2**32))
def test_random_tournament_is_a_tournament(n, seed):
    t = generators.random_tournament(n, seed)
    assert t.is_tournament() and t.n == n


def test_shift_graph_example():
    g = generators.shift_graph(2, 4)
    labels = generators.shift_labels(2, 4)
    assert labels == ["12", "13", "14", "23", "24", "34"]
    named = sorted((labels[u], labels[v]) for u, v in g.arcs)
    assert named == [("12", "23"), ("12", "24"), ("13", "34"), ("23", "34")]
    assert chi_exact(generators.shift_graph(2, 5))[0] == 3


@pytest.mark.parametrize("k,n", [(2, 3), (2, 6), (3, 5), (3, 6)])
def test_shift_graph_matches_definition(k, n):
    subsets = list(itertools.combinations(range(1, n + 1), k))
    want = sorted((i, j) for i, a in enumerate(subsets) for j, b in enumerate(subsets)
                  if a[1:] == b[:-1] and a[0] < b[-1])
    assert sorted(generators.shift_graph(k, n).arcs) == want


def test_shift_graph_bounds():
    assert generators.shift_graph(1, 4) == families.transitive_tournament(4)
    for k, n in [(0, 3), (3, 3)]:
        with pytest.raises(BadSpec):
            generators.shift_graph(k, n)


def test_line_digraph_examples():
    c3 = families.directed_cycle(3)
    line = generators.line_digraph(c3)
    assert line.n == 3 and line.m == 3 and oracles.induced_embeddings(line, c3)
    l_tt3 = generators.line_digraph(families.transitive_tournament(3))
    # arcs of TT3 in order: 01, 02, 12; only 01 -> 12 is a 2-walk
    assert (l_tt3.n, l_tt3.arcs) == (3, ((0, 2),))


@given(oriented_graphs(max_n=6))
def test_line_digraph_counts_two_walks(g):
    line = generators.line_digraph(g)
    assert line.n == g.m
    walks = sum(1 for u, v in g.arcs for w in range(g.n) if (v, w) in set(g.arcs))
    assert line.m == walks


def test_gadget_construction():
    g = generators.two_pentagon_gadget()
    v = lambda i: (i - 1) % 5
    u = lambda i: 5 + (i - 1) % 5
    want = set()
    for i in range(1, 6):
        want |= {(v(i), v(i + 1)), (u(i), u(i + 1)), (v(i - 1), u(i)), (u(i), v(i + 1)), (u(i), v(i + 3))}
    assert set(g.arcs) == want
    assert (g.n, g.m) == (10, 25)
    assert is_f_free(g, [TT3, PPLUS21])[0]


def test_augment_with_dominator():
    tt2 = families.transitive_tournament(2)
    assert generators.augment_with_dominator(tt2) == OrientedGraph(3, [(2, 0), (0, 1), (1, 2)])
    k1 = generators.augment_with_dominator(OrientedGraph(1, []))
    assert k1.arcs == ((1, 0),)
    assert chi_exact(k1)[0] == 2
    with pytest.raises(NotAcyclic):
        generators.augment_with_dominator(families.directed_cycle(3))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_augment_raises_chi_by_one_on_tournaments(n):
    tt = families.transitive_tournament(n)
    h = generators.augment_with_dominator(tt)
    assert is_strong(h)
    assert chi_exact(h)[0] == chi_exact(tt)[0] + 1


def test_random_f_free_examples():
    g = generators.random_f_free(10, 0.3, 42, [TT3, PPLUS21], 1000)
    assert is_f_free(g, [TT3, PPLUS21])[0]
    assert generators.random_f_free(8, 0.5, 3) == generators.random_orientation(8, 0.5, 3)
    g = generators.random_f_free(4, 1.0, 7, [TT3], 1000)
    assert find_induced(g, TT3) is None
    assert not g.is_tournament()


def test_repair_errors():
    t5 = families.transitive_tournament(5)
    with pytest.raises(BudgetExhausted):
        repair(t5, [TT3], max_tries=1)
    with pytest.raises(BadSpec):
        repair(t5, [PatternKind.tt(1)])


def test_repair_takes_first_pattern_in_order():
    t3 = families.transitive_tournament(3)
    # TT3 is listed first; its least image arc (0,1) goes
    assert repair(t3, [TT3], max_tries=1).arcs == ((0, 2), (1, 2))


@given(oriented_graphs(max_n=8), st.lists(st.sampled_from([TT3, C3, PPLUS21]), min_size=1, max_size=3))
def test_repair_yields_f_free_subgraph(g, forbid):
    r = repair(g, forbid, max_tries=200)
    assert set(r.arcs) <= set(g.arcs)
    for f in forbid:
        assert not oracles.induced_embeddings(r, f.graph)


@given(st.integers(0, 12), st.sampled_from([0.3, 0.6, 0.9]), st.integers(0, 2**32))
def test_grow_f_free_is_member_and_reproducible(n, p, seed):
    forbid = [TT3, PPLUS21]
    a = generators.grow_f_free(n, p, seed, forbid, max_tries=10_000)
    assert a == generators.grow_f_free(n, p, seed, forbid, max_tries=10_000)
    assert a.n == n and is_f_free(a, forbid)[0]


@given(st.integers(7, 12), st.integers(0, 2**32))
def test_grow_keeps_a_free_base(n, seed):
    base = families.directed_cycle(7)
    g = generators.grow_f_free(n, 0.5, seed, [TT3, PPLUS21], max_tries=10_000, base=base)
    assert set(base.arcs) <= set(g.arcs)


def test_random_blow_up():
    g = generators.random_blow_up(families.directed_cycle(5), 3, 1)
    assert 5 <= g.n <= 15
    assert generators.random_blow_up(families.directed_cycle(5), 3, 1) == g


def test_generate_examples():
    assert generate(GenSpec(kind="tt", n=3)).arcs == ((0, 1), (0, 2), (1, 2))
    s = generate(GenSpec(kind="star", k=2, l=2))
    assert s.n == 5 and s.in_degree(0) == 2 and s.out_degree(0) == 2
    assert generate(GenSpec(kind="cycle", n=5)) == families.directed_cycle(5)
    line = GenSpec(kind="line", base=GenSpec(kind="tt", n=4))
    assert generate(line) == generators.line_digraph(families.transitive_tournament(4))
    with pytest.raises(BadSpec):
        generate(GenSpec(kind="cycle"))


def test_genspec_roundtrip():
    spec = GenSpec(kind="line", base=GenSpec(kind="grow-f-free", n=8, p=0.5, seed=4, forbid=["tt3"]))
    assert GenSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(BadSpec):
        GenSpec.from_dict({"kind": "tt", "bogus": 1})
