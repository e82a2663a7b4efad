"""Instance checkers for the lemmas and bounds about forbidden induced subgraphs.

Each check validates class membership first and returns a :class:`CheckReport`
whose verdict is one of ``holds``, ``violated``, ``not-in-class`` or
``vacuous``.  A ``violated`` report always carries a witness that can be
re-checked independently.
"""
from __future__ import annotations

import hashlib
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import families
from .coloring import chi_exact, color_bipartite_no_odd_cycle, color_s11, tri_exact
from .digraph import (
    OrientedGraph,
    bits,
    is_connected,
    is_extension_of,
    is_strong,
    mask_of,
    popcount,
    reach,
    scc,
    weak_components,
)
from .errors import (
    BadInterval,
    NotATree,
    NotInClass,
    NotTournament,
    OddCycleFound,
    TooLarge,
    _jsonable,
)
from .patterns import (
    C3,
    PPLUS3,
    PMINUS21,
    PPLUS21,
    PPLUS111,
    S11,
    TT3,
    BipartiteRelation,
    PatternKind,
    anti_biclique,
    backward_arc,
    find_induced,
    find_odd_hole,
    is_f_free,
    iter_holes,
    max_transitive_subtournament,
    _validate_relation,
)

HOLDS = "holds"
VIOLATED = "violated"
NOT_IN_CLASS = "not-in-class"
VACUOUS = "vacuous"
VERDICTS = (HOLDS, VIOLATED, NOT_IN_CLASS, VACUOUS)

# predicates implemented but not exercisable on desk-sized instances
UNTESTABLE_AT_DESK_SCALE = ("kp", "kkk")


def fingerprint(instance: Any) -> str:
    if isinstance(instance, OrientedGraph):
        instance = instance.to_dict()
    text = json.dumps(_jsonable(instance), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class CheckReport:
    check: str
    fingerprint: str
    verdict: str
    witness: Any = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == VIOLATED and self.witness is None:
            raise ValueError("a violated report needs a witness")

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "fingerprint": self.fingerprint,
            "verdict": self.verdict,
            "witness": _jsonable(self.witness),
            "details": _jsonable(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _report(check, instance, verdict, witness=None, **details) -> CheckReport:
    return CheckReport(check, fingerprint(instance), verdict, witness, details)


def _class_failure(check: str, g: OrientedGraph, forbidden: Sequence[PatternKind]) -> CheckReport | None:
    free, emb = is_f_free(g, forbidden)
    if free:
        return None
    return _report(check, g, NOT_IN_CLASS, emb.to_dict(), reason=f"contains {emb.pattern.name}")


def _skk(k: int) -> PatternKind:
    return PatternKind.star(k, k)


# -- tournaments ----------------------------------------------------------------

def erdos_moser_bound(n: int) -> int:
    """``1 + floor(log2 n)`` for ``n >= 1``."""
    return n.bit_length()


def check_erdos_moser(t: OrientedGraph) -> CheckReport:
    if not t.is_tournament():
        raise NotTournament(f"{t.m} arcs on {t.n} vertices is not a tournament")
    if t.n == 0:
        return _report("erdos-moser", t, VACUOUS, reason="empty tournament")
    bound = erdos_moser_bound(t.n)
    best = max_transitive_subtournament(t)
    if len(best) >= bound:
        return _report("erdos-moser", t, HOLDS, trans=len(best), bound=bound, witness_set=best)
    return _report("erdos-moser", t, VIOLATED, {"largest_transitive": best}, trans=len(best), bound=bound)


# -- neighbourhood relation -----------------------------------------------------

def check_nbr_lemma(g: OrientedGraph, k: int) -> CheckReport:
    """``N+(x) ->> N-(x)`` for every vertex of a (TT3, S_{k,k})-free graph."""
    bad = _class_failure("nbr", g, [TT3, _skk(k)])
    if bad:
        return bad
    for x in range(g.n):
        A, B = g.out_neighbors(x), g.in_neighbors(x)
        arc = backward_arc(g, A, B)
        if arc is not None:
            return _report("nbr", g, VIOLATED, {"vertex": x, "arc": arc}, k=k)
        anti = anti_biclique(g, A, B, k)
        if anti is not None:
            return _report("nbr", g, VIOLATED, {"vertex": x, "anti_biclique": anti}, k=k)
    return _report("nbr", g, HOLDS, k=k, vertices=g.n)


# -- hypergraph counting lemma --------------------------------------------------

def _ratio_bound(n: int, k: int, p: Fraction) -> Fraction | None:
    """``(k-1) C(n,k) / C(floor(pn),k)``, or ``None`` when the denominator vanishes."""
    m = math.floor(p * n)
    denom = math.comb(m, k)
    if denom == 0:
        return None
    return Fraction((k - 1) * math.comb(n, k), denom)


def _monotone_bound(n: int, k: int, p: Fraction) -> Fraction | None:
    # floor(pn) >= pn - 1, and each factor (n-i)/(pn-1-i) decreases in n
    out = Fraction(k - 1)
    for i in range(k):
        den = p * n - 1 - i
        if den <= 0:
            return None
        out *= Fraction(n - i) / den
    return out


def comb_threshold(k: int, p) -> int:
    """An integer ``N`` such that every ``n >= N`` gives ``(k-1) C(n,k)/C(floor(pn),k) < k/p^k``.

    A point ``n0`` past which a decreasing upper bound stays below the target is
    found first, then the exact ratio is scanned downward from ``n0``; the
    result is the least ``N`` with the inequality holding on all of ``[N, oo)``.
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise BadInterval(f"p must lie in (0, 1), got {p}")
    if k < 1:
        raise BadInterval("k must be >= 1")
    target = Fraction(k) / p**k
    n0 = k
    while True:
        u = _monotone_bound(n0, k, p)
        if u is not None and u < target:
            break
        n0 = max(n0 + 1, n0 * 2) if u is None else n0 + 1
    # tighten n0 to the least value where the monotone bound is under target
    lo, hi = k, n0
    while lo < hi:
        mid = (lo + hi) // 2
        u = _monotone_bound(mid, k, p)
        if u is not None and u < target:
            hi = mid
        else:
            lo = mid + 1
    n = lo
    while n > 1:
        r = _ratio_bound(n - 1, k, p)
        if r is None or r >= target:
            break
        n -= 1
    return n


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[frozenset, ...]

    @classmethod
    def make(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        uniq = sorted({frozenset(e) for e in edges}, key=lambda e: (len(e), sorted(e)))
        for e in uniq:
            if any(not 0 <= v < n for v in e):
                raise ValueError(f"hyperedge {sorted(e)} leaves 0..{n - 1}")
        return cls(n, tuple(uniq))

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [sorted(e) for e in self.edges]}


def comb_preconditions(h: Hypergraph, k: int, p) -> str | None:
    """Reason a hypergraph fails the counting lemma's hypotheses, or ``None``."""
    p = Fraction(p)
    for e in h.edges:
        if len(e) < p * h.n:
            return f"hyperedge {sorted(e)} smaller than p|V|"
    for group in itertools.combinations(h.edges, k):
        common = frozenset.intersection(*group)
        if len(common) > k - 1:
            return f"{k} hyperedges share {len(common)} vertices"
    return None


def random_comb_family(n: int, k: int, p, seed: int, attempts: int = 40) -> Hypergraph:
    """Random hypergraph meeting the counting lemma's hypotheses: candidate sets
    of size at least ``p n`` are kept when no k kept sets share k vertices."""
    from .generators import SplitMix64

    p = Fraction(p)
    rng = SplitMix64(seed)
    low = max(1, math.ceil(p * n))
    kept: list[frozenset] = []
    for _ in range(attempts):
        size = low + rng.below(n - low + 1) if n >= low else low
        if size > n:
            break
        pool = list(range(n))
        chosen = []
        for _ in range(size):
            chosen.append(pool.pop(rng.below(len(pool))))
        e = frozenset(chosen)
        if e in kept:
            continue
        ok = all(len(e.intersection(*group)) <= k - 1
                 for group in itertools.combinations(kept, k - 1)) if k > 1 else False
        if ok:
            kept.append(e)
    return Hypergraph.make(n, kept)


def check_comb_lemma(h: Hypergraph, k: int, p) -> CheckReport:
    p = Fraction(p)
    if not 0 < p < 1:
        raise BadInterval(f"p must lie in (0, 1), got {p}")
    bound = Fraction(k) / p**k
    threshold = comb_threshold(k, p)
    reason = comb_preconditions(h, k, p)
    if reason is not None:
        return _report("comb", h.to_dict(), VACUOUS, reason=reason)
    if h.n < threshold:
        return _report("comb", h.to_dict(), VACUOUS, reason=f"|V| = {h.n} < N(k,p) = {threshold}")
    details = {"edges": len(h.edges), "bound": str(bound), "N": threshold}
    if len(h.edges) < bound:
        return _report("comb", h.to_dict(), HOLDS, **details)
    return _report("comb", h.to_dict(), VIOLATED, h.to_dict(), **details)


# -- the constant chain ---------------------------------------------------------

@dataclass(frozen=True)
class SkkConstants:
    k: int
    s: Fraction
    eps: Fraction
    t: Fraction
    g: Fraction
    N_of_k_p: int
    N1: Fraction
    N2: Fraction
    d: Fraction

    @property
    def p(self) -> Fraction:
        return 1 - self.t - self.eps

    @property
    def bound(self) -> Fraction:
        """Upper bound ``2d`` on the triangle-free chromatic number."""
        return 2 * self.d

    def equations(self) -> dict[str, bool]:
        k, s, e, t, g = self.k, self.s, self.eps, self.t, self.g
        p = self.p
        return {
            "s": s == 1 - Fraction(1, 2 * k),
            "eps_range": 0 < e < Fraction(1, 2 * k),
            "t_range": s < t < 1 - e,
            "g": g == Fraction(k) / p**k,
            "N_of_k_p": self.N_of_k_p == comb_threshold(k, p),
            "N1": self.N1 == max(Fraction(self.N_of_k_p), p * g / e + g),
            "N2": self.N2 == max(self.N1, g / (t - s) + g + 1),
            "d": self.d == max(self.N2 / t + 8 * g, 2 * t * g / (t - s) + g),
        }

    def to_dict(self) -> dict:
        return {
            "k": self.k, "s": str(self.s), "eps": str(self.eps), "t": str(self.t),
            "g": str(self.g), "N_of_k_p": self.N_of_k_p, "N1": str(self.N1),
            "N2": str(self.N2), "d": str(self.d), "bound": str(self.bound),
        }


def skk_constants(k: int, eps=None, t=None) -> SkkConstants:
    if k < 2:
        raise BadInterval(f"k must be >= 2, got {k}")
    s = 1 - Fraction(1, 2 * k)
    eps = Fraction(1, 4 * k) if eps is None else Fraction(eps)
    if not 0 < eps < Fraction(1, 2 * k):
        raise BadInterval(f"eps must lie in (0, 1/(2k)), got {eps}")
    t = (s + 1 - eps) / 2 if t is None else Fraction(t)
    if not s < t < 1 - eps:
        raise BadInterval(f"t must lie in ({s}, {1 - eps}), got {t}")
    p = 1 - t - eps
    g = Fraction(k) / p**k
    N = comb_threshold(k, p)
    N1 = max(Fraction(N), p * g / eps + g)
    N2 = max(N1, g / (t - s) + g + 1)
    d = max(N2 / t + 8 * g, 2 * t * g / (t - s) + g)
    return SkkConstants(k, s, eps, t, g, N, N1, N2, d)


# -- three stable sets ----------------------------------------------------------

def check_ppk1(g: OrientedGraph, A, B, C, tau, k: int) -> CheckReport:
    """If A sends and C receives at least ``tau |B|`` arcs per vertex from B, then ``C ->> A``."""
    tau = Fraction(tau)
    s = 1 - Fraction(1, 2 * k)
    if not s < tau < 1:
        raise BadInterval(f"tau must lie in ({s}, 1), got {tau}")
    A, B, C = frozenset(A), frozenset(B), frozenset(C)
    instance = {"graph": g.to_dict(), "A": A, "B": B, "C": C, "tau": str(tau), "k": k}
    bad = _class_failure("ppk1", g, [TT3, _skk(k)])
    if bad:
        bad.fingerprint = fingerprint(instance)
        return bad
    _validate_relation(g, BipartiteRelation.make(A, B, k))
    _validate_relation(g, BipartiteRelation.make(B, C, k))
    _validate_relation(g, BipartiteRelation.make(C, A, k))
    bmask = mask_of(B)
    nb = len(B)
    for a in sorted(A):
        if popcount(g.out[a] & bmask) < tau * nb:
            return _report("ppk1", instance, VACUOUS, reason=f"d+_B({a}) below tau|B|")
    for c in sorted(C):
        if popcount(g.inc[c] & bmask) < tau * nb:
            return _report("ppk1", instance, VACUOUS, reason=f"d-_B({c}) below tau|B|")
    arc = backward_arc(g, C, A)
    if arc is not None:
        return _report("ppk1", instance, VIOLATED, {"arc": arc})
    anti = anti_biclique(g, C, A, k)
    if anti is not None:
        return _report("ppk1", instance, VIOLATED, {"anti_biclique": anti})
    return _report("ppk1", instance, HOLDS, sizes=[len(A), len(B), len(C)])


def _greedy_stable(g: OrientedGraph, candidates: Iterable[int]) -> list[int]:
    chosen: list[int] = []
    used = 0
    for v in sorted(candidates):
        if not g.adj(v) & used:
            chosen.append(v)
            used |= 1 << v
    return chosen


def ppk1_triples(g: OrientedGraph, tau, k: int):
    """Triples ``(A, B, C)`` meeting the degree hypotheses: ``B = N+(x)`` for each
    vertex ``x`` with a non-empty out-neighbourhood, A and C greedy stable sets."""
    tau = Fraction(tau)
    for x in range(g.n):
        B = g.out_neighbors(x)
        if not B or not g.is_stable(B):
            continue
        bmask = mask_of(B)
        rest = [v for v in range(g.n) if not bmask >> v & 1]
        A0 = [v for v in rest if popcount(g.out[v] & bmask) >= tau * len(B)]
        A = _greedy_stable(g, A0)
        C0 = [v for v in rest if v not in A and popcount(g.inc[v] & bmask) >= tau * len(B)]
        C = _greedy_stable(g, C0)
        if A and C:
            yield A, B, C


# -- odd holes ------------------------------------------------------------------

def _audit_outside(g: OrientedGraph, hole: tuple, vertex: int) -> str | None:
    """Arc-pattern restrictions on one outside vertex of a directed odd hole."""
    q = len(hole)
    index = {v: i for i, v in enumerate(hole)}
    hmask = mask_of(hole)
    outs = sorted(index[v] for v in bits(g.out[vertex] & hmask))
    ins = sorted(index[v] for v in bits(g.inc[vertex] & hmask))
    if outs:
        ok = False
        for i in outs:
            if ins == [(i - 2) % q] and outs == [i]:
                ok = True
            elif q == 5 and ins == [(i - 2) % q] and outs == sorted({i, (i + 2) % q}):
                ok = True
            elif q == 5 and outs == [i] and ins == sorted({(i - 2) % q, (i + 1) % q}):
                ok = True
        if not ok:
            return "dominating-pattern"
    elif ins and len(ins) != 1:
        return "single-in-neighbour"
    return None


def _is_twin(g: OrientedGraph, cycle: tuple, x: int) -> int | None:
    q = len(cycle)
    index = {v: i for i, v in enumerate(cycle)}
    hmask = mask_of(cycle)
    ins = [index[v] for v in bits(g.inc[x] & hmask)]
    outs = [index[v] for v in bits(g.out[x] & hmask)]
    if len(ins) == 1 and len(outs) == 1 and (outs[0] - ins[0]) % q == 2:
        return (ins[0] + 1) % q
    return None


def check_odd_hole_lemmas(g: OrientedGraph, max_holes: int = 200) -> CheckReport:
    """Audit every odd hole (up to ``max_holes``) of a (TT3, P+(2,1))-free graph.

    Items always run: directedness, initial strong component, adjacency of
    vertices reaching the hole, arc patterns of dominating vertices, single
    in-neighbour of dominated vertices.  When the graph is also C3-free the
    twin items run too: at most one dominator on the hole, dominating implies
    twin, reaching implies twin.
    """
    bad = _class_failure("oddhole", g, [TT3, PPLUS21])
    if bad:
        return bad
    c3_free = find_induced(g, C3) is None
    suites = ["oddholes"] + (["twins"] if c3_free else [])
    dec = scc(g)
    counts: dict[str, int] = {}
    holes = 0

    def fail(item, hole, vertex=None):
        return _report("oddhole", g, VIOLATED, {"item": item, "hole": list(hole), "vertex": vertex},
                       suites=suites)

    for cert in iter_holes(g):
        holes += 1
        if holes > max_holes:
            break
        H = cert.cycle
        counts["directed"] = counts.get("directed", 0) + 1
        if not cert.directed:
            return fail("directed", H)
        comp = dec.component_of[H[0]]
        counts["initial"] = counts.get("initial", 0) + 1
        if not dec.initial[comp] or not set(H) <= dec.components[comp]:
            return fail("initial", H)
        hmask = mask_of(H)
        back = reach(g, H, "backward")
        for u in range(g.n):
            if hmask >> u & 1:
                continue
            if u in back:
                counts["reach-adjacent"] = counts.get("reach-adjacent", 0) + 1
                if not g.adj(u) & hmask:
                    return fail("reach-adjacent", H, u)
            item = _audit_outside(g, H, u)
            counts["outside-pattern"] = counts.get("outside-pattern", 0) + 1
            if item is not None:
                return fail(item, H, u)
            if c3_free:
                counts["twins"] = counts.get("twins", 0) + 1
                if popcount(g.inc[u] & hmask) > 1:
                    return fail("one-dominator", H, u)
                if g.out[u] & hmask and _is_twin(g, H, u) is None:
                    return fail("dominating-twin", H, u)
                if u in back and _is_twin(g, H, u) is None:
                    return fail("reaching-twin", H, u)
    return _report("oddhole", g, HOLDS, suites=suites, holes=min(holes, max_holes), items=counts,
                   truncated=holes > max_holes)


# -- colouring bounds -----------------------------------------------------------

def check_tchi_bound(g: OrientedGraph, k: int) -> CheckReport:
    bad = _class_failure("tchi", g, [TT3, _skk(k)])
    if bad:
        return bad
    chi, col = chi_exact(g)
    tri, tcol = tri_exact(g)
    factor = 4 * k - 2
    details = {"chi": chi, "tri": tri, "factor": factor, "k": k}
    if chi <= factor * tri:
        return _report("tchi", g, HOLDS, **details)
    return _report("tchi", g, VIOLATED, {"tri_coloring": tcol.to_dict()}, **details)


def check_star_triangle_bound(g: OrientedGraph, k: int, l: int) -> CheckReport:
    bad = _class_failure("star-triangle", g, [C3, TT3, PatternKind.star(k, l)])
    if bad:
        return bad
    chi, col = chi_exact(g)
    bound = 2 * k + 2 * l - 2
    if chi <= bound:
        return _report("star-triangle", g, HOLDS, chi=chi, bound=bound)
    return _report("star-triangle", g, VIOLATED, {"chi": chi}, chi=chi, bound=bound)


def check_s11_structure(g: OrientedGraph) -> CheckReport:
    if g.n == 0 or not is_connected(g):
        return _report("s11", g, NOT_IN_CLASS, None, reason="not connected")
    bad = _class_failure("s11", g, [TT3, S11])
    if bad:
        return bad
    has_c3 = find_induced(g, C3) is not None
    pattern = families.directed_cycle(3) if has_c3 else families.transitive_tournament(2)
    witness = is_extension_of(g, pattern)
    case = "extension of C3" if has_c3 else "extension of TT2"
    if witness is None:
        return _report("s11", g, VIOLATED, {"case": case, "graph": g.to_dict()}, case=case)
    col = color_s11(g)
    return _report("s11", g, HOLDS, case=case, classes=[sorted(c) for c in witness.classes],
                   colors=col.num_colors)


# -- trees ----------------------------------------------------------------------

TREE_EDGE_CAP = 20


def _validate_tree(n: int, edges: Sequence[tuple[int, int]]) -> None:
    if n < 1 or len(edges) != n - 1:
        raise NotATree(f"{len(edges)} edges on {n} vertices")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise NotATree(f"bad edge {(u, v)}")
        ru, rv = find(u), find(v)
        if ru == rv:
            raise NotATree(f"edge {(u, v)} closes a cycle")
        parent[ru] = rv


def check_tree_all_orientations(n: int, edges: Sequence[Sequence[int]]) -> CheckReport:
    """Every orientation of the tree contains an induced P+(3) or P+(1,1,1)."""
    edges = [tuple(e) for e in edges]
    _validate_tree(n, edges)
    if len(edges) > TREE_EDGE_CAP:
        raise TooLarge(f"{len(edges)} edges exceeds {TREE_EDGE_CAP}")
    instance = {"n": n, "edges": edges}
    for mask in range(1 << len(edges)):
        arcs = [(u, v) if not mask >> i & 1 else (v, u) for i, (u, v) in enumerate(edges)]
        g = OrientedGraph(n, arcs)
        if find_induced(g, PPLUS3) is None and find_induced(g, PPLUS111) is None:
            return _report("tree", instance, VIOLATED, {"orientation": list(g.arcs)},
                           orientations=1 << len(edges))
    return _report("tree", instance, HOLDS, orientations=1 << len(edges))


def spider8() -> tuple[int, list[tuple[int, int]]]:
    """Path ``v1..v4`` (0..3) with a pendant ``w_i`` (4..7) at each ``v_i``."""
    return 8, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)]


# -- small structural facts -----------------------------------------------------

def check_p4_pair(g: OrientedGraph, second: PatternKind = PPLUS21) -> CheckReport:
    """A (P+(3), X)-free graph, X one of P+(2,1), P-(2,1), P+(1,1,1), has no odd hole;
    if it is also (C3, TT3)-free it is bipartite."""
    if second.name not in (PPLUS21.name, PMINUS21.name, PPLUS111.name):
        raise ValueError(f"second pattern must be P+(2,1), P-(2,1) or P+(1,1,1), got {second.name}")
    bad = _class_failure("p4-pair", g, [PPLUS3, second])
    if bad:
        return bad
    hole = find_odd_hole(g)
    if hole is not None:
        return _report("p4-pair", g, VIOLATED, hole.to_dict(), pair=second.name)
    details = {"pair": second.name}
    if is_f_free(g, [C3, TT3])[0]:
        try:
            details["colors"] = color_bipartite_no_odd_cycle(g).num_colors
        except OddCycleFound as exc:
            return _report("p4-pair", g, VIOLATED, {"odd_cycle": exc.cycle}, **details)
    return _report("p4-pair", g, HOLDS, **details)


def _chi_after(g: OrientedGraph, arcs) -> int:
    return chi_exact(OrientedGraph(g.n, arcs))[0]


def is_critical(g: OrientedGraph) -> bool:
    """Colour-critical: no isolated vertex unless ``n = 1``, and deleting any arc lowers chi."""
    chi = chi_exact(g)[0]
    if g.n == 1:
        return True
    if any(g.degree(v) == 0 for v in range(g.n)):
        return False
    arcs = list(g.arcs)
    return all(_chi_after(g, arcs[:i] + arcs[i + 1:]) < chi for i in range(len(arcs)))


def check_critical(g: OrientedGraph) -> CheckReport:
    """A k-critical graph is connected with min degree >= k-1 and max in- and
    out-degree >= (k-1)/2."""
    if g.n == 0 or not is_critical(g):
        return _report("critical", g, VACUOUS, reason="not colour-critical")
    k = chi_exact(g)[0]
    if not is_connected(g):
        return _report("critical", g, VIOLATED, {"components": weak_components(g)}, k=k)
    low = min(range(g.n), key=g.degree)
    if g.degree(low) < k - 1:
        return _report("critical", g, VIOLATED, {"vertex": low, "degree": g.degree(low)}, k=k)
    dplus = max(g.out_degree(v) for v in range(g.n))
    dminus = max(g.in_degree(v) for v in range(g.n))
    if 2 * dplus < k - 1 or 2 * dminus < k - 1:
        return _report("critical", g, VIOLATED, {"max_out": dplus, "max_in": dminus}, k=k)
    return _report("critical", g, HOLDS, k=k, min_degree=g.degree(low), max_out=dplus, max_in=dminus)


def check_tri_critical(g: OrientedGraph) -> CheckReport:
    """In a TT3-free c-triangle-free-critical graph every in- and out-degree is >= c-1."""
    bad = _class_failure("tri-critical", g, [TT3])
    if bad:
        return bad
    if g.n == 0:
        return _report("tri-critical", g, VACUOUS, reason="empty graph")
    c = tri_exact(g)[0]
    for x in range(g.n):
        rest, _ = g.induced([v for v in range(g.n) if v != x])
        if tri_exact(rest)[0] >= c:
            return _report("tri-critical", g, VACUOUS, reason=f"deleting {x} keeps tri = {c}")
    for x in range(g.n):
        if g.out_degree(x) < c - 1 or g.in_degree(x) < c - 1:
            return _report("tri-critical", g, VIOLATED,
                           {"vertex": x, "out": g.out_degree(x), "in": g.in_degree(x)}, c=c)
    return _report("tri-critical", g, HOLDS, c=c)


# -- informational --------------------------------------------------------------

def remark_strong_p21(g: OrientedGraph) -> dict:
    """Whether a strong P+(2,1)-free graph is a bipartite tournament or an
    extension of a directed cycle.  Reports only; never raises on a mismatch."""
    out: dict = {"strong": is_strong(g), "p21_free": find_induced(g, PPLUS21) is None}
    side = _bipartition(g)
    complete = False
    if side is not None:
        left = [v for v in range(g.n) if side[v] == 0]
        right = [v for v in range(g.n) if side[v] == 1]
        complete = all(g.adjacent(u, v) for u in left for v in right)
    out["bipartite_tournament"] = complete
    out["cycle_extension"] = None
    for q in range(3, g.n + 1):
        if is_extension_of(g, families.directed_cycle(q)) is not None:
            out["cycle_extension"] = q
            break
    out["fits"] = out["bipartite_tournament"] or out["cycle_extension"] is not None
    return out


def _bipartition(g: OrientedGraph):
    from .coloring import two_coloring

    side, cycle = two_coloring(g)
    if cycle is not None or not is_connected(g):
        return None
    return side


__all__ = [
    "CheckReport", "SkkConstants", "Hypergraph", "HOLDS", "VIOLATED", "NOT_IN_CLASS", "VACUOUS",
    "check_erdos_moser", "check_nbr_lemma", "check_comb_lemma", "comb_threshold",
    "comb_preconditions", "random_comb_family", "skk_constants", "check_ppk1", "ppk1_triples", "check_odd_hole_lemmas",
    "check_tchi_bound", "check_star_triangle_bound", "check_s11_structure",
    "check_tree_all_orientations", "spider8", "remark_strong_p21", "fingerprint",
    "erdos_moser_bound", "UNTESTABLE_AT_DESK_SCALE", "check_p4_pair", "check_critical",
    "is_critical", "check_tri_critical",
]
