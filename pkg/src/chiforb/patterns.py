"""Induced-subdigraph detection and the clique-type oracles.

Every detector returns the lexicographically least embedding, read as the
tuple of host images ``(f(0), f(1), ...)`` of the pattern vertices.  The
hand-written detectors for the small patterns and the generic backtracking
search therefore return identical results, which the test-suite checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator, Sequence

from . import families, limits
from ._match import induced_embeddings
from .digraph import OrientedGraph, bits, mask_of, popcount
from .errors import BadTau, NotDisjoint, NotStable, PatternTooLarge, TooLarge


# -- pattern kinds ---------------------------------------------------------------

@dataclass(frozen=True)
class PatternKind:
    tag: str
    params: tuple[int, ...] = ()
    custom: OrientedGraph | None = field(default=None, compare=True)

    # constructors
    @classmethod
    def tt(cls, n: int) -> "PatternKind":
        return cls("TT", (n,))

    @classmethod
    def cycle(cls, n: int) -> "PatternKind":
        return cls("DirectedCycle", (n,))

    @classmethod
    def star(cls, k: int, l: int) -> "PatternKind":
        return cls("Star", (k, l))

    @classmethod
    def dk(cls, n: int) -> "PatternKind":
        return cls("DK", (n,))

    @classmethod
    def of(cls, graph: OrientedGraph) -> "PatternKind":
        return cls("Custom", (), graph)

    @property
    def graph(self) -> OrientedGraph:
        if self.tag == "Custom":
            return self.custom
        return _builtin_graph(self.tag, self.params)

    @property
    def order(self) -> int:
        if self.tag in ("TT", "DirectedCycle"):
            return self.params[0]
        if self.tag == "Star":
            return self.params[0] + self.params[1] + 1
        if self.tag == "DK":
            return 2 * self.params[0]
        if self.tag == "Custom":
            return self.custom.n
        return 4

    @property
    def name(self) -> str:
        t, p = self.tag, self.params
        if t == "TT":
            return f"TT{p[0]}"
        if t == "DirectedCycle":
            return f"C{p[0]}"
        if t == "Star":
            return f"S{p[0]},{p[1]}"
        if t == "DK":
            return f"DK{p[0]},{p[0]}"
        return {
            "Pplus3": "P+(3)",
            "Pplus21": "P+(2,1)",
            "Pminus21": "P-(2,1)",
            "Pplus111": "P+(1,1,1)",
            "C31": "C(3,1)",
            "C22": "C(2,2)",
            "Custom": "custom",
        }[t]

    def __str__(self):
        return self.name


TT3 = PatternKind.tt(3)
C3 = PatternKind.cycle(3)
PPLUS3 = PatternKind("Pplus3")
PPLUS21 = PatternKind("Pplus21")
PMINUS21 = PatternKind("Pminus21")
PPLUS111 = PatternKind("Pplus111")
C31 = PatternKind("C31")
C22 = PatternKind("C22")
S11 = PatternKind.star(1, 1)


@lru_cache(maxsize=None)
def _builtin_graph(tag: str, params: tuple[int, ...]) -> OrientedGraph:
    if tag == "TT":
        return families.transitive_tournament(params[0])
    if tag == "DirectedCycle":
        return families.directed_cycle(params[0])
    if tag == "Star":
        return families.star(*params)
    if tag == "DK":
        return families.complete_bipartite_one_way(params[0])
    if tag == "Pplus3":
        return families.oriented_path([3])
    if tag == "Pplus21":
        return families.oriented_path([2, 1])
    if tag == "Pminus21":
        return families.oriented_path([2, 1], "-")
    if tag == "Pplus111":
        return families.oriented_path([1, 1, 1])
    if tag == "C31":
        return families.c31()
    if tag == "C22":
        return families.c22()
    raise ValueError(f"unknown pattern tag {tag!r}")


def parse_pattern(text: str) -> PatternKind:
    """Parse a CLI pattern name (``tt3``, ``c5``, ``s2-2``, ``p21+``, ``custom:f.json`` ...)."""
    s = text.strip()
    low = s.lower()
    fixed = {
        "p3+": PPLUS3,
        "p21+": PPLUS21,
        "p21-": PMINUS21,
        "p111+": PPLUS111,
        "c31": C31,
        "c22": C22,
    }
    if low in fixed:
        return fixed[low]
    if low.startswith("custom:"):
        with open(s[len("custom:"):]) as fh:
            return PatternKind.of(OrientedGraph.from_dict(json.load(fh)))
    try:
        if low.startswith("tt"):
            return PatternKind.tt(int(low[2:]))
        if low.startswith("dk"):
            return PatternKind.dk(int(low[2:]))
        if low.startswith("c"):
            return PatternKind.cycle(int(low[1:]))
        if low.startswith("s") and "-" in low:
            k, l = low[1:].split("-", 1)
            return PatternKind.star(int(k), int(l))
    except ValueError:
        pass
    raise ValueError(f"unknown pattern name {text!r}")


def parse_patterns(text: str) -> list[PatternKind]:
    return [parse_pattern(t) for t in text.split(",") if t.strip()]


# -- embeddings ----------------------------------------------------------------------

@dataclass(frozen=True)
class Embedding:
    pattern: PatternKind
    map: tuple[int, ...]

    def verify(self, host: OrientedGraph) -> bool:
        """Direct check of injectivity and the induced condition."""
        g = self.pattern.graph
        if len(self.map) != g.n or len(set(self.map)) != g.n:
            return False
        for i in range(g.n):
            for j in range(g.n):
                if i != j and g.has_arc(i, j) != host.has_arc(self.map[i], self.map[j]):
                    return False
        return True

    def image_arcs(self) -> list[tuple[int, int]]:
        f = self.map
        return sorted((f[u], f[v]) for u, v in self.pattern.graph.arcs)

    def to_dict(self) -> dict:
        return {"pattern": self.pattern.name, "map": list(self.map)}


def _check_pattern(pattern: PatternKind) -> None:
    if pattern.order > limits.PATTERN_CAP:
        raise PatternTooLarge(
            f"pattern {pattern.name} has {pattern.order} vertices (cap {limits.PATTERN_CAP})"
        )


def find_induced_generic(host: OrientedGraph, pattern: PatternKind) -> Embedding | None:
    _check_pattern(pattern)
    for emb in induced_embeddings(host, pattern.graph):
        return Embedding(pattern, emb)
    return None


def iter_induced(host: OrientedGraph, pattern: PatternKind) -> Iterator[Embedding]:
    _check_pattern(pattern)
    for emb in induced_embeddings(host, pattern.graph):
        yield Embedding(pattern, emb)


def find_induced(host: OrientedGraph, pattern: PatternKind) -> Embedding | None:
    """Lexicographically least induced embedding of ``pattern`` in ``host``."""
    _check_pattern(pattern)
    special = SPECIALIZED.get(pattern.tag)
    if special is not None:
        hit = special(host, pattern.params)
        return None if hit is None else Embedding(pattern, hit)
    return find_induced_generic(host, pattern)


def is_f_free(host: OrientedGraph, forbidden: Iterable[PatternKind]) -> tuple[bool, Embedding | None]:
    """``(True, None)`` if no member embeds, else ``(False, first witness)``."""
    for pattern in forbidden:
        emb = find_induced(host, pattern)
        if emb is not None:
            return False, emb
    return True, None


# -- specialised detectors ---------------------------------------------------------
#
# Written as explicit nested loops over the pattern's vertices in label order;
# each loop scans candidates in increasing order, so the first hit is the
# lexicographically least embedding.

def _not(g: OrientedGraph, *vs: int) -> int:
    m = g.all_mask
    for v in vs:
        m &= ~(g.adj(v) | (1 << v))
    return m


def _tt3(g: OrientedGraph, params) -> tuple | None:
    for a in range(g.n):
        for b in bits(g.out[a]):
            c = g.out[a] & g.out[b]
            if c:
                return (a, b, (c & -c).bit_length() - 1)
    return None


def _c3(g: OrientedGraph, params) -> tuple | None:
    for a in range(g.n):
        for b in bits(g.out[a]):
            c = g.out[b] & g.inc[a]
            if c:
                return (a, b, (c & -c).bit_length() - 1)
    return None


def _p3plus(g: OrientedGraph, params) -> tuple | None:
    # 0 -> 1 -> 2 -> 3
    for a in range(g.n):
        for b in bits(g.out[a]):
            for c in bits(g.out[b] & _not(g, a)):
                d = g.out[c] & _not(g, a, b)
                if d:
                    return (a, b, c, (d & -d).bit_length() - 1)
    return None


def _p21plus(g: OrientedGraph, params) -> tuple | None:
    # 0 -> 1 -> 2 <- 3
    for a in range(g.n):
        for b in bits(g.out[a]):
            for c in bits(g.out[b] & _not(g, a)):
                d = g.inc[c] & _not(g, a, b)
                if d:
                    return (a, b, c, (d & -d).bit_length() - 1)
    return None


def _p21minus(g: OrientedGraph, params) -> tuple | None:
    # 0 <- 1 <- 2 -> 3
    for a in range(g.n):
        for b in bits(g.inc[a]):
            for c in bits(g.inc[b] & _not(g, a)):
                d = g.out[c] & _not(g, a, b)
                if d:
                    return (a, b, c, (d & -d).bit_length() - 1)
    return None


def _p111plus(g: OrientedGraph, params) -> tuple | None:
    # 0 -> 1 <- 2 -> 3
    for a in range(g.n):
        for b in bits(g.out[a]):
            for c in bits(g.inc[b] & _not(g, a)):
                d = g.out[c] & _not(g, a, b)
                if d:
                    return (a, b, c, (d & -d).bit_length() - 1)
    return None


def _stable_choices(g: OrientedGraph, cand: int, size: int) -> Iterator[tuple[int, ...]]:
    """Increasing tuples of ``size`` pairwise non-adjacent vertices from ``cand``, in lex order."""
    if size == 0:
        yield ()
        return
    for v in bits(cand):
        rest = cand & ~((1 << (v + 1)) - 1) & ~g.adj(v)
        if popcount(rest) < size - 1:
            continue
        for tail in _stable_choices(g, rest, size - 1):
            yield (v,) + tail


def _star(g: OrientedGraph, params) -> tuple | None:
    k, l = params
    for c in range(g.n):
        if popcount(g.inc[c]) < k or popcount(g.out[c]) < l:
            continue
        for ins in _stable_choices(g, g.inc[c], k):
            allowed = g.out[c]
            for v in ins:
                allowed &= ~g.adj(v)
            for outs in _stable_choices(g, allowed, l):
                return (c,) + ins + outs
    return None


SPECIALIZED: dict[str, Callable] = {
    "Pplus3": _p3plus,
    "Pplus21": _p21plus,
    "Pminus21": _p21minus,
    "Pplus111": _p111plus,
    "Star": _star,
}


def _tt_dispatch(g, params):
    if params[0] == 3:
        return _tt3(g, params)
    emb = find_induced_generic(g, PatternKind.tt(params[0]))
    return None if emb is None else emb.map


def _cycle_dispatch(g, params):
    if params[0] == 3:
        return _c3(g, params)
    emb = find_induced_generic(g, PatternKind.cycle(params[0]))
    return None if emb is None else emb.map


SPECIALIZED["TT"] = _tt_dispatch
SPECIALIZED["DirectedCycle"] = _cycle_dispatch


# -- clique-type oracles ------------------------------------------------------------

def max_transitive_subtournament(g: OrientedGraph) -> list[int]:
    """Vertices of a largest transitive tournament, listed source first."""
    best: list[int] = []
    chosen: list[int] = []

    def grow(cand: int):
        nonlocal best
        if len(chosen) + popcount(cand) <= len(best):
            return
        if not cand:
            best = list(chosen)
            return
        # no sibling exclusion: v may still sit below a later sibling, and the
        # order inside a transitive set is forced, so each set is visited once
        for v in bits(cand):
            chosen.append(v)
            grow(cand & g.out[v])
            chosen.pop()

    grow(g.all_mask)
    return best


def trans_number(g: OrientedGraph) -> int:
    """Order of a largest transitive tournament in ``g``."""
    return len(max_transitive_subtournament(g))


def max_clique(g: OrientedGraph) -> list[int]:
    adj = [g.adj(v) for v in range(g.n)]
    best: list[int] = []
    chosen: list[int] = []

    def expand(cand: int):
        nonlocal best
        if not cand:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        while cand:
            if len(chosen) + popcount(cand) <= len(best):
                return
            v = (cand & -cand).bit_length() - 1
            chosen.append(v)
            expand(cand & adj[v])
            chosen.pop()
            cand &= ~(1 << v)

    expand(g.all_mask)
    return best


def clique_number(g: OrientedGraph) -> int:
    """Clique number of the underlying graph."""
    return len(max_clique(g))


# -- odd holes -------------------------------------------------------------------------

@dataclass(frozen=True)
class HoleCertificate:
    """An induced cycle of length >= 4, listed in cyclic order.

    When the hole is directed the listing follows the arcs.
    """

    cycle: tuple[int, ...]
    directed: bool

    @property
    def length(self) -> int:
        return len(self.cycle)

    def verify(self, g: OrientedGraph) -> bool:
        c = self.cycle
        q = len(c)
        if q < 4 or len(set(c)) != q:
            return False
        for i in range(q):
            for j in range(i + 1, q):
                consecutive = j == i + 1 or (i == 0 and j == q - 1)
                if g.adjacent(c[i], c[j]) != consecutive:
                    return False
        fwd = all(g.has_arc(c[i], c[(i + 1) % q]) for i in range(q))
        return fwd == self.directed

    def to_dict(self) -> dict:
        return {"cycle": list(self.cycle), "directed": self.directed}


def _certificate(g: OrientedGraph, cycle: Sequence[int]) -> HoleCertificate:
    q = len(cycle)
    fwd = all(g.has_arc(cycle[i], cycle[(i + 1) % q]) for i in range(q))
    if not fwd:
        rev = (cycle[0],) + tuple(reversed(cycle[1:]))
        if all(g.has_arc(rev[i], rev[(i + 1) % q]) for i in range(q)):
            return HoleCertificate(rev, True)
    return HoleCertificate(tuple(cycle), fwd)


def iter_holes(g: OrientedGraph, *, odd_only: bool = True, min_length: int = 5) -> Iterator[HoleCertificate]:
    """Enumerate induced cycles of the underlying graph, each exactly once.

    Each cycle is generated from its minimum vertex ``s`` as an induced path
    ``s, p1, ..., pm`` over vertices larger than ``s`` with ``p1 < pm``.
    """
    if g.n > limits.exact_cap():
        raise TooLarge(f"{g.n} vertices exceeds the exact cap {limits.exact_cap()}")
    adj = [g.adj(v) for v in range(g.n)]
    for s in range(g.n):
        above = g.all_mask & ~((1 << (s + 1)) - 1)
        path = [s]

        def walk(blocked: int):
            # blocked: path vertices other than the last, and every neighbour of
            # an internal path vertex; neighbours of s are handled as closers
            last = path[-1]
            for w in bits(adj[last] & above & ~blocked):
                if adj[w] >> s & 1:
                    length = len(path) + 1
                    if length >= 3 and path[1] < w and length >= min_length and (
                        not odd_only or length % 2 == 1
                    ):
                        yield _certificate(g, path + [w])
                    continue
                path.append(w)
                yield from walk(blocked | adj[last] | (1 << last))
                path.pop()

        for p1 in bits(adj[s] & above):
            path.append(p1)
            yield from walk(1 << s)
            path.pop()


def find_odd_hole(g: OrientedGraph) -> HoleCertificate | None:
    """An induced odd cycle of length >= 5 of the underlying graph, or ``None``."""
    for hole in iter_holes(g):
        return hole
    return None


# -- bipartite relations --------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteRelation:
    A: frozenset
    B: frozenset
    k: int
    tau: Fraction | float | None = None

    @classmethod
    def make(cls, A: Iterable[int], B: Iterable[int], k: int, tau=None) -> "BipartiteRelation":
        return cls(frozenset(A), frozenset(B), k, tau)


def _validate_relation(g: OrientedGraph, rel: BipartiteRelation) -> None:
    if rel.A & rel.B:
        raise NotDisjoint(f"A and B share {sorted(rel.A & rel.B)}")
    for name, part in (("A", rel.A), ("B", rel.B)):
        m = mask_of(part)
        for v in sorted(part):
            hit = g.out[v] & m
            if hit:
                raise NotStable(name, (v, (hit & -hit).bit_length() - 1))


def anti_biclique(g: OrientedGraph, A: Iterable[int], B: Iterable[int], k: int):
    """``k`` vertices of ``A`` and ``k`` of ``B`` with no arc between them, or ``None``."""
    A = sorted(A)
    bmask = mask_of(B)
    if k <= 0:
        return ((), ())
    if len(A) < k or popcount(bmask) < k:
        return None
    for subset in combinations(A, k):
        free = bmask
        for a in subset:
            free &= ~g.adj(a)
        if popcount(free) >= k:
            return (subset, tuple(list(bits(free))[:k]))
    return None


def backward_arc(g: OrientedGraph, A: Iterable[int], B: Iterable[int]):
    amask = mask_of(A)
    for b in sorted(B):
        hit = g.out[b] & amask
        if hit:
            return (b, (hit & -hit).bit_length() - 1)
    return None


def rs_check(g: OrientedGraph, rel: BipartiteRelation) -> bool:
    """``A ->> B``: every cross arc goes from A to B and no k-by-k anti-biclique exists."""
    _validate_relation(g, rel)
    if backward_arc(g, rel.A, rel.B) is not None:
        return False
    return anti_biclique(g, rel.A, rel.B, rel.k) is None


def rs_tau_check(g: OrientedGraph, rel: BipartiteRelation) -> bool:
    """``A ->>_tau B``: ``rs_check`` plus minimum cross-degree ``tau`` on both sides."""
    tau = rel.tau
    if tau is None or not (0 < tau < 1):
        raise BadTau(f"tau must lie in (0, 1), got {tau}")
    if not rs_check(g, rel):
        return False
    return tau_degrees_ok(g, rel.A, rel.B, tau)


def tau_degrees_ok(g: OrientedGraph, A, B, tau) -> bool:
    amask, bmask = mask_of(A), mask_of(B)
    nA, nB = popcount(amask), popcount(bmask)
    tau = Fraction(tau) if not isinstance(tau, float) else tau
    for a in bits(amask):
        if popcount(g.out[a] & bmask) < tau * nB:
            return False
    for b in bits(bmask):
        if popcount(g.inc[b] & amask) < tau * nA:
            return False
    return True
