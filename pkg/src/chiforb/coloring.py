"""Exact chromatic oracles and the constructive colouring procedures.

Every procedure returns a :class:`Coloring` that has been certified by a
direct scan before it is handed back.  Inputs outside the procedure's class
raise :class:`NotInClass`; a failed structural claim on a class member raises
:class:`StructureViolation` carrying the instance.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import families, limits
from .digraph import (
    OrientedGraph,
    bits,
    is_connected,
    is_extension_of,
    is_strong,
    layers,
    mask_of,
    popcount,
    scc,
    weak_components,
)
from .errors import NotInClass, OddCycleFound, StructureViolation, TooLarge
from .patterns import (
    C3,
    PPLUS21,
    S11,
    TT3,
    HoleCertificate,
    PatternKind,
    clique_number,
    find_induced,
    find_odd_hole,
    is_f_free,
    trans_number,
)

PROPER = "proper"
TRIANGLE_FREE = "triangle-free"
DIRECTED_TRIANGLE_FREE = "directed-triangle-free"
MODES = (PROPER, TRIANGLE_FREE, DIRECTED_TRIANGLE_FREE)


def directed_triangles(g: OrientedGraph) -> list[tuple[int, int, int]]:
    """Underlying triangles that are directed 3-cycles."""
    out = []
    for a, b, c in g.triangles():
        if (g.has_arc(a, b) and g.has_arc(b, c) and g.has_arc(c, a)) or (
            g.has_arc(b, a) and g.has_arc(c, b) and g.has_arc(a, c)
        ):
            out.append((a, b, c))
    return out


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    mode: str = PROPER

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    def conflicts(self, g: OrientedGraph) -> list:
        """Monochromatic arcs (proper mode) or triangles (triangle-free mode)."""
        c = self.colors
        if self.mode == PROPER:
            return [(u, v) for u, v in g.arcs if c[u] == c[v]]
        tris = g.triangles() if self.mode == TRIANGLE_FREE else directed_triangles(g)
        return [t for t in tris if c[t[0]] == c[t[1]] == c[t[2]]]

    def is_valid(self, g: OrientedGraph) -> bool:
        return len(self.colors) == g.n and not self.conflicts(g)

    def to_dict(self) -> dict:
        return {"num_colors": self.num_colors, "colors": list(self.colors), "mode": self.mode}

    @classmethod
    def from_dict(cls, data: dict) -> "Coloring":
        if data.get("mode", PROPER) not in MODES:
            raise ValueError(f"unknown colouring mode {data.get('mode')!r}")
        return cls(tuple(int(x) for x in data["colors"]), data.get("mode", PROPER))


def _certified(g: OrientedGraph, colors: Sequence[int], claim: str, mode: str = PROPER) -> Coloring:
    col = Coloring(tuple(colors), mode)
    bad = col.conflicts(g)
    if len(col.colors) != g.n or bad:
        raise StructureViolation(claim, g, {"conflicts": bad[:5], "colors": list(colors)})
    return col


def _require_free(g: OrientedGraph, forbidden: Iterable[PatternKind]) -> None:
    free, emb = is_f_free(g, forbidden)
    if not free:
        raise NotInClass(f"contains an induced {emb.pattern.name}", emb.map)


def _check_cap(g: OrientedGraph) -> None:
    cap = limits.exact_cap()
    if g.n > cap:
        raise TooLarge(f"{g.n} vertices exceeds the exact cap {cap}")


# -- exact chromatic number -----------------------------------------------------

def _adjacency(g: OrientedGraph) -> list[int]:
    return [g.adj(v) for v in range(g.n)]


def greedy_dsatur(g: OrientedGraph) -> list[int]:
    adj = _adjacency(g)
    n = g.n
    colors = [-1] * n
    nbr_colors = [0] * n
    deg = [popcount(a) for a in adj]
    uncolored = set(range(n))
    while uncolored:
        v = min(uncolored, key=lambda u: (-popcount(nbr_colors[u]), -deg[u], u))
        c = 0
        while nbr_colors[v] >> c & 1:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        for w in bits(adj[v]):
            nbr_colors[w] |= 1 << c
    return colors


class _DsaturSearch:
    """DSATUR-ordered backtracking deciding k-colourability."""

    def __init__(self, g: OrientedGraph):
        self.n = g.n
        self.adj = _adjacency(g)
        self.deg = [popcount(a) for a in self.adj]
        self.nodes = 0

    def colorable(self, k: int) -> list[int] | None:
        n, adj, deg = self.n, self.adj, self.deg
        colors = [-1] * n
        classes = [0] * k
        state = {"uncolored": (1 << n) - 1}

        def pick(used: int) -> int:
            best, best_key = -1, None
            for v in bits(state["uncolored"]):
                sat = 0
                for c in range(used):
                    if adj[v] & classes[c]:
                        sat += 1
                key = (sat, deg[v])
                if best_key is None or key > best_key:
                    best, best_key = v, key
            return best

        def rec(used: int) -> bool:
            if not state["uncolored"]:
                return True
            self.nodes += 1
            v = pick(used)
            state["uncolored"] &= ~(1 << v)
            for c in range(min(used + 1, k)):
                if adj[v] & classes[c]:
                    continue
                colors[v] = c
                classes[c] |= 1 << v
                if rec(max(used, c + 1)):
                    return True
                classes[c] &= ~(1 << v)
            colors[v] = -1
            state["uncolored"] |= 1 << v
            return False

        return colors if rec(0) else None


def chi_exact(g: OrientedGraph, stats: dict | None = None) -> tuple[int, Coloring]:
    """Chromatic number of the underlying graph with a witnessing colouring.

    Lower bound from the clique number, upper bound from greedy DSATUR; every
    value in between is decided by exhaustive DSATUR backtracking.  ``stats``
    (if given) receives the search-node count and the refuted colour count.
    """
    _check_cap(g)
    if g.n == 0:
        return 0, Coloring(())
    greedy = greedy_dsatur(g)
    ub = max(greedy) + 1
    lb = max(1, clique_number(g))
    search = _DsaturSearch(g)
    best = greedy
    chi = ub
    for k in range(lb, ub):
        found = search.colorable(k)
        if found is not None:
            best, chi = found, k
            break
    if stats is not None:
        stats.update(nodes=search.nodes, lower_bound=lb, greedy=ub, refuted=chi - 1)
    return chi, _certified(g, best, "chi_exact")


def is_k_colorable(g: OrientedGraph, k: int) -> bool:
    _check_cap(g)
    if g.n == 0:
        return True
    if k <= 0:
        return False
    return _DsaturSearch(g).colorable(k) is not None


# -- triangle-free colourings -----------------------------------------------------

def tri_exact(g: OrientedGraph, triangles: str = "underlying") -> tuple[int, Coloring]:
    """Least number of colours with no monochromatic triangle.

    ``triangles="underlying"`` counts every triangle of the underlying graph;
    ``"directed"`` only directed 3-cycles.  On TT3-free graphs they coincide.
    """
    _check_cap(g)
    if triangles not in ("underlying", "directed"):
        raise ValueError(f"unknown triangle kind {triangles!r}")
    mode = TRIANGLE_FREE if triangles == "underlying" else DIRECTED_TRIANGLE_FREE
    if g.n == 0:
        return 0, Coloring((), mode)
    tris = g.triangles() if triangles == "underlying" else directed_triangles(g)
    pairs: list[list[int]] = [[] for _ in range(g.n)]
    for a, b, c in tris:
        pairs[a].append((1 << b) | (1 << c))
        pairs[b].append((1 << a) | (1 << c))
        pairs[c].append((1 << a) | (1 << b))
    active = sorted((v for v in range(g.n) if pairs[v]), key=lambda v: (-len(pairs[v]), v))
    if not active:
        return 1, _certified(g, [0] * g.n, "tri_exact", mode)

    def attempt(k: int) -> list[int] | None:
        colors = [0] * g.n
        classes = [0] * k

        def rec(i: int, used: int) -> bool:
            if i == len(active):
                return True
            v = active[i]
            for c in range(min(used + 1, k)):
                cls = classes[c]
                if any(cls & pm == pm for pm in pairs[v]):
                    continue
                colors[v] = c
                classes[c] |= 1 << v
                if rec(i + 1, max(used, c + 1)):
                    return True
                classes[c] &= ~(1 << v)
            return False

        return colors if rec(0, 0) else None

    k = 2
    while True:
        found = attempt(k)
        if found is not None:
            return k, _certified(g, found, "tri_exact", mode)
        k += 1


@dataclass(frozen=True)
class GraphInvariants:
    chi: int
    omega: int
    trans: int
    tri: int

    def __post_init__(self):
        assert self.omega <= self.chi and self.tri <= self.chi and self.trans <= self.omega

    def to_dict(self) -> dict:
        return {"chi": self.chi, "omega": self.omega, "trans": self.trans, "tri": self.tri}


def graph_invariants(g: OrientedGraph) -> GraphInvariants:
    return GraphInvariants(
        chi=chi_exact(g)[0], omega=clique_number(g), trans=trans_number(g), tri=tri_exact(g)[0]
    )


# -- bipartite graphs -------------------------------------------------------------

def two_coloring(g: OrientedGraph, vertices: Iterable[int] | None = None):
    """BFS 2-colouring of the underlying graph on ``vertices``.

    Returns ``(colors, None)`` with ``colors`` a dict, or ``(None, odd_cycle)``.
    """
    keep = set(range(g.n)) if vertices is None else set(vertices)
    kmask = mask_of(keep)
    side: dict[int, int] = {}
    parent: dict[int, int] = {}
    for s in sorted(keep):
        if s in side:
            continue
        side[s] = 0
        parent[s] = -1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in bits(g.adj(u) & kmask):
                if w not in side:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    return None, _odd_cycle(parent, u, w)
    return side, None


def _odd_cycle(parent: dict[int, int], u: int, w: int) -> list[int]:
    def chain(x):
        out = [x]
        while parent[x] != -1:
            x = parent[x]
            out.append(x)
        return out

    pu, pw = chain(u), chain(w)
    in_pw = set(pw)
    lca = next(x for x in pu if x in in_pw)
    left = pu[: pu.index(lca) + 1]
    right = pw[: pw.index(lca)]
    return left + list(reversed(right))


def color_bipartite_no_odd_cycle(g: OrientedGraph) -> Coloring:
    side, cycle = two_coloring(g)
    if cycle is not None:
        raise OddCycleFound(cycle)
    if g.m == 0:
        return _certified(g, [0] * g.n, "bipartite colouring")
    return _certified(g, [side[v] for v in range(g.n)], "bipartite colouring")


# -- (TT3, S_{0,2})-free: converse of a functional digraph ----------------------------

def color_out_star_free(g: OrientedGraph) -> Coloring:
    """Colour a graph whose vertices all have out-degree at most one with <= 3 colours.

    Each weak component has at most one directed cycle; it is coloured first
    (alternating, a third colour closing an odd cycle) and the colouring is
    pushed outward along the in-trees hanging off it.
    """
    for v in range(g.n):
        if g.out_degree(v) > 1:
            a, b = g.out_neighbors(v)[:2]
            pattern = "TT3" if g.adjacent(a, b) else "S0,2"
            raise NotInClass(f"vertex {v} has out-degree {g.out_degree(v)} (contains {pattern})", v)
    succ = [next(bits(g.out[v]), -1) for v in range(g.n)]
    colors = [-1] * g.n
    for comp in weak_components(g):
        # walk successors from the minimum vertex until a repeat or a sink
        v, seen = comp[0], []
        on_walk: dict[int, int] = {}
        while v != -1 and v not in on_walk:
            on_walk[v] = len(seen)
            seen.append(v)
            v = succ[v]
        if v == -1:
            roots = [seen[-1]]
            colors[roots[0]] = 0
        else:
            cycle = seen[on_walk[v]:]
            for i, x in enumerate(cycle):
                colors[x] = i % 2
            if len(cycle) % 2:
                colors[cycle[-1]] = 2
            roots = cycle
        queue = deque(roots)
        while queue:
            u = queue.popleft()
            for w in bits(g.inc[u]):
                if colors[w] == -1:
                    colors[w] = 1 if colors[u] == 0 else 0
                    queue.append(w)
    return _certified(g, colors, "out-star-free colouring")


# -- (TT3, S_{1,1})-free ---------------------------------------------------------------

def color_s11(g: OrientedGraph) -> Coloring:
    """Colour a connected (TT3, S1,1)-free graph: by sources and sinks when it has
    no directed triangle, else by the classes of its extension of C3."""
    if g.n == 0:
        return Coloring(())
    if not is_connected(g):
        raise NotInClass("not connected", weak_components(g))
    _require_free(g, [TT3, S11])
    if find_induced(g, C3) is None:
        # every vertex is a source or a sink, which need not make the graph
        # complete bipartite (1->0<-3->2<-4), so colour by that split directly
        witness = is_extension_of(g, families.transitive_tournament(2))
        if witness is None:
            return _certified(g, [0 if g.out[v] else 1 for v in range(g.n)], "sources and sinks")
        owner = witness.class_of()
        return _certified(g, [owner[v] for v in range(g.n)], "extension of TT2")
    claim = "extension of C3"
    witness = is_extension_of(g, families.directed_cycle(3))
    if witness is None:
        raise StructureViolation(claim, g, "no extension found")
    owner = witness.class_of()
    return _certified(g, [owner[v] for v in range(g.n)], claim)


# -- (C3, TT3, P+(2,1))-free -------------------------------------------------------------

@dataclass(frozen=True)
class TwinPartition:
    """``classes[i]`` is hole vertex ``i`` together with its twins (host labels)."""

    hole: tuple[int, ...]
    classes: tuple[frozenset, ...]


def twin_partition(g: OrientedGraph, component: Iterable[int], hole: Sequence[int]) -> TwinPartition:
    q = len(hole)
    pos = {v: i for i, v in enumerate(hole)}
    hmask = mask_of(hole)
    classes: list[set[int]] = [{v} for v in hole]
    for x in sorted(component):
        if x in pos:
            continue
        ins = [pos[v] for v in bits(g.inc[x] & hmask)]
        outs = [pos[v] for v in bits(g.out[x] & hmask)]
        if len(ins) != 1 or len(outs) != 1 or (outs[0] - ins[0]) % q != 2:
            raise StructureViolation(
                "every vertex of the strong component is a twin of a hole vertex",
                g,
                {"vertex": x, "hole": list(hole), "in": ins, "out": outs},
            )
        classes[(ins[0] + 1) % q].add(x)
    owner = {v: i for i, cls in enumerate(classes) for v in cls}
    for u, v in g.arcs:
        if u in owner and v in owner and (owner[u] - owner[v]) % q not in (1, q - 1):
            raise StructureViolation(
                "arcs join only consecutive twin classes", g, {"arc": (u, v), "hole": list(hole)}
            )
    return TwinPartition(tuple(hole), tuple(frozenset(c) for c in classes))


def color_c3_tt3_p21(g: OrientedGraph) -> Coloring:
    """3-colour a (C3, TT3, P+(2,1))-free graph.

    One twin class per initial strong component with a directed odd hole forms
    a stable set meeting every odd hole; it takes the third colour and the rest
    is 2-coloured.
    """
    _require_free(g, [C3, TT3, PPLUS21])
    dec = scc(g)
    stable: set[int] = set()
    for comp, initial in zip(dec.components, dec.initial):
        if len(comp) < 5:
            continue
        sub, back = g.induced(comp)
        hole = find_odd_hole(sub)
        if hole is None:
            continue
        cycle = [back[v] for v in hole.cycle]
        if not hole.directed:
            raise StructureViolation("every odd hole is directed", g, cycle)
        if not initial:
            raise StructureViolation("odd holes lie in initial strong components", g, cycle)
        stable |= twin_partition(g, comp, cycle).classes[0]
    if not g.is_stable(stable):
        raise StructureViolation("the chosen hitting set is stable", g, sorted(stable))
    rest = set(range(g.n)) - stable
    side, cycle = two_coloring(g, rest)
    if cycle is not None:
        raise StructureViolation("removing the hitting set leaves a bipartite graph", g, cycle)
    colors = [2 if v in stable else side[v] for v in range(g.n)]
    return _certified(g, colors, "(C3, TT3, P+(2,1)) colouring")


# -- strong (TT3, P+(2,1))-free graphs with an odd hole ------------------------------------

def _validate_strong_hole(g: OrientedGraph, hole: HoleCertificate) -> None:
    if not is_strong(g):
        raise NotInClass("not strongly connected")
    _require_free(g, [TT3, PPLUS21])
    if not hole.verify(g):
        raise NotInClass("certificate is not an induced cycle of the graph", hole.cycle)
    if not hole.directed:
        raise NotInClass("hole is not directed", hole.cycle)
    if hole.length % 2 == 0:
        raise NotInClass(f"hole length {hole.length} is even", hole.cycle)


def color_strong_7hole(g: OrientedGraph, hole: HoleCertificate) -> Coloring:
    """3-colouring of a strong (TT3, P+(2,1))-free graph with a directed odd hole of
    length >= 7, read off its extension classes of that hole."""
    _validate_strong_hole(g, hole)
    q = hole.length
    if q < 7:
        raise NotInClass(f"hole length {q} < 7", hole.cycle)
    witness = is_extension_of(g, families.directed_cycle(q))
    if witness is None:
        raise StructureViolation("strong member with a 7+-hole is an extension of it", g, hole.cycle)
    owner = witness.class_of()
    colors = [2 if owner[v] == q - 1 else owner[v] % 2 for v in range(g.n)]
    return _certified(g, colors, "7-hole extension colouring")


@dataclass(frozen=True)
class FiveHoleClassification:
    """Positions of the outside vertices relative to a directed 5-hole.

    ``hole[i - 1]`` is the hole vertex ``v_i``; ``kind[x] = (letter, i)`` puts
    ``x`` in ``A_i``, ``B_i`` or ``C_i`` with ``i`` in ``1..5``.
    """

    hole: tuple[int, ...]
    kind: dict = field(default_factory=dict)

    def members(self, letter: str, i: int) -> frozenset:
        return frozenset(x for x, key in self.kind.items() if key == (letter, i))

    def X(self, i: int) -> frozenset:
        return frozenset(x for x, key in self.kind.items() if key[1] == i)

    def to_dict(self) -> dict:
        return {
            "hole": list(self.hole),
            "classes": {f"{letter}{i}": sorted(self.members(letter, i))
                        for letter in "ABC" for i in range(1, 6)},
        }


def _wrap5(i: int) -> int:
    return (i - 1) % 5 + 1


def classify_five_hole(g: OrientedGraph, hole: Sequence[int]) -> FiveHoleClassification:
    hole = tuple(hole)
    index = {v: i + 1 for i, v in enumerate(hole)}
    hmask = mask_of(hole)
    kind = {}
    for x in range(g.n):
        if x in index:
            continue
        ins = frozenset(index[v] for v in bits(g.inc[x] & hmask))
        outs = frozenset(index[v] for v in bits(g.out[x] & hmask))
        found = None
        for i in range(1, 6):
            prev, nxt = _wrap5(i - 1), _wrap5(i + 1)
            if ins == {prev} and outs == {nxt, _wrap5(i + 3)}:
                found = ("A", i)
            elif ins == {prev, _wrap5(i + 2)} and outs == {nxt}:
                found = ("B", i)
            elif ins == {prev} and outs == {nxt}:
                found = ("C", i)
            if found:
                break
        if found is None:
            raise StructureViolation(
                "outside vertices of a 5-hole fall in A_i, B_i or C_i",
                g,
                {"vertex": x, "in": sorted(ins), "out": sorted(outs), "hole": list(hole)},
            )
        kind[x] = found
    cls = FiveHoleClassification(hole, kind)
    for i in range(1, 6):
        if not g.is_stable(cls.X(i)):
            raise StructureViolation("each X_i is stable", g, {"i": i, "X": sorted(cls.X(i))})
    return cls


# colour (1-based, as in the construction) of each class; C_2 is decided per vertex
_PI = {
    ("A", 1): 1, ("B", 1): 1, ("C", 1): 1, ("A", 4): 1, ("B", 2): 1,
    ("A", 5): 2, ("C", 5): 2,
    ("A", 3): 3, ("B", 3): 3, ("C", 3): 3, ("B", 5): 3,
    ("A", 2): 4, ("B", 4): 4, ("C", 4): 4,
}
_PI_HOLE = {1: 1, 2: 2, 3: 3, 4: 4, 5: 2}


def five_hole_pi(cls: FiveHoleClassification, g: OrientedGraph) -> list[int]:
    """The 4-colouring (colours 0..3) prescribed for a strong graph around a 5-hole."""
    colors = [-1] * g.n
    for i, v in enumerate(cls.hole, start=1):
        colors[v] = _PI_HOLE[i] - 1
    c5 = mask_of(cls.members("C", 5))
    for x, key in cls.kind.items():
        if key == ("C", 2):
            colors[x] = (4 if g.adj(x) & c5 else 2) - 1
        else:
            colors[x] = _PI[key] - 1
    return colors


def color_strong_5hole(g: OrientedGraph, hole: HoleCertificate) -> tuple[Coloring, FiveHoleClassification]:
    _validate_strong_hole(g, hole)
    if hole.length != 5:
        raise NotInClass(f"hole length {hole.length} is not 5", hole.cycle)
    cls = classify_five_hole(g, hole.cycle)
    return _certified(g, five_hole_pi(cls, g), "5-hole colouring"), cls


# -- (TT3, P+(2,1))-free ---------------------------------------------------------------------

def color_tt3_p21(g: OrientedGraph) -> Coloring:
    """Colour a (TT3, P+(2,1))-free graph with at most 4 colours, at most 3 on every
    weak component containing an odd hole of length >= 7."""
    _require_free(g, [TT3, PPLUS21])
    colors = [0] * g.n
    for comp in weak_components(g):
        sub, back = g.induced(comp)
        for v, c in enumerate(_color_tt3_p21_connected(sub)):
            colors[back[v]] = c
    return _certified(g, colors, "(TT3, P+(2,1)) colouring")


def _color_tt3_p21_connected(d: OrientedGraph) -> list[int]:
    dec = scc(d)
    holed = []
    for comp, initial in zip(dec.components, dec.initial):
        if not initial or len(comp) < 5:
            continue
        sub, back = d.induced(comp)
        hole = find_odd_hole(sub)
        if hole is not None:
            holed.append((comp, sub, back, hole))
    if not holed:
        if find_odd_hole(d) is not None:
            raise StructureViolation("odd holes lie in initial strong components", d)
        chi, col = chi_exact(d)
        if chi > 4:
            raise StructureViolation("odd-hole-free members are 4-colourable", d, {"chi": chi})
        return list(col.colors)
    initial = dec.initial_components()
    if len(initial) > 1:
        raise StructureViolation(
            "the initial component with an odd hole is the only initial component",
            d,
            [sorted(c) for c in initial],
        )
    comp, sub, back, hole = holed[0]
    if hole.length >= 7:
        base = color_strong_7hole(sub, hole)
        palette = 3
    else:
        base, _ = color_strong_5hole(sub, hole)
        palette = 4
    colors = [-1] * d.n
    for v, c in enumerate(base.colors):
        colors[back[v]] = c

    lay = layers(d, comp)
    if lay.backward_arcs:
        raise StructureViolation("no backward arcs", d, list(lay.backward_arcs))
    if lay.unreachable:
        raise StructureViolation("every vertex is reachable from K", d, sorted(lay.unreachable))
    for i, layer in enumerate(lay.layers):
        if i >= 2 and not d.is_stable(layer):
            raise StructureViolation("layers L_i (i >= 2) are stable", d, {"layer": i})
    if len(lay.layers) > 1:
        _color_first_layer(d, lay.layers[0], lay.layers[1], colors, palette)
    for i in range(2, len(lay.layers)):
        below = mask_of(lay.layers[i - 1])
        for u in sorted(lay.layers[i]):
            seen = {colors[w] for w in bits(d.inc[u] & below)}
            if len(seen) != 1:
                raise StructureViolation(
                    "each vertex sees a single colour in the layer below",
                    d,
                    {"vertex": u, "layer": i, "colours": sorted(seen)},
                )
            (c,) = seen
            colors[u] = 1 if c == 0 else 0
    return colors


def _color_first_layer(d: OrientedGraph, L0: frozenset, L1: frozenset, colors: list[int], palette: int) -> None:
    k0 = mask_of(L0)
    k1 = mask_of(L1)
    for b in sorted(L1):
        if d.inc[b] & k1 and d.out[b] & k1:
            raise StructureViolation(
                "L1 is a disjoint union of directed bipartite graphs", d, {"vertex": b}
            )
    nbhd = {x: d.inc[x] & k0 for x in L1}
    sub, back = d.induced(L1)
    sources: set[int] = set()
    for comp in weak_components(sub):
        members = [back[v] for v in comp]
        A = [x for x in members if d.out[x] & k1 or not d.inc[x] & k1]
        B = [x for x in members if x not in A]
        if len({nbhd[x] for x in A}) > 1:
            raise StructureViolation(
                "vertices on the source side of a directed bipartite component share their L0-neighbourhood",
                d,
                {"component": members},
            )
        NA = nbhd[A[0]]
        NB = 0
        for x in B:
            NB |= nbhd[x]
        for u in bits(NA):
            if NB & ~d.adj(u):
                raise StructureViolation(
                    "N(B_i) is complete to N(A_i) in L0", d, {"component": members}
                )
        sources.update(A)

    # L1 vertices with equal L0-neighbourhood must share a colour
    groups: dict[int, list[int]] = {}
    for x in sorted(L1):
        groups.setdefault(nbhd[x], []).append(x)
    keys = sorted(groups, key=lambda N: (not any(x in sources for x in groups[N]), groups[N][0]))
    gmask = {N: mask_of(groups[N]) for N in keys}
    forbidden_by_L0 = {N: {colors[w] for w in bits(N)} for N in keys}
    neighbours = {
        N: [M for M in keys if M != N and any(d.adj(x) & gmask[M] for x in groups[N])] for N in keys
    }
    chosen: dict[int, int] = {}

    def assign(i: int) -> bool:
        if i == len(keys):
            return True
        N = keys[i]
        for c in range(palette):
            if c in forbidden_by_L0[N]:
                continue
            if any(chosen.get(M) == c for M in neighbours[N]):
                continue
            chosen[N] = c
            if assign(i + 1):
                return True
            del chosen[N]
        return False

    if not assign(0):
        raise StructureViolation("L1 admits a colouring extending L0", d, {"palette": palette})
    for N, members in groups.items():
        for x in members:
            colors[x] = chosen[N]
