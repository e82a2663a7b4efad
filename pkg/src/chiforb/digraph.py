"""Immutable oriented graphs and the structural primitives built on them.

Vertices are ``0..n-1``.  Adjacency is stored as one Python ``int`` bitset per
vertex in each direction, which keeps neighbourhood algebra (intersections,
stability tests, reach sets) cheap at the sizes the exact oracles handle.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import limits
from ._match import induced_embeddings
from .errors import (
    DigonArc,
    GraphError,
    LoopArc,
    SizeMismatch,
    TooLarge,
    UnreachableVertex,
    VertexOutOfRange,
)

Arc = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


class OrientedGraph:
    """A loop-free, digon-free directed graph.

    Instances are immutable; ``out[v]`` and ``inc[v]`` are the out- and
    in-neighbourhood bitsets of ``v``.
    """

    __slots__ = ("n", "arcs", "out", "inc", "_key")

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise SizeMismatch(f"vertex count must be non-negative, got {n}")
        if n > limits.GRAPH_CAP:
            raise TooLarge(f"{n} vertices exceeds the graph cap {limits.GRAPH_CAP}")
        out = [0] * n
        inc = [0] * n
        seen: set[Arc] = set()
        for arc in arcs:
            u, v = int(arc[0]), int(arc[1])
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRange((u, v), n)
            if u == v:
                raise LoopArc((u, v))
            if (u, v) in seen:
                continue
            if (v, u) in seen:
                raise DigonArc((u, v))
            seen.add((u, v))
            out[u] |= 1 << v
            inc[v] |= 1 << u
        self.n = n
        self.arcs: tuple[Arc, ...] = tuple(sorted(seen))
        self.out: tuple[int, ...] = tuple(out)
        self.inc: tuple[int, ...] = tuple(inc)
        self._key = (n, self.arcs)

    # -- basic queries -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, OrientedGraph) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"OrientedGraph(n={self.n}, arcs={list(self.arcs)})"

    def __len__(self):
        return self.n

    @property
    def m(self) -> int:
        return len(self.arcs)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def adj(self, v: int) -> int:
        return self.out[v] | self.inc[v]

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj(u) >> v & 1)

    def out_neighbors(self, v: int) -> list[int]:
        return list(bits(self.out[v]))

    def in_neighbors(self, v: int) -> list[int]:
        return list(bits(self.inc[v]))

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj(v)))

    def out_degree(self, v: int) -> int:
        return popcount(self.out[v])

    def in_degree(self, v: int) -> int:
        return popcount(self.inc[v])

    def degree(self, v: int) -> int:
        return popcount(self.adj(v))

    def is_stable(self, vertices: Iterable[int]) -> bool:
        m = mask_of(vertices)
        return all(not (self.adj(v) & m) for v in bits(m))

    def is_tournament(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges of the underlying graph as ``(min, max)`` pairs, sorted."""
        return sorted((min(u, v), max(u, v)) for u, v in self.arcs)

    def triangles(self) -> list[tuple[int, int, int]]:
        """Triangles of the underlying graph as increasing triples."""
        out = []
        for u in range(self.n):
            higher = self.adj(u) >> (u + 1) << (u + 1)
            for v in bits(higher):
                for w in bits(higher & self.adj(v) >> (v + 1) << (v + 1)):
                    out.append((u, v, w))
        return out

    # -- derived graphs ------------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple["OrientedGraph", list[int]]:
        """Induced subgraph on ``vertices`` (relabelled in increasing order).

        Returns the subgraph and the list mapping new labels to old ones.
        """
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        arcs = [(index[u], index[v]) for u, v in self.arcs if u in index and v in index]
        return OrientedGraph(len(keep), arcs), keep

    def remove_arc(self, arc: Arc) -> "OrientedGraph":
        return OrientedGraph(self.n, [a for a in self.arcs if a != tuple(arc)])

    def converse(self) -> "OrientedGraph":
        return OrientedGraph(self.n, [(v, u) for u, v in self.arcs])

    def relabel(self, perm: Sequence[int]) -> "OrientedGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return OrientedGraph(self.n, [(perm[u], perm[v]) for u, v in self.arcs])

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "OrientedGraph":
        extra = set(data) - {"n", "arcs"}
        if extra:
            raise GraphError(f"unexpected graph keys {sorted(extra)}; expected n and arcs")
        return cls(int(data["n"]), [tuple(a) for a in data.get("arcs", [])])

    @classmethod
    def from_json(cls, text: str) -> "OrientedGraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "D", labels: Sequence[str] | None = None) -> str:
        lines = [f"digraph {name} {{"]
        for v in range(self.n):
            if labels is None:
                lines.append(f"  {v};")
            else:
                lines.append(f'  {v} [label="{labels[v]}"];')
        for u, v in self.arcs:
            lines.append(f"  {u} -> {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def create(n: int, arcs: Iterable[Sequence[int]] = ()) -> OrientedGraph:
    return OrientedGraph(n, arcs)


def load(path) -> OrientedGraph:
    with open(path) as fh:
        return OrientedGraph.from_dict(json.load(fh))


def save(graph: OrientedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(graph.to_json() + "\n")


# -- strong components ----------------------------------------------------------

@dataclass(frozen=True)
class SccDecomposition:
    """Strong components listed in a topological order of the condensation."""

    components: tuple[frozenset, ...]
    initial: tuple[bool, ...]
    component_of: tuple[int, ...]

    def __len__(self):
        return len(self.components)

    def initial_components(self) -> list[frozenset]:
        return [c for c, flag in zip(self.components, self.initial) if flag]


def scc(graph: OrientedGraph) -> SccDecomposition:
    """Tarjan's algorithm, iterative, visiting roots and neighbours in index order."""
    n = graph.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    found: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(bits(graph.out[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(bits(graph.out[w]))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                found.append(comp)
    # Tarjan emits components in reverse topological order.
    found.reverse()
    component_of = [0] * n
    for ci, comp in enumerate(found):
        for v in comp:
            component_of[v] = ci
    initial = [True] * len(found)
    for u, v in graph.arcs:
        if component_of[u] != component_of[v]:
            initial[component_of[v]] = False
    return SccDecomposition(
        components=tuple(frozenset(c) for c in found),
        initial=tuple(initial),
        component_of=tuple(component_of),
    )


def is_strong(graph: OrientedGraph) -> bool:
    return graph.n > 0 and len(scc(graph)) == 1


def is_acyclic(graph: OrientedGraph) -> bool:
    return len(scc(graph)) == graph.n


def weak_components(graph: OrientedGraph) -> list[list[int]]:
    """Connected components of the underlying graph, each sorted, ordered by minimum."""
    seen = 0
    comps = []
    for s in range(graph.n):
        if seen >> s & 1:
            continue
        comp = reach_mask(graph, 1 << s, "both")
        seen |= comp
        comps.append(list(bits(comp)))
    return comps


def is_connected(graph: OrientedGraph) -> bool:
    return len(weak_components(graph)) <= 1


# -- reach sets -----------------------------------------------------------------

def reach_mask(graph: OrientedGraph, start: int, direction: str = "forward") -> int:
    if direction == "forward":
        nbrs = graph.out
    elif direction == "backward":
        nbrs = graph.inc
    elif direction == "both":
        nbrs = tuple(o | i for o, i in zip(graph.out, graph.inc))
    else:
        raise ValueError(f"unknown direction {direction!r}")
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= nbrs[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen


def reach(graph: OrientedGraph, sources: Iterable[int], direction: str = "forward") -> frozenset:
    """``Reach+(S)`` (forward) or ``Reach-(S)`` (backward); always contains ``S``."""
    start = mask_of(sources)
    if start >> graph.n:
        raise VertexOutOfRange((max(bits(start)), -1), graph.n)
    return frozenset(bits(reach_mask(graph, start, direction)))


# -- extensions -----------------------------------------------------------------

@dataclass(frozen=True)
class ExtensionWitness:
    """Partition of a host into classes ``V_i``, one per pattern vertex."""

    pattern: OrientedGraph
    classes: tuple[frozenset, ...]

    def class_of(self) -> dict[int, int]:
        return {v: i for i, cls in enumerate(self.classes) for v in cls}

    def validate(self, host: OrientedGraph) -> bool:
        if len(self.classes) != self.pattern.n:
            return False
        owner = self.class_of()
        if len(owner) != host.n or sum(len(c) for c in self.classes) != host.n:
            return False
        if set(owner) != set(range(host.n)):
            return False
        expected = {
            (x, y)
            for i, j in self.pattern.arcs
            for x in self.classes[i]
            for y in self.classes[j]
        }
        return expected == set(host.arcs)


def blow_up(graph: OrientedGraph, sizes: Sequence[int]) -> tuple[OrientedGraph, ExtensionWitness]:
    """Replace vertex ``i`` by a stable set of ``sizes[i]`` vertices (consecutive labels)."""
    if len(sizes) != graph.n:
        raise SizeMismatch(f"expected {graph.n} sizes, got {len(sizes)}")
    if any(s < 0 for s in sizes):
        raise SizeMismatch("class sizes must be non-negative")
    classes = []
    start = 0
    for s in sizes:
        classes.append(range(start, start + s))
        start += s
    arcs = [(x, y) for i, j in graph.arcs for x in classes[i] for y in classes[j]]
    host = OrientedGraph(start, arcs)
    return host, ExtensionWitness(graph, tuple(frozenset(c) for c in classes))


def signature_groups(graph: OrientedGraph) -> list[list[int]]:
    """Group vertices by (in-neighbourhood, out-neighbourhood); groups ordered by minimum."""
    groups: dict[tuple[int, int], list[int]] = {}
    for v in range(graph.n):
        groups.setdefault((graph.inc[v], graph.out[v]), []).append(v)
    return sorted(groups.values())


def is_extension_of(host: OrientedGraph, pattern: OrientedGraph) -> ExtensionWitness | None:
    """Return a witness that ``host`` is an extension of ``pattern``, or ``None``.

    Vertices of one extension class share both neighbourhoods, so every class
    is contained in a signature group; merging classes of twin pattern vertices
    lets each non-empty class be exactly one group.  The quotient on groups must
    then embed in ``pattern`` as an induced subgraph.
    """
    groups = signature_groups(host)
    if len(groups) > pattern.n:
        return None
    owner = {v: gi for gi, g in enumerate(groups) for v in g}
    q_arcs = {(owner[u], owner[v]) for u, v in host.arcs}
    quotient = OrientedGraph(len(groups), q_arcs)
    for emb in induced_embeddings(pattern, quotient):
        classes = [frozenset()] * pattern.n
        for gi, pv in enumerate(emb):
            classes[pv] = frozenset(groups[gi])
        witness = ExtensionWitness(pattern, tuple(classes))
        if witness.validate(host):
            return witness
    return None


# -- BFS layers -----------------------------------------------------------------

@dataclass(frozen=True)
class LayerDecomposition:
    """``layers[i]`` holds the vertices at directed distance ``i`` from ``base``."""

    base: frozenset
    layers: tuple[frozenset, ...]
    backward_arcs: tuple[Arc, ...] = ()
    unreachable: frozenset = field(default_factory=frozenset)

    def layer_of(self) -> dict[int, int]:
        return {v: i for i, layer in enumerate(self.layers) for v in layer}


def layers(graph: OrientedGraph, base: Iterable[int], *, strict: bool = False) -> LayerDecomposition:
    """BFS layers from ``base``; arcs from a later layer to an earlier one are reported.

    Unreachable vertices are reported in ``unreachable``; with ``strict`` they
    raise :class:`UnreachableVertex` instead.
    """
    base = frozenset(base)
    if not base:
        raise ValueError("base set must be non-empty")
    dist = [-1] * graph.n
    for v in base:
        dist[v] = 0
    queue = deque(sorted(base))
    while queue:
        v = queue.popleft()
        for w in bits(graph.out[v]):
            if dist[w] == -1:
                dist[w] = dist[v] + 1
                queue.append(w)
    depth = max(dist) + 1
    buckets: list[set[int]] = [set() for _ in range(depth)]
    for v, d in enumerate(dist):
        if d >= 0:
            buckets[d].add(v)
    unreachable = frozenset(v for v, d in enumerate(dist) if d < 0)
    if strict and unreachable:
        raise UnreachableVertex(unreachable)
    backward = tuple(
        (u, v) for u, v in graph.arcs if dist[u] >= 0 and dist[v] >= 0 and dist[u] > dist[v]
    )
    return LayerDecomposition(
        base=base,
        layers=tuple(frozenset(b) for b in buckets),
        backward_arcs=backward,
        unreachable=unreachable,
    )
