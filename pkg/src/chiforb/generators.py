"""Named families, gadgets and seeded random samplers.

All randomness comes from :class:`SplitMix64` (algorithm tag
``splitmix64-v1``) so that a seed reproduces the same graph in any
implementation of the same procedure:

* state is a 64-bit integer, advanced by ``0x9E3779B97F4A7C15``;
* output mixes with ``0xBF58476D1CE4E5B9`` and ``0x94D049BB133111EB``
  (shifts 30, 27, 31);
* ``random()`` is ``(next_u64() >> 11) * 2**-53``;
* a random orientation visits pairs ``i < j`` in lexicographic order, keeps
  the pair if ``random() < p`` and orients it ``i -> j`` when the low bit of
  the next output is 0.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, asdict
from typing import Iterable, Sequence

from . import limits
from .digraph import OrientedGraph, blow_up, is_acyclic, is_strong
from .errors import BadSpec, BudgetExhausted, GraphError, NotAcyclic, TooLarge
from .families import (
    c22,
    c31,
    complete_bipartite_one_way,
    directed_cycle,
    directed_path,
    empty_graph,
    oriented_cycle,
    oriented_path,
    rotational_tournament,
    star,
    transitive_tournament,
)
from .patterns import PatternKind, find_induced, parse_pattern

log = logging.getLogger(__name__)

RNG_NAME = "splitmix64-v1"
_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        # multiply-shift; bias is at most n / 2**64
        if n <= 0:
            raise ValueError("below() needs n > 0")
        return (self.next_u64() * n) >> 64

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next_u64())


# -- deterministic families -------------------------------------------------------

def shift_graph(k: int, n: int) -> OrientedGraph:
    """Shift graph on the k-subsets of ``{1..n}`` (lexicographic vertex order).

    ``a -> b`` iff ``a[1:] == b[:-1]``.  For ``k = 1`` every pair is joined from
    the smaller element, giving ``TT_n``.
    """
    if not 1 <= k < n:
        raise BadSpec(f"shift graph needs 1 <= k < n, got k={k}, n={n}")
    subsets = list(itertools.combinations(range(1, n + 1), k))
    if len(subsets) > limits.GRAPH_CAP:
        raise TooLarge(f"shift graph has {len(subsets)} vertices")
    if k == 1:
        return transitive_tournament(n)
    by_prefix: dict[tuple, list[int]] = {}
    for j, b in enumerate(subsets):
        by_prefix.setdefault(b[:-1], []).append(j)
    arcs = [(i, j) for i, a in enumerate(subsets) for j in by_prefix.get(a[1:], ())]
    return OrientedGraph(len(subsets), arcs)


def shift_labels(k: int, n: int) -> list[str]:
    return ["".join(map(str, s)) if n < 10 else ",".join(map(str, s))
            for s in itertools.combinations(range(1, n + 1), k)]


def line_digraph(g: OrientedGraph) -> OrientedGraph:
    """Vertices are the arcs of ``g`` in lexicographic order; ``(uv) -> (vw)``."""
    arcs = list(g.arcs)
    index = {a: i for i, a in enumerate(arcs)}
    out = [(index[(u, v)], index[(v, w)]) for u, v in arcs for w in g.out_neighbors(v)]
    return OrientedGraph(len(arcs), out)


def two_pentagon_gadget() -> OrientedGraph:
    """Ten vertices: ``v_1..v_5`` are 0..4 and ``u_1..u_5`` are 5..9.

    Two directed pentagons plus, for each ``i``, the arcs ``v_{i-1} u_i``,
    ``u_i v_{i+1}`` and ``u_i v_{i+3}`` (indices mod 5).
    """
    v = lambda i: (i - 1) % 5
    u = lambda i: 5 + (i - 1) % 5
    arcs = []
    for i in range(1, 6):
        arcs.append((v(i), v(i + 1)))
        arcs.append((u(i), u(i + 1)))
        arcs.append((v(i - 1), u(i)))
        arcs.append((u(i), v(i + 1)))
        arcs.append((u(i), v(i + 3)))
    return OrientedGraph(10, arcs)


def augment_with_dominator(g: OrientedGraph) -> OrientedGraph:
    """Add ``x = n`` with ``x -> s`` for every source ``s`` and ``v -> x`` otherwise.

    Strength of the result is logged when it fails; the caller can check it
    with :func:`is_strong`.
    """
    if not is_acyclic(g):
        raise NotAcyclic("augment_with_dominator needs an acyclic graph")
    x = g.n
    arcs = list(g.arcs)
    for v in range(g.n):
        arcs.append((x, v) if g.in_degree(v) == 0 else (v, x))
    h = OrientedGraph(g.n + 1, arcs)
    if not is_strong(h):
        log.warning("augmented graph on %d vertices is not strong", h.n)
    return h


# -- random samplers --------------------------------------------------------------

def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise BadSpec(f"probability {p} outside [0, 1]")


def _check_n(n: int) -> None:
    if n < 0:
        raise BadSpec("n must be non-negative")
    if n > limits.GRAPH_CAP:
        raise TooLarge(f"{n} vertices exceeds the graph cap {limits.GRAPH_CAP}")


def _random_arcs(rng: SplitMix64, pairs: Iterable[tuple[int, int]], p: float) -> list[tuple[int, int]]:
    arcs = []
    for i, j in pairs:
        if rng.random() < p:
            arcs.append((i, j) if rng.next_u64() & 1 == 0 else (j, i))
    return arcs


def random_orientation(n: int, p: float, seed: int) -> OrientedGraph:
    """Random orientation of G(n, p)."""
    _check_n(n)
    _check_p(p)
    rng = SplitMix64(seed)
    return OrientedGraph(n, _random_arcs(rng, itertools.combinations(range(n), 2), p))


def random_tournament(n: int, seed: int) -> OrientedGraph:
    return random_orientation(n, 1.0, seed)


def _patterns(forbid: Iterable) -> list[PatternKind]:
    out = []
    for f in forbid:
        out.append(parse_pattern(f) if isinstance(f, str) else f)
    return out


def _first_hit(g: OrientedGraph, forbid: Sequence[PatternKind]):
    for f in forbid:
        emb = find_induced(g, f)
        if emb is not None:
            return emb
    return None


def repair(g: OrientedGraph, forbid: Iterable, max_tries: int = 1000, prefer: int | None = None) -> OrientedGraph:
    """Delete arcs until ``g`` is F-free.

    Each round takes the first forbidden pattern (in the given order) that
    occurs, its lexicographically least embedding, and deletes the least arc
    of that copy (the least arc at ``prefer`` when the copy has one).
    """
    forbid = _patterns(forbid)
    arcs = set(g.arcs)
    tries = 0
    while True:
        cur = OrientedGraph(g.n, arcs)
        emb = _first_hit(cur, forbid)
        if emb is None:
            return cur
        if tries >= max_tries:
            raise BudgetExhausted(f"still contains {emb.pattern.name} after {tries} deletions")
        image = emb.image_arcs()
        if not image:
            raise BadSpec(f"pattern {emb.pattern.name} has no arcs; deletion cannot remove it")
        if prefer is not None:
            near = [a for a in image if prefer in a]
            if near:
                image = near
        arcs.discard(min(image))
        tries += 1


def random_f_free(n: int, p: float, seed: int, forbid: Iterable = (), max_tries: int = 1000) -> OrientedGraph:
    """Random orientation of G(n, p) repaired into ``Forb(forbid)``."""
    g = random_orientation(n, p, seed)
    forbid = _patterns(forbid)
    if not forbid:
        return g
    return repair(g, forbid, max_tries)


def grow_f_free(
    n: int,
    p: float,
    seed: int,
    forbid: Iterable = (),
    max_tries: int = 1000,
    base: OrientedGraph | None = None,
) -> OrientedGraph:
    """Vertex-by-vertex sampler: vertex ``v`` gets random arcs to ``0..v-1`` and
    the copies it creates are repaired at once, preferring arcs at ``v``.

    Local repair keeps more arcs than repairing a whole G(n, p) sample, which
    gives denser and more often strongly connected members.  With ``base`` the
    growth starts from that graph (vertices ``0..base.n-1``); an F-free base
    loses no arc when every forbidden pattern is connected.
    """
    _check_n(n)
    _check_p(p)
    forbid = _patterns(forbid)
    rng = SplitMix64(seed)
    g = OrientedGraph(0, []) if base is None else base
    if g.n > n:
        raise BadSpec(f"base has {g.n} vertices, more than n={n}")
    budget = max_tries
    for v in range(g.n, n):
        arcs = list(g.arcs) + _random_arcs(rng, ((u, v) for u in range(v)), p)
        g = OrientedGraph(v + 1, arcs)
        if forbid:
            before = g.m
            g = repair(g, forbid, budget, prefer=v)
            budget -= before - g.m
    return g


def random_blow_up(graph: OrientedGraph, max_size: int, seed: int) -> OrientedGraph:
    """Blow-up of ``graph`` with class sizes drawn uniformly from ``1..max_size``."""
    if max_size < 1:
        raise BadSpec("class sizes must be >= 1")
    rng = SplitMix64(seed)
    sizes = [1 + rng.below(max_size) for _ in range(graph.n)]
    return blow_up(graph, sizes)[0]


# -- spec dispatch ----------------------------------------------------------------

KINDS = (
    "tt", "cycle", "path", "star", "blocks", "dk", "shift", "line", "gadget",
    "random", "tournament", "random-f-free", "grow-f-free",
)


@dataclass
class GenSpec:
    kind: str
    n: int | None = None
    k: int | None = None
    l: int | None = None
    p: float | None = None
    seed: int = 0
    blocks: list[int] | None = None
    sign: str = "+"
    forbid: list[str] = field(default_factory=list)
    max_tries: int = 1000
    base: "GenSpec | None" = None

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if v not in (None, [], "+") or k == "kind"}
        if self.base is not None:
            d["base"] = self.base.to_dict()
        d.setdefault("seed", self.seed)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "GenSpec":
        data = dict(data)
        if data.get("base") is not None:
            data["base"] = cls.from_dict(data["base"])
        try:
            return cls(**data)
        except TypeError as exc:
            raise BadSpec(str(exc)) from None


def _need(spec: GenSpec, *names: str) -> None:
    for name in names:
        value = getattr(spec, name)
        if value is None:
            raise BadSpec(f"{spec.kind} needs --{name}")
        if name in ("n", "k", "l") and value < 0:
            raise BadSpec(f"{name} must be non-negative")


def generate(spec: GenSpec) -> OrientedGraph:
    kind = spec.kind
    try:
        if kind == "tt":
            _need(spec, "n")
            return transitive_tournament(spec.n)
        if kind == "cycle":
            _need(spec, "n")
            return directed_cycle(spec.n)
        if kind == "path":
            _need(spec, "n")
            return directed_path(spec.n)
        if kind == "star":
            _need(spec, "k", "l")
            return star(spec.k, spec.l)
        if kind == "blocks":
            if not spec.blocks:
                raise BadSpec("blocks needs a block list")
            return oriented_path(spec.blocks, spec.sign)
        if kind == "dk":
            _need(spec, "n")
            return complete_bipartite_one_way(spec.n, spec.k if spec.k is not None else spec.n)
        if kind == "shift":
            _need(spec, "k", "n")
            return shift_graph(spec.k, spec.n)
        if kind == "line":
            if spec.base is None:
                raise BadSpec("line needs a base spec")
            return line_digraph(generate(spec.base))
        if kind == "gadget":
            return two_pentagon_gadget()
        if kind == "random":
            _need(spec, "n", "p")
            return random_orientation(spec.n, spec.p, spec.seed)
        if kind == "tournament":
            _need(spec, "n")
            return random_tournament(spec.n, spec.seed)
        if kind == "random-f-free":
            _need(spec, "n", "p")
            return random_f_free(spec.n, spec.p, spec.seed, spec.forbid, spec.max_tries)
        if kind == "grow-f-free":
            _need(spec, "n", "p")
            return grow_f_free(spec.n, spec.p, spec.seed, spec.forbid, spec.max_tries)
    except GraphError as exc:
        raise BadSpec(str(exc)) from None
    raise BadSpec(f"unknown generator kind {kind!r}; expected one of {', '.join(KINDS)}")


__all__ = [
    "RNG_NAME", "SplitMix64", "GenSpec", "KINDS", "generate",
    "shift_graph", "shift_labels", "line_digraph", "two_pentagon_gadget", "augment_with_dominator",
    "random_orientation", "random_tournament", "random_f_free", "grow_f_free", "random_blow_up", "repair",
    "transitive_tournament", "directed_cycle", "directed_path", "star", "oriented_path",
    "complete_bipartite_one_way", "empty_graph", "oriented_cycle", "c31", "c22", "rotational_tournament",
]
