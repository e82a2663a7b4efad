"""Constructors for small named oriented graphs."""
from __future__ import annotations

from typing import Sequence

from .digraph import OrientedGraph
from .errors import BadSpec


def transitive_tournament(n: int) -> OrientedGraph:
    """``TT_n`` with ``i -> j`` for every ``i < j``."""
    if n < 0:
        raise BadSpec("TT(n) needs n >= 0")
    return OrientedGraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def directed_cycle(n: int) -> OrientedGraph:
    if n < 3:
        raise BadSpec("a directed cycle of an oriented graph needs n >= 3")
    return OrientedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def directed_path(n: int) -> OrientedGraph:
    return OrientedGraph(n, [(i, i + 1) for i in range(n - 1)])


def star(k: int, l: int) -> OrientedGraph:
    """``S_{k,l}``: centre 0, in-leaves ``1..k``, out-leaves ``k+1..k+l``."""
    if k < 0 or l < 0:
        raise BadSpec("star parameters must be non-negative")
    arcs = [(i, 0) for i in range(1, k + 1)]
    arcs += [(0, j) for j in range(k + 1, k + l + 1)]
    return OrientedGraph(k + l + 1, arcs)


def oriented_path(blocks: Sequence[int], sign: str = "+") -> OrientedGraph:
    """Oriented path from maximal directed blocks.

    ``oriented_path([2, 1])`` is ``P+(2,1)``: two forward arcs then one backward
    arc along ``0, 1, 2, 3``.  With ``sign='-'`` the first block runs backward.
    """
    if not blocks or any(b <= 0 for b in blocks):
        raise BadSpec("path blocks must be positive")
    if sign not in "+-":
        raise BadSpec(f"bad path sign {sign!r}")
    forward = sign == "+"
    arcs = []
    v = 0
    for b in blocks:
        for _ in range(b):
            arcs.append((v, v + 1) if forward else (v + 1, v))
            v += 1
        forward = not forward
    return OrientedGraph(v + 1, arcs)


def complete_bipartite_one_way(a: int, b: int | None = None) -> OrientedGraph:
    """``DK_{a,b}``: parts ``0..a-1`` and ``a..a+b-1``, every arc from the first part."""
    if b is None:
        b = a
    if a < 0 or b < 0:
        raise BadSpec("part sizes must be non-negative")
    return OrientedGraph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def empty_graph(n: int) -> OrientedGraph:
    return OrientedGraph(n, [])


def oriented_cycle(pattern: str) -> OrientedGraph:
    """Oriented cycle from a string of ``>``/``<`` giving the direction of each edge
    ``(i, i+1 mod n)``."""
    n = len(pattern)
    if n < 3 or set(pattern) - set("<>"):
        raise BadSpec(f"bad cycle pattern {pattern!r}")
    arcs = []
    for i, ch in enumerate(pattern):
        j = (i + 1) % n
        arcs.append((i, j) if ch == ">" else (j, i))
    return OrientedGraph(n, arcs)


def c31() -> OrientedGraph:
    """``C(3,1)``: a1 -> a2 -> a3 -> a4 <- a1."""
    return OrientedGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


def c22() -> OrientedGraph:
    """``C(2,2)``: a1 -> a2 -> a3 <- a4 <- a1."""
    return OrientedGraph(4, [(0, 1), (1, 2), (3, 2), (0, 3)])


def rotational_tournament(n: int, steps: Sequence[int]) -> OrientedGraph:
    """Circulant oriented graph with arcs ``i -> i+s mod n`` for each step ``s``."""
    arcs = [(i, (i + s) % n) for i in range(n) for s in steps]
    return OrientedGraph(n, arcs)
