"""Backtracking search for induced embeddings.

Pattern vertices are placed in index order and host candidates are tried in
increasing order, so embeddings come out in lexicographic order of the image
tuple ``(f(0), f(1), ...)``.  Candidates are filtered by the arcs to already
placed vertices (presence and direction) and by in/out-degree lower bounds.
"""
from __future__ import annotations

from typing import Iterator


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def induced_embeddings(host, pattern) -> Iterator[tuple[int, ...]]:
    p = pattern.n
    if p == 0:
        yield ()
        return
    if p > host.n:
        return
    full = (1 << host.n) - 1
    hout, hinc = host.out, host.inc
    hadj = [o | i for o, i in zip(hout, hinc)]
    # degree filter per pattern vertex
    allowed = []
    for i in range(p):
        need_out = pattern.out[i].bit_count()
        need_in = pattern.inc[i].bit_count()
        m = 0
        for v in range(host.n):
            if hout[v].bit_count() >= need_out and hinc[v].bit_count() >= need_in:
                m |= 1 << v
        if not m:
            return
        allowed.append(m)
    # for vertex i, the relation to each earlier vertex j
    earlier = []
    for i in range(p):
        rel = []
        for j in range(i):
            if pattern.out[j] >> i & 1:
                rel.append((j, 1))      # j -> i
            elif pattern.out[i] >> j & 1:
                rel.append((j, -1))     # i -> j
            else:
                rel.append((j, 0))
        earlier.append(rel)

    image = [0] * p

    def extend(i: int, used: int):
        cand = allowed[i] & ~used
        for j, kind in earlier[i]:
            hj = image[j]
            if kind == 1:
                cand &= hout[hj]
            elif kind == -1:
                cand &= hinc[hj]
            else:
                cand &= full & ~hadj[hj]
            if not cand:
                return
        for v in _bits(cand):
            image[i] = v
            if i + 1 == p:
                yield tuple(image)
            else:
                yield from extend(i + 1, used | (1 << v))

    yield from extend(0, 0)


def first_induced_embedding(host, pattern):
    for emb in induced_embeddings(host, pattern):
        return emb
    return None
