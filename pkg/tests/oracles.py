"""Brute-force reference implementations used only by the tests.

Nothing here imports the search code under test; graphs are read through
``n`` and ``arcs`` only.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def arcset(g):
    return set(map(tuple, g.arcs))


def adjacent(A, u, v):
    return (u, v) in A or (v, u) in A


def relation(A, u, v):
    if (u, v) in A:
        return 1
    if (v, u) in A:
        return -1
    return 0


def induced_embeddings(host, pattern):
    """All injective maps preserving arcs, non-arcs and directions, in lex order."""
    H, P = arcset(host), arcset(pattern)
    out = []
    for image in itertools.permutations(range(host.n), pattern.n):
        if all(relation(P, i, j) == relation(H, image[i], image[j])
               for i in range(pattern.n) for j in range(i + 1, pattern.n)):
            out.append(image)
    return sorted(out)


def strong_components(g):
    A = arcset(g)
    reach = [[i == j for j in range(g.n)] for i in range(g.n)]
    for u, v in A:
        reach[u][v] = True
    for k in range(g.n):
        for i in range(g.n):
            if reach[i][k]:
                for j in range(g.n):
                    if reach[k][j]:
                        reach[i][j] = True
    comps = {frozenset(j for j in range(g.n) if reach[i][j] and reach[j][i]) for i in range(g.n)}
    initial = {c for c in comps if not any((u, v) in A for u in range(g.n) if u not in c for v in c)}
    return comps, initial


def weak_components(g):
    A = arcset(g)
    seen, comps = set(), []
    for s in range(g.n):
        if s in seen:
            continue
        stack, comp = [s], set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(w for w in range(g.n) if adjacent(A, v, w) and w not in comp)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def is_proper(g, colors):
    return all(colors[u] != colors[v] for u, v in g.arcs)


def chromatic_number(g):
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if is_proper(g, colors):
                return k


def triangles(g, directed=False):
    A = arcset(g)
    out = []
    for a, b, c in itertools.combinations(range(g.n), 3):
        if adjacent(A, a, b) and adjacent(A, b, c) and adjacent(A, a, c):
            cyc = {(a, b), (b, c), (c, a)} <= A or {(b, a), (c, b), (a, c)} <= A
            if not directed or cyc:
                out.append((a, b, c))
    return out


def tri_number(g, directed=False):
    if g.n == 0:
        return 0
    tris = triangles(g, directed)
    for k in range(1, g.n + 1):
        for colors in itertools.product(range(k), repeat=g.n):
            if not any(colors[a] == colors[b] == colors[c] for a, b, c in tris):
                return k


def clique_number(g):
    A = arcset(g)
    best = 0
    for r in range(g.n + 1):
        for S in itertools.combinations(range(g.n), r):
            if all(adjacent(A, u, v) for u, v in itertools.combinations(S, 2)):
                best = r
    return best


def is_transitive_tournament(A, S):
    if not all(adjacent(A, u, v) for u, v in itertools.combinations(S, 2)):
        return False
    # a tournament is transitive iff its out-degrees are pairwise distinct
    degs = [sum((u, v) in A for v in S) for u in S]
    return len(set(degs)) == len(S)


def trans_number(g):
    A = arcset(g)
    best = 0
    for r in range(g.n + 1):
        for S in itertools.combinations(range(g.n), r):
            if is_transitive_tournament(A, S):
                best = r
    return best


def odd_holes(g, min_length=5):
    """Vertex sets inducing a cycle of odd length >= ``min_length`` in the underlying graph."""
    A = arcset(g)
    out = []
    for r in range(min_length | 1, g.n + 1, 2):
        for S in itertools.combinations(range(g.n), r):
            deg = {v: sum(adjacent(A, v, w) for w in S if w != v) for v in S}
            if any(d != 2 for d in deg.values()):
                continue
            if len(weak_components_on(A, S)) == 1:
                out.append(frozenset(S))
    return out


def weak_components_on(A, S):
    S = set(S)
    comps = []
    while S:
        s = S.pop()
        comp, stack = {s}, [s]
        while stack:
            v = stack.pop()
            for w in list(S):
                if adjacent(A, v, w):
                    S.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_extension(host, pattern):
    """Try every map from host vertices onto pattern vertices."""
    H, P = arcset(host), arcset(pattern)
    for f in itertools.product(range(pattern.n), repeat=host.n):
        if all((((u, v) in H) == ((f[u], f[v]) in P)) for u in range(host.n) for v in range(host.n) if u != v):
            if all(not ((u, v) in H) for u in range(host.n) for v in range(host.n) if u != v and f[u] == f[v]):
                return True
    return False


def comb_families(n, k, p):
    """Every family of distinct subsets of ``range(n)`` of size >= p*n whose
    k-wise intersections have at most k-1 elements."""
    p = Fraction(p)
    cands = [frozenset(S) for r in range(n + 1) for S in itertools.combinations(range(n), r) if r >= p * n]

    def ok(fam, e):
        return all(len(e.intersection(*grp)) <= k - 1 for grp in itertools.combinations(fam, k - 1))

    def rec(start, fam):
        yield fam
        for i in range(start, len(cands)):
            e = cands[i]
            if ok(fam, e):
                yield from rec(i + 1, fam + [e])

    yield from rec(0, [])


def max_comb_family(n, k, p):
    return max(len(f) for f in comb_families(n, k, p))
