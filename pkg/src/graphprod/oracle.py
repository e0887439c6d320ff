"""Brute-force reference computations used to cross-check the fast paths.

Nothing here calls into :mod:`graphprod.words`. Group elements are
identified by exhaustive rewriting: the closure of a word under all swap
and merge moves is explored and its shortest, least member is taken as the
element's key (shortest words in the closure are geodesics and all
geodesics of an element are related by swaps, so the key is well defined).
Prism distances come from plain breadth-first search over the Cayley
graph of a product of finite vertex groups.
"""
from __future__ import annotations

from collections import deque

from .errors import BudgetExceeded, InputError
from .graph import DefiningGraph

CLOSURE_LIMIT = 200_000


def brute_normal_form(graph: DefiningGraph, letters, limit: int = CLOSURE_LIMIT) -> tuple:
    """Least shortest word reachable from ``letters`` by swaps and merges."""
    groups = graph.groups
    start = tuple((v, x) for v, x in letters)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            (u, x), (v, y) = cur[i], cur[i + 1]
            if u == v:
                z = groups[u].multiply(x, y)
                mid = () if z == groups[u].identity() else ((u, z),)
                nxt = cur[:i] + mid + cur[i + 2:]
            elif graph.adjacent(u, v):
                nxt = cur[:i] + ((v, y), (u, x)) + cur[i + 2:]
            else:
                continue
            if nxt not in seen:
                if len(seen) >= limit:
                    raise BudgetExceeded(f"rewriting closure exceeded {limit} words")
                seen.add(nxt)
                queue.append(nxt)
    index = graph.index
    return min(seen, key=lambda w: (len(w), [(index[v], repr(x)) for v, x in w]))


def _require_finite(graph: DefiningGraph) -> None:
    for v, g in graph.groups.items():
        if not g.finite:
            raise InputError(f"oracle needs finite vertex groups; {v!r} carries {g.tag}")


def prism_generators(graph: DefiningGraph) -> list[tuple]:
    _require_finite(graph)
    gens = []
    for v in graph.vertices:
        g = graph.groups[v]
        for x in sorted(g.enumerate_ball(g.order), key=repr):
            if x != g.identity():
                gens.append((v, x))
    return gens


def prism_ball(graph: DefiningGraph, radius: int) -> dict[tuple, int]:
    """BFS distances in the prism Cayley graph, keyed by brute normal form."""
    gens = prism_generators(graph)
    dist = {(): 0}
    frontier = [()]
    for r in range(1, radius + 1):
        nxt = []
        for w in frontier:
            for s in gens:
                key = brute_normal_form(graph, w + (s,))
                if key not in dist:
                    dist[key] = r
                    nxt.append(key)
        frontier = nxt
    return dist


def geodesic_class(graph: DefiningGraph, letters, limit: int = CLOSURE_LIMIT) -> set[tuple]:
    """Every shortest word reachable from ``letters`` by swaps and merges."""
    key = brute_normal_form(graph, letters, limit)
    seen = {key}
    queue = deque([key])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            (u, x), (v, y) = cur[i], cur[i + 1]
            if u != v and graph.adjacent(u, v):
                nxt = cur[:i] + ((v, y), (u, x)) + cur[i + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


class StarOracle:
    """Star-metric distances by breadth-first search along geodesic prefixes.

    The star generating set is infinite as soon as some link is not a
    clique, so the full Cayley graph cannot be searched. Any factorization
    into star-parabolic elements can however be rearranged into consecutive
    star-supported pieces of one prism geodesic, so a shortest star path
    may be taken through prefixes of geodesics. The search graph here has
    those prefixes as nodes and an edge whenever the subword between two
    prefixes is supported in a star.
    """

    def __init__(self, graph: DefiningGraph):
        self.graph = graph
        self.stars = [frozenset(graph.star({v})) for v in graph.vertices]

    def _star_supported(self, letters) -> bool:
        support = {v for v, _ in letters}
        return any(support <= s for s in self.stars)

    def distance(self, letters) -> int:
        best = None
        for word in geodesic_class(self.graph, letters):
            n = len(word)
            dist = {0: 0}
            queue = deque([0])
            while queue:
                i = queue.popleft()
                for j in range(i + 1, n + 1):
                    if j not in dist and self._star_supported(word[i:j]):
                        dist[j] = dist[i] + 1
                        queue.append(j)
            if best is None or dist[n] < best:
                best = dist[n]
        return best


def sample_letters(graph: DefiningGraph, max_letter_radius: int) -> list[tuple]:
    """Nontrivial letters whose element lies in the vertex-group ball of the given radius."""
    out = []
    for v in graph.vertices:
        g = graph.groups[v]
        for x in sorted(g.enumerate_ball(max_letter_radius), key=repr):
            if x != g.identity():
                out.append((v, x))
    return out
