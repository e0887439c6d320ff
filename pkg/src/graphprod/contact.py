"""The star metric and hyperplanes as carrier cosets, for contact-graph diagnostics."""
from __future__ import annotations

import threading
import weakref
from collections import deque
from dataclasses import dataclass

from .errors import InputError
from .graph import DefiningGraph, Vertex
from .words import (
    Letter,
    PrismWord,
    _head_split,
    canonical_letters,
    geodesic_representatives,
    in_parabolic_product,
    is_geodesic,
    multiply,
)


class StarLengthMemo:
    """Shared monotone cache of star lengths keyed by canonical letters.

    Readers never lock; writers insert under a lock and never overwrite,
    so results do not depend on thread interleaving.
    """

    def __init__(self, graph: DefiningGraph):
        self.graph = graph
        self._table: dict[tuple, int] = {(): 0}
        self._lock = threading.Lock()
        stars = {frozenset(graph.star({v})) for v in graph.vertices}
        # a head in a larger star dominates the head in a smaller one
        maximal = [s for s in stars if not any(s < t for t in stars)]
        self.stars = sorted(maximal, key=lambda s: graph.sorted(s))

    def get(self, key: tuple) -> int | None:
        return self._table.get(key)

    def put(self, key: tuple, value: int) -> int:
        with self._lock:
            return self._table.setdefault(key, value)

    def __len__(self) -> int:
        return len(self._table)


_memos: "weakref.WeakKeyDictionary[DefiningGraph, StarLengthMemo]" = weakref.WeakKeyDictionary()
_memo_lock = threading.Lock()


def star_memo(graph: DefiningGraph) -> StarLengthMemo:
    with _memo_lock:
        memo = _memos.get(graph)
        if memo is None:
            memo = _memos[graph] = StarLengthMemo(graph)
        return memo


def _star_length(memo: StarLengthMemo, key: tuple) -> int:
    found = memo.get(key)
    if found is not None:
        return found
    graph = memo.graph
    # iterative DFS over tails to keep deep words off the Python stack
    stack = [key]
    while stack:
        cur = stack[-1]
        if memo.get(cur) is not None:
            stack.pop()
            continue
        tails = []
        pending = False
        for star in memo.stars:
            head, tail = _head_split(graph, cur, star)
            if head:
                t = canonical_letters(graph, tail)
                tails.append(t)
                if memo.get(t) is None:
                    stack.append(t)
                    pending = True
        if not pending:
            memo.put(cur, 1 + min(memo.get(t) for t in tails))
            stack.pop()
    return memo.get(key)


def star_length(g: PrismWord) -> int:
    """Least number of star-parabolic elements whose product is ``g``.

    Recurrence: strip the maximal head lying in a star parabolic and recurse
    on the tail, minimizing over stars.
    """
    key = canonical_letters(g.graph, g.letters)
    return _star_length(star_memo(g.graph), key)


# ---------------------------------------------------------------------------
# hyperplanes


@dataclass(frozen=True)
class Hyperplane:
    """Hyperplane at ``vertex`` whose carrier is ``carrier * G_Star(vertex)``.

    ``carrier`` is the shortest coset representative, in canonical form.
    """

    vertex: Vertex
    carrier: PrismWord

    def __str__(self) -> str:
        return f"{self.vertex}@{self.carrier.format() or 'id'}"


def hyperplane(vertex: Vertex, g: PrismWord) -> Hyperplane:
    """The hyperplane at ``vertex`` whose carrier contains ``g``."""
    graph = g.graph
    star = graph.star({vertex})
    inv = canonical_letters(graph, PrismWord._raw(graph, canonical_letters(graph, g.letters)).inverse().letters)
    _, tail = _head_split(graph, inv, star)
    rep = PrismWord._raw(graph, tail).inverse()
    return Hyperplane(vertex, PrismWord._raw(graph, canonical_letters(graph, rep.letters)))


def hyperplanes_crossed(w: PrismWord) -> list[Hyperplane]:
    """Hyperplanes dual to the letters of a geodesic, in order, without repeats."""
    if is_geodesic(w) is not None:
        raise InputError(f"{w} is not geodesic")
    out: list[Hyperplane] = []
    seen = set()
    for i, (v, _) in enumerate(w.letters):
        h = hyperplane(v, w[:i])
        if h not in seen:
            seen.add(h)
            out.append(h)
    return out


def connecting_element(h1: Hyperplane, h2: Hyperplane) -> PrismWord:
    return multiply(h1.carrier.inverse(), h2.carrier)


def carriers_intersect(h1: Hyperplane, h2: Hyperplane) -> bool:
    graph = h1.carrier.graph
    x = connecting_element(h1, h2)
    return in_parabolic_product(x, graph.star({h1.vertex}), graph.star({h2.vertex})) is not None


def contact_distance_bounds(h1: Hyperplane, h2: Hyperplane) -> tuple[int, int]:
    """Sandwich bounds on contact-graph distance from the star length of the connecting element."""
    if h1 == h2:
        return 0, 0
    s = star_length(connecting_element(h1, h2))
    return max(0, s - 2), 2 * s + 2


@dataclass
class RestrictedSearch:
    distance: int | None
    exact: bool
    nodes: list[Hyperplane]
    edges: list[tuple[int, int]]


def restricted_contact_distance(h1: Hyperplane, h2: Hyperplane, limit: int = 2000) -> RestrictedSearch:
    """BFS in the contact graph restricted to hyperplanes at points along geodesics.

    Candidate hyperplanes are those at every vertex whose carrier passes
    through a prefix of some prism geodesic from ``h1``'s representative to
    ``h2``'s. The result upper-bounds the true distance; it is flagged exact
    when it meets the lower bound ``max(1, |x|_star - 1)`` (or is 0 or 1).
    """
    graph = h1.carrier.graph
    x = connecting_element(h1, h2)
    points = {()}
    for rep in geodesic_representatives(x, limit=limit):
        for i in range(1, len(rep) + 1):
            points.add(rep.letters[:i])
    nodes: list[Hyperplane] = [h1, h2]
    seen = {h1: 0, h2: 1}
    for p in sorted(points, key=len):
        base = multiply(h1.carrier, PrismWord._raw(graph, p))
        for v in graph.vertices:
            h = hyperplane(v, base)
            if h not in seen:
                if len(nodes) >= limit:
                    break
                seen[h] = len(nodes)
                nodes.append(h)
    edges = []
    adj: list[list[int]] = [[] for _ in nodes]
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if carriers_intersect(nodes[i], nodes[j]):
                edges.append((i, j))
                adj[i].append(j)
                adj[j].append(i)
    dist = {0: 0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    d = 0 if h1 == h2 else dist.get(1)
    if d is None:
        return RestrictedSearch(None, False, nodes, edges)
    lower = 0 if h1 == h2 else max(1, star_length(x) - 1)
    return RestrictedSearch(d, d <= 1 or d == lower, nodes, edges)


# ---------------------------------------------------------------------------
# conjugacy diagnostics


def essential_support(g: PrismWord) -> tuple[frozenset, PrismWord]:
    """Cyclically reduce ``g``; return the reduced support and the conjugator.

    ``conjugator^-1 * g * conjugator`` is cyclically reduced.
    """
    graph = g.graph
    index = graph.index
    masks = graph._adj_mask
    cur = list(canonical_letters(graph, g.letters))
    conj: list[Letter] = []
    while True:
        n = len(cur)
        first = {}
        seen = 0
        for j, (u, _) in enumerate(cur):
            i = index[u]
            if seen & ~masks[i] == 0 and u not in first:
                first[u] = j
            seen |= 1 << i
        pick = None
        seen = 0
        for j in range(n - 1, -1, -1):
            u = cur[j].vertex
            i = index[u]
            if seen & ~masks[i] == 0 and u in first and first[u] != j:
                pick = first[u]
                break
            seen |= 1 << i
        if pick is None:
            break
        x = PrismWord._raw(graph, (cur[pick],))
        conj.append(cur[pick])
        cur = list(canonical_letters(graph, x.inverse().letters + tuple(cur) + x.letters))
    conjugator = PrismWord._raw(graph, canonical_letters(graph, conj))
    return frozenset(v for v, _ in cur), conjugator


def is_conjugate_into_join(g: PrismWord) -> tuple[frozenset, PrismWord] | None:
    support, conj = essential_support(g)
    if not support:
        return None
    join = g.graph.is_contained_in_join(support)
    if join is None:
        return None
    return join, conj


def has_finite_order(g: PrismWord) -> bool:
    """Finite-order elements are exactly those conjugate into a clique of finite-order letters."""
    graph = g.graph
    support, conj = essential_support(g)
    if not support:
        return True
    if not graph.is_clique(support):
        return False
    core = multiply(conj.inverse(), g, conj)
    return all(graph.groups[v].order_of(x) is not None for v, x in core.letters)


@dataclass
class OrbitProfile:
    rows: list[tuple[int, int, int]]
    translation_estimate: float
    classification: str


def orbit_profile(g: PrismWord, n_max: int) -> OrbitProfile:
    """Prism and star lengths of ``g^n`` for ``n = 1..n_max``.

    The estimate ``|g^n_max|_star / n_max`` upper-bounds the stable
    translation length at this horizon. Powers staying within star distance
    2 are reported ``elliptic``; anything else ``loxodromic at horizon``.
    """
    if n_max < 1:
        raise InputError("n_max must be at least 1")
    graph = g.graph
    base = canonical_letters(graph, g.letters)
    power: tuple = ()
    rows = []
    for n in range(1, n_max + 1):
        power = canonical_letters(graph, power + base)
        w = PrismWord._raw(graph, power)
        rows.append((n, len(power), star_length(w)))
    estimate = rows[-1][2] / n_max
    bounded = all(star <= 2 for _, _, star in rows)
    return OrbitProfile(rows, estimate, "elliptic" if bounded else "loxodromic at horizon")
