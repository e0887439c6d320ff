"""Prism words: geodesic normal forms with their traces, plus parabolic membership.

A prism word is a sequence of letters ``(vertex, element)`` with a nontrivial
vertex-group element. Two adjacent letters may be swapped when their
vertices are adjacent, and merged when they share a vertex. The canonical
geodesic of a word is its reduced form with letters shuffled into the
shortlex-least order allowed by these swaps, ordering letters by vertex
declaration order.
"""
from __future__ import annotations

import weakref
from collections import deque
from typing import Iterable, Iterator, NamedTuple

from . import kernels
from .errors import BudgetExceeded, InputError
from .graph import DefiningGraph, Vertex
from .groups import Element, FiniteCyclic, InfiniteCyclic

DEFAULT_GEODESIC_LIMIT = 100_000


class Letter(NamedTuple):
    vertex: Vertex
    element: Element


class PrismWord:
    """An immutable word in the prism generators of a graph product."""

    __slots__ = ("graph", "letters", "_hash")

    def __init__(self, graph: DefiningGraph, letters: Iterable = ()):
        checked = []
        for item in letters:
            v, x = item
            if v not in graph.index:
                raise InputError(f"letter vertex {v!r} is not in the graph")
            group = graph.groups[v]
            x = group.canonical(x)
            if x == group.identity():
                raise InputError(f"letter at {v!r} carries the identity")
            checked.append(Letter(v, x))
        self.graph = graph
        self.letters = tuple(checked)
        self._hash = None

    @classmethod
    def _raw(cls, graph: DefiningGraph, letters) -> PrismWord:
        w = cls.__new__(cls)
        w.graph = graph
        w.letters = tuple(letters)
        w._hash = None
        return w

    @classmethod
    def parse(cls, graph: DefiningGraph, text: str) -> PrismWord:
        """Parse ``a:1.b:1.a:-2``; free-group elements go in parentheses."""
        text = text.strip()
        if not text:
            return cls._raw(graph, ())
        tokens, depth, cur = [], 0, []
        for ch in text:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    raise InputError(f"unbalanced parentheses in {text!r}")
            if ch == "." and depth == 0:
                tokens.append("".join(cur))
                cur = []
            else:
                cur.append(ch)
        if depth:
            raise InputError(f"unbalanced parentheses in {text!r}")
        tokens.append("".join(cur))
        letters = []
        for tok in tokens:
            v, sep, body = tok.partition(":")
            if not sep or not body:
                raise InputError(f"bad letter token {tok!r}; expected vertex:element")
            if v not in graph.index:
                raise InputError(f"unknown vertex {v!r} in {tok!r}")
            if body.startswith("(") and body.endswith(")"):
                body = body[1:-1]
            letters.append((v, graph.groups[v].parse_element(body)))
        return cls(graph, letters)

    def format(self) -> str:
        parts = []
        for v, x in self.letters:
            body = self.graph.groups[v].format_element(x)
            if "." in body:
                body = f"({body})"
            parts.append(f"{v}:{body}")
        return ".".join(parts)

    __str__ = format

    def __repr__(self) -> str:
        return f"PrismWord({self.format()!r})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return PrismWord._raw(self.graph, self.letters[item])
        return self.letters[item]

    def __add__(self, other: PrismWord) -> PrismWord:
        if other.graph is not self.graph:
            raise InputError("cannot concatenate words over different graphs")
        return PrismWord._raw(self.graph, self.letters + other.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrismWord) and self.graph is other.graph and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def inverse(self) -> PrismWord:
        groups = self.graph.groups
        return PrismWord._raw(self.graph, tuple(Letter(v, groups[v].invert(x)) for v, x in reversed(self.letters)))

    def support(self) -> frozenset:
        return frozenset(v for v, _ in self.letters)

    def power(self, n: int) -> PrismWord:
        base = self if n >= 0 else self.inverse()
        return PrismWord._raw(self.graph, base.letters * abs(n))


# ---------------------------------------------------------------------------
# normal forms

_kernel_info: "weakref.WeakKeyDictionary[DefiningGraph, tuple | None]" = weakref.WeakKeyDictionary()


def _kernel_setup(graph: DefiningGraph):
    try:
        return _kernel_info[graph]
    except KeyError:
        pass
    info = None
    if len(graph.vertices) <= kernels.MAX_VERTICES:
        moduli = []
        for v in graph.vertices:
            g = graph.groups[v]
            if isinstance(g, FiniteCyclic):
                moduli.append(g.order)
            elif type(g) is InfiniteCyclic:
                moduli.append(0)
            else:
                break
        else:
            info = (list(graph._adj_mask), moduli)
    _kernel_info[graph] = info
    return info


def _generic_reduce(graph: DefiningGraph, letters) -> list[Letter]:
    groups = graph.groups
    out: list[Letter] = []
    for v, x in letters:
        group = groups[v]
        k = len(out) - 1
        merged = False
        while k >= 0:
            u = out[k].vertex
            if u == v:
                y = group.multiply(out[k].element, x)
                if y == group.identity():
                    del out[k]
                else:
                    out[k] = Letter(v, y)
                merged = True
                break
            if not graph.adjacent(u, v):
                break
            k -= 1
        if not merged:
            out.append(Letter(v, x))
    return out


def _shortlex_order(graph: DefiningGraph, letters: list[Letter]) -> list[Letter]:
    """Shortlex-least shuffle of a geodesic (letters ordered by vertex index)."""
    index = graph.index
    masks = graph._adj_mask
    rest = list(letters)
    out = []
    while rest:
        best = -1
        seen = 0
        for j, (u, _) in enumerate(rest):
            i = index[u]
            if seen & ~masks[i] == 0 and (best < 0 or i < index[rest[best].vertex]):
                best = j
            seen |= 1 << i
        out.append(rest.pop(best))
    return out


def canonical_letters(graph: DefiningGraph, letters) -> tuple[Letter, ...]:
    """Canonical geodesic letters of an arbitrary letter sequence (fast path)."""
    info = _kernel_setup(graph)
    if info is not None:
        adj, moduli = info
        index = graph.index
        vids = []
        vals = []
        for v, x in letters:
            if not -kernels.MAX_PAYLOAD < x < kernels.MAX_PAYLOAD:
                break
            vids.append(index[v])
            vals.append(x)
        else:
            ov, ox = kernels.reduce_cyclic(adj, moduli, vids, vals)
            names = graph.vertices
            return tuple(Letter(names[i], x) for i, x in zip(ov, ox))
    return tuple(_shortlex_order(graph, _generic_reduce(graph, letters)))


def geodesic(w: PrismWord) -> PrismWord:
    """Canonical geodesic representative of ``w`` (no trace)."""
    return PrismWord._raw(w.graph, canonical_letters(w.graph, w.letters))


def multiply(*words: PrismWord) -> PrismWord:
    """Canonical geodesic of the product of ``words``."""
    graph = words[0].graph
    letters = []
    for w in words:
        letters.extend(w.letters)
    return PrismWord._raw(graph, canonical_letters(graph, letters))


def is_identity(w: PrismWord) -> bool:
    return not canonical_letters(w.graph, w.letters)


def prism_length(w: PrismWord) -> int:
    return len(canonical_letters(w.graph, w.letters))


# ---------------------------------------------------------------------------
# traced reduction


class Move(NamedTuple):
    kind: str  # "swap" or "merge"
    position: int  # acts on positions (position, position + 1)


ReductionTrace = tuple


def apply_move(graph: DefiningGraph, letters: list[Letter], move: Move) -> None:
    """Apply one move in place, enforcing the move's side conditions."""
    i = move.position
    if not 0 <= i < len(letters) - 1:
        raise InputError(f"move {move} out of range for word of length {len(letters)}")
    a, b = letters[i], letters[i + 1]
    if move.kind == "swap":
        if not graph.adjacent(a.vertex, b.vertex):
            raise InputError(f"swap at {i}: {a.vertex} and {b.vertex} are not adjacent")
        letters[i], letters[i + 1] = b, a
    elif move.kind == "merge":
        if a.vertex != b.vertex:
            raise InputError(f"merge at {i}: letters lie in different vertex groups")
        group = graph.groups[a.vertex]
        y = group.multiply(a.element, b.element)
        if y == group.identity():
            del letters[i:i + 2]
        else:
            letters[i:i + 2] = [Letter(a.vertex, y)]
    else:
        raise InputError(f"unknown move kind {move.kind!r}")


def replay(w: PrismWord, trace: Iterable[Move]) -> PrismWord:
    letters = list(w.letters)
    for move in trace:
        apply_move(w.graph, letters, move)
    return PrismWord._raw(w.graph, letters)


def traced_moves(graph: DefiningGraph, letters: list) -> Iterator[Move]:
    """Yield the canonical reduction moves of ``letters``, mutating the list.

    Left to right, each incoming letter is commuted leftward past letters of
    adjacent vertices until it meets a letter of its own vertex (merge) or a
    blocking letter (stays). The reduced result is then sorted into
    shortlex order by adjacent swaps.
    """
    k = 0  # letters[:k] is the reduced prefix
    while k < len(letters):
        v = letters[k].vertex
        q = k - 1
        target = -1
        while q >= 0:
            u = letters[q].vertex
            if u == v:
                target = q
                break
            if not graph.adjacent(u, v):
                break
            q -= 1
        if target < 0:
            k += 1
            continue
        for p in range(k - 1, target, -1):
            move = Move("swap", p)
            apply_move(graph, letters, move)
            yield move
        before = len(letters)
        move = Move("merge", target)
        apply_move(graph, letters, move)
        yield move
        k -= before - len(letters) - 1
    index = graph.index
    masks = graph._adj_mask
    for pos in range(len(letters)):
        best = -1
        seen = 0
        for j in range(pos, len(letters)):
            i = index[letters[j].vertex]
            if seen & ~masks[i] == 0 and (best < 0 or i < index[letters[best].vertex]):
                best = j
            seen |= 1 << i
        for p in range(best - 1, pos - 1, -1):
            move = Move("swap", p)
            apply_move(graph, letters, move)
            yield move


def reduce_to_geodesic(w: PrismWord) -> tuple[PrismWord, ReductionTrace]:
    """Canonical geodesic of ``w`` together with a replayable move trace."""
    letters = list(w.letters)
    trace = tuple(traced_moves(w.graph, letters))
    return PrismWord._raw(w.graph, letters), trace


# ---------------------------------------------------------------------------
# geodesic recognition and enumeration


def is_geodesic(w: PrismWord) -> tuple[int, int] | None:
    """Least violating pair ``(i, j)``, 1-based, or None when ``w`` is geodesic.

    A violation is two letters of the same vertex ``v`` with only letters
    of ``Star(v)`` between them.
    """
    graph = w.graph
    letters = w.letters
    for i, (v, _) in enumerate(letters):
        for j in range(i + 1, len(letters)):
            u = letters[j].vertex
            if u == v:
                return i + 1, j + 1
            if not graph.adjacent(u, v):
                break
    return None


def geodesic_representatives(w: PrismWord, limit: int = DEFAULT_GEODESIC_LIMIT) -> set[PrismWord]:
    """All geodesic words for the element of ``w``, by swap-closure from the canonical one."""
    graph = w.graph
    start = canonical_letters(graph, w.letters)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for i in range(len(cur) - 1):
            a, b = cur[i], cur[i + 1]
            if graph.adjacent(a.vertex, b.vertex):
                nxt = cur[:i] + (b, a) + cur[i + 2:]
                if nxt not in seen:
                    if len(seen) >= limit:
                        raise BudgetExceeded(f"more than {limit} geodesic representatives")
                    seen.add(nxt)
                    queue.append(nxt)
    return {PrismWord._raw(graph, s) for s in seen}


# ---------------------------------------------------------------------------
# parabolic subgroups


def _head_split(graph: DefiningGraph, letters, a: frozenset) -> tuple[list, list]:
    # greedily pull the earliest a-letter that commutes past everything before it
    index = graph.index
    masks = graph._adj_mask
    head = []
    rest = list(letters)
    while True:
        seen = 0
        for j, (u, _) in enumerate(rest):
            i = index[u]
            if u in a and seen & ~masks[i] == 0:
                head.append(rest.pop(j))
                break
            seen |= 1 << i
        else:
            return head, rest


def head_in_parabolic(g: PrismWord, a: Iterable[Vertex]) -> tuple[PrismWord, PrismWord]:
    """Split ``g = head * tail`` with ``head`` the maximal left divisor in ``G_a``."""
    a = g.graph._check(a)
    letters = canonical_letters(g.graph, g.letters)
    head, tail = _head_split(g.graph, letters, a)
    return PrismWord._raw(g.graph, head), PrismWord._raw(g.graph, tail)


def in_parabolic(g: PrismWord, a: Iterable[Vertex]) -> bool:
    a = g.graph._check(a)
    return all(v in a for v, _ in canonical_letters(g.graph, g.letters))


def in_parabolic_product(
    g: PrismWord, a: Iterable[Vertex], b: Iterable[Vertex]
) -> tuple[PrismWord, PrismWord] | None:
    """``(x, y)`` with ``x`` in ``G_a``, ``y`` in ``G_b`` and ``x*y = g``, if any."""
    head, tail = head_in_parabolic(g, a)
    if in_parabolic(tail, b):
        return head, tail
    return None
