"""Combinatorial disk diagrams for identity prism words.

A diagram is a cyclic boundary word together with a partition of its
positions into blocks (dual graphs). Each block lives at one vertex, its
letters multiply to the identity in boundary order, and two blocks may only
interleave around the circle when their vertices are adjacent.

Positions are 0-based. Beginning/ending functions follow the usual
convention for a boundary ``g . w^-1``: both ``w`` and ``g`` indices are
1-based, ``w_1`` being the inverse of the last letter of the ``w^-1`` range.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import InputError, InvalidDiagram
from .graph import DefiningGraph, Vertex
from .words import Letter, PrismWord, canonical_letters, traced_moves


@dataclass(frozen=True)
class DualGraph:
    vertex: Vertex
    roots: tuple[int, ...]


@dataclass(frozen=True)
class DiskDiagram:
    graph: DefiningGraph = field(repr=False)
    boundary: tuple[Letter, ...]
    blocks: tuple[DualGraph, ...]
    provenance: tuple | None = field(default=None, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.boundary)

    @property
    def word(self) -> PrismWord:
        return PrismWord._raw(self.graph, self.boundary)

    def block_of(self) -> list[int]:
        """Block index for each boundary position (-1 where uncovered)."""
        owner = [-1] * len(self.boundary)
        for b, block in enumerate(self.blocks):
            for p in block.roots:
                owner[p] = b
        return owner

    def rotate(self, k: int) -> DiskDiagram:
        """Same diagram read from position ``k`` onward."""
        n = len(self.boundary)
        if n == 0:
            return self
        k %= n
        boundary = self.boundary[k:] + self.boundary[:k]
        blocks = tuple(
            DualGraph(b.vertex, tuple(sorted((p - k) % n for p in b.roots))) for b in self.blocks
        )
        return DiskDiagram(self.graph, boundary, _sorted_blocks(blocks))

    def to_json(self) -> dict:
        w = self.word
        tokens = [PrismWord._raw(self.graph, (letter,)).format() for letter in w.letters]
        return {
            "boundary": tokens,
            "blocks": [{"vertex": b.vertex, "roots": list(b.roots)} for b in self.blocks],
        }

    @classmethod
    def from_json(cls, graph: DefiningGraph, data: dict) -> DiskDiagram:
        letters = []
        for tok in data["boundary"]:
            letters.extend(PrismWord.parse(graph, tok).letters)
        blocks = tuple(DualGraph(b["vertex"], tuple(b["roots"])) for b in data["blocks"])
        return cls(graph, tuple(letters), blocks)


def _sorted_blocks(blocks) -> tuple[DualGraph, ...]:
    return tuple(sorted(blocks, key=lambda b: b.roots))


class _UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx

    def classes(self) -> list[list]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())


def build_diagram(s: PrismWord) -> DiskDiagram:
    """Diagram for an identity word, read off its canonical reduction trace.

    Every letter is tracked through the trace; a merge joins the two
    letters' classes, and the classes become the blocks.
    """
    graph = s.graph
    if canonical_letters(graph, s.letters):
        raise InputError("not an identity word")
    work = list(s.letters)
    owner = list(range(len(work)))  # representative original position per working letter
    uf = _UnionFind(range(len(work)))
    trace = []
    for move in traced_moves(graph, work):
        trace.append(move)
        i = move.position
        if move.kind == "swap":
            owner[i], owner[i + 1] = owner[i + 1], owner[i]
        else:
            uf.union(owner[i], owner[i + 1])
            # ``work`` is already updated: one survivor or none
            survivors = len(work) - (len(owner) - 2)
            owner[i:i + 2] = [owner[i]] * survivors
    if work:
        raise InvalidDiagram("identity word did not reduce to the empty word")
    blocks = [DualGraph(s.letters[min(c)].vertex, tuple(sorted(c))) for c in uf.classes()]
    return DiskDiagram(graph, s.letters, _sorted_blocks(blocks), provenance=tuple(trace))


def _interleave(a: Sequence[int], b: Sequence[int]) -> bool:
    """True when the cyclic position sets ``a`` and ``b`` cross."""
    gaps = set()
    for p in b:
        k = sum(1 for q in a if q < p)
        gaps.add(k % len(a))
    return len(gaps) > 1


def _product(graph: DefiningGraph, vertex: Vertex, letters) -> object:
    group = graph.groups[vertex]
    acc = group.identity()
    for x in letters:
        acc = group.multiply(acc, x)
    return acc


def validate(d: DiskDiagram, geodesic_range: tuple[int, int] | None = None) -> list[str]:
    """Every violated diagram invariant, as human-readable strings."""
    graph = d.graph
    n = len(d.boundary)
    problems: list[str] = []
    count = [0] * n
    for b, block in enumerate(d.blocks):
        for p in block.roots:
            if not 0 <= p < n:
                problems.append(f"block {b}: root {p} outside boundary")
                continue
            count[p] += 1
    for p, c in enumerate(count):
        if c == 0:
            problems.append(f"position {p} belongs to no block")
        elif c > 1:
            problems.append(f"position {p} belongs to {c} blocks")
    for b, block in enumerate(d.blocks):
        roots = [p for p in block.roots if 0 <= p < n]
        if len(roots) < 2:
            problems.append(f"block {b}: block size < 2")
        if any(d.boundary[p].vertex != block.vertex for p in roots):
            problems.append(f"block {b}: letters from more than one vertex group")
            continue
        order = sorted(roots)
        group = graph.groups[block.vertex]
        if _product(graph, block.vertex, [d.boundary[p].element for p in order]) != group.identity():
            problems.append(f"block {b}: letters do not multiply to the identity")
    for b1 in range(len(d.blocks)):
        for b2 in range(b1 + 1, len(d.blocks)):
            x, y = d.blocks[b1], d.blocks[b2]
            if len(x.roots) and len(y.roots) and _interleave(sorted(x.roots), sorted(y.roots)):
                if not graph.adjacent(x.vertex, y.vertex):
                    problems.append(f"blocks {b1},{b2}: illegal crossing of {x.vertex} and {y.vertex}")
    if canonical_letters(graph, d.boundary):
        problems.append("boundary word is not an identity word")
    if geodesic_range is not None:
        start, stop = geodesic_range
        for b, block in enumerate(d.blocks):
            inside = sum(1 for p in block.roots if start <= p < stop)
            if inside > 1:
                problems.append(f"block {b}: {inside} roots in geodesic range")
    return problems


def concatenate(
    d1: DiskDiagram, d2: DiskDiagram, shared1: tuple[int, int], shared2: tuple[int, int]
) -> DiskDiagram:
    """Glue ``d1`` (boundary ``a1 b c1``) to ``d2`` (boundary ``a2 b^-1 c2``) along ``b``.

    The result has boundary ``a1 c2 a2 c1``; its blocks are the classes of
    the union of both block partitions with the shared letters identified.
    Blocks lying wholly inside the glued strip close up and disappear.
    """
    graph = d1.graph
    s1, t1 = shared1
    s2, t2 = shared2
    if not (0 <= s1 <= t1 <= len(d1)) or not (0 <= s2 <= t2 <= len(d2)):
        raise InputError("shared range out of bounds")
    b = PrismWord._raw(graph, d1.boundary[s1:t1])
    b_bar = PrismWord._raw(graph, d2.boundary[s2:t2])
    if b.inverse().letters != b_bar.letters:
        raise InputError("shared ranges do not spell inverse words")
    uf = _UnionFind()
    for tag, d in ((1, d1), (2, d2)):
        for block in d.blocks:
            first = (tag, block.roots[0])
            uf.add(first)
            for p in block.roots[1:]:
                uf.add((tag, p))
                uf.union(first, (tag, p))
    m = t1 - s1
    for k in range(m):
        uf.union((1, s1 + k), (2, t2 - 1 - k))
    # new boundary positions: a1, c2, a2, c1
    layout = (
        [(1, p) for p in range(0, s1)]
        + [(2, p) for p in range(t2, len(d2))]
        + [(2, p) for p in range(0, s2)]
        + [(1, p) for p in range(t1, len(d1))]
    )
    new_pos = {key: i for i, key in enumerate(layout)}
    boundary = tuple((d1 if tag == 1 else d2).boundary[p] for tag, p in layout)
    blocks = []
    for cls in uf.classes():
        roots = sorted(new_pos[k] for k in cls if k in new_pos)
        if roots:
            blocks.append(DualGraph(boundary[roots[0]].vertex, tuple(roots)))
    out = DiskDiagram(graph, boundary, _sorted_blocks(blocks))
    problems = validate(out)
    if problems:
        raise InvalidDiagram(f"concatenation produced an invalid diagram: {problems[0]}")
    return out


@dataclass(frozen=True)
class CombingFunctions:
    beginning: dict[int, int]
    ending: dict[int, int]


def _split(d: DiskDiagram, w_range: tuple[int, int]):
    n = len(d)
    start, stop = w_range
    if not 0 <= start <= stop <= n:
        raise InputError(f"w range {w_range} out of bounds for boundary of length {n}")
    g_positions = list(range(stop, n)) + list(range(0, start))
    w_positions = [stop - i for i in range(1, stop - start + 1)]  # w_i sits at stop - i
    return g_positions, w_positions


def combing_functions(d: DiskDiagram, w_range: tuple[int, int]) -> CombingFunctions:
    """First and last ``g``-letter sharing a block with each ``w_i``."""
    g_positions, w_positions = _split(d, w_range)
    g_index = {p: j + 1 for j, p in enumerate(g_positions)}
    owner = d.block_of()
    beginning, ending = {}, {}
    for i, p in enumerate(w_positions, start=1):
        roots = [g_index[q] for q in d.blocks[owner[p]].roots if q in g_index]
        if not roots:
            raise InvalidDiagram(f"block of w_{i} has no root in g")
        beginning[i] = min(roots)
        ending[i] = max(roots)
    return CombingFunctions(beginning, ending)


def commuting_operation(d: DiskDiagram, i: int) -> DiskDiagram:
    """Swap boundary letters ``i`` and ``i + 1``; blocks follow their letters."""
    n = len(d)
    if not 0 <= i < n - 1:
        raise InputError(f"position {i} has no right neighbor")
    a, b = d.boundary[i], d.boundary[i + 1]
    if not d.graph.adjacent(a.vertex, b.vertex):
        raise InputError("letters do not commute")
    boundary = d.boundary[:i] + (b, a) + d.boundary[i + 2:]
    swap = {i: i + 1, i + 1: i}
    blocks = tuple(
        DualGraph(blk.vertex, tuple(sorted(swap.get(p, p) for p in blk.roots))) for blk in d.blocks
    )
    return DiskDiagram(d.graph, boundary, _sorted_blocks(blocks))


class CombResult(NamedTuple):
    diagram: DiskDiagram
    word: PrismWord
    #: ``permutation[i - 1] = sigma(i)`` so that the new ``w'_i`` is the old ``w_sigma(i)``
    permutation: tuple[int, ...]


def _comb(d: DiskDiagram, w_range: tuple[int, int], use_ending: bool) -> CombResult:
    start, stop = w_range
    m = stop - start
    sigma = list(range(1, m + 1))
    cur = d
    while True:
        fn = combing_functions(cur, w_range)
        key = fn.ending if use_ending else fn.beginning
        bad = next((i for i in range(1, m) if key[i] > key[i + 1]), None)
        if bad is None:
            break
        # w_bad sits at stop - bad, w_{bad+1} immediately to its left
        cur = commuting_operation(cur, stop - bad - 1)
        sigma[bad - 1], sigma[bad] = sigma[bad], sigma[bad - 1]
    w_bar = PrismWord._raw(d.graph, cur.boundary[start:stop])
    return CombResult(cur, w_bar.inverse(), tuple(sigma))


def left_comb(d: DiskDiagram, w_range: tuple[int, int]) -> CombResult:
    """Bubble-sort ``w`` until the beginning function is strictly increasing."""
    return _comb(d, w_range, use_ending=False)


def right_comb(d: DiskDiagram, w_range: tuple[int, int]) -> CombResult:
    """Bubble-sort ``w`` until the ending function is strictly increasing."""
    return _comb(d, w_range, use_ending=True)


def is_left_combed(d: DiskDiagram, w_range: tuple[int, int]) -> bool:
    b = combing_functions(d, w_range).beginning
    return all(b[i] < b[i + 1] for i in range(1, len(b)))


def carrier_word(d: DiskDiagram, block: int, gap: int) -> PrismWord:
    """Geodesic of the boundary arc after root ``gap`` of ``block``, up to the next root.

    The arc must represent an element of ``G_Link(v)``.
    """
    blk = d.blocks[block]
    roots = sorted(blk.roots)
    if not 0 <= gap < len(roots):
        raise InputError(f"gap {gap} out of range for block with {len(roots)} roots")
    n = len(d)
    a, b = roots[gap], roots[(gap + 1) % len(roots)]
    arc = []
    p = (a + 1) % n
    while p != b:
        arc.append(d.boundary[p])
        p = (p + 1) % n
    word = PrismWord._raw(d.graph, canonical_letters(d.graph, arc))
    link = d.graph.link({blk.vertex})
    if not word.support() <= link:
        raise InvalidDiagram(f"invalid diagram: carrier arc of block {block} leaves G_Link({blk.vertex})")
    return word


def reduction_control_check(
    d: DiskDiagram,
    w_range: tuple[int, int],
    left: int,
    right: int,
    segmentation: Sequence[int],
    m_h: int,
) -> bool:
    """Check ``R - L >= (right - left) / m_h`` for a left-combed diagram.

    ``segmentation`` lists the prism lengths of the consecutive generator
    blocks making up ``g``; ``L`` and ``R`` are the (1-based) blocks holding
    the beginnings of ``w_left`` and ``w_right``.
    """
    m = w_range[1] - w_range[0]
    if m < 2:
        return True
    if not 1 <= left < right <= m:
        raise InputError("need 1 <= left < right <= |w|")
    if not is_left_combed(d, w_range):
        raise InputError("diagram is not left-combed")
    if sum(segmentation) != len(d) - m:
        raise InputError("segmentation does not partition the g range")
    b = combing_functions(d, w_range).beginning
    big_l, big_r = segment_of(segmentation, b[left]), segment_of(segmentation, b[right])
    return (big_r - big_l) * m_h >= right - left


def segment_of(segmentation: Sequence[int], j: int) -> int:
    """1-based segment containing the 1-based position ``j``."""
    acc = 0
    for k, size in enumerate(segmentation, start=1):
        acc += size
        if j <= acc:
            return k
    raise InputError(f"position {j} beyond segmentation")
