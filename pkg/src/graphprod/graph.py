"""Finite simple defining graphs and their link/star/join structure."""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import InputError
from .groups import VertexGroup, parse_group

Vertex = str
VertexSet = frozenset


class DefiningGraph:
    """A finite simple graph whose vertices carry vertex groups.

    Vertex order is the declaration order; it fixes the canonical letter
    order used by normal forms. Instances are immutable and hashed by
    identity so they can key per-graph caches.
    """

    __slots__ = ("vertices", "edges", "groups", "index", "_adj", "_adj_mask", "__weakref__")

    def __init__(
        self,
        vertices: Iterable[Vertex],
        edges: Iterable[tuple[Vertex, Vertex]],
        groups: Mapping[Vertex, VertexGroup | str],
    ):
        verts = tuple(vertices)
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertex identifiers")
        index = {v: i for i, v in enumerate(verts)}
        adj: dict[Vertex, set[Vertex]] = {v: set() for v in verts}
        edge_set = set()
        for u, v in edges:
            for x in (u, v):
                if x not in index:
                    raise InputError(f"edge ({u}, {v}) references undeclared vertex {x!r}")
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            e = frozenset((u, v))
            if e in edge_set:
                raise InputError(f"repeated edge ({u}, {v})")
            edge_set.add(e)
            adj[u].add(v)
            adj[v].add(u)
        assigned: dict[Vertex, VertexGroup] = {}
        for v in verts:
            if v not in groups:
                raise InputError(f"vertex {v!r} has no group assignment")
            g = groups[v]
            assigned[v] = parse_group(g) if isinstance(g, str) else g
        extra = set(groups) - set(verts)
        if extra:
            raise InputError(f"group assigned to undeclared vertex {sorted(extra)[0]!r}")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "groups", assigned)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})
        masks = [0] * len(verts)
        for v, nbrs in adj.items():
            for u in nbrs:
                masks[index[v]] |= 1 << index[u]
        object.__setattr__(self, "_adj_mask", tuple(masks))

    def __setattr__(self, name, value):
        raise AttributeError("DefiningGraph is immutable")

    def __repr__(self) -> str:
        return f"DefiningGraph(vertices={list(self.vertices)}, edges={len(self.edges)})"

    @classmethod
    def path(cls, names: Iterable[Vertex], group: str = "Z") -> DefiningGraph:
        names = list(names)
        return cls(names, list(zip(names, names[1:])), {v: group for v in names})

    @classmethod
    def cycle(cls, names: Iterable[Vertex], group: str = "Z") -> DefiningGraph:
        names = list(names)
        edges = list(zip(names, names[1:])) + [(names[-1], names[0])]
        return cls(names, edges, {v: group for v in names})

    def with_groups(self, groups: Mapping[Vertex, VertexGroup | str] | str) -> DefiningGraph:
        """Same graph, different vertex groups (one group text applies to all)."""
        if isinstance(groups, (str, VertexGroup)):
            groups = {v: groups for v in self.vertices}
        edges = [tuple(sorted(e, key=self.index.__getitem__)) for e in self.edges]
        return DefiningGraph(self.vertices, edges, groups)

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj[u]

    def neighbors(self, v: Vertex) -> frozenset:
        return self._adj[v]

    def _check(self, s: Iterable[Vertex]) -> frozenset:
        s = frozenset(s)
        for v in s:
            if v not in self.index:
                raise InputError(f"unknown vertex {v!r}")
        return s

    def sorted(self, s: Iterable[Vertex]) -> list[Vertex]:
        return sorted(s, key=self.index.__getitem__)

    def link(self, s: Iterable[Vertex]) -> frozenset:
        """Vertices adjacent to every vertex of ``s``; the link of the empty set is everything."""
        s = self._check(s)
        out = set(self.vertices)
        for v in s:
            out &= self._adj[v]
        return frozenset(out)

    def star(self, s: Iterable[Vertex]) -> frozenset:
        s = self._check(s)
        return s | self.link(s)

    def is_join(self, s: Iterable[Vertex]) -> tuple[frozenset, frozenset] | None:
        """Split ``s`` into two nonempty, completely joined halves if possible.

        The complement of the induced subgraph is searched from the least
        vertex; its component there becomes the first half.
        """
        s = self._check(s)
        if not s:
            raise InputError("is_join needs a nonempty vertex set")
        order = self.sorted(s)
        start = order[0]
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in order:
                if w not in seen and w not in self._adj[u]:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == len(s):
            return None
        return frozenset(seen), s - seen

    def is_contained_in_join(self, s: Iterable[Vertex]) -> frozenset | None:
        """A join subgraph containing ``s``, or None when there is none."""
        s = self._check(s)
        if not s:
            raise InputError("is_contained_in_join needs a nonempty vertex set")
        if self.is_join(s) is not None:
            return s
        lk = self.link(s)
        if lk:
            return s | lk
        return None

    def is_clique(self, s: Iterable[Vertex]) -> bool:
        s = list(self._check(s))
        return all(self.adjacent(u, v) for i, u in enumerate(s) for v in s[i + 1:])

    def has_isolated_vertices(self) -> bool:
        return any(not self._adj[v] for v in self.vertices)

    def has_finite_vertex_groups(self) -> bool:
        return any(g.finite for g in self.groups.values())
