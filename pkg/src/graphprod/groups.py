"""Vertex groups with decidable word problems.

Four concrete families ship: ``Z``, ``Z^k``, ``Z/n`` and free groups ``Fk``.
Elements are plain hashable Python values in canonical form:

========  ==========================================================
family    payload
========  ==========================================================
``Z``     ``int``
``Z^k``   ``tuple[int, ...]`` of length k
``Z/n``   ``int`` in ``range(n)``
``Fk``    freely reduced ``tuple[int, ...]``; generator i is ``i+1``,
          its inverse ``-(i+1)``
========  ==========================================================

New families subclass :class:`VertexGroup` and register a parser with
:func:`register_group`.
"""
from __future__ import annotations

import re
from abc import ABC, abstractmethod
from typing import Any, Callable, Hashable

from .errors import InputError

Element = Hashable


class VertexGroup(ABC):
    """An effective group: canonical elements, product, inverse, identity."""

    #: short text used in configuration files and tagged element text
    tag: str
    #: True when the group is finite
    finite: bool = False

    @abstractmethod
    def identity(self) -> Element: ...

    @abstractmethod
    def multiply(self, x: Element, y: Element) -> Element: ...

    @abstractmethod
    def invert(self, x: Element) -> Element: ...

    @abstractmethod
    def check(self, x: Any) -> Element:
        """Return ``x`` if it is a canonical payload for this group, else raise."""

    @abstractmethod
    def generators(self) -> list[Element]:
        """Standard symmetric generating set used by :meth:`enumerate_ball`."""

    @abstractmethod
    def format_element(self, x: Element) -> str: ...

    @abstractmethod
    def parse_element(self, text: str) -> Element: ...

    def canonical(self, x: Any) -> Element:
        """Canonicalize a raw payload (e.g. reduce a residue); default is :meth:`check`."""
        return self.check(x)

    def is_identity(self, x: Any) -> bool:
        return self.canonical(x) == self.identity()

    def order_of(self, x: Element) -> int | None:
        """Order of ``x``, or None when infinite."""
        return None if x != self.identity() else 1

    def enumerate_ball(self, radius: int) -> set[Element]:
        if radius < 0:
            raise InputError("radius must be nonnegative")
        ball = {self.identity()}
        frontier = [self.identity()]
        gens = self.generators()
        for _ in range(radius):
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.multiply(x, s)
                    if y not in ball:
                        ball.add(y)
                        nxt.append(y)
            frontier = nxt
        return ball

    def format_tagged(self, x: Element) -> str:
        return f"{self.tag}:{self.format_element(self.check(x))}"

    def parse_tagged(self, text: str) -> Element:
        tag, sep, body = text.partition(":")
        if not sep or tag != self.tag:
            raise InputError(f"expected an element tagged {self.tag!r}, got {text!r}")
        return self.parse_element(body)

    def __repr__(self) -> str:
        return f"<vertex group {self.tag}>"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VertexGroup) and self.tag == other.tag

    def __hash__(self) -> int:
        return hash(self.tag)


def _parse_int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"not an integer: {text!r}") from None


class InfiniteCyclic(VertexGroup):
    tag = "Z"

    def identity(self) -> int:
        return 0

    def multiply(self, x, y):
        return self.check(x) + self.check(y)

    def invert(self, x):
        return -self.check(x)

    def check(self, x):
        if type(x) is not int:
            raise InputError(f"{self.tag} element must be an int, got {x!r}")
        return x

    def generators(self):
        return [1, -1]

    def format_element(self, x):
        return str(x)

    def parse_element(self, text):
        return self.check(_parse_int(text))


class FiniteCyclic(VertexGroup):
    finite = True

    def __init__(self, order: int):
        if order < 2:
            raise InputError("finite cyclic order must be at least 2")
        self.order = order
        self.tag = f"Z/{order}"

    def identity(self):
        return 0

    def multiply(self, x, y):
        return (self.check(x) + self.check(y)) % self.order

    def invert(self, x):
        return -self.check(x) % self.order

    def check(self, x):
        if type(x) is not int or not 0 <= x < self.order:
            raise InputError(f"{self.tag} element must be an int in [0, {self.order}), got {x!r}")
        return x

    def generators(self):
        return [1, self.order - 1]

    def canonical(self, x):
        if type(x) is not int:
            raise InputError(f"{self.tag} element must be an int, got {x!r}")
        return x % self.order

    def order_of(self, x):
        from math import gcd

        return self.order // gcd(self.check(x), self.order)

    def format_element(self, x):
        return str(x)

    def parse_element(self, text):
        # residues are accepted in any representative and reduced
        return _parse_int(text) % self.order


class FreeAbelian(VertexGroup):
    def __init__(self, rank: int):
        if rank < 1:
            raise InputError("free abelian rank must be at least 1")
        self.rank = rank
        self.tag = f"Z^{rank}"

    def identity(self):
        return (0,) * self.rank

    def multiply(self, x, y):
        return tuple(a + b for a, b in zip(self.check(x), self.check(y)))

    def invert(self, x):
        return tuple(-a for a in self.check(x))

    def check(self, x):
        if type(x) is not tuple or len(x) != self.rank or any(type(a) is not int for a in x):
            raise InputError(f"{self.tag} element must be a tuple of {self.rank} ints, got {x!r}")
        return x

    def generators(self):
        gens = []
        for i in range(self.rank):
            for s in (1, -1):
                e = [0] * self.rank
                e[i] = s
                gens.append(tuple(e))
        return gens

    def format_element(self, x):
        return ",".join(str(a) for a in x)

    def parse_element(self, text):
        return self.check(tuple(_parse_int(t) for t in text.split(",")))


class Free(VertexGroup):
    def __init__(self, rank: int):
        if rank < 1:
            raise InputError("free group rank must be at least 1")
        self.rank = rank
        self.tag = f"F{rank}"
        if rank <= 3:
            self.names = ["x", "y", "z"][:rank]
        else:
            self.names = [f"x{i + 1}" for i in range(rank)]
        self._index = {name: i for i, name in enumerate(self.names)}

    def identity(self):
        return ()

    @staticmethod
    def _reduce(letters) -> tuple:
        out: list[int] = []
        for a in letters:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
        return tuple(out)

    def multiply(self, x, y):
        return self._reduce(self.check(x) + self.check(y))

    def invert(self, x):
        return tuple(-a for a in reversed(self.check(x)))

    def check(self, x):
        if type(x) is not tuple or any(type(a) is not int or a == 0 or abs(a) > self.rank for a in x):
            raise InputError(f"{self.tag} element must be a tuple of nonzero ints, got {x!r}")
        if self._reduce(x) != x:
            raise InputError(f"{self.tag} element {x!r} is not freely reduced")
        return x

    def canonical(self, x):
        if type(x) is not tuple or any(type(a) is not int or a == 0 or abs(a) > self.rank for a in x):
            raise InputError(f"{self.tag} element must be a tuple of nonzero ints, got {x!r}")
        return self._reduce(x)

    def generators(self):
        return [(s * (i + 1),) for i in range(self.rank) for s in (1, -1)]

    def format_element(self, x):
        if not x:
            return "1"
        parts = []
        i = 0
        while i < len(x):
            j = i
            while j < len(x) and x[j] == x[i]:
                j += 1
            name = self.names[abs(x[i]) - 1]
            power = (j - i) * (1 if x[i] > 0 else -1)
            parts.append(name if power == 1 else f"{name}^{power}")
            i = j
        return ".".join(parts)

    _syllable = re.compile(r"^([A-Za-z]\w*)(?:\^(-?\d+))?$")

    def parse_element(self, text):
        if text == "1":
            return ()
        letters: list[int] = []
        for part in text.split("."):
            m = self._syllable.match(part)
            if not m or m.group(1) not in self._index:
                raise InputError(f"bad {self.tag} syllable {part!r}")
            gen = self._index[m.group(1)] + 1
            power = int(m.group(2)) if m.group(2) else 1
            letters.extend([gen if power > 0 else -gen] * abs(power))
        return self._reduce(letters)


_PARSERS: list[tuple[re.Pattern, Callable[[re.Match], VertexGroup]]] = [
    (re.compile(r"^Z$"), lambda m: InfiniteCyclic()),
    (re.compile(r"^Z/(\d+)$"), lambda m: FiniteCyclic(int(m.group(1)))),
    (re.compile(r"^Z\^(\d+)$"), lambda m: FreeAbelian(int(m.group(1)))),
    (re.compile(r"^F(\d+)$"), lambda m: Free(int(m.group(1)))),
]


def register_group(pattern: str, factory: Callable[[re.Match], VertexGroup]) -> None:
    """Teach :func:`parse_group` a new group family."""
    _PARSERS.append((re.compile(pattern), factory))


def parse_group(text: str) -> VertexGroup:
    """Parse ``Z``, ``Z/n``, ``Z^k`` or ``Fk``."""
    text = text.strip()
    for pattern, factory in _PARSERS:
        m = pattern.match(text)
        if m:
            return factory(m)
    raise InputError(f"unknown group specification {text!r}")
