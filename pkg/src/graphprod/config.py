"""Project configuration files.

A configuration is a TOML document::

    seed = 7

    [graph]
    vertices = ["a", "b", "c", "d"]
    edges = [["a", "b"], ["b", "c"], ["c", "d"]]

    [groups]
    a = "Z/5"          # vertices left out carry Z

    [subgroups.H1]
    generators = ["a:1.d:1"]

    [budgets]
    ball = 100000      # exhaustive S_H-word enumeration cap
    samples = 200      # sampled words per length past the cap
    geodesics = 100000 # geodesic representative cap

    [flags]
    accept_hypothesis_warnings = false
"""
from __future__ import annotations

import re
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import InputError
from .graph import DefiningGraph
from .groups import parse_group
from .words import PrismWord

DEFAULT_BUDGETS = {"ball": 100_000, "samples": 200, "geodesics": 100_000}
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TOP_KEYS = {"seed", "graph", "groups", "subgroups", "budgets", "flags"}


class ConfigError(InputError):
    """Schema violation; ``field`` is the dotted key path and ``line`` is 1-based when known."""

    def __init__(self, message: str, field: str = "", line: int | None = None):
        where = field or "config"
        if line is not None:
            where = f"line {line}: {where}"
        super().__init__(f"{where}: {message}")
        self.field = field
        self.line = line


@dataclass
class ProjectConfig:
    vertices: list[str]
    edges: list[tuple[str, str]]
    groups: dict[str, str]
    subgroups: dict[str, list[str]] = field(default_factory=dict)
    budgets: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_BUDGETS))
    seed: int = 0
    accept_hypothesis_warnings: bool = False
    warnings: list[str] = field(default_factory=list)
    _graph: DefiningGraph | None = field(default=None, repr=False, compare=False)

    @property
    def graph(self) -> DefiningGraph:
        if self._graph is None:
            self._graph = DefiningGraph(self.vertices, self.edges, self.groups)
        return self._graph

    def to_toml(self) -> str:
        """Canonical text; parsing it back yields an equal config."""
        q = _quote
        lines = [f"seed = {self.seed}", "", "[graph]"]
        lines.append("vertices = [" + ", ".join(q(v) for v in self.vertices) + "]")
        lines.append("edges = [" + ", ".join(f"[{q(u)}, {q(v)}]" for u, v in self.edges) + "]")
        lines += ["", "[groups]"]
        lines += [f"{v} = {q(self.groups[v])}" for v in self.vertices]
        for name in sorted(self.subgroups):
            lines += ["", f"[subgroups.{name}]"]
            lines.append("generators = [" + ", ".join(q(g) for g in self.subgroups[name]) + "]")
        lines += ["", "[budgets]"]
        lines += [f"{k} = {self.budgets[k]}" for k in sorted(self.budgets)]
        lines += ["", "[flags]", f"accept_hypothesis_warnings = {str(self.accept_hypothesis_warnings).lower()}"]
        return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _line_of(text: str, *needles: str) -> int | None:
    """First line mentioning all needles, a best-effort pointer for diagnostics."""
    for i, line in enumerate(text.splitlines(), start=1):
        if all(n in line for n in needles):
            return i
    return None


def parse_config(text: str) -> ProjectConfig:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ConfigError(str(exc), line=int(m.group(1)) if m else None) from None

    def fail(message, key, *needles):
        raise ConfigError(message, key, _line_of(text, *needles) if needles else None)

    for key in data:
        if key not in _TOP_KEYS:
            fail(f"unknown key {key!r}", key, key)

    graph = data.get("graph")
    if not isinstance(graph, dict):
        fail("missing [graph] table", "graph")
    for key in graph:
        if key not in ("vertices", "edges"):
            fail(f"unknown key {key!r}", f"graph.{key}", key)
    vertices = graph.get("vertices")
    if not isinstance(vertices, list) or not all(isinstance(v, str) for v in vertices):
        fail("must be a list of strings", "graph.vertices", "vertices")
    for v in vertices:
        if not _NAME.match(v):
            fail(f"invalid vertex name {v!r}", "graph.vertices", f'"{v}"')
    seen = set()
    for v in vertices:
        if v in seen:
            fail(f"duplicate vertex {v!r}", "graph.vertices", "vertices")
        seen.add(v)

    edges = []
    for e in graph.get("edges", []):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            fail(f"edge {e!r} is not a pair of vertex names", "graph.edges", "edges")
        for x in e:
            if x not in seen:
                fail(f"undeclared vertex {x!r}", "graph.edges", f'"{x}"')
        edges.append((e[0], e[1]))

    groups_raw = data.get("groups", {})
    groups = {}
    for v in vertices:
        group_text = groups_raw.get(v, "Z")
        if not isinstance(group_text, str):
            fail("group must be a string such as Z or Z/5", f"groups.{v}", f"{v} =")
        try:
            parse_group(group_text)
        except InputError as exc:
            fail(str(exc), f"groups.{v}", f"{v} =")
        groups[v] = group_text
    for v in groups_raw:
        if v not in seen:
            fail(f"undeclared vertex {v!r}", f"groups.{v}", f"{v} =")

    budgets = dict(DEFAULT_BUDGETS)
    for k, n in data.get("budgets", {}).items():
        if k not in DEFAULT_BUDGETS:
            fail(f"unknown budget {k!r}", f"budgets.{k}", k)
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            fail("budget must be a positive integer", f"budgets.{k}", k)
        budgets[k] = n

    seed = data.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        fail("seed must be an integer", "seed", "seed")

    flags = data.get("flags", {})
    for k in flags:
        if k != "accept_hypothesis_warnings":
            fail(f"unknown flag {k!r}", f"flags.{k}", k)
    accept = flags.get("accept_hypothesis_warnings", False)
    if not isinstance(accept, bool):
        fail("must be true or false", "flags.accept_hypothesis_warnings", "accept_hypothesis_warnings")

    cfg = ProjectConfig(list(vertices), edges, groups, {}, budgets, seed, accept)
    try:
        g = cfg.graph
    except InputError as exc:
        fail(str(exc), "graph")

    for name, table in data.get("subgroups", {}).items():
        key = f"subgroups.{name}"
        gens = table.get("generators") if isinstance(table, dict) else None
        if not isinstance(gens, list) or not all(isinstance(x, str) for x in gens):
            fail("generators must be a list of words", f"{key}.generators", name)
        for w in gens:
            try:
                PrismWord.parse(g, w)
            except InputError as exc:
                fail(str(exc), f"{key}.generators", w)
        cfg.subgroups[name] = list(gens)

    if not accept:
        if g.has_finite_vertex_groups():
            cfg.warnings.append(
                "finite vertex groups present: join-busting does not imply stability without almost join-freeness"
            )
        if g.has_isolated_vertices():
            cfg.warnings.append("isolated vertices present: the join-busting criterion assumes none")
    return cfg


def load_config(path: str) -> ProjectConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    return parse_config(text)
