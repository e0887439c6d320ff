"""Empirical analysis of finitely generated subgroups.

Constants are *observed* over sampled subgroup words and the canonical
diagrams built for them; they are lower bounds for the true suprema, never
certificates. Observations at horizon ``L`` are running maxima over the
per-length samples ``1..L``, so they are nondecreasing in ``L``.

The reported constants follow strict-inequality definitions. ``D`` is one
more than the largest generator-index spread of a dual graph rooted in the
subgroup word, and ``C`` is the same quantity measured after concatenation.
``K`` is the longest run of generators that vanish from the diagram. Each is
0 when nothing qualifies.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

from .contact import has_finite_order, is_conjugate_into_join, star_length
from .diagrams import (
    DiskDiagram,
    build_diagram,
    combing_functions,
    concatenate,
    left_comb,
    reduction_control_check,
    segment_of,
)
from .errors import InputError
from .graph import DefiningGraph
from .words import PrismWord, canonical_letters, in_parabolic, is_geodesic

DEFAULT_BALL_BUDGET = 100_000
DEFAULT_SAMPLES_PER_LENGTH = 200


class SubgroupSpec:
    """Generators stored as canonical geodesics; ``m_h`` is their largest prism length."""

    def __init__(self, graph: DefiningGraph, generators: Sequence[PrismWord], name: str = "H"):
        gens = []
        for g in generators:
            if g.graph is not graph:
                raise InputError("generator built over a different graph")
            canon = PrismWord._raw(graph, canonical_letters(graph, g.letters))
            if not canon.letters:
                raise InputError(f"generator {g} is trivial")
            gens.append(canon)
        self.graph = graph
        self.name = name
        self.generators = tuple(gens)
        self.m_h = max((len(g) for g in gens), default=0)

    @classmethod
    def parse(cls, graph: DefiningGraph, texts: Sequence[str], name: str = "H") -> SubgroupSpec:
        return cls(graph, [PrismWord.parse(graph, t) for t in texts], name)

    def symbols(self) -> list[int]:
        """Generator symbols: ``+k``/``-k`` for generator ``k`` (1-based) and its inverse."""
        return [s * k for k in range(1, len(self.generators) + 1) for s in (1, -1)]

    def letter(self, symbol: int) -> PrismWord:
        g = self.generators[abs(symbol) - 1]
        return g if symbol > 0 else PrismWord._raw(self.graph, canonical_letters(self.graph, g.inverse().letters))

    def prism_word(self, symbols: Sequence[int]) -> tuple[PrismWord, list[int]]:
        """Concatenated prism word of an S_H-word and the prism length of each piece."""
        letters: list = []
        sizes = []
        for s in symbols:
            piece = self.letter(s)
            letters.extend(piece.letters)
            sizes.append(len(piece))
        return PrismWord._raw(self.graph, letters), sizes


def _reduced_words(n_gens: int, length: int) -> Iterator[tuple[int, ...]]:
    symbols = [s * k for k in range(1, n_gens + 1) for s in (1, -1)]

    def extend(prefix):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for s in symbols:
            if prefix and prefix[-1] == -s:
                continue
            prefix.append(s)
            yield from extend(prefix)
            prefix.pop()

    yield from extend([])


def _count_reduced(n_gens: int, length: int) -> int:
    if n_gens == 0:
        return 1 if length == 0 else 0
    if length == 0:
        return 1
    return 2 * n_gens * (2 * n_gens - 1) ** (length - 1)


def sample_words(h: SubgroupSpec, length: int, seed: int, budget: int, per_length: int) -> list[tuple[int, ...]]:
    """All reduced S_H-words of the given length if within budget, else a seeded sample."""
    n = len(h.generators)
    if n == 0 or length == 0:
        return []
    if _count_reduced(n, length) <= budget:
        return list(_reduced_words(n, length))
    rng = random.Random(f"{seed}:{length}")
    symbols = h.symbols()
    out = set()
    attempts = 0
    while len(out) < per_length and attempts < 20 * per_length:
        attempts += 1
        word = [rng.choice(symbols)]
        while len(word) < length:
            s = rng.choice(symbols)
            if s != -word[-1]:
                word.append(s)
        out.add(tuple(word))
    return sorted(out)


# ---------------------------------------------------------------------------
# join words


def max_join_subword(w: PrismWord) -> tuple[int, tuple[int, int], frozenset | None]:
    """Longest contiguous window of ``w`` whose support lies in a join.

    Returns ``(length, (start, stop), join)`` with a 0-based half-open window.
    """
    if is_geodesic(w) is not None:
        raise InputError(f"{w} is not geodesic")
    graph = w.graph
    letters = w.letters
    best = (0, (0, 0), None)
    j = 0
    for i in range(len(letters)):
        j = max(j, i)
        while j < len(letters):
            support = {v for v, _ in letters[i:j + 1]}
            if graph.is_contained_in_join(support) is None:
                break
            j += 1
        if j - i > best[0]:
            best = (j - i, (i, j), graph.is_contained_in_join({v for v, _ in letters[i:j]}))
    return best


def homogeneity_index(w: PrismWord, vertices) -> int | None:
    """Least ``M`` such that every length-``M`` window of ``w`` meets every vertex of the set."""
    graph = w.graph
    lam = graph._check(vertices)
    if is_geodesic(w) is not None:
        raise InputError(f"{w} is not geodesic")
    if not w.support() <= lam:
        raise InputError("word has letters outside the given vertex set")
    letters = [v for v, _ in w.letters]
    for m in range(1, len(letters) + 1):
        if all(lam <= set(letters[i:i + m]) for i in range(len(letters) - m + 1)):
            return m
    return None


@dataclass
class JoinBusting:
    n_obs: int
    argmax: str
    window: tuple[int, int]
    join: list[str]
    per_horizon: list[int]


def join_busting_profile(
    h: SubgroupSpec,
    horizon: int,
    seed: int = 0,
    budget: int = DEFAULT_BALL_BUDGET,
    per_length: int = DEFAULT_SAMPLES_PER_LENGTH,
) -> JoinBusting:
    if horizon < 1:
        raise InputError("horizon must be at least 1")
    graph = h.graph
    best = (0, "", (0, 0), [])
    per = []
    for length in range(1, horizon + 1):
        for symbols in sample_words(h, length, seed, budget, per_length):
            word, _ = h.prism_word(symbols)
            geo = PrismWord._raw(graph, canonical_letters(graph, word.letters))
            n, window, join = max_join_subword(geo)
            if n > best[0]:
                best = (n, geo.format(), window, graph.sorted(join or ()))
        per.append(best[0])
    return JoinBusting(best[0], best[1], best[2], best[3], per)


# ---------------------------------------------------------------------------
# diagram constants


@dataclass
class SubgroupDiagram:
    symbols: tuple[int, ...]
    sizes: list[int]
    geodesic: PrismWord
    diagram: DiskDiagram

    @property
    def h_length(self) -> int:
        return sum(self.sizes)


def subgroup_diagram(h: SubgroupSpec, symbols: Sequence[int]) -> SubgroupDiagram:
    """Canonical diagram for ``h * w^-1`` where ``w`` is the canonical geodesic of ``h``."""
    word, sizes = h.prism_word(symbols)
    geo = PrismWord._raw(h.graph, canonical_letters(h.graph, word.letters))
    return SubgroupDiagram(tuple(symbols), sizes, geo, build_diagram(word + geo.inverse()))


def _segment_index(sizes: Sequence[int]) -> list[int]:
    out = []
    for k, size in enumerate(sizes, start=1):
        out.extend([k] * size)
    return out


def observe_spread(sd: SubgroupDiagram) -> int:
    """Largest generator-index spread of a dual graph rooted in the subgroup word, or -1."""
    seg = _segment_index(sd.sizes)
    n = sd.h_length
    spread = -1
    for block in sd.diagram.blocks:
        idx = [seg[p] for p in block.roots if p < n]
        if idx:
            spread = max(spread, max(idx) - min(idx))
    return spread


def observe_vanishing(sd: SubgroupDiagram) -> int:
    """Longest run of generators none of whose letters share a block with the ``w^-1`` range."""
    n = sd.h_length
    owner = sd.diagram.block_of()
    contributes = [
        any(p >= n for p in sd.diagram.blocks[owner[q]].roots) for q in range(n)
    ]
    run = best = 0
    pos = 0
    for size in sd.sizes:
        if not any(contributes[pos:pos + size]):
            run += 1
            best = max(best, run)
        else:
            run = 0
        pos += size
    return best


def observe_concatenation(h: SubgroupSpec, sd: SubgroupDiagram) -> int:
    """Largest ``j - i`` over subwords ``h_i..h_j`` whose concatenated diagram has a
    dual graph rooted in the new geodesic as well as in both the prefix and the suffix; -1 if none.
    """
    graph = h.graph
    sizes = sd.sizes
    starts = [0]
    for size in sizes:
        starts.append(starts[-1] + size)
    n_sym = len(sizes)
    best = -1
    for i in range(2, n_sym):  # need a nonempty prefix h_1..h_{i-1}
        for j in range(i, n_sym):  # and a nonempty suffix h_{j+1}..h_n
            if j - i <= best:
                continue
            sub = sd.diagram.boundary[starts[i - 1]:starts[j]]
            sub_word = PrismWord._raw(graph, sub)
            u = PrismWord._raw(graph, canonical_letters(graph, sub))
            d_prime = build_diagram(sub_word.inverse() + u)
            glued = concatenate(sd.diagram, d_prime, (starts[i - 1], starts[j]), (0, len(sub)))
            # glued boundary: prefix, u, suffix, w^-1
            pre = starts[i - 1]
            u_end = pre + len(u)
            suf_end = u_end + (starts[-1] - starts[j])
            for block in glued.blocks:
                r = block.roots
                if (
                    any(p < pre for p in r)
                    and any(pre <= p < u_end for p in r)
                    and any(u_end <= p < suf_end for p in r)
                ):
                    best = max(best, j - i)
                    break
    return best


@dataclass
class Constants:
    d_obs: int
    k_obs: int
    c_obs: int
    per_horizon: list[tuple[int, int, int]]


def measure_constants(
    h: SubgroupSpec,
    horizon: int,
    seed: int = 0,
    budget: int = DEFAULT_BALL_BUDGET,
    per_length: int = DEFAULT_SAMPLES_PER_LENGTH,
    concat_horizon: int = 8,
) -> Constants:
    """Observed ``(D, K, C)``; concatenations are only tried up to ``concat_horizon`` generators."""
    if horizon < 2:
        raise InputError("horizon must be at least 2")
    spread = concat = -1
    vanish = 0
    per = []
    for length in range(1, horizon + 1):
        for symbols in sample_words(h, length, seed, budget, per_length):
            sd = subgroup_diagram(h, symbols)
            spread = max(spread, observe_spread(sd))
            vanish = max(vanish, observe_vanishing(sd))
            if length <= concat_horizon:
                concat = max(concat, observe_concatenation(h, sd))
        per.append((spread + 1, vanish, concat + 1))
    return Constants(spread + 1, vanish, concat + 1, per)


def reduction_control_cases(h: SubgroupSpec, sd: SubgroupDiagram) -> Iterator[tuple[int, int, int, int, bool]]:
    """Left-comb the diagram and yield ``(left, right, L, R, holds)`` for every pair."""
    n = sd.h_length
    m = len(sd.geodesic)
    w_range = (n, n + m)
    combed = left_comb(sd.diagram, w_range).diagram
    b = combing_functions(combed, w_range).beginning
    for left in range(1, m):
        for right in range(left + 1, m + 1):
            holds = reduction_control_check(combed, w_range, left, right, sd.sizes, h.m_h)
            yield left, right, segment_of(sd.sizes, b[left]), segment_of(sd.sizes, b[right]), holds


# ---------------------------------------------------------------------------
# distortion and obstructions


@dataclass
class DistortionRow:
    word: str
    h_length: int
    prism: int
    star: int


def distortion_table(
    h: SubgroupSpec,
    horizon: int,
    seed: int = 0,
    budget: int = DEFAULT_BALL_BUDGET,
    per_length: int = DEFAULT_SAMPLES_PER_LENGTH,
) -> list[DistortionRow]:
    """Rows ``(|h|_H, |h|_p, |h|_star)`` over sampled words, the identity first."""
    if horizon < 1:
        raise InputError("horizon must be at least 1")
    graph = h.graph
    rows = [DistortionRow("", 0, 0, 0)]
    for length in range(1, horizon + 1):
        for symbols in sample_words(h, length, seed, budget, per_length):
            word, _ = h.prism_word(symbols)
            geo = PrismWord._raw(graph, canonical_letters(graph, word.letters))
            rows.append(DistortionRow(_symbols_text(symbols), length, len(geo), star_length(geo)))
    return rows


def _symbols_text(symbols: Sequence[int]) -> str:
    return ".".join(f"s{abs(s)}" if s > 0 else f"s{abs(s)}^-1" for s in symbols)


def check_distortion(rows: Sequence[DistortionRow], d_obs: int, k_obs: int, n_obs: int, m_h: int) -> dict:
    """Which rows break the linear bounds implied by the observed constants."""
    out = {"qi_upper": [], "star_prism_order": [], "prism_vs_h": [], "join_busting_star": []}
    for r in rows:
        if r.h_length > (k_obs + d_obs) * r.prism + k_obs:
            out["qi_upper"].append(r.word)
        if not r.star <= r.prism:
            out["star_prism_order"].append(r.word)
        if not r.prism <= m_h * r.h_length:
            out["prism_vs_h"].append(r.word)
        if not r.prism <= n_obs * r.star:
            out["join_busting_star"].append(r.word)
    return out


def fit_qi_constants(rows: Sequence[DistortionRow], m_h: int) -> tuple[float, float]:
    """Smallest ``lam >= m_h`` from the rows' ratios, then the additive slack it needs."""
    lam = float(max([m_h, 1] + [r.h_length / r.prism for r in rows if r.prism]))
    c = max([0.0] + [(r.h_length - lam * r.prism) / lam for r in rows])
    return lam, c


@dataclass
class Certificate:
    element: str
    join: list[str]
    conjugator: str
    infinite_order: bool


def obstruction_certificates(
    h: SubgroupSpec,
    horizon: int,
    seed: int = 0,
    budget: int = DEFAULT_BALL_BUDGET,
    per_length: int = DEFAULT_SAMPLES_PER_LENGTH,
) -> list[Certificate]:
    """Sampled nontrivial elements conjugate into a join subgroup."""
    if horizon < 1:
        raise InputError("horizon must be at least 1")
    graph = h.graph
    seen = set()
    out = []
    for length in range(1, horizon + 1):
        for symbols in sample_words(h, length, seed, budget, per_length):
            word, _ = h.prism_word(symbols)
            key = canonical_letters(graph, word.letters)
            if not key or key in seen:
                continue
            seen.add(key)
            geo = PrismWord._raw(graph, key)
            found = is_conjugate_into_join(geo)
            if found is not None:
                join, conj = found
                out.append(Certificate(geo.format(), graph.sorted(join), conj.format(), not has_finite_order(geo)))
    return out


def verify_certificate(graph: DefiningGraph, cert: Certificate) -> bool:
    g = PrismWord.parse(graph, cert.element)
    conj = PrismWord.parse(graph, cert.conjugator)
    core = PrismWord._raw(graph, canonical_letters(graph, conj.inverse().letters + g.letters + conj.letters))
    return in_parabolic(core, cert.join) and graph.is_join(cert.join) is not None


# ---------------------------------------------------------------------------
# report


@dataclass
class AnalysisReport:
    subgroup: str
    generators: list[str]
    m_h: int
    horizon: int
    seed: int
    budgets: dict
    config_hash: str
    hypotheses: dict
    join_busting: dict
    constants: dict
    distortion: list[dict]
    distortion_violations: dict
    qi_fit: dict
    certificates: list[dict]
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)


def analyze(
    h: SubgroupSpec,
    horizon: int,
    seed: int = 0,
    budget: int = DEFAULT_BALL_BUDGET,
    per_length: int = DEFAULT_SAMPLES_PER_LENGTH,
    config_text: str = "",
) -> AnalysisReport:
    graph = h.graph
    jb = join_busting_profile(h, horizon, seed, budget, per_length)
    consts = measure_constants(h, max(horizon, 2), seed, budget, per_length)
    rows = distortion_table(h, horizon, seed, budget, per_length)
    violations = check_distortion(rows, consts.d_obs, consts.k_obs, jb.n_obs, h.m_h)
    lam, c = fit_qi_constants(rows, h.m_h)
    certs = obstruction_certificates(h, horizon, seed, budget, per_length)
    hypotheses = {
        "finite_vertex_groups": graph.has_finite_vertex_groups(),
        "isolated_vertices": graph.has_isolated_vertices(),
    }
    notes = ["constants are observed over canonical diagrams, not certified suprema"]
    if hypotheses["finite_vertex_groups"]:
        notes.append("finite vertex groups: certificates may miss infinite torsion intersections")
    if hypotheses["isolated_vertices"]:
        notes.append("isolated vertices: the join-busting criterion assumes there are none")
    return AnalysisReport(
        subgroup=h.name,
        generators=[g.format() for g in h.generators],
        m_h=h.m_h,
        horizon=horizon,
        seed=seed,
        budgets={"ball": budget, "per_length": per_length},
        config_hash=hashlib.sha256(config_text.encode()).hexdigest(),
        hypotheses=hypotheses,
        join_busting=asdict(jb),
        constants={
            "D_observed": consts.d_obs,
            "K_observed": consts.k_obs,
            "C_observed": consts.c_obs,
            "per_horizon": consts.per_horizon,
        },
        distortion=[asdict(r) for r in rows],
        distortion_violations=violations,
        qi_fit={"lambda": lam, "c": c},
        certificates=[asdict(c) for c in certs],
        notes=notes,
    )
