"""Command-line interface: ``graphprod <command> [options] ARGS``."""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import analyzer, contact, diagrams, oracle, render, words
from .config import ProjectConfig, load_config, parse_config
from .errors import BudgetExceeded, InputError, InvalidDiagram
from .graph import DefiningGraph
from .groups import FiniteCyclic

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_INVARIANT = 0, 2, 3, 4

DEFAULT_CONFIG = """\
seed = 0

[graph]
vertices = ["a", "b", "c", "d"]
edges = [["a", "b"], ["b", "c"], ["c", "d"]]
"""


class InvariantViolation(Exception):
    pass


def _word(graph: DefiningGraph, text: str) -> words.PrismWord:
    return words.PrismWord.parse(graph, "" if text == "id" else text)


def _show(w: words.PrismWord) -> str:
    return w.format() or "id"


def _hyperplane(graph: DefiningGraph, text: str) -> contact.Hyperplane:
    vertex, sep, rest = text.partition("@")
    if not sep or vertex not in graph.index:
        raise InputError(f"bad hyperplane {text!r}; expected vertex@word")
    return contact.hyperplane(vertex, _word(graph, rest))


def _emit_json(obj, path: str | None) -> str:
    text = json.dumps(obj, sort_keys=True)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def cmd_reduce(cfg: ProjectConfig, args) -> int:
    w = _word(cfg.graph, args.word)
    geo, trace = words.reduce_to_geodesic(w)
    print(_show(geo))
    print(f"length {len(geo)}")
    if args.json:
        _emit_json({"input": args.word, "geodesic": _show(geo), "length": len(geo),
                    "moves": [[m.kind, m.position] for m in trace]}, args.json)
    return EXIT_OK


def cmd_geodesics(cfg: ProjectConfig, args) -> int:
    w = _word(cfg.graph, args.word)
    limit = args.budget or cfg.budgets["geodesics"]
    reps = sorted(_show(r) for r in words.geodesic_representatives(w, limit=limit))
    for r in reps:
        print(r)
    if args.json:
        _emit_json({"input": args.word, "geodesics": reps}, args.json)
    return EXIT_OK


def cmd_star_length(cfg: ProjectConfig, args) -> int:
    w = _word(cfg.graph, args.word)
    n = contact.star_length(w)
    print(n)
    if args.json:
        _emit_json({"input": args.word, "star_length": n}, args.json)
    return EXIT_OK


def cmd_diagram(cfg: ProjectConfig, args) -> int:
    d = diagrams.build_diagram(_word(cfg.graph, args.word))
    problems = diagrams.validate(d)
    if problems:
        raise InvariantViolation(f"diagram failed validation: {problems[0]}")
    print(json.dumps(d.to_json(), sort_keys=True))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render.diagram_svg(d))
    if args.json:
        _emit_json(d.to_json(), args.json)
    return EXIT_OK


def cmd_comb(cfg: ProjectConfig, args) -> int:
    graph = cfg.graph
    g = _word(graph, args.word)
    w = words.geodesic(g)
    d = diagrams.build_diagram(g + w.inverse())
    w_range = (len(g), len(g) + len(w))
    before = diagrams.combing_functions(d, w_range)
    result = (diagrams.right_comb if args.right else diagrams.left_comb)(d, w_range)
    after = diagrams.combing_functions(result.diagram, w_range)
    report = {
        "g": _show(g),
        "w": _show(w),
        "combed_w": _show(result.word),
        "permutation": list(result.permutation),
        "beginning_before": [before.beginning[i] for i in sorted(before.beginning)],
        "beginning_after": [after.beginning[i] for i in sorted(after.beginning)],
        "ending_before": [before.ending[i] for i in sorted(before.ending)],
        "ending_after": [after.ending[i] for i in sorted(after.ending)],
    }
    print(_emit_json(report, args.json))
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render.diagram_svg(result.diagram))
    return EXIT_OK


def cmd_contact_bounds(cfg: ProjectConfig, args) -> int:
    graph = cfg.graph
    h1, h2 = _hyperplane(graph, args.first), _hyperplane(graph, args.second)
    lower, upper = contact.contact_distance_bounds(h1, h2)
    out = {"first": str(h1), "second": str(h2), "lower": lower, "upper": upper,
           "carriers_intersect": contact.carriers_intersect(h1, h2)}
    if args.search or args.dot:
        search = contact.restricted_contact_distance(h1, h2, limit=args.budget or 2000)
        out["restricted_distance"] = search.distance
        out["restricted_exact"] = search.exact
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(render.contact_graph_dot(search.nodes, search.edges))
    print(_emit_json(out, args.json))
    return EXIT_OK


def cmd_orbit(cfg: ProjectConfig, args) -> int:
    prof = contact.orbit_profile(_word(cfg.graph, args.word), args.horizon or 10)
    lines = [json.dumps({"n": n, "prism": p, "star": s}, sort_keys=True) for n, p, s in prof.rows]
    print("\n".join(lines))
    print(f"{prof.classification}; translation estimate {prof.translation_estimate:.4f}", file=sys.stderr)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_analyze(cfg: ProjectConfig, args, config_text: str) -> int:
    if not cfg.subgroups:
        raise InputError("config declares no subgroups")
    names = [args.subgroup] if args.subgroup else sorted(cfg.subgroups)
    reports = []
    for name in names:
        if name not in cfg.subgroups:
            raise InputError(f"unknown subgroup {name!r}")
        h = analyzer.SubgroupSpec.parse(cfg.graph, cfg.subgroups[name], name)
        rep = analyzer.analyze(
            h,
            horizon=args.horizon or 8,
            seed=cfg.seed if args.seed is None else args.seed,
            budget=args.budget or cfg.budgets["ball"],
            per_length=cfg.budgets["samples"],
            config_text=config_text,
        )
        reports.append(json.loads(rep.to_json()))
    doc = reports[0] if len(reports) == 1 else {"reports": reports}
    text = json.dumps(doc, sort_keys=True, indent=2)
    print(text)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return EXIT_OK


def oracle_graph(graph: DefiningGraph, order: int = 5) -> DefiningGraph:
    """Same graph with every infinite vertex group swapped for a finite cyclic one."""
    groups = {v: (g if g.finite else FiniteCyclic(order)) for v, g in graph.groups.items()}
    return DefiningGraph(graph.vertices, [tuple(graph.sorted(e)) for e in graph.edges], groups)


def oracle_check(graph: DefiningGraph, radius: int) -> list[str]:
    """Compare fast paths against brute force; return a list of mismatches."""
    problems = []
    star = oracle.StarOracle(graph)
    for key, dist in oracle.prism_ball(graph, radius).items():
        w = words.PrismWord(graph, key)
        if words.prism_length(w) != dist:
            problems.append(f"prism length of {_show(w)}: {words.prism_length(w)} != {dist}")
        expect = star.distance(key)
        if contact.star_length(w) != expect:
            problems.append(f"star length of {_show(w)}: {contact.star_length(w)} != {expect}")
        if key:
            d = diagrams.build_diagram(w + w.inverse())
            bad = diagrams.validate(d, (len(w), 2 * len(w)))
            if bad:
                problems.append(f"diagram of {_show(w)}: {bad[0]}")
    return problems


def cmd_oracle_check(cfg: ProjectConfig, args) -> int:
    graph = oracle_graph(cfg.graph)
    problems = oracle_check(graph, args.radius)
    for p in problems:
        print(p)
    print(f"oracle-check radius {args.radius}: {'FAIL' if problems else 'ok'}")
    if args.json:
        _emit_json({"radius": args.radius, "problems": problems}, args.json)
    if problems:
        raise InvariantViolation(f"{len(problems)} oracle mismatches")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML project file (default: P4 over Z)")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--budget", type=int, help="enumeration cap for this command")
    common.add_argument("--horizon", type=int, help="power or word-length horizon")
    common.add_argument("--svg", help="write an SVG drawing here")
    common.add_argument("--dot", help="write a DOT graph here")
    common.add_argument("--json", help="write a JSON report here")

    parser = argparse.ArgumentParser(prog="graphprod", description="Word and diagram tools for graph products.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, arg, helptext in (
        ("reduce", "word", "print the canonical geodesic and its length"),
        ("geodesics", "word", "list every geodesic representative"),
        ("star-length", "word", "print the star length"),
        ("diagram", "word", "build and validate a diagram for an identity word"),
        ("comb", "word", "comb the diagram of g times its geodesic inverse"),
        ("orbit", "word", "JSON lines of prism and star lengths of powers"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument(arg)
        if name == "comb":
            p.add_argument("--right", action="store_true", help="right-comb instead")
    p = sub.add_parser("contact-bounds", parents=[common], help="contact distance bounds for two hyperplanes")
    p.add_argument("first", help="hyperplane as vertex@word")
    p.add_argument("second", help="hyperplane as vertex@word")
    p.add_argument("--search", action="store_true", help="also run the restricted contact search")
    p = sub.add_parser("analyze", parents=[common], help="analyze configured subgroups")
    p.add_argument("subgroup", nargs="?")
    p = sub.add_parser("oracle-check", parents=[common], help="cross-check against brute force")
    p.add_argument("--radius", type=int, default=3)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                config_text = fh.read()
            cfg = load_config(args.config)
        else:
            config_text = DEFAULT_CONFIG
            cfg = parse_config(DEFAULT_CONFIG)
        for warning in cfg.warnings:
            print(f"warning: {warning}", file=sys.stderr)
        handlers = {
            "reduce": cmd_reduce,
            "geodesics": cmd_geodesics,
            "star-length": cmd_star_length,
            "diagram": cmd_diagram,
            "comb": cmd_comb,
            "contact-bounds": cmd_contact_bounds,
            "orbit": cmd_orbit,
            "oracle-check": cmd_oracle_check,
        }
        if args.command == "analyze":
            return cmd_analyze(cfg, args, config_text)
        return handlers[args.command](cfg, args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvariantViolation, InvalidDiagram) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
