"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 usage error.
Environment: ``SANDPILE_MAX_N`` caps ``--n`` (default 10), ``SANDPILE_THREADS``
sets the census worker count (default 1).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence, TextIO

from . import census as cen
from .chipfiring import enumerate_recurrents
from .families import coconut_prediction, fan_prediction, thagomizer_prediction
from .graphs import Multigraph, cone, load_graph, parse_family
from .sandpile import RootedGraph, mu, sandpile_group, spanning_tree_count
from .tutte import tutte

SUITES = ("all", "theorem1", "bounds", "lemma62", "lemma63", "lemma64", "ding", "merino",
          "consistency", "table", "poset")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Routes argparse errors through :class:`UsageError` so they share one stream."""

    def error(self, message: str) -> None:  # type: ignore[override]
        command = self.prog.partition(" ")[2]
        raise UsageError(f"{command}: {message}" if command else message)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def _target_graph(args: argparse.Namespace) -> tuple[Multigraph, int]:
    """Graph for a family argument and its default root (the cone vertex)."""
    target = args.family
    if getattr(args, "graph", False):
        if not target.startswith("file:"):
            raise UsageError("--graph needs a file:PATH target")
        path = target[len("file:"):]
        if not os.path.isfile(path):
            raise UsageError(f"no such file: {path}")
        g = load_graph(path)
        return g, g.n - 1
    try:
        tree = parse_family(target).build()
    except (ValueError, FileNotFoundError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    return cone(tree), tree.n


def _root(args: argparse.Namespace, g: Multigraph, default: int) -> int:
    root = default if args.root is None else args.root
    if not 0 <= root < g.n:
        raise UsageError(f"root {root} out of range 0..{g.n - 1}")
    return root


def _emit(out: TextIO, payload: object) -> None:
    out.write(json.dumps(payload, indent=2) + "\n")


def cmd_group(args: argparse.Namespace, out: TextIO) -> int:
    g, default = _target_graph(args)
    root = _root(args, g, default)
    group = sandpile_group(RootedGraph(g, root))
    if args.json:
        _emit(out, {"target": args.family, "root": root, "group": str(group),
                    **group.to_json(), "order": group.order, "mu": mu(group)})
    else:
        out.write(f"{group} (order {group.order}, mu={mu(group)})\n")
    return 0


def cmd_tutte(args: argparse.Namespace, out: TextIO) -> int:
    g, _ = _target_graph(args)
    poly = tutte(g)
    if args.at_x1:
        coeffs = list(poly.at_x1().coeffs)
        if args.json:
            _emit(out, {"target": args.family, "t1y": coeffs})
        else:
            out.write(json.dumps(coeffs) + "\n")
    elif args.json:
        _emit(out, {"target": args.family, "terms": [list(t) for t in poly.triples()]})
    else:
        out.write(" ".join(f"({i},{j}):{c}" for i, j, c in poly.triples()) + "\n")
    return 0


def cmd_recurrents(args: argparse.Namespace, out: TextIO) -> int:
    g, default = _target_graph(args)
    rg = RootedGraph(g, _root(args, g, default))
    configs = enumerate_recurrents(rg, bound=args.bound)
    payload: dict = {"target": args.family, "root": rg.root, "count": len(configs)}
    if args.weights:
        counts: dict[int, int] = {}
        for c in configs:
            counts[sum(c)] = counts.get(sum(c), 0) + 1
        payload["weights"] = [counts.get(k, 0) for k in range(max(counts) + 1)] if counts else []
    if args.json:
        _emit(out, payload)
    else:
        out.write(f"{payload['count']}\n")
        if args.weights:
            out.write(json.dumps(payload["weights"]) + "\n")
    return 0


def cmd_predict(args: argparse.Namespace, out: TextIO) -> int:
    try:
        family = parse_family(args.family)
    except (ValueError, FileNotFoundError) as exc:
        raise UsageError(str(exc)) from None
    if family.kind == "coconut":
        pred = coconut_prediction(*family.params)
    elif family.kind == "path":
        pred = fan_prediction(*family.params)
    elif family.kind == "star":
        pred = thagomizer_prediction(*family.params)
    else:
        raise UsageError("predict supports path:N, star:N and coconut:P,S")
    payload: dict = {"target": args.family, "tau": pred.tau, "group": str(pred.group),
                     **pred.group.to_json()}
    if pred.t1y is not None:
        payload["t1y"] = list(pred.t1y.coeffs)
    status = 0
    if args.verify:
        tree = family.build()
        g = cone(tree)
        actual = sandpile_group(RootedGraph(g, tree.n))
        tau = spanning_tree_count(g)
        match = actual == pred.group and tau == pred.tau
        payload["verify"] = {"group": str(actual), "tau": tau, "match": match}
        status = 0 if match else 1
    if args.json:
        _emit(out, payload)
    else:
        out.write(f"tau {pred.tau}\ngroup {pred.group}\n")
        if pred.t1y is not None:
            out.write(f"t1y {json.dumps(list(pred.t1y.coeffs))}\n")
        if args.verify:
            v = payload["verify"]
            out.write(f"snf {v['group']} (tau {v['tau']}): {'match' if v['match'] else 'MISMATCH'}\n")
    return status


def _check_n(args: argparse.Namespace) -> None:
    cap = _env_int("SANDPILE_MAX_N", cen.CENSUS_MAX_N)
    if not 2 <= args.n <= min(cap, cen.CENSUS_MAX_N):
        raise UsageError(f"--n must be in 2..{min(cap, cen.CENSUS_MAX_N)}")


def cmd_verify(args: argparse.Namespace, out: TextIO) -> int:
    suite, n = args.suite, args.n
    workers = _env_int("SANDPILE_THREADS", 1)
    if suite == "lemma64":
        result = cen.verify_lemma_64().to_json()
    else:
        _check_n(args)
        if suite == "all":
            result = cen.verify_all(n, workers)
        elif suite == "theorem1":
            result = cen.verify_theorem1(n).to_json()
        elif suite == "lemma63":
            result = cen.verify_lemma_63(n).to_json()
        else:
            if suite == "bounds" and n < 3:
                raise UsageError("bounds suite needs --n >= 3")
            if suite == "merino" and n > cen.MERINO_MAX_N:
                raise UsageError(f"merino suite needs --n <= {cen.MERINO_MAX_N}")
            if suite == "table" and n != 7:
                raise UsageError("table suite is defined for --n 7")
            records = cen.build_census(n, workers)
            if suite == "bounds":
                report = cen.verify_theorem_bounds(n, records)
            elif suite == "lemma62":
                report = cen.verify_lemma_62(n, records)
            elif suite == "merino":
                report = cen.verify_merino(n, records)
            elif suite == "consistency":
                report = cen.verify_consistency(n, records)
            elif suite == "table":
                report = cen.verify_table(records)
            else:
                poset = cen.build_poset(n, records)
                report = cen.verify_ding_monotonicity(n, poset) if suite == "ding" \
                    else cen.verify_poset_structure(poset)
            result = report.to_json()
    if args.summary:
        suites = result["suites"] if "suites" in result else [result]
        for s in suites:
            out.write(f"{'PASS' if s['passed'] else 'FAIL'} {s['suite']} ({s['checked']} checks)\n")
    else:
        _emit(out, result)
    return 0 if result["passed"] else 1


def render_table(records: list[cen.TreeRecord], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(cen.census_to_json(records), indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "canonical_code", "group", "tau", "mu", "t1y_coefficients"])
        for i, r in enumerate(records, start=1):
            w.writerow([i, r.code.decode(), str(r.group), r.tau, r.mu, " ".join(map(str, r.t1y.coeffs))])
        return buf.getvalue()
    lines = ["| # | tree | K(Cone(T)) | tau | mu | T(1,y) |", "|---|---|---|---|---|---|"]
    for i, r in enumerate(records, start=1):
        lines.append(f"| {i} | `{r.code.decode()}` | {r.group} | {r.tau} | {r.mu} | {r.t1y} |")
    return "\n".join(lines) + "\n"


def cmd_table(args: argparse.Namespace, out: TextIO) -> int:
    _check_n(args)
    records = cen.build_census(args.n, _env_int("SANDPILE_THREADS", 1))
    out.write(render_table(records, "json" if args.json else args.format))
    return 0


def cmd_poset(args: argparse.Namespace, out: TextIO) -> int:
    _check_n(args)
    poset = cen.build_poset(args.n, workers=_env_int("SANDPILE_THREADS", 1))
    if args.dot:
        out.write(cen.poset_to_dot(poset))
    elif args.json:
        _emit(out, {"nodes": cen.census_to_json(poset.nodes),
                    "cover_edges": [[i + 1, j + 1] for i, j in poset.cover_edges]})
    else:
        for i, j in poset.cover_edges:
            out.write(f"{i + 1} ({poset.nodes[i].group}) < {j + 1} ({poset.nodes[j].group})\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sandcone", description="Sandpile groups of cones over trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def target(p: argparse.ArgumentParser, graph_ok: bool = True) -> None:
        p.add_argument("family", help="path:N | star:N | coconut:P,S | file:PATH")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if graph_ok:
            p.add_argument("--graph", action="store_true",
                           help="treat file:PATH as the graph itself rather than a tree to cone over")

    p = sub.add_parser("group", help="sandpile group of the cone")
    target(p)
    p.add_argument("--root", type=int, help="root vertex (default: cone vertex)")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("tutte", help="Tutte polynomial of the cone")
    target(p)
    p.add_argument("--at-x1", action="store_true", help="print T(1,y) coefficients")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("recurrents", help="count recurrent configurations")
    target(p)
    p.add_argument("--root", type=int, help="root vertex (default: cone vertex)")
    p.add_argument("--weights", action="store_true", help="also print the weight enumerator")
    p.add_argument("--bound", type=int, default=10**7, help="max stable configurations to scan")
    p.set_defaults(func=cmd_recurrents)

    p = sub.add_parser("predict", help="closed-form prediction for a named family")
    target(p, graph_ok=False)
    p.add_argument("--verify", action="store_true", help="compare with the Smith normal form")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("verify", help="run verification suites over all trees on n vertices")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--summary", action="store_true", help="one line per suite instead of JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="census table for trees on n vertices")
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--json", action="store_true", help="same as --format json")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("poset", help="cover relations of the tree-shift poset")
    p.add_argument("--n", type=int, default=7)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_poset)
    return parser


def parse_and_run(argv: Sequence[str] | None = None, out: TextIO | None = None,
                  err: TextIO | None = None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        return args.func(args, out)
    except (UsageError, ValueError) as exc:
        # library ValueErrors all stem from bad input (bounds, loops, disconnection)
        err.write(f"sandcone: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(parse_and_run())
