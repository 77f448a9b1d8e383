"""Command-line entry point: ``lconvex <command> ...``.

Exit codes: 0 pass, 1 usage or input error, 2 check failure, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path
from typing import Callable

import numpy as np

from .. import convex, lattice, order, scott, sober
from .._common import BudgetExceeded, FileFormatError, LConvexError, SCOTT_BUDGET
from . import io
from .generators import InstanceSpec
from .search import HYPOTHESES, TARGETS, SearchStats, search_counterexamples
from .theorems import CHECK_IDS, MUTATIONS, run_suite

OK, USAGE, FAILED, BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _dump(doc: dict, path: str | None) -> None:
    if path:
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n")


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def _lattice_arg(token: str) -> lattice.ResiduatedLattice:
    return io.resolve_lattice(token, Path.cwd())


# ----------------------------------------------------------------- commands
def cmd_check_lattice(args) -> int:
    rep = lattice.verify_lattice_laws(_lattice_arg(args.lattice))
    print(rep.format())
    _dump(rep.to_dict(), args.report)
    return OK if rep.passed else FAILED


def cmd_check_order(args) -> int:
    try:
        p = io.load(args.file, "order")
    except (order.E1Violation, order.E2Violation, order.E3Violation) as exc:
        print(f"not an L-order: {exc}")
        return FAILED
    js = order.is_join_semilattice(p)
    print(f"order {p.name} over {p.lattice.name}: E1-E3 hold")
    print(io.format_order(p), end="")
    print(f"join-semilattice: {js.holds}" + ("" if js else f"  (no supremum for {js.witness})"))
    _dump({"order": p.name, "lattice": p.lattice.name, "valid": True, "join_semilattice": js.holds,
           "e": [[p.lattice.label(int(d)) for d in r] for r in p.e]}, args.report)
    return OK


def cmd_check_space(args) -> int:
    x = io.load(args.file, "space", closed=args.closed)
    rep = convex.verify_space_axioms(x, directed_bound=args.directed_bound)
    print(f"space {x.name} over {x.lattice.name}: |X| = {x.size}, |C| = {len(x)}")
    print(rep.format())
    if args.members:
        print(io.format_space(x), end="")
    _dump(rep.to_dict(), args.report)
    return OK if rep.passed else FAILED


def cmd_sobrify(args) -> int:
    x = io.load(args.file, "space", closed=args.closed)
    res = sober.sobrify(x, oracle=args.oracle, check=True)
    print(res.format())
    _dump(res.to_dict(), args.report)
    return OK


def cmd_specialize(args) -> int:
    x = io.load(args.file, "space", closed=args.closed)
    p = scott.specialization(x)
    js = order.is_join_semilattice(p)
    print(io.format_order(p), end="")
    print(f"join-semilattice: {js.holds}")
    _dump({"space": x.name, "lattice": x.lattice.name, "carrier": list(x.carrier.labels),
           "e": [[x.lattice.label(int(d)) for d in r] for r in p.e], "join_semilattice": js.holds}, args.report)
    return OK


def cmd_scott(args) -> int:
    p = io.load(args.file, "order")
    sp = scott.scott_structure(p, args.budget, check=True, oracle=args.oracle)
    print(f"sigma*({p.name}): {len(sp)} Scott convex L-subsets")
    for i, s in enumerate(sp.members):
        print("  " + io.format_subset_literal(f"S{i}", s))
    _dump({"order": p.name, "lattice": p.lattice.name, "carrier": list(p.carrier.labels),
           "scott_convex": [[p.lattice.label(int(d)) for d in r] for r in sp.rows]}, args.report)
    return OK


def cmd_complete(args) -> int:
    p = io.load(args.file, "order")
    comp = scott.completion(p, args.budget, check=True)
    print(comp.format())
    doc = comp.to_dict()
    status = OK if all(comp.verdicts.values()) else FAILED
    if args.verify_universal:
        v = scott.verify_completion(p, comp.completion_order, comp.xi, args.budget)
        print(f"universal property: {v.holds}")
        for key, val in v.details.items():
            print(f"  {key}: {val}")
        doc["universal"] = {"holds": v.holds, **v.details}
        status = status if v else FAILED
    _dump(doc, args.report)
    return status


def cmd_theorems(args) -> int:
    spec = InstanceSpec.from_file(args.spec) if args.spec else InstanceSpec()
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    if args.budget is not None:
        spec = spec.with_budget(args.budget)
    report = run_suite(spec, only=tuple(args.only) if args.only else None, mutation=args.mutation)
    print(report.format())
    if args.json:
        Path(args.json).write_text(report.to_json() + "\n")
    return OK if report.passed else FAILED


def cmd_search(args) -> int:
    spec = InstanceSpec.from_file(args.spec) if args.spec else InstanceSpec()
    if args.lattice:
        spec = dataclasses.replace(spec, lattices=tuple(args.lattice))
    stats = SearchStats()
    findings = []
    for f in search_counterexamples(args.target, spec, tuple(args.hypothesis) if args.hypothesis else None, stats):
        findings.append(f.to_dict())
        detail = ", ".join(f"{k}={v}" for k, v in f.detail.items())
        print(f"finding: {f.space} over {f.lattice} members={list(f.members)} {detail}")
    print(f"{stats.visited} spaces visited, {stats.skipped} over budget, {len(findings)} findings")
    _dump({"target": args.target, "spec": spec.to_dict(), "visited": stats.visited, "skipped": stats.skipped,
           "findings": findings}, args.json)
    return OK


# ------------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lconvex", description="Finite L-convex spaces: sobrification and join-semilattice completion.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.set_defaults(fn=fn)
        return p

    p = command("check-lattice", cmd_check_lattice, "verify the residuation laws of a lattice file or name")
    p.add_argument("lattice")
    p.add_argument("--report")

    p = command("check-order", cmd_check_order, "validate E1-E3 for an order file")
    p.add_argument("file")
    p.add_argument("--report")

    for name, fn, help in (("check-space", cmd_check_space, "close generators and verify C1-C4"),
                           ("sobrify", cmd_sobrify, "construct X^F and xi"),
                           ("specialize", cmd_specialize, "print the specialization L-order")):
        p = command(name, fn, help)
        p.add_argument("file")
        p.add_argument("--closed", action="store_true", help="the listed subsets are the whole family")
        p.add_argument("--report")
        if name == "check-space":
            p.add_argument("--directed-bound", type=int, default=3)
            p.add_argument("--members", action="store_true", help="also list the members")
        if name == "sobrify":
            p.add_argument("--oracle", action="store_true", help="cross-check X^F by the definitional iteration")

    p = command("scott", cmd_scott, "enumerate the Scott convex L-subsets of an order")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=SCOTT_BUDGET)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--report")

    p = command("complete", cmd_complete, "join-semilattice completion of an order")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=SCOTT_BUDGET)
    p.add_argument("--verify-universal", action="store_true")
    p.add_argument("--report")

    p = command("theorems", cmd_theorems, "run the theorem-regression suite")
    p.add_argument("--spec", help="instance spec (JSON)")
    p.add_argument("--seed", type=int)
    p.add_argument("--budget", type=int, help="override every budget")
    p.add_argument("--json", help="write the structured report here")
    p.add_argument("--only", nargs="+", choices=CHECK_IDS, metavar="ID")
    p.add_argument("--mutation", choices=sorted(MUTATIONS))

    p = command("search", cmd_search, "hunt for counterexamples")
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--spec")
    p.add_argument("--lattice", nargs="+")
    p.add_argument("--hypothesis", nargs="+", choices=sorted(HYPOTHESES))
    p.add_argument("--json")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return BUDGET
    except (FileFormatError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except LConvexError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
