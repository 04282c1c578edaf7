"""Command line front end.

Subcommands: eval, check, families, search, repro. Exit codes are part of
the interface: 0 = holds / all passed / certified, 1 = violated / failed /
counterexample found, 2 = usage or parse error, 3 = search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import corpus, dsl, laws
from . import operators as ops
from . import search as search_mod
from .space import Space, SpaceDocumentError, parse_space
from .verdicts import Verdict, Witness


def _load_space(path: str) -> Space:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_space(fh.read())


def _parse_binding(space: Space, text: str) -> tuple[str, int]:
    name, sep, subset = text.partition("=")
    if not sep:
        raise ValueError(f"binding must look like A=w1,w3 (got {text!r})")
    return name.strip(), space.ground.parse_subset(subset)


def _witness_text(space: Space, witness: Witness) -> str:
    fmt = space.ground.format
    parts = [f"{name}={fmt(bits)}" for name, bits in witness.bindings]
    parts.append(f"lhs={fmt(witness.lhs)}")
    if witness.rhs is not None:
        parts.append(f"rhs={fmt(witness.rhs)}")
    if witness.operation is not None:
        parts.append(f"({witness.operation})")
    return " ".join(parts)


def _witness_json(space: Space, witness: Witness) -> dict:
    labels = space.ground.labels_of
    return {
        "bindings": {name: labels(bits) for name, bits in witness.bindings},
        "lhs": labels(witness.lhs),
        "rhs": None if witness.rhs is None else labels(witness.rhs),
        "operation": witness.operation,
    }


def _verdict_json(space: Space, verdict: Verdict) -> dict:
    return {
        "status": "Holds" if verdict.holds else "Violated",
        "witness": None if verdict.witness is None else _witness_json(space, verdict.witness),
    }


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def cmd_eval(args) -> int:
    space = _load_space(args.space)
    expr = dsl.parse_expr(args.expr)
    bindings = dict(_parse_binding(space, b) for b in args.bind)
    value = dsl.eval_expr(space, bindings, expr)
    if args.json:
        _emit_json(
            {
                "expr": args.expr,
                "bindings": {k: space.ground.labels_of(v) for k, v in bindings.items()},
                "value": space.ground.labels_of(value),
                "raw": value,
            }
        )
    elif args.raw:
        print(value)
    else:
        print(space.ground.format(value))
    return 0


def cmd_check(args) -> int:
    space = _load_space(args.space)
    results = []
    if args.law:
        results.append((args.law, dsl.check_law(space, dsl.parse_law(args.law), var_cap=args.var_cap)))
    if args.name:
        results.append((args.name, laws.get_law(args.name).check(space)))
    if args.laws_file:
        with open(args.laws_file, "r", encoding="utf-8") as fh:
            text = fh.read()
        for law in dsl.read_laws_file(text):
            results.append((dsl.format_law(law), dsl.check_law(space, law, var_cap=args.var_cap)))
    if not results:
        raise ValueError("nothing to check: pass --law, --name or --laws-file")
    if args.json:
        _emit_json(
            [{"law": text, **_verdict_json(space, verdict)} for text, verdict in results]
        )
    else:
        for text, verdict in results:
            if verdict.holds:
                print(f"Holds     {text}")
            else:
                print(f"Violated  {text}  [{_witness_text(space, verdict.witness)}]")
    return 0 if all(v.holds for _, v in results) else 1


def cmd_families(args) -> int:
    space = _load_space(args.space)
    family = ops.kopen_family(space, ops.KIND_BY_NAME[args.kind])
    if args.json:
        _emit_json([space.ground.labels_of(s) for s in family])
    else:
        for subset in family:
            print(subset if args.raw else space.ground.format(subset))
    return 0


def cmd_search(args) -> int:
    documents = []
    for path in args.space or ():
        with open(path, "r", encoding="utf-8") as fh:
            documents.append(fh.read())
    mode = args.mode
    if mode is None:
        mode = "documents" if documents else "exhaustive"
    if mode == "documents" and not documents:
        raise ValueError("documents mode needs at least one --space file")
    if mode != "documents" and documents:
        raise ValueError(f"--space files conflict with --mode {mode}")
    task = search_mod.SearchTask(
        law_text=args.law,
        n=args.points,
        mode=mode,
        want="all-minimal" if args.all_minimal else "first",
        budget_spaces=args.budget_spaces,
        budget_assignments=args.budget_assignments,
        max_subbase_size=args.max_subbase_size,
        var_cap=args.var_cap,
        documents=tuple(documents),
    )
    result = search_mod.run_search(task, workers=args.workers)
    sys.stdout.write(search_mod.report_json(result))
    if result.status == search_mod.STATUS_CERTIFIED:
        return 0
    if result.status == search_mod.STATUS_FOUND:
        return 1
    return 3


def cmd_repro(args) -> int:
    reports = corpus.run_corpus(only=args.only)
    if args.json:
        _emit_json(
            [
                {
                    "id": r.entry_id,
                    "title": r.title,
                    "checks": r.checks,
                    "passed": r.passed,
                    "failures": list(r.failures),
                }
                for r in reports
            ]
        )
    else:
        for r in reports:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark} {r.entry_id} ({r.checks} checks) {r.title}")
            for failure in r.failures:
                print(f"    {failure}")
        passed = sum(1 for r in reports if r.passed)
        print(f"{passed}/{len(reports)} entries passed")
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealtop",
        description="Workbench for finite ideal topological spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate a set expression on a space")
    p_eval.add_argument("expr", help="expression, e.g. 'sstar(union(A,B))'")
    p_eval.add_argument("--space", required=True, help="space-document JSON file")
    p_eval.add_argument(
        "--bind",
        action="append",
        default=[],
        metavar="VAR=SUBSET",
        help="variable binding, e.g. A=w1,w3 (repeatable; empty set: A=)",
    )
    p_eval.add_argument("--raw", action="store_true", help="print the subset as an integer bitmask")
    p_eval.add_argument("--json", action="store_true")
    p_eval.set_defaults(func=cmd_eval)

    p_check = sub.add_parser("check", help="check laws on a space")
    p_check.add_argument("--space", required=True)
    p_check.add_argument("--law", help="law text, e.g. 'sstar(union(A,B)) == union(sstar(A),sstar(B))'")
    p_check.add_argument("--name", help="registry law name, e.g. additivity:sstar")
    p_check.add_argument("--laws-file", help="file with one law per line, # comments")
    p_check.add_argument("--var-cap", type=int, default=3)
    p_check.add_argument("--json", action="store_true")
    p_check.set_defaults(func=cmd_check)

    p_fam = sub.add_parser("families", help="print a generalized-open family")
    p_fam.add_argument("kind", choices=sorted(ops.KIND_BY_NAME))
    p_fam.add_argument("--space", required=True)
    p_fam.add_argument("--raw", action="store_true")
    p_fam.add_argument("--json", action="store_true")
    p_fam.set_defaults(func=cmd_families)

    p_search = sub.add_parser("search", help="hunt for counterexamples over enumerated spaces")
    p_search.add_argument("law", help="law text to refute or certify")
    p_search.add_argument("--points", type=int, default=3, help="ground set size (default 3)")
    p_search.add_argument(
        "--mode",
        choices=["exhaustive", "subbase", "documents"],
        default=None,
        help="space stream (default: exhaustive, or documents when --space given)",
    )
    p_search.add_argument(
        "--space",
        action="append",
        metavar="FILE",
        help="space-document file (repeatable; implies --mode documents)",
    )
    p_search.add_argument("--all-minimal", action="store_true", help="collect all minimal violating spaces")
    p_search.add_argument("--budget-spaces", type=int, default=None)
    p_search.add_argument("--budget-assignments", type=int, default=None)
    p_search.add_argument("--max-subbase-size", type=int, default=3)
    p_search.add_argument("--var-cap", type=int, default=3)
    p_search.add_argument("--workers", type=int, default=1)
    p_search.add_argument("--seed", type=int, default=None, help="reserved; all modes are deterministic")
    p_search.set_defaults(func=cmd_search)

    p_repro = sub.add_parser("repro", help="re-run the embedded corpus")
    p_repro.add_argument("--only", help="run a single corpus entry by id")
    p_repro.add_argument("--json", action="store_true")
    p_repro.set_defaults(func=cmd_repro)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpaceDocumentError, dsl.DslError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
