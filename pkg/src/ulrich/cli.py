"""Command-line interface.

Partitions are written block by block: entries comma-separated, blocks
separated by '|', e.g. "5|3,-1,-2,-4|-5".  Types are comma-separated lengths,
e.g. "2,8,2".

Exit codes: 0 success / positive verdict; 1 negative verdict (not Ulrich,
identity fails, counterexample found); 2 usage error; 3 resource budget
exhausted before completion.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis, core, diagram, families, geometry, search
from .core import BlockedPartition, FlagType

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _usage(message: str) -> SystemExit:
    print(f"error: {message}", file=sys.stderr)
    return SystemExit(EXIT_USAGE)


def _parse_type(text: str) -> FlagType:
    try:
        return FlagType(tuple(int(x) for x in text.replace("|", ",").split(",")))
    except ValueError as exc:
        raise _usage(f"bad type {text!r}: {exc}")


def _emit(args, payload: dict, lines) -> None:
    if args.json:
        payload["schema"] = 1
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)


def _witness_text(verdict: core.UlrichVerdict) -> str | None:
    if verdict.witness is None:
        return None
    kind, t = verdict.witness
    return f"{kind} {t}"


# -- subcommands -------------------------------------------------------------

def _cmd_check(args) -> int:
    P = core.parse_partition(args.partition)
    verdict = core.is_ulrich(P)
    witness = _witness_text(verdict)
    lines = ["ULRICH" if verdict else f"NOT-ULRICH: {witness}"]
    _emit(args, {
        "command": "check",
        "partition": core.format_partition(P),
        "type": list(P.type.lengths),
        "N": P.dimension,
        "ulrich": bool(verdict),
        "witness": witness,
    }, lines)
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_diagram(args) -> int:
    P = core.parse_partition(args.partition)
    if args.svg is not None:
        text = diagram.render_svg(P)
        if args.svg == "-":
            print(text)
        else:
            with open(args.svg, "w") as fh:
                fh.write(text)
    table = diagram.evolution_table(P)
    if args.json:
        payload = {
            "schema": 1,
            "command": "diagram",
            "partition": core.format_partition(P),
            "velocities": list(table.velocities),
            "rows": [list(row) for row in table.rows],
            "coincidences": {
                str(t): [list(g) for g in table.coincidences(t)]
                for t in table.times if table.coincidences(t)},
        }
        print(json.dumps(payload))
    elif args.svg is None:
        print(diagram.render_ascii(P))
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    ft = _parse_type(args.type)
    limits = search.SearchLimits(budget_seconds=args.budget_seconds)
    report = search.enumerate_ulrich(ft, limits=limits, workers=args.threads,
                                     method=args.method)
    lines = [core.format_partition(P) for P in report.classes]
    lines.append(f"count {report.count} "
                 f"({'complete' if report.completed else 'INCOMPLETE'}, "
                 f"{report.nodes} nodes, {report.elapsed:.2f}s)")
    payload = search.report_to_dict(report)
    payload["command"] = "enumerate"
    _emit(args, payload, lines)
    return EXIT_OK if report.completed else EXIT_BUDGET


_FAMILIES = {
    "one_n_one": (families.one_n_one, "n signs   e.g.: one_n_one 4 +-+-"),
    "two_one_k": (families.two_one_k, "m         type (2,1,k), k=(4^(m+1)-1)/3"),
    "one_two_k": (families.one_two_k, "m         type (1,2,k)"),
    "two_param": (families.two_param, "m1 m2     type (k1+k2,2,1), m1 != m2"),
    "fundamental": (families.fundamental_F, "m         seed F_m, type (2,m-1,1)"),
    "elongated": (families.elongated_family, "k m       E^k(F_m), type (2,m-1+2km,1)"),
    "p_u": (families.p_u, "u         type (2,2u,2)"),
    "sporadic": (families.sporadic, "name      one of " + ",".join(families.sporadic_names())),
}


def _cmd_family(args) -> int:
    builder, _ = _FAMILIES[args.name]
    params = []
    for raw in args.params:
        if args.name == "sporadic":
            params.append(raw)
        elif args.name == "one_n_one" and set(raw) <= {"+", "-"}:
            params.append(tuple(1 if ch == "+" else -1 for ch in raw))
        else:
            try:
                params.append(int(raw))
            except ValueError:
                raise _usage(f"bad parameter {raw!r} for {args.name}")
    try:
        P = builder(*params)
    except (TypeError, ValueError) as exc:
        raise _usage(f"family {args.name}: {exc}")
    _emit(args, {
        "command": "family",
        "family": args.name,
        "partition": core.format_partition(P),
        "type": list(P.type.lengths),
        "N": P.dimension,
    }, [core.format_partition(P)])
    return EXIT_OK


def _cmd_analyze(args) -> int:
    P = core.parse_partition(args.partition)
    verdict = core.is_ulrich(P)
    witness = _witness_text(verdict)
    payload = {
        "command": "analyze",
        "partition": core.format_partition(P),
        "type": list(P.type.lengths),
        "N": P.dimension,
        "ulrich": bool(verdict),
        "witness": witness,
        "congruences_ok": core.congruence_ok(P),
    }
    lines = [f"partition: {core.format_partition(P)}",
             f"type: {','.join(map(str, P.type.lengths))}  N: {P.dimension}",
             "verdict: ULRICH" if verdict else f"verdict: NOT-ULRICH ({witness})",
             f"congruences: {'ok' if payload['congruences_ok'] else 'VIOLATED'}"]
    lines.append(f"symmetric: {core.format_partition(core.symmetric(P))}")
    payload["symmetric"] = core.format_partition(core.symmetric(P))
    if verdict:
        D = core.dual(P)
        payload["dual"] = core.format_partition(D)
        lines.append(f"dual: {core.format_partition(D)}")
    if len(P.type.lengths) == 3 and verdict:
        word = analysis.greedy_word(P).letters
        payload["greedy_word"] = word
        lines.append(f"greedy word: {word}")
        rect = analysis.rectangle_check(P)
        quads = list(analysis.trapezoid_witnesses(P))
        trap = all(analysis.trapezoid_check(P, *q) for q in quads)
        payload["rectangle_ok"] = rect
        payload["trapezoid_ok"] = trap
        payload["trapezoid_quadruples"] = len(quads)
        lines.append(f"rectangle rule: {'holds' if rect else 'FAILS'}")
        lines.append(f"trapezoid rule: {'holds' if trap else 'FAILS'} "
                     f"({len(quads)} quadruples)")
    if len(P.type.lengths) == 3 and len(P.blocks[1]) == 1:
        decomposition = analysis.sumset_decompose(P)
        if decomposition is None:
            payload["sumset"] = None
            lines.append("sumset decomposition: none")
        else:
            a_set, c_set, n_prime = decomposition
            payload["sumset"] = {"a": list(a_set), "c": list(c_set),
                                 "interval": [0, n_prime]}
            lines.append(f"sumset decomposition: A'={list(a_set)} "
                         f"C'={list(c_set)} tiling [0,{n_prime}]")
    _emit(args, payload, lines)
    return EXIT_OK if verdict else EXIT_NEGATIVE


def _cmd_verify(args) -> int:
    limits = search.SearchLimits(budget_seconds=args.budget_seconds)
    if args.claim == "multistep":
        bound = args.bound if args.bound is not None else 7
        done = search.verify_no_multistep(bound, limits, args.threads,
                                          args.checkpoint)
        claim = f"no Ulrich partition with >= 4 blocks, total length <= {bound}"
    else:
        bound = args.bound if args.bound is not None else (12 if args.long_run else 10)
        done = search.verify_conjecture_sweep(bound, limits, args.threads,
                                              args.checkpoint)
        claim = f"no three-block Ulrich partition with all lengths >= 3, sum <= {bound}"
    reports = sorted(done.values(), key=lambda rep: rep.type.lengths)
    incomplete = [rep for rep in reports if not rep.completed]
    nonempty = [rep for rep in reports if rep.count]
    lines = [f"type {','.join(map(str, rep.type.lengths))}: {rep.count} classes "
             f"({rep.nodes} nodes{'' if rep.completed else ', INCOMPLETE'})"
             for rep in reports]
    if nonempty:
        lines.append(f"COUNTEREXAMPLE to: {claim}")
        code = EXIT_NEGATIVE
    elif incomplete:
        lines.append(f"INCONCLUSIVE (budget exhausted): {claim}")
        code = EXIT_BUDGET
    else:
        lines.append(f"HOLDS: {claim}")
        code = EXIT_OK
    _emit(args, {
        "command": "verify",
        "claim": claim,
        "types": [search.report_to_dict(rep) for rep in reports],
        "holds": not nonempty and not incomplete,
        "completed": not incomplete,
    }, lines)
    return code


def _cmd_geometry(args) -> int:
    P = core.parse_partition(args.partition)
    pol = None
    if args.polarization:
        pol = geometry.PolarizationWeights(
            tuple(int(x) for x in args.polarization.split(",")))
    w = geometry.to_weight(P)
    h0, rank, degree, holds = geometry.ulrich_identity_check(P, pol)
    dim = geometry.flag_dimension(P.type)
    lines = [
        f"partition: {core.format_partition(P)}",
        f"flag variety: steps {','.join(map(str, P.type.k))} in n={P.type.n}"
        f"  dim {dim}  deg {degree}",
        f"bundle rank: {rank}",
        f"h^0: {h0}",
        f"identity h^0 = rank * deg: {'holds' if holds else 'FAILS'} "
        f"({rank} * {degree} = {rank * degree})",
    ]
    _emit(args, {
        "command": "geometry",
        "partition": core.format_partition(P),
        "weight": list(w.entries),
        "dim": dim,
        "degree": degree,
        "rank": rank,
        "h0": h0,
        "identity_holds": holds,
    }, lines)
    return EXIT_OK if holds else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit one JSON object instead of text")
    common.add_argument("--budget-seconds", type=float, default=None,
                        help="stop long searches after this wall time")
    common.add_argument("--threads", type=int, default=1,
                        help="worker processes for searches")

    parser = argparse.ArgumentParser(
        prog="ulrich",
        description="Classify, construct, and verify Ulrich partitions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="test one partition for the Ulrich property")
    p.add_argument("partition", help='e.g. "5|3,-1,-2,-4|-5"')
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("diagram", parents=[common],
                       help="draw the evolution of a partition")
    p.add_argument("partition")
    p.add_argument("--svg", metavar="PATH",
                   help="write an SVG ('-' for stdout) instead of ASCII")
    p.set_defaults(func=_cmd_diagram)

    p = sub.add_parser("enumerate", parents=[common],
                       help="classify all Ulrich partitions of a type")
    p.add_argument("type", help='comma-separated block lengths, e.g. "2,8,2"')
    p.add_argument("--method", default="auto",
                   choices=["auto", "time-branching", "baseline"])
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("family", parents=[common],
                       help="construct a member of a known family")
    p.add_argument("name", choices=sorted(_FAMILIES))
    p.add_argument("params", nargs="*",
                   help="; ".join(f"{k}: {v[1]}" for k, v in sorted(_FAMILIES.items())))
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("analyze", parents=[common],
                       help="structure report for one partition")
    p.add_argument("partition")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("verify", parents=[common],
                       help="sweep a nonexistence claim over many types")
    p.add_argument("claim", choices=["multistep", "conjecture"])
    p.add_argument("bound", nargs="?", type=int, default=None,
                   help="total-length bound (defaults: multistep 7, "
                        "conjecture 10, or 12 with --long-run)")
    p.add_argument("--long-run", action="store_true",
                   help="use the larger default bound for the conjecture sweep")
    p.add_argument("--checkpoint", metavar="PATH",
                   help="JSONL file to record and resume per-type results")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("geometry", parents=[common],
                       help="rank, degree, h^0 and the Ulrich identity")
    p.add_argument("partition")
    p.add_argument("--polarization", metavar="A1,A2,...",
                   help="ample coefficients per step (default all ones)")
    p.set_defaults(func=_cmd_geometry)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
