"""Command-line front end.

Every command ends its report with one ``RESULT:`` line. Exit codes: 0 for a
positive verdict, 1 for a negative verdict or theorem violation, 2 for
unreadable input.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter

from .diagram import check_reflection_coequalizer_theorem, route_tables
from .errors import PactError
from .fintop import top_counterexample_report
from .globalize import build_globalization, decide_globalizable, verify_globalization
from .paction import check_partial
from .testkit import GenConfig, gen_partial_maybe_nonstrong, gen_strong_partial
from .textio import format_globalization, format_verdict, load_gaction, load_paction, parse_map


def _flag(b: bool) -> str:
    return "true" if b else "false"


def cmd_validate(args, out):
    report = check_partial(load_paction(args.file))
    out.write("\n".join(report.lines()) + "\n")
    out.write(f"RESULT: partial={_flag(report.is_partial)} strong={_flag(report.is_strong)}\n")
    return 0 if report.is_partial else 1


def cmd_strong(args, out):
    report = check_partial(load_paction(args.file))
    if not report.is_partial:
        v = report.violations[0]
        out.write(f"not a partial action: {v.axiom} m={v.m} n={v.n} x={v.x}\n")
        out.write("RESULT: strong=false partial=false\n")
        return 1
    w = report.first("PA2s")
    if w is not None:
        out.write(f"witness m={w.m} n={w.n} x={w.x}\n")
    out.write(f"RESULT: strong={_flag(report.is_strong)}\n")
    return 0 if report.is_strong else 1


def cmd_globalize(args, out):
    G = build_globalization(load_paction(args.file))
    out.write(format_globalization(G))
    out.write(f"RESULT: classes={G.quotient_size} iota_injective={_flag(G.embed_injective)}\n")
    return 0


def cmd_verify(args, out):
    d = load_paction(args.file)
    g = load_gaction(args.gaction)
    iota = parse_map(args.iota, g.carrier_size)
    v = verify_globalization(d, g, iota)
    out.write(format_verdict(v))
    out.write(f"RESULT: globalization={_flag(v.is_globalization)}\n")
    return 0 if v.is_globalization else 1


def cmd_routes(args, out):
    tables = route_tables(load_paction(args.file))
    reference = tables["quotient"]
    for name, t in tables.items():
        out.write(f"{name}: classes={t[0]} {'same' if t == reference else 'DIFFERENT'}\n")
    equal = all(t == reference for t in tables.values())
    out.write(f"RESULT: routes_equal={_flag(equal)}\n")
    return 0 if equal else 1


def cmd_theorem(args, out):
    report = check_reflection_coequalizer_theorem(load_paction(args.file), max_target=args.max_target)
    out.write(f"reflection->coequalizer {_flag(report.reflection_to_coequalizer)}\n")
    out.write(f"coequalizer->reflection {_flag(report.coequalizer_to_reflection)}\n")
    out.write(f"targets {report.targets_checked}\n")
    if report.witness:
        out.write(f"witness {report.witness}\n")
    out.write(f"RESULT: theorem={_flag(report.passed)}\n")
    return 0 if report.passed else 1


def cmd_top_demo(args, out):
    r = top_counterexample_report()
    out.write(f"strong {_flag(r.strong)}\n")
    out.write(f"globalizable {_flag(r.globalizable)}\n")
    if r.mediator is not None:
        out.write(
            f"mediator (X,coarse)->(X,fine) at m={r.failing_m}: {list(r.mediator.images)} "
            f"continuous={_flag(r.mediator_continuous)}\n"
        )
    if r.confirmed:
        out.write("counterexample confirmed\n")
    out.write(f"RESULT: counterexample={_flag(r.confirmed)}\n")
    return 0 if r.confirmed else 1


def cmd_search(args, out):
    cfg = GenConfig(seed=args.seed, samples=args.samples, max_monoid=args.max_monoid, max_carrier=args.max_carrier)
    tally = Counter()
    violations = []
    for i in range(cfg.samples):
        d = gen_strong_partial(cfg, i) if i % 2 == 0 else gen_partial_maybe_nonstrong(cfg, i, tally)
        report = check_partial(d)
        tally["partial"] += report.is_partial
        tally["strong_total"] += report.is_strong
        glob = decide_globalizable(d)
        tally["globalizable"] += glob
        if glob != report.is_strong:
            violations.append((i, report.is_strong, glob))
        tables = route_tables(d)
        if len(set(tables.values())) != 1:
            violations.append((i, "routes", tables))
    out.write(
        f"samples {cfg.samples} partial {tally['partial']} strong {tally['strong_total']} "
        f"globalizable {tally['globalizable']}\n"
    )
    for v in violations:
        out.write(f"violation sample={v[0]} {v[1:]}\n")
    out.write(f"RESULT: violations={len(violations)}\n")
    return 1 if violations else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pactkit", description="Partial monoid actions and their globalizations.")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, func, help_ in [
        ("validate", cmd_validate, "check the partial action axioms"),
        ("strong", cmd_strong, "decide strongness"),
        ("globalize", cmd_globalize, "dump the quotient globalization"),
        ("routes", cmd_routes, "compare the three globalization routes"),
    ]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="test whether (action, iota) globalizes a datum")
    p.add_argument("file")
    p.add_argument("gaction")
    p.add_argument("iota", help="images of iota, e.g. '0,2'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("theorem-check", help="reflection <-> coequalizer, both directions")
    p.add_argument("file")
    p.add_argument("--max-target", type=int, default=2)
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("top-demo", help="strong but non-globalizable action on a finite space")
    p.set_defaults(func=cmd_top_demo)

    p = sub.add_parser("search", help="random sweep checking strong == globalizable")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--max-monoid", type=int, default=6)
    p.add_argument("--max-carrier", type=int, default=6)
    p.set_defaults(func=cmd_search)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (PactError, OSError) as exc:
        out.write(f"error: {exc}\nRESULT: error\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
