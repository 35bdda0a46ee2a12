"""Command-line entry point.

Exit codes: 0 success/verified, 1 verification failure, 2 usage or parse
error, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from .cayley import Graph, build_cayley_graph, validate_connection_set
from .census import EXHAUSTIVE_MAX_ORDER, family_groups, run_census
from .constructions import find_witnesses, prop1_certificate, thm2_certificate
from .errors import ConnectionSetError, ConstructionError, ParseError, ResourceLimitError
from .formats import (
    certificate_from_dict,
    certificate_to_dict,
    export_graph,
    from_graph6,
    parse_group_spec,
)
from .groups import format_token, parse_token, parse_tokens
from .oracle import AUT_CAP, automorphism_group, enumerate_regular_subgroups, verify_certificate

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", action="append", help="group spec, e.g. cyclic:6, gendih:4x2")
    p.add_argument("--set", dest="tokens", default="", help="connection set tokens, e.g. 1,3,x:0")
    p.add_argument("--out", help="write primary output here instead of stdout")
    p.add_argument("--format", choices=("graph6", "dot", "json"), default="json")
    p.add_argument("--max-order", type=int, default=EXHAUSTIVE_MAX_ORDER)
    p.add_argument("--max-aut", type=int, default=AUT_CAP)
    p.add_argument("--oracle", action="store_true", help="add brute-force cross-checks where legal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, help="random sampling: number of connection sets per group")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayleyrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build Cay(G,S) and export it")
    _shared(p)

    for name, what in (("prop1", "dihedral certificate for an even circulant"),
                       ("thm2", "abelian certificate for a gendih Cayley graph")):
        p = sub.add_parser(name, help=what)
        _shared(p)
        p.add_argument("--verify", metavar="PATH", help="verify a saved certificate instead of building one")
        if name == "thm2":
            p.add_argument("--witness", help="witness token in xA (default: first found)")

    for name, what in (("aut", "automorphism group order and generators"),
                       ("regulars", "regular subgroups of Aut grouped by isomorphism type")):
        p = sub.add_parser(name, help=what)
        _shared(p)
        p.add_argument("--graph6", help="use a raw graph6 graph instead of --group/--set")

    p = sub.add_parser("census", help="sweep a construction over connection sets (JSONL)")
    _shared(p)
    p.add_argument("--family", choices=("prop1", "thm2"), required=True)
    p.add_argument("--orders", help="group order range lo:hi instead of --group")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-reproducibility)")
    return parser


@contextmanager
def _sink(path, mode="w"):
    if path:
        with open(path, mode) as fh:
            yield fh
    else:
        yield sys.stdout


def _emit(args, obj) -> None:
    with _sink(args.out) as fh:
        fh.write(json.dumps(obj, indent=2) + "\n")


def _one_group(args):
    if not args.group or len(args.group) != 1:
        raise UsageError("exactly one --group is required")
    return parse_group_spec(args.group[0])


def _graph(args):
    if getattr(args, "graph6", None):
        return from_graph6(args.graph6)
    G = _one_group(args)
    return build_cayley_graph(G, validate_connection_set(G, parse_tokens(G, args.tokens)))


def _report_exit(report) -> int:
    return EXIT_OK if report.ok else EXIT_VERIFY


def _verify_file(args) -> int:
    try:
        with open(args.verify) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.verify}: not JSON ({exc})") from exc
    try:
        cert = certificate_from_dict(data)
    except (ParseError, ConnectionSetError, KeyError):
        raise
    except ValueError as exc:
        _emit(args, {"ok": False, "checks": [{"name": "load", "passed": False, "detail": str(exc)}]})
        return EXIT_VERIFY
    report = verify_certificate(cert)
    _emit(args, report.as_dict())
    return _report_exit(report)


def cmd_build(args) -> int:
    graph = _graph(args)
    data = export_graph(graph, args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def _cert_output(args, cert) -> int:
    report = verify_certificate(cert)
    out = {"certificate": certificate_to_dict(cert), "verification": report.as_dict()}
    code = _report_exit(report)
    if args.oracle:
        aut = automorphism_group(cert.graph, cap=args.max_aut, want_elements=False)
        inside = None
        if aut.elements is not None:
            members = set(aut.elements)
            inside = all(p in members for p in cert.perms.elements)
            if not inside:
                code = EXIT_VERIFY
        out["oracle"] = {"aut_order": aut.order, "perms_inside_aut": inside}
    _emit(args, out)
    return code


def cmd_prop1(args) -> int:
    if args.verify:
        return _verify_file(args)
    return _cert_output(args, prop1_certificate(_graph(args)))


def cmd_thm2(args) -> int:
    if args.verify:
        return _verify_file(args)
    graph = _graph(args)
    G = graph.group
    if args.witness:
        y = parse_token(G, args.witness)
    else:
        ws = find_witnesses(G, graph.connection)
        if not ws:
            _emit(args, {"witness": None, "witness_count": 0,
                         "detail": "no y in xA satisfies the witness condition"})
            return EXIT_VERIFY
        y = ws[0]
    return _cert_output(args, thm2_certificate(graph, y))


def cmd_aut(args) -> int:
    graph = _graph(args)
    aut = automorphism_group(graph, cap=args.max_aut, want_elements=False)
    out = {
        "n": graph.n,
        "order": aut.order,
        "generators": [str(p) for p in aut.generators],
        "elements_listed": aut.elements is not None,
    }
    code = EXIT_OK
    if args.oracle:
        if graph.n > 8:
            raise UsageError("--oracle (factorial mode) needs n <= 8")
        fac = automorphism_group(graph, "factorial", cap=args.max_aut)
        ref = automorphism_group(graph, cap=args.max_aut)
        agree = set(fac.elements) == set(ref.elements)
        out["factorial_order"] = fac.order
        out["modes_agree"] = agree
        code = EXIT_OK if agree else EXIT_VERIFY
    _emit(args, out)
    return code


def cmd_regulars(args) -> int:
    graph = _graph(args)
    aut = automorphism_group(graph, cap=args.max_aut)
    report = enumerate_regular_subgroups(graph, aut)
    _emit(args, {
        "n": graph.n,
        "aut_order": aut.order,
        "total_regular_subgroups": report.total_regular_subgroups,
        "classes": [
            {"label": c.label, "count": c.count,
             "element_orders": {str(o): k for o, k in c.order_multiset},
             "generators": [str(p) for p in c.representative.generators]}
            for c in report.classes
        ],
    })
    return EXIT_OK


def cmd_census(args) -> int:
    if args.orders:
        try:
            lo, hi = (int(v) for v in args.orders.split(":"))
        except ValueError as exc:
            raise UsageError(f"--orders expects lo:hi, got {args.orders!r}") from exc
        groups = family_groups(args.family, lo, hi)
    elif args.group:
        groups = [parse_group_spec(s) for s in args.group]
    else:
        raise UsageError("census needs --group or --orders")
    sampling = "random" if args.samples is not None else "exhaustive"
    with _sink(args.out) as fh:
        summary = run_census(
            args.family, groups, fh,
            sampling=sampling, seed=args.seed, samples=args.samples or 0,
            oracle=args.oracle, max_order=args.max_order, max_aut=args.max_aut,
            timing=args.timing, jobs=args.jobs,
        )
    print(json.dumps(summary.as_dict()), file=sys.stderr if not args.out else sys.stdout)
    for f in summary.failures[:20]:
        print("FAIL", f, file=sys.stderr)
    return EXIT_VERIFY if summary.failures else EXIT_OK


COMMANDS = {
    "build": cmd_build, "prop1": cmd_prop1, "thm2": cmd_thm2,
    "aut": cmd_aut, "regulars": cmd_regulars, "census": cmd_census,
}


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ParseError, ConnectionSetError, ConstructionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
