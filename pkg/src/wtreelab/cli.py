"""Command-line entry point: ``wtreelab {analyze,ideal,betti,verify,export-m2}``.

Exit codes: 0 success, 1 counterexample or engine disagreement, 2 input error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .io import (GraphFormatError, Report, analysis_to_dict, betti_to_dict, export_macaulay2, ideal_to_dict,
                 read_graph, render_report)
from .linalg import FieldSpec
from .monomials import ResourceLimitError, ideal_power
from .resolution import EngineMismatchError, betti
from .tree import InfeasibleWeightsError, TreeError, analyze, edge_ideal
from .verify import SUITES, Campaign, run_campaign, run_checks, run_fixed_suite

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wtreelab", description="Edge ideals of edge-weighted trees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="roots, special edges, mu, A-set, bipartition")
    a.add_argument("file")
    a.add_argument("--json", action="store_true")

    i = sub.add_parser("ideal", help="minimal generators of I^t")
    i.add_argument("file")
    i.add_argument("--power", type=_positive, default=1)
    i.add_argument("--format", choices=("plain", "json", "m2"), default="plain")

    b = sub.add_parser("betti", help="multigraded Betti table of S/I^t")
    b.add_argument("file")
    b.add_argument("--power", type=_positive, default=1)
    b.add_argument("--engine", choices=("auto", "taylor", "koszul", "both"), default="auto")
    b.add_argument("--field", type=_field, default=FieldSpec())
    out = b.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")

    v = sub.add_parser("verify", help="run checker suites on a file, random trees, or the fixed instances")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("file", nargs="?")
    src.add_argument("--random", action="store_true")
    src.add_argument("--fixed", action="store_true")
    v.add_argument("--n", type=_positive, default=6, help="largest vertex count (random mode)")
    v.add_argument("--n-min", type=_positive, default=2)
    v.add_argument("--max-weight", type=_positive, default=None, help="defaults to the vertex count")
    v.add_argument("--count", type=int, default=10)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--tmax", type=_positive, default=3)
    v.add_argument("--extra", type=int, default=1, help="powers beyond s+1 in the depth check")
    v.add_argument("--json", action="store_true")

    e = sub.add_parser("export-m2", help="Macaulay2 script for external cross-checks")
    e.add_argument("file")
    e.add_argument("--power", type=_positive, default=1)
    e.add_argument("--field", type=_field, default=None)
    return p


def _write(data: bytes):
    sys.stdout.buffer.write(data)
    sys.stdout.flush()


def _analyze(args, cmd) -> int:
    G = read_graph(args.file).to_tree()
    r = Report(cmd, analysis=analysis_to_dict(G, analyze(G)))
    _write(render_report(r, "json" if args.json else "plain"))
    return EXIT_OK


def _ideal(args, cmd) -> int:
    G = read_graph(args.file).to_tree()
    if args.format == "m2":
        _write(export_macaulay2(G, args.power))
        return EXIT_OK
    It = ideal_power(edge_ideal(G), args.power)
    r = Report(cmd, ideal=ideal_to_dict(It, G.vertices, args.power))
    _write(render_report(r, args.format))
    return EXIT_OK


def _betti(args, cmd) -> int:
    G = read_graph(args.file).to_tree()
    It = ideal_power(edge_ideal(G), args.power)
    T = betti(It, args.engine, args.field)
    r = Report(cmd, betti=betti_to_dict(T, args.field, args.engine, args.power))
    _write(render_report(r, "json" if args.json else "csv" if args.csv else "plain"))
    return EXIT_OK


def _verify(args, cmd) -> int:
    if args.random:
        if args.count < 0:
            raise GraphFormatError("--count must be non-negative", "--count")
        if args.n_min > args.n:
            raise GraphFormatError("--n-min exceeds --n", "--n-min")
        campaign = run_campaign(args.suite, (args.n_min, args.n), args.max_weight, args.count, args.seed,
                                args.tmax, args.extra)
    elif args.fixed:
        campaign = run_fixed_suite(args.tmax, args.extra)
    else:
        G = read_graph(args.file).to_tree()
        A = analyze(G)
        if not A.is_increasing:
            raise GraphFormatError("tree is not increasing for any root", args.file)
        verdicts = run_checks(G, args.suite, args.file, args.tmax, args.extra)
        if not verdicts:
            raise GraphFormatError(f"suite {args.suite!r} needs a strictly increasing tree", args.file)
        campaign = Campaign(args.suite, {"file": args.file, "t_max": args.tmax, "extra": args.extra}, verdicts)
    r = Report(cmd, verdicts=campaign.to_dict())
    _write(render_report(r, "json" if args.json else "plain"))
    for v in campaign.verdicts:
        if v.status == "counterexample":
            print(f"counterexample: {v.claim} on {v.instance['label']}", file=sys.stderr)
    return EXIT_COUNTEREXAMPLE if campaign.has_counterexample else EXIT_OK


def _export(args, cmd) -> int:
    G = read_graph(args.file).to_tree()
    _write(export_macaulay2(G, args.power, args.field))
    return EXIT_OK


HANDLERS = {"analyze": _analyze, "ideal": _ideal, "betti": _betti, "verify": _verify, "export-m2": _export}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return HANDLERS[args.command](args, ["wtreelab", *argv])
    except (OSError, GraphFormatError, TreeError, InfeasibleWeightsError) as e:
        print(f"wtreelab: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as e:
        print(f"wtreelab: resource cap exceeded: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except EngineMismatchError as e:
        print(f"wtreelab: engines disagree: {e}", file=sys.stderr)
        return EXIT_COUNTEREXAMPLE


if __name__ == "__main__":
    sys.exit(main())
