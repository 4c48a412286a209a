"""irrlab command line: compute, repro, bench, doublets.

Exit codes: 0 ok, 1 repro mismatch, 2 usage or parse error, 3 unreachable state.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

from . import bench, golden
from .dist import Dist, UnreachableState
from .net import (
    ParseError,
    build_transition_map,
    compose_t_steps,
    max_nodes,
    parse_empirical_distribution,
    parse_network_spec,
    parse_transition_table,
)
from .phi import EiMode
from .report import FORMATS, build_report, fmt_number, md_table, render_table
from .repro import bracket_row, reproduce
from .zoo import network, threshold_doublets

log = logging.getLogger("irrlab")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_UNREACHABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_mechanism(args):
    if args.network:
        return Path(args.network).stem, build_transition_map(parse_network_spec(_read(args.network)))
    if args.table:
        return Path(args.table).stem, parse_transition_table(_read(args.table))
    try:
        return args.builtin, network(args.builtin)
    except KeyError:
        raise UsageError(f"unknown built-in network {args.builtin!r}") from None


def _input_distribution(spec: str, space) -> Dist:
    if spec == "uniform":
        return Dist.uniform(space)
    if spec == "capacity":
        raise UsageError("--x-dist capacity is not implemented; use uniform or empirical:FILE")
    if spec.startswith("empirical:") and len(spec) > len("empirical:"):
        return parse_empirical_distribution(_read(spec[len("empirical:"):]), space)
    raise UsageError(f"bad --x-dist {spec!r}; expected uniform or empirical:FILE")


def cmd_compute(args, out) -> int:
    name, mechanism = _load_mechanism(args)
    mechanism = compose_t_steps(mechanism, args.t)
    px = _input_distribution(args.x_dist, mechanism.space)
    state = None
    if args.state is not None:
        try:
            state = mechanism.space.parse(args.state)
        except ValueError as exc:
            raise UsageError(f"bad --state: {exc}") from None
    report = build_report(
        name, mechanism, mode=EiMode(args.mode), t=args.t, px=px, x_dist=args.x_dist, state=state,
    )
    out.write(render_table(report, args.format))
    return EXIT_OK


def cmd_repro(args, out) -> int:
    figure = args.figure.lower()
    if figure not in golden.FIGURES:
        raise UsageError(f"unknown figure {args.figure!r}; choose from {', '.join(golden.FIGURES)}")
    result = reproduce(figure)
    out.write(result.render())
    if result.ok:
        return EXIT_OK
    out.write("\ndiff:\n")
    for cell in result.mismatches():
        out.write(f"  {cell.network} {cell.quantity}\n  - {cell.expected}\n  + {cell.shown()}\n")
    return EXIT_MISMATCH


def _seconds(value: float | None) -> str:
    return "-" if value is None else f"{value:.4f}"


def cmd_bench(args, out) -> int:
    cap = max_nodes()
    if not 2 <= args.max_nodes <= cap:
        raise UsageError(f"--max-nodes must be between 2 and {cap}, got {args.max_nodes}")
    rows = bench.run_bench(args.max_nodes, args.seed, args.phi_max_nodes, args.psi_max_nodes)
    table = []
    for r in rows:
        faster = {None: "-", True: "yes", False: "no"}[r.psi_faster]
        table.append((r.n, r.partitions, r.bipartitions, _seconds(r.phi_seconds), _seconds(r.psi_seconds), faster))
        if r.psi_faster is not None:
            relation = "<" if r.psi_faster else ">="
            log.info("n=%d: psi bounds %.4fs %s phi %.4fs", r.n, r.psi_seconds, relation, r.phi_seconds)
    header = ("n", "partitions", "bipartitions", "phi seconds", "psi seconds", "psi faster")
    out.write(md_table(header, table))
    return EXIT_OK


DOUBLET_HEADER = ("network", "I(X;Y)", "<phi>", "<psi>_min", "<psi>_max")


def cmd_doublets(args, out) -> int:
    rows = [(name, *(fmt_number(v) for v in bracket_row(name))) for name, _ in threshold_doublets()]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(DOUBLET_HEADER)
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        out.write(md_table(DOUBLET_HEADER, rows))
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irrlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="all measures for one network")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--network", metavar="FILE", help="threshold-network description")
    source.add_argument("--table", metavar="FILE", help="transition table, one 'bits -> bits' per line")
    source.add_argument("--builtin", metavar="NAME", help="built-in network, e.g. OR-GET or 4322")
    p.add_argument("--t", type=_positive_int, default=1, help="update steps between X and Y")
    p.add_argument("--mode", choices=[m.value for m in EiMode], default="standard")
    p.add_argument("--x-dist", default="uniform", help="uniform or empirical:FILE")
    p.add_argument("--format", choices=FORMATS, default="md")
    p.add_argument("--state", metavar="BITS", help="report only this output state")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("repro", help="recompute a published table and diff it")
    p.add_argument("figure", help=", ".join(golden.FIGURES))
    p.set_defaults(func=cmd_repro)

    p = sub.add_parser("bench", help="partition vs bipartition scaling")
    p.add_argument("--max-nodes", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--phi-max-nodes", type=int, default=bench.DEFAULT_PHI_MAX,
                   help="largest n for which phi is actually timed")
    p.add_argument("--psi-max-nodes", type=int, default=bench.DEFAULT_PSI_MAX,
                   help="largest n for which psi bounds are actually timed")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("doublets", help="bracket measures of every 2-node threshold network")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.set_defaults(func=cmd_doublets)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    if not log.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("irrlab: %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UnreachableState as exc:
        print(f"irrlab: {exc}", file=sys.stderr)
        return EXIT_UNREACHABLE
    except (UsageError, ParseError, ValueError) as exc:
        print(f"irrlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
