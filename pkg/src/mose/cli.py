"""Command-line interface: ``mose <subcommand> ...``.

Exit codes: 0 success, 1 failure (proposition suite failed, per-graph
encoding errors, unreadable input), 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .datasets import EncodeConfig, SynthSpec, encode_dataset, load_dataset, write_synth
from .graph import Graph, GraphError, parse_edge_list
from .hom import WeightScheme, dp_rooted_counts
from .patterns import make_pattern, parse_family
from .wl import wl_equivalent
from .zoo import named_graph

log = logging.getLogger("mose")


def _range(kind):
    def parse(text: str):
        lo, sep, hi = text.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}")
        try:
            return kind(lo), kind(hi)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return parse


def _graph_arg(text: str) -> Graph:
    """A zoo name (rook_4x4, shrikhande, cycle_6, ...) or a path to an edge-list file."""
    p = Path(text)
    if p.is_file():
        return parse_edge_list(p.read_text())
    try:
        return named_graph(text).graph
    except KeyError:
        raise GraphError(f"{text!r} is neither a file nor a known graph name") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mose", description="Motif structural encodings and expressivity checks.")
    ap.add_argument("--version", action="version", version=f"mose {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", help="encode a dataset with MoSE, RWSE or LapPE")
    enc.add_argument("--input", required=True)
    enc.add_argument("--format", choices=["edgelist-dir", "json"], required=True)
    enc.add_argument("--scheme", choices=["mose", "rwse", "lappe"], default="mose")
    enc.add_argument("--family", help="cycles:L | connected:N | spasm:CK | union:A,B | file:manifest.json")
    enc.add_argument("--weighting", choices=["const", "invdeg"], default="const")
    enc.add_argument("--log-scale", action="store_true")
    enc.add_argument("--length", type=int, default=20)
    enc.add_argument("--dim", type=int, default=8)
    enc.add_argument("--output", choices=["csv", "jsonl"], default="csv")
    enc.add_argument("--out", required=True)
    enc.add_argument("--jobs", type=int, default=1)

    pat = sub.add_parser("patterns", help="list or export a pattern family")
    pat.add_argument("--family", required=True)
    pat.add_argument("--emit", help="write the family manifest to this path")

    hc = sub.add_parser("homcount", help="rooted homomorphism counts of one pattern")
    hc.add_argument("--pattern-edges", required=True, help="edge-list file or graph name")
    hc.add_argument("--target", required=True, help="edge-list file or graph name")
    hc.add_argument("--root", type=int, default=0)
    hc.add_argument("--weighting", choices=["const", "invdeg"], default="const")

    wl = sub.add_parser("wl", help="Weisfeiler-Leman equivalence of two graphs")
    wl.add_argument("--graph-a", required=True)
    wl.add_argument("--graph-b", required=True)
    wl.add_argument("--k", type=int, choices=[1, 2], default=1)

    ver = sub.add_parser("verify", help="run the proposition suite")
    ver.add_argument("--seed", type=int, default=7)
    ver.add_argument("--samples", type=int, default=500)
    ver.add_argument("--json", help="also write the reports to this path")

    syn = sub.add_parser("synth", help="ER graphs with exact fractional-domination targets")
    syn.add_argument("--count", type=int, default=10000)
    syn.add_argument("--nodes", type=_range(int), default=(16, 32))
    syn.add_argument("--density", type=_range(float), default=(0.25, 0.75))
    syn.add_argument("--seed", type=int, default=0)
    syn.add_argument("--connected-only", action="store_true")
    syn.add_argument("--out", required=True, help="output JSON path ('-' for stdout)")
    return ap


def cmd_encode(args) -> int:
    if args.scheme == "mose" and not args.family:
        print("error: --family is required for --scheme mose", file=sys.stderr)
        return 2
    ds = load_dataset(args.input, args.format)
    cfg = EncodeConfig(
        scheme=args.scheme,
        family=parse_family(args.family) if args.scheme == "mose" else None,
        weighting=WeightScheme.parse(args.weighting),
        log_scale=args.log_scale,
        length=args.length,
        dim=args.dim,
        output=args.output,
    )
    summary = encode_dataset(ds, cfg, args.out, jobs=args.jobs)
    print(f"encoded {summary.encoded} graphs, {summary.failed} failed, "
          f"mean {summary.mean_seconds:.4f} s/graph -> {args.out}")
    return 0 if summary.ok else 1


def cmd_patterns(args) -> int:
    fam = parse_family(args.family)
    print(f"{fam.name}: {len(fam)} patterns, max treewidth {fam.max_treewidth}")
    for i, p in enumerate(fam):
        print(f"  [{i}] n={p.num_nodes} m={p.num_edges} tw={p.treewidth} root={p.root} {p.provenance}")
    if args.emit:
        Path(args.emit).write_text(fam.to_json())
        print(f"manifest written to {args.emit}")
    return 0


def cmd_homcount(args) -> int:
    pg, target = _graph_arg(args.pattern_edges), _graph_arg(args.target)
    if not 0 <= args.root < pg.num_nodes:
        raise GraphError(f"root {args.root} out of range for a {pg.num_nodes}-node pattern")
    vals = dp_rooted_counts(make_pattern(pg, args.root), target, WeightScheme.parse(args.weighting)).values
    for v, x in enumerate(vals):
        print(f"{v} {x if vals.dtype == object else x.item()!r}")
    print(f"total {sum(vals) if vals.dtype == object else vals.sum().item()!r}")
    return 0


def cmd_wl(args) -> int:
    same = wl_equivalent(_graph_arg(args.graph_a), _graph_arg(args.graph_b), args.k)
    print("indistinguishable" if same else "distinguishable")
    return 0


def cmd_verify(args) -> int:
    from .lab import verify

    reports = verify(seed=args.seed, samples=args.samples)
    width = max(len(r.name) for r in reports)
    print(f"{'check':<{width}}  result  seconds")
    for r in reports:
        print(f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL':<6}  {r.seconds:7.2f}")
        if not r.passed:
            print(f"    {json.dumps(r.details, default=str)}")
    if args.json:
        Path(args.json).write_text(json.dumps([r.to_dict() for r in reports], indent=2, default=str))
    failed = sum(not r.passed for r in reports)
    print(f"{len(reports) - failed}/{len(reports)} checks passed")
    return 0 if failed == 0 else 1


def cmd_synth(args) -> int:
    spec = SynthSpec(args.count, tuple(args.nodes), tuple(args.density), args.seed, args.connected_only)
    write_synth(spec, sys.stdout if args.out == "-" else args.out)
    return 0


COMMANDS = {"encode": cmd_encode, "patterns": cmd_patterns, "homcount": cmd_homcount,
            "wl": cmd_wl, "verify": cmd_verify, "synth": cmd_synth}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (OSError, ValueError, OverflowError) as exc:
        # GraphError, ParseError, SizeError and DomainError are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
