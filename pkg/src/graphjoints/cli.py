"""Command-line front end.

    graphjoints gen turan --n 5 --r 3
    graphjoints analyze graph.txt --q 3
    graphjoints joint graph.txt --r 2
    graphjoints reduce graph.txt --r 2
    graphjoints stability graph.txt --r 2 --alpha 1/10000
    graphjoints verify verify-turj --r 2 --n 300 --seeds 100 --out turj.csv
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .cliques import clique_spectrum, moon_moser_csv, moon_moser_report
from .errors import GraphJointsError
from .experiments import EXPERIMENTS, ExperimentConfig, run
from .generators import GENERATORS, generate
from .graph import format_edge_list, read_edge_list
from .joints import GuaranteeViolated, find_large_joint, jointsize, thexj_reduce
from .stability import check_stability, verify_report


def parse_range(text: str) -> list[int]:
    """``A:B:STEP`` (inclusive of B), ``A:B`` or a single integer."""
    try:
        parts = [int(p) for p in text.split(":")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}") from None
    if len(parts) == 1:
        return parts
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] <= 0):
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    start, stop = parts[0], parts[1]
    step = parts[2] if len(parts) == 3 else 1
    values = list(range(start, stop + 1, step))
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def parse_fraction(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected P/Q, got {text!r}") from None
    return value


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(doc, out: Optional[str]) -> None:
    _emit(json.dumps(doc, indent=2) + "\n", out)


def cmd_gen(args) -> int:
    params = {k: getattr(args, k) for k in ("n", "r", "m", "extra", "delete", "add")
              if getattr(args, k) is not None}
    g = generate(args.kind, seed=args.seed, **params)
    _emit(format_edge_list(g), args.out)
    return 0


def cmd_analyze(args) -> int:
    g = read_edge_list(args.graph)
    spectrum = clique_spectrum(g)
    rows = moon_moser_report(g, spectrum)
    if args.format == "csv":
        _emit(moon_moser_csv(rows), args.out)
    else:
        doc = {"n": g.n, "m": g.num_edges, "min_degree": g.min_degree(), "omega": spectrum.omega,
               "clique_counts": [str(c) for c in spectrum.counts],
               "moon_moser_violations": sum(not row.holds for row in rows)}
        for q in args.q or []:
            size, edge = jointsize(g, q, workers=args.threads)
            doc[f"jointsize_q{q}"] = {"size": str(size), "edge": list(edge) if edge else None}
        _dump(doc, args.out)
    return 0


def cmd_joint(args) -> int:
    g = read_edge_list(args.graph)
    cert, report = find_large_joint(g, args.r, limit=args.limit)
    doc = cert.to_dict()
    doc["route"] = report.note.removeprefix("route=")
    _dump(doc, args.out)
    return 0 if report.holds or report.regime != "Guaranteed" else 1


def cmd_reduce(args) -> int:
    g = read_edge_list(args.graph)
    outcome = thexj_reduce(g, args.r, strict=False)
    _dump(outcome.to_dict(), args.out)
    return 0 if outcome.tagged_holds or outcome.regime != "Guaranteed" else 1


def cmd_stability(args) -> int:
    g = read_edge_list(args.graph)
    report = check_stability(g, args.r, args.alpha, measure_both=args.both)
    doc = report.to_dict()
    doc["verified"] = verify_report(g, report)
    _dump(doc, args.out)
    return 0 if doc["verified"] or report.regime != "Guaranteed" else 1


def cmd_verify(args) -> int:
    cfg = ExperimentConfig(
        experiment=args.experiment, r=args.r, n=args.n, n_range=args.n_range,
        r_range=args.r_range, seeds=args.seeds, seed=args.seed,
        alpha=args.alpha, output=args.out, format=args.format, threads=args.threads,
        timestamp=not args.no_timestamp,
    )
    result = run(cfg)
    if not args.out:
        ts = not args.no_timestamp
        sys.stdout.write(result.to_csv(ts) if args.format == "csv" else result.to_json(ts) + "\n")
    for failure in result.failures:
        sys.stderr.write(json.dumps({"experiment": result.name, "failure": failure}, default=str) + "\n")
    status = "PASS" if result.passed else "FAIL"
    sys.stderr.write(f"{status} {result.name}: {len(result.rows)} rows, {len(result.failures)} failures\n")
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphjoints", description=__doc__.splitlines()[0] if __doc__ else None,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--threads", type=int, default=1)

    g = sub.add_parser("gen", parents=[common], help="write a generated graph as an edge list")
    g.add_argument("kind", choices=sorted(GENERATORS))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--r", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--extra", type=int)
    g.add_argument("--delete", type=int)
    g.add_argument("--add", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_gen)

    a = sub.add_parser("analyze", parents=[common], help="clique spectrum, Moon-Moser rows, jointsize")
    a.add_argument("graph")
    a.add_argument("--q", type=int, action="append", help="report jointsize for this clique order")
    a.add_argument("--format", choices=("json", "csv"), default="json")
    a.set_defaults(func=cmd_analyze)

    j = sub.add_parser("joint", parents=[common], help="constructive large joint with bound check")
    j.add_argument("graph")
    j.add_argument("--r", type=int, required=True)
    j.add_argument("--limit", type=int, default=10, help="cliques to list in the certificate")
    j.set_defaults(func=cmd_joint)

    red = sub.add_parser("reduce", parents=[common], help="peel and reduce to G'")
    red.add_argument("graph")
    red.add_argument("--r", type=int, required=True)
    red.set_defaults(func=cmd_reduce)

    s = sub.add_parser("stability", parents=[common], help="joint-or-r-chromatic dichotomy")
    s.add_argument("graph")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--alpha", type=parse_fraction, required=True)
    s.add_argument("--both", action="store_true", help="measure jointsize even if the coloring validates")
    s.set_defaults(func=cmd_stability)

    v = sub.add_parser("verify", parents=[common], help="run a named experiment suite")
    v.add_argument("experiment", choices=sorted(EXPERIMENTS))
    v.add_argument("--r", type=int)
    v.add_argument("--r-range", type=parse_range)
    v.add_argument("--n", type=int)
    v.add_argument("--n-range", type=parse_range)
    v.add_argument("--seeds", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--alpha", type=parse_fraction, default=Fraction(1, 10 ** 4))
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.add_argument("--no-timestamp", action="store_true")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuaranteeViolated as exc:
        sys.stderr.write(json.dumps({"error": "GuaranteeViolated", "message": str(exc)}) + "\n")
        return 1
    except GraphJointsError as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
