"""Command line front end.

Files use the text formats of :mod:`twistflip.surface` and
:mod:`twistflip.coords`. A single file may hold both the ``tri:`` records and
the ``curve:`` record, in which case the curve path can be omitted.

Exit codes: 0 success, 1 invalid input, 2 internal invariant violation.
"""

import argparse
import csv
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .classify import analyse, decompose
from .coords import MultiCurve, format_curve, parse_curve
from .errors import LemmaViolation, MultiCurveError, TriangulationError, TwistFlipError
from .generate import random_instance
from .simplify import simplify_accelerated, simplify_flips_only
from .surface import format_triangulation, parse_triangulation
from .surfaces import SURFACES, example_surface
from .tracer import block_partition, max_edge

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2


class InputError(Exception):
    pass


def _int(text):
    """Integers in decimal or as ``a^b`` / ``a**b``."""
    text = text.strip()
    for op in ("**", "^"):
        if op in text:
            base, exp = text.split(op, 1)
            return int(base) ** int(exp)
    return int(text)


def _read(path):
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_instance(tri_path, curve_path=None):
    """Parse and cross-validate a triangulation and a curve."""
    tri_text = _read(tri_path)
    T = parse_triangulation(tri_text)
    curve_text = _read(curve_path) if curve_path else tri_text
    weights = parse_curve(curve_text)
    if len(weights) != T.zeta:
        raise MultiCurveError(f"curve has {len(weights)} weights but the triangulation has {T.zeta} edges")
    return T, MultiCurve.validated(T, weights)


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _state_text(T, gamma):
    return format_triangulation(T) + format_curve(gamma)


# -- subcommands -------------------------------------------------------------


def cmd_validate(args):
    T, gamma = load_instance(args.triangulation, args.curve)
    report = {
        "valid": True,
        "zeta": T.zeta,
        "triangles": T.num_triangles,
        "vertices": T.num_vertices,
        "euler_characteristic": T.euler_characteristic,
        "genus": T.genus,
        "total": str(gamma.total),
        "simple": gamma.is_simple,
    }
    _write(None, _dump(report))
    return EXIT_OK


def _simplify(T, gamma, mode, ratio=None, max_moves=None):
    if mode == "flips":
        return simplify_flips_only(T, gamma, max_moves=max_moves)
    return simplify_accelerated(T, gamma, ratio=ratio, max_moves=max_moves)


def cmd_simplify(args):
    T, gamma = load_instance(args.triangulation, args.curve)
    ratio = Fraction(args.ratio) if args.ratio is not None else None
    result = _simplify(T, gamma, args.mode, ratio, args.max_moves)
    if args.log:
        _write(args.log, result.log.to_jsonl())
    if args.out:
        _write(args.out + ".tri", format_triangulation(result.triangulation))
        _write(args.out + ".curve", format_curve(result.curve))
    else:
        _write(None, _state_text(result.triangulation, result.curve))
    print(json.dumps(result.log.summary(), sort_keys=True), file=sys.stderr)
    return EXIT_OK


def cmd_classify(args):
    T, gamma = load_instance(args.triangulation, args.curve)
    if gamma.is_simple:
        report = decompose(T, gamma)
    else:
        report = analyse(_simplify(T, gamma, "accel"))
    _write(None, _dump(report.to_json()))
    return EXIT_OK


def cmd_trace(args):
    T, gamma = load_instance(args.triangulation, args.curve)
    if gamma.is_empty:
        raise MultiCurveError("cannot trace the empty curve")
    edge = args.edge if args.edge is not None else max_edge(gamma.weights)[0]
    if not 0 <= edge < T.zeta:
        raise MultiCurveError(f"edge {edge} outside 0..{T.zeta - 1}")
    part = block_partition(T, gamma, edge, args.side)
    _write(None, _dump(part.to_json()))
    return EXIT_OK


def _slope_instance(k):
    T = example_surface("S1_1")
    return T, MultiCurve.validated(T, (k, 1, k + 1))


def _timed(fn, samples):
    best, out = None, None
    for _ in range(samples):
        start = time.perf_counter()
        out = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return out, best


def bench_rows(kmax, samples=1, flips_kmax=2**14, timing=True):
    """Rows of the slope benchmark for ``k = 1, 2, 4, ..., kmax``."""
    rows = []
    k = 1
    while k <= kmax:
        T, gamma = _slope_instance(k)
        row = {"k": k}
        if k <= flips_kmax:
            res, t_flips = _timed(lambda: simplify_flips_only(T, gamma), samples)
            row["flips_only_moves"] = len(res.log.moves)
        else:
            row["flips_only_moves"], t_flips = "", None
        res, t_accel = _timed(lambda: simplify_accelerated(T, gamma), samples)
        row["accel_metric_length"] = res.log.metric_length
        if timing:
            row["flips_only_seconds"] = "" if t_flips is None else f"{t_flips:.6f}"
            row["accel_seconds"] = f"{t_accel:.6f}"
        rows.append(row)
        k *= 2
    return rows


def cmd_bench(args):
    rows = bench_rows(args.kmax, args.samples, args.flips_kmax, not args.no_timing)
    fields = ["k", "flips_only_moves", "accel_metric_length"]
    if not args.no_timing:
        fields += ["flips_only_seconds", "accel_seconds"]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_gen(args):
    inst = random_instance(args.surface, seed=args.seed, moves=args.moves, max_power=args.max_power)
    if args.out:
        _write(args.out + ".tri", format_triangulation(inst.triangulation))
        _write(args.out + ".curve", format_curve(inst.curve))
        _write(args.out + ".json", _dump(inst.provenance))
    else:
        _write(None, _state_text(inst.triangulation, inst.curve))
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _instance_args(p):
    p.add_argument("triangulation", help="triangulation file ('-' for stdin)")
    p.add_argument("curve", nargs="?", help="curve file (default: read from the triangulation file)")


def build_parser():
    parser = argparse.ArgumentParser(prog="twistflip", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a triangulation and curve")
    _instance_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("simplify", help="reduce the curve to total weight at most 2 * zeta")
    _instance_args(p)
    p.add_argument("--mode", choices=("flips", "accel"), default="accel")
    p.add_argument("--log", help="write the move log as JSON Lines")
    p.add_argument("--ratio", help="flip progress threshold as a fraction of the total, e.g. 1/192")
    p.add_argument("--max-moves", type=_int)
    p.add_argument("--out", help="write PREFIX.tri and PREFIX.curve instead of printing")
    p.set_defaults(func=cmd_simplify)

    p = sub.add_parser("classify", help="components of the curve as JSON")
    _instance_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("trace", help="block partition of an edge as JSON")
    _instance_args(p)
    p.add_argument("--edge", type=int, help="edge to trace from (default: heaviest)")
    p.add_argument("--side", type=int, choices=(1, -1), default=1)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("bench", help="slope-k benchmark on the punctured torus as CSV")
    p.add_argument("--kmax", type=_int, default=2**14)
    p.add_argument("--samples", type=int, default=1, help="timing repetitions per k (minimum is kept)")
    p.add_argument("--flips-kmax", type=_int, default=2**14, help="largest k run through the flips-only engine")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock columns")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="random instance from twists and flips of a short curve")
    p.add_argument("--surface", choices=SURFACES, default="S2_1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--moves", type=int, default=50)
    p.add_argument("--max-power", type=_int, default=2**30)
    p.add_argument("--out", help="write PREFIX.tri, PREFIX.curve and PREFIX.json")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, TriangulationError, MultiCurveError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except LemmaViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except TwistFlipError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
