"""Command-line entry point.

Exit status: 0 on success, 1 on domain errors (bad graph files, caps
exceeded, failed checks), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import counting, density as dens, multiplicative as mult, verify as ver
from .graph import read_graph
from .polynomial import compute_poly


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite float {x!r}")
    text = format(x, ".17g")
    if "." not in text and "e" not in text:
        text += ".0"
    return text


def dumps(obj) -> str:
    """JSON with fixed key order and 17-significant-digit floats."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{dumps(str(k))}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


class CheckFailed(Exception):
    """A requested cross-check disagreed; reported with exit status 1."""


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return value


def _int_list(text: str) -> list[int]:
    return [_positive_int(t.strip()) for t in text.split(",") if t.strip()]


def cmd_poly(args) -> str:
    poly = compute_poly(read_graph(args.graph), signed=not args.plus)
    return dumps({"signed": poly.signed, "coefficients": [str(c) for c in poly.coefficients]})


def cmd_density(args) -> str:
    est = dens.density(read_graph(args.graph), args.prime_bound)
    return dumps(
        {
            "value": est.value,
            "prime_bound": est.prime_bound,
            "tail_bound": est.tail_bound,
            "float_budget": est.float_budget,
        }
    )


def cmd_count(args) -> str:
    g = read_graph(args.graph)
    methods = counting.METHODS if args.method == "both" else (args.method,)
    results = [counting.count(g, args.x, m, args.threads) for m in methods]
    out = {"x": args.x, "method": args.method, "count": str(results[0].count)}
    if len(results) > 1:
        agree = len({r.count for r in results}) == 1
        out["methods_agree"] = agree
        if not agree:
            detail = ", ".join(f"{r.method}={r.count}" for r in results)
            raise CheckFailed(f"counters disagree at x={args.x}: {detail}")
    return dumps(out)


def cmd_f(args) -> str:
    g = read_graph(args.graph)
    signed = not args.plus
    values = {}
    try:
        values["enumerate"] = mult.f_enumerate(g, args.m, signed)
    except mult.EnumerationCapError:
        pass
    values["multiplicative"] = mult.f_multiplicative(compute_poly(g, signed), args.m)
    agree = len(set(values.values())) == 1
    if not agree:
        raise CheckFailed(f"paths disagree for m={args.m}: {values}")
    return dumps(
        {
            "m": str(args.m),
            "signed": signed,
            "value": str(values["multiplicative"]),
            "paths": list(values),
            "paths_agree": agree,
        }
    )


def cmd_table(args) -> str:
    g = read_graph(args.graph)
    est = dens.density(g, args.prime_bound)
    rows = [counting.error_diagnostic(g, x, est, args.threads) for x in args.xs]
    if args.format == "json":
        return dumps(
            {
                "prime_bound": est.prime_bound,
                "density": est.value,
                "tail_bound": est.tail_bound,
                "d": g.d,
                "log": "natural",
                "rows": [
                    {
                        "x": r.x,
                        "g": str(r.g),
                        "main_term": r.main_term,
                        "abs_error": r.abs_error,
                        "ratio": r.ratio,
                        "method": r.method,
                    }
                    for r in rows
                ],
            }
        )
    lines = ["x\tg\tmain_term\tabs_error\tratio"]
    for r in rows:
        lines.append(
            "\t".join([str(r.x), str(r.g), format_float(r.main_term), format_float(r.abs_error), format_float(r.ratio)])
        )
    return "\n".join(lines)


def cmd_verify(args) -> str:
    report = ver.run_verify(args.max_vertices, args.max_x, args.prime_bound, args.threads)
    text = dumps(report)
    if report["status"] != "PASS":
        failed = [s["name"] for s in report["suites"] if s["status"] != "PASS"]
        raise CheckFailed(f"verification failed: {', '.join(failed)}", text)
    return text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coprimality",
        description="Count integer tuples under pairwise coprimality constraints given by a graph.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_arg(p):
        p.add_argument("--graph", required=True, metavar="FILE", help="graph file (v, then one 'r s' per edge)")

    def threads_arg(p):
        p.add_argument("--threads", type=_positive_int, default=1, help="worker processes (default 1)")

    p = sub.add_parser("poly", help="coefficients of the edge-subset polynomial")
    graph_arg(p)
    p.add_argument("--plus", action="store_true", help="unsigned polynomial")
    p.set_defaults(func=cmd_poly)

    p = sub.add_parser("density", help="certified Euler product for the tuple density")
    graph_arg(p)
    p.add_argument("--prime-bound", type=_positive_int, default=dens.DEFAULT_PRIME_BOUND)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("count", help="exact number of admissible tuples up to x")
    graph_arg(p)
    p.add_argument("--x", type=_positive_int, required=True)
    p.add_argument("--method", choices=["bruteforce", "moebius", "both"], default="both")
    threads_arg(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("f", help="edge-numbering function at m")
    graph_arg(p)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--plus", action="store_true", help="absolute Moebius weights")
    p.set_defaults(func=cmd_f)

    p = sub.add_parser("table", help="error-term table against the asymptotic main term")
    graph_arg(p)
    p.add_argument("--xs", type=_int_list, default=[10, 100, 1000], help="comma-separated x values")
    p.add_argument("--prime-bound", type=_positive_int, default=dens.DEFAULT_PRIME_BOUND)
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    threads_arg(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run the built-in consistency suites")
    p.add_argument("--max-vertices", type=_positive_int, default=4)
    p.add_argument("--max-x", type=_positive_int, default=40)
    p.add_argument("--prime-bound", type=_positive_int, default=dens.DEFAULT_PRIME_BOUND)
    threads_arg(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except CheckFailed as exc:
        if len(exc.args) > 1:
            print(exc.args[1], file=out)
        print(f"error: {exc.args[0]}", file=err)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    print(text, file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
