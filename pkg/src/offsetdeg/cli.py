"""Command-line interface: ``offsetdeg {implicit,parametric,corpus,oracle-check}``.

Exit codes: 0 success, 1 internal error or failed comparison, 2 invalid
input, 3 formula degeneracy, 4 cost guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import partial

from . import __version__
from .corpus import SCHEMA_VERSION, default_fixture_path, load_fixture, run_entry, summarize
from .errors import OffsetDegreeError, ValidationError
from .formulas import degree_report, validate_implicit
from .parser import RESERVED, parse_parametrization, parse_polynomial, scan_names
from .polyring import substitute

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_VALIDATION = 2
EXIT_DEGENERACY = 3
EXIT_COST = 4

#: Values given, in order of first appearance, to parameters without --param.
DEFAULT_PARAM_VALUES = (Fraction(5), Fraction(3), Fraction(7, 2), Fraction(11, 3),
                        Fraction(13, 5), Fraction(17, 7), Fraction(19, 4), Fraction(23, 6))


def _param(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected NAME=RATIONAL, got {text!r}")
    if name in RESERVED:
        raise argparse.ArgumentTypeError(f"{name!r} is reserved and cannot be a parameter")
    try:
        return name, Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{value!r} is not a rational number") from None


def _bindings(texts, given: dict, symbolic: bool) -> dict:
    """Parameter values: explicit ones, then defaults unless symbolic."""
    names: list[str] = []
    for text in texts:
        for n in scan_names(text):
            if n not in RESERVED and n not in names:
                names.append(n)
    out = {n: given[n] for n in names if n in given}
    if not symbolic:
        free = [n for n in names if n not in given]
        if len(free) > len(DEFAULT_PARAM_VALUES):
            raise ValidationError("too many parameters without values; use --param or --symbolic")
        out.update(zip(free, DEFAULT_PARAM_VALUES))
    return out


def _apply(poly, bindings):
    present = {k: v for k, v in bindings.items() if k in poly.ring.names}
    return substitute(poly, present) if present else poly


def _emit(args, name: str, report) -> None:
    diag = dict(report.diagnostics)
    if args.no_timings:
        diag["ms"] = None
    if args.json:
        out = {"schema": SCHEMA_VERSION, "name": name, **report.as_dict(), "pass": None}
        out["diagnostics"] = diag
        print(json.dumps(out, sort_keys=True))
        return
    dd = "unavailable" if report.delta_d is None else report.delta_d
    print(f"curve    {name}")
    print(f"method   {report.method}")
    print(f"delta1   {report.delta1}")
    print(f"delta2   {report.delta2}")
    print(f"delta_d  {dd}")
    if report.method == "parametric":
        print("formulae A and B agree")
    for note in report.notes:
        print(f"note: {note}")


def cmd_implicit(args) -> int:
    bindings = _bindings([args.poly], dict(args.param), args.symbolic)
    f = _apply(parse_polynomial(args.poly), bindings)
    report = degree_report(validate_implicit(f), method=args.resultant)
    _emit(args, str(f), report)
    return EXIT_OK


def cmd_parametric(args) -> int:
    texts = [args.x, args.y, args.w]
    bindings = _bindings(texts, dict(args.param), args.symbolic)
    p = parse_parametrization(*texts, reduce=args.reduce)
    if bindings:
        p = parse_parametrization(*(str(_apply(q, bindings)) for q in (p.X, p.Y, p.W)), reduce=args.reduce)
    report = degree_report(p)
    _emit(args, f"({p.X}, {p.Y}) / ({p.W})", report)
    return EXIT_OK


def cmd_corpus(args) -> int:
    entries = load_fixture(args.fixture)
    if args.filter:
        entries = [e for e in entries if e.name == args.filter]
    work = partial(run_entry, symbolic=args.symbolic, method=args.resultant,
                   timings=not args.no_timings)
    if args.parallel > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            records = list(pool.map(work, entries))
    else:
        records = [work(e) for e in entries]
    summary = summarize(records)
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, "entries": records, "summary": summary},
                         sort_keys=True, indent=2))
    else:
        for r in records:
            got = f"({r['delta1']}, {r['delta2']}, {r['delta_d']})"
            exp = f"({r['expected']['delta1']}, {r['expected']['delta2']}, {r['expected']['delta_d']})"
            line = f"{r['status']:5s} {r['name']:22s} got {got:14s} expected {exp}"
            if r["parametric"] is not None:
                par = r["parametric"]
                line += f"  parametric ({par['delta1']}, {par['delta2']})"
            if r["diagnostics"].get("ms") is not None:
                line += f"  {r['diagnostics']['ms'] / 1000:.2f}s"
            if r["error"]:
                line += f"  {r['error']}"
            print(line)
        print(f"{summary['entries']} entries: {summary['pass']} pass, {summary['warn']} warn, "
              f"{summary['fail']} fail, {summary['error']} error")
    return EXIT_OK if summary["ok"] else EXIT_INTERNAL


def cmd_oracle_check(args) -> int:
    from .oracle import eliminate_offset, oracle_degrees

    bindings = _bindings([args.poly], dict(args.param), False)
    curve = validate_implicit(_apply(parse_polynomial(args.poly), bindings))
    mode = "symbolic-d" if args.mode == "symbolic" else "specialized-d"
    res = eliminate_offset(curve, mode, d0=args.d0, seed=args.seed)
    od1, od2, odd = oracle_degrees(res)
    report = degree_report(curve, method=args.resultant)
    agree = (od1, od2) == (report.delta1, report.delta2) and (odd is None or odd == report.delta_d)
    if args.json:
        print(json.dumps({
            "schema": SCHEMA_VERSION,
            "name": str(curve.f),
            "mode": mode,
            "oracle": {"delta1": od1, "delta2": od2, "delta_d": odd},
            "formula": {"delta1": report.delta1, "delta2": report.delta2, "delta_d": report.delta_d},
            "attempts": res.attempts,
            "offset_equation": str(res.g_candidate),
            "discarded": [{"factor": str(f), "reason": why} for f, why in res.discarded_factors],
            "agree": agree,
        }, sort_keys=True))
    else:
        print(f"curve    {curve.f}")
        print(f"mode     {mode}" + (f" (d0 = {res.d0})" if res.d0 is not None else ""))
        print(f"oracle   delta1={od1} delta2={od2} delta_d={'-' if odd is None else odd}")
        print(f"formula  delta1={report.delta1} delta2={report.delta2} delta_d={report.delta_d}")
        if args.show_equation:
            print(f"g        {res.g_candidate}")
        print("AGREE" if agree else "DISAGREE")
    return EXIT_OK if agree else EXIT_INTERNAL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="offsetdeg", description="Degrees of the generic offset of a plane curve.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--param", action="append", type=_param, default=[], metavar="NAME=RAT",
                        help="value for a curve parameter (repeatable)")
    common.add_argument("--symbolic", action="store_true",
                        help="keep parameters without --param symbolic instead of using defaults")
    common.add_argument("--resultant", choices=("prs", "bareiss"), default="prs",
                        help="resultant algorithm (default: subresultant PRS)")
    common.add_argument("--no-timings", action="store_true", help="report null timings (reproducible output)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("implicit", parents=[common], help="curve given by f(y1, y2) = 0")
    p.add_argument("poly")
    p.set_defaults(func=cmd_implicit)

    p = sub.add_parser("parametric", parents=[common], help="curve given by (X/W, Y/W) in t")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--w", default="1")
    p.add_argument("--reduce", action="store_true", help="divide out a common factor of X, Y, W")
    p.set_defaults(func=cmd_parametric)

    p = sub.add_parser("corpus", parents=[common], help="check a fixture of curves with known degrees")
    p.add_argument("fixture", nargs="?", default=None,
                   help=f"JSON fixture (default: {default_fixture_path().name} shipped with the package)")
    p.add_argument("--parallel", type=int, default=1, metavar="N")
    p.add_argument("--filter", metavar="NAME", help="run only the entry with this name")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("oracle-check", parents=[common], help="compare formulae with explicit elimination")
    p.add_argument("poly")
    p.add_argument("--mode", choices=("symbolic", "specialized"), default="symbolic")
    p.add_argument("--d0", type=Fraction, default=None, help="distance for specialized mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--show-equation", action="store_true")
    p.set_defaults(func=cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OffsetDegreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - mapped to the internal-error exit code
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
