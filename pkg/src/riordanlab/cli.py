"""Command-line front end.

Exit codes: 0 on success or a passing verification, 1 when a verification
fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import RiordanError
from .grouplab import EXCEEDS_CAP, closure, element_order, order_profile, search_substitution_relations
from .parsing import split_top_level
from .riordan import RiordanPair, parse_pair
from .rings import parse_ring
from .scenarios import CATALOG, Options, run_scenario
from .series import DEFAULT_PRECISION, parse_series

__all__ = ["main", "build_parser"]


def _is_pair(text: str) -> bool:
    body = text.strip()
    return body.startswith("(") and body.endswith(")") and len(split_top_level(body[1:-1])) == 2


def _emit(args, text: str | None = None, data=None) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print(text)


def _pair_json(x: RiordanPair) -> dict:
    return {"ring": str(x.ring), "N": x.N, "g": str(x.g), "f": str(x.f)}


def cmd_eval(args) -> int:
    ring = parse_ring(args.ring or "Q")
    N = args.prec if args.prec is not None else DEFAULT_PRECISION
    if _is_pair(args.expression):
        x = parse_pair(ring, args.expression, N)
        _emit(args, str(x), _pair_json(x))
    else:
        s = parse_series(ring, args.expression, N)
        data = {"ring": str(ring), "N": s.N, "series": str(s), "coefficients": [str(c) for c in s.elements()]}
        _emit(args, str(s), data)
    return 0


def _level_and_pair(args):
    ring = parse_ring(args.ring or "Q")
    N = args.prec if args.prec is not None else max(DEFAULT_PRECISION, args.level or 0)
    return ring, N


def cmd_matrix(args) -> int:
    ring, N = _level_and_pair(args)
    x = parse_pair(ring, args.pair, N)
    M = x.to_matrix(args.level)
    _emit(args, str(M), M.to_json())
    return 0


def cmd_order(args) -> int:
    ring, N = _level_and_pair(args)
    x = parse_pair(ring, args.pair, N)
    target = x.to_matrix(args.level) if args.level is not None else x
    k = element_order(target, cap=args.cap)
    shown = f"> {args.cap}" if k is EXCEEDS_CAP else str(k)
    _emit(args, shown, {"order": None if k is EXCEEDS_CAP else k, "exceeds_cap": k is EXCEEDS_CAP, "cap": args.cap})
    return 0


def cmd_closure(args) -> int:
    ring, N = _level_and_pair(args)
    gens = [parse_pair(ring, p, N).to_matrix(args.level) for p in args.pairs]
    c = closure(gens, cap=args.cap)
    profile = order_profile(c)
    if args.json:
        _emit(args, data={
            "ring": str(ring),
            "level": args.level,
            "size": len(c),
            "order_profile": {str(k): v for k, v in profile.items()},
            "elements": [m.to_json()["entries"] for m in c.elements],
        })
    else:
        lines = [f"size {len(c)}", "orders " + ", ".join(f"{k}:{v}" for k, v in profile.items())]
        if args.list:
            for m in c.elements:
                lines.append("")
                lines.append(str(m))
        print("\n".join(lines))
    return 0


def cmd_aseq(args) -> int:
    ring = parse_ring(args.ring or "Q")
    N = args.prec if args.prec is not None else DEFAULT_PRECISION
    A = parse_pair(ring, args.pair, N).a_sequence()
    _emit(args, str(A), {"ring": str(ring), "N": A.N, "A": str(A), "coefficients": [str(c) for c in A.elements()]})
    return 0


def cmd_search(args) -> int:
    ring = parse_ring(args.ring or "Q")
    N = args.prec if args.prec is not None else 3
    res = search_substitution_relations(ring, N)
    print(json.dumps(res.to_json(), indent=2))
    return 0


def cmd_verify(args) -> int:
    names = list(CATALOG) if args.name == "all" else [args.name]
    for n in names:
        if n not in CATALOG:
            run_scenario(n)  # raises UnknownScenario
    opts = Options(ring=args.ring, prec=args.prec, samples=args.samples, seed=args.seed)
    if args.parallel and len(names) > 1:
        with ThreadPoolExecutor() as pool:
            reports = list(pool.map(lambda n: run_scenario(n, opts), names))
    else:
        reports = [run_scenario(n, opts) for n in names]
    passed = sum(r.status == "pass" for r in reports)
    if args.json:
        text = json.dumps({
            "status": "pass" if passed == len(reports) else "fail",
            "passed": passed,
            "total": len(reports),
            "reports": [r.to_json(timing=args.timing) for r in reports],
        }, indent=2)
    else:
        text = "\n".join([r.render(timing=args.timing) for r in reports] + [f"{passed}/{len(reports)} scenarios passed"])
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if passed == len(reports) else 1


def _scenario_epilog() -> str:
    width = max(len(n) for n in CATALOG)
    lines = ["scenarios (default ring in brackets):"]
    for sc in CATALOG.values():
        lines.append(f"  {sc.name:<{width}}  [{sc.default_ring}] {sc.summary}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    # Shared flags are accepted before or after the subcommand; the copy on
    # each subparser uses SUPPRESS so it never clobbers an earlier value.
    def add_common(p, suppress: bool):
        d = argparse.SUPPRESS if suppress else None
        p.add_argument("-r", "--ring", default=d, help="coefficient ring, e.g. Q, Z, Z/6, Z/6[X]/(X^2+X+1); default Q, or the scenario default for verify")
        p.add_argument("--prec", type=int, default=d, help="series precision N (coefficients t^0..t^N)")
        p.add_argument("--json", action="store_true", default=argparse.SUPPRESS if suppress else False, help="machine-readable output")
        p.add_argument("--parallel", action="store_true", default=argparse.SUPPRESS if suppress else False, help="run scenarios concurrently")

    parser = argparse.ArgumentParser(prog="riordanlab", description="Exact Riordan group computations over commutative rings.")
    add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a series or a pair (g, f)")
    p.add_argument("expression")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("matrix", help="truncated matrix of a pair")
    p.add_argument("pair")
    p.add_argument("-n", "--level", type=int, required=True)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("order", help="order of a pair, or of its level-n truncation")
    p.add_argument("pair")
    p.add_argument("-n", "--level", type=int)
    p.add_argument("--cap", type=int, default=10_000)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("closure", help="group generated by level-n truncations")
    p.add_argument("pairs", nargs="+")
    p.add_argument("-n", "--level", type=int, required=True)
    p.add_argument("--cap", type=int, default=10_000)
    p.add_argument("--list", action="store_true", help="print every element")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("aseq", help="A-sequence t / fbar(t) of a pair")
    p.add_argument("pair")
    p.set_defaults(func=cmd_aseq)

    p = sub.add_parser("search", help="solutions of f o f = t, h^3 = t, (h o f)^3 = t in J_N (JSON)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser(
        "verify",
        help="run a named scenario or all of them",
        epilog=_scenario_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("name", help="scenario name or 'all'")
    p.add_argument("--samples", type=int, help="sample count for randomized scenarios")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include wall time (makes output run-dependent)")
    p.add_argument("--output", metavar="PATH", help="also write the report to PATH")
    p.set_defaults(func=cmd_verify)

    for sp in sub.choices.values():
        add_common(sp, suppress=True)
    parser.epilog = _scenario_epilog()
    parser.formatter_class = argparse.RawDescriptionHelpFormatter
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RiordanError as exc:
        msg = exc.args[0] if exc.args else ""
        print(f"error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
