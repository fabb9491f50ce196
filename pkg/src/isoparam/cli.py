"""Command-line interface.

Exit codes: 0 success / true, 1 semantic failure / false, 2 input error.
Polynomials are read and written in the JSON interchange format of
:meth:`isoparam.polyring.Polynomial.to_json`.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import FAMILIES, build, builtin_catalog, catalog_pairs
from .compose import chebyshev_compose
from .numeric_geom import CensusError, ConvergenceError, curvature_census
from .polyring import Polynomial
from .verify import check_eiconal, classify_against_catalog, composition_sign, is_cm

EXIT_OK, EXIT_FALSE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_poly(path: str) -> Polynomial:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return Polynomial.loads(text)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot read polynomial from {path}: {exc}") from None


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def cmd_construct(args) -> int:
    params = {
        k: getattr(args, k)
        for k in ("n", "s", "d", "m", "multiplier")
        if getattr(args, k) is not None
    }
    if args.normalize:
        params["normalize"] = True
    try:
        poly = build(args.family, **params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, poly.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    poly = _read_poly(args.input)
    try:
        if args.eiconal_only:
            result = check_eiconal(poly)
            payload = {
                "m": result.degree,
                "eiconal": result.ok,
                "witness": None if result.witness is None else result.witness.to_json(),
            }
            _emit(args, payload)
            return EXIT_OK if result.ok else EXIT_FALSE
        report = is_cm(poly)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(args, report.to_json())
    return EXIT_OK if report.is_cm else EXIT_FALSE


def cmd_compose(args) -> int:
    g = _read_poly(args.input)
    if args.k < 1:
        raise InputError(f"k must be a positive integer, got {args.k}")
    try:
        f = chebyshev_compose(g, args.k, max_degree=args.max_degree)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    _emit(args, f.to_json())
    return EXIT_OK


def cmd_check_composition(args) -> int:
    f, g = _read_poly(args.f), _read_poly(args.g)
    if args.k < 1:
        raise InputError(f"k must be a positive integer, got {args.k}")
    try:
        sign = composition_sign(f, g, args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    _emit(args, {"composition": sign is not None, "sign": sign, "k": args.k})
    return EXIT_OK if sign is not None else EXIT_FALSE


def cmd_classify(args) -> int:
    f = _read_poly(args.input)
    if args.against:
        catalog = [(_read_poly(p), Path(p).stem) for p in args.against]
    else:
        catalog = catalog_pairs()
    try:
        found = classify_against_catalog(f, catalog)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = None if found is None else {"label": found.label, "k": found.k, "sign": found.sign}
    _emit(args, {"match": payload})
    return EXIT_OK if found is not None else EXIT_FALSE


def cmd_curvatures(args) -> int:
    f = _read_poly(args.input)
    report = is_cm(f) if args.expect_cm else None
    try:
        census = curvature_census(f, args.level, args.count, args.seed, report=report)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    except (CensusError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    _emit(args, census.to_json())
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    for entry in builtin_catalog():
        rep = is_cm(entry.polynomial)
        rows.append({"label": entry.label, "family": entry.family, "params": entry.params, **rep.to_json()})
    if args.json:
        _emit(args, rows)
    else:
        lines = [f"{'label':<18} {'n':>3} {'m':>2} {'c':>6} {'m+':>4} {'m-':>4}  cm"]
        for r in rows:
            c = "-" if r["c"] is None else r["c"]["a"] + ("" if r["c"]["b"] == "0" else f"+{r['c']['b']}s3")
            lines.append(
                f"{r['label']:<18} {r['n']:>3} {r['m']:>2} {c:>6} "
                f"{r['m_plus'] or '-':>4} {r['m_minus'] or '-':>4}  {r['is_cm']}"
            )
        _emit(args, "\n".join(lines))
    return EXIT_OK if all(r["is_cm"] for r in rows) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="random seed for sampling")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="isoparam", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a polynomial family")
    p.add_argument("family", choices=FAMILIES)
    for name in ("n", "s", "d", "m", "multiplier"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--normalize", action="store_true", help="ot: rescale to solve the eiconal equation")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="Cartan-Munzner report")
    p.add_argument("input", help="polynomial JSON file or '-'")
    p.add_argument("--eiconal-only", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compose", parents=[common], help="|x|^(pk) T_k(G/|x|^p)")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=24)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("check-composition", parents=[common], help="is F = +-T_k(G)?")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_check_composition)

    p = sub.add_parser("classify", parents=[common], help="match F against a catalog")
    p.add_argument("input")
    p.add_argument("--against", nargs="+", help="candidate polynomial files (default: built-in catalog)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("curvatures", parents=[common], help="principal-curvature census")
    p.add_argument("input")
    p.add_argument("--level", type=float, default=0.0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--expect-cm", action="store_true", help="also check against the exact report")
    p.set_defaults(func=cmd_curvatures)

    p = sub.add_parser("catalog", parents=[common], help="list and verify built-in entries")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
