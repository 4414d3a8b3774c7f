r"""Command-line interface.

Subcommands::

    eval       evaluate one expression (or a batch file) exactly
    series     tabulate the pseudostable failure of the degree-two
               Chern-class relation against its closed-form coefficients
    selfcheck  run the consistency suites
    cache      store / load / verify the psi-correlator memo table

Exit status: 0 on success, 1 on an evaluation or user error, 2 on a
selfcheck failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import factorial

from .cache import CacheFormatError, cache_load, cache_store, cache_verify
from .expr import ParseError, SymbolRangeError, parse_expression
from .multiset import compositions
from .selfcheck import run_all
from .strata import EmptyModuliError, expr_integral
from .wk import default_table

__all__ = ["main"]


def _load_cache_if_given(path):
    if path:
        cache_load(path, table=default_table())


def _store_cache_if_given(path):
    if path:
        cache_store(path, table=default_table())


def _eval_one(text, g, n, space):
    expression = parse_expression(text, g, n)
    return expr_integral(g, n, expression, space=space)


def _format_json(g, n, space, text, value=None, error=None):
    payload = {"g": g, "n": n, "space": space, "expr": text}
    if error is None:
        payload["value"] = str(value)
    else:
        payload["error"] = error
    return json.dumps(payload)


def _cmd_eval(args):
    if (args.expr is None) == (args.batch is None):
        print("eval: provide exactly one of EXPR or --batch FILE",
              file=sys.stderr)
        return 1
    _load_cache_if_given(args.cache)
    status = 0
    if args.expr is not None:
        try:
            value = _eval_one(args.expr, args.g, args.n, args.space)
        except (ParseError, SymbolRangeError, EmptyModuliError, ValueError) as exc:
            if args.json:
                print(_format_json(args.g, args.n, args.space, args.expr,
                                   error=str(exc)))
            else:
                print(f"error: {exc}", file=sys.stderr)
            return 1
        if args.json:
            print(_format_json(args.g, args.n, args.space, args.expr, value))
        else:
            print(value)
    else:
        with open(args.batch, "r", encoding="utf-8") as fh:
            lines = [line.strip() for line in fh]
        entries = [(k, line) for k, line in enumerate(lines, start=1) if line]

        def work(line):
            try:
                return str(_eval_one(line, args.g, args.n, args.space)), None
            except (ParseError, SymbolRangeError, EmptyModuliError,
                    ValueError) as exc:
                return None, str(exc)

        if args.jobs > 1:
            with ThreadPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(work, [line for _, line in entries]))
        else:
            results = [work(line) for _, line in entries]
        for (lineno, line), (value, error) in zip(entries, results):
            if error is None:
                if args.json:
                    print(_format_json(args.g, args.n, args.space, line,
                                       Fraction(value)))
                else:
                    print(value)
            else:
                status = 1
                if args.json:
                    print(_format_json(args.g, args.n, args.space, line,
                                       error=error))
                else:
                    print(f"line {lineno}: error: {error}")
    _store_cache_if_given(args.cache)
    return status


def _cmd_series(args):
    if args.n < 1:
        print("series: --n must be at least 1", file=sys.stderr)
        return 1
    if not 2 <= args.gmax <= 6:
        print("series: --gmax must be between 2 and 6", file=sys.stderr)
        return 1
    _load_cache_if_given(args.cache)
    n = args.n
    print(f"{'g':>2}  {'integral':>16}  {'series coeff':>16}  result")
    status = 0
    for g in range(2, args.gmax + 1):
        power = 3 * g - 5 + n
        text = f"(2*lambda2 - lambda1^2)*psi1^{power}"
        value = _eval_one(text, g, n, "ps")
        coeff = Fraction(-1, 24 ** g * factorial(g - 1))
        ok = value == coeff
        if not ok:
            status = 1
        print(f"{g:>2}  {str(value):>16}  {str(coeff):>16}  "
              f"{'PASS' if ok else 'FAIL'}")
    _store_cache_if_given(args.cache)
    return status


def _cmd_selfcheck(args):
    _load_cache_if_given(args.cache)
    failed = False
    for result in run_all():
        if result.passed:
            print(f"PASS  {result.name}")
        else:
            failed = True
            print(f"FAIL  {result.name}: {result.detail}")
    _store_cache_if_given(args.cache)
    return 2 if failed else 0


def _cmd_cache(args):
    if args.action == "store":
        table = default_table()
        for g in range(0, args.gmax + 1):
            for n in range(1, args.dim_max + 4):
                dim = 3 * g - 3 + n
                if dim < 0 or dim > args.dim_max or 2 * g - 2 + n <= 0:
                    continue
                for d in compositions(dim, n):
                    table.integral(g, d)
        count = cache_store(args.path, table)
        print(f"stored {count} entries to {args.path}")
        return 0
    if args.action == "load":
        try:
            table = cache_load(args.path)
        except CacheFormatError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"loaded {len(table)} entries from {args.path}")
        return 0
    # verify
    try:
        checked, mismatches = cache_verify(args.path, sample=args.sample)
    except CacheFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if mismatches:
        for g, d, stored, again in mismatches:
            print(f"MISMATCH g={g} d={list(d)}: stored {stored}, "
                  f"recomputed {again}")
        print(f"verified {checked} sampled entries, {len(mismatches)} mismatches")
        return 1
    print(f"verified {checked} sampled entries, 0 mismatches")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="pshodge",
        description="Exact Hodge integrals on moduli of stable and "
                    "pseudostable curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser(
        "eval", help="evaluate a lambda/psi polynomial exactly")
    p_eval.add_argument("expr", nargs="?", default=None,
                        help="expression, e.g. '(2*lambda2 - lambda1^2)*psi1^2'")
    p_eval.add_argument("--g", type=int, required=True, help="genus")
    p_eval.add_argument("--n", type=int, required=True,
                        help="number of marked points")
    p_eval.add_argument("--space", choices=("stable", "ps"), default="stable",
                        help="moduli space to integrate over")
    p_eval.add_argument("--json", action="store_true",
                        help="emit one JSON object per result")
    p_eval.add_argument("--cache", metavar="PATH", default=None,
                        help="load/store the psi memo table at PATH")
    p_eval.add_argument("--batch", metavar="FILE", default=None,
                        help="evaluate one expression per line of FILE")
    p_eval.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for batch evaluation")
    p_eval.set_defaults(func=_cmd_eval)

    p_series = sub.add_parser(
        "series",
        help="pseudostable integrals of (2*lambda2 - lambda1^2)*psi1^(3g-5+n) "
             "against -1/(24^g (g-1)!)")
    p_series.add_argument("--n", type=int, default=1)
    p_series.add_argument("--gmax", type=int, default=3)
    p_series.add_argument("--cache", metavar="PATH", default=None)
    p_series.set_defaults(func=_cmd_series)

    p_check = sub.add_parser("selfcheck", help="run the consistency suites")
    p_check.add_argument("--cache", metavar="PATH", default=None)
    p_check.set_defaults(func=_cmd_selfcheck)

    p_cache = sub.add_parser("cache", help="manage the psi memo table file")
    p_cache.add_argument("action", choices=("store", "load", "verify"))
    p_cache.add_argument("path")
    p_cache.add_argument("--dim-max", type=int, default=9,
                         help="store: precompute all keys up to this dimension")
    p_cache.add_argument("--gmax", type=int, default=4,
                         help="store: largest genus to precompute")
    p_cache.add_argument("--sample", type=int, default=25,
                         help="verify: number of sampled entries")
    p_cache.set_defaults(func=_cmd_cache)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
