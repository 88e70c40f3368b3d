"""Command-line interface.

Exit codes: 0 success, 1 computational error (e.g. precision-unstable),
2 invalid input, 3 verification failure.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__
from .errors import DQError, InvalidInputError, OutOfScopeError
from .flagcohom import (
    ChernGrid,
    format_poly,
    parse_poly,
    reduce,
    top_degree,
    top_pairing,
)
from .genus import ell_closed, ell_const, ell_oracle_level3, todd_series
from .modforms import eisenstein_G, level_generator
from .qseries import render
from .transfer import e_single, flag_report, transfer_report
from .verify import exit_code, run_verify_paper

EXIT_OK, EXIT_COMPUTE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _cmd_eis(args) -> int:
    m = re.fullmatch(r"G(\d+)", args.name)
    if m:
        series = eisenstein_G(int(m.group(1)), args.prec)
    else:
        series = level_generator(args.level, args.name, args.prec)
    if args.json:
        print(_dump({"name": args.name, "level": args.level, "precision": args.prec,
                     "coefficients": [str(c) for c in series]}))
    else:
        print(render(series))
    return EXIT_OK


def _cmd_series(args) -> int:
    if args.which == "todd":
        coeffs = todd_series(args.deg)
        rows = [str(c) for c in coeffs]
    elif args.which == "ell0":
        rows = [str(c) for c in ell_const(args.level, args.deg)]
    elif args.which == "ell":
        rows = [render(s) for s in ell_closed(args.level, args.deg, args.prec).coeffs]
    else:
        if args.level != 3:
            raise InvalidInputError("the exponential oracle exists for level 3 only")
        rows = [render(s) for s in ell_oracle_level3(args.deg, args.prec).coeffs]
    if args.json:
        print(_dump({"which": args.which, "level": args.level, "deg": args.deg, "coefficients": rows}))
    else:
        for a, row in enumerate(rows):
            print(f"c2^{a}: {row}")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    p = parse_poly(args.n, args.poly)
    nf = reduce(p)
    out = {
        "n": args.n,
        "input": format_poly(p),
        "normal_form": format_poly(nf),
        "top_degree": top_degree(args.n),
        "pairing": top_pairing(p),
        "orientation": "<t1^(n-1) t2^(n-2) ... t(n-1), [B]> = +1",
    }
    if args.json:
        print(_dump(out))
    else:
        print(f"normal form: {out['normal_form']}")
        print(f"pairing with [B]: {out['pairing']}")
    return EXIT_OK


def _load_grid(path: str) -> ChernGrid:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"cannot read grid file {path!r}: {exc}") from exc
    if not isinstance(data, dict) or not {"n", "pairings"} <= data.keys():
        raise InvalidInputError('grid file must be an object with keys "n", "pairings" (and optionally "level")')
    return ChernGrid(data["n"], tuple(data["pairings"]), data.get("level", 3))


def _print_result(result, as_json: bool) -> None:
    data = result.to_json()
    if as_json:
        print(_dump(data))
        return
    print(f"grid: n={result.grid.n_formula} level={result.grid.level} pairings={list(result.grid.pairings)}")
    print(f"filtration: {result.representative.filtration}")
    for w, f in result.representative.components.items():
        print(f"  weight {w}: {f.to_json()}")
    if result.representative.is_zero():
        print("  (zero representative)")
    print(f"classification: {result.classification}")
    print(f"torsion order: {result.torsion_order}")
    print(f"oracle agrees: {result.oracle_agrees}")
    for finding in result.validation:
        print(f"{finding.kind}: {finding.message}")
    print(f"precision: {result.precision_used} (re-checked at {2 * result.precision_used})")


def _cmd_f_transfer(args) -> int:
    grid = _load_grid(args.input)
    if args.level is not None:
        grid = ChernGrid(grid.n_formula, grid.pairings, args.level)
    _print_result(transfer_report(grid, args.prec), args.json)
    return EXIT_OK


def _cmd_flag(args) -> int:
    try:
        i, j = (int(x) for x in args.lines.split(","))
    except ValueError as exc:
        raise InvalidInputError(f"--lines expects 'i,j', got {args.lines!r}") from exc
    _print_result(flag_report(args.n, i, j, args.level, args.prec), args.json)
    return EXIT_OK


def _cmd_e_transfer(args) -> int:
    value = e_single(args.n, args.index)
    if args.json:
        print(_dump({"n": args.n, "index": args.index, "e": str(value)}))
    else:
        print(value)
    return EXIT_OK


def _cmd_verify(args) -> int:
    items = run_verify_paper(args.prec)
    if args.json:
        print(_dump({"items": [it.to_json() for it in items], "exit_code": exit_code(items)}))
    else:
        for it in items:
            print(f"[{it.status.upper():5}] {it.id}: {it.details}")
        passed = sum(it.status == "pass" for it in items)
        print(f"{passed}/{len(items)} passed")
    return exit_code(items)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dqtransfer", description="f-invariants of double quaternionic transfers")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, level_default=3, prec_default=None, with_level=True):
        if with_level:
            sp.add_argument("--level", type=int, choices=(2, 3), default=level_default)
        sp.add_argument("--prec", type=int, default=prec_default)
        sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("eis", help="q-expansion of a generator or G_2k")
    sp.add_argument("--name", required=True, help="E1, E3, delta4, epsilon, or G<2k>")
    common(sp, prec_default=10)
    sp.set_defaults(func=_cmd_eis)

    sp = sub.add_parser("series", help="genus series in c2")
    sp.add_argument("--which", choices=("ell", "ell0", "todd", "oracle"), required=True)
    sp.add_argument("--deg", type=int, default=4)
    common(sp, prec_default=10)
    sp.set_defaults(func=_cmd_series)

    sp = sub.add_parser("reduce-cohomology", help="normal form in H*(Sp(n)/Sp(1)^n)")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--poly", required=True, help='e.g. "t1*t2^2 - 3*t3"')
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_reduce)

    sp = sub.add_parser("f-transfer", help="f-invariant from a Chern grid file")
    sp.add_argument("--input", required=True)
    common(sp, level_default=None)
    sp.set_defaults(func=_cmd_f_transfer)

    sp = sub.add_parser("flag", help="transfer along tautological lines of a flag manifold")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--lines", required=True, help="i,j")
    common(sp)
    sp.set_defaults(func=_cmd_flag)

    sp = sub.add_parser("e-transfer", help="e-invariant of the single transfer")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--index", type=int, required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=_cmd_e_transfer)

    sp = sub.add_parser("verify-paper", help="run the full reproduction suite")
    common(sp, with_level=False)
    sp.set_defaults(func=_cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "prec", None) is not None and args.prec < 1:
        print("dqtransfer: error: --prec must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InvalidInputError, OutOfScopeError) as exc:
        print(f"dqtransfer: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DQError as exc:
        print(f"dqtransfer: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
