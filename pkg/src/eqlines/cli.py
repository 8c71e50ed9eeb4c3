"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a checked inequality or
verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TextIO

from eqlines import __version__
from eqlines.bounds import BoundTable, bound_row
from eqlines.codes import EQUIANGULAR_TOL, SphericalCode, code_to_graph, degree_bounded_switch, restrict_switch, verify_equiangular
from eqlines.configurations import catalog, generate
from eqlines.errors import ConvergenceError, PreconditionError, ValidationError
from eqlines.graph import Graph
from eqlines.graphs import regular_graph_bounds
from eqlines.inequalities import LEMMAS, analyze, batch_params, evaluate_lemma, welch
from eqlines.jsonio import dumps, format_float

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "EQLINES_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ordered_map(fn: Callable, items: Iterable, threads: int) -> list:
    items = list(items)
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read_json(path: str, stdin: TextIO):
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        where = "stdin" if path == "-" else path
        raise ValidationError(f"{where} is not valid JSON (line {e.lineno}, column {e.colno})") from None


def _read_code(args, stdin) -> SphericalCode:
    return SphericalCode.from_json(_read_json(args.input, stdin))


def _read_graph(args, stdin) -> Graph:
    return Graph.from_json(_read_json(args.input, stdin))


def _stamp(obj: dict, args) -> dict:
    if args.no_timestamp:
        return obj
    out = dict(obj)
    out["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return out


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args, stdin, stdout) -> int:
    check = verify_equiangular(_read_code(args, stdin), args.tol)
    stdout.write(dumps(_stamp(check.to_json(), args)) + "\n")
    return EXIT_OK if check.is_equiangular else EXIT_FAIL


def cmd_welch(args, stdin, stdout) -> int:
    rep = welch(_read_code(args, stdin))
    stdout.write(dumps(_stamp(rep.to_json(), args)) + "\n")
    return EXIT_OK if rep.first_holds and rep.second_holds else EXIT_FAIL


def cmd_ineq(args, stdin, stdout) -> int:
    code = _read_code(args, stdin)
    seed = _default_seed() if args.seed is None else args.seed
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    ca = analyze(code)
    params = batch_params(ca, args.lemma, args.samples, seed)
    reports = _ordered_map(lambda p: evaluate_lemma(ca, args.lemma, p), params, args.threads)
    stdout.write(dumps([r.to_json() for r in reports]) + "\n")
    failed = any(r.hypothesis_ok and not r.holds for r in reports)
    return EXIT_FAIL if failed else EXIT_OK


def _parse_r_list(text: str) -> list[int]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            if ":" in tok:
                lo, hi = (int(t) for t in tok.split(":", 1))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(tok))
        except ValueError:
            raise UsageError(f"--r expects integers or ranges lo:hi, got {tok!r}") from None
    if not out:
        raise UsageError("--r needs at least one value")
    return out


def cmd_bounds(args, stdin, stdout) -> int:
    rs = _parse_r_list(args.r)
    rows = _ordered_map(lambda r: bound_row(r, args.alpha, args.field, args.q, args.floor), rs, args.threads)
    table = BoundTable(rows, floored=args.floor)
    if args.format == "csv":
        stdout.write(table.to_csv(format_float))
    else:
        stdout.write(dumps(_stamp(table.to_json(), args)) + "\n")
    return EXIT_OK


def cmd_graph_bounds(args, stdin, stdout) -> int:
    rep = regular_graph_bounds(_read_graph(args, stdin))
    stdout.write(dumps(_stamp(rep.to_json(), args)) + "\n")
    if rep.gap_ok and rep.k > 0 and not (rep.holds1 and rep.holds2):
        return EXIT_FAIL
    return EXIT_OK


def cmd_switch(args, stdin, stdout) -> int:
    code = _read_code(args, stdin)
    if args.pivot is not None and not 0 <= args.pivot < code.n:
        raise UsageError(f"--pivot must lie in 0..{code.n - 1}")
    status = EXIT_OK
    if args.mode == "restrict":
        pivot = 0 if args.pivot is None else args.pivot
        out = restrict_switch(code, pivot)
        g, alpha = code_to_graph(out)
        switched = [i for i in range(code.n) if (out.vectors[i] != code.vectors[i]).any()]
        report = {
            "mode": "restrict",
            "pivot": pivot,
            "alpha": alpha,
            "switched": switched,
            "pivot_isolated": pivot in g.isolated_vertices(),
        }
    else:
        if args.pivot is not None:
            code = restrict_switch(code, args.pivot)
        out, rep = degree_bounded_switch(code)
        report = rep.to_json()
        if not rep.consistent:
            status = EXIT_FAIL
    stdout.write(dumps(_stamp({"code": out.to_json(), "report": report}, args)) + "\n")
    return status


def _parse_kv(items: list[str] | None) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"--params expects K=V, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_generate(args, stdin, stdout) -> int:
    if args.list:
        rows = [{"name": s.name, "params": s.params, "seeded": s.seed is not None, "role": s.role} for s in catalog()]
        stdout.write(dumps(rows) + "\n")
        return EXIT_OK
    if not args.name:
        raise UsageError("generate needs --name (or --list)")
    params = _parse_kv(args.params)
    seed = _default_seed() if args.seed is None else args.seed
    obj = generate(args.name, seed=seed, **params)
    stdout.write(dumps(_stamp(obj.to_json(), args)) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    common.add_argument("--threads", type=int, default=1, help="worker threads (output is unaffected)")

    inp = _Parser(add_help=False)
    inp.add_argument("--input", default="-", help='input JSON file, "-" for stdin')

    p = _Parser(prog="eqlines", description="Verify equiangular codes, projection inequalities and bounds.")
    p.add_argument("--version", action="version", version=f"eqlines {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("verify", parents=[common, inp], help="check that a code is equiangular")
    s.add_argument("--tol", type=float, default=EQUIANGULAR_TOL)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("welch", parents=[common, inp], help="improved Welch inequality")
    s.set_defaults(func=cmd_welch)

    s = sub.add_parser("ineq", parents=[common, inp], help="evaluate one lemma over sampled parameters")
    s.add_argument("--lemma", required=True, choices=list(LEMMAS), metavar="ID")
    s.add_argument("--samples", type=int, default=20)
    s.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    s.set_defaults(func=cmd_ineq)

    s = sub.add_parser("bounds", parents=[common], help="upper bounds on the number of lines")
    s.add_argument("--r", required=True, help="comma separated dimensions or ranges lo:hi")
    s.add_argument("--alpha", required=True, help="angle, e.g. 1/3, 0.2 or 1/sqrt(5)")
    s.add_argument("--q", type=int, default=None, help="include the asymptotic bound with this q")
    s.add_argument("--field", choices=["real", "complex"], default="real")
    s.add_argument("--floor", action="store_true", help="round bounds down to integers")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("graph-bounds", parents=[common, inp], help="second-eigenvalue bounds for a regular graph")
    s.set_defaults(func=cmd_graph_bounds)

    s = sub.add_parser("switch", parents=[common, inp], help="switch a real code")
    s.add_argument("--mode", choices=["restrict", "degree"], required=True)
    s.add_argument("--pivot", type=int, default=None)
    s.set_defaults(func=cmd_switch)

    s = sub.add_parser("generate", parents=[common], help="emit a catalogue configuration")
    s.add_argument("--name")
    s.add_argument("--params", nargs="*", metavar="K=V")
    s.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    s.add_argument("--list", action="store_true", help="list the catalogue")
    s.set_defaults(func=cmd_generate)
    return p


def run(argv: list[str] | None = None, stdin: TextIO | None = None,
        stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        return args.func(args, stdin, stdout)
    except UsageError as e:
        stderr.write(f"eqlines: usage error: {e}\n")
    except (ValidationError, PreconditionError) as e:
        stderr.write(f"eqlines: input error: {e}\n")
    except ConvergenceError as e:
        stderr.write(f"eqlines: numerical error: {e}\n")
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
