"""Command-line interface.

Subcommands: solve, sweep, kcurve, to-weights, to-alpha, measures.
Data goes to stdout and diagnostics to stderr. Exit status is 0 when every
requested solve is optimal, 1 when any is infeasible and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Sequence

from . import __version__
from .decomposition import (
    InfeasibleAlphaError,
    alpha_to_weights,
    orness_from_alpha,
    weights_to_alpha,
)
from .lp import OPTIMAL
from .models import (
    ALPHA_SPACE,
    DisparitySolution,
    kcurve,
    normalize_method,
    solve_minimax_disparity,
    sweep,
)
from .owa import InvalidWeightsError, WeightVector, disparity, orness

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_grid(text: str) -> list[float]:
    """A single decimal, or ``start:stop:step`` inclusive of ``stop``."""
    try:
        parts = [Decimal(p) for p in text.split(":")]
    except InvalidOperation:
        raise UsageError(f"cannot parse grid {text!r}") from None
    if len(parts) == 1:
        values = parts
    elif len(parts) == 3:
        start, stop, step = parts
        if step <= 0:
            raise UsageError(f"grid step must be positive in {text!r}")
        if stop < start:
            raise UsageError(f"grid stop below start in {text!r}")
        count = int((stop - start) / step)
        values = [start + i * step for i in range(count + 1)]
    else:
        raise UsageError(f"grid {text!r} must be 'value' or 'start:stop:step'")
    for v in values:
        if not 0 <= v <= 1:
            raise UsageError(f"eta={v} outside [0, 1]")
    return [float(v) for v in values]


def parse_k_values(text: str, n: int) -> list[int]:
    try:
        if ":" in text:
            lo, hi = (int(p) for p in text.split(":"))
            values = list(range(lo, hi + 1))
        else:
            values = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse k values {text!r}") from None
    if not values:
        raise UsageError(f"empty k range {text!r}")
    for k in values:
        if not 1 <= k <= n:
            raise UsageError(f"k={k} outside 1..{n}")
    return values


def parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(Decimal(p.strip())) for p in text.split(",")]
    except (InvalidOperation, ValueError):
        raise UsageError(f"cannot parse vector {text!r}") from None


def _num(v):
    """JSON/CSV number: integral rationals as int, everything else as float."""
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, int):
        return v
    return float(v)


def _solution_record(sol: DisparitySolution) -> dict:
    rec = {"eta": sol.eta, "k": sol.k, "status": sol.status}
    if sol.optimal:
        rec["delta"] = sol.delta
        rec["weights"] = [_num(w) for w in sol.weights]
        rec["alpha"] = [_num(a) for a in sol.alpha] if sol.alpha is not None else None
    if sol.notes:
        rec["notes"] = list(sol.notes)
    return rec


def _fmt(v, precision: int | None) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    v = _num(v)
    if precision is None:
        return repr(v)
    if isinstance(v, int):
        return str(v)
    text = f"{v:.{precision}f}"
    return "0" if float(text) == 0 else text


def _render_table(header: list[str], rows: list[list], precision: int) -> str:
    cells = [header] + [[_fmt(v, precision) for v in row] for row in rows]
    widths = [max(len(r[c]) for r in cells) for c in range(len(header))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def _render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v, None) for v in row])
    return buf.getvalue()


def _solutions_output(sols: list[DisparitySolution], n: int, args) -> str:
    if args.output == "json":
        k = sols[0].k if sols else args.k
        payload = {
            "meta": {"n": n, "method": normalize_method(args.method), "k": k,
                     "version": __version__},
            "results": [_solution_record(s) for s in sols],
        }
        return json.dumps(payload, indent=2) + "\n"
    if args.output == "csv":
        header = ["eta", "status", "delta"] + [f"w_{i}" for i in range(1, n + 1)] + [
            f"alpha_{j}" for j in range(1, n + 1)
        ]
        rows = []
        for s in sols:
            w = list(s.weights) if s.optimal else [None] * n
            a = list(s.alpha) if s.optimal and s.alpha is not None else [None] * n
            rows.append([s.eta, s.status, s.delta] + w + a)
        return _render_csv(header, rows)
    # table: one column per eta, laid out like the orness table of weights
    header = ["orness"] + [_fmt(s.eta, None) for s in sols]
    rows = []
    for j in range(n):
        rows.append([f"alpha_{j + 1}"] + [
            s.alpha[j] if s.optimal and s.alpha is not None else "-" for s in sols
        ])
    for i in range(n):
        rows.append([f"w_{i + 1}"] + [s.weights[i] if s.optimal else "-" for s in sols])
    rows.append(["delta"] + [s.delta if s.optimal else s.status for s in sols])
    return _render_table(header, rows, args.precision)


def _cmd_solve(args) -> tuple[str, int]:
    etas = parse_grid(args.eta)
    _check_n_k(args)
    sols = sweep(args.n, etas, args.method, args.k)
    code = EXIT_OK if all(s.optimal for s in sols) else EXIT_INFEASIBLE
    return _solutions_output(sols, args.n, args), code


def _cmd_kcurve(args) -> tuple[str, int]:
    if args.n < 2:
        raise UsageError(f"n must be >= 2, got {args.n}")
    etas = parse_grid(args.eta)
    if len(etas) != 1:
        raise UsageError("kcurve takes a single --eta value")
    eta = etas[0]
    ks = parse_k_values(args.k or f"1:{args.n}", args.n)
    points = kcurve(args.n, eta, ks)
    code = EXIT_OK if all(p.status == OPTIMAL for p in points) else EXIT_INFEASIBLE
    if args.output == "json":
        payload = {
            "meta": {"n": args.n, "method": ALPHA_SPACE, "k": ks, "version": __version__},
            "results": [
                {"eta": eta, "k": p.k, "status": p.status,
                 **({"delta": p.delta} if p.status == OPTIMAL else {})}
                for p in points
            ],
        }
        return json.dumps(payload, indent=2) + "\n", code
    rows = [[p.k, p.status, p.delta] for p in points]
    if args.output == "csv":
        return _render_csv(["k", "status", "delta"], rows), code
    return _render_table(["k", "status", "delta"], rows, args.precision), code


def _transform_output(args, weights, alpha) -> str:
    w_num = [_num(v) for v in weights]
    a_num = [_num(v) for v in alpha]
    rec = {
        "weights": w_num,
        "alpha": a_num,
        "orness": _num(orness(weights)),
        "disparity": _num(disparity(weights)),
    }
    n = len(w_num)
    if args.output == "json":
        meta = {"n": n, "version": __version__}
        return json.dumps({"meta": meta, "results": [rec]}, indent=2) + "\n"
    header = ["index", "w", "alpha"]
    rows = [[i + 1, w_num[i], a_num[i]] for i in range(n)]
    if args.output == "csv":
        return _render_csv(header, rows)
    text = _render_table(header, rows, args.precision)
    return text + f"orness {_fmt(rec['orness'], args.precision)}  " \
                  f"disparity {_fmt(rec['disparity'], args.precision)}\n"


def _cmd_to_alpha(args) -> tuple[str, int]:
    w = parse_vector(args.weights)
    _check_length(args, w)
    try:
        wv = WeightVector.from_user(w)
    except InvalidWeightsError as exc:
        raise UsageError(str(exc)) from None
    alpha = weights_to_alpha(wv, exact=True)
    return _transform_output(args, list(wv), list(alpha)), EXIT_OK


def _cmd_to_weights(args) -> tuple[str, int]:
    a = parse_vector(args.alpha)
    _check_length(args, a)
    try:
        wv = alpha_to_weights(a, exact=True)
    except InfeasibleAlphaError as exc:
        raise UsageError(f"infeasible alpha: {exc}") from None
    return _transform_output(args, list(wv), a), EXIT_OK


def _cmd_measures(args) -> tuple[str, int]:
    if args.weights:
        return _cmd_to_alpha(args)
    if args.alpha:
        out, code = _cmd_to_weights(args)
        return out, code
    raise UsageError("measures needs --weights or --alpha")


def _check_length(args, vec):
    if len(vec) < 2:
        raise UsageError("vector needs at least 2 entries")
    if args.n is not None and len(vec) != args.n:
        raise UsageError(f"--n {args.n} but vector has {len(vec)} entries")


def _check_n_k(args):
    if args.n < 2:
        raise UsageError(f"n must be >= 2, got {args.n}")
    if args.k is not None:
        try:
            args.k = int(args.k)
        except ValueError:
            raise UsageError(f"--k must be an integer, got {args.k!r}") from None
        if not 1 <= args.k <= args.n:
            raise UsageError(f"k={args.k} outside 1..{args.n}")


def _seed_check() -> int:
    """Round-trip and symmetry self-test; nonzero exit on any violation."""
    import numpy as np

    rng = np.random.default_rng(12345)
    failures = []
    for n in range(2, 13):
        for _ in range(20):
            w = rng.dirichlet(np.ones(n))
            back = alpha_to_weights(weights_to_alpha(w)).as_array()
            if np.max(np.abs(back - w)) > 1e-10:
                failures.append(f"round trip n={n}")
                break
        a = weights_to_alpha(rng.dirichlet(np.ones(n)))
        if abs(orness_from_alpha(a) - orness(alpha_to_weights(a))) > 1e-10:
            failures.append(f"alpha orness n={n}")
    for n in (5, 10):
        for step in range(11):
            eta = step / 10
            d1 = solve_minimax_disparity(n, eta, "weights").delta
            d2 = solve_minimax_disparity(n, 1 - eta, "weights").delta
            d3 = solve_minimax_disparity(n, eta, "alpha").delta
            if abs(d1 - d2) > 1e-8 or abs(d1 - d3) > 1e-8:
                failures.append(f"symmetry/equivalence n={n} eta={eta}")
    for f in failures:
        print(f"seed-check failed: {f}", file=sys.stderr)
    if not failures:
        print("seed-check ok", file=sys.stderr)
    return EXIT_INFEASIBLE if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", choices=["json", "csv", "table"], default="table")
    common.add_argument("--precision", type=int, default=4)

    parser = _Parser(prog="minimax-owa", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--seed-check", action="store_true", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    for name, helptext in (("solve", "solve one orness level (or a grid)"),
                           ("sweep", "solve a grid of orness levels")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--eta", required=True, help="decimal or start:stop:step")
        p.add_argument("--method", choices=["weights", "alpha"], default="weights")
        p.add_argument("--k", default=None, help="k-additive level (alpha method)")
        p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("kcurve", parents=[common], help="delta against k-additive level")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--k", default=None, help="lo:hi or comma list (default 1:n)")
    p.set_defaults(func=_cmd_kcurve, method="alpha")

    p = sub.add_parser("to-alpha", parents=[common], help="weights -> alpha coefficients")
    p.add_argument("--n", type=int)
    p.add_argument("--weights", required=True)
    p.set_defaults(func=_cmd_to_alpha)

    p = sub.add_parser("to-weights", parents=[common], help="alpha coefficients -> weights")
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", required=True)
    p.set_defaults(func=_cmd_to_weights)

    p = sub.add_parser("measures", parents=[common], help="orness and disparity")
    p.add_argument("--n", type=int)
    p.add_argument("--weights")
    p.add_argument("--alpha")
    p.set_defaults(func=_cmd_measures)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.seed_check:
            return _seed_check()
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.precision < 0:
            raise UsageError("--precision must be >= 0")
        text, code = args.func(args)
    except UsageError as exc:
        print(f"minimax-owa: error: {exc}", file=stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"minimax-owa: error: {exc}", file=stderr)
        return EXIT_USAGE
    stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
