"""Command-line front end: ``qharmonic <command> ...``.

Exit codes: 0 success or holds, 1 an identity fails, 2 usage or parse
error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import compositions as C
from .compositions import CompositionError
from .qpoly import PoleError, QRatFun, eval_at
from .sums import RouteMismatch, SumError, SumKind, eval_sum, qzeta_truncated, truncated_limit
from .verify import FAILS, HOLDS, Bounds, IdentityId, ParamError, aggregate_verdict, check_identity, sweep

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # one-line diagnostics instead of the full usage dump
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational p/r: {text!r}") from None


def _identity(text: str) -> IdentityId:
    try:
        return IdentityId(text.strip().upper())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown identity {text!r}") from None


def _kind(text: str) -> SumKind:
    try:
        return SumKind.parse(text)
    except (ValueError, KeyError):
        raise argparse.ArgumentTypeError(f"unknown sum kind {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="qharmonic", description="Finite multiple harmonic q-series: evaluation and identity checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", parents=[common], help="evaluate a nested sum")
    e.add_argument("--kind", type=_kind, required=True, help="Zw, Aw, Ww, Zs or As")
    e.add_argument("--s", required=True, help="composition, e.g. '2,1' or '{1}^3,2'")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--q", type=_rational, help="evaluate at this rational point")

    d = sub.add_parser("dual", parents=[common], help="dual composition and words")
    d.add_argument("--s", required=True)

    v = sub.add_parser("verify", parents=[common], help="run one identity check")
    v.add_argument("--id", type=_identity, required=True)
    for name in ("s", "n", "m", "a", "b", "c", "z", "k", "x", "y", "q", "N"):
        v.add_argument(f"--{name}")
    v.add_argument("--against", help=argparse.SUPPRESS)

    w = sub.add_parser("sweep", parents=[common], help="run a check over a parameter grid")
    w.add_argument("--id", type=_identity, required=True)
    w.add_argument("--max-weight", type=int, default=4)
    w.add_argument("--max-n", type=int, default=5)
    w.add_argument("--max-m", type=int, default=4)
    w.add_argument("--max-length", type=int)
    w.add_argument("--q", type=_rational, default=Fraction(1, 2))
    w.add_argument("--N", type=int, default=30)
    w.add_argument("--samples", type=int)
    w.add_argument("--threads", type=int, default=1)

    t = sub.add_parser("table", parents=[common], help="duality table of Z_n[s] and A_n[dual s]")
    t.add_argument("--id", type=_identity, default=IdentityId.THEOREM1)
    t.add_argument("--max-weight", type=int, required=True)
    t.add_argument("--n", type=int, required=True)

    lim = sub.add_parser("limit", parents=[common], help="truncated n -> infinity value")
    lim.add_argument("--kind", required=True, choices=("Z", "A", "Zs", "As", "qzeta"))
    lim.add_argument("--s", required=True)
    lim.add_argument("--q", type=_rational, required=True)
    lim.add_argument("--N", type=int, required=True)
    return p


def _coeffs(values) -> str:
    return " ".join(str(c) for c in values) or "0"


def _ratfun_text(f: QRatFun) -> str:
    return f"num: {_coeffs(f.num.coeffs)}\nden: {_coeffs(f.den.coeffs)}"


def _ratfun_inline(f: QRatFun) -> str:
    return f"({_coeffs(f.num.coeffs)})/({_coeffs(f.den.coeffs)})"


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\r\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_eval(args):
    s = C.parse_composition(args.s)
    if args.n == 0 and not s and not args.kind.strict:
        # weak empty sum at n = 0: the definitions leave it open; print 0
        value = QRatFun(0)
    else:
        value = eval_sum(args.kind, s, args.n)
    if args.q is not None:
        x = eval_at(value, args.q)
        if args.format == "json":
            return _json({"kind": args.kind.name, "s": C.format_composition(s), "n": args.n,
                          "q": str(args.q), "value": str(x)}), EXIT_OK
        return f"{x}\n", EXIT_OK
    if args.format == "json":
        return _json({"kind": args.kind.name, "s": C.format_composition(s), "n": args.n,
                      "num": [str(c) for c in value.num.coeffs],
                      "den": [str(c) for c in value.den.coeffs]}), EXIT_OK
    if args.format == "csv":
        return _csv([["part", "coefficients"], ["num", _coeffs(value.num.coeffs)],
                     ["den", _coeffs(value.den.coeffs)]]), EXIT_OK
    return _ratfun_text(value) + "\n", EXIT_OK


def _cmd_dual(args):
    s = C.parse_composition(args.s)
    d = C.dual(s)
    word, dword = C.encode_word(s), C.encode_word(d)
    if C.decode_word(C.word_dual(word)) != d:  # pragma: no cover - the two routes are tested to agree
        raise RuntimeError("word duality disagrees with partial-sum duality")
    if args.format == "json":
        return _json({"s": C.format_composition(s), "dual": C.format_composition(d),
                      "word": word, "dual_word": dword}), EXIT_OK
    if args.format == "csv":
        return _csv([["s", "dual", "word", "dual_word"],
                     [C.format_composition(s), C.format_composition(d), word, dword]]), EXIT_OK
    return f"{C.format_composition(d)}\n{word}\n{dword}\n", EXIT_OK


_VERDICT_EXIT = {HOLDS: EXIT_OK, FAILS: EXIT_FAILS}


def _report_line(r) -> str:
    params = " ".join(f"{k}={v}" for k, v in r.params.items())
    line = f"{r.id.value} {r.verdict} ({r.method}) {params}".rstrip()
    if r.seed is not None:
        line += f" seed={r.seed}"
    if r.residual is not None:
        line += f" residual={r.residual} tail_bound={r.tail_bound}"
    return line


def _report_rows(reports):
    rows = [["id", "params", "method", "verdict", "seed", "residual", "tail_bound"]]
    for r in reports:
        rows.append([r.id.value, ";".join(f"{k}={v}" for k, v in r.params.items()), r.method, r.verdict,
                     "" if r.seed is None else r.seed,
                     "" if r.residual is None else r.residual,
                     "" if r.tail_bound is None else r.tail_bound])
    return rows


def _cmd_verify(args):
    params = {k: getattr(args, k) for k in ("s", "n", "m", "a", "b", "c", "z", "k", "x", "y", "q", "N", "against")
              if getattr(args, k) is not None}
    params["seed"] = args.seed
    r = check_identity(args.id, params)
    if args.format == "json":
        out = _json(r.to_dict())
    elif args.format == "csv":
        out = _csv(_report_rows([r]))
    else:
        out = _report_line(r) + "\n"
        if r.witness:
            out += "".join(f"  {k}: {v}\n" for k, v in r.witness.items() if k != "params")
    return out, _VERDICT_EXIT.get(r.verdict, EXIT_INCONCLUSIVE)


def _cmd_sweep(args):
    if args.threads < 1:
        raise UsageError("--threads must be at least 1")
    bounds = Bounds(max_weight=args.max_weight, max_n=args.max_n, max_m=args.max_m,
                    max_length=args.max_length, q=args.q, N=args.N, samples=args.samples, seed=args.seed)
    reports = sweep(args.id, bounds, threads=args.threads)
    verdict = aggregate_verdict(reports)
    if args.format == "json":
        out = _json({"id": args.id.value, "verdict": verdict, "count": len(reports),
                     "reports": [r.to_dict() for r in reports]})
    elif args.format == "csv":
        out = _csv(_report_rows(reports))
    else:
        out = "".join(_report_line(r) + "\n" for r in reports)
        out += f"{args.id.value}: {verdict} ({len(reports)} checks)\n"
    return out, _VERDICT_EXIT.get(verdict, EXIT_INCONCLUSIVE)


def _cmd_table(args):
    if args.id is not IdentityId.THEOREM1:
        raise UsageError("table is only defined for THEOREM1")
    rows = [["s", "dual", "Z", "A", "equal"]]
    all_equal = True
    for s in C.compositions_up_to(args.max_weight):
        d = C.dual(s)
        z = eval_sum(SumKind.Z_weak, s, args.n)
        a = eval_sum(SumKind.A_weak, d, args.n)
        all_equal &= z == a
        rows.append([C.format_composition(s), C.format_composition(d),
                     _ratfun_inline(z), _ratfun_inline(a), str(z == a).lower()])
    if args.format == "json":
        keys = rows[0]
        out = _json([dict(zip(keys, row)) for row in rows[1:]])
    elif args.format == "csv":
        out = _csv(rows)
    else:
        out = "".join("\t".join(row) + "\n" for row in rows)
    return out, EXIT_OK if all_equal else EXIT_FAILS


def _cmd_limit(args):
    s = C.parse_composition(args.s)
    if args.kind == "qzeta":
        res = qzeta_truncated(s, args.q, args.N)
    else:
        kind = {"Z": SumKind.Z_weak, "A": SumKind.A_weak, "Zs": SumKind.Z_strict, "As": SumKind.A_strict}[args.kind]
        res = truncated_limit(kind, s, args.q, args.N)
    fields = {"value": str(res.value), "terms_used": res.terms_used, "tail_bound": str(res.tail_bound)}
    if args.format == "json":
        return _json(fields), EXIT_OK
    if args.format == "csv":
        return _csv([list(fields), list(fields.values())]), EXIT_OK
    return "".join(f"{k}: {v}\n" for k, v in fields.items()), EXIT_OK


_COMMANDS = {"eval": _cmd_eval, "dual": _cmd_dual, "verify": _cmd_verify, "sweep": _cmd_sweep,
             "table": _cmd_table, "limit": _cmd_limit}


def run(argv=None, stdout=None, stderr=None, environ=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    environ = os.environ if environ is None else environ
    try:
        args = build_parser().parse_args(argv)
        if environ.get("QHARMONIC_SEED"):
            try:
                args.seed = int(environ["QHARMONIC_SEED"])
            except ValueError:
                raise UsageError(f"QHARMONIC_SEED must be an integer, got {environ['QHARMONIC_SEED']!r}") from None
        out, code = _COMMANDS[args.command](args)
    except (UsageError, CompositionError, ParamError, SumError, PoleError, ZeroDivisionError, ValueError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"qharmonic: error: {msg}", file=stderr)
        return EXIT_USAGE
    except RouteMismatch as exc:
        print(f"qharmonic: internal check failed: {exc}", file=stderr)
        return EXIT_FAILS
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())
