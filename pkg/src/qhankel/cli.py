"""qhankel command line: tables, sequences, Hankel determinants, verification reports.

Exit codes: 0 success (and every comparison matched), 1 a verify report
contains a mismatch, 2 usage or input error, 3 internal inconsistency (the
two determinant engines disagree or an exact division failed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .closedform import TARGETS, VerifyReport, verify
from .errors import (
    AlgorithmDisagreement,
    NotDivisible,
    OrderTooLarge,
    QHankelError,
    SingularSystem,
    ZeroSubstitutionIntoNegativePower,
)
from .hankel import SEQ_KINDS, SeqSpec, hankel_transform
from .orthopoly import FAMILIES, corrected_coeffs, h_poly, paper_coeffs, recover_recurrence
from .poly import SymPoly
from .sequences import FORMS, Params, whitney

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

SEQ_ALIASES = {
    "phi": "phi_at_a",
    "weighted": "moment_weighted",
    "bell": "bell_classical",
    "dowling": "dowling_first",
}

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"not an exact rational 'p' or 'p/q': {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise argparse.ArgumentTypeError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_subst(text: str) -> tuple[str, Fraction]:
    var, sep, value = text.partition("=")
    var = var.strip()
    if not sep or var not in ("q", "a", "x"):
        raise argparse.ArgumentTypeError(f"substitution must look like q=1, a=1/2 or x=0, got {text!r}")
    return var, parse_rational(value)


def parse_seq(text: str) -> str:
    kind = SEQ_ALIASES.get(text, text)
    if kind not in SEQ_KINDS:
        choices = sorted(set(SEQ_KINDS) | set(SEQ_ALIASES))
        raise argparse.ArgumentTypeError(f"unknown sequence {text!r}; choose from {', '.join(choices)}")
    return kind


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhankel",
        description="Exact (q,r)-Whitney/Dowling sequences and their Hankel determinants.")
    parser.add_argument("--version", action="version", version=f"qhankel {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="text"):
        p.add_argument("--m", type=_positive, default=1, help="m >= 1 (default 1)")
        p.add_argument("--r", type=_nonneg, default=0, help="r >= 0 (default 0)")
        p.add_argument("--subst", type=parse_subst, action="append", default=[],
                       metavar="VAR=VALUE", help="exact substitution, repeatable (q, a or x)")
        p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
        p.add_argument("--out", help="write to this file instead of standard output")

    p = sub.add_parser("table", help="Whitney triangle rows")
    common(p)
    p.add_argument("--form", choices=FORMS, default="first")
    p.add_argument("--n-max", type=_nonneg, required=True)

    p = sub.add_parser("seq", help="sequence values s_0..s_n")
    common(p)
    p.add_argument("--seq", type=parse_seq, default="phi_at_a")
    p.add_argument("--n-max", type=_nonneg, required=True)

    p = sub.add_parser("hankel", help="one Hankel determinant")
    common(p)
    p.add_argument("--seq", type=parse_seq, default="phi_at_a")
    p.add_argument("--order", type=_nonneg, required=True)
    p.add_argument("--offset", type=int, choices=(0, 1), default=0)
    p.add_argument("--algo", choices=("laplace", "bareiss", "both"), default="both")

    p = sub.add_parser("verify", help="closed form versus determinant oracle")
    common(p, default_format="json")
    p.add_argument("--target", choices=sorted(TARGETS), required=True)
    p.add_argument("--n-max", type=_nonneg, required=True)
    p.add_argument("--seq", type=parse_seq, default=None)
    p.add_argument("--variant", default=None)
    p.add_argument("--algo", choices=("laplace", "bareiss", "both"), default="both")

    p = sub.add_parser("orth", help="recovered versus printed recurrence coefficients")
    common(p)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--family", choices=FAMILIES, default="printed")
    return parser


# -- documents ---------------------------------------------------------------

def _header(command: str, params: dict) -> dict:
    return {"tool": "qhankel", "schema": 1, "command": command, "params": params}


def _subst_dict(subst) -> dict:
    return {var: str(val) for var, val in sorted(dict(subst).items())}


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def report_to_dict(report: VerifyReport) -> dict:
    params = {
        "m": report.params.m,
        "r": report.params.r,
        "target": report.target,
        "seq": report.seq,
        "variant": report.variant,
    }
    if report.subst:
        params["subst"] = _subst_dict(report.subst)
    return {
        "tool": "qhankel",
        "schema": 1,
        "params": params,
        "rows": [
            {"n": row.n, "order": row.order, "lhs": str(row.lhs), "rhs": str(row.rhs),
             "diff": str(row.diff), "match": row.match}
            for row in report.rows
        ],
        "first_mismatch": report.first_mismatch,
    }


def emit_report(report: VerifyReport, fmt: str = "json") -> str:
    if fmt == "json":
        return _json(report_to_dict(report))
    rows = [(r.n, r.order, str(r.lhs), str(r.rhs), str(r.diff), "true" if r.match else "false")
            for r in report.rows]
    if fmt == "csv":
        return _csv(("n", "order", "lhs", "rhs", "diff", "match"), rows)
    lines = [f"target={report.target} m={report.params.m} r={report.params.r} "
             f"seq={report.seq} variant={report.variant}"]
    for n, order, lhs, rhs, diff, match in rows:
        lines.append(f"n={n} order={order} match={match}")
        lines.append(f"  lhs  = {lhs}")
        lines.append(f"  rhs  = {rhs}")
        lines.append(f"  diff = {diff}")
    fm = report.first_mismatch
    lines.append(f"first_mismatch={'none' if fm is None else fm}")
    return "\n".join(lines) + "\n"


def _apply(f: SymPoly, subst: dict) -> SymPoly:
    return f.subs(**subst) if subst else f


def _text_row(values: Sequence[str]) -> str:
    sep = " ; " if any(" " in v for v in values) else " "
    return sep.join(values)


def cmd_table(args, subst) -> tuple[str, int]:
    p = Params(args.m, args.r)
    rows = [[str(_apply(whitney(p, n, k, args.form), subst)) for k in range(n + 1)]
            for n in range(args.n_max + 1)]
    if args.format == "json":
        doc = _header("table", {"m": p.m, "r": p.r, "form": args.form, "subst": _subst_dict(subst)})
        doc["rows"] = rows
        return _json(doc), EXIT_OK
    if args.format == "csv":
        return _csv(("n", "k", "value"),
                    [(n, k, v) for n, row in enumerate(rows) for k, v in enumerate(row)]), EXIT_OK
    return "\n".join(_text_row(row) for row in rows) + "\n", EXIT_OK


def _seq_spec(args, subst) -> SeqSpec:
    return SeqSpec(Params(args.m, args.r), args.seq,
                   tuple((k, v) for k, v in subst.items() if k in ("q", "a")))


def cmd_seq(args, subst) -> tuple[str, int]:
    spec = _seq_spec(args, subst)
    values = [str(v) for v in spec.values(args.n_max + 1)]
    if args.format == "json":
        doc = _header("seq", {"m": spec.params.m, "r": spec.params.r, "seq": spec.kind,
                              "subst": _subst_dict(subst)})
        doc["values"] = [{"n": n, "value": v} for n, v in enumerate(values)]
        return _json(doc), EXIT_OK
    if args.format == "csv":
        return _csv(("n", "value"), list(enumerate(values))), EXIT_OK
    return "".join(f"{n}: {v}\n" for n, v in enumerate(values)), EXIT_OK


def cmd_hankel(args, subst) -> tuple[str, int]:
    spec = _seq_spec(args, subst)
    det = str(hankel_transform(spec, args.order, args.offset, args.algo))
    if args.format == "json":
        doc = _header("hankel", {"m": spec.params.m, "r": spec.params.r, "seq": spec.kind,
                                 "order": args.order, "offset": args.offset, "algo": args.algo,
                                 "subst": _subst_dict(subst)})
        doc["det"] = det
        return _json(doc), EXIT_OK
    if args.format == "csv":
        return _csv(("order", "offset", "det"), [(args.order, args.offset, det)]), EXIT_OK
    return det + "\n", EXIT_OK


def cmd_verify(args, subst) -> tuple[str, int]:
    report = verify(args.target, Params(args.m, args.r), args.n_max, seq=args.seq,
                    variant=args.variant, subst=subst or None, algo=args.algo)
    return emit_report(report, args.format), EXIT_OK if report.all_match else EXIT_MISMATCH


def cmd_orth(args, subst) -> tuple[str, int]:
    p = Params(args.m, args.r)
    rows = []
    for n in range(1, args.n_max + 1):
        printed = paper_coeffs(p, n)
        corrected = corrected_coeffs(p, n)
        row = {"n": n, "h": str(_apply(h_poly(p, n, args.family), subst))}
        try:
            rec = recover_recurrence(p, n, args.family)
        except SingularSystem as exc:
            row["recovered"] = None
            row["error"] = str(exc)
        else:
            rec_vals = (rec.g_rec, rec.f_rec, rec.c_rec)
            row["recovered"] = {k: str(v.subs(**subst) if subst else v)
                                for k, v in zip("gfc", rec_vals)}
            row["printed_match"] = {k: v == w for k, v, w in zip("gfc", rec_vals, printed)}
            row["corrected_match"] = {k: v == w for k, v, w in zip("gfc", rec_vals, corrected)}
        row["printed"] = {k: str(_apply(v, subst)) for k, v in zip("gfc", printed)}
        rows.append(row)
    if args.format == "json":
        doc = _header("orth", {"m": p.m, "r": p.r, "family": args.family, "subst": _subst_dict(subst)})
        doc["rows"] = rows
        return _json(doc), EXIT_OK
    flat = []
    for row in rows:
        rec = row.get("recovered") or {}
        pm = row.get("printed_match", {})
        for k in "gfc":
            flat.append((row["n"], k, rec.get(k, ""), row["printed"][k],
                         "" if k not in pm else ("true" if pm[k] else "false")))
    if args.format == "csv":
        return _csv(("n", "coeff", "recovered", "printed", "match"), flat), EXIT_OK
    lines = []
    for row in rows:
        lines.append(f"n={row['n']} h = {row['h']}")
        if row.get("recovered") is None:
            lines.append(f"  no three-term recurrence: {row['error']}")
        for n, k, rec, pr, match in flat:
            if n == row["n"]:
                lines.append(f"  {k}: recovered = {rec or '-'} | printed = {pr} | match = {match or '-'}")
    return "\n".join(lines) + "\n", EXIT_OK


COMMANDS = {
    "table": cmd_table,
    "seq": cmd_seq,
    "hankel": cmd_hankel,
    "verify": cmd_verify,
    "orth": cmd_orth,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    subst: dict[str, Fraction] = {}
    for var, val in args.subst:
        if var in subst and subst[var] != val:
            print(f"qhankel: error: --subst {var} given twice with different values", file=stderr)
            return EXIT_USAGE
        subst[var] = val

    try:
        text, code = COMMANDS[args.command](args, subst)
    except (AlgorithmDisagreement, NotDivisible) as exc:
        print(f"qhankel: internal error: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (ValueError, OrderTooLarge, ZeroSubstitutionIntoNegativePower) as exc:
        print(f"qhankel: error: {exc}", file=stderr)
        return EXIT_USAGE
    except QHankelError as exc:
        print(f"qhankel: internal error: {exc}", file=stderr)
        return EXIT_INTERNAL

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
