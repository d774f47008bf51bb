"""Command-line front end.

Exit codes: 0 success (or Equivalent), 1 for a failed check or a Distinct
verdict, 2 for inadmissible parameters, 3 for an Unknown equivalence
verdict, 64 for usage errors, 65 for malformed documents.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import leibniz_residual, parse, parse_fraction, serialize
from .analysis import (char_sequence_estimate, lower_central_series,
                       natural_gradation, right_annihilator)
from .catalog import (DEFAULT_FREE_SAMPLES, build_first_type,
                      build_second_type, catalog_index_document, row_by_id,
                      rows_by_label, validate_params)
from .catalog import SecondTypeParams
from .errors import (DimensionTooSmall, DocumentError,
                     ElementInDerivedSubalgebra, IndexOutOfRange,
                     ParityViolation, ToolkitError, UnknownFamily)
from .transform import (Distinct, Equivalent, apply_change, decide_equivalence,
                        parse_change)
from .verify import verify_all

EX_OK = 0
EX_FAIL = 1
EX_INADMISSIBLE = 2
EX_UNKNOWN = 3
EX_USAGE = 64
EX_DATA = 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that exits 64 on bad usage, per convention."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise _UsageError(f"cannot read {path}: {err.strerror}") from err


def _emit(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text, encoding="utf-8")
    except OSError as err:
        raise _UsageError(f"cannot write {output}: {err.strerror}") from err


def _seed_value(flag: int) -> int:
    env = os.environ.get("LNZ_SEED")
    if env is None:
        return flag
    try:
        return int(env)
    except ValueError:
        raise _UsageError(f"LNZ_SEED must be an integer, got {env!r}")


def _csv_fractions(text: str, what: str) -> tuple:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            raise _UsageError(f"empty entry in {what}")
        try:
            out.append(parse_fraction(piece))
        except DocumentError as err:
            raise _UsageError(f"{what}: {err}") from err
    return tuple(out)


def _combo(coords) -> str:
    """Linear combination text like '2*e_3 - 1/2*e_7'."""
    parts = []
    for idx, c in enumerate(coords, start=1):
        if c == 0:
            continue
        mag = abs(c)
        body = f"e_{idx}" if mag == 1 else f"{mag}*e_{idx}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


# ----------------------------------------------------------------------
# subcommands

def cmd_check(args) -> int:
    algebra = parse(_read(args.file))
    residual = leibniz_residual(algebra)
    if residual.is_empty():
        print(f"ok: identity holds on all {algebra.dim}^3 basis triples")
        return EX_OK
    for i, j, k, vec in residual.violations:
        print(f"({i},{j},{k}): {_combo(vec.coords)}")
    print(f"{len(residual)} violating triples", file=sys.stderr)
    return EX_FAIL


def cmd_analyze(args) -> int:
    algebra = parse(_read(args.file))
    seed = _seed_value(args.seed)
    if algebra.name:
        print(f"name: {algebra.name}")
    print(f"dim: {algebra.dim}")
    series = lower_central_series(algebra)
    print("central series dims: " + " ".join(str(d) for d in series.dims))
    if series.nilpotent:
        print(f"nilindex: {len(series.terms)}")
        grading = natural_gradation(algebra)
        print("gradation dims: " + " ".join(str(d) for d in grading.piece_dims))
        try:
            est = char_sequence_estimate(algebra, budget=args.budget, seed=seed)
            print(f"characteristic sequence (sampled): {est}")
        except ElementInDerivedSubalgebra:
            print("characteristic sequence (sampled): undefined, no sampled "
                  "element lies outside the derived subalgebra")
    else:
        print("nilindex: none (central series stabilizes nonzero)")
    ann = right_annihilator(algebra)
    print(f"right annihilator dim: {len(ann)}")
    for v in ann:
        print(f"  {_combo(v.coords)}")
    return EX_OK


def _resolve_row(args):
    label = args.family
    rows = []
    try:
        rows = [row_by_id(label)]
    except UnknownFamily:
        try:
            rows = list(rows_by_label(label))
        except UnknownFamily:
            if args.type == 2 and args.epsilon is not None and "," not in label:
                try:
                    rows = list(rows_by_label(f"{args.epsilon},{label}"))
                except UnknownFamily:
                    rows = []
    if not rows:
        raise UnknownFamily(f"no catalog family {label!r}")
    wanted = "second" if args.type == 2 else "first"
    rows = [r for r in rows if r.kind == wanted]
    if not rows:
        raise UnknownFamily(f"family {label!r} is not type {args.type}")
    if len(rows) > 1:
        ids = ", ".join(r.row_id for r in rows)
        raise _UsageError(f"label {label!r} is ambiguous; use a row id: {ids}")
    return rows[0]


def cmd_catalog(args) -> int:
    if args.list:
        _emit(catalog_index_document(), args.output)
        return EX_OK
    missing = [flag for flag, val in (("--type", args.type),
                                      ("--family", args.family),
                                      ("--dim", args.dim)) if val is None]
    if missing:
        raise _UsageError("catalog needs " + " and ".join(missing))
    row = _resolve_row(args)
    if args.epsilon is not None and row.epsilon != args.epsilon:
        print(f"error: row {row.row_id} has epsilon {row.epsilon}, "
              f"not {args.epsilon}", file=sys.stderr)
        return EX_INADMISSIBLE
    if args.beta is not None and row.beta != args.beta:
        print(f"error: row {row.row_id} has beta {row.beta}, not {args.beta}",
              file=sys.stderr)
        return EX_INADMISSIBLE
    values = (_csv_fractions(args.params, "--params") if args.params else ())
    report = validate_params(row, values, n=args.dim)
    if not report.ok:
        for problem in report.problems:
            print(f"error: {problem}", file=sys.stderr)
        return EX_INADMISSIBLE
    params = row.make_params(values)
    if row.kind == "second":
        tensor = build_second_type(args.dim, params)
    else:
        tensor = build_first_type(args.dim, params)
    vals = ", ".join(f"{s.name}={v}" for s, v in zip(row.params, values))
    label = (f"l({row.row_id})" + (f"[{vals}]" if vals else "")
             + f" n={args.dim}")
    _emit(serialize(tensor.renamed(label)), args.output)
    return EX_OK


def cmd_transform(args) -> int:
    algebra = parse(_read(args.file))
    change = parse_change(_read(args.change))
    _emit(serialize(apply_change(algebra, change)), args.output)
    return EX_OK


def cmd_equiv(args) -> int:
    if args.dim < 9:
        raise DimensionTooSmall(f"equivalence is decided for n >= 9, "
                                f"got {args.dim}")
    if args.epsilon == 1 and args.dim % 2 != 0:
        raise ParityViolation("epsilon = 1 needs an even dimension")
    p_vals = _csv_fractions(args.p, "--p")
    q_vals = _csv_fractions(args.q, "--q")
    params = []
    for vals, flag in ((p_vals, "--p"), (q_vals, "--q")):
        if len(vals) == 4:
            beta = Fraction(-1)
        elif len(vals) == 5:
            beta = vals[4]
        else:
            raise _UsageError(f"{flag} takes alpha1..alpha4 and an optional "
                              f"beta, got {len(vals)} values")
        params.append(SecondTypeParams(args.epsilon, vals[:4], beta))
    verdict = decide_equivalence(params[0], params[1], budget=args.budget)
    if isinstance(verdict, Equivalent):
        w = verdict.witness
        print("Equivalent")
        if args.epsilon == 1:
            print(f"witness: A1 = {w.A1}, A4 = {w.A4} "
                  f"(B4 pinned to A1-A4 = {w.A1 - w.A4})")
        else:
            print(f"witness: A1 = {w.A1}, A4 = {w.A4}, B4 = {w.B4}")
        return EX_OK
    if isinstance(verdict, Distinct):
        print("Distinct")
        print(f"invariant: {verdict.invariant}")
        return EX_FAIL
    print("Unknown")
    if verdict.detail:
        print(f"detail: {verdict.detail}")
    return EX_UNKNOWN


def cmd_verify_all(args) -> int:
    try:
        dims = tuple(int(piece) for piece in args.dims.split(","))
    except ValueError:
        raise _UsageError(f"--dims must be a comma list of integers, "
                          f"got {args.dims!r}")
    samples = (DEFAULT_FREE_SAMPLES if args.samples is None
               else _csv_fractions(args.samples, "--samples"))
    report = verify_all(dims=dims, samples=samples, budget=args.budget,
                        seed=_seed_value(args.seed))
    sys.stdout.write(report.to_text())
    if args.report:
        _emit(report.to_json(), args.report)
    return EX_OK if report.ok else EX_FAIL


# ----------------------------------------------------------------------
# wiring

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lnz",
                     description="Exact-arithmetic toolkit for naturally "
                                 "graded Leibniz algebras given by structure "
                                 "constants.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND",
                                parser_class=_Parser)

    p = sub.add_parser("check", help="test the defining identity on a document")
    p.add_argument("file", help="algebra document")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("analyze",
                       help="central series, gradation, characteristic "
                            "sequence, right annihilator")
    p.add_argument("file", help="algebra document")
    p.add_argument("--budget", type=int, default=200,
                   help="sample count for the characteristic sequence")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", help="build a catalog family instance")
    p.add_argument("--type", type=int, choices=(1, 2))
    p.add_argument("--family", help="row id or printed label, e.g. 0,2 or 34")
    p.add_argument("--dim", type=int)
    p.add_argument("--params", default="",
                   help="comma list of exact fractions for the free parameters")
    p.add_argument("--epsilon", type=int, choices=(0, 1),
                   help="cross-check the row's alternating-product marker")
    p.add_argument("--beta", type=int, choices=(0, -1),
                   help="cross-check the row's beta value")
    p.add_argument("-o", "--output")
    p.add_argument("--list", action="store_true",
                   help="print the machine-readable row index instead")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("transform", help="apply a basis change to a document")
    p.add_argument("file", help="algebra document")
    p.add_argument("--change", required=True, help="basis-change document")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("equiv",
                       help="decide whether two second-type parameter tuples "
                            "give the same algebra")
    p.add_argument("--epsilon", type=int, choices=(0, 1), required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--p", required=True, help="alpha1,alpha2,alpha3,alpha4")
    p.add_argument("--q", required=True, help="alpha1,alpha2,alpha3,alpha4")
    p.add_argument("--budget", type=int, default=6,
                   help="height bound for the witness search")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("verify-all", help="run the full verification suite")
    p.add_argument("--dims", default="9,10")
    p.add_argument("--samples", default=None,
                   help="comma list of values for free parameters")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="also write the structured report here")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "func", None) is None:
        parser.print_usage(sys.stderr)
        print("lnz: error: a subcommand is required", file=sys.stderr)
        return EX_USAGE
    try:
        return args.func(args)
    except _UsageError as err:
        print(f"lnz: error: {err}", file=sys.stderr)
        return EX_USAGE
    except (DocumentError, IndexOutOfRange) as err:
        print(f"lnz: malformed document: {err}", file=sys.stderr)
        return EX_DATA
    except ToolkitError as err:
        print(f"lnz: error: {err}", file=sys.stderr)
        return EX_INADMISSIBLE


if __name__ == "__main__":
    sys.exit(main())
