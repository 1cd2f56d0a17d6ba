"""Command-line interface.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .arith import format_rational, parse_rational
from .dedekind import dedekind_sum_fast, dedekind_sum_naive, fourier_dedekind_sum
from .ehrhart import (
    count_simplex_eq,
    ehrhart_quasipolynomial,
    popoviciu_2d,
    popoviciu_3d,
)
from .errors import InvalidArgs, NegativeDilationWarning
from .singularity import (
    GermLedger,
    QuotientType,
    delta_at_projective_vertex,
    delta_table_for_local_type,
    h0_from_genus,
    ledger_check,
    numerical_adjunction,
)
from .weights import WeightVector

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


@dataclass
class Outcome:
    text: str
    payload: Any
    rows: list[list[Any]] = field(default_factory=list)
    header: Optional[list[str]] = None
    exit_code: int = EXIT_OK
    notes: list[str] = field(default_factory=list)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weights(text: str) -> WeightVector:
    try:
        return WeightVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _quotient_type(text: str) -> QuotientType:
    values = _int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"expected d,a,b, got {text!r}")
    try:
        return QuotientType(*values)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rat(value) -> str:
    return format_rational(value)


# -- subcommand handlers -------------------------------------------------------


def cmd_quasipoly(args) -> Outcome:
    qp = ehrhart_quasipolynomial(args.weights)
    c0, c1, c2 = qp.coefficients
    rows = [[d, _rat(c2(d)), _rat(c1(d)), _rat(c0(d))] for d in range(qp.period)]
    return Outcome(qp.describe(), qp.to_json(), rows, ["residue", "c2", "c1", "c0"])


def cmd_eval(args) -> Outcome:
    value = ehrhart_quasipolynomial(args.weights).evaluate(args.degree)
    payload = {"weights": list(args.weights.as_tuple()), "degree": args.degree, "value": _rat(value)}
    out = Outcome(_rat(value), payload, [[args.degree, _rat(value)]], ["d", "value"])
    if args.check:
        oracle = count_simplex_eq(*args.weights, args.degree) if args.degree >= 0 else 0
        payload["oracle"] = str(oracle)
        payload["match"] = value == oracle
        out.rows = [[args.degree, _rat(value), oracle, value == oracle]]
        out.header = ["d", "value", "oracle", "match"]
        if value != oracle:
            out.exit_code = EXIT_MISMATCH
            out.notes.append(f"mismatch: formula {_rat(value)} != enumeration {oracle}")
    return out


def cmd_count(args) -> Outcome:
    if args.degree < 0:
        count = 0
        note = [f"note: negative dilation {args.degree}; the count is 0 by convention"]
    else:
        count = count_simplex_eq(*args.weights, args.degree)
        note = []
    payload = {"weights": list(args.weights.as_tuple()), "degree": args.degree, "count": str(count)}
    return Outcome(str(count), payload, [[args.degree, count]], ["d", "count"], notes=note)


def cmd_verify(args) -> Outcome:
    w = args.weights
    dmax = 3 * w.product if args.dmax is None else args.dmax
    if dmax < 0:
        raise InvalidArgs(f"--dmax must be nonnegative, got {dmax}")
    qp = ehrhart_quasipolynomial(w)
    rows, mismatches = [], []
    for d in range(dmax + 1):
        value = qp.evaluate(d)
        oracle = count_simplex_eq(*w, d)
        ok = value == oracle
        rows.append([d, _rat(value), oracle, ok])
        if not ok:
            mismatches.append({"d": d, "formula": _rat(value), "oracle": str(oracle)})
    if mismatches:
        lines = [f"MISMATCH at d={m['d']}: formula {m['formula']} != oracle {m['oracle']}" for m in mismatches]
        text = "\n".join(lines)
    else:
        text = f"ok: formula matches enumeration for all {dmax + 1} degrees d in [0, {dmax}]"
    payload = {
        "weights": list(w.as_tuple()),
        "dmax": dmax,
        "checked": dmax + 1,
        "mismatches": mismatches,
        "passed": not mismatches,
    }
    return Outcome(text, payload, rows, ["d", "formula", "oracle", "match"],
                   EXIT_MISMATCH if mismatches else EXIT_OK)


def cmd_dedekind(args) -> Outcome:
    value = dedekind_sum_fast(args.a, args.b)
    payload = {"a": args.a, "b": args.b, "value": _rat(value)}
    out = Outcome(_rat(value), payload, [[args.a, args.b, _rat(value)]], ["a", "b", "value"])
    if args.check:
        naive = dedekind_sum_naive(args.a, args.b)
        payload["naive"] = _rat(naive)
        payload["match"] = naive == value
        if naive != value:
            out.exit_code = EXIT_MISMATCH
            out.notes.append(f"mismatch: fast {_rat(value)} != naive {_rat(naive)}")
    return out


def cmd_fourier(args) -> Outcome:
    value = fourier_dedekind_sum(args.n, args.a_list, args.b)
    payload = {"n": args.n, "a_list": args.a_list, "b": args.b, "value": _rat(value)}
    return Outcome(_rat(value), payload, [[args.n, _rat(value)]], ["n", "value"])


def cmd_popoviciu(args) -> Outcome:
    if args.c is None:
        value = popoviciu_2d(args.a, args.b, args.t)
        payload = {"a": args.a, "b": args.b, "t": args.t, "value": _rat(value)}
    else:
        value = popoviciu_3d(args.a, args.b, args.c, args.t)
        payload = {"a": args.a, "b": args.b, "c": args.c, "t": args.t, "value": _rat(value)}
    return Outcome(_rat(value), payload, [[args.t, _rat(value)]], ["t", "value"])


def cmd_delta_table(args) -> Outcome:
    table = delta_table_for_local_type(args.type)
    text = "[" + ", ".join(_rat(v) for v in table.values) + "]"
    rows = [[k, _rat(v)] for k, v in enumerate(table.values)]
    return Outcome(text, table.to_json(), rows, ["k", "Delta"])


def cmd_delta(args) -> Outcome:
    if args.vertex not in (0, 1, 2):
        raise InvalidArgs(f"--vertex must be 0, 1 or 2, got {args.vertex}")
    value = delta_at_projective_vertex(args.weights, args.vertex, args.degree)
    payload = {
        "weights": list(args.weights.as_tuple()),
        "vertex": args.vertex,
        "degree": args.degree,
        "Delta": _rat(value),
    }
    return Outcome(_rat(value), payload, [[args.degree, _rat(value)]], ["D", "Delta"])


def cmd_ledger_check(args) -> Outcome:
    ledger = GermLedger.load(args.file)
    report = ledger_check(ledger.entries, ledger.local_type)
    lines = [f"local type {report.local_type}"]
    rows = []
    for row in report.rows:
        status = "PASS" if row.passed else "FAIL"
        kappa = "-" if row.kappa is None else _rat(row.kappa) + (" (filled)" if row.kappa_filled else "")
        delta = "-" if row.entry.delta_P is None else _rat(row.entry.delta_P)
        line = f"{status} k={row.entry.k} Delta={_rat(row.expected_Delta)} delta={delta} kappa={kappa}"
        if row.failures:
            line += "  [" + "; ".join(row.failures) + "]"
        lines.append(line)
        rows.append([row.entry.k, _rat(row.expected_Delta), delta, kappa, status.lower()])
    return Outcome("\n".join(lines), report.to_json(), rows,
                   ["k", "Delta", "delta", "kappa", "status"],
                   EXIT_OK if report.passed else EXIT_MISMATCH)


def cmd_adjunction(args) -> Outcome:
    w = args.weights
    genus = numerical_adjunction(w, args.degree, args.kappa_sum)
    h0 = genus + args.kappa_sum
    payload = {
        "weights": list(w.as_tuple()),
        "degree": args.degree,
        "kappa_sum": _rat(args.kappa_sum),
        "genus": _rat(genus),
        "h0": _rat(h0),
    }
    text = f"genus: {_rat(genus)}\nh0(O({args.degree - w.total})): {_rat(h0)}"
    out = Outcome(text, payload, [[args.degree, _rat(genus), _rat(h0)]], ["d", "genus", "h0"])
    if args.genus is not None:
        implied = h0_from_genus(w, args.degree, args.genus, args.kappa_sum)
        payload["h0_from_genus"] = _rat(implied)
        payload["match"] = implied == h0
        out.text += f"\nh0 from genus {_rat(args.genus)}: {_rat(implied)}"
        if implied != h0:
            out.exit_code = EXIT_MISMATCH
            out.notes.append(f"mismatch: genus + kappa = {_rat(implied)} but h0 = {_rat(h0)}")
    return out


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    parser = _Parser(
        prog="weighted-ehrhart",
        description="Exact Ehrhart quasi-polynomials of weighted triangles and Dedekind-sum tools.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, handler: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(handler=handler)
        return p

    p = add("quasipoly", cmd_quasipoly, "closed-form Ehrhart quasi-polynomial")
    p.add_argument("--weights", type=_weights, required=True)

    p = add("eval", cmd_eval, "evaluate the quasi-polynomial at a degree")
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--check", action="store_true", help="compare with enumeration")

    p = add("count", cmd_count, "enumerate lattice points only")
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = add("verify", cmd_verify, "compare formula and enumeration for d in [0, dmax]")
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--dmax", type=int, default=None, help="default: 3 * w0*w1*w2")

    p = add("dedekind", cmd_dedekind, "classical Dedekind sum s(a, b)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--check", action="store_true", help="cross-check with direct summation")

    p = add("fourier", cmd_fourier, "Fourier-Dedekind sum s_n(a_1..a_m; b)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a-list", type=_int_list, required=True)
    p.add_argument("--b", type=int, required=True)

    p = add("popoviciu", cmd_popoviciu, "closed-form restricted partition counts")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--t", type=int, required=True)

    p = add("delta-table", cmd_delta_table, "Delta(k) table of a normalized quotient type")
    p.add_argument("--type", type=_quotient_type, required=True, help="d,a,b")

    p = add("delta", cmd_delta, "Delta at a vertex of P^2_w for a curve degree")
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = add("ledger-check", cmd_ledger_check, "check Delta = delta - kappa on a germ ledger")
    p.add_argument("--file", required=True)

    p = add("adjunction", cmd_adjunction, "numerical adjunction bookkeeping")
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--kappa-sum", type=_rational, default=Fraction(0))
    p.add_argument("--genus", type=_rational, default=None)

    return parser


def render(outcome: Outcome, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(outcome.payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if outcome.header:
            writer.writerow(outcome.header)
        writer.writerows(outcome.rows)
        return buf.getvalue()
    return outcome.text + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NegativeDilationWarning)
            outcome = args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(render(outcome, args.format))
    for note in outcome.notes:
        print(note, file=sys.stderr)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
