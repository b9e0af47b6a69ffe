"""Command-line front end.

Every rational is written as an exact "p/q" string (integers as "p"), and
partitions use the compact text form, e.g. "2,1^6".  Output for fixed
arguments (and seed) is byte-identical between runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from .characters import (
    IntegerPartition,
    char7,
    char7_shapes,
    class_size,
    format_rational,
    mn_character,
    parse_partition,
    partitions,
)
from .expectation import WalkSpec, expected_value
from .mset import BUILTINS, canonical_table, composite_mean
from .oracle import mc_expected
from .perm import format_pattern, parse_pattern
from .verify import verify_suite

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2

FORMAT_HELP = """\
output columns (csv/tsv; json carries the same values as nested objects):
  coeffs      partition, coefficient
  expect      t, value                         (--t or --t-max)
              + mc_mean, mc_stderr             (with --samples)
  table       pattern, e1..e7, then a[lambda] for each partition in the reduced basis
  characters  class, class_size, e1..e7        (+ one column per irreducible with --full)
  verify      check, status, cases, detail
--approx adds a decimal column "<name>_approx" after every exact column.
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- statistic parsing ---------------------------------------------------------


def parse_statistic(text: str) -> list[tuple[Fraction, str]]:
    """``"2*(1-23)+des+-1/2*[21-3)"`` -> [(2, "(1-23)"), (1, "des"), (-1/2, "[21-3)")]."""
    terms = []
    for chunk in text.replace(" ", "").split("+"):
        if not chunk:
            raise UsageError(f"empty term in statistic {text!r}")
        coeff, star, term = chunk.rpartition("*")
        try:
            c = Fraction(coeff) if star else Fraction(1)
        except ValueError:
            raise UsageError(f"bad coefficient {coeff!r} in statistic {text!r}") from None
        if term not in BUILTINS:
            try:
                term = format_pattern(parse_pattern(term))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        terms.append((c, term))
    return terms


def _stat_label(terms: list[tuple[Fraction, str]]) -> str:
    return "+".join(t if c == 1 else f"{format_rational(c)}*{t}" for c, t in terms)


def _resolve_stat(args) -> list[tuple[Fraction, str]]:
    if (args.pattern is None) == (args.stat is None):
        raise UsageError("give exactly one of --pattern or --stat")
    if args.pattern is not None:
        try:
            return [(Fraction(1), format_pattern(parse_pattern(args.pattern)))]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return parse_statistic(args.stat)


def _resolve_gamma(args) -> tuple[int, IntegerPartition]:
    try:
        mu = parse_partition(args.gamma)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.n is not None and args.n != mu.n:
        raise UsageError(f"--gamma {mu} is a partition of {mu.n}, but --n is {args.n}")
    return mu.n, mu


def _require_n(args, minimum: int = 3) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    if args.n < minimum:
        raise UsageError(f"--n must be >= {minimum}")
    return args.n


# --- output ------------------------------------------------------------------------


def _exact(x: Fraction | int) -> str:
    return format_rational(Fraction(x))


def _approx(x: Fraction | int) -> str:
    return f"{float(x):.15g}"


def _parts(lam: IntegerPartition) -> list[int]:
    return list(lam.parts)


class Output:
    """Collects one table of rows; renders as json, csv or tsv."""

    def __init__(self, kind: str, meta: dict[str, Any], approx: bool):
        self.kind = kind
        self.meta = meta
        self.approx = approx
        self.columns: list[str] = []
        self.rows: list[dict[str, Any]] = []

    def add(self, row: dict[str, Any], exact: Sequence[str] = ()):
        """``exact`` names the columns holding rationals; they get *_approx twins."""
        out: dict[str, Any] = {}
        for key, value in row.items():
            out[key] = _exact(value) if key in exact else value
            if self.approx and key in exact:
                out[f"{key}_approx"] = _approx(value)
        for key in out:
            if key not in self.columns:
                self.columns.append(key)
        self.rows.append(out)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"kind": self.kind, **self.meta, "rows": self.rows}
            return json.dumps(doc, indent=2, default=_json_default) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_cell(row.get(c, "")) for c in self.columns])
        return buf.getvalue()


def _cell(value: Any) -> str:
    if isinstance(value, IntegerPartition):
        return str(value)
    if isinstance(value, list):
        return ",".join(str(v) for v in value)
    return str(value)


def _json_default(value: Any):
    if isinstance(value, IntegerPartition):
        return _parts(value)
    raise TypeError(type(value))


# --- commands -----------------------------------------------------------------------


def cmd_coeffs(args) -> Output:
    n = _require_n(args)
    terms = _resolve_stat(args)
    combo = composite_mean(terms, n)
    out = Output("coeffs", {"n": n, "stat": _stat_label(terms)}, args.approx)
    for lam, a in combo.items():
        out.add({"partition": lam, "coefficient": a}, exact=("coefficient",))
    return out


def cmd_expect(args) -> Output:
    n, mu = _resolve_gamma(args)
    if n < 3:
        raise UsageError("--gamma must be a partition of n >= 3")
    terms = _resolve_stat(args)
    if (args.t is None) == (args.t_max is None):
        raise UsageError("give exactly one of --t or --t-max")
    ts = [args.t] if args.t is not None else list(range(args.t_max + 1))
    if min(ts, default=-1) < 0:
        raise UsageError("t must be non-negative")
    combo = composite_mean(terms, n)
    kind = "expectation" if args.t is not None else "series"
    meta: dict[str, Any] = {"n": n, "stat": _stat_label(terms), "gamma": mu}
    if args.samples is not None:
        if args.samples < 2:
            raise UsageError("--samples must be >= 2")
        meta.update(samples=args.samples, seed=args.seed)
    out = Output(kind, meta, args.approx)
    for t in ts:
        row: dict[str, Any] = {"t": t, "value": expected_value(combo, WalkSpec(n, mu, t))}
        if args.samples is not None:
            est = mc_expected(terms, mu, t, args.samples, args.seed, workers=args.workers)
            row["mc_mean"] = repr(est.mean)
            row["mc_stderr"] = repr(est.stderr)
        out.add(row, exact=("value",))
    return out


def cmd_table(args) -> Output:
    n = _require_n(args)
    table = canonical_table(n)
    basis = [lam for lam in partitions(n) if any(lam in combo for _, _, combo in table)]
    out = Output("table", {"n": n, "basis": basis, "shapes": [list(s) for s in char7_shapes(n)]}, args.approx)
    for phi, vec, combo in table:
        row: dict[str, Any] = {"pattern": format_pattern(phi)}
        row.update({f"e{i + 1}": x for i, x in enumerate(vec)})
        row.update({f"a[{lam}]": combo[lam] for lam in basis})
        out.add(row, exact=[k for k in row if k != "pattern"])
    return out


def cmd_characters(args) -> Output:
    n = _require_n(args)
    shapes = char7_shapes(n)
    irreps = partitions(n) if args.full else []
    out = Output("characters", {"n": n, "shapes": [list(s) for s in shapes]}, False)
    for mu in partitions(n):
        row: dict[str, Any] = {"class": mu, "class_size": class_size(mu)}
        row.update({f"e{i + 1}": x for i, x in enumerate(char7(mu))})
        row.update({f"chi[{lam}]": mn_character(lam, mu) for lam in irreps})
        out.add(row)
    return out


def cmd_verify(args) -> tuple[Output, bool]:
    if args.n_max < 3:
        raise UsageError("--n-max must be >= 3")
    report = verify_suite(args.n_max, args.mode, args.seed, samples=args.samples or 20_000, workers=args.workers)
    out = Output("verify", {"n_max": report.n_max, "mode": report.mode, "seed": report.seed,
                            "passed": report.passed}, False)
    for r in report.results:
        row = r.as_record()
        row.setdefault("detail", "")
        ce = row.pop("counterexample", None)
        if ce is not None:
            row["counterexample"] = json.dumps(ce, sort_keys=True)
        out.add(row)
    return out, report.passed


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "tsv"), default="json")
    common.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")
    common.add_argument("--approx", action="store_true", help="add a decimal column next to each exact one")
    common.add_argument("--workers", type=int, default=1, help="processes for sampling/enumeration")

    stat = argparse.ArgumentParser(add_help=False)
    stat.add_argument("--pattern", help='vincular 3-pattern, e.g. "(1-2-3)" or "[21-3)"')
    stat.add_argument("--stat", help='builtin (peak, des, asc) or sum like "2*(1-23)+des"')

    parser = _Parser(
        prog="vincular-means",
        description="Exact class means of vincular 3-pattern counts and expected values under random walks.",
        epilog=FORMAT_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", parents=[common, stat], help="irreducible-character coefficients of a class mean")
    p.add_argument("--n", type=int)

    p = sub.add_parser("expect", parents=[common, stat], help="expected value after t steps from a conjugacy class")
    p.add_argument("--n", type=int, help="optional; must match the size of --gamma")
    p.add_argument("--gamma", required=True, help='cycle type of the step distribution, e.g. "2,1^8"')
    p.add_argument("--t", type=int)
    p.add_argument("--t-max", type=int, dest="t_max")
    p.add_argument("--samples", type=int, help="also report a Monte Carlo estimate from this many samples")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("table", parents=[common], help="coefficient table for every vincular 3-pattern")
    p.add_argument("--n", type=int)

    p = sub.add_parser("characters", parents=[common], help="seven low-degree characters on every class")
    p.add_argument("--n", type=int)
    p.add_argument("--full", action="store_true", help="also dump every irreducible character value")

    p = sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    p.add_argument("--n-max", type=int, dest="n_max", default=6)
    p.add_argument("--mode", choices=("brute", "mc"), default="brute")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, help="Monte Carlo samples per check (mc mode)")
    return parser


COMMANDS = {"coeffs": cmd_coeffs, "expect": cmd_expect, "table": cmd_table, "characters": cmd_characters}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ok = True
    try:
        if args.command == "verify":
            out, ok = cmd_verify(args)
        else:
            out = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = out.render(args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
