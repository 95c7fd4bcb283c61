"""``gzeta`` command-line front end.

stdout carries only the table (CSV or JSON); diagnostics go to stderr.
Exit status: 0 success, 2 usage, 3 domain, 4 resource.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .determinant import (
    charpoly_cycle,
    charpoly_exact,
    forest_count_bruteforce,
    forest_count_cycle,
    regdet,
    regdet_series,
)
from .exceptions import GraphZetaError, PoleError, UsageError
from .graph import Lattice, parse_graph_spec
from .ihara import ihara_zeta_finite, regularized_ihara
from .spectral import heat_function
from .validation import as_integer_if_close
from .zeta import (
    functional_z2_sides,
    residue_lattice,
    spectral_zeta,
    zeta_finite_transitive,
    zeta_lattice_continuation,
    zeta_mellin,
    zeta_negint,
    zeta_z_closed,
)

RANGE_TOL = 1e-12


@dataclass
class OutputRecord:
    schema: list[str]
    rows: list[list] = field(default_factory=list)

    def emit(self, fmt: str, stream) -> None:
        if fmt == "json":
            rows = [[_json_cell(v) for v in row] for row in self.rows]
            json.dump({"schema": self.schema, "rows": rows}, stream)
            stream.write("\n")
        else:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(self.schema)
            for row in self.rows:
                writer.writerow([_text_cell(v) for v in row])


def _text_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        # shortest round-trip form, never more than 17 significant digits
        return repr(v)
    return str(v)


def _json_cell(v):
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return _text_cell(v)
    if isinstance(v, complex):
        return str(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def parse_number(text: str):
    for conv in (int, float, complex):
        try:
            return conv(text)
        except ValueError:
            continue
    raise UsageError(f"cannot parse number {text!r}")


def parse_values(text: str) -> list:
    """A single number or an inclusive ``start:stop:step`` range."""
    if ":" not in text:
        return [parse_number(text)]
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"ranges are start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None
    if step == 0.0 or (stop - start) * step < 0:
        if start == stop:
            return [start]
        raise UsageError(f"step {step} does not lead from {start} to {stop}")
    count = int(math.floor((stop - start) / step + RANGE_TOL)) + 1
    return [start + i * step for i in range(count)]


def _map(fn, values, jobs: int) -> list:
    if jobs <= 1 or len(values) <= 1:
        return [fn(v) for v in values]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, values))


def _real(v) -> float:
    if isinstance(v, complex):
        if v.imag != 0.0:
            raise UsageError(f"expected a real value, got {v}")
        return v.real
    return float(v)


# subcommand handlers -------------------------------------------------------


def cmd_zeta(args) -> OutputRecord:
    model = parse_graph_spec(args.graph)
    values = parse_values(args.s)
    mode = args.mode
    if mode == "exact":
        ints = [as_integer_if_close(complex(v), RANGE_TOL) for v in values]
        if any(n is None or n > 0 for n in ints):
            raise UsageError("exact mode needs s to be a non-positive integer")
        rec = OutputRecord(["s", "re", "im", "mode", "status"])
        for n in ints:
            rec.rows.append([n, zeta_negint(model, -n), 0, mode, "ok"])
        return rec
    if mode == "closed" and not (model.is_finite or model == Lattice(1)):
        raise UsageError("closed mode needs zd:1 or a finite graph")
    if mode in ("mellin", "continuation") and model.is_finite:
        raise UsageError(f"{mode} mode needs a lattice graph")

    def evaluate(s):
        if mode == "closed":
            return zeta_finite_transitive(model, s) if model.is_finite else zeta_z_closed(s)
        if mode == "mellin":
            return zeta_mellin(model, s)
        if mode == "continuation":
            M = args.strip if args.strip is not None else max(2, math.floor(complex(s).real) + 1)
            return zeta_lattice_continuation(model.d, s, M, args.terms)
        return spectral_zeta(model, s, M=args.strip)

    def row(s):
        n = as_integer_if_close(complex(s))
        if mode == "auto" and n is not None and n <= 0:
            return [s, zeta_negint(model, -n), 0, mode, "ok"]
        try:
            z = complex(evaluate(s))
        except PoleError as exc:
            return [s, None, None, mode, f"pole@{_text_cell(_real(exc.location))}"]
        return [s, z.real, z.imag, mode, "ok"]

    return OutputRecord(["s", "re", "im", "mode", "status"], _map(row, values, args.jobs))


def cmd_heat(args) -> OutputRecord:
    model = parse_graph_spec(args.graph)
    values = [_real(v) for v in parse_values(args.t)]
    if any(t < 0 for t in values):
        raise UsageError("heat needs t >= 0")
    rows = _map(lambda t: [t, heat_function(model, t)], values, args.jobs)
    return OutputRecord(["t", "H"], rows)


def cmd_charpoly(args) -> OutputRecord:
    if args.cycle is not None:
        poly = charpoly_cycle(args.cycle)
        oracle = charpoly_exact(parse_graph_spec(f"cycle:{args.cycle}")) if args.brute else None
    else:
        poly = charpoly_exact(parse_graph_spec(args.graph))
        oracle = None
    with_oracle = oracle is not None
    rec = OutputRecord(["power", "coefficient"] + (["exact", "match"] if with_oracle else []))
    for p, c in enumerate(poly.coefficients):
        rec.rows.append([p, c] + ([oracle[p], oracle[p] == c] if with_oracle else []))
    return rec


def cmd_forests(args) -> OutputRecord:
    ks = [args.k] if args.k is not None else list(range(1, args.cycle + 1))
    rec = OutputRecord(["n", "k", "count"] + (["brute", "match"] if args.brute else []))
    model = parse_graph_spec(f"cycle:{args.cycle}") if args.brute else None
    for k in ks:
        c = forest_count_cycle(args.cycle, k)
        row = [args.cycle, k, c]
        if args.brute:
            b = forest_count_bruteforce(model, k)
            row += [b, b == c]
        rec.rows.append(row)
    return rec


def cmd_regdet(args) -> OutputRecord:
    model = parse_graph_spec(args.graph)
    if args.series is not None:
        series = regdet_series(model, args.series)
        return OutputRecord(["degree", "coefficient"], [[d, series[d]] for d in series.degrees])
    values = [_real(v) for v in parse_values(args.x)]
    return OutputRecord(["x", "regdet"], _map(lambda x: [x, regdet(model, x)], values, args.jobs))


def cmd_ihara(args) -> OutputRecord:
    model = parse_graph_spec(args.graph)
    values = parse_values(args.u)
    if args.regularized:
        values = [_real(v) for v in values]
        return OutputRecord(["u", "Zstar"], _map(lambda u: [u, regularized_ihara(model, u)], values, args.jobs))

    def row(u):
        z = complex(ihara_zeta_finite(model, u))
        return [u, z.real, z.imag]

    return OutputRecord(["u", "re", "im"], _map(row, values, args.jobs))


def cmd_residue(args) -> OutputRecord:
    ks = [args.k] if args.kmax is None else list(range(args.kmax + 1))
    rec = OutputRecord(["d", "k", "pole", "core", "residue"])
    for k in ks:
        r = residue_lattice(args.d, k)
        rec.rows.append([r.d, r.k, r.pole, r.core, r.value])
    return rec


def cmd_funceq(args) -> OutputRecord:
    rec = OutputRecord(["k", "lhs_over_inv_pi", "rhs_over_inv_pi", "match"])
    for k in range(args.kmax + 1):
        left, right = functional_z2_sides(k)
        rec.rows.append([k, left, right, left == right])
    return rec


# argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker threads for ranges")

    parser = argparse.ArgumentParser(prog="gzeta", description="Spectral and Ihara zeta functions of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", parents=[common], help="spectral zeta function")
    p.add_argument("--graph", required=True)
    p.add_argument("--s", required=True, help="value or start:stop:step (use --s=-1:0:0.5 for negative starts)")
    p.add_argument("--mode", choices=("auto", "exact", "closed", "mellin", "continuation"), default="auto")
    p.add_argument("--strip", type=int, help="continuation strip bound M")
    p.add_argument("--terms", type=int, help="small-t series order N")
    p.set_defaults(handler=cmd_zeta)

    p = sub.add_parser("heat", parents=[common], help="heat function H_t")
    p.add_argument("--graph", required=True)
    p.add_argument("--t", required=True)
    p.set_defaults(handler=cmd_heat)

    p = sub.add_parser("charpoly", parents=[common], help="det(x + Delta) coefficients")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--cycle", type=int)
    g.add_argument("--graph")
    p.add_argument("--brute", action="store_true", help="compare with the exact recurrence")
    p.set_defaults(handler=cmd_charpoly)

    p = sub.add_parser("forests", parents=[common], help="rooted spanning forest counts of a cycle")
    p.add_argument("--cycle", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--brute", action="store_true", help="add an exhaustive-enumeration column")
    p.set_defaults(handler=cmd_forests)

    p = sub.add_parser("regdet", parents=[common], help="regularized determinant")
    p.add_argument("--graph", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--x")
    g.add_argument("--series", type=int, metavar="K")
    p.set_defaults(handler=cmd_regdet)

    p = sub.add_parser("ihara", parents=[common], help="Ihara zeta function")
    p.add_argument("--graph", required=True)
    p.add_argument("--u", required=True)
    p.add_argument("--regularized", action="store_true")
    p.set_defaults(handler=cmd_ihara)

    p = sub.add_parser("residue", parents=[common], help="residues of the Z^d zeta function")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--kmax", type=int)
    p.set_defaults(handler=cmd_residue)

    p = sub.add_parser("funceq", parents=[common], help="exact check of the Z^2 residue identity")
    p.add_argument("--kmax", type=int, required=True)
    p.set_defaults(handler=cmd_funceq)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        print("gzeta: error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        record = args.handler(args)
    except GraphZetaError as exc:
        print(f"gzeta: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except MemoryError:
        print("gzeta: error: out of memory", file=sys.stderr)
        return 4
    record.emit(args.format, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
