"""Command-line interface.

Usage::

    kpmoments moment --n 2 --l 1 --m 1          # 5 a0
    kpmoments table --n 2 --l 1 --from -4 --to 2 --format csv
    kpmoments state --n 2 --l 0 --show-operators
    kpmoments verify --nmax 8

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
All numbers are printed as exact rationals.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .errors import KPError
from .ladder import build_state
from .moments import moment, unit_string
from .operalg import build_hamiltonian, build_lower, build_raise
from .oracle import Mutation, oracle_wavefunction, proportionality_factor, verify_all
from .radialfunc import format_rational

FORMATS = ("plain", "json", "csv", "markdown")

# JSON schema for `moment` and `table` records.
MOMENT_RECORD_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "l": {"type": "integer", "minimum": 0},
        "m": {"type": "integer"},
        "numerator": {"type": "string", "pattern": "^[1-9][0-9]*$"},
        "denominator": {"type": "string", "pattern": "^[1-9][0-9]*$"},
        "value": {"type": "string", "pattern": "^[1-9][0-9]*(/[1-9][0-9]*)?$"},
        "unit": {"type": "string"},
    },
    "required": ["n", "l", "m", "numerator", "denominator", "unit"],
    "additionalProperties": False,
}

TABLE_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "l": {"type": "integer", "minimum": 0},
        "rows": {"type": "array", "items": MOMENT_RECORD_SCHEMA},
    },
    "required": ["n", "l", "rows"],
    "additionalProperties": False,
}


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _moment_record(mv) -> dict:
    return {
        "n": mv.n,
        "l": mv.l,
        "m": mv.power,
        "numerator": str(mv.value.numerator),
        "denominator": str(mv.value.denominator),
        "value": format_rational(mv.value),
        "unit": mv.unit,
    }


def cmd_moment(n: int, l: int, m: int, fmt: str = "plain") -> str:
    mv = moment(n, l, m)
    if fmt == "json":
        return _dumps(_moment_record(mv))
    if fmt == "csv":
        return _csv([["n", "l", "m", "value", "unit"], [n, l, m, format_rational(mv.value), mv.unit]])
    if fmt == "markdown":
        return _markdown(["n", "l", "m", "value", "unit"], [[n, l, m, format_rational(mv.value), mv.unit]])
    return str(mv)


def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _markdown(header, rows) -> str:
    lines = ["| " + " | ".join(map(str, header)) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(map(str, r)) + " |" for r in rows]
    return "\n".join(lines)


def cmd_table(n: int, l: int, m_min: int, m_max: int, fmt: str = "plain") -> str:
    if m_min > m_max:
        raise KPError(f"--from must not exceed --to (got {m_min} > {m_max})")
    # validates (n, l) even when every row is below the existence bound
    moment(n, l, 0)
    bound = -2 * l - 2
    values = {m: moment(n, l, m) for m in range(max(m_min, bound), m_max + 1)}
    if fmt == "json":
        return _dumps({"n": n, "l": l, "rows": [_moment_record(values[m]) for m in sorted(values)]})
    if fmt == "csv":
        rows = [["n", "l", "m", "value", "unit"]]
        rows += [[n, l, m, format_rational(v.value), v.unit] for m, v in sorted(values.items())]
        return _csv(rows)
    rows = []
    for m in range(m_min, m_max + 1):
        if m in values:
            rows.append([m, format_rational(values[m].value), unit_string(m)])
        else:
            rows.append([m, "nonexistent", unit_string(m)])
    if fmt == "markdown":
        return _markdown(["m", "value", "unit"], rows)
    width = max(len(r[1]) for r in rows)
    lines = [f"# <n={n},l={l}| r^m |n={n},l={l}>"]
    lines += [f"{r[0]:>4}  {r[1]:<{width}}  {r[2]}".rstrip() for r in rows]
    return "\n".join(lines)


def cmd_state(n: int, l: int, fmt: str = "plain", show_operators: bool = False) -> str:
    state = build_state(n, l)
    oracle = oracle_wavefunction(n, l)
    q = proportionality_factor(state.wavefunction, oracle.wavefunction)
    if fmt == "json":
        rec = state.to_record()
        rec["energy_unit"] = "e^2/a0"
        rec["oracle_factor"] = None if q is None else format_rational(q)
        if show_operators:
            rec["operators"] = {
                "lower": build_lower(l).to_records(),
                "raise": build_raise(l).to_records(),
                "hamiltonian": build_hamiltonian(l).to_records(),
            }
        return _dumps(rec)
    rows = [
        [t.power, format_rational(t.coeff), format_rational(t.decay)] for t in state.wavefunction.terms
    ]
    if fmt == "csv":
        return _csv([["power", "coeff", "decay"]] + rows)
    if fmt == "markdown":
        body = _markdown(["power", "coeff", "decay"], rows)
        extra = [
            "",
            f"- normsq: {format_rational(state.normsq)}",
            f"- energy: {format_rational(state.energy)} e^2/a0",
            f"- oracle factor: {'none' if q is None else format_rational(q)}",
        ]
        return body + "\n".join([""] + extra)
    lines = [
        f"state n={n} l={l}",
        f"wavefunction: {state.wavefunction}",
        f"normsq: {format_rational(state.normsq)}",
        f"energy: {format_rational(state.energy)} e^2/a0",
        f"oracle factor: {'none' if q is None else format_rational(q)}",
    ]
    if show_operators:
        lines += [
            f"lower_{l}: {build_lower(l)}",
            f"raise_{l}: {build_raise(l)}",
            f"H_{l}: {build_hamiltonian(l)}",
        ]
    return "\n".join(lines)


def cmd_verify(n_max: int, fmt: str = "plain", mutation: Mutation | None = None) -> tuple[str, int]:
    report = verify_all(n_max, mutation=mutation)
    code = 0 if report.passed else 1
    if fmt == "json":
        return report.to_json(), code
    rows = [[r.name, r.cells, len(r.failures), "PASS" if r.passed else "FAIL"] for r in report.identities]
    if fmt == "csv":
        return _csv([["identity", "cells", "failures", "status"]] + rows), code
    if fmt == "markdown":
        return _markdown(["identity", "cells", "failures", "status"], rows), code
    lines = []
    for r in report.identities:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} {r.name}: {r.cells} cells, {len(r.failures)} failures"
        if r.first_failure is not None:
            f = r.first_failure.to_dict()
            line += f"; first at {f['coords']} expected {f['expected']} got {f['actual']}"
        lines.append(line)
    lines.append(f"{'OK' if report.passed else 'FAILED'}: n_max={n_max}")
    return "\n".join(lines), code


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _mutation(text: str) -> Mutation:
    try:
        n, l, m = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N,L,M, got {text!r}") from None
    return Mutation(n, l, m)


def build_parser() -> argparse.ArgumentParser:
    fmt_parent = argparse.ArgumentParser(add_help=False)
    # subcommand-level --format; SUPPRESS keeps the global value when omitted
    fmt_parent.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="kpmoments",
        description="Exact hydrogenic radial moments <n,l|r^m|n,l> in atomic units.",
    )
    parser.add_argument("--format", choices=FORMATS, default="plain")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", parents=[fmt_parent], help="a single moment")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("table", parents=[fmt_parent], help="moments over a range of m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--from", dest="m_min", type=int, required=True)
    p.add_argument("--to", dest="m_max", type=int, required=True)

    p = sub.add_parser("state", parents=[fmt_parent], help="ladder-built eigenstate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--show-operators", action="store_true")

    p = sub.add_parser("verify", parents=[fmt_parent], help="run all identity suites")
    p.add_argument("--nmax", type=_positive_int, default=8)
    p.add_argument(
        "--mutate",
        type=_mutation,
        default=None,
        metavar="N,L,M",
        help="negative control: corrupt the engine value of one moment",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    fmt = args.format
    try:
        if args.command == "moment":
            out, code = cmd_moment(args.n, args.l, args.m, fmt), 0
        elif args.command == "table":
            out, code = cmd_table(args.n, args.l, args.m_min, args.m_max, fmt), 0
        elif args.command == "state":
            out, code = cmd_state(args.n, args.l, fmt, args.show_operators), 0
        else:
            out, code = cmd_verify(args.nmax, fmt, args.mutate)
    except KPError as exc:
        print(f"kpmoments: error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
