"""Command-line driver: single evaluations, eps sweeps, scaling fits, spectrum dumps.

Exit codes: 0 success, 2 usage, 3 numeric/truncation failure, 4 I/O or input format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .character import DEFAULT_SPECTRUM_ORDER, ModelPoint, ctm_spectrum
from .entropy import METHODS, entropy, resolve_method, spectrum_probabilities
from .errors import DomainError
from .qseries import Truncation
from .scaling import (
    MODULUS_CONVENTION,
    boundary_g,
    central_charge,
    correlation_length,
    fit_scaling,
    geometric_grid,
    richardson,
)

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 2, 3, 4

SWEEP_FIELDS = ("eps", "kappa", "i", "method", "S", "est_error", "terms", "ln_xi_exact", "ln_xi_asym")
FORMATS = ("csv", "json", "table")


class InputFormatError(ValueError):
    """A sweep file could not be parsed."""


@dataclass(frozen=True)
class SweepSpec:
    kappa: int
    i_list: tuple[int, ...] = ()
    eps_grid: tuple[float, float, int] = (0.2, 0.02, 8)
    methods: tuple[str, ...] = ("auto",)
    output_format: str = "csv"
    output_path: str | None = None

    def labels(self) -> list[int]:
        return sorted(set(self.i_list)) if self.i_list else list(range(self.kappa + 1))

    def epsilons(self) -> list[float]:
        start, stop, count = self.eps_grid
        return geometric_grid(start, stop, count)


# -- formatting -------------------------------------------------------------


def fmt_num(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _json_value(v) -> str:
    if isinstance(v, float):
        return "%.17g" % v if math.isfinite(v) else "null"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(v)


def render_rows(rows: Sequence[dict], fmt: str, fields: Sequence[str]) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([fmt_num(row[f]) for f in fields])
        return buf.getvalue()
    if fmt == "json":
        body = ",\n".join("  " + _json_value({f: row[f] for f in fields}) for row in rows)
        return "[\n" + body + "\n]\n" if rows else "[]\n"
    cells = [list(fields)] + [
        [("%.12g" % row[f]) if isinstance(row[f], float) else str(row[f]) for f in fields] for row in rows
    ]
    widths = [max(len(r[c]) for r in cells) for c in range(len(fields))]
    return "".join("  ".join(s.rjust(w) for s, w in zip(r, widths)) + "\n" for r in cells)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- sweeps -----------------------------------------------------------------


def _sweep_row(job: tuple[float, int, int, str, Truncation]) -> dict:
    eps, kappa, i, method, trunc = job
    res = entropy(ModelPoint.from_eps(kappa, i, eps), method, trunc)
    return {
        "eps": eps,
        "kappa": kappa,
        "i": i,
        "method": method,
        "S": res.value,
        "est_error": res.est_error,
        "terms": res.terms_used,
        "ln_xi_exact": correlation_length(eps, "exact", trunc),
        "ln_xi_asym": correlation_length(eps, "asymptotic"),
    }


def sweep_rows(spec: SweepSpec, trunc: Truncation, jobs: int = 1) -> list[dict]:
    """Evaluate the sweep; rows are ordered by eps (descending), then i, then method."""
    labels = spec.labels()
    for i in labels:
        ModelPoint.from_eps(spec.kappa, i, 1.0)
    for m in spec.methods:
        resolve_method(m, 1.0)
    tasks = [
        (eps, spec.kappa, i, m, trunc)
        for eps in spec.epsilons()
        for i in labels
        for m in spec.methods
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_sweep_row, tasks))
    return [_sweep_row(t) for t in tasks]


def _parse_row(raw: dict, where: str) -> dict:
    try:
        return {
            "eps": float(raw["eps"]),
            "kappa": int(raw["kappa"]),
            "i": int(raw["i"]),
            "method": str(raw["method"]),
            "S": float(raw["S"]),
            "est_error": float(raw["est_error"]),
            "terms": int(raw["terms"]),
            "ln_xi_exact": float(raw["ln_xi_exact"]),
            "ln_xi_asym": float(raw["ln_xi_asym"]),
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"{where}: cannot parse sweep row ({exc})") from None


def parse_sweep(text: str) -> list[dict]:
    """Parse sweep output in either CSV or JSON form."""
    if text.lstrip().startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
        if not isinstance(data, list):
            raise InputFormatError("JSON sweep must be an array of row objects")
        return [_parse_row(r, f"row {n}") for n, r in enumerate(data, start=1)]

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None:
        raise InputFormatError("empty sweep file")
    if tuple(header) != SWEEP_FIELDS:
        raise InputFormatError(f"row 1: expected header {','.join(SWEEP_FIELDS)}")
    rows = []
    for n, rec in enumerate(reader, start=2):
        if not rec:
            continue
        if len(rec) != len(SWEEP_FIELDS):
            raise InputFormatError(f"row {n}: expected {len(SWEEP_FIELDS)} fields, got {len(rec)}")
        rows.append(_parse_row(dict(zip(SWEEP_FIELDS, rec)), f"row {n}"))
    return rows


# -- fitting ----------------------------------------------------------------


def fit_report(rows: Sequence[dict], order: int = 1) -> dict:
    """Central charge, ln g and C_kappa estimates from sweep rows."""
    if not rows:
        raise InputFormatError("sweep contains no rows")
    kappas = {r["kappa"] for r in rows}
    if len(kappas) != 1:
        raise InputFormatError(f"sweep mixes kappa values {sorted(kappas)}")
    kappa = kappas.pop()
    c_exact = central_charge(kappa)
    report = {
        "kappa": kappa,
        "c_exact": c_exact,
        "modulus_convention": MODULUS_CONVENTION,
        "fits": [],
    }
    for method in sorted({r["method"] for r in rows}):
        by_i: dict[int, dict[float, dict]] = {}
        for r in rows:
            if r["method"] == method:
                by_i.setdefault(r["i"], {})[r["eps"]] = r
        for i in sorted(by_i):
            pts = by_i[i]
            fit = fit_scaling([(e, r["S"]) for e, r in pts.items()])
            ln_g_exact = boundary_g(kappa, i).ln_g
            eps_sorted = sorted(pts)
            ln_g_est = None
            if i == 0:
                ln_g_est = 0.0
            elif 0 in by_i:
                common = [e for e in eps_sorted if e in by_i[0]]
                if len(common) >= 2:
                    diffs = [pts[e]["S"] - by_i[0][e]["S"] for e in common]
                    ln_g_est = richardson(common, diffs, order=min(order, len(common) - 1))
            resid = [
                pts[e]["S"] - c_exact / 6.0 * pts[e]["ln_xi_exact"] - ln_g_exact for e in eps_sorted
            ]
            c_kappa = richardson(eps_sorted, resid, order=min(order, len(eps_sorted) - 1))
            report["fits"].append(
                {
                    "method": method,
                    "i": i,
                    "points": len(pts),
                    "slope": fit.slope,
                    "intercept": fit.intercept,
                    "c_estimate": fit.c_estimate,
                    "c_rel_error": abs(fit.c_estimate - c_exact) / c_exact,
                    "residual_max": fit.residual_max,
                    "ln_g_exact": ln_g_exact,
                    "ln_g_estimate": ln_g_est,
                    "intercept_minus_ln_g": fit.intercept - ln_g_exact,
                    "C_kappa_estimate": c_kappa,
                }
            )
    return report


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return _json_value(report) + "\n"
    lines = [
        f"kappa = {report['kappa']}    c_exact = {report['c_exact']:.12g}",
        f"modulus convention: {report['modulus_convention']}",
    ]
    fields = (
        "method", "i", "points", "c_estimate", "c_rel_error", "intercept",
        "ln_g_estimate", "ln_g_exact", "C_kappa_estimate", "residual_max",
    )
    rows = [{f: ("-" if fit[f] is None else fit[f]) for f in fields} for fit in report["fits"]]
    return "\n".join(lines) + "\n" + render_rows(rows, "table", fields)


# -- commands ---------------------------------------------------------------


def _trunc(args) -> Truncation:
    overrides = {}
    if args.abs_tol is not None:
        overrides["abs_tol"] = args.abs_tol
    if args.max_terms is not None:
        overrides["max_terms"] = args.max_terms
    return Truncation.from_env(**overrides)


def cmd_entropy(args) -> int:
    point = ModelPoint.from_eps(args.kappa, args.i, args.eps)
    trunc = _trunc(args)
    res = entropy(point, args.method, trunc)
    row = {
        "eps": point.epsilon,
        "kappa": point.kappa,
        "i": point.boundary_i,
        "method": res.method,
        "S": res.value,
        "est_error": res.est_error,
        "terms": res.terms_used,
    }
    _emit(render_rows([row], args.format, tuple(row)), args.output)
    return EXIT_OK


def _spec_from_args(args) -> SweepSpec:
    return SweepSpec(
        kappa=args.kappa,
        i_list=tuple(args.i or ()),
        eps_grid=(args.eps_start, args.eps_stop, args.count),
        methods=tuple(args.method or ("auto",)),
        output_format=args.format,
        output_path=args.output,
    )


def cmd_sweep(args) -> int:
    spec = _spec_from_args(args)
    rows = sweep_rows(spec, _trunc(args), jobs=args.jobs)
    _emit(render_rows(rows, spec.output_format, SWEEP_FIELDS), spec.output_path)
    return EXIT_OK


def cmd_fit(args) -> int:
    if args.input:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        rows = parse_sweep(text)
    else:
        if args.kappa is None:
            raise DomainError("fit needs either --input or --kappa for an inline sweep")
        rows = sweep_rows(_spec_from_args(args), _trunc(args), jobs=args.jobs)
    report = fit_report(rows, order=args.order)
    _emit(render_report(report, "json" if args.format == "json" else "table"), args.output)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    table = ctm_spectrum(args.kappa, args.i, args.order)
    rows = [{"n": n, "d_n": d} for n, d in enumerate(table.degeneracies)]
    fields: tuple[str, ...] = ("n", "d_n")
    if args.eps is not None:
        point = ModelPoint.from_eps(args.kappa, args.i, args.eps)
        levels, _ = spectrum_probabilities(point, args.order, _trunc(args))
        p = {n: pn for n, _, pn in levels}
        for row in rows:
            row["p_n"] = p.get(row["n"], 0.0)
        fields += ("p_n",)
    _emit(render_rows(rows, args.format, fields), args.output)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--abs-tol", type=float, default=None, help="absolute series tolerance (env CTM_ENTROPY_ABS_TOL)")
    p.add_argument("--max-terms", type=int, default=None, help="hard cap on series terms")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")


def _add_sweep_args(p: argparse.ArgumentParser, kappa_required: bool) -> None:
    p.add_argument("--kappa", type=int, required=kappa_required)
    p.add_argument("--i", type=int, action="append", help="boundary label; repeat for several (default: all)")
    p.add_argument("--eps-start", type=float, default=0.2)
    p.add_argument("--eps-stop", type=float, default=0.02)
    p.add_argument("--count", type=int, default=8)
    p.add_argument("--method", action="append", choices=METHODS + ("auto",), help="repeat for several")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for sweep points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctm-entropy",
        description="Exact CTM entanglement entropy of the spin kappa/2 XXZ-type chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="entropy at a single (kappa, i, eps)")
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--method", choices=METHODS + ("auto",), default="auto")
    _add_common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("sweep", help="entropy over a geometric eps grid")
    _add_sweep_args(p, kappa_required=True)
    _add_common(p)
    p.set_defaults(func=cmd_sweep, format="csv")

    p = sub.add_parser("fit", help="central charge / boundary entropy fit from a sweep")
    p.add_argument("--input", help="sweep file (CSV or JSON); '-' for stdin")
    p.add_argument("--order", type=int, default=1, help="Richardson order for eps -> 0 extrapolation")
    _add_sweep_args(p, kappa_required=False)
    _add_common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("spectrum", help="CTM degeneracies d_n (and p_n at --eps)")
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--order", type=int, default=DEFAULT_SPECTRUM_ORDER)
    p.add_argument("--eps", type=float, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    try:
        return args.func(args)
    except (OSError, InputFormatError) as exc:
        print(f"ctm-entropy: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ArithmeticError as exc:
        print(f"ctm-entropy: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"ctm-entropy: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
