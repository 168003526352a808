"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for unreadable input or bad usage.  Colour is used only on a terminal and
is turned off by NO_COLOR or CONLEYTRACE_NO_COLOR.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import analysis, examples, scenario_io
from .errors import ConleyError, ParseError
from .exactalg import Matrix, Polynomial, char_poly, nonzero_part, to_fraction
from .formulas import fixed_point_index_sequence
from .leray import reduce
from .series import FormalSeries, evaluate_on_nilpotent, no_nonzero_eigenvalue_certificate, series_inverse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_COLORS = {analysis.PASS: "32", analysis.FAIL: "31", analysis.SKIP: "33"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _use_color(stream) -> bool:
    if os.environ.get("NO_COLOR") or os.environ.get("CONLEYTRACE_NO_COLOR"):
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(status: str, color: bool) -> str:
    return f"\x1b[{_COLORS[status]}m{status}\x1b[0m" if color else status


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", f"{what}:{exc.lineno}:{exc.colno}") from None


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _check_names(text: str | None) -> list[str] | None:
    if text is None:
        return None
    names = [n.strip() for n in text.split(",") if n.strip()]
    unknown = [n for n in names if n not in analysis.CHECKS]
    if unknown:
        raise _UsageError(f"unknown check(s): {', '.join(unknown)}; choose from {', '.join(analysis.CHECKS)}")
    return names


# analyze ------------------------------------------------------------------


def _analyze_one(path: str, n_max: int, checks) -> dict:
    bundle = scenario_io.load_bundle(_read(path), n_max, source=path)
    results = analysis.run_checks(bundle, checks)
    try:
        index = fixed_point_index_sequence(bundle)
    except ConleyError:
        index = None
    return {
        "source": path,
        "name": bundle.name,
        "parameters": dict(bundle.parameters),
        "n_max": bundle.n_max,
        "report": bundle.report.to_json(),
        "index_sequence": index,
        "checks": [r.to_json() for r in results],
        "passed": analysis.all_passed(results),
    }


def _table(entry: dict, color: bool) -> str:
    lines = []
    params = ", ".join(f"{k}={v}" for k, v in entry["parameters"].items())
    title = entry["name"] or entry["source"]
    lines.append(f"scenario {title}" + (f" ({params})" if params else "") + f"  [{entry['source']}]  n_max={entry['n_max']}")
    rows = [("q", "betti", "drop", "nonzero spectrum", "traces")]
    for q, d in entry["report"]["degrees"].items():
        spec = _poly_str(d["nonzero_spectrum"])
        rows.append((q, str(d["betti"]), str(d["betti_drop"]), spec, " ".join(d["traces"])))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    for r in rows:
        lines.append("  " + "  ".join(c.ljust(w) for c, w in zip(r, widths)) + "  " + r[4])
    if entry["index_sequence"] is not None:
        lines.append("  index i(f^n): " + " ".join(str(x) for x in entry["index_sequence"]))
    lines.append(f"  chi(W^u, inf) rel: {entry['report']['chi_wu_rel']}")
    width = max(len(c["check"]) for c in entry["checks"])
    for c in entry["checks"]:
        lines.append(f"  {c['check'].ljust(width)}  {_paint(c['status'], color)}  {c['message']}")
        for extra in c.get("failures", [])[1:]:
            lines.append(f"  {' ' * width}        {extra}")
    return "\n".join(lines)


def _poly_str(coeffs: list[str]) -> str:
    return Polynomial.from_json(coeffs).format()


def cmd_analyze(args) -> int:
    checks = _check_names(args.checks)
    if args.iterates < 1:
        raise _UsageError("--iterates must be >= 1")
    entries = [_analyze_one(p, args.iterates, checks) for p in args.paths]
    passed = all(e["passed"] for e in entries)
    if args.format == "json":
        _emit_json({"passed": passed, "scenarios": entries})
    else:
        color = _use_color(sys.stdout)
        sys.stdout.write("\n\n".join(_table(e, color) for e in entries) + "\n")
        sys.stdout.write(("PASS" if passed else "FAIL") + "\n")
    return EXIT_OK if passed else EXIT_FAIL


# reduce -------------------------------------------------------------------


def _matrix_from(data, where: str) -> Matrix:
    if isinstance(data, dict):
        if "matrix" not in data:
            raise ParseError("missing key 'matrix'", where)
        data, where = data["matrix"], f"{where}.matrix"
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ParseError("expected a matrix as a list of rows", where)
    try:
        return Matrix(data, shape=(len(data), len(data[0]) if data else 0))
    except (ConleyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), where) from None


def cmd_reduce(args) -> int:
    m = _matrix_from(_json_arg(_read(args.path), args.path), "$")
    red = reduce(m)
    _emit_json(
        {
            "original_dim": red.original_dim,
            "stabilization_index": red.stabilization_index,
            "betti_drop": red.dim,
            "reduced": red.reduced_matrix.to_json(),
            "char_poly": char_poly(m).to_json(),
            "nonzero_spectrum": nonzero_part(char_poly(m)).to_json(),
        }
    )
    return EXIT_OK


# series -------------------------------------------------------------------


def _coeffs(text: str) -> list[Fraction]:
    data = _json_arg(text, "--coeffs")
    if not isinstance(data, list):
        raise ParseError("coefficients must be a JSON list", "--coeffs")
    try:
        return [to_fraction(c) for c in data]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(str(exc), "--coeffs") from None


def cmd_series_invert(args) -> int:
    if args.order < 0:
        raise _UsageError("--order must be >= 0")
    a = FormalSeries.polynomial(_coeffs(args.coeffs))
    _emit_json({"order": args.order, "inverse": series_inverse(a, args.order).to_json()})
    return EXIT_OK


def cmd_series_eval(args) -> int:
    m = _matrix_from(_json_arg(args.matrix, "--matrix"), "--matrix")
    cert = no_nonzero_eigenvalue_certificate(m)
    out = {
        "nilpotency_index": cert.nilpotency_index,
        "resolvent_checks": {str(k): v for k, v in cert.checked.items()},
    }
    if args.coeffs is not None:
        a = FormalSeries.polynomial(_coeffs(args.coeffs))
        out["value"] = evaluate_on_nilpotent(a, m).to_json()
    _emit_json(out)
    return EXIT_OK if cert.all_verified else EXIT_FAIL


# examples -----------------------------------------------------------------


def cmd_examples_list(args) -> int:
    width = max(len(n) for n in examples.SCENARIOS)
    for name, spec in examples.SCENARIOS.items():
        params = " ".join(f"--{k} {v}" for k, v in spec.parameters.items())
        sys.stdout.write(f"{name.ljust(width)}  {spec.description}" + (f"  [{params}]" if params else "") + "\n")
    return EXIT_OK


def cmd_examples_emit(args) -> int:
    spec = examples.SCENARIOS.get(args.name)
    if spec is None:
        raise _UsageError(f"unknown scenario {args.name!r}; see 'examples list'")
    overrides = {k: getattr(args, k) for k in ("r", "q", "orientation", "dim")}
    unused = [k for k, v in overrides.items() if v is not None and k not in spec.parameters]
    if unused:
        raise _UsageError(f"{args.name} takes no --{', --'.join(unused)}")
    if args.iterates < 1:
        raise _UsageError("--iterates must be >= 1")
    try:
        bundle = spec.build(args.iterates, **overrides)
    except (ValueError, ConleyError) as exc:
        raise _UsageError(str(exc)) from None
    text = scenario_io.dump_bundle(bundle)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="conleytrace", description="Exact discrete Conley index invariants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="run the pipeline and checks on scenario files")
    a.add_argument("paths", nargs="+", help="scenario JSON files ('-' for stdin)")
    a.add_argument("--iterates", type=int, default=examples.DEFAULT_N_MAX, help="number of iterates n_max")
    a.add_argument("--format", choices=("table", "json"), default="table")
    a.add_argument("--checks", help="comma-separated subset of " + ",".join(analysis.CHECKS))
    a.set_defaults(func=cmd_analyze)

    r = sub.add_parser("reduce", help="Leray reduction of a square matrix")
    r.add_argument("path", help="JSON matrix file ('-' for stdin)")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("series", help="formal power series operations")
    ssub = s.add_subparsers(dest="series_command", required=True, parser_class=_Parser)
    inv = ssub.add_parser("invert", help="inverse of a unit series")
    inv.add_argument("--coeffs", required=True, help="JSON list of coefficients, lowest degree first")
    inv.add_argument("--order", type=int, required=True)
    inv.set_defaults(func=cmd_series_invert)
    ev = ssub.add_parser("eval", help="evaluate on a nilpotent matrix and certify its resolvent")
    ev.add_argument("--matrix", required=True, help="JSON matrix")
    ev.add_argument("--coeffs", help="JSON list of series coefficients")
    ev.set_defaults(func=cmd_series_eval)

    e = sub.add_parser("examples", help="built-in scenario gallery")
    esub = e.add_subparsers(dest="examples_command", required=True, parser_class=_Parser)
    esub.add_parser("list").set_defaults(func=cmd_examples_list)
    em = esub.add_parser("emit", help="write a built-in scenario as JSON")
    em.add_argument("name")
    em.add_argument("--r", type=int)
    em.add_argument("--q", type=int)
    em.add_argument("--orientation", type=int, choices=(1, -1))
    em.add_argument("--dim", type=int)
    em.add_argument("--iterates", type=int, default=examples.DEFAULT_N_MAX)
    em.add_argument("-o", "--output")
    em.set_defaults(func=cmd_examples_emit)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except ConleyError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
