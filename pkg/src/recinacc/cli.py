"""Command-line front end: single values, grid sweeps, verification suites.

Output is deterministic byte-for-byte for identical invocations,
including seeded Monte Carlo runs.  Reals are serialized with 17
significant digits so every printed value round-trips to the exact
float.  Exit codes: 0 success, 1 failed verification, 2 usage or
unsupported-combination errors, 3 divergent or non-evaluable integrals.
"""

from __future__ import annotations

import argparse
import json
import sys

from .distributions import (
    Distribution,
    make_exponential,
    make_pareto,
    make_power_decreasing,
    make_power_increasing,
    make_uniform01,
    make_weibull,
)
from .errors import (
    DivergenceError,
    ParameterError,
    QuadratureError,
    RecinaccError,
    UnsupportedMethodError,
)
from . import measures as M
from . import verify as V
from .oracle import McConfig, mc_measure
from .record_measures import RecordMeasureRequest, compute_record_measure
from .records import RecordSpec, record_distribution

CSV_HEADER = "measure,dist,params,side,n,k,method,value,abs_error_estimate,seed"

_METHOD_TOKENS = {
    "auto": "auto",
    "closed": "closed_form",
    "quad": "quadrature",
    "gamma": "gamma_expectation",
    "mc": "monte_carlo",
}

_RECORD_MEASURES = ("kerridge", "cri", "cpi")

# measures between the record law and its parent that only have the
# generic quadrature route
_GENERIC_MEASURES = {
    "kij": M.extropy_inaccuracy,
    "crij": M.cumulative_residual_extropy_inaccuracy,
    "cpij": M.cumulative_past_extropy_inaccuracy,
    "kl": M.kl_divergence,
    "relinfo": M.relative_information,
}

_DIST_PARAMS = {
    "exponential": ("theta",),
    "pareto": ("theta",),
    "weibull": ("lambda", "beta"),
    "uniform": (),
    "power-dec": (),
    "power-inc": ("m",),
}


def _fmt(x: float) -> str:
    return "%.17g" % float(x)


def _build_dist(name: str, params: dict[str, float]) -> Distribution:
    wanted = _DIST_PARAMS[name]
    missing = [p for p in wanted if p not in params]
    extra = [p for p in params if p not in wanted]
    if missing or extra:
        raise ParameterError(
            f"distribution {name} takes parameters {list(wanted)}; "
            f"missing {missing}, unknown {extra}"
        )
    if name == "exponential":
        return make_exponential(params["theta"])
    if name == "pareto":
        return make_pareto(params["theta"])
    if name == "weibull":
        return make_weibull(params["lambda"], params["beta"])
    if name == "uniform":
        return make_uniform01()
    if name == "power-dec":
        return make_power_decreasing()
    m = params["m"]
    if m != int(m):
        raise ParameterError(f"parameter m must be an integer, got {m!r}")
    return make_power_increasing(int(m))


def _parse_params(pairs: list[str]) -> dict[str, float]:
    out: dict[str, float] = {}
    for pair in pairs:
        name, sep, raw = pair.partition("=")
        if not sep or not name:
            raise ParameterError(f"--param expects name=value, got {pair!r}")
        try:
            out[name] = float(raw)
        except ValueError as exc:
            raise ParameterError(f"parameter {name} has non-numeric value {raw!r}") from exc
    return out


def _parse_range(raw: str, flag: str) -> list[int]:
    lo, sep, hi = raw.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError as exc:
        raise ParameterError(f"{flag} expects INT or LO..HI, got {raw!r}") from exc
    if hi_i < lo_i:
        raise ParameterError(f"{flag} range {raw!r} is empty")
    return list(range(lo_i, hi_i + 1))


def _evaluate(dist_name, params, measure, side, n, k, method_token, seed):
    parent = _build_dist(dist_name, params)
    spec = RecordSpec(side, n, k)
    method = _METHOD_TOKENS[method_token]
    if measure in _RECORD_MEASURES:
        request = RecordMeasureRequest(parent, spec, measure, method)
        if method == "monte_carlo":
            return mc_measure(request, McConfig(seed=seed)), True
        return compute_record_measure(request), False
    fn = _GENERIC_MEASURES[measure]
    if method not in ("auto", "quadrature"):
        raise UnsupportedMethodError(
            f"measure {measure} only has the quadrature route, not {method_token}"
        )
    return fn(record_distribution(parent, spec), parent), False


def _params_csv(params: dict[str, float], order: tuple[str, ...]) -> str:
    return ";".join(f"{name}={_fmt(params[name])}" for name in order)


def _row_csv(row: dict) -> str:
    return ",".join(
        [
            row["measure"],
            row["dist"],
            _params_csv(row["params"], _DIST_PARAMS[row["dist"]]),
            row["side"],
            str(row["n"]),
            str(row["k"]),
            row["method"],
            _fmt(row["value"]) if row["value"] is not None else "",
            _fmt(row["abs_error_estimate"]) if row["abs_error_estimate"] is not None else "",
            str(row["seed"]) if row["seed"] is not None else "",
        ]
    )


def _row_json(row: dict) -> str:
    parts = [
        f'"measure": {json.dumps(row["measure"])}',
        f'"dist": {json.dumps(row["dist"])}',
        '"params": {%s}'
        % ", ".join(
            f"{json.dumps(name)}: {_fmt(row['params'][name])}"
            for name in _DIST_PARAMS[row["dist"]]
        ),
        f'"side": {json.dumps(row["side"])}',
        f'"n": {row["n"]}',
        f'"k": {row["k"]}',
        f'"method": {json.dumps(row["method"])}',
    ]
    if row["value"] is not None:
        parts.append(f'"value": {_fmt(row["value"])}')
    else:
        parts.append('"value": null')
    if row["abs_error_estimate"] is not None:
        parts.append(f'"abs_error_estimate": {_fmt(row["abs_error_estimate"])}')
    else:
        parts.append('"abs_error_estimate": null')
    if row["seed"] is not None:
        parts.append(f'"seed": {row["seed"]}')
    if row.get("error"):
        parts.append(f'"error": {json.dumps(row["error"])}')
    return "{%s}" % ", ".join(parts)


def _make_row(args, params, n, k, result=None, stochastic=False, error=None):
    return {
        "measure": args.measure,
        "dist": args.dist,
        "params": params,
        "side": args.side,
        "n": n,
        "k": k,
        "method": result.method if result is not None else "error",
        "value": result.value if result is not None else None,
        "abs_error_estimate": result.abs_error_estimate if result is not None else None,
        "seed": args.seed if stochastic else None,
        "error": error,
    }


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "csv":
        print(CSV_HEADER, file=out)
        for row in rows:
            print(_row_csv(row), file=out)
    else:
        for row in rows:
            print(_row_json(row), file=out)


def cmd_compute(args, out=sys.stdout) -> int:
    params = _parse_params(args.param)
    result, stochastic = _evaluate(
        args.dist, params, args.measure, args.side, args.n, args.k,
        args.method, args.seed,
    )
    row = _make_row(args, params, args.n, args.k, result, stochastic)
    _emit([row], args.format, out)
    return 0


def cmd_table(args, out=sys.stdout) -> int:
    params = _parse_params(args.param)
    ns = _parse_range(args.n, "--n")
    ks = _parse_range(args.k, "--k")

    grids: list[tuple[str, list[float]]] = []
    for raw in args.param_grid:
        name, sep, values = raw.partition("=")
        if not sep or not values:
            raise ParameterError(f"--param-grid expects name=v1,v2,..., got {raw!r}")
        try:
            grids.append((name, [float(v) for v in values.split(",")]))
        except ValueError as exc:
            raise ParameterError(f"--param-grid {raw!r} has a non-numeric value") from exc

    combos: list[dict[str, float]] = [dict(params)]
    for name, values in grids:
        combos = [{**combo, name: v} for combo in combos for v in sorted(values)]
    order = _DIST_PARAMS[args.dist]

    cells = sorted(
        ((n, k, combo) for n in ns for k in ks for combo in combos),
        key=lambda cell: (
            cell[0], cell[1], tuple(cell[2].get(p, 0.0) for p in order),
        ),
    )

    rows = []
    failures = 0
    usage_failures = 0
    for n, k, combo in cells:
        try:
            result, stochastic = _evaluate(
                args.dist, combo, args.measure, args.side, n, k,
                args.method, args.seed,
            )
            rows.append(_make_row(args, combo, n, k, result, stochastic))
        except (ParameterError, UnsupportedMethodError) as exc:
            failures += 1
            usage_failures += 1
            rows.append(_make_row(args, combo, n, k, error=str(exc)))
        except (DivergenceError, QuadratureError, RecinaccError) as exc:
            failures += 1
            rows.append(_make_row(args, combo, n, k, error=str(exc)))
    _emit(rows, args.format, out)
    if failures == len(rows):
        return 2 if usage_failures == failures else 3
    return 0


def cmd_verify(args, out=sys.stdout) -> int:
    report = V.run_suite(args.suite, args.seed)
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status}  {check['name']}  ({check['detail']})", file=out)
    total = len(report["checks"])
    good = sum(1 for c in report["checks"] if c["passed"])
    print(f"suite {args.suite}: {good}/{total} checks passed", file=out)
    print(json.dumps(report, sort_keys=True), file=out)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="recinacc",
        description="Inaccuracy measures between record-value laws and their parent distribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, table: bool) -> None:
        p.add_argument("--dist", required=True, choices=sorted(_DIST_PARAMS))
        p.add_argument(
            "--param", action="append", default=[], metavar="NAME=VALUE",
            help="distribution parameter, repeatable",
        )
        p.add_argument("--measure", required=True,
                       choices=_RECORD_MEASURES + tuple(sorted(_GENERIC_MEASURES)))
        p.add_argument("--side", required=True, choices=("upper", "lower"))
        if table:
            p.add_argument("--n", required=True, help="INT or LO..HI")
            p.add_argument("--k", required=True, help="INT or LO..HI")
            p.add_argument(
                "--param-grid", action="append", default=[], metavar="NAME=V1,V2,...",
                help="sweep a parameter over listed values, repeatable",
            )
        else:
            p.add_argument("--n", required=True, type=int)
            p.add_argument("--k", required=True, type=int)
        p.add_argument("--method", default="auto", choices=sorted(_METHOD_TOKENS))
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--seed", type=int, default=0)

    p_compute = sub.add_parser("compute", help="one measure value")
    add_common(p_compute, table=False)
    p_compute.set_defaults(fn=cmd_compute)

    p_table = sub.add_parser("table", help="sweep a grid of n, k, parameters")
    add_common(p_table, table=True)
    p_table.set_defaults(fn=cmd_table)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", required=True, choices=sorted(V.SUITES))
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParameterError, UnsupportedMethodError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DivergenceError as exc:
        print(f"divergent: {exc}", file=sys.stderr)
        return 3
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
