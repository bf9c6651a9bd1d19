"""Command line front end.

Exit codes: 0 for success or a passing verdict, 1 for a failing or
inconclusive verdict, 2 for usage and evaluation errors.  Reports are
JSON by default; complex numbers appear as [re, im] pairs and any
non-finite number is emitted as the string "diverged".  Errors are
written to stderr as a structured JSON object.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .criteria import (
    CheckReport,
    associated_starlike,
    becker_check,
    epsilon_norm_gap_check,
    hg_epsilon_univalence_check,
    nehari_check,
    norm_gap_check,
    pre_schwarzian_bound_check,
    schwarz_pick_check,
    starlike_check,
)
from .errors import EvaluationError, IoFailure
from .expr import ExprSyntaxError, parse, unparse
from .fixtures import fixture_names, load_fixture, run_fixture
from .maps import (
    LogHarmonicMap,
    analytic_pre_schwarzian,
    analytic_pre_schwarzian_field,
    analytic_schwarzian,
    analytic_schwarzian_field,
    compose_with_analytic,
    dbar_pre_schwarzian,
    dbar_schwarzian,
    dilatation,
    hg_epsilon_field,
    hg_epsilon_pre_schwarzian,
    jacobian,
    map_value,
    phi_family,
    pre_schwarzian,
    pre_schwarzian_field,
    schwarzian,
    schwarzian_field,
    wirtinger,
)
from .norms import (
    GridSpec,
    bloch_norm_log,
    pre_schwarzian_norm,
    radial_profile,
    schwarzian_norm,
    weighted_sup,
)
from .render import RenderJob, render_image

_EVAL_OPS = (
    "preschwarzian",
    "schwarzian",
    "dilatation",
    "jacobian",
    "map-value",
    "wirtinger",
    "phi",
    "dbar-preschwarzian",
    "dbar-schwarzian",
    "hg-eps-preschwarzian",
    "compose",
)
_NORM_KINDS = ("pre", "schwarzian", "bloch-log", "hg-eps")
_CHECK_NAMES = (
    "becker",
    "nehari",
    "schwarz-pick",
    "eps-univalence",
    "norm-gap",
    "eps-norm-gap",
    "norm-bound",
    "starlike",
    "associated-starlike",
)


class UsageError(Exception):
    """Bad flag combination or missing input; maps to exit code 2."""


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected a complex number as 're,im' or a bare real, got {text!r}")


def _num(x) -> object:
    x = float(x)
    return x if math.isfinite(x) else "diverged"


def _cnum(z) -> object:
    z = complex(z)
    if math.isfinite(z.real) and math.isfinite(z.imag):
        return [z.real, z.imag]
    return "diverged"


def _jsonable(v):
    if isinstance(v, np.generic):
        v = v.item()
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, float):
        return _num(v)
    if isinstance(v, complex):
        return _cnum(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


# ---------------------------------------------------------------------------
# argument plumbing


def _add_map_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--m", type=int, default=0, help="vanishing order at the origin")
    p.add_argument("--beta", default="0", help="exponent parameter, 're,im'")
    p.add_argument("--h", default=None, help="analytic factor h(z)")
    p.add_argument("--g", default=None, help="analytic factor g(z)")
    p.add_argument("--expr", default=None, help="bare analytic target")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--radial-levels", type=int, default=40, dest="radial_levels")
    p.add_argument("--angular", type=int, default=512)
    p.add_argument("--r-max", type=float, default=1 - 1e-6, dest="r_max")
    p.add_argument("--refine", type=int, default=3)


def _add_output_flags(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
    p.add_argument("--output", default=None, help="write the report here instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logharm",
        description="evaluate, norm-estimate, and check log-harmonic mappings of the disk",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("eval", help="evaluate one operator at one point")
    p.add_argument("--op", choices=_EVAL_OPS, required=True)
    p.add_argument("--z", default="0", help="evaluation point, 're,im'")
    p.add_argument("--eps", default=None, help="family exponent, 're,im'")
    p.add_argument("--psi", default=None, help="analytic disk self-map to precompose")
    _add_map_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("norm", help="hyperbolically weighted sup-norm estimate")
    p.add_argument("--kind", choices=_NORM_KINDS, required=True)
    p.add_argument("--eps", default=None)
    _add_map_flags(p)
    _add_grid_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("check", help="run a univalence or geometry criterion")
    p.add_argument("--name", choices=_CHECK_NAMES, required=True)
    p.add_argument("--eps", default=None)
    p.add_argument("--omega", default=None, help="dilatation expression for schwarz-pick")
    _add_map_flags(p)
    _add_grid_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("fixtures", help="list or rerun the shipped regression catalog")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("name", nargs="?")
    _add_grid_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("render", help="image of the disk as CSV points or a PPM raster")
    p.add_argument("--image-format", choices=("csv", "ppm"), default=None, dest="image_format")
    p.add_argument("--color-field", action="store_true", dest="color_field")
    _add_map_flags(p)
    _add_grid_flags(p)
    _add_output_flags(p)

    p = sub.add_parser("profile", help="weighted field magnitude along the radius")
    p.add_argument("--op", choices=("preschwarzian", "schwarzian"), default="preschwarzian")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--r-max", type=float, default=1 - 1e-6, dest="r_max")
    _add_map_flags(p)
    _add_output_flags(p, default_format="csv")

    return parser


def _grid(args) -> GridSpec:
    return GridSpec(
        radial_levels=args.radial_levels,
        r_max=args.r_max,
        angular_count=args.angular,
        refine_rounds=args.refine,
    )


def _grid_meta(grid: GridSpec) -> dict:
    return {
        "radial_levels": grid.radial_levels,
        "angular_count": grid.angular_count,
        "r_max": grid.r_max,
        "refine_rounds": grid.refine_rounds,
    }


def _has_map_flags(args) -> bool:
    return args.h is not None or args.g is not None


def _target_map(args) -> LogHarmonicMap:
    if args.expr is not None and _has_map_flags(args):
        raise UsageError("give either --expr or --h/--g, not both")
    if args.h is None or args.g is None:
        raise UsageError("this operation needs a full mapping: --h and --g (plus --m/--beta)")
    try:
        return LogHarmonicMap.from_strings(args.m, parse_complex(args.beta), args.h, args.g)
    except ExprSyntaxError as exc:
        raise UsageError(f"bad factor expression: {exc}") from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _target_expr(args):
    if args.expr is None:
        raise UsageError("this operation needs --expr")
    if _has_map_flags(args):
        raise UsageError("give either --expr or --h/--g, not both")
    try:
        return parse(args.expr)
    except ExprSyntaxError as exc:
        raise UsageError(f"bad expression: {exc}") from None

def _require_eps(args) -> complex:
    if args.eps is None:
        raise UsageError("this operation needs --eps")
    return parse_complex(args.eps)


def _map_inputs(args) -> dict:
    return {
        "m": args.m,
        "beta": _cnum(parse_complex(args.beta)),
        "h": args.h,
        "g": args.g,
    }


# ---------------------------------------------------------------------------
# report emission


def _csv_cell(v) -> str:
    if isinstance(v, list):
        return json.dumps(v)
    return "" if v is None else str(v)


def _to_csv(report: dict) -> str:
    rows = report.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        cols = list(rows[0])
        lines = [",".join(cols)]
        for row in rows:
            lines.append(",".join(f'"{_csv_cell(row[c])}"' for c in cols))
        return "\n".join(lines) + "\n"
    if isinstance(rows, list):
        lines = ["r,weighted_value"]
        lines += [f"{r!r},{v!r}" for r, v in rows]
        return "\n".join(lines) + "\n"
    lines = ["key,value"]
    for k, v in report.items():
        lines.append(f'"{k}","{_csv_cell(v)}"')
    return "\n".join(lines) + "\n"


def _to_text(report: dict, indent: str = "") -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_to_text(v, indent + "  ").rstrip("\n"))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                parts = ", ".join(f"{kk}={_csv_cell(vv)}" for kk, vv in item.items())
                lines.append(f"{indent}  - {parts}")
        else:
            lines.append(f"{indent}{k}: {_csv_cell(v)}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, args) -> None:
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif args.format == "csv":
        text = _to_csv(report)
    else:
        text = _to_text(report)
    if args.output:
        try:
            Path(args.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise IoFailure(f"cannot write {args.output}: {exc}") from None
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_eval(args) -> int:
    z = parse_complex(args.z)
    op = args.op
    if args.expr is not None:
        e = _target_expr(args)
        if op == "preschwarzian":
            value = _cnum(analytic_pre_schwarzian(e, z))
        elif op == "schwarzian":
            value = _cnum(analytic_schwarzian(e, z))
        else:
            raise UsageError(f"--expr targets support preschwarzian and schwarzian, not {op}")
        inputs = {"expr": args.expr, "z": _cnum(z)}
    else:
        f = _target_map(args)
        inputs = {**_map_inputs(args), "z": _cnum(z)}
        if op == "preschwarzian":
            value = _cnum(pre_schwarzian(f, z))
        elif op == "schwarzian":
            value = _cnum(schwarzian(f, z))
        elif op == "dilatation":
            value = _cnum(dilatation(f, z))
        elif op == "jacobian":
            value = _num(jacobian(f, z))
        elif op == "map-value":
            value = _cnum(map_value(f, z))
        elif op == "wirtinger":
            fz, fzb, fv = wirtinger(f, z)
            value = {"f_z": _cnum(fz), "f_zbar": _cnum(fzb), "f": _cnum(fv)}
        elif op == "phi":
            p, s = phi_family(f, z)
            value = {"pre_schwarzian": _cnum(p), "schwarzian": _cnum(s)}
        elif op == "dbar-preschwarzian":
            value = _cnum(dbar_pre_schwarzian(f, z))
        elif op == "dbar-schwarzian":
            value = _cnum(dbar_schwarzian(f, z))
        elif op == "hg-eps-preschwarzian":
            value = _cnum(hg_epsilon_pre_schwarzian(f, _require_eps(args), z))
        elif op == "compose":
            if args.psi is None:
                raise UsageError("--op compose needs --psi")
            value = _cnum(compose_with_analytic(f, parse(args.psi), z))
            inputs["psi"] = args.psi
        else:  # pragma: no cover - choices exhaust the ops
            raise UsageError(f"unknown op {op}")
        if args.eps is not None:
            inputs["eps"] = _cnum(parse_complex(args.eps))
    _emit({"subcommand": "eval", "op": op, "inputs": inputs, "value": value}, args)
    return 0


def _norm_estimate(args, grid: GridSpec):
    kind = args.kind
    if kind == "bloch-log":
        if args.g is None:
            raise UsageError("--kind bloch-log needs --g")
        try:
            g = parse(args.g)
        except ExprSyntaxError as exc:
            raise UsageError(f"bad expression: {exc}") from None
        return bloch_norm_log(g, grid), {"g": args.g}
    if kind == "hg-eps":
        f = _target_map(args)
        eps = _require_eps(args)
        est = weighted_sup(hg_epsilon_field(f, eps), 1, grid)
        return est, {**_map_inputs(args), "eps": _cnum(eps)}
    weight = 1 if kind == "pre" else 2
    if args.expr is not None:
        e = _target_expr(args)
        field = analytic_pre_schwarzian_field(e) if weight == 1 else analytic_schwarzian_field(e)
        return weighted_sup(field, weight, grid), {"expr": args.expr}
    f = _target_map(args)
    est = pre_schwarzian_norm(f, grid) if weight == 1 else schwarzian_norm(f, grid)
    return est, _map_inputs(args)


def _cmd_norm(args) -> int:
    grid = _grid(args)
    est, inputs = _norm_estimate(args, grid)
    report = {
        "subcommand": "norm",
        "kind": args.kind,
        "inputs": inputs,
        "value": _num(est.value),
        "argmax": _cnum(est.argmax),
        "diverged": est.diverged,
        "samples": est.samples,
        "failed_samples": est.failed_samples,
        "flagged": est.flagged,
        "grid": _grid_meta(grid),
    }
    _emit(report, args)
    return 0


def _run_check(args, grid: GridSpec) -> tuple[CheckReport, dict]:
    name = args.name
    if name == "becker":
        return becker_check(_target_expr(args), grid), {"expr": args.expr}
    if name == "nehari":
        return nehari_check(_target_expr(args), grid), {"expr": args.expr}
    if name == "schwarz-pick":
        if args.omega is None:
            raise UsageError("--name schwarz-pick needs --omega")
        try:
            omega = parse(args.omega)
        except ExprSyntaxError as exc:
            raise UsageError(f"bad expression: {exc}") from None
        return schwarz_pick_check(omega, grid), {"omega": args.omega}
    f = _target_map(args)
    inputs = _map_inputs(args)
    if name == "eps-univalence":
        eps = _require_eps(args)
        inputs["eps"] = _cnum(eps)
        return hg_epsilon_univalence_check(f, eps, grid), inputs
    if name == "norm-gap":
        return norm_gap_check(f, grid), inputs
    if name == "eps-norm-gap":
        eps = _require_eps(args)
        inputs["eps"] = _cnum(eps)
        return epsilon_norm_gap_check(f, eps, grid), inputs
    if name == "norm-bound":
        return pre_schwarzian_bound_check(f, grid), inputs
    if name == "starlike":
        return starlike_check(f, grid), inputs
    phi, report = associated_starlike(f, grid)
    report.extras["companion"] = unparse(phi)
    return report, inputs


def _cmd_check(args) -> int:
    grid = _grid(args)
    report, inputs = _run_check(args, grid)
    payload = {
        "subcommand": "check",
        "name": args.name,
        "inputs": inputs,
        "verdict": report.verdict,
        "worst_margin": _num(report.worst_margin) if report.worst_margin is not None else None,
        "worst_point": _cnum(report.worst_point) if report.worst_point is not None else None,
        "samples": report.samples,
        "detail": report.detail,
        "extras": _jsonable(report.extras),
        "grid": _grid_meta(grid),
    }
    _emit(payload, args)
    return 0 if report.verdict == "pass" else 1


def _cmd_fixtures(args) -> int:
    if args.action == "list":
        rows = [
            {"name": name, "description": load_fixture(name).description}
            for name in fixture_names()
        ]
        _emit({"subcommand": "fixtures", "action": "list", "rows": rows}, args)
        return 0
    if not args.name:
        raise UsageError("fixtures run needs a fixture name")
    try:
        result = run_fixture(args.name, _grid(args))
    except KeyError:
        raise UsageError(
            f"unknown fixture {args.name!r}; valid names: {', '.join(fixture_names())}"
        ) from None
    rows = [
        {
            "metric": r.metric,
            "arg": _cnum(r.arg) if r.arg is not None else None,
            "expected": _jsonable(r.expected),
            "computed": _jsonable(r.computed),
            "tol": r.tol,
            "relative": r.relative,
            "ok": r.ok,
            "source": r.source,
        }
        for r in result.rows
    ]
    payload = {
        "subcommand": "fixtures",
        "action": "run",
        "fixture": result.name,
        "passed": result.passed,
        "rows": rows,
        "grid": _grid_meta(_grid(args)),
    }
    _emit(payload, args)
    return 0 if result.passed else 1


def _cmd_render(args) -> int:
    if not args.output:
        raise UsageError("render needs --output for the image file")
    fmt = args.image_format
    if fmt is None:
        suffix = Path(args.output).suffix.lower()
        if suffix in (".ppm", ".csv"):
            fmt = suffix[1:]
        else:
            raise UsageError("cannot infer image format; pass --image-format csv|ppm")
    target = _target_expr(args) if args.expr is not None else _target_map(args)
    job = RenderJob(
        target=target,
        path=args.output,
        resolution=(args.radial_levels, args.angular),
        fmt=fmt,
        r_max=args.r_max,
        color_by_weighted_field=args.color_field,
    )
    summary = render_image(job)
    payload = {
        "subcommand": "render",
        "path": str(summary.path),
        "image_format": summary.fmt,
        "rows": summary.rows,
        "skipped": summary.skipped,
        "bounds": [_num(b) for b in summary.bounds],
        "max_abs": _num(summary.max_abs),
    }
    # the image went to --output; the summary always goes to stdout
    out = argparse.Namespace(format=args.format, output=None)
    _emit(payload, out)
    return 0


def _cmd_profile(args) -> int:
    weight = 1 if args.op == "preschwarzian" else 2
    if args.expr is not None:
        e = _target_expr(args)
        field = analytic_pre_schwarzian_field(e) if weight == 1 else analytic_schwarzian_field(e)
        inputs = {"expr": args.expr}
    else:
        f = _target_map(args)
        field = pre_schwarzian_field(f) if weight == 1 else schwarzian_field(f)
        inputs = _map_inputs(args)
    prof = radial_profile(field, weight, args.samples, args.r_max)
    payload = {
        "subcommand": "profile",
        "op": args.op,
        "inputs": inputs,
        "rows": [[r, v] for r, v in prof.rows],
        "monotone_tail": prof.monotone_tail,
        "boundary_estimate": _num(prof.boundary_estimate)
        if prof.boundary_estimate is not None
        else None,
    }
    _emit(payload, args)
    return 0


_DISPATCH = {
    "eval": _cmd_eval,
    "norm": _cmd_norm,
    "check": _cmd_check,
    "fixtures": _cmd_fixtures,
    "render": _cmd_render,
    "profile": _cmd_profile,
}


def _emit_error(kind: str, exc: Exception) -> None:
    err: dict = {"type": kind, "message": str(exc)}
    point = getattr(exc, "point", None)
    if point is not None:
        err["point"] = _cnum(point)
    sys.stderr.write(json.dumps({"error": err}) + "\n")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed its message; normalize the code
        return int(exc.code) if exc.code else 0
    try:
        return _DISPATCH[args.subcommand](args)
    except UsageError as exc:
        _emit_error("usage", exc)
        return 2
    except IoFailure as exc:
        _emit_error("IoFailure", exc)
        return 2
    except EvaluationError as exc:
        _emit_error(type(exc).__name__, exc)
        return 2
    except (ExprSyntaxError, ValueError, KeyError, OverflowError) as exc:
        _emit_error(type(exc).__name__, exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
