"""Command-line front end: solve, sweep, region and emit."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .domain import CaseKind, DegenerateConicError, DomainError, KPError, NoSolution, Params
from .pipeline import ROW_FIELDS, CaseResult, quadrature_nodes, result_row, solve_case, verify_case
from .shapes import emit_shape, to_svg

EXIT_OK = 0
EXIT_INADMISSIBLE = 2
EXIT_CONFIG = 3

PARAM_KEYS = ("alpha", "beta", "sigma", "area", "radius")
CONFIG_KEYS = set(PARAM_KEYS) | {"case", "a0", "sweep", "verify", "output", "n_nodes", "film_side"}
# keys written by `solve --format json`; tolerated on re-ingest
RESULT_KEYS = {"solution", "verification", "admissible", "error"}
SWEEP_PARAMS = ("sigma", "beta", "area", "radius")
DEFAULTS = {"alpha": 1.0, "beta": 1.0, "sigma": 1.0, "area": 10.0, "radius": 5.0}

log = logging.getLogger("kplateau")


class ConfigError(KPError):
    pass


def _line_of(text: str, key: str) -> int:
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return 1


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}:1: config must be a JSON object")
    for key, val in doc.items():
        where = f"{path}:{_line_of(text, key)}"
        if key not in CONFIG_KEYS and key not in RESULT_KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        if key in PARAM_KEYS or key == "a0":
            if val is not None and (isinstance(val, bool) or not isinstance(val, (int, float))):
                raise ConfigError(f"{where}: {key} must be a number")
        if key == "case":
            try:
                CaseKind.parse(val)
            except DomainError as exc:
                raise ConfigError(f"{where}: {exc}") from None
        if key == "n_nodes" and (not isinstance(val, int) or isinstance(val, bool)):
            raise ConfigError(f"{where}: n_nodes must be an integer")
        if key == "sweep":
            if not isinstance(val, dict) or val.get("param") not in SWEEP_PARAMS or "range" not in val:
                raise ConfigError(f"{where}: sweep needs {{\"param\": one of {SWEEP_PARAMS}, \"range\": \"LO:HI:N\"}}")
            try:
                parse_range(val["range"])
            except ConfigError as exc:
                raise ConfigError(f"{where}: {exc}") from None
    return {k: v for k, v in doc.items() if k in CONFIG_KEYS}


def parse_range(spec: str) -> np.ndarray:
    """LO:HI:N, or LO:HI (N = 11); LO == HI gives the single point LO."""
    parts = str(spec).split(":")
    if len(parts) not in (2, 3):
        raise ConfigError(f"bad range {spec!r}; expected LO:HI:N")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2]) if len(parts) == 3 else 11
    except ValueError:
        raise ConfigError(f"bad range {spec!r}; expected LO:HI:N") from None
    if lo == hi:
        return np.array([lo])
    if lo > hi or n < 2:
        raise ConfigError(f"bad range {spec!r}; need LO < HI and N >= 2")
    return np.linspace(lo, hi, n)


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % v


def rows_to_csv(rows, fields) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([_fmt(r[f]) for f in fields])
    return buf.getvalue()


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj) if math.isfinite(obj) else None
    return obj


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _gather(args) -> dict:
    """Merge config file (if any) with CLI flags; flags win."""
    cfg = load_config(args.config) if getattr(args, "config", None) else {}
    for key in PARAM_KEYS + ("a0",):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    if getattr(args, "case", None):
        cfg["case"] = args.case
    if getattr(args, "verify", False):
        cfg["verify"] = True
    if getattr(args, "film_side", None):
        cfg["film_side"] = args.film_side
    if "case" not in cfg:
        raise ConfigError("no case given; use --case or a config with \"case\"")
    for key, val in DEFAULTS.items():
        cfg.setdefault(key, val)
    return cfg


def _params(cfg: dict) -> Params:
    try:
        return Params(*(float(cfg[k]) for k in PARAM_KEYS))
    except DomainError as exc:
        raise ConfigError(str(exc)) from None


def _output_spec(cfg: dict, args, default: str = "json"):
    out = cfg.get("output") or {}
    if isinstance(out, str):
        out = {"path": out}
    fmt = args.format or out.get("format") or default
    path = args.out or out.get("path")
    return fmt, path


def cmd_solve(args) -> int:
    cfg = _gather(args)
    params = _params(cfg)
    fmt, path = _output_spec(cfg, args)
    result = solve_case(cfg["case"], params, a0=cfg.get("a0"), film_side=cfg.get("film_side", "long"))
    if result.error:
        log.error("%s", result.error)
    if fmt == "json":
        doc = {"case": result.case.value, **params.as_dict()}
        if result.a0 is not None:
            doc["a0"] = result.a0
        doc["admissible"] = result.admissible
        doc["solution"] = result.solution_dict()
        if result.error:
            doc["error"] = result.error
        if cfg.get("verify"):
            doc["verification"] = verify_case(result, quadrature_nodes(cfg.get("n_nodes")))
        _write(json.dumps(_json_safe(doc), indent=2) + "\n", path)
    elif fmt == "csv":
        _write(rows_to_csv([result_row(result)], ROW_FIELDS[result.case]), path)
    elif fmt == "svg":
        if result.solution is None:
            return EXIT_INADMISSIBLE
        samples = emit_shape(result, ("section",), allow_inadmissible=True)
        _write(to_svg(samples), path)
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    return EXIT_OK if result.admissible else EXIT_INADMISSIBLE


def cmd_sweep(args) -> int:
    cfg = _gather(args)
    sweep = cfg.get("sweep") or {}
    param = args.param or sweep.get("param")
    spec = args.range or sweep.get("range")
    if param not in SWEEP_PARAMS or spec is None:
        raise ConfigError("sweep needs --param {sigma,beta,area,radius} and --range LO:HI:N")
    values = parse_range(spec)
    base = _params(cfg)
    case = CaseKind.parse(cfg["case"])
    try:
        grid = [base.replace(**{param: float(v)}) for v in values]
    except DomainError as exc:
        raise ConfigError(str(exc)) from None

    def one(p):
        try:
            res = solve_case(case, p, a0=cfg.get("a0"), film_side=cfg.get("film_side", "long"), with_xi=False)
        except DegenerateConicError as exc:
            res = CaseResult(case, p, None, False, error=str(exc))
        return result_row(res)

    jobs = max(1, args.jobs)
    if jobs == 1:
        rows = [one(p) for p in grid]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(one, grid))
    fmt, path = _output_spec(cfg, args, default="csv")
    if fmt == "csv":
        _write(rows_to_csv(rows, ROW_FIELDS[case]), path)
    elif fmt == "json":
        _write(json.dumps(_json_safe(rows), indent=2) + "\n", path)
    else:
        raise ConfigError(f"sweep supports csv or json output, not {fmt!r}")
    return EXIT_OK


REGION_FIELDS = ["sigma", "area", "area_ratio", "tau", "admissible", "a", "b", "n_intersections"]


def cmd_region(args) -> int:
    if CaseKind.parse(args.case) is not CaseKind.OVAL:
        raise ConfigError("region maps the oval case only")
    sigmas = parse_range(args.sigma_range)
    areas = parse_range(args.area_range)
    rows = []
    for s in sigmas:
        for area in areas:
            try:
                p = Params(args.alpha, args.beta, float(s), float(area), args.radius)
            except DomainError as exc:
                raise ConfigError(str(exc)) from None
            res = solve_case(CaseKind.OVAL, p, with_xi=False)
            sol = res.solution
            rows.append({
                "sigma": p.sigma,
                "area": p.area,
                "area_ratio": p.area / (math.pi * p.radius**2),
                "tau": result_row(res)["tau"],
                "admissible": res.admissible,
                "a": sol.a if sol else math.nan,
                "b": sol.b if sol else math.nan,
                "n_intersections": sol.n_intersections if sol else math.nan,
            })
    _write(rows_to_csv(rows, REGION_FIELDS), args.out)
    return EXIT_OK


def cmd_emit(args) -> int:
    cfg = _gather(args)
    params = _params(cfg)
    result = solve_case(cfg["case"], params, a0=cfg.get("a0"), film_side=cfg.get("film_side", "long"),
                        with_xi=False)
    shapes = args.shape or ["section"]
    try:
        samples = emit_shape(result, shapes, n_section=args.samples, allow_inadmissible=args.allow_inadmissible)
    except NoSolution as exc:
        log.error("%s", exc)
        return EXIT_INADMISSIBLE
    fmt = args.format or "svg"
    if fmt == "svg":
        _write(to_svg(samples), args.out)
    elif fmt == "json":
        _write(json.dumps([s.as_dict() for s in samples]) + "\n", args.out)
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "index", "x", "y", "z"])
        for s in samples:
            for i, pt in enumerate(s.points):
                z = pt[2] if len(pt) == 3 else 0.0
                w.writerow([s.kind, i, _fmt(pt[0]), _fmt(pt[1]), _fmt(z)])
        _write(buf.getvalue(), args.out)
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    return EXIT_OK


def _add_params(p: argparse.ArgumentParser, sweep: bool = False) -> None:
    p.add_argument("--case", choices=[c.value for c in CaseKind])
    p.add_argument("--config", help="flat JSON config; command-line flags override it")
    for key in PARAM_KEYS:
        p.add_argument(f"--{key}", type=float)
    p.add_argument("--a0", type=float, help="base semi-axis for the dilation case (default: ellipse a_bar)")
    p.add_argument("--film-side", choices=["long", "short"], dest="film_side")
    p.add_argument("--out", "-o", help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kplateau", description="Planar Kirchhoff-Plateau critical points.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one parameter set")
    _add_params(p)
    p.add_argument("--format", choices=["json", "csv", "svg"])
    p.add_argument("--verify", action="store_true", help="check stationarity of the sampled functional")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="solve along one parameter")
    _add_params(p)
    p.add_argument("--param", choices=SWEEP_PARAMS)
    p.add_argument("--range", help="LO:HI:N")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--jobs", "-j", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("region", help="admissibility map over (sigma, area)")
    p.add_argument("--case", default="oval")
    p.add_argument("--sigma-range", required=True)
    p.add_argument("--area-range", required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("emit", help="sample shapes of a solution")
    _add_params(p)
    p.add_argument("--shape", action="append", choices=["section", "midline", "film", "tube"])
    p.add_argument("--format", choices=["svg", "json", "csv"])
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--allow-inadmissible", action="store_true")
    p.set_defaults(func=cmd_emit)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NoSolution as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INADMISSIBLE


if __name__ == "__main__":
    sys.exit(main())
