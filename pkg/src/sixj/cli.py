"""Command-line front end: single symbols, sweeps and diagnostics.

    sixj --j1 2 --j2 3 --j3 4 --j4 5 --j12 4 --j23 5 --mode all
    sixj sweep --j1 2 --j2 3 --j3 4 --j4 5 --j12 4 --sweep j23 --from 3 --to 7
    sixj diag symbol --j 20 --j2x 40

Settings are layered: flags, then SIXJ_* environment variables, then an
INI-style key=value file given by --config, then built-in defaults.
Exit codes: 0 success, 2 invalid input, 3 solver failure, 4 failed check.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import checks
from .errors import CausticDivergence, SixJError, SolverError, ValidationError
from .exact import SixJArguments, as_spin, sixj_exact
from .tetra import QUAD_TOL
from .dsphere import ROOT_TOL
from .uniform import ponzano_regge_estimate, uniform_sixj

EXIT_OK, EXIT_VALIDATION, EXIT_SOLVER, EXIT_DIAG = 0, 2, 3, 4

DEFAULTS = {"quad_tol": QUAD_TOL, "root_tol": ROOT_TOL, "threads": 1, "seed": 0}
_CASTS = {"quad_tol": float, "root_tol": float, "threads": int, "seed": int}

SWEEP_COLUMNS = ("exact", "uniform", "pr", "abs_err_uniform", "abs_err_pr", "beta", "classification", "flag")
SIXJ_COLUMNS = ("mode", "value", "beta", "amplitude", "gamma_parity", "classification", "residual", "flag")
DIAG_KINDS = ("schlafli", "symbol", "bracket", "alpha", "airy")


# ---------------------------------------------------------------------------
# settings


def read_config(path):
    """key = value pairs; a section header is optional."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text if text.lstrip().startswith("[") else "[sixj]\n" + text)
    except configparser.Error as exc:
        raise ValidationError(f"bad config file {path}: {exc}") from exc
    out = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            out[key.replace("-", "_")] = value
    return out


def resolve_settings(flags: dict, environ=None, config_path=None) -> dict:
    """Merge flags > environment > config file > defaults."""
    environ = os.environ if environ is None else environ
    layers = [dict(DEFAULTS)]
    if config_path:
        layers.append(read_config(config_path))
    layers.append({k: environ[f"SIXJ_{k.upper()}"] for k in DEFAULTS if f"SIXJ_{k.upper()}" in environ})
    layers.append({k: v for k, v in flags.items() if v is not None})
    merged = {}
    for layer in layers:
        merged.update({k: v for k, v in layer.items() if k in DEFAULTS})
    try:
        settings = {k: _CASTS[k](v) for k, v in merged.items()}
    except ValueError as exc:
        raise ValidationError(f"bad setting: {exc}") from exc
    if settings["quad_tol"] <= 0 or settings["root_tol"] <= 0 or settings["threads"] < 1:
        raise ValidationError("tolerances must be positive and threads at least 1")
    return settings


def parse_spin(text: str) -> Fraction:
    """Accepts "3", "3.5" or "7/2"."""
    return as_spin(text.strip())


# ---------------------------------------------------------------------------
# computations


def _num(x):
    return None if x is None or not math.isfinite(x) else float(x)


def compute_records(args: SixJArguments, mode: str, settings: dict) -> list[dict]:
    """One record per requested mode; solver errors propagate."""
    modes = ("exact", "uniform", "pr") if mode == "all" else (mode,)
    recs = []
    for md in modes:
        rec = {c: None for c in SIXJ_COLUMNS}
        rec["mode"] = md
        if md == "exact":
            rec["value"] = sixj_exact(args)
        elif md == "pr":
            rec["value"] = ponzano_regge_estimate(args)
        else:
            r = uniform_sixj(args, tol=settings["quad_tol"], root_tol=settings["root_tol"])
            rec.update(value=r.value, beta=r.beta, amplitude=r.amplitude, gamma_parity=r.gamma_parity,
                       classification=r.classification.value, residual=r.residual)
            if r.experimental:
                rec["flag"] = "experimental"
        recs.append(rec)
    return recs


def sweep_row(args: SixJArguments, variable: str, settings: dict) -> dict:
    """One sweep row; solver failures become empty cells plus a flag."""
    row = {variable: int(getattr(args, variable)) if getattr(args, variable).denominator == 1
           else str(getattr(args, variable))}
    row.update({c: None for c in SWEEP_COLUMNS})
    flags = []
    row["exact"] = sixj_exact(args)
    try:
        r = uniform_sixj(args, tol=settings["quad_tol"], root_tol=settings["root_tol"])
        row.update(uniform=r.value, beta=r.beta, classification=r.classification.value)
        if r.experimental:
            flags.append("experimental")
    except SolverError as exc:
        flags.append(f"uniform:{type(exc).__name__}")
    try:
        row["pr"] = ponzano_regge_estimate(args)
    except CausticDivergence:
        flags.append("pr:CausticDivergence")
    if row["uniform"] is not None:
        row["abs_err_uniform"] = abs(row["uniform"] - row["exact"])
    if row["pr"] is not None:
        row["abs_err_pr"] = abs(row["pr"] - row["exact"])
    row["flag"] = ";".join(flags) or None
    return row


def sweep(base: dict, variable: str, lo, hi, settings: dict) -> list[dict]:
    """Rows for variable = lo..hi in steps of one, in that order."""
    other = "j23" if variable == "j12" else "j12"
    if base.get(other) is None:
        raise ValidationError(f"--{other} is required when sweeping {variable}")
    b = SixJArguments(**{**base, variable: _first_valid(base, variable)}).bounds
    vmin, vmax = (b.j12_min, b.j12_max) if variable == "j12" else (b.j23_min, b.j23_max)
    lo = vmin if lo is None else lo
    hi = vmax if hi is None else hi
    if lo < vmin or hi > vmax or lo > hi or (lo - vmin).denominator != 1:
        raise ValidationError(f"sweep range [{lo}, {hi}] outside the triangle bounds [{vmin}, {vmax}]")
    values = [lo + k for k in range(int(hi - lo) + 1)]
    argsets = [SixJArguments(**{**base, variable: v}) for v in values]
    with ThreadPoolExecutor(max_workers=settings["threads"]) as pool:
        return list(pool.map(lambda a: sweep_row(a, variable, settings), argsets))


def _first_valid(base, variable):
    from .exact import intermediate_bounds

    b = intermediate_bounds(base["j1"], base["j2"], base["j3"], base["j4"])
    return b.j12_min if variable == "j12" else b.j23_min


# ---------------------------------------------------------------------------
# output


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return "%.17g" % v if math.isfinite(v) else ""
    return str(v)


def to_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _json_row(r):
    out = {}
    bad = []
    for k, v in r.items():
        if isinstance(v, float) and not math.isfinite(v):
            bad.append(k)
        elif v is not None:
            out[k] = v
    if bad:
        out["flag"] = ";".join(filter(None, [out.get("flag"), "non_finite:" + ",".join(bad)]))
    return out


def to_json(meta, rows) -> str:
    return json.dumps({"meta": meta, "rows": [_json_row(r) for r in rows]},
                      indent=2, allow_nan=False) + "\n"


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing


def _common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write to this file instead of stdout")
    p.add_argument("--quad-tol", type=float)
    p.add_argument("--root-tol", type=float)
    p.add_argument("--threads", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--config", help="INI-style key = value file")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sixj", description="Wigner 6j-symbols, exact and uniform.")
    for name in ("j1", "j2", "j3", "j4", "j12", "j23"):
        p.add_argument(f"--{name}", type=str)
    p.add_argument("--mode", choices=("exact", "uniform", "pr", "all"), default="all")
    p.add_argument("--sweep", choices=("j12", "j23"), help="sweep this label instead of a single symbol")
    p.add_argument("--from", dest="lo", type=str)
    p.add_argument("--to", dest="hi", type=str)
    _common(p)
    return p


def build_diag_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sixj diag", description="Numerical self-checks.")
    p.add_argument("kind", choices=DIAG_KINDS)
    p.add_argument("--j", type=int, default=20, help="lower spin scale for the two-scale checks")
    p.add_argument("--j2x", type=int, default=40, help="upper spin scale for the two-scale checks")
    p.add_argument("--shape", default="2,3,4,5", help="spin ratios j1,j2,j3,j4")
    p.add_argument("--samples", type=int, default=50)
    _common(p)
    return p


def _settings(ns):
    flags = {"quad_tol": ns.quad_tol, "root_tol": ns.root_tol, "threads": ns.threads, "seed": ns.seed}
    return resolve_settings(flags, config_path=ns.config)


def run_diag(ns) -> int:
    settings = _settings(ns)
    shape = tuple(int(s) for s in ns.shape.split(","))
    if ns.kind == "schlafli":
        rep = checks.schlafli_check(n=ns.samples, seed=settings["seed"])
    elif ns.kind == "symbol":
        rep = checks.symbol_convergence(shape, ns.j, ns.j2x)
    elif ns.kind == "bracket":
        rep = checks.bracket_scaling(shape, ns.j, ns.j2x)
    elif ns.kind == "alpha":
        rep = checks.alpha_check()
    else:
        rep = checks.airy_check()
    if ns.format == "json":
        text = json.dumps({"meta": {"kind": ns.kind},
                           "rows": [_json_row({"check": rep.name, "passed": rep.passed, **rep.measured})]},
                          indent=2, allow_nan=False) + "\n"
    else:
        text = rep.line() + "\n"
    _emit(text, ns.out)
    return EXIT_OK if rep.passed else EXIT_DIAG


def run_main(ns) -> int:
    settings = _settings(ns)
    spins = {k: None if getattr(ns, k) is None else parse_spin(getattr(ns, k))
             for k in ("j1", "j2", "j3", "j4", "j12", "j23")}
    missing = [k for k in ("j1", "j2", "j3", "j4") if spins[k] is None]
    if missing:
        raise ValidationError("missing --" + ", --".join(missing))
    meta = {"spins": {k: str(v) for k, v in spins.items() if v is not None},
            "quad_tol": settings["quad_tol"], "root_tol": settings["root_tol"]}
    if ns.sweep:
        lo = None if ns.lo is None else parse_spin(ns.lo)
        hi = None if ns.hi is None else parse_spin(ns.hi)
        rows = sweep({k: v for k, v in spins.items() if k != ns.sweep}, ns.sweep, lo, hi, settings)
        columns = (ns.sweep,) + SWEEP_COLUMNS
        meta["sweep"] = ns.sweep
    else:
        if spins["j12"] is None or spins["j23"] is None:
            raise ValidationError("--j12 and --j23 are required unless --sweep is given")
        rows = compute_records(SixJArguments(**spins), ns.mode, settings)
        columns = SIXJ_COLUMNS
        meta["mode"] = ns.mode
    _emit(to_json(meta, rows) if ns.format == "json" else to_csv(rows, columns), ns.out)
    return EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        if argv and argv[0] == "diag":
            return run_diag(build_diag_parser().parse_args(argv[1:]))
        if argv and argv[0] == "sweep":
            argv = argv[1:]
            if "--sweep" not in argv:
                argv += ["--sweep", "j23"]
        elif argv and argv[0] == "sixj":
            argv = argv[1:]
        return run_main(build_parser().parse_args(argv))
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SolverError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except SixJError as exc:  # pragma: no cover
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
