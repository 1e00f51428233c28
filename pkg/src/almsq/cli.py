"""Command-line surface.

Subcommands: certify, enumerate, scan, gaps, params, zeta, phi,
discrepancy, verify, measure. Every run can persist JSONL records
(--out), CSV tables (--csv), and rendered figures (--figdir); the JSONL
file starts with a manifest holding the config digest so reruns are
checkable byte-for-byte. ALMSQ_THREADS caps the worker pool.

Exit codes: 0 success, 2 invalid configuration, 3 infeasible scale,
4 internal precision failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .core import (
    AlmostSquareParams,
    AnalyticConfig,
    IntervalSpec,
    PrecisionError,
    ScaleError,
    choose_parameters,
)
from . import analytic, detector, figures, oracles, records, scanner
from .records import ResultLog, fmt17, write_csv

_ENUM_CHUNK = detector._ENUM_CHUNK_PAIRS


class ConfigError(Exception):
    """Invalid configuration file or flag values (exit code 2)."""


# --------------------------------------------------------------------------
# Configuration files
# --------------------------------------------------------------------------

def _pos(v):
    return v > 0


_SCHEMA = {
    # key: (type, validator or None)
    "theta": (float, lambda v: 0.0 <= v <= 0.5),
    "c": (float, _pos),
    "eps": (float, _pos),
    "seed": (int, lambda v: v >= 0),
    "samples": (int, lambda v: v >= 1),
    "n": (int, lambda v: v >= 1),
    "lo": (int, lambda v: v >= 1),
    "hi": (int, lambda v: v >= 1),
    "x": (float, _pos),
    "xs": (list, None),
    "span": (float, _pos),
    "mode": (str, lambda v: v in ("theorem", "corollary")),
    "preset": (str, lambda v: v in ("theorem", "corollary", "conjecture", "custom")),
    "coef": (float, _pos),
    "pow": (float, None),
    "logpow": (float, None),
    "u": (float, _pos),
    "l": (float, lambda v: v >= 0),
    "v": (float, lambda v: v >= 2),
    "t": (float, lambda v: v >= 2),
    "y": (float, _pos),
    "big_y": (float, _pos),
    "step": (float, _pos),
    "sigma": (float, lambda v: 0.0 <= v <= 1.0),
    "grid": (str, None),
    "lemma": (str, lambda v: v in ("1", "2", "3", "4", "mv", "all")),
    "method": (str, lambda v: v in ("midpoint", "exact")),
    "evaluator": (str, lambda v: v in ("em", "afe")),
    "t_grid": (list, None),
    "y_grid": (list, None),
}

_DEFAULTS = {"eps": 0.1, "seed": 0, "samples": 1000}


def normalize_config(cfg: dict) -> dict:
    """Validate keys and values, coerce numeric types, apply defaults."""
    out = dict(_DEFAULTS)
    for key, val in cfg.items():
        if key not in _SCHEMA:
            raise ConfigError(f"unknown config key: {key!r}")
        typ, check = _SCHEMA[key]
        try:
            if typ is list:
                val = [float(v) for v in val]
            else:
                val = typ(val)
        except (TypeError, ValueError):
            raise ConfigError(f"config key {key!r}: cannot coerce {val!r}")
        if check is not None and not check(val):
            raise ConfigError(f"config key {key!r}: invalid value {val!r}")
        out[key] = val
    return out


def load_config(path) -> dict:
    """Load, validate, and canonicalize a JSON config file."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot parse config {path}: {e}")
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    return normalize_config(raw)


def dump_config(cfg: dict) -> str:
    return records.canonical_json(cfg)


# --------------------------------------------------------------------------
# Shared assembly helpers
# --------------------------------------------------------------------------

def _effective(args, keys) -> dict:
    """Merge defaults <- config file <- explicit flags for the given keys."""
    cfg = dict(_DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(load_config(args.config))
    for key in keys:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return normalize_config({k: v for k, v in cfg.items() if k in _SCHEMA})


def _params(cfg) -> AlmostSquareParams:
    if "theta" not in cfg or "c" not in cfg:
        raise ConfigError("theta and c are required")
    return AlmostSquareParams(theta=cfg["theta"], c_coef=cfg["c"])


def _spec(cfg) -> IntervalSpec:
    preset = cfg.get("preset", "custom")
    if preset in ("theorem", "conjecture") and "theta" not in cfg:
        raise ConfigError(f"preset {preset!r} needs theta")
    if preset == "theorem":
        return IntervalSpec.theorem(cfg["theta"], cfg["eps"])
    if preset == "corollary":
        return IntervalSpec.corollary(cfg["eps"])
    if preset == "conjecture":
        return IntervalSpec.conjecture(cfg["theta"], cfg["eps"])
    if "coef" not in cfg or "pow" not in cfg:
        raise ConfigError("custom interval spec needs coef and pow")
    return IntervalSpec(cfg["coef"], cfg["pow"], cfg.get("logpow", 0.0))


def _analytic_cfg(cfg) -> AnalyticConfig:
    if "x" in cfg and not all(k in cfg for k in ("u", "l", "v", "t")):
        acfg, _ = choose_parameters(cfg["x"], _params(cfg), cfg["eps"])
        return acfg
    for k in ("u", "l", "v", "t"):
        if k not in cfg:
            raise ConfigError("need either x (+theta, c) or all of u, l, v, t")
    return AnalyticConfig(bigU=cfg["u"], bigL=cfg["l"], bigV=cfg["v"],
                          bigT=cfg["t"],
                          perron_c=cfg.get("perron_c", 1.0 + 1.0 / math.log(cfg["u"] ** 2 + 4.0)))


def _grid_values(raw: str) -> list[float]:
    """Inline JSON array, or a path to a JSON file holding one."""
    text = raw
    if not raw.lstrip().startswith("["):
        try:
            text = Path(raw).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read grid file {raw}: {e}")
    try:
        vals = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"grid is not valid JSON: {e}")
    if not isinstance(vals, list):
        raise ConfigError("grid must be a JSON array")
    return [float(v) for v in vals]


def _log(args, command: str, cfg: dict, chunk: int | None = None) -> ResultLog:
    return ResultLog(command=command, config=cfg, tool_version=__version__,
                     seed=int(cfg.get("seed", 0)), chunk_size=chunk)


def _flush(args, log: ResultLog):
    if getattr(args, "out", None):
        log.write(args.out)


def _figpath(args, name: str) -> str | None:
    figdir = getattr(args, "figdir", None)
    if not figdir:
        return None
    os.makedirs(figdir, exist_ok=True)
    return os.path.join(figdir, name)


def _print_table(header, rows):
    widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(header)]
    line = "  ".join(str(h).ljust(w) for h, w in zip(header, widths))
    print(line)
    print("-" * len(line))
    for r in rows:
        print("  ".join(str(v).ljust(w) for v, w in zip(r, widths)))


# --------------------------------------------------------------------------
# Subcommand handlers
# --------------------------------------------------------------------------

def cmd_certify(args) -> int:
    cfg = _effective(args, ("n", "theta", "c"))
    if "n" not in cfg:
        raise ConfigError("certify needs --n")
    params = _params(cfg)
    log = _log(args, "certify", cfg)
    w = detector.certify(cfg["n"], params)
    if w is None:
        log.add("witness", {"n": cfg["n"], "theta": cfg["theta"],
                            "c": cfg["c"], "found": False})
        print(f"n={cfg['n']}: no witness under theta={cfg['theta']}, C={cfg['c']}")
    else:
        log.add("witness", {"n": w.n, "a": w.a, "b": w.b,
                            "theta": cfg["theta"], "c": cfg["c"], "found": True})
        print(f"n={w.n}: witness {w.a} x {w.b}")
    _flush(args, log)
    return 0


def cmd_enumerate(args) -> int:
    cfg = _effective(args, ("lo", "hi", "theta", "c"))
    for k in ("lo", "hi"):
        if k not in cfg:
            raise ConfigError(f"enumerate needs --{k}")
    params = _params(cfg)
    log = _log(args, "enumerate", cfg, chunk=_ENUM_CHUNK)
    ws = detector.enumerate_range(cfg["lo"], cfg["hi"], params)
    for w in ws:
        log.add("witness", {"n": w.n, "a": w.a, "b": w.b,
                            "theta": cfg["theta"], "c": cfg["c"], "found": True})
    print(f"{len(ws)} almost squares in [{cfg['lo']}, {cfg['hi']}]")
    rows = [(w.n, w.a, w.b) for w in ws]
    if rows:
        _print_table(("n", "a", "b"), rows[:20])
        if len(rows) > 20:
            print(f"... ({len(rows) - 20} more)")
    if getattr(args, "csv", None):
        write_csv(args.csv, ("n", "a", "b"), rows)
    fp = _figpath(args, "enumerate_spread.png")
    if fp and ws:
        figures.save_eval_curve([w.n for w in ws], [w.b - w.a for w in ws], fp,
                                ylabel="factor spread b-a",
                                title="Witness factor spread")
    _flush(args, log)
    return 0


def _scan_one(cfg, big_x, workers=None) -> scanner.CoverageReport:
    sc = scanner.ScanConfig(
        bigX=big_x, params=_params(cfg), spec=_spec(cfg),
        span=cfg.get("span"), samples=cfg["samples"], seed=cfg["seed"],
        mode=cfg.get("mode", "theorem"))
    return scanner.coverage_scan(sc, workers)


def cmd_scan(args) -> int:
    cfg = _effective(args, ("x", "xs", "theta", "c", "eps", "span", "samples",
                            "seed", "mode", "preset", "coef", "pow", "logpow"))
    xs = cfg.get("xs") or ([cfg["x"]] if "x" in cfg else None)
    if not xs:
        raise ConfigError("scan needs --x or --xs")
    log = _log(args, "scan", cfg, chunk=_ENUM_CHUNK)
    results = []
    for big_x in xs:
        rep = _scan_one(cfg, float(big_x))
        results.append((float(big_x), rep))
        log.add("coverage", {
            "x": float(big_x),
            "sampled": rep.sampled,
            "exceptional": rep.exceptional,
            "exceptional_fraction": rep.exceptional_fraction,
            "max_gap": rep.max_gap,
            "gap_histogram": [list(r) for r in rep.gap_histogram],
        })
    rows = [(fmt17(x), r.sampled, r.exceptional, fmt17(r.exceptional_fraction),
             r.max_gap) for x, r in results]
    _print_table(("X", "sampled", "exceptional", "fraction", "max_gap"), rows)
    if getattr(args, "csv", None):
        write_csv(args.csv,
                  ("x", "sampled", "exceptional", "fraction", "max_gap"),
                  [(x, r.sampled, r.exceptional, r.exceptional_fraction,
                    -1 if r.max_gap is None else r.max_gap)
                   for x, r in results])
    fp = _figpath(args, "scan_trend.png")
    if fp:
        figures.save_trend([(x, r.exceptional_fraction) for x, r in results], fp)
    fp = _figpath(args, "scan_gaps.png")
    if fp and results[-1][1].gap_histogram:
        figures.save_gap_histogram(results[-1][1].gap_histogram, fp)
    _flush(args, log)
    return 0


def cmd_gaps(args) -> int:
    cfg = _effective(args, ("lo", "hi", "theta", "c"))
    for k in ("lo", "hi"):
        if k not in cfg:
            raise ConfigError(f"gaps needs --{k}")
    params = _params(cfg)
    log = _log(args, "gaps", cfg, chunk=_ENUM_CHUNK)
    max_gap, hist = scanner.gap_stats(cfg["lo"], cfg["hi"], params)
    log.add("gap", {"lo": cfg["lo"], "hi": cfg["hi"], "theta": cfg["theta"],
                    "c": cfg["c"], "max_gap": max_gap,
                    "gap_histogram": [list(r) for r in hist]})
    print(f"max gap {max_gap} over [{cfg['lo']}, {cfg['hi']}]")
    _print_table(("bucket_lo", "bucket_hi", "count"), hist)
    if getattr(args, "csv", None):
        write_csv(args.csv, ("bucket_lo", "bucket_hi", "count"), hist)
    fp = _figpath(args, "gap_histogram.png")
    if fp:
        figures.save_gap_histogram(hist, fp)
    _flush(args, log)
    return 0


def cmd_params(args) -> int:
    cfg = _effective(args, ("x", "theta", "c", "eps"))
    if "x" not in cfg:
        raise ConfigError("params needs --x")
    acfg, big_y = choose_parameters(cfg["x"], _params(cfg), cfg["eps"])
    log = _log(args, "params", cfg)
    payload = {"op": "choose_parameters", "x": cfg["x"], "theta": cfg["theta"],
               "c": cfg["c"], "eps": cfg["eps"], "u": acfg.bigU, "l": acfg.bigL,
               "v": acfg.bigV, "t": acfg.bigT, "y": big_y, "eta": acfg.eta,
               "perron_c": acfg.perron_c}
    log.add("eval", payload)
    rows = [(k, fmt17(v)) for k, v in payload.items() if k != "op"]
    _print_table(("parameter", "value"), rows)
    _flush(args, log)
    return 0


def cmd_zeta(args) -> int:
    cfg = _effective(args, ("evaluator", "sigma", "grid"))
    evaluator = cfg.get("evaluator", "em")
    if "grid" not in cfg:
        raise ConfigError("zeta needs --grid (JSON array or file)")
    ts = _grid_values(cfg["grid"])
    sigma = cfg.get("sigma", 0.5)
    log = _log(args, "zeta", cfg)
    rows = []
    for t in ts:
        if evaluator == "em":
            val = analytic.zeta_em(complex(sigma, t))
        else:
            val = analytic.zeta_afe(t)
        rows.append((t, val.real, val.imag, abs(val)))
        log.add("eval", {"evaluator": evaluator, "sigma": sigma, "t": t,
                         "re": val.real, "im": val.imag, "abs": abs(val)})
    _print_table(("t", "re", "im", "abs"),
                 [(fmt17(r[0]), fmt17(r[1]), fmt17(r[2]), fmt17(r[3]))
                  for r in rows[:20]])
    if len(rows) > 20:
        print(f"... ({len(rows) - 20} more)")
    if getattr(args, "csv", None):
        write_csv(args.csv, ("input", "re", "im", "abs"), rows)
    fp = _figpath(args, "zeta_grid.png")
    if fp:
        figures.save_eval_curve([r[0] for r in rows], [r[3] for r in rows], fp,
                                ylabel="|zeta|", title=f"{evaluator} evaluation")
    _flush(args, log)
    return 0


def cmd_phi(args) -> int:
    cfg = _effective(args, ("y", "y_grid", "u", "l", "v", "t",
                            "x", "theta", "c", "eps"))
    acfg = _analytic_cfg(cfg)
    if "y_grid" in cfg:
        ys = [float(v) for v in cfg["y_grid"]]
    elif "y" in cfg:
        ys = [cfg["y"]]
    else:
        raise ConfigError("phi needs --y or --y-grid")
    log = _log(args, "phi", cfg)
    rows = []
    for y in ys:
        p = analytic.phi_count(y, acfg)
        m = analytic.main_term(y, acfg)
        rows.append((y, p, m))
        log.add("eval", {"op": "phi", "y": y, "count": p, "main_term": m})
    _print_table(("y", "count", "main_term"),
                 [(fmt17(y), p, fmt17(m)) for y, p, m in rows[:20]])
    if len(rows) > 20:
        print(f"... ({len(rows) - 20} more)")
    if getattr(args, "csv", None):
        write_csv(args.csv, ("y", "count", "main_term"), rows)
    fp = _figpath(args, "phi_overlay.png")
    if fp:
        figures.save_phi_overlay([r[0] for r in rows], [r[1] for r in rows],
                                 [r[2] for r in rows], fp)
    _flush(args, log)
    return 0


def cmd_discrepancy(args) -> int:
    cfg = _effective(args, ("x", "big_y", "samples", "method",
                            "u", "l", "v", "t", "theta", "c", "eps"))
    if "x" not in cfg or "big_y" not in cfg:
        raise ConfigError("discrepancy needs --x and --big-y")
    acfg = _analytic_cfg(cfg)
    method = cfg.get("method", "midpoint")
    rep = analytic.discrepancy(cfg["x"], cfg["big_y"], acfg,
                               cfg["samples"], method=method)
    log = _log(args, "discrepancy", cfg)
    log.add("eval", {"op": "discrepancy", "x": cfg["x"], "y_len": cfg["big_y"],
                     "method": rep.method, "i_xy": rep.i_xy,
                     "main_term_sq": rep.main_term_sq,
                     "samples": rep.samples, "tolerance": rep.tolerance})
    _print_table(("quantity", "value"), [
        ("I_{X,Y}", fmt17(rep.i_xy)),
        ("main term squared", fmt17(rep.main_term_sq)),
        ("samples", rep.samples),
        ("method", rep.method),
        ("tolerance", "exact" if rep.tolerance == 0.0 else fmt17(rep.tolerance)),
    ])
    _flush(args, log)
    return 0


def _load_grid_file(path) -> oracles.LemmaGrid:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read grid file {path}: {e}")
    if not isinstance(raw, dict) or "points" not in raw:
        raise ConfigError("grid file must be a JSON object with 'points'")
    pts = tuple(tuple(p) for p in raw["points"])
    return oracles.LemmaGrid(points=pts, beta=float(raw.get("beta", 0.0)),
                             beta_range=tuple(raw.get("beta_range", (0.0, 1.0))))


def cmd_verify(args) -> int:
    cfg = _effective(args, ("lemma", "grid"))
    which = cfg.get("lemma", "all")
    checks = list(oracles.CHECKS) if which == "all" else [which]
    grid_arg = cfg.get("grid", "default")
    log = _log(args, "verify", cfg)
    all_rows = []
    for check in checks:
        grid = None if grid_arg == "default" else _load_grid_file(grid_arg)
        reports = oracles.run_check(check, grid)
        for rep in reports:
            log.add("bound", {"check": check,
                              "grid_point": list(rep.grid_point),
                              "lhs": rep.lhs, "bound": rep.bound,
                              "ratio": rep.ratio,
                              "terms": list(rep.terms)})
            all_rows.append((check, ";".join(fmt17(v) for v in rep.grid_point),
                             rep.lhs, rep.bound, rep.ratio))
        fp = _figpath(args, f"verify_ratios_{check}.png")
        if fp:
            figures.save_bound_ratios(reports, fp, title=f"check {check} ratios")
        max_ratio = max(r.ratio for r in reports)
        print(f"check {check}: {len(reports)} grid points, "
              f"max ratio {max_ratio:.6g}")
    if getattr(args, "csv", None):
        write_csv(args.csv, ("lemma", "grid_point", "lhs", "bound", "ratio"),
                  all_rows)
    _flush(args, log)
    return 0


def cmd_measure(args) -> int:
    cfg = _effective(args, ("x", "xs", "theta", "c", "eps"))
    xs = cfg.get("xs") or ([cfg["x"]] if "x" in cfg else None)
    if not xs:
        raise ConfigError("measure needs --x or --xs")
    params = _params(cfg)
    log = _log(args, "measure", cfg)
    rows, term_rows = [], []
    for big_x in xs:
        mb = oracles.measure_bound(float(big_x), params, cfg["eps"])
        flag = "vacuous at this scale" if mb.vacuous else "informative"
        rows.append((fmt17(float(big_x)), fmt17(mb.fraction), flag))
        term_rows.append(mb.terms)
        log.add("eval", {"op": "measure_bound", "x": float(big_x),
                         "terms": list(mb.terms), "total": mb.total,
                         "y": mb.big_y, "fraction": mb.fraction,
                         "vacuous": mb.vacuous})
        print(f"X={fmt17(float(big_x))}: predicted fraction "
              f"{fmt17(mb.fraction)} ({flag})")
        for i, tv in enumerate(mb.terms, 1):
            print(f"  term {i}: {fmt17(tv)}")
    if getattr(args, "csv", None):
        write_csv(args.csv, ("x", "fraction", "status"), rows)
    fp = _figpath(args, "measure_terms.png")
    if fp and len(xs) > 1:
        figures.save_measure_terms([float(x) for x in xs], term_rows, fp)
    _flush(args, log)
    return 0


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def _add_common(sp):
    sp.add_argument("--config", help="JSON config file with flag defaults")
    sp.add_argument("--out", help="write JSONL records to this path")
    sp.add_argument("--csv", help="write the result table as CSV")
    sp.add_argument("--figdir", help="render figures into this directory")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="almsq",
        description="Almost-square detection, coverage scans, and bound checks")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def new(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        _add_common(sp)
        return sp

    sp = new("certify", "certify a single integer")
    sp.add_argument("--n", type=int)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.set_defaults(func=cmd_certify)

    sp = new("enumerate", "enumerate almost squares in a range")
    sp.add_argument("--lo", type=int)
    sp.add_argument("--hi", type=int)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.set_defaults(func=cmd_enumerate)

    sp = new("scan", "interval-coverage scan")
    sp.add_argument("--x", type=float)
    sp.add_argument("--xs", type=lambda s: [float(v) for v in s.split(",")],
                    help="comma-separated X values (trend mode)")
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.add_argument("--eps", type=float)
    sp.add_argument("--span", type=float)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--mode", choices=("theorem", "corollary"))
    sp.add_argument("--preset", choices=("theorem", "corollary", "conjecture",
                                         "custom"))
    sp.add_argument("--coef", type=float)
    sp.add_argument("--pow", type=float)
    sp.add_argument("--logpow", type=float)
    sp.set_defaults(func=cmd_scan)

    sp = new("gaps", "gap statistics between almost squares")
    sp.add_argument("--lo", type=int)
    sp.add_argument("--hi", type=int)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.set_defaults(func=cmd_gaps)

    sp = new("params", "standard parameter choices at scale X")
    sp.add_argument("--x", type=float)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.add_argument("--eps", type=float)
    sp.set_defaults(func=cmd_params)

    sp = new("zeta", "evaluate zeta on a t grid")
    sp.add_argument("--evaluator", choices=("em", "afe"))
    sp.add_argument("--sigma", type=float)
    sp.add_argument("--grid", help="JSON array of t values, or a file path")
    sp.set_defaults(func=cmd_zeta)

    sp = new("phi", "window product counts and main term")
    sp.add_argument("--y", type=float)
    sp.add_argument("--y-grid", dest="y_grid",
                    type=lambda s: [float(v) for v in json.loads(s)],
                    help="JSON array of y values")
    sp.add_argument("--u", type=float)
    sp.add_argument("--l", type=float)
    sp.add_argument("--v", type=float)
    sp.add_argument("--t", type=float)
    sp.add_argument("--x", type=float, help="derive U,L,V,T at scale x")
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.add_argument("--eps", type=float)
    sp.set_defaults(func=cmd_phi)

    sp = new("discrepancy", "mean-square discrepancy over [X, X+Y]")
    sp.add_argument("--x", type=float)
    sp.add_argument("--big-y", dest="big_y", type=float)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--method", choices=("midpoint", "exact"))
    sp.add_argument("--u", type=float)
    sp.add_argument("--l", type=float)
    sp.add_argument("--v", type=float)
    sp.add_argument("--t", type=float)
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.add_argument("--eps", type=float)
    sp.set_defaults(func=cmd_discrepancy)

    sp = new("verify", "bound checks over grids")
    sp.add_argument("--lemma", choices=("1", "2", "3", "4", "mv", "all"))
    sp.add_argument("--grid", help="'default' or a JSON grid file")
    sp.set_defaults(func=cmd_verify)

    sp = new("measure", "predicted exceptional-measure fraction")
    sp.add_argument("--x", type=float)
    sp.add_argument("--xs", type=lambda s: [float(v) for v in s.split(",")])
    sp.add_argument("--theta", type=float)
    sp.add_argument("--C", dest="c", type=float)
    sp.add_argument("--eps", type=float)
    sp.set_defaults(func=cmd_measure)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ScaleError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except PrecisionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 4
    except (ValueError, OverflowError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
