"""Command-line interface.

Subcommands::

    balldesign design --model logit --k 3 --beta0 0.1 --beta1 1
    balldesign sweep  --model logit --k 3 --beta1 1 --steps 201 --out sweep.csv
    balldesign verify design.json
    balldesign region --model logit --k 6 --beta1 1

Options may also come from a JSON file given with ``--config``; flags on
the command line take precedence.  Exit status: 0 success, 2 configuration
error, 3 solver failure, 4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import exact
from .canonical import Region, reduce, to_canonical_points
from .errors import (ConfigurationError, ContractViolation, NumericDomainError,
                     SolverFailure)
from .geometry import BallDesign
from .information import sensitivity_check
from .intensity import BUILTIN_NAMES, builtin_model, load_tabulated

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_VERIFY = 0, 2, 3, 4

DEFAULTS = {
    "model": "logit", "k": None, "beta0": 0.0, "beta1": 1.0, "beta": None,
    "region_center": None, "region_matrix": None, "region_radius": None,
    "strategies": ",".join(exact.STRATEGIES), "steps": 201, "range": None,
    "out": None, "format": None, "seed": None, "grid": 10000, "workers": 1,
    "evaluate": exact.ORBIT,
}


def _floats(text):
    if isinstance(text, (list, tuple)):
        return [float(v) for v in text]
    return [float(v) for v in str(text).replace(",", " ").split()]


def load_model(name):
    """Built-in model name or ``tabulated:<path>``."""
    if name.startswith("tabulated:"):
        return load_tabulated(name.split(":", 1)[1])
    return builtin_model(name)


def _region(cfg, k):
    if cfg["region_center"] is None and cfg["region_matrix"] is None \
            and cfg["region_radius"] is None:
        return None
    center = np.zeros(k) if cfg["region_center"] is None else np.array(_floats(cfg["region_center"]))
    if center.size != k:
        raise ConfigurationError(f"region center has {center.size} entries, expected {k}")
    if cfg["region_matrix"] is not None:
        vals = _floats(cfg["region_matrix"])
        if len(vals) != k * k:
            raise ConfigurationError(f"region matrix needs {k * k} entries (row-major)")
        return Region(center, np.array(vals).reshape(k, k))
    radius = 1.0 if cfg["region_radius"] is None else float(cfg["region_radius"])
    if radius <= 0:
        raise ConfigurationError("region radius must be positive")
    return Region.ball(center, radius)


def _beta(cfg):
    if cfg["beta"] is not None:
        beta = np.array(_floats(cfg["beta"]))
        if cfg["k"] is not None and beta.size != cfg["k"] + 1:
            raise ConfigurationError(f"--beta has {beta.size} entries, expected k+1")
        return beta
    if cfg["k"] is None:
        raise ConfigurationError("give --k (with --beta0/--beta1) or --beta")
    if cfg["k"] < 1:
        raise ConfigurationError("k must be at least 1")
    beta = np.zeros(cfg["k"] + 1)
    beta[0], beta[1] = cfg["beta0"], cfg["beta1"]
    return beta


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _design_payload(model_name, beta, sol, report, region):
    payload = {
        "model": model_name,
        "k": sol.problem.k,
        "beta": beta.tolist(),
        "case": sol.marginal.case.value,
        "points": sol.design.records(),
        "report": {"residual": sol.marginal.residual, "iterations": sol.marginal.iterations},
        "sensitivity": {"max": report.max_value, "pass": report.passed},
    }
    if region is not None:
        payload["region"] = {"center": region.center.tolist(), "matrix": region.matrix.tolist()}
    return payload


def cmd_design(cfg):
    model = load_model(cfg["model"])
    beta = _beta(cfg)
    region = _region(cfg, beta.size - 1)
    sol = exact.optimal_design(model, beta, region, cfg["seed"])
    report = sensitivity_check(sol.canonical, model, sol.problem.beta, n_grid=cfg["grid"])
    _emit(_dump(_design_payload(cfg["model"], beta, sol, report, region)), cfg["out"])
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_sweep(cfg):
    model = load_model(cfg["model"])
    if cfg["k"] is None:
        raise ConfigurationError("sweep needs --k")
    strategies = [s.strip() for s in str(cfg["strategies"]).split(",") if s.strip()]
    rng = None if cfg["range"] is None else tuple(_floats(cfg["range"]))
    if rng is not None and len(rng) != 2:
        raise ConfigurationError("--range needs two values LO HI")
    rows = exact.efficiency_sweep(model, cfg["k"], float(cfg["beta1"]), rng, int(cfg["steps"]),
                                  strategies, workers=int(cfg["workers"]),
                                  evaluate=cfg["evaluate"])
    if (cfg["format"] or "csv") == "json":
        text = _dump([dict(zip(exact.CSV_HEADER, r.as_list())) for r in rows])
    else:
        text = exact.write_sweep_csv(rows)
    _emit(text, cfg["out"])
    return EXIT_OK


def read_design(path):
    """Parse a design JSON file into ``(payload, BallDesign)``."""
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        pts = np.array([p["x"] for p in payload["points"]], dtype=float)
        w = np.array([p["w"] for p in payload["points"]], dtype=float)
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise ConfigurationError(f"cannot read design file {path}: {exc}") from exc
    return payload, BallDesign(pts, w, check_ball=False)


def cmd_verify(cfg):
    if not cfg.get("design_file"):
        raise ConfigurationError("verify needs a design file")
    payload, design = read_design(cfg["design_file"])
    model_name = cfg["model_flag"] or payload.get("model", DEFAULTS["model"])
    model = load_model(model_name)
    beta = np.array(_floats(cfg["beta"]) if cfg["beta"] is not None else payload["beta"])
    region = None
    if "region" in payload and _region(cfg, beta.size - 1) is None:
        region = Region(payload["region"]["center"], payload["region"]["matrix"])
    else:
        region = _region(cfg, beta.size - 1)
    prob = reduce(beta, region)
    canon = BallDesign(to_canonical_points(design.points, prob), design.weights)
    report = sensitivity_check(canon, model, prob.beta, n_grid=cfg["grid"])
    out = report.as_dict()
    out.update({"model": model_name, "k": prob.k, "bound": report.bound,
                "n_points": report.n_points})
    _emit(_dump(out), cfg["out"])
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_region(cfg):
    model = load_model(cfg["model"])
    if cfg["k"] is None:
        raise ConfigurationError("region needs --k")
    from .marginal import region_boundaries
    lo, hi = region_boundaries(model, cfg["k"], float(cfg["beta1"]))
    if cfg["format"] == "json":
        text = _dump({"model": cfg["model"], "k": cfg["k"], "beta1": float(cfg["beta1"]),
                      "lo": lo, "hi": hi})
    else:
        text = f"{lo:.3f} {hi:.3f}\n"
    _emit(text, cfg["out"])
    return EXIT_OK


COMMANDS = {"design": cmd_design, "sweep": cmd_sweep, "verify": cmd_verify, "region": cmd_region}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values (flags override it)")
    common.add_argument("--model", help=f"one of {', '.join(BUILTIN_NAMES)} or tabulated:<path>")
    common.add_argument("--k", type=int, help="dimension of the design region")
    common.add_argument("--beta0", type=float, help="intercept (with --beta1)")
    common.add_argument("--beta1", type=float, help="slope along the first axis")
    common.add_argument("--beta", help="full parameter vector, comma separated")
    common.add_argument("--region-center", help="ellipsoid center, comma separated")
    common.add_argument("--region-matrix", help="ellipsoid matrix B, row-major, comma separated")
    common.add_argument("--region-radius", type=float, help="ball radius (instead of a matrix)")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--format", choices=["json", "csv"], help="output format")
    common.add_argument("--seed", type=int, help="seed for random simplex orientations")
    common.add_argument("--grid", type=int, help="sphere sample size for the sensitivity check")

    parser = argparse.ArgumentParser(prog="balldesign",
                                     description="Locally D-optimal designs on the k-ball.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("design", parents=[common], help="compute an optimal design")
    sw = sub.add_parser("sweep", parents=[common], help="efficiency sweep over -beta0")
    sw.add_argument("--strategies", help=f"comma list from {', '.join(exact.STRATEGIES)}")
    sw.add_argument("--steps", type=int, help="number of -beta0 grid points")
    sw.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"),
                    help="-beta0 range (default: the two-orbit region)")
    sw.add_argument("--workers", type=int, help="threads for the sweep")
    sw.add_argument("--evaluate", choices=list(exact.EVALUATIONS),
                    help="orbit-level or exact efficiency of split designs")
    vf = sub.add_parser("verify", parents=[common], help="check a design file for D-optimality")
    vf.add_argument("design_file", help="design JSON as written by 'design'")
    sub.add_parser("region", parents=[common], help="ends of the two-orbit region in -beta0")
    return parser


def resolve_config(args):
    """Merge defaults, the optional config file and command-line flags."""
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                file_cfg = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ConfigurationError(f"cannot read config {args.config}: {exc}") from exc
        unknown = set(file_cfg) - set(DEFAULTS)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    flags = {k: v for k, v in vars(args).items() if v is not None}
    cfg["model_flag"] = flags.get("model")
    cfg.update(flags)
    if cfg["k"] is not None:
        cfg["k"] = int(cfg["k"])
    return cfg


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigurationError, ContractViolation, KeyError) as exc:
        print(f"balldesign: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SolverFailure, NumericDomainError) as exc:
        print(f"balldesign: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
