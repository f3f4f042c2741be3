"""Command-line entry point: ``suslov <command> [options]``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure (artifacts
written up to the failure are kept).
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import List, Optional

import numpy as np

from . import analysis
from .errors import AmbiguousLocusError, ConfigError, InvalidInertiaError, SuslovError
from .model import (GENERIC, GENERIC_M0, SPECIAL, SPECIAL_M0, InertiaTensor, build_model,
                    reference_trajectory)

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3
COMMANDS = ("simulate", "order", "wp", "roots", "locus", "invariants", "recover")

PRESETS = {
    "generic": dict(inertia=GENERIC, M0=GENERIC_M0, eps=0.015, eps_list=(0.015, 0.03)),
    "special": dict(inertia=SPECIAL, M0=SPECIAL_M0, eps=0.007, eps_list=(0.007, 0.014)),
}

TRAJECTORY_COLUMNS = ["k", "t", "u", "v", "M1", "M2", "M3", "Ec", "rho", "invariant", "lambda"]


@dataclass
class RunConfig:
    scheme: str = "both"
    preset: str = "generic"
    inertia: Optional[List[float]] = None
    M0: Optional[List[float]] = None
    eps: Optional[float] = None
    eps_list: Optional[List[float]] = None
    T: float = 1.0
    seed: int = 0
    out: str = "out"
    plot: bool = False
    # command-specific
    M: List[float] = field(default_factory=lambda: [1.0, 1.0])
    n_samples: int = 1000
    degree: Optional[int] = None
    radius: float = 1.0
    with_attitude: bool = False

    @property
    def schemes(self):
        return ["mv", "cay"] if self.scheme == "both" else [self.scheme]

    def tensor(self):
        if self.inertia is None:
            return PRESETS[self.preset]["inertia"]
        return InertiaTensor(*self.inertia)

    def initial_momentum(self):
        return tuple(self.M0) if self.M0 is not None else PRESETS[self.preset]["M0"]

    def step(self):
        return self.eps if self.eps is not None else PRESETS[self.preset]["eps"]


CONFIG_FIELDS = {f.name for f in fields(RunConfig)}


def _real(name, x, positive=False):
    if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
        raise ConfigError(f"{name} must be a finite number, got {x!r}", name)
    if positive and not x > 0:
        raise ConfigError(f"{name} must be positive, got {x!r}", name)
    return float(x)


def _reals(name, xs, n=None, positive=False):
    if not isinstance(xs, (list, tuple)) or (n is not None and len(xs) != n) or not xs:
        raise ConfigError(f"{name} must be a list of {n or 'one or more'} numbers", name)
    return [_real(name, x, positive) for x in xs]


def validate(cfg):
    """Check every field before any computation starts."""
    if cfg.scheme not in ("mv", "cay", "both"):
        raise ConfigError(f"scheme must be mv, cay or both, got {cfg.scheme!r}", "scheme")
    if cfg.preset not in PRESETS:
        raise ConfigError(f"preset must be one of {sorted(PRESETS)}, got {cfg.preset!r}", "preset")
    if cfg.inertia is not None:
        cfg.inertia = _reals("inertia", cfg.inertia, 5)
        try:
            build_model(cfg.tensor())
        except InvalidInertiaError as exc:
            raise ConfigError(str(exc), "inertia") from exc
    if cfg.M0 is not None:
        cfg.M0 = _reals("M0", cfg.M0, 2)
    cfg.M = _reals("M", cfg.M, 2)
    if cfg.eps is not None:
        cfg.eps = _real("eps", cfg.eps, positive=True)
    if cfg.eps_list is not None:
        cfg.eps_list = _reals("eps_list", cfg.eps_list, positive=True)
    cfg.T = _real("T", cfg.T, positive=True)
    if cfg.T / cfg.step() > analysis.trajectory.MAX_STEPS:
        raise ConfigError("T/eps exceeds the step limit", "T")
    if isinstance(cfg.seed, bool) or not isinstance(cfg.seed, int) or not 0 <= cfg.seed < 2 ** 64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {cfg.seed!r}", "seed")
    if isinstance(cfg.n_samples, bool) or not isinstance(cfg.n_samples, int) or cfg.n_samples < 1:
        raise ConfigError("n_samples must be a positive integer", "n_samples")
    if cfg.degree is not None and (isinstance(cfg.degree, bool) or not isinstance(cfg.degree, int)
                                   or cfg.degree < 1):
        raise ConfigError("degree must be a positive integer", "degree")
    cfg.radius = _real("radius", cfg.radius, positive=True)
    if not isinstance(cfg.out, str) or not cfg.out:
        raise ConfigError("out must be a directory path", "out")
    for flag in ("plot", "with_attitude"):
        if not isinstance(getattr(cfg, flag), bool):
            raise ConfigError(f"{flag} must be true or false", flag)
    return cfg


def load_config(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}", "config") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}", "config") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object", "config")
    unknown = sorted(set(doc) - CONFIG_FIELDS)
    if unknown:
        raise ConfigError(f"unknown config key {unknown[0]!r}", unknown[0])
    return doc


def _eps_list_arg(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration; flags override its fields")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--scheme", choices=["mv", "cay", "both"])
    common.add_argument("--eps", type=float)
    common.add_argument("--eps-list", dest="eps_list", type=_eps_list_arg)
    common.add_argument("--T", type=float)
    common.add_argument("--seed", type=int)
    common.add_argument("--out")
    common.add_argument("--plot", action="store_true", default=None)
    parser = argparse.ArgumentParser(prog="suslov", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "simulate": "run trajectories and write one CSV per scheme",
        "order": "one-step error against eps, fitted order and eps^3 coefficient",
        "wp": "work-precision table over a list of step sizes",
        "roots": "count total and real step solutions at seeded states",
        "locus": "sample the momentum locus, tangency normal and growth along rays",
        "invariants": "per-step drift of the scheme invariant (R or Q)",
        "recover": "fit the vanishing polynomial of the locus and reconcile it",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name in ("roots",):
            sp.add_argument("--n-samples", dest="n_samples", type=int)
        if name == "recover":
            sp.add_argument("--degree", type=int)
        if name == "order":
            sp.add_argument("--M", nargs=2, type=float, metavar=("M1", "M2"))
        if name == "simulate":
            sp.add_argument("--with-attitude", dest="with_attitude", action="store_true", default=None)
    return parser


def resolve_config(args):
    doc = load_config(args.config) if args.config else {}
    for key in CONFIG_FIELDS:
        val = getattr(args, key, None)
        if val is not None:
            doc[key] = val
    try:
        cfg = RunConfig(**doc)
    except TypeError as exc:
        raise ConfigError(str(exc), "config") from exc
    return validate(cfg)


# --- output helpers ---------------------------------------------------------

def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    return "nan" if math.isnan(x) else repr(x)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\r\n")
        w.writerow(header)
        for r in rows:
            w.writerow([c if isinstance(c, str) else _fmt(c) for c in r])


def _trajectory_rows(traj):
    for r in traj.records:
        yield [r.k, r.t, r.u, r.v, r.M[0], r.M[1], r.M[2], r.Ec, r.rho, r.scheme_invariant, r.multiplier]
    if traj.failure is not None:
        f = traj.failure
        yield ["failure", f.kind, _fmt(f.step), _fmt(f.t)] + [""] * (len(TRAJECTORY_COLUMNS) - 4)


def _emit(summary):
    print(json.dumps(summary, indent=2, sort_keys=True, default=str))


# --- commands ---------------------------------------------------------------

def cmd_simulate(cfg, m, out):
    eps = cfg.step()
    M0 = cfg.initial_momentum()
    trajs, status = {}, EXIT_OK
    summary = {"eps": eps, "T": cfg.T, "M0": list(M0), "runs": {}}
    for s in cfg.schemes:
        traj = analysis.run_trajectory(s, m, M0, eps, cfg.T, with_attitude=cfg.with_attitude)
        trajs[s] = traj
        path = out / f"trajectory_{s}.csv"
        write_csv(path, TRAJECTORY_COLUMNS, _trajectory_rows(traj))
        info = {"csv": str(path), "steps": len(traj) - 1, "completed": traj.completed}
        if traj.failure is not None:
            info["failure"] = asdict(traj.failure)
            status = EXIT_NUMERIC
        elif len(traj) > 1:
            info["invariant_drift"] = analysis.invariant_drift(traj)
            info["phase_lead"] = analysis.phase_lead(traj, m)
        summary["runs"][s] = info
    if cfg.plot:
        from .plotting import save_svg, trajectory_figure
        t_end = max((tr.records[-1].t for tr in trajs.values() if tr.records), default=0.0)
        ref = None
        if t_end > 0:
            t = np.linspace(0.0, t_end, 401)
            ref = (t, reference_trajectory(m, M0, t))
        path = out / "trajectory.svg"
        save_svg(trajectory_figure(trajs, ref, title=f"{cfg.preset}, eps = {eps:g}"), path)
        summary["svg"] = str(path)
    _emit(summary)
    return status


def cmd_order(cfg, m, out):
    grid = cfg.eps_list if cfg.eps_list is not None else analysis.default_grid()
    reports, summary = {}, {"M": cfg.M}
    for s in cfg.schemes:
        rep = analysis.order_estimate(s, m, cfg.M, grid)
        reports[s] = rep
        path = out / f"order_{s}.csv"
        write_csv(path, ["eps", "err", "slope_running"],
                  zip(rep.eps_grid, rep.one_step_errors, rep.slope_running))
        summary[s] = {"csv": str(path), "slope": rep.fitted_slope,
                      "coefficient_smallest_eps": rep.leading_coefficient_estimate,
                      "coefficient_richardson": rep.richardson_limit,
                      "coefficient_analytic": rep.analytic_coefficient,
                      "coefficient_rel_error": rep.coefficient_rel_error}
    if cfg.plot:
        from .plotting import order_figure, save_svg
        save_svg(order_figure(reports), out / "order.svg")
    _emit(summary)
    return EXIT_OK


def cmd_wp(cfg, m, out):
    eps_list = cfg.eps_list if cfg.eps_list is not None else list(PRESETS[cfg.preset]["eps_list"])
    tables, summary = {}, {}
    for s in cfg.schemes:
        rows = analysis.work_precision(s, m, cfg.initial_momentum(), eps_list, cfg.T)
        tables[s] = rows
        path = out / f"wp_{s}.csv"
        write_csv(path, ["eps", "steps", "wall_ns", "global_err", "max_dEc", "max_rho"],
                  ([r.eps, r.steps, r.wall_ns, r.global_err, r.max_dEc, r.max_rho] for r in rows))
        summary[s] = {"csv": str(path),
                      "failures": {_fmt(r.eps): r.failure for r in rows if r.failure is not None}}
    if cfg.plot:
        from .plotting import save_svg, wp_figure
        save_svg(wp_figure(tables), out / "wp.svg")
    _emit(summary)
    return EXIT_OK


def cmd_roots(cfg, m, out):
    eps = cfg.eps if cfg.eps is not None else 0.1
    summary = {"eps": eps, "n_samples": cfg.n_samples, "seed": cfg.seed}
    for s in cfg.schemes:
        census = analysis.root_census(s, m, eps, cfg.n_samples, seed=cfg.seed, radius=cfg.radius)
        path = out / f"roots_{s}.csv"
        write_csv(path, ["sample", "n_total", "n_real"],
                  ([r.sample, r.n_total if r.degenerate is None else "",
                    r.n_real if r.degenerate is None else ""] for r in census.rows))
        hist = census.histogram()
        summary[s] = {"csv": str(path), "degenerate": len(census.rows) - len(census.valid),
                      "counts": {f"{a}/{b}": n for (a, b), n in sorted(hist.items())}}
    _emit(summary)
    return EXIT_OK


def cmd_locus(cfg, m, out):
    eps = cfg.step()
    summary = {"eps": eps}
    for s in cfg.schemes:
        ls = analysis.locus_sample(s, m, eps, radius=cfg.radius)
        path = out / f"locus_{s}.csv"
        write_csv(path, ["u", "v", "M1", "M2", "M3"],
                  ([g[0], g[1], p[0], p[1], p[2]] for g, p in zip(ls.grid, ls.points)))
        growth = analysis.ray_growth(s, m, eps)
        summary[s] = {"csv": str(path), "normal_at_origin": list(ls.normal_at_origin),
                      "normal_parallel_defect": analysis.parallel_defect(ls.normal_at_origin, m.normal),
                      "ray_radii": growth.radii, "ray_max_norm": growth.max_norm,
                      "growth_slope": growth.slope}
    _emit(summary)
    return EXIT_OK


def cmd_invariants(cfg, m, out):
    eps = cfg.step()
    trajs, summary, status = {}, {"eps": eps}, EXIT_OK
    for s in cfg.schemes:
        traj = analysis.run_trajectory(s, m, cfg.initial_momentum(), eps, cfg.T)
        trajs[s] = traj
        col = traj.column("scheme_invariant")
        path = out / f"invariants_{s}.csv"
        rows = []
        for i, r in enumerate(traj.records):
            change = col[i + 1] - col[i] if i + 1 < len(col) else math.nan
            rows.append([r.k, r.t, r.Ec, r.rho, r.scheme_invariant,
                         (r.scheme_invariant - col[0]) / abs(col[0]), change])
        write_csv(path, ["k", "t", "Ec", "rho", "invariant", "rel_drift", "step_change"], rows)
        summary[s] = {"csv": str(path), "invariant": analysis.get_scheme(s).invariant_name,
                      "completed": traj.completed,
                      "max_rel_drift": analysis.invariant_drift(traj) if len(traj) else None}
        if traj.failure is not None:
            summary[s]["failure"] = asdict(traj.failure)
            status = EXIT_NUMERIC
    if cfg.plot and any(len(t) for t in trajs.values()):
        from .plotting import invariant_figure, save_svg
        save_svg(invariant_figure({k: t for k, t in trajs.items() if len(t)}), out / "invariants.svg")
    _emit(summary)
    return status


def cmd_recover(cfg, m, out):
    eps = cfg.eps if cfg.eps is not None else 1.0
    summary, status = {"eps": eps}, EXIT_OK
    for s in cfg.schemes:
        try:
            coeffs, rep = analysis.recover_locus_polynomial(s, m, eps, cfg.degree, seed=cfg.seed)
        except AmbiguousLocusError as exc:
            summary[s] = {"error": str(exc), "nullspace_dimension": exc.dimension}
            status = EXIT_NUMERIC
            continue
        tr = analysis.transcribed_coefficients(s, m) or {}
        path = out / f"recover_{s}.csv"
        bad = {d.monomial for d in rep.discrepancies}
        write_csv(path, ["a", "b", "c", "fitted", "transcribed_unit_step", "discrepant"],
                  ([k[0], k[1], k[2], v, tr.get(k, 0.0) if rep.transcription_available else "",
                    "1" if k in bad else "0"] for k, v in coeffs.items()))
        rpath = out / f"recover_{s}_report.json"
        rdoc = asdict(rep)
        rdoc["agrees_with_transcription"] = rep.agrees_with_transcription
        rpath.write_text(json.dumps(rdoc, indent=2, sort_keys=True, default=str) + "\n")
        summary[s] = {"csv": str(path), "report": str(rpath), "nullity": rep.nullity,
                      "heldout_residual": rep.heldout_residual,
                      "discrepancies": len(rep.discrepancies)}
    _emit(summary)
    return status


HANDLERS = {"simulate": cmd_simulate, "order": cmd_order, "wp": cmd_wp, "roots": cmd_roots,
            "locus": cmd_locus, "invariants": cmd_invariants, "recover": cmd_recover}


def run_cli(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        cfg = resolve_config(args)
        m = build_model(cfg.tensor())
        out = Path(cfg.out)
        try:
            out.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ConfigError(f"cannot create output directory {out}: {exc.strerror}", "out") from exc
    except ConfigError as exc:
        print(f"suslov: configuration error in field '{exc.field}': {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return HANDLERS[args.command](cfg, m, out)
    except SuslovError as exc:
        print(f"suslov: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
