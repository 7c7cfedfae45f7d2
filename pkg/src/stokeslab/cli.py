"""Command-line front end.

Subcommands
-----------
counterexample  norm tables, the divergent partial sums and profile certificates
divsolve        solve ``div u = g`` with zero boundary values for a serialized ``g``
stokes          solve the Stokes problem with prescribed divergence
verify          run a property check for every module and print a pass/fail matrix

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage or input errors.  Every CSV file gets a ``.meta.json`` sidecar with
the configuration; neither contains timestamps, so identical
configurations give identical files.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time as _time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .boundary import BoundaryTrace, lift_parts
from .counterexample import (
    CounterexampleSetup,
    profile_certificate,
    boundary_divergence_check,
    divergence_demonstration,
    norm_table,
    system_residual,
)
from .disc import (
    SCALAR,
    VECTOR,
    DiscField,
    DiscGrid,
    SpaceTimeField,
    SpaceTimeGrid,
    divergence,
    integrate_disc,
    laplacian,
    load_field,
    save_field,
)
from .divsolve import solve_div
from .elliptic import solve_dirichlet
from .localization import (
    CutoffProfile,
    IterationInstance,
    iteration_lemma,
    young_split,
)
from .norms import NormOrder, dual_norm, poincare_constant
from .stokes import (
    ProblemData,
    energy_history,
    smooth_problem,
    solve_stokes,
    solve_stokes_homogeneous,
)

PROFILE_MODES = (1, 2, 5, 10, 50, 200)

DEFAULT_TOLERANCES = {
    "profile": 0.0,
    "boundary_divergence": 1e-6,
    "system_residual": 1e-6,
    "quadrature": 1e-8,
    "mean_band": 0.01,
    "residual_div": 1e-4,
    "boundary": 1e-4,
}


class UsageError(Exception):
    """Bad flags or unreadable input (exit status 2)."""


@dataclass
class RunConfig:
    """Parsed command-line configuration."""

    command: str
    n_r: int = 96
    n_theta: int = 16
    n_t: int = 32
    modes: int = 60
    eps: float = 0.0
    order: NormOrder = field(default_factory=NormOrder)
    out: Path = Path(".")
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    seed: int = 0

    def tol(self, name):
        return self.tolerances[name]

    def to_dict(self):
        return {
            "command": self.command,
            "n_r": self.n_r,
            "n_theta": self.n_theta,
            "n_t": self.n_t,
            "modes": self.modes,
            "eps": self.eps,
            "s": self.order.s,
            "l": self.order.l,
            "tolerances": dict(sorted(self.tolerances.items())),
            "seed": self.seed,
            "version": __version__,
        }


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def write_csv(path, header, rows, config, extra=None):
    """Write a CSV file and its ``.meta.json`` sidecar."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    path = Path(path)
    path.write_text(buf.getvalue())
    meta = {"file": path.name, "columns": list(header), "config": config.to_dict()}
    if extra:
        meta.update(extra)
    Path(str(path) + ".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return path


def write_text(path, text):
    Path(path).write_text(text if text.endswith("\n") else text + "\n")


@dataclass
class CheckResult:
    module: str
    name: str
    value: float
    limit: float
    passed: bool

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.module:<15} {self.name:<36} value={self.value:.3e} limit={self.limit:.3e}"


def _check(module, name, value, limit, passed=None):
    value = float(value)
    return CheckResult(module, name, value, float(limit), bool(value <= limit) if passed is None else bool(passed))


def _report_checks(checks, stream=None):
    stream = sys.stdout if stream is None else stream
    for c in checks:
        print(c.line(), file=stream)
    failed = [c for c in checks if not c.passed]
    if failed:
        print("failed checks: " + ", ".join(f"{c.module}.{c.name}" for c in failed), file=stream)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# counterexample
# ---------------------------------------------------------------------------

def cmd_counterexample(config):
    setup = CounterexampleSetup(N=config.modes, eps=config.eps, n_r=config.n_r, n_t=config.n_t)
    out = config.out
    rep = norm_table(setup)
    names = list(rep.series)
    rows = [[n + 1] + [rep.series[k][n] for k in names] for n in range(setup.N)]
    write_csv(out / "norm_table.csv", ["N"] + names, rows, config,
              {"description": "partial sums over modes n <= N of squared norms on (-1, -eps)"})

    demo = divergence_demonstration(setup)
    rows = [[int(n), c, s, m] for n, c, s, m in zip(demo["N"], demo["closed"], demo["partial_sums"], demo["mean"])]
    write_csv(out / "divergence.csv", ["N", "I_N", "S_N", "S_N_over_N"], rows, config,
              {"description": "per-mode integral of |d_t grad psi_n|^2 / (2 pi) over (-1/3, 0) and its partial sums"})

    certs = [profile_certificate(n) for n in PROFILE_MODES]
    cols = ["n", "exact_boundary_values", "value_error", "slope_error", "support_ok",
            "strictly_between_0_and_1", "c_first", "c_second", "constant", "passed"]
    write_csv(out / "alpha_checks.csv", cols, [[c[k] for k in cols] for c in certs], config)

    checks = [
        _check("counterexample", "layer_profiles", sum(not c["passed"] for c in certs), config.tol("profile")),
        _check("counterexample", "profile_constant", max(c["constant"] for c in certs), 10.0),
        _check("counterexample", "boundary_divergence", boundary_divergence_check(setup)[0],
               config.tol("boundary_divergence")),
        _check("counterexample", "system_residual", max(system_residual(setup)), config.tol("system_residual")),
        _check("counterexample", "quadrature_vs_closed_form", float(np.max(demo["quadrature_rel_error"])),
               config.tol("quadrature")),
        _check("counterexample", "partial_sums_increasing", float(np.any(np.diff(demo["partial_sums"]) <= 0)), 0.0),
        _check("counterexample", "mean_below_one_sixth", 1.0 / 6.0 - demo["mean"][-1], config.tol("mean_band"),
               passed=0.0 <= 1.0 / 6.0 - demo["mean"][-1] <= config.tol("mean_band")),
        _check("counterexample", "convergent_norms_finite",
               float(not all(np.isfinite(v) for _, v in rep.items())), 0.0),
    ]
    return _report_checks(checks)


# ---------------------------------------------------------------------------
# div solver
# ---------------------------------------------------------------------------

def _example_divergence(grid, n):
    return DiscField.from_function(grid, lambda r, th: r**n * np.sin(n * th))


def cmd_divsolve(config, input_path=None, example=2):
    grid = DiscGrid(config.n_r, config.n_theta)
    if input_path is not None:
        g = _load(input_path)
        if not isinstance(g, DiscField) or g.rank != SCALAR:
            raise UsageError("divsolve needs a scalar DiscField as input")
    else:
        if example > grid.n_theta:
            raise UsageError("--example exceeds the angular resolution")
        g = _example_divergence(grid, example)
    sol = solve_div(g, config.order)
    save_field(sol.u, config.out / "u.json")
    rep = sol.report
    rep.add("residual_div", sol.residual_div)
    rep.add("residual_boundary", sol.residual_boundary)
    write_text(config.out / "report.json", rep.to_json())
    rows = [[k, kind, v] for kind, d in (("norm", rep.values), ("ratio", rep.ratios)) for k, v in d.items()]
    write_csv(config.out / "report.csv", ["name", "kind", "value"], rows, config)
    checks = [
        _check("div-solver", "residual_div", sol.residual_div, config.tol("residual_div")),
        _check("div-solver", "residual_boundary", sol.residual_boundary, config.tol("boundary")),
    ]
    return _report_checks(checks)


# ---------------------------------------------------------------------------
# stokes
# ---------------------------------------------------------------------------

def _load(path):
    try:
        return load_field(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read field from {path}: {exc}") from exc


def cmd_stokes(config, f_path=None, g_path=None, generator="smooth", scheme="cn"):
    if f_path or g_path:
        if not (f_path and g_path):
            raise UsageError("--f and --g must be given together")
        f, g = _load(f_path), _load(g_path)
        if not isinstance(f, SpaceTimeField) or not isinstance(g, SpaceTimeField):
            raise UsageError("stokes needs space-time fields for f and g")
        try:
            data = ProblemData(f, g, config.order)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        grid = DiscGrid(config.n_r, config.n_theta)
        time = SpaceTimeGrid(0.0, 1.0, config.n_t)
        if generator == "zero":
            data = ProblemData.zeros(grid, time, config.order)
        else:
            data = smooth_problem(grid, time, config.seed, config.order)
    sol = solve_stokes(data, scheme)
    save_field(sol.v, config.out / "v.json")
    save_field(sol.p, config.out / "p.json")
    write_text(config.out / "report.json", sol.report.to_json())
    rows = [[k, kind, v] for kind, d in (("norm", sol.report.values), ("ratio", sol.report.ratios))
            for k, v in d.items()]
    write_csv(config.out / "report.csv", ["name", "kind", "value"], rows, config)
    checks = [
        _check("stokes", "div_residual_max", sol.report["div_residual_max"], config.tol("residual_div")),
        _check("stokes", "boundary_max", sol.report["boundary_max"], config.tol("boundary")),
    ]
    return _report_checks(checks)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_disc():
    grid = DiscGrid(24, 8)
    u = DiscField.from_cartesian(grid, lambda x, y: (x**3 * y, x * y**2))
    # Delta (x^3 y, x y^2) = (6 x y, 2 x)
    ref = DiscField.from_cartesian(grid, lambda x, y: (6 * x * y, 2 * x))
    return [_check("disc-core", "vector_laplacian_exact", integrate_disc(laplacian(u) - ref), 1e-9)]


def _verify_elliptic():
    grid = DiscGrid(32, 8)
    exact = DiscField.from_function(grid, lambda r, th: (1 - r**2) * r**3 * np.cos(3 * th))
    g = DiscField.from_function(grid, lambda r, th: -16 * r**3 * np.cos(3 * th))
    err = integrate_disc(solve_dirichlet(g).potential - exact)
    return [_check("elliptic", "dirichlet_polynomial", err, 1e-10)]


def _verify_norms():
    grid = DiscGrid(32, 8)
    g = DiscField.from_function(grid, lambda r, th: r**2 * np.cos(2 * th) + r * np.sin(th))
    ratio = dual_norm(g) / (poincare_constant() * integrate_disc(g))
    return [_check("norms", "dual_norm_below_poincare", ratio, 1.0)]


def _verify_boundary():
    grid = DiscGrid(64, 16)
    flux = BoundaryTrace.from_function(lambda th: np.cos(5 * th), 16)
    w = lift_parts(flux, grid).w
    # on the circle the lift equals -flux times the outer normal
    radial, angular = w.boundary()
    mismatch = float(np.max(np.abs(radial + flux.coeffs)) + np.max(np.abs(angular)))
    return [
        _check("boundary-ops", "lift_divergence_free", integrate_disc(divergence(w)), 1e-6),
        _check("boundary-ops", "lift_boundary_identity", mismatch, 1e-4),
    ]


def _verify_divsolve():
    grid = DiscGrid(64, 16)
    sol = solve_div(_example_divergence(grid, 2))
    return [
        _check("div-solver", "residual_div", sol.residual_div, 1e-4),
        _check("div-solver", "residual_boundary", sol.residual_boundary, 1e-4),
    ]


def _verify_stokes():
    grid = DiscGrid(64, 6)
    time = SpaceTimeGrid(0.0, 0.5, 16)
    u0 = DiscField.from_cartesian(grid, lambda x, y: (-y * (1 - x * x - y * y) ** 2, x * (1 - x * x - y * y) ** 2))
    hom = solve_stokes_homogeneous(SpaceTimeField.zeros(grid, time, VECTOR), initial=u0, report=False)
    energy, _ = energy_history(hom.v)
    increase = float(np.max(np.diff(energy), initial=0.0))
    sol = solve_stokes(smooth_problem(grid, time, 0))
    ratio = sol.report.ratios.get("estimate", np.inf)
    return [
        _check("stokes", "energy_nonincreasing", max(increase, 0.0), 1e-12),
        _check("stokes", "estimate_ratio_finite", ratio, 1e3, passed=np.isfinite(ratio) and ratio > 0),
    ]


def _verify_counterexample():
    setup = CounterexampleSetup(N=20, n_r=32)
    demo = divergence_demonstration(setup)
    return [
        _check("counterexample", "layer_profiles",
               sum(not profile_certificate(n)["passed"] for n in PROFILE_MODES), 0.0),
        _check("counterexample", "boundary_divergence", boundary_divergence_check(setup)[0], 1e-6),
        _check("counterexample", "system_residual", max(system_residual(setup)), 1e-6),
        _check("counterexample", "quadrature_vs_closed_form", float(np.max(demo["quadrature_rel_error"])), 1e-8),
    ]


def _verify_localization():
    prof = CutoffProfile(0.5, 0.8)
    declared, measured = prof.declared_bounds(), prof.measured_bounds()
    spread = max(max(declared[k] / measured[k], measured[k] / declared[k]) for k in declared)
    dominance, series_gap = 0.0, 0.0
    for a in (1, 2, 4):
        inst = IterationInstance.from_function(lambda x, a=a: 1.0 / (1.0 - x) ** a, 0.5, 1.0, 1.0, a, 2.0 ** (-a - 1))
        res = iteration_lemma(inst, 0.5, 1.0)
        dominance = max(dominance, res.sampled / res.bound)
        series_gap = max(series_gap, abs(res.constant - res.constant_summed) / res.constant)
    lhs, rhs = young_split(1.0, 1.0, 2.0, 0.5)
    return [
        _check("localization", "cutoff_bounds_within_factor_2", spread, 2.0),
        _check("localization", "iteration_bound_dominates", dominance, 1.0),
        _check("localization", "iteration_constant_series", series_gap, 1e-10),
        _check("localization", "young_split", lhs - rhs, 0.0),
    ]


VERIFY_SUITES = (
    ("disc-core", _verify_disc),
    ("elliptic", _verify_elliptic),
    ("norms", _verify_norms),
    ("boundary-ops", _verify_boundary),
    ("div-solver", _verify_divsolve),
    ("stokes", _verify_stokes),
    ("counterexample", _verify_counterexample),
    ("localization", _verify_localization),
)


def cmd_verify(config):
    checks = []
    rows = []
    for name, suite in VERIFY_SUITES:
        start = _time.perf_counter()
        try:
            result = suite()
        except Exception as exc:  # a crashing suite is a failed check, not a crash of the runner
            result = [CheckResult(name, f"raised {type(exc).__name__}", np.nan, np.nan, False)]
        elapsed = _time.perf_counter() - start
        checks.extend(result)
        print(f"{name}: {sum(c.passed for c in result)}/{len(result)} passed in {elapsed:.2f} s")
        rows.extend([c.module, c.name, c.value, c.limit, c.passed] for c in result)
    config.out.mkdir(parents=True, exist_ok=True)
    write_csv(config.out / "verify.csv", ["module", "check", "value", "limit", "passed"], rows, config)
    return _report_checks(checks)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_tol(items):
    tol = dict(DEFAULT_TOLERANCES)
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or name not in tol:
            raise UsageError(f"--tol expects NAME=VALUE with NAME in {sorted(tol)}, got {item!r}")
        try:
            tol[name] = float(value)
        except ValueError as exc:
            raise UsageError(f"--tol value for {name} is not a number: {value!r}") from exc
    return tol


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-r", type=int, default=96, help="radial Gauss nodes (default 96)")
    common.add_argument("--n-theta", type=int, default=16, help="highest Fourier mode (default 16)")
    common.add_argument("--n-t", type=int, default=32, help="time steps (default 32)")
    common.add_argument("--modes", type=int, default=60, help="counterexample truncation N (default 60)")
    common.add_argument("--eps", type=float, default=0.0, help="counterexample end time -eps, in [0, 1/3)")
    common.add_argument("--s", type=float, default=2.0, help="spatial exponent (default 2)")
    common.add_argument("--l", type=float, default=2.0, help="temporal exponent (default 2)")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="override a tolerance")
    common.add_argument("--seed", type=int, default=0, help="seed for generated problem families")

    parser = argparse.ArgumentParser(prog="stokeslab", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("counterexample", parents=[common], help="norm tables and divergent partial sums")
    p = sub.add_parser("divsolve", parents=[common], help="solve div u = g with u = 0 on the circle")
    p.add_argument("--input", type=Path, help="scalar DiscField JSON; default g = r^n sin(n theta)")
    p.add_argument("--example", type=int, default=2, help="n for the built-in example (default 2)")
    p = sub.add_parser("stokes", parents=[common], help="solve the Stokes problem")
    p.add_argument("--f", type=Path, help="vector SpaceTimeField JSON")
    p.add_argument("--g", type=Path, help="scalar SpaceTimeField JSON")
    p.add_argument("--generator", choices=("smooth", "zero"), default="smooth")
    p.add_argument("--scheme", choices=("cn", "euler"), default="cn")
    sub.add_parser("verify", parents=[common], help="run every module's property checks")
    return parser


def config_from_args(args):
    try:
        order = NormOrder(args.s, args.l)
        if args.n_r < 2 or args.n_theta < 1 or args.n_t < 3 or args.modes < 1:
            raise UsageError("need n_r >= 2, n_theta >= 1, n_t >= 3 and modes >= 1")
        if not 0.0 <= args.eps < 1.0 / 3.0:
            raise UsageError(f"--eps must lie in [0, 1/3), got {args.eps}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return RunConfig(args.command, args.n_r, args.n_theta, args.n_t, args.modes, args.eps, order,
                     args.out, _parse_tol(args.tol), args.seed)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        config.out.mkdir(parents=True, exist_ok=True)
        if args.command == "counterexample":
            return cmd_counterexample(config)
        if args.command == "divsolve":
            return cmd_divsolve(config, args.input, args.example)
        if args.command == "stokes":
            return cmd_stokes(config, args.f, args.g, args.generator, args.scheme)
        return cmd_verify(config)
    except UsageError as exc:
        print(f"stokeslab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
