"""Command-line interface: mode generation, verification, radial solving.

Subcommands: ``mode``, ``verify``, ``radial``, ``hydrogen``, ``distance``.
Outputs are deterministic: JSON fields are emitted in fixed order with
shortest round-trip float representation (<= 17 significant digits), CSV
numbers carry 10 significant digits.  Result files are written to a
``.partial`` path and renamed only on success, so an interrupted run never
leaves a complete-looking file behind.

Exit codes: 0 success, 1 verification failed tolerance, 2 invalid
configuration or domain error, 3 solver or convergence failure.

The environment variable FISHER_MODES_SEED is reserved for future
stochastic features and is currently unused.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import (
    BlowUpError,
    CoordinateSingularityError,
    EvanescentModeError,
    HorizonDomainError,
    NearHorizonError,
    NonFiniteSampleError,
    NormalizationError,
    QuadratureConvergenceError,
    UnsupportedIndexError,
)
from .fisher import constraint_check, fisher_matrix, statistical_distance
from .geometry import MetricSpec
from .hydrogen import HydrogenState, appendix_fisher_check, default_domain
from .modes import (
    LocalizationConstraint,
    ModeSpec,
    make_free_mode,
    make_localized_mode,
    mode_record,
)
from .quadrature import Domain
from .schwarzschild import RadialProblem, near_horizon_start, solve_radial
from .specfun import AngularIndex

_CONFIG_ERRORS = (
    ValueError,
    HorizonDomainError,
    CoordinateSingularityError,
    UnsupportedIndexError,
    EvanescentModeError,
    NormalizationError,
)
_SOLVER_ERRORS = (
    QuadratureConvergenceError,
    NearHorizonError,
    BlowUpError,
    NonFiniteSampleError,
)


def _fmt10(x) -> str:
    return f"{float(x):.10g}"


def _write_text(path: str, text: str):
    partial = path + ".partial"
    with open(partial, "w") as fh:
        fh.write(text)
    os.replace(partial, path)


def _write_json(path: str, obj):
    _write_text(path, json.dumps(obj, indent=2) + "\n")


def _write_csv(path: str, header_lines, columns, names):
    lines = list(header_lines)
    lines.append(",".join(names))
    for row in zip(*columns):
        lines.append(",".join(_fmt10(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def _domain_from_args(args) -> Domain:
    return Domain(0.0, args.rmax, n_r=args.nodes_r, n_theta=args.nodes_theta,
                  n_phi=args.nodes_phi)


def _build_mode(args):
    idx = AngularIndex(args.ell, args.m)
    if args.family == "free":
        spec = ModeSpec(eta=args.eta, idx=idx, alpha_sq=args.alpha_sq,
                        beta=0.0, n_radial=args.n)
        return make_free_mode(spec, _domain_from_args(args))
    sigma = args.sigma_r if args.sigma_r is not None else float(np.sqrt(3.0 / (2.0 * args.beta)))
    spec = ModeSpec(eta=args.eta, idx=idx, alpha_sq=args.alpha_sq,
                    beta=args.beta, n_radial=args.n)
    return make_localized_mode(spec, LocalizationConstraint(sigma_r=sigma))


def cmd_mode(args) -> int:
    mode = _build_mode(args)
    record = mode_record(mode)
    _write_json(args.output + ".json", record)
    r = np.linspace(mode.domain.r_min, mode.domain.r_max, args.samples)
    radial = mode.spec.norm * _radial_profile(mode, r)
    _write_csv(
        args.output + ".csv",
        [f"# family={mode.spec.family} eta={mode.spec.eta} ell={mode.spec.idx.ell} "
         f"m={mode.spec.idx.m} alpha_sq={mode.spec.alpha_sq} beta={mode.spec.beta} "
         f"n_radial={mode.spec.n_radial} norm={mode.spec.norm}"],
        [r, radial],
        ["r", "R"],
    )
    print(f"mode written: {args.output}.json, {args.output}.csv "
          f"(alpha_sq={_fmt10(mode.spec.alpha_sq)}, norm={_fmt10(mode.spec.norm)})")
    return 0


def _radial_profile(mode, r):
    """Radial factor R(r)/norm sampled on r (phase-free real profile).

    Evaluates on a fixed polar ray and divides out the known angular factor;
    falls back to theta = pi/3 when the equator is an angular node.
    """
    from .geometry import CoordPoint
    from .specfun import spherical_harmonic

    theta = np.pi / 2
    y_ray = spherical_harmonic(mode.spec.idx, theta, 0.0)
    if abs(y_ray) < 1e-12:
        theta = np.pi / 3
        y_ray = spherical_harmonic(mode.spec.idx, theta, 0.0)
    p = CoordPoint(tau=0.0, r=r, theta=theta, phi=0.0)
    return mode.evaluator(p).real / (y_ray.real * mode.spec.norm)


def cmd_verify(args) -> int:
    if args.hydrogen is not None:
        n, ell, m = args.hydrogen
        state = HydrogenState(int(n), AngularIndex(int(ell), int(m)), a=args.a)
        report = appendix_fisher_check(state)
        rows = []
        ok = True
        for res in report.results:
            entry = {
                "coordinate": res.coord,
                "computed": res.lhs,
                "multiplier_rhs": res.rhs,
                "residual": res.residual,
                "paper_value": res.paper_value,
                "paper_residual": res.paper_residual,
            }
            rows.append(entry)
            ok = ok and abs(res.residual) <= args.tol
            if res.paper_residual is not None:
                ok = ok and abs(res.paper_residual) <= args.tol
        payload = {
            "state": {"n": state.n, "ell": state.idx.ell, "m": state.idx.m, "a": state.a},
            "norm": report.norm,
            "rows": rows,
            "metric_identity_holds": report.metric_identity_holds,
            "tolerance": args.tol,
            "pass": ok,
        }
        _write_json(args.output, payload)
        print(f"hydrogen verification: {'PASS' if ok else 'FAIL'} (report: {args.output})")
        return 0 if ok else 1

    mode = _build_mode(args)
    rep = fisher_matrix(mode, tol=args.tol)
    constraints = constraint_check(mode, tol=args.tol)
    payload = rep.to_json_dict()
    payload["constraints"] = [
        {"coordinate": c.coord, "lhs": c.lhs, "rhs": c.rhs,
         "residual": c.residual, "pass": c.passed}
        for c in constraints
    ]
    ok = rep.passed and all(c.passed for c in constraints)
    payload["pass"] = ok
    payload["tolerance"] = args.tol
    _write_json(args.output, payload)
    print(f"mode verification: {'PASS' if ok else 'FAIL'} (report: {args.output})")
    return 0 if ok else 1


def cmd_radial(args) -> int:
    metric = MetricSpec.schwarzschild(args.rs) if args.rs > 0 else MetricSpec.minkowski()
    if args.near_horizon_delta is not None:
        r_start = args.rs * (1.0 + args.near_horizon_delta)
        probe = RadialProblem(metric, args.eta, args.ell, args.alpha_sq,
                              r_start, args.rend, 1.0, 0.0)
        v0, s0 = near_horizon_start(probe, args.near_horizon_delta)
    else:
        r_start, v0, s0 = args.rstart, args.init_value, args.init_slope
    prob = RadialProblem(metric, args.eta, args.ell, args.alpha_sq,
                         r_start, args.rend, v0, s0)
    sol = solve_radial(prob, args.rtol)
    header = (
        f"# rs={_fmt10(args.rs)} eta={_fmt10(args.eta)} ell={args.ell} "
        f"alpha_sq={_fmt10(args.alpha_sq)} r_start={_fmt10(r_start)} "
        f"r_end={_fmt10(args.rend)} init_value={_fmt10(np.real(v0))} "
        f"init_slope={_fmt10(np.real(s0))} rel_tol={_fmt10(args.rtol)}"
    )
    _write_csv(args.output, [header],
               [sol.grid, np.real(sol.values), np.real(sol.slopes), np.real(sol.residuals)],
               ["r", "R", "dR_dr", "residual"])
    print(f"radial solution written: {args.output} "
          f"(n={sol.grid.size}, max_residual={_fmt10(sol.max_residual)})")
    return 0


def cmd_hydrogen(args) -> int:
    state = HydrogenState(args.n, AngularIndex(args.ell, args.m), a=args.a)
    report = appendix_fisher_check(state, default_domain(state))
    names = ["state", "integral", "paper_value", "computed", "residual"]
    rows = []
    for res in report.results:
        paper = res.paper_value if res.paper_value is not None else float("nan")
        rows.append((f"{state.n}{state.idx.ell}{state.idx.m}", res.coord,
                     paper, res.lhs, res.residual))
    if args.format == "json":
        payload = {
            "state": {"n": state.n, "ell": state.idx.ell, "m": state.idx.m, "a": state.a},
            "rows": [
                {"integral": res.coord, "paper_value": res.paper_value,
                 "computed": res.lhs, "multiplier_rhs": res.rhs, "residual": res.residual}
                for res in report.results
            ],
        }
        _write_json(args.output, payload)
    else:
        lines = []
        for row in rows:
            lines.append(",".join([row[0], row[1]] + [_fmt10(v) for v in row[2:]]))
        _write_text(args.output, ",".join(names) + "\n" + "\n".join(lines) + "\n")
    for row in rows:
        print(f"{row[0]} {row[1]:>5}: computed={_fmt10(row[3])} "
              f"paper={_fmt10(row[2])} residual={_fmt10(row[4])}")
    print(f"report written: {args.output}")
    return 0


def cmd_distance(args) -> int:
    rho_a = [float(v) for v in args.rho_a.split(",")]
    rho_b = [float(v) for v in args.rho_b.split(",")]
    d = statistical_distance(rho_a, rho_b)
    print(f"statistical distance: {_fmt10(d)}")
    if args.output is not None:
        _write_json(args.output, {"rho_a": rho_a, "rho_b": rho_b, "distance": d})
    return 0


def _add_domain_args(p: argparse.ArgumentParser):
    p.add_argument("--rmax", type=float, default=1.0, help="radial truncation of the box")
    p.add_argument("--nodes-r", type=int, default=64, dest="nodes_r")
    p.add_argument("--nodes-theta", type=int, default=24, dest="nodes_theta")
    p.add_argument("--nodes-phi", type=int, default=16, dest="nodes_phi")


def _add_mode_args(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=["free", "localized"], default="free")
    p.add_argument("--eta", type=float, default=0.0, help="temporal frequency (paper: integer)")
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--n", type=int, default=1, help="radial index (zero count / Laguerre degree)")
    p.add_argument("--beta", type=float, default=1.0, help="localization multiplier (localized family)")
    p.add_argument("--alpha-sq", type=float, default=None, dest="alpha_sq",
                   help="requested multiplier sum; snapped/validated by quantization")
    p.add_argument("--sigma-r", type=float, default=None, dest="sigma_r",
                   help="radial spread target (localized family)")
    _add_domain_args(p)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fishermodes",
        description="Separable modes and their Fisher-metric constraint checks.",
    )
    parser.add_argument("--config", type=str, default=None,
                        help="key=value file; command-line flags override")
    sub = parser.add_subparsers(dest="command", required=True)

    p_mode = sub.add_parser("mode", help="construct a mode; write spec JSON + radial CSV")
    _add_mode_args(p_mode)
    p_mode.add_argument("--samples", type=int, default=201)
    p_mode.add_argument("--output", type=str, default="mode_out")
    p_mode.set_defaults(func=cmd_mode)

    p_verify = sub.add_parser("verify", help="Fisher-matrix and constraint verification")
    _add_mode_args(p_verify)
    p_verify.add_argument("--hydrogen", type=int, nargs=3, metavar=("N", "ELL", "M"),
                          default=None, help="verify a hydrogen state instead of a mode")
    p_verify.add_argument("--a", type=float, default=1.0, help="hydrogen length scale")
    p_verify.add_argument("--tol", type=float, default=1e-6)
    p_verify.add_argument("--output", type=str, default="verify_report.json")
    p_verify.set_defaults(func=cmd_verify)

    p_radial = sub.add_parser("radial", help="solve the Schwarzschild radial equation")
    p_radial.add_argument("--rs", type=float, default=0.0)
    p_radial.add_argument("--eta", type=float, default=0.0)
    p_radial.add_argument("--ell", type=int, default=0)
    p_radial.add_argument("--alpha-sq", type=float, default=0.0, dest="alpha_sq")
    p_radial.add_argument("--rstart", type=float, default=0.5)
    p_radial.add_argument("--rend", type=float, default=20.0)
    p_radial.add_argument("--init-value", type=float, default=1.0, dest="init_value")
    p_radial.add_argument("--init-slope", type=float, default=0.0, dest="init_slope")
    p_radial.add_argument("--near-horizon-delta", type=float, default=None,
                          dest="near_horizon_delta",
                          help="start at r_s(1+delta) with series-consistent data")
    p_radial.add_argument("--rtol", type=float, default=1e-10)
    p_radial.add_argument("--output", type=str, default="radial_out.csv")
    p_radial.set_defaults(func=cmd_radial)

    p_hyd = sub.add_parser("hydrogen", help="hydrogen Fisher-integral table")
    p_hyd.add_argument("--n", type=int, default=3)
    p_hyd.add_argument("--ell", type=int, default=2)
    p_hyd.add_argument("--m", type=int, default=2)
    p_hyd.add_argument("--a", type=float, default=1.0)
    p_hyd.add_argument("--format", choices=["csv", "json"], default="csv")
    p_hyd.add_argument("--output", type=str, default="hydrogen_report.csv")
    p_hyd.set_defaults(func=cmd_hydrogen)

    p_dist = sub.add_parser("distance", help="statistical distance between two distributions")
    p_dist.add_argument("--rho-a", type=str, required=True, dest="rho_a",
                        help="comma-separated probabilities")
    p_dist.add_argument("--rho-b", type=str, required=True, dest="rho_b")
    p_dist.add_argument("--output", type=str, default=None)
    p_dist.set_defaults(func=cmd_distance)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv):
    """Load key=value defaults from --config; explicit flags still override."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    path = argv[i + 1]
    entries = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            entries[key.strip().replace("-", "_")] = value.strip()
    # let each subparser convert types through its own actions
    for action in parser._subparsers._group_actions[0].choices.values():
        known = {}
        for act in action._actions:
            if act.dest in entries and act.type is not None:
                known[act.dest] = act.type(entries[act.dest])
            elif act.dest in entries:
                known[act.dest] = entries[act.dest]
        action.set_defaults(**known)
    return argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _SOLVER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, *_CONFIG_ERRORS) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
