"""Batch command line front end.

One subcommand per capability: solve-rhp, solve-dirichlet, verify,
index-report, mobius-check, eval-field.  Outputs are CSV and JSON files
written with fixed formatting so that identical inputs produce byte
identical outputs.  Exit codes: 0 success, 1 input or validation error,
2 solve-quality failure (inconsistent system, constancy violation, or a
verification check out of tolerance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from gnk import dirichlet, discrete, mobius, rhp
from gnk.coefficient import One, index_of, load_coefficient
from gnk.errors import ConstancyViolation, GnkError, InconsistentSystem
from gnk.geometry import ParamGrid, _turns_about_points, load_region, validate_region

TWO_PI = 2.0 * np.pi


@dataclass
class RunConfig:
    region_path: str
    coeff_path: str | None = None
    data_path: str | None = None
    n: int = 128
    out_dir: str = "gnk_out"
    tol_solve: float = 1e-10
    tol_identity: float = 1e-8
    tol_invariance: float = 1e-12
    tol_jump: float = 1e-13
    strict: bool = False
    field_grid: str | None = None
    threads: int = 1


def _fmt(x: float) -> str:
    return repr(float(x))


def _write_json(path: Path, payload: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="\n") as f:
        f.write(json.dumps(payload, sort_keys=True, indent=2))
        f.write("\n")


def _write_csv(path: Path, header: list[str], rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")


def _fail(exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")


def _read_json(path: str):
    return json.loads(Path(path).read_text())


def _load_inputs(cfg: RunConfig, *, need_data: bool):
    region = load_region(_read_json(cfg.region_path))
    grid = ParamGrid(cfg.n)
    report = validate_region(region, grid)
    if not report.ok:
        failures = "; ".join(f"{c.name} ({c.detail})" for c in report.failures())
        raise ValueError(f"region validation failed: {failures}")
    coeff = load_coefficient(_read_json(cfg.coeff_path)) if cfg.coeff_path else One()
    gamma = None
    if need_data:
        if cfg.data_path is None:
            raise ValueError("this subcommand requires --data")
        gamma = rhp.load_boundary_data(_read_json(cfg.data_path), region, coeff, grid)
    return region, grid, coeff, gamma


def _boundary_rows(region, grid, gamma, mu, h, f_values):
    rows = []
    nodes = grid.nodes
    for k in range(region.m):
        for i in range(grid.n):
            idx = k * grid.n + i
            rows.append([
                str(k),
                _fmt(nodes[i]),
                _fmt(gamma[idx]),
                _fmt(mu[idx]),
                _fmt(h[idx]),
                _fmt(f_values[idx].real),
                _fmt(f_values[idx].imag),
            ])
    return rows


def run_solve(cfg: RunConfig, mode: str) -> int:
    region, grid, coeff, gamma = _load_inputs(cfg, need_data=True)
    out = Path(cfg.out_dir)
    if mode == "dirichlet":
        if not isinstance(coeff, One):
            raise ValueError("solve-dirichlet requires the coefficient one")
        ops = discrete.assemble_N(region, coeff, grid)
        solution = dirichlet.solve_modified_dirichlet(
            region, grid, gamma, ops=ops, tol_solve=cfg.tol_solve)
        rows = _boundary_rows(region, grid, gamma, solution.mu, solution.h_raw,
                              solution.f_boundary)
        diagnostics = {
            "mode": "dirichlet",
            "n": grid.n,
            "ie_residual": solution.diagnostics.ie_residual,
            "h_constants": list(solution.h_constants),
            "h_deviation": list(solution.diagnostics.h_deviation),
            "s_minus_residuals": [solution.diagnostics.h_plus_residual,
                                  solution.diagnostics.h_companion_residual],
            "nullity_I_minus_N": ops.nullity_I_minus_N().nullity,
            "nullity_I_plus_N": ops.nullity_I_plus_N().nullity,
        }
    else:
        ops = discrete.assemble_N(region, coeff, grid)
        solution = rhp.solve_rhp(ops, gamma, tol_solve=cfg.tol_solve)
        index = index_of(coeff, region, grid)
        rows = _boundary_rows(region, grid, gamma, solution.mu, solution.h,
                              solution.f_plus)
        diagnostics = {
            "mode": "rhp",
            "n": grid.n,
            "ie_residual": solution.diagnostics.ie_residual,
            "s_minus_residuals": [solution.diagnostics.h_plus_residual,
                                  solution.diagnostics.h_companion_residual],
            "minimal_norm": solution.diagnostics.minimal_norm,
            "nullity_I_minus_N": solution.diagnostics.nullity_I_minus_N,
            "nullity_I_plus_N": ops.nullity_I_plus_N().nullity,
            "kappa_per_curve": list(index.kappa_per_curve),
            "kappa": index.kappa,
        }
    _write_csv(out / "boundary.csv",
               ["curve_index", "s", "gamma", "mu", "h", "re_f", "im_f"], rows)
    _write_json(out / "diagnostics.json", diagnostics)
    return 0


def _band_limited_samples(rng, m: int, n: int, band: int) -> np.ndarray:
    phi = np.zeros(m * n)
    s = np.arange(n) * (TWO_PI / n)
    for k in range(m):
        for p in range(1, band + 1):
            phi[k * n:(k + 1) * n] += (
                rng.normal() * np.cos(p * s) + rng.normal() * np.sin(p * s))
        phi[k * n:(k + 1) * n] += rng.normal()
    return phi


def run_verify(cfg: RunConfig) -> int:
    region, grid, coeff, _ = _load_inputs(cfg, need_data=False)
    ops = discrete.assemble_N(region, coeff, grid)
    index = index_of(coeff, region, grid)
    rng = np.random.default_rng(0)
    band = max(1, min(8, grid.n // 4))

    r1_max = r2_max = 0.0
    for _ in range(5):
        phi = _band_limited_samples(rng, region.m, grid.n, band)
        r1, r2 = discrete.operator_identity_residuals(ops, phi)
        r1_max, r2_max = max(r1_max, r1), max(r2_max, r2)
    identity_ok = r1_max <= cfg.tol_identity and r2_max <= cfg.tol_identity

    plus = ops.nullity_I_plus_N()
    minus = ops.nullity_I_minus_N()
    null_ok = (plus.nullity == index.dim_null_I_plus_N
               and minus.nullity == index.dim_null_I_minus_N)

    invariance = mobius.kernel_invariance_check(region, coeff, grid)
    hat_direct = mobius.mapped_index_of(region, coeff)
    hat_shift = mobius.index_shift(index)
    mobius_ok = invariance.max_diff <= cfg.tol_invariance and hat_direct == hat_shift

    gamma = _band_limited_samples(rng, region.m, grid.n, band)
    mu = _band_limited_samples(rng, region.m, grid.n, band)
    jump = (rhp.plemelj_boundary(ops, gamma, mu, +1)
            - rhp.plemelj_boundary(ops, gamma, mu, -1)) - (gamma + 1j * mu)
    jump_residual = float(np.abs(jump).max())
    jump_ok = jump_residual <= cfg.tol_jump

    report = {
        "n": grid.n,
        "identity": {"r1_max": r1_max, "r2_max": r2_max,
                     "tolerance": cfg.tol_identity, "ok": identity_ok},
        "nullity": {
            "I_plus_N": {"measured": plus.nullity,
                         "predicted": index.dim_null_I_plus_N,
                         "smallest_singular_values": list(plus.smallest)},
            "I_minus_N": {"measured": minus.nullity,
                          "predicted": index.dim_null_I_minus_N,
                          "smallest_singular_values": list(minus.smallest)},
            "ok": null_ok,
        },
        "mobius": {"max_diff_N": invariance.max_diff_N,
                   "max_diff_M1": invariance.max_diff_M1,
                   "tolerance": cfg.tol_invariance,
                   "index_shift": list(hat_shift[0]) + [hat_shift[1]],
                   "index_direct": list(hat_direct[0]) + [hat_direct[1]],
                   "ok": mobius_ok},
        "jump": {"residual": jump_residual, "tolerance": cfg.tol_jump,
                 "ok": jump_ok},
        "kappa_per_curve": list(index.kappa_per_curve),
        "kappa": index.kappa,
    }
    report["ok"] = identity_ok and null_ok and mobius_ok and jump_ok
    _write_json(Path(cfg.out_dir) / "verify.json", report)

    for name in ("identity", "nullity", "mobius", "jump"):
        status = "ok " if report[name]["ok"] else "FAIL"
        sys.stdout.write(f"[{status}] {name}\n")
    return 0 if report["ok"] else 2


def run_index_report(cfg: RunConfig) -> int:
    region, grid, coeff, _ = _load_inputs(cfg, need_data=False)
    index = index_of(coeff, region, grid)
    payload = {
        "kappa_per_curve": list(index.kappa_per_curve),
        "kappa": index.kappa,
        "dim_S_minus": index.dim_S_minus,
        "codim_R_minus": index.codim_R_minus,
        "dim_null_I_plus_N": index.dim_null_I_plus_N,
        "dim_null_I_minus_N": index.dim_null_I_minus_N,
        "dim_S_plus_bounds": list(index.dim_S_plus_bounds),
        "codim_R_plus_bounds": list(index.codim_R_plus_bounds),
    }
    _write_json(Path(cfg.out_dir) / "index.json", payload)
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def run_mobius_check(cfg: RunConfig) -> int:
    region, grid, coeff, _ = _load_inputs(cfg, need_data=False)
    index = index_of(coeff, region, grid)
    invariance = mobius.kernel_invariance_check(region, coeff, grid)
    hat_direct = mobius.mapped_index_of(region, coeff)
    hat_shift = mobius.index_shift(index)
    ok = invariance.max_diff <= cfg.tol_invariance and hat_direct == hat_shift
    payload = {
        "max_diff_N": invariance.max_diff_N,
        "max_diff_M1": invariance.max_diff_M1,
        "tolerance": cfg.tol_invariance,
        "index_shift": list(hat_shift[0]) + [hat_shift[1]],
        "index_direct": list(hat_direct[0]) + [hat_direct[1]],
        "ok": ok,
    }
    _write_json(Path(cfg.out_dir) / "mobius.json", payload)
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0 if ok else 2


def _parse_field_grid(text: str):
    parts = text.split(",")
    if len(parts) != 6:
        raise ValueError("--field-grid expects x0,x1,nx,y0,y1,ny")
    x0, x1, y0, y1 = float(parts[0]), float(parts[1]), float(parts[3]), float(parts[4])
    nx, ny = int(parts[2]), int(parts[5])
    if nx < 1 or ny < 1:
        raise ValueError("field grid needs at least one point per axis")
    xs = np.linspace(x0, x1, nx) if nx > 1 else np.array([x0])
    ys = np.linspace(y0, y1, ny) if ny > 1 else np.array([y0])
    return xs, ys


def _hole_mask(region, points: np.ndarray, n: int = 512) -> np.ndarray:
    """True where a probe point sits inside some hole (nonzero winding)."""
    inside = np.zeros(points.shape, dtype=bool)
    for curve in region.curves:
        turns = np.rint(_turns_about_points(curve, points, n)).astype(int)
        inside |= turns != 0
    return inside


def run_field(cfg: RunConfig) -> int:
    region, grid, coeff, gamma = _load_inputs(cfg, need_data=True)
    if cfg.field_grid is None:
        raise ValueError("eval-field requires --field-grid x0,x1,nx,y0,y1,ny")
    xs, ys = _parse_field_grid(cfg.field_grid)
    ops = discrete.assemble_N(region, coeff, grid)
    solution = rhp.solve_rhp(ops, gamma, tol_solve=cfg.tol_solve)

    grid_x, grid_y = np.meshgrid(xs, ys)  # row-major by y then x
    points = (grid_x + 1j * grid_y).ravel()
    holes = _hole_mask(region, points)
    band_width = rhp.near_boundary_band(region, grid)
    dist = rhp.boundary_distance(region, grid, points)
    in_band = (dist < band_width) & ~holes
    if cfg.strict and in_band.any():
        raise ValueError(
            f"{int(in_band.sum())} probe points inside the near-boundary band "
            f"(width {band_width:.3e}) with --strict set")

    evaluate = ~holes
    u = np.full(points.shape, np.nan)
    if evaluate.any():
        values = rhp.cauchy_eval(region, coeff, grid, gamma, solution.mu,
                                 points[evaluate], warn=False)
        u[evaluate] = values.real

    rows = []
    for idx in range(points.size):
        if holes[idx]:
            flag, u_text = "hole", ""
        elif in_band[idx]:
            flag, u_text = "band", _fmt(u[idx])
        else:
            flag, u_text = "ok", _fmt(u[idx])
        rows.append([_fmt(points[idx].real), _fmt(points[idx].imag), u_text, flag])
    _write_csv(Path(cfg.out_dir) / "field.csv", ["x", "y", "u", "in_band_flag"], rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gnk",
        description="Boundary integral solver with the generalized Neumann kernel",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve-rhp", "solve-dirichlet", "verify", "index-report",
                 "mobius-check", "eval-field"):
        p = sub.add_parser(name)
        p.add_argument("--region", required=True, help="region JSON file")
        p.add_argument("--coeff", default=None, help="coefficient JSON file (default one)")
        p.add_argument("--data", default=None, help="boundary data JSON file")
        p.add_argument("--n", type=int, default=128, help="grid nodes per curve")
        p.add_argument("--out", default="gnk_out", help="output directory")
        p.add_argument("--tol-solve", type=float, default=1e-10)
        p.add_argument("--tol-identity", type=float, default=1e-8)
        p.add_argument("--strict", action="store_true",
                       help="treat near-boundary probes as fatal")
        if name == "eval-field":
            p.add_argument("--field-grid", default=None,
                           help="probe grid as x0,x1,nx,y0,y1,ny")
    return parser


def _config_from_args(args) -> RunConfig:
    threads = os.environ.get("GNK_THREADS", "1")
    try:
        threads = max(1, int(threads))
    except ValueError as exc:
        raise ValueError(f"GNK_THREADS must be an integer, got {threads!r}") from exc
    return RunConfig(
        region_path=args.region,
        coeff_path=args.coeff,
        data_path=args.data,
        n=args.n,
        out_dir=args.out,
        tol_solve=args.tol_solve,
        tol_identity=args.tol_identity,
        strict=args.strict,
        field_grid=getattr(args, "field_grid", None),
        threads=threads,
    )


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    try:
        cfg = _config_from_args(args)
        if args.command == "solve-rhp":
            return run_solve(cfg, "rhp")
        if args.command == "solve-dirichlet":
            return run_solve(cfg, "dirichlet")
        if args.command == "verify":
            return run_verify(cfg)
        if args.command == "index-report":
            return run_index_report(cfg)
        if args.command == "mobius-check":
            return run_mobius_check(cfg)
        if args.command == "eval-field":
            return run_field(cfg)
        raise ValueError(f"unknown command {args.command!r}")
    except (InconsistentSystem, ConstancyViolation) as exc:
        _fail(exc)
        return 2
    except (GnkError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        _fail(exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
