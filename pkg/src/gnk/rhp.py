"""Solution pipeline for the boundary integral equation mu - N mu = -M gamma.

Solving the equation for mu, forming the real correction

    h = (M mu - (I - N) gamma) / 2,

and assembling A f+ = gamma + h + i mu yields boundary values of a function
analytic in the unbounded region with f(inf) = 0; h absorbs exactly the
part of gamma that no such function can attain, and it lies in the span of
boundary values coming from the holes.  The same density evaluated through
the Cauchy integral extends the solution off the boundary.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from gnk import coefficient as coefficient_mod
from gnk.discrete import DEFAULT_NULLITY_TOL, DiscreteOperators, apply_M
from gnk.errors import InconsistentSystem, TooCloseToBoundary, ZeroCoefficient
from gnk.geometry import ParamGrid, Region, _parse_json_source

DEFAULT_SOLVE_TOL = 1e-10


def _sup(x) -> float:
    return float(np.abs(x).max()) if np.size(x) else 0.0


@dataclass(frozen=True)
class SolveDiagnostics:
    ie_residual: float
    h_plus_residual: float
    h_companion_residual: float
    nullity_I_minus_N: int
    minimal_norm: bool


@dataclass(frozen=True)
class RHSolution:
    """Boundary solution: data gamma, density mu, correction h, values A f+."""

    gamma: np.ndarray
    mu: np.ndarray
    h: np.ndarray
    af_plus: np.ndarray
    f_plus: np.ndarray
    diagnostics: SolveDiagnostics


def solve_ie(ops: DiscreteOperators, gamma: np.ndarray, *,
             tol_solve: float = DEFAULT_SOLVE_TOL) -> np.ndarray:
    """Solve (I - N) mu = -M gamma on the grid.

    The continuous equation is solvable for every gamma; a residual above
    tol_solve therefore signals discretization failure, not theory failure.
    When I - N is numerically rank deficient (negative-index coefficients)
    the minimal-norm least-squares solution is returned; callers can see
    the rank decision through ``ops.nullity_I_minus_N()``.
    """
    rhs = -apply_M(ops, np.asarray(gamma, dtype=float))
    system = ops.identity_minus_N()
    if ops.nullity_I_minus_N().nullity == 0:
        mu = np.linalg.solve(system, rhs)
    else:
        mu, *_ = np.linalg.lstsq(system, rhs, rcond=DEFAULT_NULLITY_TOL)
    residual = _sup(system @ mu - rhs)
    if residual > tol_solve:
        raise InconsistentSystem(
            f"integral equation residual {residual:.3e} exceeds {tol_solve:.3e}")
    return mu


def compute_h(ops: DiscreteOperators, gamma: np.ndarray, mu: np.ndarray) -> np.ndarray:
    """Correction h = (M mu - (I - N) gamma) / 2; real for real inputs."""
    gamma = np.asarray(gamma, dtype=float)
    return (apply_M(ops, mu) - gamma + ops.apply_N(gamma)) / 2.0


def boundary_values(gamma: np.ndarray, h: np.ndarray, mu: np.ndarray,
                    coeff_values: np.ndarray):
    """Assemble A f+ = gamma + h + i mu and f+ = (gamma + h + i mu) / A."""
    if np.abs(coeff_values).min() < coefficient_mod.MIN_MODULUS:
        raise ZeroCoefficient("coefficient vanishes at a grid node")
    af_plus = gamma + h + 1j * mu
    return af_plus, af_plus / coeff_values


def analyticity_residual(ops: DiscreteOperators, af_plus: np.ndarray) -> float:
    """Sup-norm of (I - N + iM)(A f+), zero iff the data is attainable.

    Vanishes (to discretization accuracy) exactly when af_plus samples the
    boundary values of a function analytic in the unbounded region with
    f(inf) = 0; data from the other side of any curve scores order one.
    """
    c = np.asarray(af_plus, dtype=complex)
    return _sup(c - ops.apply_N(c) + 1j * apply_M(ops, c))


def verify_Sminus(ops: DiscreteOperators, h: np.ndarray):
    """Residuals ((I + N) h, M h); both vanish for h in the hole-side span."""
    h = np.asarray(h, dtype=float)
    return _sup(h + ops.apply_N(h)), _sup(apply_M(ops, h))


def solve_rhp(ops: DiscreteOperators, gamma: np.ndarray, *,
              tol_solve: float = DEFAULT_SOLVE_TOL) -> RHSolution:
    """Full pipeline: solve for mu, form h, assemble boundary values."""
    gamma = np.asarray(gamma, dtype=float)
    mu = solve_ie(ops, gamma, tol_solve=tol_solve)
    h = compute_h(ops, gamma, mu)
    af_plus, f_plus = boundary_values(gamma, h, mu, ops.jet.coeff)
    rhs = -apply_M(ops, gamma)
    nullity_report = ops.nullity_I_minus_N()
    r_plus, r_m = verify_Sminus(ops, h)
    diagnostics = SolveDiagnostics(
        ie_residual=_sup(ops.identity_minus_N() @ mu - rhs),
        h_plus_residual=r_plus,
        h_companion_residual=r_m,
        nullity_I_minus_N=nullity_report.nullity,
        minimal_norm=nullity_report.nullity > 0,
    )
    return RHSolution(gamma, mu, h, af_plus, f_plus, diagnostics)


def boundary_distance(region: Region, grid: ParamGrid, z) -> np.ndarray:
    """Distance from each z to the sampled boundary."""
    eta, _, _ = region.sample(grid)
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    return np.abs(eta[None, :] - z_arr[:, None]).min(axis=1)


def near_boundary_band(region: Region, grid: ParamGrid) -> float:
    """Width of the zone where plain trapezoidal field evaluation degrades."""
    _, eta_d, _ = region.sample(grid)
    return 5.0 * grid.weight * float(np.abs(eta_d).max())


def cauchy_eval(region: Region, coeff, grid: ParamGrid, gamma: np.ndarray,
                mu: np.ndarray, z, *, strict: bool = False, warn: bool = True):
    """Cauchy-type integral of (gamma + i mu)/A at points z off the boundary.

    For z in the unbounded region this is the solution f with f(inf) = 0.
    No near-boundary correction is applied; inside the warning band the
    plain trapezoidal rule loses accuracy, so the call warns there (or
    raises in strict mode).
    """
    eta, eta_d, _ = region.sample(grid)
    a_values, _ = coefficient_mod.sample(coeff, region, grid)
    density = (np.asarray(gamma) + 1j * np.asarray(mu)) / a_values
    density = density * eta_d * (grid.weight / (2j * math.pi))
    z_arr = np.atleast_1d(np.asarray(z, dtype=complex))
    band = near_boundary_band(region, grid)
    dist = np.abs(eta[None, :] - z_arr[:, None]).min(axis=1)
    if np.any(dist < band):
        worst = float(dist.min())
        if strict:
            raise TooCloseToBoundary(
                f"evaluation point within {worst:.3e} of the boundary "
                f"(warning band {band:.3e})")
        if warn:
            warnings.warn(
                f"evaluation point within {worst:.3e} of the boundary; "
                f"accuracy degrades inside the {band:.3e} band",
                stacklevel=2)
    values = (density[None, :] / (eta[None, :] - z_arr[:, None])).sum(axis=1)
    if np.isscalar(z) or np.asarray(z).ndim == 0:
        return complex(values[0])
    return values


def plemelj_boundary(ops: DiscreteOperators, gamma: np.ndarray, mu: np.ndarray,
                     side: int) -> np.ndarray:
    """One-sided boundary values 2 A Phi+- = (+-I + N - iM)(gamma + i mu).

    side +1 gives the limit from the unbounded region, -1 from the holes;
    their difference reproduces gamma + i mu identically in the discrete
    algebra (the jump relation).
    """
    if side not in (+1, -1):
        raise ValueError("side must be +1 or -1")
    c = np.asarray(gamma, dtype=float) + 1j * np.asarray(mu, dtype=float)
    return (side * c + ops.apply_N(c) - 1j * apply_M(ops, c)) / 2.0


def _rational_boundary(region: Region, grid: ParamGrid, terms) -> np.ndarray:
    eta, _, _ = region.sample(grid)
    f_plus = np.zeros_like(eta)
    for term in terms:
        x, y = term["c"]
        re, im = term["a"]
        f_plus = f_plus + complex(re, im) / (eta - complex(x, y))
    return f_plus


def _data_from_entry(entry: dict, region: Region, coeff, grid: ParamGrid) -> np.ndarray:
    kind = entry.get("type")
    size = region.m * grid.n
    if kind == "samples":
        values = entry["values"]
        if len(values) != region.m or any(len(v) != grid.n for v in values):
            raise ValueError("samples must supply n values per curve")
        return np.concatenate([np.asarray(v, dtype=float) for v in values])
    if kind == "poles":
        f_plus = _rational_boundary(region, grid, entry["terms"])
        a_values, _ = coefficient_mod.sample(coeff, region, grid)
        return (a_values * f_plus).real
    if kind == "trig":
        parts = []
        for rows in entry["per_curve"]:
            powers = np.asarray([int(r[0]) for r in rows])
            coeffs = np.asarray([complex(float(r[1]), float(r[2])) for r in rows])
            phase = np.exp(1j * np.multiply.outer(grid.nodes, powers.astype(float)))
            parts.append((phase @ coeffs).real)
        if len(parts) != region.m:
            raise ValueError("trig data must supply one entry per curve")
        return np.concatenate(parts)
    if kind == "constants":
        values = entry["values"]
        if len(values) != region.m:
            raise ValueError("constants data must supply one value per curve")
        out = np.zeros(size)
        for k, v in enumerate(values):
            out[k * grid.n:(k + 1) * grid.n] = float(v)
        return out
    raise ValueError(f"unknown boundary data type {kind!r}")


def load_boundary_data(source, region: Region, coeff, grid: ParamGrid) -> np.ndarray:
    """Real boundary data gamma from a JSON path, JSON text, dict, or list.

    A list of entries is summed, so constants or extra pole terms compose
    with a base data set.  "poles" entries describe a rational function
    with poles at the given points and yield gamma = Re[A f+].
    """
    obj = _parse_json_source(source)
    entries = obj if isinstance(obj, list) else [obj]
    gamma = np.zeros(region.m * grid.n)
    for entry in entries:
        gamma = gamma + _data_from_entry(entry, region, coeff, grid)
    return gamma
