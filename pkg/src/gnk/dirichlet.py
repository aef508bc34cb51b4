"""The modified Dirichlet problem: the pipeline specialized to A = 1.

With coefficient one the integral equation is uniquely solvable and the
correction h is a real constant on each curve: the data gamma can always
be shifted by per-curve constants so that gamma + h is the real boundary
part of a function analytic in the unbounded region with f(inf) = 0.  The
real part of the Cauchy integral then evaluates the harmonic field with
boundary values gamma + h and zero at infinity.

No special code path exists for A = 1; the general kernels are used with
the derivative terms vanishing identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gnk import rhp
from gnk.coefficient import One
from gnk.discrete import DiscreteOperators, assemble_N
from gnk.errors import ConstancyViolation
from gnk.geometry import ParamGrid, Region


def indicator_basis(region: Region, grid: ParamGrid) -> np.ndarray:
    """Rows chi_j: one on curve j, zero elsewhere; shape (m, m*n).

    These are the boundary values (with A = 1) of the functions equal to
    one inside hole j and zero outside its curve, and they span the space
    of admissible corrections h.
    """
    m, n = region.m, grid.n
    basis = np.zeros((m, m * n))
    for j in range(m):
        basis[j, j * n:(j + 1) * n] = 1.0
    return basis


@dataclass(frozen=True)
class DirichletDiagnostics:
    ie_residual: float
    h_deviation: tuple[float, ...]
    h_plus_residual: float
    h_companion_residual: float


@dataclass(frozen=True)
class DirichletSolution:
    """Unique solution data: mu, per-curve constants h_j, boundary values f+."""

    gamma: np.ndarray
    mu: np.ndarray
    h_raw: np.ndarray
    h_constants: tuple[float, ...]
    f_boundary: np.ndarray
    diagnostics: DirichletDiagnostics


def solve_modified_dirichlet(
    region: Region,
    grid: ParamGrid,
    gamma: np.ndarray,
    *,
    ops: DiscreteOperators | None = None,
    tol_solve: float = rhp.DEFAULT_SOLVE_TOL,
    constancy_factor: float = 1e3,
    constancy_floor: float = 1e-6,
) -> DirichletSolution:
    """Solve the modified Dirichlet problem for real data gamma.

    The raw correction h comes out of the operator formula and is reduced
    to per-curve means; its deviation from constancy doubles as an error
    indicator.  A deviation beyond both constancy_factor times the solve
    residual and the absolute constancy_floor (scaled by the data size)
    raises ConstancyViolation: that means a bug or unresolved geometry,
    not a property of the data.

    Pass a preassembled ``ops`` (with coefficient One) to amortize
    assembly across solves on the same region and grid.
    """
    if ops is None:
        ops = assemble_N(region, One(), grid)
    elif not isinstance(ops.coeff, One):
        raise ValueError("modified Dirichlet solve requires coefficient One")
    gamma = np.asarray(gamma, dtype=float)
    solution = rhp.solve_rhp(ops, gamma, tol_solve=tol_solve)
    h_blocks = solution.h.reshape(region.m, grid.n)
    h_means = h_blocks.mean(axis=1)
    deviation = np.abs(h_blocks - h_means[:, None]).max(axis=1)
    scale = max(1.0, float(np.abs(gamma).max()))
    allowed = max(constancy_factor * solution.diagnostics.ie_residual,
                  constancy_floor * scale)
    if deviation.max() > allowed:
        raise ConstancyViolation(
            f"h deviates from per-curve constancy by {deviation.max():.3e} "
            f"(allowed {allowed:.3e}); refine the grid or check the region")
    h_flat = np.repeat(h_means, grid.n)
    f_boundary = gamma + h_flat + 1j * solution.mu
    diagnostics = DirichletDiagnostics(
        ie_residual=solution.diagnostics.ie_residual,
        h_deviation=tuple(float(d) for d in deviation),
        h_plus_residual=solution.diagnostics.h_plus_residual,
        h_companion_residual=solution.diagnostics.h_companion_residual,
    )
    return DirichletSolution(
        gamma=gamma,
        mu=solution.mu,
        h_raw=solution.h,
        h_constants=tuple(float(h) for h in h_means),
        f_boundary=f_boundary,
        diagnostics=diagnostics,
    )


def harmonic_eval(region: Region, grid: ParamGrid, solution: DirichletSolution,
                  z, *, strict: bool = False, warn: bool = True):
    """Harmonic field u = Re Phi at z; boundary values gamma + h, u(inf) = 0."""
    values = rhp.cauchy_eval(region, One(), grid, solution.gamma, solution.mu,
                             z, strict=strict, warn=warn)
    return np.real(values) if np.ndim(values) else float(np.real(values))
