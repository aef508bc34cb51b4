"""Mobius reduction of the unbounded region to a bounded one.

The transform w = 1/(z - z0), with z0 inside the last hole, carries the
unbounded region onto a bounded multiply connected region.  Replacing the
coefficient A by hat A = zeta A, with zeta the mapped parametrization,
leaves both boundary integral kernels pointwise unchanged; that identity
is what transfers the bounded-region solvability theory, so it is checked
here entrywise to machine precision instead of being trusted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gnk import coefficient as coefficient_mod
from gnk import kernels
from gnk.coefficient import IndexReport
from gnk.errors import CenterNotInHole, PointTooClose
from gnk.geometry import ParamGrid, Region, winding_number, winding_of_point
from gnk.kernels import BoundaryJet


@dataclass(frozen=True)
class MappedBoundary:
    """Sampled image boundary zeta = 1/(eta - z0) and coefficient hat A = zeta A."""

    z0: complex
    zeta: np.ndarray
    zeta_d: np.ndarray
    zeta_dd: np.ndarray
    hat_coeff: np.ndarray
    hat_coeff_d: np.ndarray
    m: int
    n: int

    def jet(self) -> BoundaryJet:
        return BoundaryJet(self.zeta, self.zeta_d, self.zeta_dd,
                           self.hat_coeff, self.hat_coeff_d, self.m, self.n)


def _check_center(region: Region, z0: complex) -> None:
    target = region.mobius_center_index
    for k, curve in enumerate(region.curves):
        expected = -1 if k == target else 0
        try:
            w = winding_of_point(curve, z0)
        except PointTooClose as exc:
            raise CenterNotInHole(f"center {z0} too close to curve {k}: {exc}") from exc
        if w != expected:
            raise CenterNotInHole(
                f"center {z0} has winding {w} about curve {k}, expected {expected}")


def map_region(region: Region, coeff, grid: ParamGrid,
               z0: complex | None = None) -> MappedBoundary:
    """Sample the mapped boundary, with derivatives, by exact arithmetic.

    z0 defaults to the hole point of the designated center hole and must
    lie strictly inside it (and outside every other hole).
    """
    if z0 is None:
        z0 = region.hole_points[region.mobius_center_index]
    z0 = complex(z0)
    _check_center(region, z0)
    eta, eta_d, eta_dd = region.sample(grid)
    u = eta - z0
    zeta = 1.0 / u
    zeta_d = -eta_d / u**2
    zeta_dd = -eta_dd / u**2 + 2.0 * eta_d**2 / u**3
    a_values, a_derivs = coefficient_mod.sample(coeff, region, grid)
    hat = zeta * a_values
    hat_d = zeta_d * a_values + zeta * a_derivs
    return MappedBoundary(z0, zeta, zeta_d, zeta_dd, hat, hat_d, region.m, grid.n)


@dataclass(frozen=True)
class InvarianceReport:
    """Entrywise agreement of the kernels built before and after the map."""

    max_diff_N: float
    max_diff_M1: float

    @property
    def max_diff(self) -> float:
        return max(self.max_diff_N, self.max_diff_M1)


def kernel_invariance_check(region: Region, coeff, grid: ParamGrid,
                            z0: complex | None = None) -> InvarianceReport:
    """Max |N_hat - N| and |M1_hat - M1| over all grid pairs, diagonals included.

    The identity is algebraic, so anything beyond roundoff indicates a bug
    in the kernel evaluation rather than discretization error.
    """
    base = BoundaryJet.from_region(region, coeff, grid)
    mapped = map_region(region, coeff, grid, z0).jet()
    diff_n = np.abs(kernels.neumann_kernel_matrix(mapped)
                    - kernels.neumann_kernel_matrix(base)).max()
    diff_m1 = np.abs(kernels.companion_smooth_matrix(mapped)
                     - kernels.companion_smooth_matrix(base)).max()
    return InvarianceReport(float(diff_n), float(diff_m1))


def index_shift(report: IndexReport) -> tuple[tuple[int, ...], int]:
    """Indices of hat A on the image curves, outer image of the center curve first.

    The image of the last curve becomes the outer boundary and its index
    gains one; the remaining curves keep theirs, so the total also gains
    one.
    """
    kj = report.kappa_per_curve
    hat = (kj[-1] + 1,) + tuple(kj[:-1])
    return hat, report.kappa + 1


def mapped_index_of(region: Region, coeff, z0: complex | None = None,
                    n0: int = 64) -> tuple[tuple[int, ...], int]:
    """Direct argument-accumulation indices of hat A = zeta A on each image curve.

    Returned in image order (outer curve first), for cross-checking
    :func:`index_shift` without going through the shift law.
    """
    if z0 is None:
        z0 = region.hole_points[region.mobius_center_index]
    z0 = complex(z0)
    _check_center(region, z0)

    def hat_values(k: int, s: np.ndarray) -> np.ndarray:
        eta = region.curves[k].jet(s)[0]
        a = coeff.jet(region, k, s)[0]
        return a / (eta - z0)

    windings = [
        winding_number(lambda s, k=k: hat_values(k, s), n0=n0,
                       min_modulus=coefficient_mod.MIN_MODULUS,
                       on_small=CenterNotInHole)
        for k in range(region.m)
    ]
    hat = (windings[-1],) + tuple(windings[:-1])
    return hat, sum(windings)


def transform_solution(values, z, z0: complex):
    """Map solution values f(z) to the bounded-region solution f_hat(w).

    With w = 1/(z - z0), the correspondence is f_hat(w) = f(z) (z - z0);
    pass boundary samples of f and eta to transform along the boundary.
    """
    return np.asarray(values) * (np.asarray(z) - complex(z0))
