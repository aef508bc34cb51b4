"""Pointwise kernels of the boundary integral operators.

With boundary parametrization eta and coefficient A, the complex kernel

    (1/pi) (A(s)/A(t)) eta'(t) / (eta(t) - eta(s))

has continuous imaginary part N (the generalized Neumann kernel) and
singular real part M.  On a single curve M splits as

    M(s, t) = -(1/(2 pi)) cot((s - t)/2) + M1(s, t)

with M1 continuous.  The diagonal values come from the closed form

    (1/pi) [ eta''(t) / (2 eta'(t)) - A'(t)/A(t) ]

(imaginary part for N, real part for M1), which is exact here because both
eta and A are trigonometric polynomials with analytic derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from gnk import coefficient as coefficient_mod
from gnk.errors import DiagonalSingular
from gnk.geometry import TWO_PI, ParamGrid, Region

# parameter separation below which same-curve evaluation is routed to the
# closed-form diagonal to dodge catastrophic cancellation
NEAR_DIAGONAL = 1e-8


@dataclass(frozen=True)
class BoundaryJet:
    """Sampled boundary data consumed by the kernel and operator builders.

    Holds flat curve-major arrays of length m * n: the parametrization with
    two derivatives and the coefficient with one.  The Mobius module builds
    the same structure from the mapped boundary, which is what makes the
    kernel invariance check a one-liner.
    """

    eta: np.ndarray
    eta_d: np.ndarray
    eta_dd: np.ndarray
    coeff: np.ndarray
    coeff_d: np.ndarray
    m: int
    n: int

    @classmethod
    def from_region(cls, region: Region, coeff, grid: ParamGrid) -> "BoundaryJet":
        eta, eta_d, eta_dd = region.sample(grid)
        a, a_d = coefficient_mod.sample(coeff, region, grid)
        return cls(eta, eta_d, eta_dd, a, a_d, region.m, grid.n)

    @property
    def size(self) -> int:
        return self.m * self.n


def _wrapped_gap(s: float, t: float) -> float:
    d = math.fmod(s - t, TWO_PI)
    if d > math.pi:
        d -= TWO_PI
    elif d < -math.pi:
        d += TWO_PI
    return abs(d)


def _point_values(region: Region, coeff, point):
    k, s = point
    eta, eta_d, eta_dd = region.curves[k].jet(float(s))
    a, a_d = coefficient_mod.coeff_jet(coeff, region, k, float(s))
    return eta, eta_d, eta_dd, a, a_d


def _offdiag(region: Region, coeff, s_point, t_point) -> complex:
    eta_s, _, _, a_s, _ = _point_values(region, coeff, s_point)
    eta_t, eta_d_t, _, a_t, _ = _point_values(region, coeff, t_point)
    return (a_s / a_t) * eta_d_t / (eta_t - eta_s) / math.pi


def _diagonal(region: Region, coeff, point) -> complex:
    _, eta_d, eta_dd, a, a_d = _point_values(region, coeff, point)
    return (eta_dd / (2.0 * eta_d) - a_d / a) / math.pi


def kernel_N(region: Region, coeff, s_point, t_point) -> float:
    """Generalized Neumann kernel N(s, t); points are (curve, parameter) pairs."""
    (ks, s), (kt, t) = s_point, t_point
    if ks == kt and _wrapped_gap(s, t) < NEAR_DIAGONAL:
        return float(_diagonal(region, coeff, t_point).imag)
    return float(_offdiag(region, coeff, s_point, t_point).imag)


def kernel_M(region: Region, coeff, s_point, t_point) -> float:
    """Companion kernel M(s, t), singular on the same-curve diagonal."""
    (ks, s), (kt, t) = s_point, t_point
    if ks == kt and _wrapped_gap(s, t) < NEAR_DIAGONAL:
        raise DiagonalSingular(
            "M has no finite same-curve diagonal; use kernel_M1 plus the cotangent")
    return float(_offdiag(region, coeff, s_point, t_point).real)


def kernel_M1(region: Region, coeff, s_point, t_point) -> float:
    """Continuous same-curve remainder M1(s, t) = M + cot((s-t)/2)/(2 pi)."""
    (ks, s), (kt, t) = s_point, t_point
    if ks != kt:
        raise ValueError("M1 is defined for points on the same curve")
    if _wrapped_gap(s, t) < NEAR_DIAGONAL:
        return float(_diagonal(region, coeff, t_point).real)
    value = _offdiag(region, coeff, s_point, t_point).real
    return float(value + 1.0 / math.tan((s - t) / 2.0) / TWO_PI)


def complex_kernel_matrix(jet: BoundaryJet) -> np.ndarray:
    """Dense matrix of M + iN off the diagonal, M1 + iN on it.

    Entry (i, j) evaluates at target s_i (row) and source t_j (column).
    On the uniform grid the only same-curve coincidences are the exact
    diagonal entries, which take the closed-form smooth values.
    """
    denom = jet.eta[None, :] - jet.eta[:, None]
    np.fill_diagonal(denom, 1.0)
    matrix = (jet.coeff[:, None] / jet.coeff[None, :]) * (jet.eta_d[None, :] / denom)
    matrix /= math.pi
    diag = (jet.eta_dd / (2.0 * jet.eta_d) - jet.coeff_d / jet.coeff) / math.pi
    np.fill_diagonal(matrix, diag)
    return matrix


def _cot_addition(n: int) -> np.ndarray:
    """cot((s_i - s_j)/2) / (2 pi) with zeros on the diagonal."""
    idx = np.arange(n)
    half = (idx[:, None] - idx[None, :]) * (math.pi / n)
    np.fill_diagonal(half, math.pi / 2)  # placeholder, cot = 0 there anyway
    cot = np.cos(half) / np.sin(half)
    np.fill_diagonal(cot, 0.0)
    return cot / TWO_PI


def neumann_kernel_matrix(jet: BoundaryJet) -> np.ndarray:
    """N(s_i, t_j) on the full grid, diagonal handled in closed form."""
    return complex_kernel_matrix(jet).imag.copy()


def companion_smooth_matrix(jet: BoundaryJet) -> np.ndarray:
    """Smooth companion values: M1 on same-curve blocks, M on cross blocks."""
    matrix = complex_kernel_matrix(jet).real.copy()
    add = _cot_addition(jet.n)
    for k in range(jet.m):
        block = slice(k * jet.n, (k + 1) * jet.n)
        matrix[block, block] += add
    return matrix
