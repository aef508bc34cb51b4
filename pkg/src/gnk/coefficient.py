"""Coefficient functions for the boundary condition Re[A f+] = gamma.

The coefficient A is a nonvanishing, continuously differentiable complex
function on the boundary, available here with an exact derivative.  Its
winding number about the origin on each curve (the index kappa_j) is the
single combinatorial input to the solvability theory; the dimension
formulas evaluated in :func:`predict_dimensions` depend on nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from gnk.errors import ZeroCoefficient
from gnk.geometry import ParamGrid, Region, _parse_json_source, winding_number

MIN_MODULUS = 1e-12


@dataclass(frozen=True)
class One:
    """A identically one (the modified Dirichlet problem)."""

    def jet(self, region: Region, k: int, s):
        s_arr = np.asarray(s, dtype=float)
        if s_arr.ndim == 0:
            return 1 + 0j, 0j
        return np.ones_like(s_arr, dtype=complex), np.zeros_like(s_arr, dtype=complex)


@dataclass(frozen=True)
class ShiftedPower:
    """A(t) = (eta(t) - z0)**power with the exact chain-rule derivative."""

    z0: complex
    power: int

    def jet(self, region: Region, k: int, s):
        eta, eta_d, _ = region.curves[k].jet(s)
        u = eta - self.z0
        value = u ** self.power
        deriv = self.power * u ** (self.power - 1) * eta_d
        return value, deriv


@dataclass(frozen=True)
class TrigCoefficient:
    """Per-curve trigonometric polynomials, differentiated term by term."""

    per_curve: tuple[tuple[np.ndarray, np.ndarray], ...]

    def __post_init__(self):
        norm = tuple(
            (np.asarray(p, dtype=int).ravel(), np.asarray(c, dtype=complex).ravel())
            for p, c in self.per_curve
        )
        object.__setattr__(self, "per_curve", norm)

    def jet(self, region: Region, k: int, s):
        powers, coeffs = self.per_curve[k]
        s_arr = np.asarray(s, dtype=float)
        phase = np.exp(1j * np.multiply.outer(s_arr, powers.astype(float)))
        value = phase @ coeffs
        deriv = phase @ (1j * powers * coeffs)
        if s_arr.ndim == 0:
            return complex(value), complex(deriv)
        return value, deriv


Coefficient = Union[One, ShiftedPower, TrigCoefficient]


def coeff_jet(coeff: Coefficient, region: Region, k: int, s):
    """Exact (A, A') at parameter s on curve k; raises on a vanishing A."""
    value, deriv = coeff.jet(region, k, s)
    if np.abs(value).min() < MIN_MODULUS:
        raise ZeroCoefficient(f"|A| < {MIN_MODULUS:g} on curve {k}")
    return value, deriv


def sample(coeff: Coefficient, region: Region, grid: ParamGrid):
    """Flat (A, A') arrays on the grid, curve-major, length m * n."""
    values, derivs = [], []
    for k in range(region.m):
        v, d = coeff_jet(coeff, region, k, grid.nodes)
        values.append(v)
        derivs.append(d)
    return np.concatenate(values), np.concatenate(derivs)


@dataclass(frozen=True)
class IndexReport:
    """Per-curve and total winding of A plus the derived dimension counts.

    ``dim_S_plus_bounds`` / ``codim_R_plus_bounds`` are closed intervals;
    they collapse to a point except when the total index sits in the
    intermediate range -m+1 .. -1, where only bounds are known.
    """

    kappa_per_curve: tuple[int, ...]
    kappa: int
    dim_S_minus: int
    codim_R_minus: int
    dim_null_I_plus_N: int
    dim_null_I_minus_N: int
    dim_S_plus_bounds: tuple[int, int]
    codim_R_plus_bounds: tuple[int, int]


def predict_dimensions(kappa_per_curve) -> IndexReport:
    """Solvability dimensions as functions of the per-curve indices."""
    kj = tuple(int(k) for k in kappa_per_curve)
    m = len(kj)
    kappa = sum(kj)
    dim_s_minus = sum(max(0, 2 * k + 1) for k in kj)
    codim_r_minus = sum(max(0, -2 * k - 1) for k in kj)
    if kappa >= 0:
        s_plus = (0, 0)
        r_plus = (2 * kappa + m, 2 * kappa + m)
    elif kappa <= -m:
        s_plus = (-2 * kappa - m, -2 * kappa - m)
        r_plus = (0, 0)
    else:
        # intermediate range: only an interval is known; dimensions cannot
        # be negative so the lower ends are clamped at zero
        s_plus = (max(0, -2 * kappa - m), -kappa)
        r_plus = (max(0, 2 * kappa + m), m + kappa)
    return IndexReport(
        kappa_per_curve=kj,
        kappa=kappa,
        dim_S_minus=dim_s_minus,
        codim_R_minus=codim_r_minus,
        dim_null_I_plus_N=dim_s_minus,
        dim_null_I_minus_N=codim_r_minus,
        dim_S_plus_bounds=s_plus,
        codim_R_plus_bounds=r_plus,
    )


def index_of(coeff: Coefficient, region: Region, grid: ParamGrid | None = None) -> IndexReport:
    """Winding of A about 0 along each curve, by argument accumulation.

    The accumulation grid starts at the supplied grid size (or 64) and is
    doubled until the count settles on an integer, so the result is exact
    for any admissible coefficient.
    """
    n0 = grid.n if grid is not None else 64
    kappas = []
    for k in range(region.m):
        kappas.append(winding_number(
            lambda s, k=k: coeff.jet(region, k, s)[0],
            n0=n0,
            min_modulus=MIN_MODULUS,
            on_small=ZeroCoefficient,
        ))
    return predict_dimensions(kappas)


def load_coefficient(source) -> Coefficient:
    """Build a coefficient from a JSON file path, JSON text, or parsed dict."""
    obj = _parse_json_source(source)
    kind = obj.get("type")
    if kind == "one":
        return One()
    if kind == "shifted_power":
        x, y = obj["z0"]
        return ShiftedPower(z0=complex(float(x), float(y)), power=int(obj["power"]))
    if kind == "trig":
        per_curve = []
        for rows in obj["per_curve"]:
            powers = [int(r[0]) for r in rows]
            coeffs = [complex(float(r[1]), float(r[2])) for r in rows]
            per_curve.append((np.asarray(powers), np.asarray(coeffs)))
        return TrigCoefficient(tuple(per_curve))
    raise ValueError(f"unknown coefficient type {kind!r}")
