"""Shared independent oracles and sample builders for the test suite.

Everything here deliberately avoids the library's own evaluation paths:
the alternate-point quadrature for the conjugation, brute-force argument
accumulation for windings, and rational functions with poles in the holes
as exactly known solutions.
"""

from __future__ import annotations

import numpy as np

TWO_PI = 2.0 * np.pi


def wittich_apply(phi: np.ndarray) -> np.ndarray:
    """Alternate-point trapezoidal rule for the cotangent principal value.

    Approximates (1/(2 pi)) PV int cot((s_i - t)/2) phi(t) dt using only
    the nodes of opposite parity, with weight 2 * (2 pi / n) each.  Exact
    on the band resolved by the grid, which makes it an independent oracle
    for the spectral conjugation.
    """
    n = len(phi)
    assert n % 2 == 0
    s = np.arange(n) * (TWO_PI / n)
    out = np.zeros(n)
    j = np.arange(n)
    for i in range(n):
        mask = ((i - j) % 2) == 1
        out[i] = (2.0 / n) * np.sum(phi[mask] / np.tan((s[i] - s[mask]) / 2.0))
    return out


def brute_force_winding(values: np.ndarray) -> float:
    """Plain argument accumulation over a closed loop of samples (in turns)."""
    steps = np.angle(np.roll(values, -1) / values)
    return float(steps.sum() / TWO_PI)


def rational_values(z, terms) -> np.ndarray:
    """f(z) = sum a / (z - c) for (c, a) pole terms; analytic off the poles."""
    z = np.asarray(z, dtype=complex)
    total = np.zeros_like(z)
    for c, a in terms:
        total = total + a / (z - c)
    return total


def band_limited(rng: np.random.Generator, m: int, n: int, band: int,
                 *, zero_mean: bool = False) -> np.ndarray:
    """Random real trig polynomial per curve with frequencies up to band."""
    s = np.arange(n) * (TWO_PI / n)
    phi = np.zeros(m * n)
    for k in range(m):
        block = slice(k * n, (k + 1) * n)
        for p in range(1, band + 1):
            phi[block] += rng.normal() * np.cos(p * s) + rng.normal() * np.sin(p * s)
        if not zero_mean:
            phi[block] += rng.normal()
    return phi


def central_difference(fn, s: float, step: float):
    """Second-order central difference of a scalar-to-complex function."""
    return (fn(s + step) - fn(s - step)) / (2.0 * step)
