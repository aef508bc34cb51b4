"""Geometry of unbounded multiply connected regions with smooth boundaries.

A region is the unbounded complement of m disjoint closed holes.  Each hole
boundary is a finite trigonometric polynomial

    eta(s) = sum_p a_p exp(i p s),    0 <= s < 2 pi,

traversed clockwise, so the first two derivatives are available in closed
form and the diagonal kernel values downstream are exact.  Parameters live
on the disjoint union of m copies of [0, 2 pi); sampled boundary data is
stored curve-major as flat arrays of length m * n.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from gnk.errors import NonConvergent, OddGridSize, PointTooClose

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Curve:
    """A closed curve given by complex Fourier coefficients.

    ``powers`` and ``coeffs`` define eta(s) = sum a_p exp(i p s).  Instances
    are treated as immutable; orientation and smoothness are checked by
    :func:`validate_region`, never silently corrected.
    """

    powers: np.ndarray
    coeffs: np.ndarray
    label: int = 0

    def __post_init__(self):
        powers = np.asarray(self.powers, dtype=int).ravel()
        coeffs = np.asarray(self.coeffs, dtype=complex).ravel()
        if powers.shape != coeffs.shape:
            raise ValueError("powers and coeffs must have equal length")
        if len(np.unique(powers)) != len(powers):
            raise ValueError("duplicate Fourier powers")
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def centroid(self) -> complex:
        """Mean of eta over one period (the p = 0 coefficient)."""
        mask = self.powers == 0
        return complex(self.coeffs[mask].sum()) if mask.any() else 0j

    def jet(self, s):
        """Evaluate (eta, eta', eta'') at scalar or array parameter s."""
        s_arr = np.asarray(s, dtype=float)
        phase = np.exp(1j * np.multiply.outer(s_arr, self.powers.astype(float)))
        ip = 1j * self.powers
        eta = phase @ self.coeffs
        eta_d = phase @ (ip * self.coeffs)
        eta_dd = phase @ (ip * ip * self.coeffs)
        if s_arr.ndim == 0:
            return complex(eta), complex(eta_d), complex(eta_dd)
        return eta, eta_d, eta_dd


def curve_jet(curve: Curve, s):
    """Exact (eta, eta', eta'') of the trigonometric polynomial at s."""
    return curve.jet(s)


def circle(center: complex, radius: float, label: int = 0) -> Curve:
    """Clockwise circle: eta(s) = center + radius exp(-i s)."""
    return Curve(powers=[0, -1], coeffs=[complex(center), complex(radius)], label=label)


def ellipse(center: complex, a: float, b: float, label: int = 0) -> Curve:
    """Clockwise ellipse eta(s) = center + a cos(s) - i b sin(s)."""
    return Curve(
        powers=[0, 1, -1],
        coeffs=[complex(center), (a - b) / 2.0, (a + b) / 2.0],
        label=label,
    )


def perturbed_circle(
    center: complex,
    radius: float,
    perturbations: Iterable[tuple[int, float]],
    label: int = 0,
) -> Curve:
    """Clockwise star-like curve center + radius (1 + sum eps_k cos(k s)) exp(-i s).

    Each (k, eps_k) term contributes radius*eps_k/2 to the exp(i(k-1)s) and
    exp(-i(k+1)s) coefficients, so the result stays a finite trigonometric
    polynomial.  Large eps_k values can produce non-simple curves; run
    :func:`validate_region` on anything user-supplied.
    """
    acc: dict[int, complex] = {0: complex(center), -1: complex(radius)}
    for k, eps in perturbations:
        if k < 1:
            raise ValueError("perturbation frequency must be >= 1")
        half = radius * eps / 2.0
        acc[k - 1] = acc.get(k - 1, 0j) + half
        acc[-(k + 1)] = acc.get(-(k + 1), 0j) + half
    powers = sorted(acc)
    return Curve(powers=powers, coeffs=[acc[p] for p in powers], label=label)


@dataclass(frozen=True)
class ParamGrid:
    """Uniform periodic grid with n nodes s_i = 2 pi i / n on every curve."""

    n: int

    def __post_init__(self):
        if self.n % 2 != 0:
            raise OddGridSize(f"grid size must be even, got {self.n}")
        if self.n < 8:
            raise ValueError(f"grid size must be >= 8, got {self.n}")

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n) * (TWO_PI / self.n)

    @property
    def weight(self) -> float:
        """Trapezoidal weight 2 pi / n."""
        return TWO_PI / self.n


@dataclass(frozen=True)
class Region:
    """Unbounded region bounded by m disjoint clockwise curves.

    ``hole_points[k]`` is a reference point inside the k-th hole;
    ``mobius_center_index`` (0-based) selects the hole whose reference point
    is the default Mobius center, by default the last one.
    """

    curves: tuple[Curve, ...]
    hole_points: tuple[complex, ...]
    mobius_center_index: int

    @classmethod
    def from_curves(
        cls,
        curves: Sequence[Curve],
        hole_points: Sequence[complex] | None = None,
        mobius_center_index: int | None = None,
    ) -> "Region":
        curves = tuple(curves)
        if not curves:
            raise ValueError("a region needs at least one boundary curve")
        if hole_points is None:
            hole_points = tuple(c.centroid for c in curves)
        else:
            hole_points = tuple(complex(z) for z in hole_points)
        if len(hole_points) != len(curves):
            raise ValueError("need exactly one hole point per curve")
        if mobius_center_index is None:
            mobius_center_index = len(curves) - 1
        if not 0 <= mobius_center_index < len(curves):
            raise ValueError("mobius_center_index out of range")
        return cls(curves, hole_points, mobius_center_index)

    @property
    def m(self) -> int:
        return len(self.curves)

    def sample(self, grid: ParamGrid):
        """Flat (eta, eta', eta'') arrays of length m * n, curve-major."""
        s = grid.nodes
        jets = [c.jet(s) for c in self.curves]
        eta = np.concatenate([j[0] for j in jets])
        eta_d = np.concatenate([j[1] for j in jets])
        eta_dd = np.concatenate([j[2] for j in jets])
        return eta, eta_d, eta_dd


def winding_number(
    evaluate: Callable[[np.ndarray], np.ndarray],
    *,
    n0: int = 64,
    max_doublings: int = 14,
    min_modulus: float = 0.0,
    on_small: type[Exception] = PointTooClose,
) -> int:
    """Winding about 0 of a closed loop s -> evaluate(s), s in [0, 2 pi).

    Accumulates argument increments between consecutive samples and doubles
    the grid until every increment is below pi/2 and the turn count is
    within 0.1 of an integer.  Raises ``on_small`` if the loop passes within
    ``min_modulus`` of the origin and NonConvergent past the refinement cap.
    """
    n = int(n0)
    for _ in range(max_doublings + 1):
        s = np.arange(n) * (TWO_PI / n)
        values = np.asarray(evaluate(s), dtype=complex)
        closest = float(np.abs(values).min())
        if closest <= min_modulus:
            raise on_small(f"loop passes within {closest:.3e} of the origin")
        steps = np.angle(np.roll(values, -1) / values)
        turns = float(steps.sum() / TWO_PI)
        nearest = round(turns)
        if np.abs(steps).max() < math.pi / 2 and abs(turns - nearest) < 0.1:
            return int(nearest)
        n *= 2
    raise NonConvergent(
        f"winding number did not settle after {max_doublings} grid doublings"
    )


def winding_of_point(curve: Curve, z: complex, n: int = 64, *, min_distance: float = 1e-6) -> int:
    """Integer winding number of the curve about the point z."""
    return winding_number(
        lambda s: curve.jet(s)[0] - z,
        n0=n,
        min_modulus=min_distance,
        on_small=PointTooClose,
    )


@dataclass(frozen=True)
class Thresholds:
    """Degeneracy thresholds used by :func:`validate_region`."""

    min_speed: float = 1e-6
    min_distance: float = 1e-6


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    margin: float
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            flag = "ok " if c.passed else "FAIL"
            lines.append(f"[{flag}] {c.name}: margin={c.margin:.3e} {c.detail}".rstrip())
        return "\n".join(lines)


def _turns_about_points(curve: Curve, points: np.ndarray, n: int = 256) -> np.ndarray:
    """Approximate winding of the curve about many points at once.

    No refinement: points close to the curve give unreliable turn counts,
    which callers must screen with a distance check first.
    """
    eta = curve.jet(np.arange(n) * (TWO_PI / n))[0]
    w = eta[None, :] - np.asarray(points, dtype=complex)[:, None]
    steps = np.angle(np.roll(w, -1, axis=1) / w)
    return np.nan_to_num(steps.sum(axis=1) / TWO_PI, nan=0.5)


def _winding_check(name: str, curve: Curve, z: complex, expected: int, n: int,
                   min_distance: float) -> CheckResult:
    try:
        w = winding_of_point(curve, z, n, min_distance=min_distance)
    except (PointTooClose, NonConvergent) as exc:
        return CheckResult(name, False, math.nan, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, w == expected, float(w), f"expected {expected}, got {w}")


def validate_region(region: Region, grid: ParamGrid,
                    thresholds: Thresholds = Thresholds()) -> ValidationReport:
    """Check all region invariants on the given grid.

    Failures are reported as data, not raised: orientation, smoothness and
    disjointness problems in user input should surface side by side, and
    some workflows legitimately run with individual checks failing (for
    example a gallery region that encloses the origin).
    """
    checks: list[CheckResult] = []
    samples = []
    for k, curve in enumerate(region.curves):
        eta, eta_d, _ = curve.jet(grid.nodes)
        samples.append(eta)
        speed = float(np.abs(eta_d).min())
        checks.append(CheckResult(
            f"speed[{k}]", speed >= thresholds.min_speed, speed,
            f"min |eta'| vs {thresholds.min_speed:g}"))
        diff = np.abs(eta[:, None] - eta[None, :])
        np.fill_diagonal(diff, np.inf)
        gap = float(diff.min())
        checks.append(CheckResult(
            f"simple[{k}]", gap >= thresholds.min_distance, gap,
            f"min pairwise sample distance vs {thresholds.min_distance:g}"))
    for j in range(region.m):
        for k in range(j + 1, region.m):
            gap = float(np.abs(samples[j][:, None] - samples[k][None, :]).min())
            # sample distance alone misses interpenetration, so also require
            # each curve's samples to wind zero about the other
            turns = max(
                float(np.abs(_turns_about_points(region.curves[j], samples[k])).max()),
                float(np.abs(_turns_about_points(region.curves[k], samples[j])).max()),
            )
            separated = gap >= thresholds.min_distance and turns < 0.25
            checks.append(CheckResult(
                f"disjoint[{j},{k}]", separated, gap,
                f"min cross-curve distance vs {thresholds.min_distance:g}; "
                f"max mutual winding {turns:.3f}"))
    for k, curve in enumerate(region.curves):
        checks.append(_winding_check(
            f"orientation[{k}]", curve, region.hole_points[k], -1, grid.n,
            thresholds.min_distance))
        for j, other in enumerate(region.curves):
            if j != k:
                checks.append(_winding_check(
                    f"hole_point[{k}] outside curve[{j}]", other,
                    region.hole_points[k], 0, grid.n, thresholds.min_distance))
        checks.append(_winding_check(
            f"zero_in_region[{k}]", curve, 0j, 0, grid.n, thresholds.min_distance))
    return ValidationReport(tuple(checks))


def _parse_json_source(source):
    """Accept a parsed object, a filesystem path, or literal JSON text."""
    if isinstance(source, (dict, list)):
        return source
    text = str(source)
    try:
        is_file = Path(text).exists()
    except OSError:
        is_file = False
    if is_file:
        text = Path(text).read_text()
    return json.loads(text)


def _as_complex(pair) -> complex:
    x, y = pair
    return complex(float(x), float(y))


def _curve_from_dict(entry: dict, label: int) -> Curve:
    kind = entry.get("type")
    if kind == "circle":
        return circle(_as_complex(entry["center"]), float(entry["radius"]), label)
    if kind == "ellipse":
        return ellipse(_as_complex(entry["center"]), float(entry["a"]),
                       float(entry["b"]), label)
    if kind == "trig":
        powers = [int(row[0]) for row in entry["coeffs"]]
        coeffs = [complex(float(row[1]), float(row[2])) for row in entry["coeffs"]]
        return Curve(powers=powers, coeffs=coeffs, label=label)
    raise ValueError(f"unknown curve type {kind!r}")


def load_region(source) -> Region:
    """Build a Region from a JSON file path, JSON text, or parsed dict.

    Circles and ellipses are emitted clockwise by construction; "trig"
    curves are taken as given and must describe clockwise traversal
    (validation rejects the opposite orientation, it is never fixed up).
    """
    obj = _parse_json_source(source)
    curves = [_curve_from_dict(entry, k) for k, entry in enumerate(obj["curves"])]
    hole_points = None
    if obj.get("hole_points") is not None:
        hole_points = [_as_complex(p) for p in obj["hole_points"]]
    return Region.from_curves(curves, hole_points)
