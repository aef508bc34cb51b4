import math

import numpy as np
import pytest

from gnk.coefficient import (
    One,
    ShiftedPower,
    TrigCoefficient,
    coeff_jet,
    index_of,
    load_coefficient,
    predict_dimensions,
    sample,
)
from gnk.errors import ZeroCoefficient
from gnk.geometry import ParamGrid, winding_of_point
from conftest import CENTERS


class TestCoeffJet:
    def test_one(self, three_circles):
        value, deriv = coeff_jet(One(), three_circles, 1, 0.7)
        assert value == 1.0
        assert deriv == 0.0

    def test_shifted_power_equals_curve_jet(self, unit_circle_region):
        # A = eta - 0 on the unit circle reproduces the curve itself
        value, deriv = coeff_jet(ShiftedPower(0.0, 1), unit_circle_region, 0, 0.0)
        assert value == pytest.approx(1.0)
        assert deriv == pytest.approx(-1j)

    def test_shifted_power_square_at_pi(self, unit_circle_region):
        # hand power rule: A = eta^2, A' = 2 eta eta' at s = pi
        value, deriv = coeff_jet(ShiftedPower(0.0, 2), unit_circle_region, 0, math.pi)
        assert value == pytest.approx(1.0)
        assert deriv == pytest.approx(-2j)

    def test_trig_coefficient_term_by_term(self, unit_circle_region):
        coeff = TrigCoefficient(((np.array([0, 2]), np.array([2.0, 0.5j])),))
        s = 0.9
        value, deriv = coeff_jet(coeff, unit_circle_region, 0, s)
        assert value == pytest.approx(2.0 + 0.5j * np.exp(2j * s))
        assert deriv == pytest.approx(0.5j * 2j * np.exp(2j * s))

    def test_zero_coefficient_raises(self, unit_circle_region):
        # A = eta - 1 vanishes at s = 0
        bad = ShiftedPower(1.0, 1)
        with pytest.raises(ZeroCoefficient):
            coeff_jet(bad, unit_circle_region, 0, 0.0)

    def test_sample_layout(self, three_circles, grid64):
        values, derivs = sample(ShiftedPower(CENTERS[0], 1), three_circles, grid64)
        assert values.shape == (3 * 64,)
        eta, eta_d, _ = three_circles.sample(grid64)
        assert np.allclose(values, eta - CENTERS[0])
        assert np.allclose(derivs, eta_d)


class TestIndex:
    def test_one_has_zero_index(self, three_circles):
        report = index_of(One(), three_circles)
        assert report.kappa_per_curve == (0, 0, 0)
        assert report.kappa == 0

    def test_shifted_power_in_last_hole(self, three_circles):
        report = index_of(ShiftedPower(CENTERS[2], 1), three_circles)
        assert report.kappa_per_curve == (0, 0, -1)

    def test_shifted_power_square(self, three_circles):
        report = index_of(ShiftedPower(CENTERS[2], 2), three_circles)
        assert report.kappa_per_curve == (0, 0, -2)

    def test_index_matches_point_winding(self, three_circles):
        # kappa_j of (eta - z0)^k is k times the winding of curve j about z0
        for power in (1, 2, 3):
            report = index_of(ShiftedPower(CENTERS[1], power), three_circles)
            expected = tuple(
                power * winding_of_point(c, CENTERS[1])
                for c in three_circles.curves
            )
            assert report.kappa_per_curve == expected

    def test_grid_doubling_invariance(self, three_circles):
        coeff = ShiftedPower(CENTERS[2], 2)
        a = index_of(coeff, three_circles, ParamGrid(64))
        b = index_of(coeff, three_circles, ParamGrid(128))
        assert a.kappa_per_curve == b.kappa_per_curve


class TestPredictDimensions:
    def test_all_zero_indices(self):
        report = predict_dimensions((0, 0, 0))
        assert report.dim_S_minus == 3
        assert report.dim_S_plus_bounds == (0, 0)
        assert report.dim_null_I_minus_N == 0
        assert report.codim_R_plus_bounds == (3, 3)

    def test_intermediate_case_bounds(self):
        report = predict_dimensions((-1, 0))
        assert report.dim_null_I_minus_N == 1
        assert report.dim_S_minus == 1
        assert report.dim_S_plus_bounds == (0, 1)

    def test_positive_index(self):
        report = predict_dimensions((1, 0, 0))
        assert report.dim_S_minus == 5
        assert report.dim_S_plus_bounds == (0, 0)
        assert report.codim_R_plus_bounds == (5, 5)

    def test_strongly_negative_index(self):
        report = predict_dimensions((-2, -1, -1))
        assert report.kappa == -4
        assert report.dim_S_plus_bounds == (5, 5)
        assert report.codim_R_plus_bounds == (0, 0)

    def test_totals_are_consistent(self):
        report = predict_dimensions((2, -1, 0, -3))
        assert report.kappa == sum(report.kappa_per_curve)
        assert report.dim_S_minus == report.dim_null_I_plus_N
        assert report.codim_R_minus == report.dim_null_I_minus_N


class TestLoadCoefficient:
    def test_one(self):
        assert isinstance(load_coefficient({"type": "one"}), One)

    def test_shifted_power(self):
        coeff = load_coefficient({"type": "shifted_power", "z0": [1.0, -2.0], "power": 3})
        assert coeff == ShiftedPower(1.0 - 2.0j, 3)

    def test_trig(self, unit_circle_region):
        coeff = load_coefficient({"type": "trig", "per_curve": [[[0, 2.0, 0.0], [1, 0.0, 1.0]]]})
        value, _ = coeff_jet(coeff, unit_circle_region, 0, 0.0)
        assert value == pytest.approx(2.0 + 1j)

    def test_unknown_rejected(self):
        with pytest.raises(ValueError):
            load_coefficient({"type": "rational"})
