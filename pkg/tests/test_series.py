# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import warnings

import pytest
from fixtures import *

import implode.series
from implode.errors import PoleError, RadiusError, TailWarning
from implode.fields import field_Zv, field_zu
from implode.params import check_pole


@parametrize("point", ADMISSIBLE_POINTS, indirect=True)
def test_p0_leading_coefficient(point):
    params = point.params
    s = implode.series.p0_series(params)
    assert s.kind == "P0_phi"
    assert s.coeffs[0] == pytest.approx(params.m / (params.k + 1.0), rel=1e-15)


@parametrize("point", ADMISSIBLE_POINTS, indirect=True)
def test_p0_follows_the_field(point):
    params = point.params
    s = implode.series.p0_series(params)
    Z = min(0.05, 0.25 * implode.series.p0_radius_Z(s))
    v, dv, _ = implode.series.p0_v(s, Z)
    Dv, DZ = field_Zv((Z, v), params)
    assert dv == pytest.approx(Dv / DZ, rel=1e-8)


@parametrize("point", ADMISSIBLE_POINTS, indirect=True)
def test_q1_low_order_coefficients(point):
    params, sonic, coeffs = point
    s = implode.series.q1_series(params, sonic)
    assert s.coeffs[0] == params.eps
    assert s.coeffs[1] == sonic.a1
    assert s.coeffs[2] == pytest.approx(coeffs.a2, rel=1e-9)
    assert s.coeffs[3] == pytest.approx(coeffs.a3, rel=1e-9)
    assert s.coeffs[4] == pytest.approx(coeffs.a4, rel=1e-9)


def test_q1_solves_the_zu_field(k2_point):
    params, sonic, _ = k2_point
    s = implode.series.q1_series(params, sonic)
    for z in (-0.005, -0.002, 0.002, 0.005):
        u, du = s(z), s.derivative(z)
        Du, Dz = field_zu((z, u), params)
        assert du * Dz == pytest.approx(Du, rel=1e-8, abs=1e-10)


def test_q1_order_bounds(k2_point):
    params, sonic, _ = k2_point
    with pytest.raises(ValueError):
        implode.series.q1_series(params, sonic, N=0)
    with pytest.raises(ValueError):
        implode.series.p0_series(params, N=implode.series.MAX_TERMS + 1)


def test_pole_guard(k2_point):
    params, sonic, _ = k2_point
    with pytest.raises(PoleError) as e:
        implode.series.q1_series(params, sonic._replace(R=3.0))
    assert e.value.pole == 3

    with pytest.raises(PoleError):
        check_pole(4.0 - 1e-10)
    check_pole(3.5)


def test_radius_of_geometric_series():
    coeffs = [2.0 ** n for n in range(21)]
    assert implode.series.radius_estimate(coeffs) == pytest.approx(0.25)
    assert implode.series.radius_estimate(coeffs, damping=1.0) == pytest.approx(0.5)
    # nothing beyond the constant term
    assert implode.series.radius_estimate([1.0, 0.0, 0.0]) == 1e6


def test_eval_series_beyond_radius():
    s = implode.series.TaylorSeries("Q1_a", [2.0 ** n for n in range(21)])
    with pytest.raises(RadiusError) as e:
        implode.series.eval_series(s, 0.3)
    assert e.value.radius == pytest.approx(0.25)


def test_eval_series_tail_warning():
    s = implode.series.TaylorSeries("Q1_a", [2.0 ** n for n in range(21)])
    with pytest.warns(TailWarning):
        value, tail = implode.series.eval_series(s, 0.2)
    assert tail > 0

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value, tail = implode.series.eval_series(s, 0.001)
    assert not [w for w in caught if issubclass(w.category, TailWarning)]
    assert value == pytest.approx(1.0 / (1.0 - 0.002), rel=1e-13)


def test_unknown_kind():
    with pytest.raises(ValueError):
        implode.series.TaylorSeries("P2", [1.0])
