# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import numpy as np
import pytest
from fixtures import *

import implode.fields
from implode.errors import DomainError
from implode.params import derive_params


@pytest.fixture
def portrait_params():
    # m=1, ell=2, k=3
    return derive_params(3, 2.0, 2.0)


def test_field_Zv_vanishes_at_P1(portrait_params):
    lm = implode.fields.landmarks(portrait_params)
    Dv, DZ = implode.fields.field_Zv((lm.Z1, lm.v1), portrait_params)
    assert Dv == pytest.approx(0.0, abs=1e-12)
    assert DZ == pytest.approx(0.0, abs=1e-12)


def test_field_Zv_vanishes_at_P0(portrait_params):
    assert implode.fields.field_Zv((0.0, 0.0), portrait_params) == (0.0, 0.0)


def test_field_zu_vanishes_at_Q1(portrait_params):
    Du, Dz = implode.fields.field_zu((0.0, portrait_params.eps), portrait_params)
    assert Du == pytest.approx(0.0, abs=1e-12)
    assert Dz == pytest.approx(0.0, abs=1e-12)


def test_L_u_g_identity():
    rng = np.random.RandomState(0)
    for _ in range(1000):
        k, ell, R = ADMISSIBLE_POINTS[rng.randint(len(ADMISSIBLE_POINTS))]
        params = get_point(k, ell, R).params
        z = rng.uniform(-1.0, 1.0)
        exact = implode.fields.L_u_g_closed_form(z, params)
        got = implode.fields.L_apply(implode.fields.u_g_poly(params), z, params)
        assert abs(got - exact) <= 1e-10 * (1.0 + abs(exact))


@parametrize("point", ADMISSIBLE_POINTS, indirect=True)
def test_Dz_on_u_g(point):
    params = point.params
    for z in np.linspace(-0.5, 0.5, 11):
        u = implode.fields.curve_eval("u_g", z, params)
        _, Dz = implode.fields.field_zu((z, u), params)
        assert Dz == pytest.approx(implode.fields.Dz_on_u_g_closed_form(z, params), rel=1e-10, abs=1e-10)


@parametrize("point", ADMISSIBLE_POINTS, indirect=True)
def test_L_closed_forms(point):
    params, sonic, coeffs = point
    for name in ("u1", "u2", "u3"):
        barrier = implode.fields.barrier_poly(name, params, sonic, coeffs)
        for z in np.linspace(-0.3, 0.3, 7):
            exact = barrier.L(z, params)
            closed = implode.fields.L_closed_form(name, z, params, sonic, coeffs)
            assert closed == pytest.approx(exact, rel=1e-9, abs=1e-9 * (1.0 + abs(exact))), name


def test_U3_expands_u1(k2_point):
    params, sonic, coeffs = k2_point
    U3 = implode.fields.barrier_poly("U3", params, sonic, coeffs)
    for z in np.linspace(-0.4, 0.1, 11):
        expected = params.eps + sonic.a1 * z + coeffs.M * z ** 2 * (z - 2 * coeffs.xi2) ** 2
        assert U3(z) == pytest.approx(expected, rel=1e-10)


def test_U3star_breakpoint(k2_point):
    params, sonic, coeffs = k2_point
    U3star = implode.fields.barrier_poly("U3star", params, sonic, coeffs)
    u1 = implode.fields.barrier_poly("u1", params, sonic, coeffs)
    U3 = implode.fields.barrier_poly("U3", params, sonic, coeffs)
    brk = 2 * coeffs.xi2
    assert U3star.breakpoints == [brk]
    assert U3star(brk - 0.1) == pytest.approx(u1(brk - 0.1))
    assert U3star(brk / 2) == pytest.approx(U3(brk / 2))
    # continuous at the breakpoint, where M z^2 (z - 2 xi2)^2 vanishes
    assert U3(brk) == pytest.approx(u1(brk))


def test_unknown_barrier(k2_point):
    with pytest.raises(DomainError):
        implode.fields.barrier_poly("U4", *k2_point)


def test_curve_domains(portrait_params):
    lm = implode.fields.landmarks(portrait_params)
    with pytest.raises(DomainError):
        implode.fields.curve_eval("v1", 2 * lm.Ze, portrait_params)
    with pytest.raises(DomainError):
        implode.fields.curve_eval("v2", 0.0, portrait_params)
    with pytest.raises(DomainError):
        implode.fields.curve_eval("u_b", lm.zQ0, portrait_params)
    with pytest.raises(DomainError):
        implode.fields.curve_eval("nope", 0.0, portrait_params)


def test_nullclines_meet_at_P1(portrait_params):
    lm = implode.fields.landmarks(portrait_params)
    # the black curve Dv=0 passes through P1, as does v_minus
    assert implode.fields.curve_eval("Z_b", lm.v1, portrait_params) == pytest.approx(lm.Z1)
    assert implode.fields.curve_eval("v1", lm.Z1, portrait_params) == pytest.approx(lm.v1)


def test_jacobian_of_psi_is_positive(portrait_params):
    from implode.renorm import jacobian_psi

    for (Z, v) in [(0.1, 0.05), (0.8, 0.3), (2.0, 0.4)]:
        assert jacobian_psi(Z, v, portrait_params) > 0
