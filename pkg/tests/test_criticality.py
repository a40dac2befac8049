# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import math

import pytest
from fixtures import *

import implode.criticality
from implode.errors import DomainError, RangeError


@parametrize("k,ell1,eps_star,k_minus_k_over_ell1", CRITICAL_TABLE)
def test_critical_table(k, ell1, eps_star, k_minus_k_over_ell1):
    got = implode.criticality.ell1(k)
    assert got == pytest.approx(ell1, rel=1e-6)
    assert implode.criticality.epsilon_star(k, got) == pytest.approx(eps_star, rel=1e-6)
    assert k - k / got == pytest.approx(k_minus_k_over_ell1, rel=1e-6)


def test_ell1_is_infinite_for_k_1():
    assert implode.criticality.ell1(1) == math.inf
    assert implode.criticality.ell_star(1) == math.inf
    assert implode.criticality.ell_star(2) == math.inf
    assert implode.criticality.ell_star(3) == implode.criticality.ell1(3)


def test_ell1_rejects_bad_k():
    with pytest.raises(DomainError):
        implode.criticality.ell1(0)
    with pytest.raises(DomainError):
        implode.criticality.ell1(2.5)


def test_ell0():
    for k in range(1, 6):
        assert implode.criticality.ell0(k) == math.inf
    assert implode.criticality.ell0(6) == pytest.approx(3.0, rel=1e-15)
    # decreasing in k beyond 6
    assert implode.criticality.ell0(8) < implode.criticality.ell0(7) < 3.0


def test_ell_bounds():
    ell_minus, ell_plus = implode.criticality.ell_bounds(2)
    assert ell_minus == pytest.approx((math.sqrt(2.0) - 1.0) ** 2, rel=1e-12)
    assert ell_plus == math.inf
    assert implode.criticality.ell_bounds(6)[1] == pytest.approx(3.0)
    assert implode.criticality.ell_bounds(7)[1] < math.inf


def test_epsilon_star_inverts_f1():
    for (k, ell) in ((2, 1.5), (3, 2.0), (6, 1.5)):
        eps = implode.criticality.epsilon_star(k, ell)
        assert eps > 0
        assert implode.criticality.f1(k, eps) == pytest.approx(implode.criticality.f2(k, ell), rel=1e-12, abs=1e-12)


def test_epsilon_star_range():
    ell_minus, _ = implode.criticality.ell_bounds(3)
    with pytest.raises(RangeError):
        implode.criticality.epsilon_star(3, 0.5 * ell_minus)
    with pytest.raises(RangeError):
        implode.criticality.epsilon_star(6, 3.5)


def test_f_domains():
    with pytest.raises(DomainError):
        implode.criticality.f1(2, -1.0)
    with pytest.raises(DomainError):
        implode.criticality.f2(2, 0.0)
    assert set(implode.criticality.f_functions(2, eps=1.0, ell=2.0).keys()) == {"f1", "f2", "f3"}
    assert set(implode.criticality.f_functions(2, ell=2.0).keys()) == {"f2"}


def test_admissible():
    # k > 2 ell, below ell1(3)
    assert implode.criticality.admissible(3, 1.2) == (True, True, True)
    assert implode.criticality.admissible(3, 2.0) == (True, False, False)
    # k = 1 has no upper critical exponent
    assert implode.criticality.admissible(1, 10.0) == (True, True, True)
    # k = 2 beyond ell1(2) stays in K*
    assert implode.criticality.admissible(2, 2.0) == (True, False, True)
    # beyond ell0(7)
    assert not implode.criticality.admissible(7, 10.0).in_K


def test_report():
    report = implode.criticality.CriticalityReport(3, ell=1.2)
    assert report.in_Kstar
    assert report.ell1 == implode.criticality.ell1(3)
    assert report.E_k_upper == math.inf
    assert report.R_inf(1.2) == implode.criticality.R_inf(3, 1.2)

    report = implode.criticality.CriticalityReport(2)
    assert report.in_K is None


def test_beta_gap():
    gap = implode.criticality.beta_gap(2, 2.0, get_point(2, 2.0, 3.5).params)
    assert gap["not_applicable"]
    # beta = m (ell + 1) / ell with gamma = 2
    assert gap["beta"] == pytest.approx(1.0)
    assert not gap["satisfied"]

    params = get_point(3, 1.2, 3.4).params
    gap = implode.criticality.beta_gap(3, 1.2, params)
    assert not gap["not_applicable"]
    assert gap["satisfied"] == gap["condition"]
    assert gap["threshold"] == pytest.approx(implode.criticality.BETA_GAP_ELL_3)
    # 1.2 sits above ell^*(3)
    assert not gap["guarantee"]


def test_beta_gap_thresholds():
    # ell^*(4) is the root of 5 ell^2 - 42 ell + 53 in (1, 2)
    x = implode.criticality.BETA_GAP_ELL_4
    assert 1 < x < 2
    assert 5 * x * x - 42 * x + 53 == pytest.approx(0.0, abs=1e-12)
    assert 1 < implode.criticality.BETA_GAP_ELL_3 < implode.criticality.ell1(3)


def test_critical_table_rows():
    rows = implode.criticality.critical_table([1, 2])
    assert [row["k"] for row in rows] == [1, 2]
    assert list(rows[0].keys()) == ["k", "ell0", "ell1", "ell_star", "eps_star", "k_minus_k_over_ell1", "R_inf"]
    assert rows[0]["eps_star"] is None
    assert rows[0]["k_minus_k_over_ell1"] == 1.0
    assert rows[1]["ell1"] == pytest.approx(CRITICAL_TABLE[0][1], rel=1e-6)
