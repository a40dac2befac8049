# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import pytest
from fixtures import *

import implode.matcher
from implode.config import SolverConfig
from implode.errors import NoSignChange, InadmissibleError
from implode.params import R_STAR
from implode.series import q1_series


def test_bracket():
    cfg = SolverConfig()
    assert implode.matcher.bracket(3, 1.2, cfg) == (3.0 + cfg.bracket_offset, 4.0 - cfg.bracket_offset)
    # k=2 beyond ell1(2): capped by 4 - 1/ell
    lo, hi = implode.matcher.bracket(2, 2.0, cfg)
    assert lo == 3.0 + cfg.bracket_offset
    assert hi == pytest.approx(3.5 - cfg.branch_offset)
    # and by R_STAR for large ell
    assert implode.matcher.bracket(2, 10.0, cfg)[1] == pytest.approx(R_STAR - cfg.branch_offset)


def test_zeta_policy():
    cfg = SolverConfig()
    assert implode.matcher.zeta_policy(2, 1.0, cfg) == pytest.approx(0.25)
    assert implode.matcher.zeta_policy(2, 10.0, cfg) == pytest.approx(0.8 / 3.0)


def test_check_admissible():
    assert implode.matcher.check_admissible(2, 2.0).in_Kstar
    with pytest.raises(InadmissibleError) as e:
        implode.matcher.check_admissible(3, 2.0)
    assert e.value.k == 3
    assert e.value.memberships["in_K"]


def test_u_L_at(k2_point):
    params, sonic, _ = k2_point
    expected = q1_series(params, sonic)(0.01)
    assert implode.matcher.u_L_at(0.01, 3.5, 2, 2.0) == pytest.approx(expected, rel=1e-12)


def test_u_F_at_range():
    with pytest.raises(ValueError):
        implode.matcher.u_F_at(0.5, 3.5, 2, 2.0)
    with pytest.raises(ValueError):
        implode.matcher.u_F_at(0.0, 3.5, 2, 2.0)


def test_find_R0(solution):
    match, _ = solution
    lo, hi = match.diagnostics["bracket"]
    assert 3.0 < lo < match.R0 < hi < 3.5
    assert match.residual < 1e-8
    assert match.R0 == match.diagnostics["roots"][0]
    assert 0 < match.diagnostics["zeta"] < 0.8 / 3.0


def test_residual_changes_sign_at_R0(solution):
    match, _ = solution
    g_lo, _ = implode.matcher.residual_g(match.R0 - 1e-3, 2, 2.0)
    g_hi, _ = implode.matcher.residual_g(match.R0 + 1e-3, 2, 2.0)
    assert g_lo * g_hi < 0


def test_no_sign_change(solution):
    match, _ = solution
    lo = match.diagnostics["bracket"][0]
    cfg = SolverConfig(scan_points=5)
    config = implode.matcher.match_config(2, 2.0, cfg)._replace(bracket=(lo, lo + 0.5 * (match.R0 - lo)))
    with pytest.raises(NoSignChange) as e:
        implode.matcher.find_R0(2, 2.0, cfg=cfg, match=config)
    assert len(e.value.samples) == 5


def test_find_R0_rejects_inadmissible():
    with pytest.raises(InadmissibleError):
        implode.matcher.find_R0(3, 2.0)
