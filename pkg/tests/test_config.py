# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import logging

import pytest
from fixtures import *

from implode.config import DEFAULTS, SolverConfig, get_env_log_level, LOG_ENVIRONMENT_VARIABLE


def test_defaults():
    cfg = SolverConfig()
    assert cfg.to_dict() == DEFAULTS
    assert isinstance(cfg.terms, int)
    assert cfg.rtol == 1e-11
    assert cfg.z_max == 10.0
    assert cfg.method == "DOP853"


def test_invalid_settings():
    with pytest.raises(ValueError):
        SolverConfig(tolerance=1e-3)
    with pytest.raises(ValueError):
        SolverConfig(terms=0)
    with pytest.raises(ValueError):
        SolverConfig(terms=500)
    with pytest.raises(ValueError):
        SolverConfig(rtol=-1.0)
    with pytest.raises(ValueError):
        SolverConfig(method="LSODA")


def test_from_yaml():
    cfg = SolverConfig.from_yaml("rtol: 1.0e-10\nterms: 80\n")
    assert cfg.rtol == 1e-10
    assert cfg.terms == 80
    assert cfg.atol == DEFAULTS["atol"]

    assert SolverConfig.from_yaml("") == SolverConfig()
    with pytest.raises(ValueError):
        SolverConfig.from_yaml("- rtol\n- atol\n")


def test_from_file(tmpdir):
    path = tmpdir.join("solver.yml")
    path.write("z_max: 20\n")
    assert SolverConfig.from_file(str(path)).z_max == 20.0


def test_replace_and_halved():
    cfg = SolverConfig()
    assert cfg.replace(terms=40).terms == 40
    assert cfg.terms == 60

    fine = cfg.halved()
    assert fine.rtol == cfg.rtol / 2
    assert fine.atol == cfg.atol / 2
    assert fine.method == cfg.method
    assert fine != cfg
    assert hash(cfg) == hash(SolverConfig())


def test_env_log_level(monkeypatch):
    monkeypatch.delenv(LOG_ENVIRONMENT_VARIABLE, raising=False)
    assert get_env_log_level() == logging.WARNING

    monkeypatch.setenv(LOG_ENVIRONMENT_VARIABLE, "debug")
    assert get_env_log_level() == logging.DEBUG

    monkeypatch.setenv(LOG_ENVIRONMENT_VARIABLE, "15")
    assert get_env_log_level() == 15

    monkeypatch.setenv(LOG_ENVIRONMENT_VARIABLE, "loud")
    assert get_env_log_level(default=logging.INFO) == logging.INFO
