# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import json
import argparse

import pytest
from fixtures import *

import implode.main
import implode.freeze
from test_freeze import HEADER, ROWS


def test_main_critical(tmpdir):
    path = str(tmpdir.join("critical.json"))
    assert implode.main.main(["critical-ell", "-q", "--k", "2..6", "--format", "json", "--out", path]) == 0
    with open(path, "r") as f:
        doc = json.loads(f.read())
    assert [row["k"] for row in doc["critical"]] == [2, 3, 4, 5, 6]
    assert doc["critical"][0]["ell1"] == pytest.approx(CRITICAL_TABLE[0][1], rel=1e-6)


def test_main_critical_text(capsys):
    assert implode.main.main(["critical-ell", "-q", "--color", "never", "--k", "1"]) == 0
    out, _ = capsys.readouterr()
    assert "ell1" in out


def test_bad_k():
    with pytest.raises(SystemExit) as e:
        implode.main.main(["critical-ell", "--k", "0"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        implode.main.main(["solve", "--k", "2..3", "--ell", "2"])
    assert e.value.code == 2


def test_solve_inadmissible():
    # ell1(3) < 2
    assert implode.main.main(["solve", "-q", "--k", "3", "--ell", "2"]) == implode.main.EXIT_DOMAIN


def test_portrait(tmpdir):
    path = str(tmpdir.join("portrait.csv"))
    argv = ["portrait", "-q", "--plane", "zv", "--k", "3", "--ell", "2", "--m", "1", "--window", "0:3:-1:1"]
    assert implode.main.main(argv + ["--n", "5", "--out", path]) == 0
    with open(path, "r") as f:
        lines = f.read().splitlines()
    assert lines[0] == "kind,name,segment,x,y,dx,dy"
    assert any(line.startswith("arrow,") for line in lines)

    # neither gamma nor m
    argv = ["portrait", "-q", "--plane", "zv", "--k", "3", "--ell", "2", "--window", "0:3:-1:1"]
    assert implode.main.main(argv) == implode.main.EXIT_USAGE


def test_portrait_empty_window():
    argv = ["portrait", "--plane", "zv", "--k", "3", "--ell", "2", "--m", "1", "--window", "0:0:-1:1"]
    with pytest.raises(SystemExit) as e:
        implode.main.main(argv)
    assert e.value.code == 2


def test_profile_from_file(tmpdir):
    src = str(tmpdir.join("profile.csv"))
    dst = str(tmpdir.join("profile.json"))
    implode.freeze.dump(src, HEADER, ROWS)
    assert implode.main.main(["profile", "-q", "--in", src, "--format", "json", "--out", dst]) == 0
    header, rows = implode.freeze.load(dst)
    assert dict(header) == dict(HEADER)
    assert rows == ROWS


def test_profile_needs_parameters():
    assert implode.main.main(["profile", "-q", "--k", "2"]) == implode.main.EXIT_USAGE


def test_bad_config(tmpdir):
    path = tmpdir.join("solver.yml")
    path.write("tolerance: 1\n")
    argv = ["critical-ell", "-q", "--k", "2", "--config", str(path)]
    assert implode.main.main(argv) == implode.main.EXIT_USAGE
    argv = ["critical-ell", "-q", "--k", "2", "--config", str(tmpdir.join("missing.yml"))]
    assert implode.main.main(argv) == implode.main.EXIT_USAGE


def test_verify_table():
    assert implode.main.main(["verify", "-q", "--suite", "table", "--format", "json"]) == 0


def test_parse_grid():
    grid = implode.main.parse_grid("0:20:401")
    assert len(grid) == 401
    assert grid[-1] == 20.0
    for s in ("20:0:10", "0:1:1", "-1:1:10", "0:1"):
        with pytest.raises(argparse.ArgumentTypeError):
            implode.main.parse_grid(s)
