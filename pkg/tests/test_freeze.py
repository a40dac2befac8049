# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import json
import collections

import pytest
from fixtures import *

import implode.freeze

HEADER = collections.OrderedDict([("k", 2), ("ell", 2.0), ("R0", 3.2981234567890123), ("ell1", float("inf"))])

ROWS = [
    collections.OrderedDict([("Z", 0.0), ("v", 0.0), ("rho_hat", 1.0), ("u0_hat", -1.0), ("u_hat", 0.0)]),
    collections.OrderedDict(
        [("Z", 0.1), ("v", 0.0666666666666667), ("rho_hat", 0.99), ("u0_hat", -1.002), ("u_hat", 1.0 / 3.0)]
    ),
]


@pytest.mark.parametrize("format", implode.freeze.FORMATS)
def test_serialize(format):
    header, rows = implode.freeze.loads(implode.freeze.dumps(HEADER, ROWS, format=format))
    # keys come back sorted
    assert dict(header) == dict(HEADER)
    # floats survive exactly: 17 digits in csv, repr in json
    assert rows == ROWS


def test_csv_layout():
    s = implode.freeze.dumps(HEADER, ROWS, format="csv")
    lines = s.splitlines()
    assert lines[0].startswith("# ")
    assert json.loads(lines[0][2:])["version"] == 1
    assert lines[1] == "Z,v,rho_hat,u0_hat,u_hat"
    assert lines[2] == "0,0,1,-1,0"
    assert len(lines) == 2 + len(ROWS)


def test_json_marks_infinity():
    doc = json.loads(implode.freeze.dumps(HEADER, ROWS, format="json"))
    assert doc["version"] == 1
    assert doc["header"]["ell1"] == "inf"
    assert list(doc["rows"][0].keys()) == ["Z", "rho_hat", "u0_hat", "u_hat", "v"]


def test_unsupported_version():
    s = implode.freeze.dumps(HEADER, ROWS, format="json")
    doc = json.loads(s)
    doc["version"] = 2
    with pytest.raises(ValueError):
        implode.freeze.loads(json.dumps(doc))

    s = implode.freeze.dumps(HEADER, ROWS, format="csv").replace('"version": 1', '"version": 2')
    with pytest.raises(ValueError):
        implode.freeze.loads(s)


def test_unexpected_columns():
    s = implode.freeze.dumps(HEADER, ROWS, format="csv").replace("rho_hat", "rho")
    with pytest.raises(ValueError):
        implode.freeze.loads(s)


def test_unsupported_format():
    with pytest.raises(ValueError):
        implode.freeze.dumps(HEADER, ROWS, format="xml")


def test_dump_and_load(tmpdir):
    path = str(tmpdir.join("profile.csv"))
    implode.freeze.dump(path, HEADER, ROWS)
    header, rows = implode.freeze.load(path)
    assert dict(header) == dict(HEADER)
    assert rows == ROWS


def test_profile_round_trip(profile, tmpdir):
    import implode.profile

    header = implode.profile.profile_header(profile)
    rows = implode.profile.profile_table(profile, [0.0, 0.5, 1.0, 5.0, 20.0])
    path = str(tmpdir.join("profile.json"))
    implode.freeze.dump(path, header, rows, format="json")
    loaded_header, loaded_rows = implode.freeze.load(path)
    assert loaded_header["R0"] == profile.R0
    assert loaded_rows == rows
