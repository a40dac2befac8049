# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import json
import collections

import numpy as np
import pytest
from fixtures import *

import implode.render
import implode.render.utils
import implode.render.default
from implode.verify import Check


def test_sanitize():
    Row = collections.namedtuple("Row", ["a", "b"])
    doc = implode.render.sanitize(
        {
            "inf": float("inf"),
            "ninf": -np.inf,
            "nan": float("nan"),
            "np": np.float64(0.5),
            "int": np.int64(3),
            "flag": np.bool_(True),
            "array": np.array([1.0, 2.0]),
            "row": Row(1, (2.0, 3.0)),
        }
    )
    assert doc == {
        "inf": "inf",
        "ninf": "-inf",
        "nan": "nan",
        "np": 0.5,
        "int": 3,
        "flag": True,
        "array": [1.0, 2.0],
        "row": {"a": 1, "b": [2.0, 3.0]},
    }
    assert type(doc["np"]) is float
    assert type(doc["flag"]) is bool


def test_render_json_is_shortest_round_trip():
    x = 0.1 + 0.2
    doc = json.loads(implode.render.render_json({"x": x, "y": np.float64(1.0) / 3}))
    assert doc["x"] == x
    assert doc["y"] == 1.0 / 3


def test_format_number():
    assert implode.render.format_number(None) == ""
    assert implode.render.format_number(float("inf")) == "inf"
    assert implode.render.format_number(-np.inf) == "-inf"
    assert implode.render.format_number(0.1) == "0.10000000000000001"
    assert float(implode.render.format_number(1.0 / 3)) == 1.0 / 3
    assert implode.render.format_number(2) == "2"


def test_render_csv():
    s = implode.render.render_csv([{"a": 1.5, "b": None, "c": "ignored"}], ["a", "b"])
    assert s == "a,b\n1.5,\n"


def test_num():
    assert implode.render.utils.num(None) == "-"
    assert implode.render.utils.num("inf") == "inf"
    assert implode.render.utils.num(3) == "3"
    assert implode.render.utils.num(1.0 / 3, 4) == "0.3333"


def test_writeln():
    s = implode.render.utils.StringIO()
    s.writeln("hello")
    assert s.getvalue() == "hello\n"


def test_render_critical_table():
    rows = implode.render.sanitize(
        [
            collections.OrderedDict(
                [
                    ("k", 1),
                    ("ell0", float("inf")),
                    ("ell1", float("inf")),
                    ("ell_star", float("inf")),
                    ("eps_star", None),
                    ("k_minus_k_over_ell1", 1.0),
                    ("R_inf", None),
                ]
            )
        ]
    )
    text = implode.render.default.render_default("critical", rows)
    assert "ell1" in text
    assert "inf" in text


def test_render_checks():
    checks = [
        Check("identities", "lambda sum", {"k": 2, "ell": 2.0}, 1e-16, True),
        Check("ledger", "a2 > 0", {"k": 3, "ell": 1.2, "R": 3.4}, -0.5, False),
    ]
    doc = implode.render.convert_checks_to_result_document(checks)
    assert not doc["passed"]
    assert doc["counts"] == {"total": 2, "failed": 1}

    text = implode.render.default.render_default("verify", doc)
    assert "a2 > 0" in text
    assert "1 of 2 checks failed" in text


def test_render_profile():
    header = collections.OrderedDict([("k", 2), ("R0", 3.3)])
    rows = [collections.OrderedDict([("Z", 0.0), ("v", 0.0)])]
    text = implode.render.default.render_default("profile", header, rows=rows)
    assert "R0" in text
    assert "3.3" in text


def test_render_unknown_kind():
    with pytest.raises(ValueError):
        implode.render.default.render_default("capabilities", {})


def test_solve_document(solution):
    match, profile = solution
    doc = implode.render.convert_solve_to_result_document(match, profile)
    assert doc["summary"]["R0"] == match.R0
    assert doc["match"]["roots"][0] == match.R0
    assert len(doc["profile"]["seams"]) == 4
    assert "beta_gap" not in doc
    # the document is plain JSON
    assert json.loads(implode.render.render_json(doc)) == doc

    text = implode.render.default.render_default("solve", doc)
    assert "R0" in text
    assert "rho*" in text
