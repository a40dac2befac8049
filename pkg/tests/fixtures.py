# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import os
import os.path
import collections
from functools import lru_cache

import pytest

import implode.profile
from implode.config import SolverConfig
from implode.params import b_constants, params_at_R

CD = os.path.dirname(__file__)

# (k, ell, R) points with R in (3, 4), covering k <= 2 ell and k > 2 ell
ADMISSIBLE_POINTS = [
    (1, 1.5, 3.2),
    (1, 3.0, 3.6),
    (2, 1.5, 3.3),
    (2, 2.0, 3.5),
    (2, 5.0, 3.7),
    (3, 1.2, 3.4),
    (4, 1.15, 3.8),
]

# (k, ell) pairs the full pipeline is run on
SOLVE_POINTS = [
    (1, 3.0),
    (2, 2.0),
    (2, 5.0),
    (3, 1.2),
    (4, 1.2),
]

# (k, ell1, eps* at ell1, k - k/ell1)
CRITICAL_TABLE = [
    (2, 1.881587232, 9.581746731, 0.937067617),
    (3, 1.391124091, 3.045800645, 0.8434706),
    (4, 1.2622855, 1.74343538, 0.83114477),
    (5, 1.199483016, 1.207995911, 0.831537476),
    (6, 1.161595181, 0.92023964, 0.834689316),
]

Point = collections.namedtuple("Point", ["params", "sonic", "coeffs"])


@lru_cache()
def get_point(k, ell, R):
    params, sonic = params_at_R(k, ell, R)
    return Point(params, sonic, b_constants(params, sonic))


@lru_cache()
def get_solution(k, ell):
    """(MatchResult, GlobalProfile) for the default configuration; solves are expensive, so memoize."""
    return implode.profile.solve(k, ell, cfg=SolverConfig())


def make_test_id(values):
    return "-".join(map(str, values))


def parametrize(params, values, **kwargs):
    """
    extend `pytest.mark.parametrize` to render parameter tuples readably.
    rendered ID might look something like:
        2-2.0-3.5
    """
    ids = list(map(make_test_id, values))
    return pytest.mark.parametrize(params, values, ids=ids, **kwargs)


@pytest.fixture
def point(request):
    return get_point(*request.param)


@pytest.fixture
def k2_point():
    # k=2, ell=2 at R=3.5 pins gamma=2
    return get_point(2, 2.0, 3.5)


@pytest.fixture
def solution():
    return get_solution(2, 2.0)


@pytest.fixture
def profile(solution):
    return solution[1]


@pytest.fixture
def solved(request):
    """(MatchResult, GlobalProfile) for the (k, ell) pair given as the indirect parameter."""
    return get_solution(*request.param)
