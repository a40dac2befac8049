# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
solver configuration.

every numeric knob of the pipeline lives in `SolverConfig`.
a YAML document can override any subset of them, e.g.::

    rtol: 1.0e-10
    atol: 1.0e-10
    terms: 80
"""
import os
import logging
import collections

import yaml

logger = logging.getLogger(__name__)

LOG_ENVIRONMENT_VARIABLE = "IMPLODE_LOG"

# explicit Runge-Kutta methods of solve_ivp with dense output
INTEGRATOR_METHODS = ("RK45", "DOP853")

DEFAULTS = collections.OrderedDict(
    [
        # solve_ivp method
        ("method", "DOP853"),
        # integrator error control: err <= atol + rtol * |y|
        ("rtol", 1e-11),
        ("atol", 1e-11),
        # max step as a fraction of the integration span
        ("max_step_fraction", 1.0 / 50),
        # series truncation order and its hard cap
        ("terms", 60),
        ("max_terms", 200),
        # excluded neighbourhood of R in {2, 3, 4, ...}
        ("pole_guard", 1e-8),
        ("radius_damping", 0.5),
        ("radius_surrogate", 1e6),
        # matching abscissa: zeta = min(zeta_fraction * radius, zeta_cap / (k + 1))
        ("zeta_fraction", 0.25),
        ("zeta_cap", 0.8),
        ("scan_points", 33),
        # bracket endpoints sit this far inside (3, 4)
        ("bracket_offset", 1e-3),
        ("branch_offset", 1e-6),
        ("tol_R", 1e-12),
        ("tol_residual", 1e-8),
        # sonic window half width: min(window_fraction * radius, window_cap)
        ("window_fraction", 0.5),
        ("window_cap", 0.02),
        ("z_max", 10.0),
        # seed of the P0 trajectory: largest Z whose series tail is below this
        ("seed_tail", 1e-13),
        ("seam_c0", 1e-8),
        ("seam_c1", 1e-6),
    ]
)


class SolverConfig(object):
    def __init__(self, **kwargs):
        super(SolverConfig, self).__init__()
        unknown = set(kwargs.keys()) - set(DEFAULTS.keys())
        if unknown:
            raise ValueError("unknown solver setting(s): %s" % ", ".join(sorted(unknown)))

        for name, default in DEFAULTS.items():
            value = kwargs.get(name, default)
            # keep ints for counts, floats for everything else
            setattr(self, name, type(default)(value))

        if self.terms < 1:
            raise ValueError("terms must be positive, got %d" % self.terms)
        if self.terms > self.max_terms:
            raise ValueError("terms (%d) exceeds the cap of %d" % (self.terms, self.max_terms))
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError("tolerances must be positive")
        if self.method not in INTEGRATOR_METHODS:
            raise ValueError("unsupported integrator method: %s" % self.method)

    def __repr__(self):
        return "SolverConfig(%s)" % ", ".join("%s=%r" % (k, v) for k, v in self.to_dict().items())

    def __eq__(self, other):
        return isinstance(other, SolverConfig) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(tuple(self.to_dict().items()))

    def to_dict(self):
        return collections.OrderedDict((name, getattr(self, name)) for name in DEFAULTS.keys())

    def replace(self, **kwargs):
        values = self.to_dict()
        values.update(kwargs)
        return SolverConfig(**values)

    def halved(self):
        """the same configuration with both integrator tolerances halved."""
        return self.replace(rtol=self.rtol / 2.0, atol=self.atol / 2.0)

    @classmethod
    def from_yaml(cls, s):
        doc = yaml.safe_load(s) or {}
        if not isinstance(doc, dict):
            raise ValueError("solver configuration must be a mapping, got: %s" % type(doc).__name__)
        return cls(**doc)

    @classmethod
    def from_file(cls, path):
        with open(path, "rb") as f:
            return cls.from_yaml(f.read().decode("utf-8"))


def get_env_log_level(default=logging.WARNING):
    """
    parse the level named by `IMPLODE_LOG`, like `DEBUG` or `10`.
    unrecognized values fall back to `default`.
    """
    value = os.environ.get(LOG_ENVIRONMENT_VARIABLE)
    if not value:
        return default

    value = value.strip()
    if value.isdigit():
        return int(value)

    level = logging.getLevelName(value.upper())
    if isinstance(level, int):
        return level

    logger.warning("ignoring unrecognized %s value: %s", LOG_ENVIRONMENT_VARIABLE, value)
    return default
