# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
self-checks over parameter grids: exact identities, the inequality ledger, the critical exponent table,
and end-to-end solves.

each check yields a `Check` row; `margin` is positive exactly when the check passes
(tolerance minus residual for identities, the signed slack for inequalities).
"""
import logging
import collections

import tqdm
import numpy as np

import implode.profile
import implode.criticality
from implode.config import SolverConfig
from implode.errors import DomainError, NumericalError
from implode.fields import L_apply, u_g_poly, L_closed_form, L_u_g_closed_form
from implode.params import (
    R_STAR,
    identities,
    b_constants,
    params_at_R,
    k2_rational_forms,
    k2_radical_forms,
)
from implode.renorm import psi, theta, dZdz_at_Q1, window_derivative

logger = logging.getLogger(__name__)

SUITES = ("identities", "ledger", "table", "pipeline")

Check = collections.namedtuple("Check", ["suite", "name", "point", "margin", "passed"])

# (k, ell1, eps* at ell1, k - k/ell1)
CRITICAL_TABLE = (
    (2, 1.881587232, 9.581746731, 0.937067617),
    (3, 1.391124091, 3.045800645, 0.8434706),
    (4, 1.2622855, 1.74343538, 0.83114477),
    (5, 1.199483016, 1.207995911, 0.831537476),
    (6, 1.161595181, 0.92023964, 0.834689316),
)
# further k, quoted to fewer digits
CRITICAL_TABLE_EXTENDED = (
    (7, 1.136046, 0.741719888, 0.838279501, 1e-6),
    (10, 1.09259, 0.467059729, None, 1e-5),
)

IDENTITY_PAIRS = ((1, 1.5), (1, 3.0), (2, 1.5), (2, 2.0), (2, 5.0), (3, 1.2))
IDENTITY_RS = (3.1, 3.3, 3.5, 3.7, 3.9)

# (k, ell) inside K1
K1_PAIRS = ((1, 1.5), (1, 3.0), (2, 1.2), (2, 1.5), (2, 1.8), (3, 1.2), (3, 1.35), (4, 1.15), (5, 1.1))
K1_RS = tuple(np.linspace(3.05, 3.95, 10))

PIPELINE_PAIRS = ((1, 3.0), (2, 2.0), (2, 5.0), (3, 1.2), (4, 1.2))


def _point(**kwargs):
    return collections.OrderedDict(sorted(kwargs.items()))


def _identity(suite, name, point, residual, tol):
    return Check(suite, name, point, tol - residual, residual <= tol)


def _positive(suite, name, point, value):
    return Check(suite, name, point, value, value > 0)


def _grid(pairs, Rs):
    for (k, ell) in pairs:
        for R in Rs:
            yield k, ell, float(R)


def identity_checks(tol=1e-10, samples=1000, seed=0):
    checks = []
    rng = np.random.RandomState(seed)
    points = []
    for (k, ell, R) in _grid(IDENTITY_PAIRS, IDENTITY_RS):
        params, sonic = params_at_R(k, ell, R)
        coeffs = b_constants(params, sonic)
        points.append((params, sonic, coeffs))
        point = _point(k=k, ell=ell, R=R)
        for (name, residual) in identities(params, sonic, coeffs).items():
            checks.append(_identity("identities", name, point, residual, tol))

        z = np.linspace(-0.5, 0.5, 11)
        for (name, coeffs_u) in (
            ("u1", [params.eps, sonic.a1]),
            ("u2", [params.eps, sonic.a1, coeffs.a2]),
            ("u3", [params.eps, sonic.a1, coeffs.a2, coeffs.a3]),
        ):
            exact = L_apply(coeffs_u, z, params)
            closed = np.array([L_closed_form(name, x, params, sonic, coeffs) for x in z])
            scale = 1.0 + np.max(np.abs(exact))
            residual = float(np.max(np.abs(exact - closed)) / scale)
            checks.append(_identity("identities", "L(%s) closed form" % name, point, residual, tol))

        # the window curve leaves Q1 with the closed-form slope
        dZ, _ = window_derivative(0.0, params.eps, sonic.a1, params)
        residual = abs(dZ - dZdz_at_Q1(params, sonic)) / max(1.0, abs(dZ))
        checks.append(_identity("identities", "dZ/dz at Q1", point, residual, tol))
        checks.append(_positive("identities", "dZ/dz at Q1 < 0", point, -dZ))

    worst = 0.0
    for _ in range(samples):
        params, _, _ = points[rng.randint(len(points))]
        z = rng.uniform(-1.0, 1.0)
        value = L_u_g_closed_form(z, params)
        worst = max(worst, abs(L_apply(u_g_poly(params), z, params) - value) / (1.0 + abs(value)))
    checks.append(_identity("identities", "L(u_g) = 2k ell(1-ell) z(gamma+z)^3", _point(samples=samples), worst, tol))

    worst = 0.0
    for _ in range(samples):
        params, _, _ = points[rng.randint(len(points))]
        v = rng.uniform(0.05, 0.95)
        Z = rng.uniform(0.05, min(3.0, 0.95 / v))
        Zr, vr = theta(psi((Z, v), params), params)
        worst = max(worst, abs(Zr - Z) / (1.0 + Z), abs(vr - v))
    checks.append(_identity("identities", "theta(psi(p)) = p", _point(samples=samples), worst, 1e-12))

    # k=2, ell=2 pins gamma=2 at R=3.5
    params, sonic = params_at_R(2, 2.0, 3.5)
    coeffs = b_constants(params, sonic)
    recurrence = {
        "eps": params.eps,
        "A": params.A,
        "delta": sonic.delta,
        "a1": sonic.a1,
        "a2": coeffs.a2,
        "B1": coeffs.B1,
        "B2": coeffs.B2,
        "a3": coeffs.a3,
    }
    expected = {
        "eps": 7.0,
        "A": 8.0,
        "delta": 8.0,
        "a1": 14.0,
        "a2": 49 / 3,
        "B1": 82 / 3,
        "B2": 28 / 3,
        "a3": 1036 / 9,
    }
    rational = k2_rational_forms(2.0)
    radical = k2_radical_forms(2.0, 3.5)
    point = _point(k=2, ell=2.0, R=3.5)
    for (name, value) in expected.items():
        routes = (("recurrence", recurrence[name]), ("rational", rational[name]), ("radical", radical.get(name)))
        for (route, got) in routes:
            if got is None:
                continue
            residual = abs(got - value) / abs(value)
            checks.append(_identity("identities", "%s = %.12g (%s)" % (name, value, route), point, residual, tol))
    return checks


def ledger_checks(n_z=50):
    checks = []
    for (k, ell, R) in _grid(K1_PAIRS, K1_RS):
        try:
            params, sonic = params_at_R(k, ell, R)
        except DomainError:
            continue
        coeffs = b_constants(params, sonic)
        point = _point(k=k, ell=ell, R=R)
        checks.append(_positive("ledger", "a2 > 0", point, coeffs.a2))
        checks.append(_positive("ledger", "B1 > 0", point, coeffs.B1))
        checks.append(_positive("ledger", "a3 > 0", point, coeffs.a3))
        checks.append(_positive("ledger", "a3/a2 > 2k-1", point, coeffs.a3 / coeffs.a2 - (2 * k - 1)))
        checks.append(_positive("ledger", "a4 < 0", point, -coeffs.a4))

        zs = np.linspace(coeffs.xi1, 0.0, n_z)
        L3 = max(L_closed_form("u3", z, params, sonic, coeffs) for z in zs[:-1])
        checks.append(_positive("ledger", "L(u3) < 0 on [-eps/a1, 0)", point, -L3))
        f = max(-params.eps - params.A * z + params.B * z * z for z in zs)
        checks.append(_positive("ledger", "f < 0 on [-eps/a1, 0]", point, -f))

    for ell in (1.1, 2.0, 10.0):
        for R in np.linspace(3.0 + 1e-6, 4.0 - 1e-6, 11):
            params, sonic = params_at_R(1, ell, float(R))
            # B2 needs no division by R-3 or R-4
            coeffs = b_constants(params, sonic, guard=0.0)
            checks.append(_positive("ledger", "B2 > 0 (k=1)", _point(k=1, ell=ell, R=float(R)), coeffs.B2))

    for ell in (2.0, 4.0, 10.0):
        hi = min(R_STAR, 4.0 - 1.0 / ell)
        for R in np.linspace(3.0, hi, 12)[1:-1]:
            params, sonic = params_at_R(2, ell, float(R))
            coeffs = b_constants(params, sonic)
            point = _point(k=2, ell=ell, R=float(R))
            checks.append(_positive("ledger", "M > a4", point, coeffs.M - coeffs.a4))
            checks.append(_positive("ledger", "a3 > 4 a2", point, coeffs.a3 - 4.0 * coeffs.a2))
            checks.append(_positive("ledger", "a1 < 2 eps", point, 2.0 * params.eps - sonic.a1))
            checks.append(_positive("ledger", "a2 > 7", point, coeffs.a2 - 7.0))
    return checks


def table_checks(tol=1e-6):
    checks = []
    rows = dict((row["k"], row) for row in implode.criticality.critical_table([k for (k, _, _, _) in CRITICAL_TABLE]))
    for (k, l1, eps, gap) in CRITICAL_TABLE:
        row = rows[k]
        point = _point(k=k)
        checks.append(_identity("table", "ell1", point, abs(row["ell1"] - l1), tol))
        checks.append(_identity("table", "eps*(ell1)", point, abs(row["eps_star"] - eps), tol))
        checks.append(_identity("table", "k - k/ell1", point, abs(row["k_minus_k_over_ell1"] - gap), tol))

    for (k, l1, eps, gap, quoted) in CRITICAL_TABLE_EXTENDED:
        point = _point(k=k)
        got = implode.criticality.ell1(k)
        checks.append(_identity("table", "ell1", point, abs(got - l1), quoted))
        eps_got = implode.criticality.epsilon_star(k, got)
        checks.append(_identity("table", "eps*(ell1)", point, abs(eps_got - eps), 1e-5))
        if gap is not None:
            checks.append(_identity("table", "k - k/ell1", point, abs(k - k / got - gap), quoted))

    ell1_1 = implode.criticality.ell1(1)
    checks.append(Check("table", "ell1(1) = inf", _point(k=1), None, ell1_1 == implode.criticality.INF))
    return checks


def pipeline_checks(cfg=None, pairs=PIPELINE_PAIRS, residual_grid=50, progress=False):
    cfg = cfg or SolverConfig()
    checks = []
    for (k, ell) in tqdm.tqdm(pairs, disable=not progress, desc="solving", unit=" pair"):
        point = _point(k=k, ell=ell)
        try:
            match, profile = implode.profile.solve(k, ell, cfg=cfg)
        except NumericalError as e:
            logger.error("pipeline k=%d ell=%g failed: %s", k, ell, str(e))
            checks.append(Check("pipeline", "solve", point, None, False))
            continue
        point["R0"] = match.R0

        finite = [g for (_, g) in match.diagnostics["samples"] if np.isfinite(g)]
        checks.append(Check("pipeline", "g(lo) > 0 > g(hi)", point, None, finite[0] > 0 > finite[-1]))
        checks.append(_identity("pipeline", "|g(R0)|", point, match.residual, 1e-8))
        for (name, (value, ok)) in implode.profile.property_report(profile).items():
            margin = value if isinstance(value, float) else None
            checks.append(Check("pipeline", name, point, margin, bool(ok)))

        if (k, ell) == (2, 2.0):
            checks.extend(_convergence_checks(k, ell, cfg, match, profile, point))
            ts = np.linspace(0.0, 0.5, residual_grid)
            rs = np.linspace(0.05, 1.0, residual_grid)
            r1, r2 = implode.profile.pde_residual(profile, ts, rs)
            checks.append(_identity("pipeline", "continuity residual", point, r1, 1e-6))
            checks.append(_identity("pipeline", "momentum residual", point, r2, 1e-6))
            for (name, entry) in implode.profile.even_extension_check(profile).items():
                checks.append(_identity("pipeline", "%s even near 0" % name, point, entry["odd"], 1e-8))
    return checks


def _convergence_checks(k, ell, cfg, match, profile, point):
    fine = cfg.halved()
    match2, profile2 = implode.profile.solve(k, ell, cfg=fine)
    return [
        _identity("pipeline", "R0 stable under halved tolerances", point, abs(match2.R0 - match.R0), 1e-9),
        _identity("pipeline", "v_inf stable under halved tolerances", point, abs(profile2.v_inf - profile.v_inf), 1e-9),
    ]


def run_suites(suites, cfg=None, progress=False):
    """
    args:
      suites (list of str): names from SUITES, or ["all"].

    returns:
      list of Check
    """
    if "all" in suites:
        suites = SUITES
    for suite in suites:
        if suite not in SUITES:
            raise DomainError("unknown suite: %s" % suite)

    checks = []
    for suite in suites:
        logger.debug("running suite: %s", suite)
        if suite == "identities":
            checks.extend(identity_checks())
        elif suite == "ledger":
            checks.extend(ledger_checks())
        elif suite == "table":
            checks.extend(table_checks())
        elif suite == "pipeline":
            checks.extend(pipeline_checks(cfg=cfg, progress=progress))

    failed = [c for c in checks if not c.passed]
    if failed:
        logger.warning("-" * 80)
        logger.warning(" %d of %d checks failed:", len(failed), len(checks))
        for c in failed[:20]:
            logger.warning("   %s at %s (margin %s)", c.name, dict(c.point), c.margin)
        logger.warning("-" * 80)
    return checks
