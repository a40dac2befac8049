# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
shooting in R.

for each R in (3, 4) two branches reach the sonic point Q1:

  - u_F: the trajectory leaving P0, integrated in the Z-v plane and read through psi.
  - u_L: the analytic expansion at Q1.

the matching residual g(R) = u_L(zeta; R) - u_F(zeta; R) is positive near R=3 and
negative near the upper end of the bracket; its root R0 is where the two branches coincide.
"""
import logging
import warnings
import collections

import tqdm
import numpy as np
import scipy.optimize

import implode.criticality
from implode.ode import integrate, make_event
from implode.config import SolverConfig
from implode.errors import (
    EventMissed,
    StepFailure,
    NoSignChange,
    TailWarning,
    MultipleRoots,
    NumericalError,
    InadmissibleError,
)
from implode.fields import curve_eval, landmarks
from implode.params import R_STAR, params_at_R
from implode.renorm import psi
from implode.series import p0_v, q1_series, p0_series, eval_series, p0_radius_Z

logger = logging.getLogger(__name__)


MatchConfig = collections.namedtuple("MatchConfig", ["zeta", "bracket", "tol_R", "tol_residual"])

MatchResult = collections.namedtuple("MatchResult", ["R0", "residual", "diagnostics"])


def zeta_policy(k, radius, cfg):
    return min(cfg.zeta_fraction * radius, cfg.zeta_cap / (k + 1.0))


def bracket(k, ell, cfg):
    """
    the R bracket: (3, 4) pulled in by the configured offset, or for k=2 with
    ell >= ell1(2), capped at min(4 - 1/ell, 100/27).
    """
    lo = 3.0 + cfg.bracket_offset
    hi = 4.0 - cfg.bracket_offset
    if k == 2 and ell >= implode.criticality.ell1(2):
        hi = min(4.0 - 1.0 / ell, R_STAR) - cfg.branch_offset
    return lo, hi


def match_config(k, ell, cfg=None, zeta=None):
    """the MatchConfig for (k, ell); zeta=None selects zeta per R by the radius policy."""
    cfg = cfg or SolverConfig()
    return MatchConfig(zeta=zeta, bracket=bracket(k, ell, cfg), tol_R=cfg.tol_R, tol_residual=cfg.tol_residual)


def seed_P0(params, zeta, cfg):
    """
    the largest Z on the P0 expansion where the series tail is below `cfg.seed_tail`
    and the trajectory has not yet reached z = zeta.

    returns:
      (float, float, TaylorSeries): Z_seed, v_seed and the expansion.
    """
    s = p0_series(params, cfg.terms, damping=cfg.radius_damping, surrogate=cfg.radius_surrogate)
    Z = min(p0_radius_Z(s), 0.5 * landmarks(params).Z1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TailWarning)
        for _ in range(400):
            v, _, tail = p0_v(s, Z, tol=cfg.seed_tail)
            if tail < cfg.seed_tail and psi((Z, v), params).z > zeta:
                return Z, v, s
            Z *= 0.9
    raise NumericalError("no usable seed on the P0 expansion")


def f_branch(params, zeta, cfg):
    """
    integrate the P0 trajectory until psi_z reaches zeta.

    returns:
      Trajectory: terminated by the psi_z_equals event.

    raises:
      EventMissed: when Z approaches Z1 without the event.
    """
    Z1 = landmarks(params).Z1
    Z_seed, v_seed, _ = seed_P0(params, zeta, cfg)
    ev = make_event("psi_z_equals", params, value=zeta, terminal=True, direction=-1)
    try:
        traj = integrate("Zv", Z_seed, [v_seed], Z1, params=params, events=[ev], cfg=cfg)
    except StepFailure as e:
        raise EventMissed(
            "psi_z_equals(%g) not reached before the integrator stalled at Z=%.12g" % (zeta, e.location),
            event="psi_z_equals",
            reached=e.location,
        )
    if traj.termination[0] != "event":
        raise EventMissed(
            "psi_z_equals(%g) not reached before Z1=%.12g" % (zeta, Z1), event="psi_z_equals", reached=traj.x_end
        )
    return traj


def _u_F(params, zeta, cfg):
    traj = f_branch(params, zeta, cfg)
    Z, v = traj.x_end, traj.y_end[0]
    u = psi((Z, v), params).u

    ug = curve_eval("u_g", zeta, params)
    ub = curve_eval("u_b", zeta, params)
    if not ug < u < ub:
        logger.warning("u_F(%g) = %.12g outside (u_g, u_b) = (%.12g, %.12g)", zeta, u, ug, ub)
    return u


def u_F_at(zeta, R, k, ell, cfg=None):
    """
    the value at z = zeta of the P0-Q1 branch u_F for the parameters (k, ell, R).
    """
    cfg = cfg or SolverConfig()
    if not 0 < zeta < 1.0 / (k + 1.0):
        raise ValueError("zeta must lie in (0, 1/(k+1)), got %r" % (zeta,))
    params, _ = params_at_R(k, ell, R)
    return _u_F(params, zeta, cfg)


def l_series(params, sonic, cfg):
    return q1_series(
        params, sonic, cfg.terms, guard=cfg.pole_guard, damping=cfg.radius_damping, surrogate=cfg.radius_surrogate
    )


def u_L_at(zeta, R, k, ell, cfg=None):
    """
    the analytic branch at Q1 evaluated at z = zeta.

    raises:
      RadiusError: if zeta exceeds the radius estimate of the expansion.
    """
    cfg = cfg or SolverConfig()
    params, sonic = params_at_R(k, ell, R)
    s = l_series(params, sonic, cfg)
    value, _ = eval_series(s, zeta, tol=cfg.tol_residual / 10.0)
    return value


def residual_g(R, k, ell, cfg=None, zeta=None):
    """
    g(R) = u_L(zeta; R) - u_F(zeta; R).

    returns:
      (float, float): g and the zeta used.
    """
    cfg = cfg or SolverConfig()
    params, sonic = params_at_R(k, ell, R)
    s = l_series(params, sonic, cfg)
    if zeta is None:
        zeta = zeta_policy(k, s.radius_estimate, cfg)
    uL, _ = eval_series(s, zeta, tol=cfg.tol_residual / 10.0)
    uF = _u_F(params, zeta, cfg)
    return uL - uF, zeta


def check_admissible(k, ell):
    """
    raises:
      InadmissibleError: if (k, ell) is outside K*.
    """
    memberships = implode.criticality.admissible(k, ell)
    if not memberships.in_Kstar:
        if not memberships.in_K:
            reason = "ell >= ell0(%d) = %.10g" % (k, implode.criticality.ell0(k))
        else:
            reason = "ell >= ell1(%d) = %.10g" % (k, implode.criticality.ell1(k))
        raise InadmissibleError(
            "(k=%d, ell=%g) is outside the admissible set K*: %s" % (k, ell, reason),
            k=k,
            ell=ell,
            memberships=memberships._asdict(),
        )
    return memberships


def find_R0(k, ell, cfg=None, match=None, strict=False, progress=False):
    """
    locate R0 in the bracket by a uniform scan followed by Brent's method on each sign change.

    args:
      k (int): dimension parameter.
      ell (float): exponent.
      cfg (SolverConfig): numeric settings.
      match (MatchConfig): overrides the bracket, tolerances or a fixed zeta.
      strict (bool): raise MultipleRoots instead of reporting the smallest root.
      progress (bool): show a progress bar for the scan.

    returns:
      MatchResult: R0, |g(R0)|, and diagnostics (samples, roots, bracket, zeta).

    raises:
      InadmissibleError: if (k, ell) is not in K*.
      NoSignChange: if the scan finds no sign change.
      MultipleRoots: if strict and the scan finds more than one sign change.
    """
    cfg = cfg or SolverConfig()
    memberships = check_admissible(k, ell)
    match = match or match_config(k, ell, cfg)
    lo, hi = match.bracket

    def g(R):
        return residual_g(R, k, ell, cfg=cfg, zeta=match.zeta)[0]

    samples = []
    for R in tqdm.tqdm(np.linspace(lo, hi, cfg.scan_points), disable=not progress, desc="scanning R", unit=" R"):
        try:
            value = g(R)
        except NumericalError as e:
            logger.debug("scan: R=%.12f failed: %s", R, str(e))
            value = float("nan")
        logger.debug("scan: R=%.12f g=%.6e", R, value)
        samples.append((float(R), value))

    finite = [(R, value) for (R, value) in samples if np.isfinite(value)]
    if finite and not (finite[0][1] > 0 and finite[-1][1] < 0):
        logger.debug("scan ends do not show g(lo) > 0 > g(hi): %.3e, %.3e", finite[0][1], finite[-1][1])

    changes = [(a, b) for (a, b) in zip(finite, finite[1:]) if np.sign(a[1]) != np.sign(b[1])]
    if not changes:
        raise NoSignChange("g(R) keeps one sign on [%.6f, %.6f] for k=%d, ell=%g" % (lo, hi, k, ell), samples=samples)

    roots = []
    for ((a, ga), (b, gb)) in changes:
        if ga == 0:
            roots.append(a)
            continue
        if gb == 0:
            roots.append(b)
            continue
        root, info = scipy.optimize.brentq(g, a, b, xtol=match.tol_R, rtol=4 * np.finfo(float).eps, full_output=True)
        logger.debug("brentq: R0=%.15f after %d iterations, %d calls", root, info.iterations, info.function_calls)
        roots.append(root)

    roots = sorted(set(roots))
    if len(roots) > 1:
        logger.warning("-" * 80)
        logger.warning(" g(R) changes sign %d times for k=%d, ell=%g", len(roots), k, ell)
        logger.warning(" roots: %s", ", ".join("%.12f" % r for r in roots))
        logger.warning(" reporting the smallest.")
        logger.warning("-" * 80)
        if strict:
            raise MultipleRoots("%d roots of g(R) for k=%d, ell=%g" % (len(roots), k, ell), roots=roots)

    R0 = roots[0]
    g0, zeta0 = residual_g(R0, k, ell, cfg=cfg, zeta=match.zeta)
    if abs(g0) > match.tol_residual:
        logger.warning("matching residual |g(R0)| = %.3e exceeds %.1e", abs(g0), match.tol_residual)

    diagnostics = collections.OrderedDict(
        [
            ("bracket", (lo, hi)),
            ("samples", samples),
            ("roots", roots),
            ("zeta", zeta0),
            ("memberships", memberships._asdict()),
        ]
    )
    return MatchResult(R0=R0, residual=abs(g0), diagnostics=diagnostics)
