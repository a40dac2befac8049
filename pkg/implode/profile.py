# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
assembly of the global profile v(Z) on [0, inf) and the physical fields derived from it.

the profile is glued from five pieces:

  1. the P0 expansion on [0, Z_a],
  2. a Runge-Kutta trajectory on [Z_a, Z_b], stopped where psi_z reaches +zeta,
  3. the analytic Q1 expansion mapped through theta, for z from +zeta to -zeta (across Z1),
  4. a Runge-Kutta trajectory on [Z_c, Z_max],
  5. the compactified W = 1/Z trajectory on [0, 1/Z_max].

the density is rho_hat(Z) = exp((ell+1)/ell * I(Z)) with I the integral of J from 0;
the RK pieces carry I in an augmented state.
"""
import math
import logging
import warnings
import collections

import numpy as np
import scipy.optimize
import scipy.integrate
import numpy.polynomial.polynomial as P

import implode.criticality
from implode.ode import G, integrate, make_event
from implode.config import SolverConfig
from implode.errors import SeamError, DomainError, RegionError, TailWarning
from implode.fields import field_Zv, landmarks, barrier_poly
from implode.params import b_constants, params_at_R
from implode.renorm import psi, theta, classify, in_R0, window_derivative
from implode.series import p0_v
from implode.matcher import seed_P0, l_series, find_R0, check_admissible

logger = logging.getLogger(__name__)

QUAD_OPTS = {"epsabs": 1e-14, "epsrel": 1e-13, "limit": 200}

EXPORT_COLUMNS = ("Z", "v", "rho_hat", "u0_hat", "u_hat")


def J_inner(Z, v, dv, params):
    """J on [0, 1]; regular at Z=0."""
    w = 1.0 - v * v
    return (params.m * v * w + params.ell * dv * (Z - v)) / ((1.0 - Z * v) * w)


def J_outer(Z, v, dv, params):
    """J for Z > 0 away from the diagonal v = Z."""
    w = 1.0 - v * v
    return ((-params.m + params.k * v / Z) * w + dv * (1.0 - Z * v)) / ((Z - v) * w)


def J_value(Z, v, dv, params):
    if Z <= 1.0:
        return J_inner(Z, v, dv, params)
    return J_outer(Z, v, dv, params)


def J_tilde(W, vt, dvt, params):
    """(J(1/W) + m W) / W^2 in terms of the compactified profile."""
    w = 1.0 - vt * vt
    return ((params.k - params.m) * vt * w - dvt * (W - vt)) / ((1.0 - W * vt) * w)


def slope_Zv(Z, v, params):
    Dv, DZ = field_Zv((Z, v), params)
    return Dv / DZ


def augmented_Zv(params):
    """(v, I) along the Z-v field, with I' = J."""

    def rhs(Z, y):
        v = y[0]
        dv = slope_Zv(Z, v, params)
        return [dv, J_value(Z, v, dv, params)]

    return rhs


def augmented_W(params):
    """(v~, K) along the W field, with K' = J~."""

    def rhs(W, y):
        vt = y[0]
        dvt = G(W, vt, params)
        return [dvt, J_tilde(W, vt, dvt, params)]

    return rhs


class SeriesPiece(object):
    name = "p0_series"

    def __init__(self, series, params, hi):
        super(SeriesPiece, self).__init__()
        self.series = series
        self.params = params
        self.lo = 0.0
        self.hi = hi

    def v_dv(self, Z):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TailWarning)
            v, dv, _ = p0_v(self.series, Z)
        return v, dv

    def I(self, Z):
        if Z == 0:
            return 0.0

        def J(s):
            v, dv = self.v_dv(s)
            return J_inner(s, v, dv, self.params)

        return scipy.integrate.quad(J, 0.0, Z, **QUAD_OPTS)[0]


class TrajectoryPiece(object):
    def __init__(self, name, traj, params):
        super(TrajectoryPiece, self).__init__()
        self.name = name
        self.traj = traj
        self.params = params
        self.lo = min(traj.x[0], traj.x[-1])
        self.hi = max(traj.x[0], traj.x[-1])

    def v_dv(self, Z):
        v = self.traj(Z)[0]
        return v, slope_Zv(Z, v, self.params)

    def I(self, Z):
        return self.traj(Z)[1]


class WindowPiece(object):
    """
    the sonic window: theta(z, u_L(z)) for z in [-zeta, zeta].
    Z decreases in z along it, so Z(+zeta) < Z1 < Z(-zeta).
    """

    name = "sonic_window"

    def __init__(self, series, params, zeta, I_start):
        super(WindowPiece, self).__init__()
        self.series = series
        self.params = params
        self.zeta = zeta
        self.I_start = I_start
        # the exact ends of the curve; `lo` may be moved onto the previous piece
        self.Z_top = self.point(zeta)[0]
        self.Z_bottom = self.point(-zeta)[0]
        self.lo = self.Z_top
        self.hi = self.Z_bottom

    def point(self, z):
        """(Z, v, dZ/dz, dv/dz) at z."""
        u = self.series(z)
        du = self.series.derivative(z)
        Z, v = theta((z, u), self.params)
        dZ, dv = window_derivative(z, u, du, self.params)
        return Z, v, dZ, dv

    def z_of(self, Z):
        if Z <= self.Z_top:
            return self.zeta
        if Z >= self.Z_bottom:
            return -self.zeta
        return scipy.optimize.brentq(
            lambda z: self.point(z)[0] - Z, -self.zeta, self.zeta, xtol=1e-15, rtol=4 * np.finfo(float).eps
        )

    def v_dv(self, Z):
        _, v, dZ, dv = self.point(self.z_of(Z))
        return v, dv / dZ

    def _J_dZ(self, z):
        Z, v, dZ, dv = self.point(z)
        w = 1.0 - v * v
        return (self.params.m * v * w * dZ + self.params.ell * dv * (Z - v)) / ((1.0 - Z * v) * w)

    def I(self, Z):
        return self.I_start + scipy.integrate.quad(self._J_dZ, self.zeta, self.z_of(Z), **QUAD_OPTS)[0]


class TailPiece(object):
    """the profile for Z >= Z_max, read off the W = 1/Z trajectory."""

    name = "w_tail"

    def __init__(self, traj, params, log_rho_h):
        super(TailPiece, self).__init__()
        self.traj = traj
        self.params = params
        self.log_rho_h = log_rho_h
        self.lo = 1.0 / traj.x[0]
        self.hi = float("inf")

    def at_W(self, W):
        """(v~, dv~/dW, log rho~) at W."""
        vt, K = self.traj(W)
        return vt, G(W, vt, self.params), self.log_rho_h - self.params.beta / self.params.m * K

    def v_dv(self, Z):
        W = 1.0 / Z
        vt, dvt, _ = self.at_W(W)
        return vt, -W * W * dvt

    def log_rho_hat(self, Z):
        W = 1.0 / Z
        _, _, log_rho_t = self.at_W(W)
        return log_rho_t + self.params.beta * math.log(W)


class GlobalProfile(object):
    """
    the glued solution and its derived scalars.

    attributes:
      params (ParamSet), sonic (SonicData), coeffs (CoeffTable), R0 (float),
      landmarks (Landmarks), pieces (list), zeta (float): half width of the sonic window,
      v_inf, rho_star, u0_star, u_star (float): limits as Z -> inf,
      Z_star, v_star (list of float): black-curve crossings of the post-sonic trajectory,
      seams (list of dict): C0/C1 mismatches at each handoff.
    """

    def __init__(self, params, sonic, coeffs, R0, cfg):
        super(GlobalProfile, self).__init__()
        self.params = params
        self.sonic = sonic
        self.coeffs = coeffs
        self.R0 = R0
        self.cfg = cfg
        self.landmarks = landmarks(params)
        self.pieces = []
        self.seams = []
        self.zeta = None
        self.Z_star = []
        self.v_star = []
        self.v_inf = None
        self.rho_star = None
        self.residual = None

    @property
    def beta(self):
        return self.params.beta

    @property
    def u0_star(self):
        return -1.0 / math.sqrt(1.0 - self.v_inf ** 2)

    @property
    def u_star(self):
        return self.v_inf / math.sqrt(1.0 - self.v_inf ** 2)

    @property
    def tail(self):
        return self.pieces[-1]

    def piece(self, Z):
        if not Z >= 0:
            raise DomainError("the profile is defined for Z >= 0, got %r" % (Z,))
        for p in self.pieces:
            if Z <= p.hi:
                return p
        return self.pieces[-1]

    def v(self, Z):
        if Z == float("inf"):
            return self.v_inf
        return self.piece(Z).v_dv(Z)[0]

    def dv(self, Z):
        return self.piece(Z).v_dv(Z)[1]

    def I(self, Z):
        return self.piece(Z).I(Z)

    def rho_hat(self, Z):
        if Z == float("inf"):
            return 0.0
        p = self.piece(Z)
        if isinstance(p, TailPiece):
            return math.exp(p.log_rho_hat(Z))
        return math.exp((self.params.ell + 1.0) / self.params.ell * p.I(Z))

    def __repr__(self):
        return "GlobalProfile(k=%d, ell=%g, R0=%.12f)" % (self.params.k, self.params.ell, self.R0)


def _seam(profile, name, Z, left, right, c0=None):
    (v0, dv0), (v1, dv1) = left, right
    if c0 is None:
        c0 = abs(v0 - v1)
    c1 = abs(dv0 - dv1) / max(1.0, abs(dv0))
    seam = collections.OrderedDict([("seam", name), ("Z", Z), ("c0", c0), ("c1", c1)])
    logger.debug("seam %s at Z=%.12f: c0=%.3e c1=%.3e", name, Z, c0, c1)
    profile.seams.append(seam)
    if c0 > profile.cfg.seam_c0:
        raise SeamError("C0 mismatch %.3e at the %s seam (Z=%.12f)" % (c0, name, Z), seam=name, mismatch=c0)
    if c1 > profile.cfg.seam_c1:
        raise SeamError("C1 mismatch %.3e at the %s seam (Z=%.12f)" % (c1, name, Z), seam=name, mismatch=c1)


def post_sonic_barrier(params, sonic, coeffs):
    """the barrier trapping the post-sonic trajectory: u3 on K1, U3* on the k=2 large-ell branch."""
    if implode.criticality.admissible(params.k, params.ell).in_K1:
        return "u3", "D2prime"
    return "U3star", "D2doubleprime"


def build_global_v(k, ell, R0, cfg=None, residual=None):
    """
    glue the global solution for the matched R0.

    raises:
      SeamError: a handoff mismatch exceeds the configured seam tolerances.
      RegionError: the post-sonic start leaves the trapping region (a wrong R0).
    """
    cfg = cfg or SolverConfig()
    params, sonic = params_at_R(k, ell, R0)
    coeffs = b_constants(params, sonic, guard=cfg.pole_guard)
    profile = GlobalProfile(params, sonic, coeffs, R0, cfg)
    profile.residual = residual
    lm = profile.landmarks

    s_L = l_series(params, sonic, cfg)
    zeta = min(cfg.window_fraction * s_L.radius_estimate, cfg.window_cap)
    profile.zeta = zeta

    # 1. P0 expansion
    Z_a, v_a, s_0 = seed_P0(params, zeta, cfg)
    series_piece = SeriesPiece(s_0, params, Z_a)
    I_a = series_piece.I(Z_a)

    # 2. up to psi_z = +zeta
    ev = make_event("psi_z_equals", params, value=zeta, terminal=True, direction=-1)
    rk1 = integrate(augmented_Zv(params), Z_a, [v_a, I_a], lm.Z1, events=[ev], cfg=cfg)
    if rk1.termination[0] != "event":
        raise RegionError("the P0 trajectory never reached the sonic window", point=(rk1.x_end, rk1.y_end[0]),
                          region="sonic window")
    rk1_piece = TrajectoryPiece("rk_pre_sonic", rk1, params)
    _seam(profile, "p0_series/rk_pre_sonic", Z_a, series_piece.v_dv(Z_a), rk1_piece.v_dv(Z_a))

    # 3. across the sonic point
    Z_b, v_b, I_b = rk1.x_end, rk1.y_end[0], rk1.y_end[1]
    window = WindowPiece(s_L, params, zeta, I_b)
    Zw, vw, dZw, dvw = window.point(zeta)
    c0 = max(abs(Z_b - Zw), abs(v_b - vw))
    _seam(profile, "rk_pre_sonic/sonic_window", Z_b, (v_b, slope_Zv(Z_b, v_b, params)), (vw, dvw / dZw), c0=c0)
    # the window starts where the trajectory ended
    window.lo = Z_b

    # 4. post-sonic
    z_c = -zeta
    u_c = s_L(z_c)
    barrier, region = post_sonic_barrier(params, sonic, coeffs)
    tag = classify((z_c, u_c), "zu", params, sonic=sonic, coeffs=coeffs)
    if region not in tag:
        raise RegionError(
            "post-sonic start (z=%.6g, u=%.12g) is not in %s (tagged %s)" % (z_c, u_c, region, tag.tag),
            point=(z_c, u_c),
            region=region,
        )

    Z_c, v_c, dZc, dvc = window.point(z_c)
    I_c = window.I(Z_c)
    ev_black = make_event("delta_v_zero", params)
    rk2 = integrate(augmented_Zv(params), Z_c, [v_c, I_c], cfg.z_max, events=[ev_black], cfg=cfg)
    rk2_piece = TrajectoryPiece("rk_post_sonic", rk2, params)
    _seam(profile, "sonic_window/rk_post_sonic", Z_c, (v_c, dvc / dZc), rk2_piece.v_dv(Z_c))
    crossings = rk2.events.get("delta_v_zero", [])
    profile.Z_star = [float(Z) for (Z, _) in crossings]
    profile.v_star = [float(y[0]) for (_, y) in crossings]

    # 5. the tail in W = 1/Z
    Z_max = rk2.x_end
    v_h, I_h = rk2.y_end
    log_rho_h = (ell + 1.0) / ell * I_h + params.beta * math.log(Z_max)
    tail = integrate(augmented_W(params), 1.0 / Z_max, [v_h, 0.0], 0.0, cfg=cfg)
    tail_piece = TailPiece(tail, params, log_rho_h)
    _seam(profile, "rk_post_sonic/w_tail", Z_max, rk2_piece.v_dv(Z_max), tail_piece.v_dv(Z_max))

    profile.pieces = [series_piece, rk1_piece, window, rk2_piece, tail_piece]
    vt0, _, log_rho0 = tail_piece.at_W(0.0)
    profile.v_inf = float(vt0)
    profile.rho_star = math.exp(log_rho0)

    # theta(0, eps) is P1, so the window passes through it exactly
    v_Z1 = profile.v(lm.Z1)
    logger.debug("v(Z1) - v1 = %.3e; v(Z1) - Z1 = %.6g", v_Z1 - lm.v1, v_Z1 - lm.Z1)
    if abs(v_Z1 - lm.v1) > 1e-8:
        logger.warning("v(Z1) = %.12g differs from v1 = %.12g", v_Z1, lm.v1)

    logger.info(
        "profile k=%d ell=%g: R0=%.12f v_inf=%.12g rho*=%.12g black curve at %s",
        k,
        ell,
        R0,
        profile.v_inf,
        profile.rho_star,
        ", ".join("%.8f" % Z for Z in profile.Z_star) or "-",
    )
    return profile


def solve(k, ell, cfg=None, strict=False, progress=False):
    """
    match R0 and build the profile.

    returns:
      (MatchResult, GlobalProfile)
    """
    cfg = cfg or SolverConfig()
    check_admissible(k, ell)
    match = find_R0(k, ell, cfg=cfg, strict=strict, progress=progress)
    profile = build_global_v(k, ell, match.R0, cfg=cfg, residual=match.residual)
    return match, profile


def eval_J(profile, Z):
    """J(Z): the inner form on [0, 1], the outer form beyond."""
    if Z == 0:
        return 0.0
    v, dv = profile.piece(Z).v_dv(Z)
    return J_value(Z, v, dv, profile.params)


def eval_J_both(profile, Z):
    """(inner, outer) forms of J at Z, for the overlap check."""
    v, dv = profile.piece(Z).v_dv(Z)
    return J_inner(Z, v, dv, profile.params), J_outer(Z, v, dv, profile.params)


def build_density(profile, grid, tail_grid=None):
    """
    rho_hat on `grid` and, optionally, the tail density rho~ on `tail_grid` (in W).

    returns:
      dict: with keys Z, rho_hat, W and rho_tilde.
    """
    rho = [profile.rho_hat(Z) for Z in grid]
    ret = {"Z": list(grid), "rho_hat": rho, "W": [], "rho_tilde": []}
    if tail_grid is not None:
        ret["W"] = list(tail_grid)
        ret["rho_tilde"] = [math.exp(profile.tail.at_W(W)[2]) for W in tail_grid]
    return ret


def profile_at(profile, Z):
    """
    returns:
      (float, float, float, float): v, rho_hat, u0_hat, u_hat at Z.
    """
    v = profile.v(Z)
    c = 1.0 / math.sqrt(1.0 - v * v)
    return v, profile.rho_hat(Z), -c, v * c


def profile_table(profile, grid):
    """export rows with the columns Z, v, rho_hat, u0_hat, u_hat."""
    Zs = list(grid)
    if any(b <= a for (a, b) in zip(Zs, Zs[1:])):
        raise DomainError("the export grid must be strictly increasing")
    rows = []
    for Z in Zs:
        v, rho, u0, u = profile_at(profile, Z)
        rows.append(collections.OrderedDict(zip(EXPORT_COLUMNS, (Z, v, rho, u0, u))))
    return rows


def profile_header(profile):
    """the scalars exported alongside the profile table."""
    p = profile.params
    lm = profile.landmarks
    return collections.OrderedDict(
        [
            ("k", p.k),
            ("ell", p.ell),
            ("gamma", p.gamma),
            ("m", p.m),
            ("beta", p.beta),
            ("eps", p.eps),
            ("A", p.A),
            ("B", p.B),
            ("R0", profile.R0),
            ("Z1", lm.Z1),
            ("v1", lm.v1),
            ("v_inf", profile.v_inf),
            ("rho_star", profile.rho_star),
        ]
    )


def even_extension_check(profile, h=0.02, degree=7, tol=1e-8):
    """
    fit v/Z, u_hat/Z, rho_hat and u0_hat near Z=0 and report the odd-power coefficients of degree <= 5.

    coefficients are taken in the scaled variable t = Z/h, so each is the size of its term on [0, h].
    samples stay on the P0 expansion.
    """
    h = min(h, profile.pieces[0].hi)
    Zs = np.linspace(0.0, h, 64)[1:]
    rows = [profile_at(profile, Z) for Z in Zs]
    fields = collections.OrderedDict(
        [
            ("v/Z", [r[0] / Z for (r, Z) in zip(rows, Zs)]),
            ("u_hat/Z", [r[3] / Z for (r, Z) in zip(rows, Zs)]),
            ("rho_hat", [r[1] for r in rows]),
            ("u0_hat", [r[2] for r in rows]),
        ]
    )
    report = collections.OrderedDict()
    for (name, values) in fields.items():
        c = P.polyfit(Zs / h, values, degree)
        odd = max(abs(c[j]) for j in (1, 3, 5))
        report[name] = collections.OrderedDict([("odd", odd), ("ok", odd < tol)])
    return report


def barrier_compliance(profile, n=200):
    """
    sample the post-sonic trajectory in z-u coordinates while it stays in D2, and compare with its barrier.
    """
    params, sonic, coeffs = profile.params, profile.sonic, profile.coeffs
    name, _ = post_sonic_barrier(params, sonic, coeffs)
    barrier = barrier_poly(name, params, sonic, coeffs)

    rk2 = profile.pieces[3]
    samples = 0
    worst = float("inf")
    violations = []
    for Z in np.linspace(rk2.lo, rk2.hi, n):
        v = rk2.v_dv(Z)[0]
        if not in_R0(Z, v):
            break
        z, u = psi((Z, v), params)
        if "D2" not in classify((z, u), "zu", params):
            break
        samples += 1
        margin = barrier(z) - u
        worst = min(worst, margin)
        if margin <= 0:
            violations.append((float(Z), float(z), float(u)))
    return collections.OrderedDict(
        [("barrier", name), ("samples", samples), ("min_margin", worst), ("violations", violations)]
    )


def v_asymptote_check(profile, Z=1e3):
    """
    Z^2 dv/dZ at large Z against its limit -G(0, v_inf).

    returns:
      (float, float): the sampled value and the limit.
    """
    W = 1.0 / Z
    vt, dvt, _ = profile.tail.at_W(W)
    return -dvt, -G(0.0, profile.v_inf, profile.params)


def density_tail_check(profile, Z=1e3):
    """rho_hat(Z) Z^beta at large Z against rho* = rho~(0)."""
    return profile.rho_hat(Z) * Z ** profile.beta, profile.rho_star


def delta_Z_sign_changes(profile, Zs=None):
    """
    locate the sign changes of DZ(Z, v(Z)) along the profile by Brent's method.
    """
    params = profile.params
    if Zs is None:
        Zs = np.concatenate([np.linspace(1e-3, 1.0, 400), np.linspace(1.0, profile.cfg.z_max, 200)[1:]])

    def DZ(Z):
        return field_Zv((Z, profile.v(Z)), params)[1]

    values = [DZ(Z) for Z in Zs]
    changes = []
    for (a, b, fa, fb) in zip(Zs, Zs[1:], values, values[1:]):
        if fa == 0:
            changes.append(float(a))
        elif fa * fb < 0:
            changes.append(scipy.optimize.brentq(DZ, a, b, xtol=1e-14))
    return changes


def pde_residual(profile, ts, rs, h=1e-4):
    """
    residuals of the reduced self-similar system (T* = 1) on a (t, r) grid, by central differences:

        d_t(rho^(ell/(ell+1)) u0) + d_r(rho^(ell/(ell+1)) u_r) + (k/r) rho^(ell/(ell+1)) u_r
        d_r(rho^(1/(ell+1)) u0) + d_t(rho^(1/(ell+1)) u_r)

    returns:
      (float, float): the max absolute residual of each equation.
    """
    params = profile.params
    k, ell, beta = params.k, params.ell, params.beta
    a = ell / (ell + 1.0)
    b = 1.0 / (ell + 1.0)

    def fields(t, r):
        T = 1.0 - t
        _, rho_hat, u0, u = profile_at(profile, r / T)
        rho = T ** -beta * rho_hat
        return rho ** a * u0, rho ** a * u, rho ** b * u0, rho ** b * u

    worst1 = worst2 = 0.0
    for t in ts:
        for r in rs:
            tp, tm = fields(t + h, r), fields(t - h, r)
            rp, rm = fields(t, r + h), fields(t, r - h)
            here = fields(t, r)
            r1 = (tp[0] - tm[0]) / (2 * h) + (rp[1] - rm[1]) / (2 * h) + k / r * here[1]
            r2 = (rp[2] - rm[2]) / (2 * h) + (tp[3] - tm[3]) / (2 * h)
            worst1 = max(worst1, abs(r1))
            worst2 = max(worst2, abs(r2))
    return worst1, worst2


def property_report(profile, Zs=None):
    """
    the global properties of a built profile.

    returns:
      collections.OrderedDict: property name -> (value, ok).
    """
    params, lm = profile.params, profile.landmarks
    if Zs is None:
        Zs = np.concatenate([np.linspace(0.0, 1.0, 201)[1:], np.linspace(1.0, 100.0, 200)[1:]])
    vs = [profile.v(Z) for Z in Zs]

    changes = delta_Z_sign_changes(profile)
    report = collections.OrderedDict()
    report["|v| < 1"] = (max(abs(v) for v in vs), all(abs(v) < 1 for v in vs))
    report["v < Z"] = (max(v - Z for (v, Z) in zip(vs, Zs)), all(v < Z for (v, Z) in zip(vs, Zs)))
    report["DZ changes sign once, at Z1"] = (
        changes,
        len(changes) == 1 and abs(changes[0] - lm.Z1) < 1e-8,
    )
    report["v(Z1) = v1"] = (abs(profile.v(lm.Z1) - lm.v1), abs(profile.v(lm.Z1) - lm.v1) < 1e-8)
    report["beta in (0, k)"] = (profile.beta, 0 < profile.beta < params.k)
    report["v_inf in (-1, 1)"] = (profile.v_inf, -1 < profile.v_inf < 1)
    # Z_b(v) > 1 for v > 1/gamma, so the crossing may lie past Z = 1
    report["black curve crossed past Z1 with v in (v1, 1)"] = (
        profile.Z_star,
        any(Z > lm.Z1 and lm.v1 < v < 1.0 for (Z, v) in zip(profile.Z_star, profile.v_star)),
    )
    compliance = barrier_compliance(profile)
    report["post-sonic trajectory below %s" % compliance["barrier"]] = (
        compliance["min_margin"],
        compliance["samples"] > 0 and not compliance["violations"],
    )
    return report
