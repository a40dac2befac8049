# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
exact parameter algebra.

(k, ell, gamma) determine the scalar bundle (eps, A, B, m, beta, mu), the
linearization at the sonic point (lambda+-, delta, R, a1), and the first
Taylor coefficients of the analytic branch through it. since
gamma -> R is strictly decreasing, (k, ell, R) is an equivalent
parametrization and `gamma_from_R` inverts it.
"""
import math
import logging
import collections

import scipy.optimize

from implode.errors import PoleError, DomainError, BracketError, NumericalError

logger = logging.getLogger(__name__)

POLE_GUARD = 1e-8

# the k=2 bracket cap for large ell
R_STAR = 100.0 / 27.0


ParamSet = collections.namedtuple("ParamSet", ["k", "ell", "gamma", "m", "beta", "eps", "A", "B", "mu"])

SonicData = collections.namedtuple(
    "SonicData", ["c1", "c2", "c3", "c4", "lam_plus", "lam_minus", "delta", "R", "a1"]
)

CoeffTable = collections.namedtuple(
    "CoeffTable", ["B0", "B1", "B2", "B3", "B4", "a2", "a3", "a4", "M1", "M2", "M", "xi1", "xi2"]
)


def check_k_ell(k, ell):
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError("k must be a positive integer, got: %r" % (k,))
    if not ell > 1:
        raise DomainError("ell must exceed 1, got: %r" % (ell,))


def derive_params(k, ell, gamma):
    """
    build the parameter bundle for (k, ell, gamma).

    args:
      k (int): the number of space dimensions minus one.
      ell (float): the isothermal exponent, > 1.
      gamma (float): > 1/sqrt(ell).

    returns:
      ParamSet

    raises:
      DomainError: when the arguments leave the admissible parameter range.
    """
    check_k_ell(k, ell)
    k = int(k)
    if not gamma > 1.0 / math.sqrt(ell):
        raise DomainError("gamma must exceed 1/sqrt(ell) = %.17g, got: %r" % (1.0 / math.sqrt(ell), gamma))

    m = k / (gamma + 1.0)
    return ParamSet(
        k=k,
        ell=float(ell),
        gamma=float(gamma),
        m=m,
        beta=m * (ell + 1.0) / ell,
        eps=ell * gamma * gamma - 1.0,
        A=k + 2.0 - (k - 2.0 * ell) * gamma,
        B=2.0 * k + 1.0 - ell,
        mu=(k + 2.0) ** 2 - (k - 2.0 * ell) ** 2 / ell,
    )


def _eigen_sum_product(k, ell, gamma):
    eps = ell * gamma * gamma - 1.0
    # (k+2) eps + A, factored to avoid cancellation as gamma grows
    s = gamma * ((k + 2.0) * ell * gamma - (k - 2.0 * ell))
    p = 2.0 * k * eps * (1.0 + eps)
    return s, p


def _lam_plus(s, p):
    disc = s * s - 4.0 * p
    if disc < 0:
        if disc < -1e-12 * s * s:
            raise NumericalError("negative eigenvalue discriminant: %.17g" % disc)
        disc = 0.0
    return (s + math.sqrt(disc)) / 2.0


def _ratio(k, ell, gamma):
    s, p = _eigen_sum_product(k, ell, gamma)
    lam_plus = _lam_plus(s, p)
    # lam_minus = p / lam_plus
    return lam_plus * lam_plus / p


def ratio_R(params):
    """the eigenvalue ratio R = lambda+ / lambda- > 1 at the sonic point."""
    return _ratio(params.k, params.ell, params.gamma)


def ratio_R_inf(k, ell):
    """
    the infimum of gamma -> R(k, ell, gamma).

    for k <= 2 ell, the limit as gamma grows: max(k/2, 2/k).
    otherwise the minimum, attained where A vanishes.
    """
    check_k_ell(k, ell)
    if k <= 2 * ell:
        return max(k / 2.0, 2.0 / k)

    rhs = ((k + 2.0) ** 2 * ell - (k - 2.0 * ell) ** 2) / (2.0 * k * ell)
    # (R + 1)^2 / R = rhs  <=>  R^2 - (rhs - 2) R + 1 = 0
    b = rhs - 2.0
    return (b + math.sqrt(max(b * b - 4.0, 0.0))) / 2.0


def gamma_upper(k, ell):
    """the zero of A when k > 2 ell, else None (A > 0 for every gamma)."""
    if k > 2 * ell:
        return (k + 2.0) / (k - 2.0 * ell)
    return None


def gamma_from_R(k, ell, R):
    """
    invert gamma -> R(k, ell, gamma) on {gamma > 1/sqrt(ell): A > 0}.

    raises:
      BracketError: when R <= R_inf(k, ell).
    """
    check_k_ell(k, ell)
    R_inf = ratio_R_inf(k, ell)
    if not R > R_inf * (1.0 + 1e-12):
        raise BracketError("R=%.17g is not above R_inf(%d, %g)=%.17g" % (R, k, ell, R_inf), R_inf=R_inf)

    lo = 1.0 / math.sqrt(ell) + 1e-9
    hi = gamma_upper(k, ell)
    if hi is not None:
        hi -= 1e-9
    else:
        hi = 2.0 / math.sqrt(ell)
        while _ratio(k, ell, hi) >= R:
            hi *= 2.0
            if hi > 1e12:
                raise BracketError("failed to bracket gamma for R=%.17g" % R, R_inf=R_inf)

    def residual(gamma):
        return _ratio(k, ell, gamma) - R

    if residual(lo) < 0:
        # R exceeds what the lower offset can reach
        lo = 1.0 / math.sqrt(ell) * (1.0 + 1e-15)
    if residual(lo) <= 0 or residual(hi) >= 0:
        raise BracketError("R=%.17g is outside the reachable range for (k=%d, ell=%g)" % (R, k, ell), R_inf=R_inf)

    gamma = scipy.optimize.brentq(residual, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=500)
    if abs(residual(gamma)) > 1e-10 * R:
        raise NumericalError("gamma_from_R did not converge: |R(gamma) - R| = %.3e" % abs(residual(gamma)))
    logger.debug("gamma_from_R(k=%d, ell=%g, R=%.17g) = %.17g", k, ell, R, gamma)
    return gamma


def params_at_R(k, ell, R):
    """the (ParamSet, SonicData) pair for the (k, ell, R) parametrization."""
    params = derive_params(k, ell, gamma_from_R(k, ell, R))
    return params, sonic_data(params)


def sonic_data(params):
    """
    linearization of the z-u field at the sonic point Q1 = (0, eps).

    raises:
      NumericalError: when a discriminant comes out negative.
    """
    k, eps, A = params.k, params.eps, params.A

    s, p = _eigen_sum_product(k, params.ell, params.gamma)
    lam_plus = _lam_plus(s, p)
    lam_minus = p / lam_plus

    # p0(a) = a^2 - ((k-2) eps + A) a + 2 (k - A) eps, larger root
    b = (k - 2.0) * eps + A
    c = 2.0 * (k - A) * eps
    disc = b * b - 4.0 * c
    if disc < 0:
        raise NumericalError("negative slope discriminant: %.17g" % disc)
    root = math.sqrt(disc)
    if b >= 0:
        a1 = (b + root) / 2.0
    else:
        # c < 0 here, so the larger root is positive
        a1 = 2.0 * c / (b - root)

    return SonicData(
        c1=2.0 * eps,
        c2=-1.0,
        c3=2.0 * eps * (k - A),
        c4=k * eps + A,
        lam_plus=lam_plus,
        lam_minus=lam_minus,
        delta=lam_minus,
        R=lam_plus / lam_minus,
        a1=a1,
    )


def p0(params, a):
    """the slope quadratic at Q1."""
    return a * a - ((params.k - 2.0) * params.eps + params.A) * a + 2.0 * (params.k - params.A) * params.eps


def check_pole(R, n_max=4, guard=POLE_GUARD):
    for n in range(2, n_max + 1):
        if abs(R - n) < guard:
            raise PoleError("R=%.17g is within %g of the pole at %d" % (R, guard, n), R=R, pole=n)


def b_constants(params, sonic, guard=POLE_GUARD):
    """
    closed-form coefficients a2, a3, a4 of the Q1 expansion and the derived constants.

    raises:
      PoleError: when R sits within `guard` of 2, 3 or 4.
    """
    k, ell, eps, A, B = params.k, params.ell, params.eps, params.A, params.B
    R, delta, a1 = sonic.R, sonic.delta, sonic.a1
    check_pole(R, guard=guard)

    a2 = ((k - 1.0) * a1 * a1 - (-A + B + 2.0 * k) * a1 + 2.0 * (k - B) * eps) / ((R - 2.0) * delta)

    lhs = (R - 2.0) * a2
    terms = (((k - 3.0) * R + 1.0) * a1, 3.0 * A * R, -(2.0 * k + B) * R)
    if abs(lhs - sum(terms)) > 1e-10 * max(abs(lhs), max(abs(t) for t in terms)):
        raise NumericalError("a2 routes disagree: %.17g vs %.17g" % (lhs, sum(terms)))

    B0 = (k - 2.0) * a1 + 2.0 * A - 4.0 * k
    B1 = (3.0 * k - 1.0) * a1 - 2.0 * a2 - 2.0 * (k + B)
    B2 = -5.0 * a2 + 4.0 * k * a1 - (2.0 * k + A + 3.0 * B)
    a3 = (B1 * a2 + (ell - 1.0) * a1) / ((R - 3.0) * delta)
    a4 = (B2 * a3 + 2.0 * k * a2 * (a2 + 1.0)) / ((R - 4.0) * delta)

    return CoeffTable(
        B0=B0,
        B1=B1,
        B2=B2,
        B3=3.0 * a3 - (5.0 * k + 1.0) * a2 - B - 2.0 * k,
        B4=6.0 * a2 - (5.0 * k + 1.0) * a1 + 2.0 * A + 4.0 * B + 2.0 * k,
        a2=a2,
        a3=a3,
        a4=a4,
        M1=a4 - 1.0,
        M2=(4.0 - R) ** -1.25 if R < 4 else float("nan"),
        M=a3 * a3 / (4.0 * a2),
        xi1=-eps / a1,
        xi2=-a2 / a3,
    )


def k2_radical_forms(ell, R):
    """
    radical expressions of (eps, delta, a1, A, a2) in terms of (ell, R), valid for k=2.

    returns:
      dict: with keys eps, delta, a1, A, a2.
    """
    if not ell > 1:
        raise DomainError("ell must exceed 1, got: %r" % (ell,))
    if not R > 2:
        raise DomainError("R must exceed 2, got: %r" % (R,))

    w = (ell - 1.0) / ell
    x = (ell - 1.0) ** 2 / ell
    root = math.sqrt(R * (ell - 1.0) ** 2 + ell * (R - 1.0) ** 2)
    r1 = R - 1.0

    return {
        "eps": R * (R * R + 6.0 * R + 1.0) / r1 ** 4 * x + 4.0 * R / r1 ** 2 + 4.0 * R * (R + 1.0) / r1 ** 4 * w * root,
        "delta": 8.0 * R * (R + 1.0) / r1 ** 4 * x
        + 4.0 * (R + 1.0) / r1 ** 2
        + 2.0 * (R * R + 6.0 * R + 1.0) / r1 ** 4 * w * root,
        "a1": 2.0 * R * (3.0 * R + 1.0) / r1 ** 3 * x + 4.0 * R / r1 + 2.0 * R * (R + 3.0) / r1 ** 3 * w * root,
        "A": 4.0 * R / r1 ** 2 * x + 4.0 + 2.0 * (R + 1.0) / r1 ** 2 * w * root,
        "a2": (
            2.0 * R * (3.0 * R - 1.0) / r1 ** 2 * x + 4.0 * R * R / r1 ** 2 * w * root + R * (ell - 1.0)
        )
        / (R - 2.0),
    }


def k2_rational_forms(ell):
    """
    k=2 and R = 4 - 1/ell force gamma = 2; the coefficients then are rational in ell.
    """
    if not ell > 1:
        raise DomainError("ell must exceed 1, got: %r" % (ell,))
    d = 2.0 * ell - 1.0
    return {
        "R": 4.0 - 1.0 / ell,
        "gamma": 2.0,
        "eps": 4.0 * ell - 1.0,
        "A": 4.0 * ell,
        "delta": 4.0 * ell,
        "a1": 2.0 * (4.0 * ell - 1.0),
        "a2": 7.0 * (ell - 1.0) * (4.0 * ell - 1.0) / d,
        "B1": (28.0 * ell * ell - 20.0 * ell + 10.0) / d,
        "B2": -14.0 * ell * (ell - 3.0) / d,
        "a3": (4.0 * ell - 1.0) * (51.0 * ell * ell - 37.0 * ell + 18.0) / (d * d),
    }


def large_ell_limits(R):
    """limits of B2/a2, delta/a2 and B1/delta as ell grows, at k=2."""
    s = math.sqrt(R)
    q = R - 1.0 + 2.0 * s
    return {
        "B2/a2": -2.0 * ((R * R - 10.0 * R + 11.0) * s + 9.0 * R - 3.0) / (R * (s - 1.0) * q),
        "delta/a2": 2.0 * (R - 2.0) / (s * (s - 1.0) ** 2 * q),
        "B1/delta": ((R * R - 10.0 * R + 8.0) * s + 3.0 * R * R - 2.0) / (s * (R - 2.0)),
    }


def g_k(k, R):
    return 2.0 * (k + 1.0) * R + k * k - 11.0 * k - 22.0 + (8.0 * k * k + 23.0 * k + 16.0) / R + 2.0 * k / (R * R)


def h_kl(k, ell, R):
    B = 2.0 * k + 1.0 - ell
    mu = (k + 2.0) ** 2 - (k - 2.0 * ell) ** 2 / ell
    return (
        2.0 * (4.0 * k + B) * R
        + 4.0 * k * (k + 5.0)
        + (k + 10.0) * B
        - 8.0 * mu
        + ((k + 4.0) * (2.0 * k + 3.0 * B) + mu) / R
    )


def _rel(lhs, rhs):
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def identities(params, sonic, coeffs=None):
    """
    relative residuals of the exact relations among the sonic data.

    returns:
      collections.OrderedDict: identity name -> relative residual. every value should be ~1e-15.
    """
    k, ell, eps, A, B, mu = params.k, params.ell, params.eps, params.A, params.B, params.mu
    R, delta, a1 = sonic.R, sonic.delta, sonic.a1

    ret = collections.OrderedDict()
    ret["R delta^2 = 2k eps(1+eps)"] = _rel(R * delta * delta, 2.0 * k * eps * (1.0 + eps))
    ret["(R+1) delta = (k+2) eps + A"] = _rel((R + 1.0) * delta, (k + 2.0) * eps + A)
    ret["a1 + 2 eps = R delta"] = _rel(a1 + 2.0 * eps, R * delta)
    ret["delta = A + k eps - a1"] = _rel(delta, A + k * eps - a1)
    ret["p0(a1) = 0"] = abs(p0(params, a1)) / max(1.0, a1 * a1)
    ret["(k+2)sqrt(1+eps) = (1+R)sqrt(2k eps/R) + (k-2ell)/sqrt(ell)"] = _rel(
        (k + 2.0) * math.sqrt(1.0 + eps), (1.0 + R) * math.sqrt(2.0 * k * eps / R) + (k - 2.0 * ell) / math.sqrt(ell)
    )
    ret["(k+2) a1 - 2A = (kR-2) delta"] = _rel((k + 2.0) * a1 - 2.0 * A, (k * R - 2.0) * delta)
    ret["(R+1) a1 - AR = (kR-2) eps"] = _rel((R + 1.0) * a1 - A * R, (k * R - 2.0) * eps)
    ret["(2R+k+4) A = (2-k/R)(R+1) a1 + mu"] = _rel(
        (2.0 * R + k + 4.0) * A, (2.0 - k / R) * (R + 1.0) * a1 + mu
    )

    if coeffs is not None:
        a2, B0, B1, B2 = coeffs.a2, coeffs.B0, coeffs.B1, coeffs.B2
        xi1 = coeffs.xi1
        f_xi1 = -eps - A * xi1 + B * xi1 * xi1
        ret["f(xi1) a1^2/eps^2 = -B0 + 1 - ell"] = _rel(f_xi1 * a1 * a1 / (eps * eps), -B0 + 1.0 - ell)
        ret["(R-2) a2 = (ell-1) R + B0 R - eps B0/delta"] = _rel(
            (R - 2.0) * a2, (ell - 1.0) * R + B0 * R - eps * B0 / delta
        )
        ret["(R-2) a2 = ((k-3)R+1) a1 + 3AR - (2k+B) R"] = _rel(
            (R - 2.0) * a2, ((k - 3.0) * R + 1.0) * a1 + 3.0 * A * R - (2.0 * k + B) * R
        )
        ret["(R-2) B1 closed form"] = _rel(
            (R - 2.0) * B1, ((k + 5.0) * R - 6.0 * k) * a1 - 6.0 * A * R + 2.0 * k * R + 4.0 * k + 4.0 * B
        )
        ret["(R-2) B2 closed form"] = _rel(
            (R - 2.0) * B2,
            -((k - 15.0) * R + 8.0 * k + 5.0) * a1 - (16.0 * R - 2.0) * A + 2.0 * (4.0 * k + B) * R + 4.0 * k + 6.0 * B,
        )
        ret["(2R+k+4)(R-2) B2 = -R g_k a1 + 2R h_kl"] = _rel(
            (2.0 * R + k + 4.0) * (R - 2.0) * B2, -R * g_k(k, R) * a1 + 2.0 * R * h_kl(k, ell, R)
        )
    return ret
