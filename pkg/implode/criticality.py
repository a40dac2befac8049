# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
critical exponents and admissible parameter sets.

the B2 > 0 argument at R in [3, 4] holds for ell < ell1(k), where ell1(k) is the root of

    F(k, ell) = f3(k, eps*(k, ell)) + 52k - 12 ell + 12,

and eps*(k, ell) inverts f1(k, eps) = f2(k, ell) on E_k.
"""
import math
import logging
import functools
import collections

import scipy.optimize

from implode.errors import RangeError, DomainError, NumericalError
from implode.params import ratio_R_inf, check_k_ell

logger = logging.getLogger(__name__)

INF = float("inf")

# where the ell1 search replaces an infinite ell_plus
ELL_SEARCH_CAP = 50.0

# ell^*(3): below it, beta > ell + 1 for k=3
BETA_GAP_ELL_3 = (76.0 - 4.0 * math.sqrt(154.0)) / 23.0
# the root of 5 ell^2 - 42 ell + 53 in (1, 2)
BETA_GAP_ELL_4 = (21.0 - 4.0 * math.sqrt(11.0)) / 5.0


def f1(k, eps):
    if eps < 0:
        raise DomainError("f1 needs eps >= 0, got %r" % (eps,))
    return (k + 2.0) * math.sqrt(1.0 + eps) - 4.0 * math.sqrt(2.0 * k * eps / 3.0)


def f2(k, ell):
    if not ell > 0:
        raise DomainError("f2 needs ell > 0, got %r" % (ell,))
    return k / math.sqrt(ell) - 2.0 * math.sqrt(ell)


def f3(k, eps):
    if eps < 0:
        raise DomainError("f3 needs eps >= 0, got %r" % (eps,))
    return (68.0 * k + 12.0) * eps - (33.0 * k + 64.0) * math.sqrt(2.0 * k / 3.0) * math.sqrt(eps * (1.0 + eps))


def f_functions(k, eps=None, ell=None):
    """evaluate whichever of f1, f3 (at eps) and f2 (at ell) the arguments allow."""
    ret = {}
    if eps is not None:
        ret["f1"] = f1(k, eps)
        ret["f3"] = f3(k, eps)
    if ell is not None:
        ret["f2"] = f2(k, ell)
    return ret


def E_k_upper(k):
    """f1(k, .) decreases on (0, E_k_upper(k)); infinite for k <= 6."""
    if k >= 7:
        return 32.0 * k / ((3.0 * k - 2.0) * (k - 6.0))
    return INF


def _sqrt_ell_solving_f2(k, c):
    # k/s - 2s = c  <=>  2s^2 + c s - k = 0
    return (-c + math.sqrt(c * c + 8.0 * k)) / 4.0


def ell_bounds(k):
    """
    the open interval of ell on which eps*(k, ell) exists.

    returns:
      (float, float): (ell_minus, ell_plus); ell_plus may be infinite.
    """
    ell_minus = _sqrt_ell_solving_f2(k, k + 2.0) ** 2
    if k <= 5:
        ell_plus = INF
    elif k == 6:
        ell_plus = 3.0
    else:
        ell_plus = _sqrt_ell_solving_f2(k, f1(k, E_k_upper(k))) ** 2
    return ell_minus, ell_plus


def epsilon_star(k, ell):
    """
    the eps in E_k with f1(k, eps) = f2(k, ell).

    raises:
      RangeError: if ell lies outside (ell_minus(k), ell_plus(k)).
    """
    ell_minus, ell_plus = ell_bounds(k)
    if not ell_minus < ell < ell_plus:
        raise RangeError("eps*(%d, ell) needs ell in (%.10g, %.10g), got %r" % (k, ell_minus, ell_plus, ell))

    target = f2(k, ell)

    def residual(eps):
        return f1(k, eps) - target

    lo = 1e-12
    hi = min(E_k_upper(k), 1e6)
    while residual(hi) > 0:
        if hi >= 1e300 or hi == E_k_upper(k):
            raise RangeError("eps*(%d, %r) is not bracketed" % (k, ell))
        hi = min(hi * 16.0, E_k_upper(k), 1e300)
    if residual(lo) < 0:
        # the root is below the bracket floor: ell sits on ell_minus to working precision
        return lo

    return scipy.optimize.brentq(residual, lo, hi, xtol=1e-300, rtol=1e-15, maxiter=500)


def F_value(k, ell):
    return f3(k, epsilon_star(k, ell)) + 52.0 * k - 12.0 * ell + 12.0


def ell0(k):
    """the critical exponent below which R can reach (3, 4); infinite for k <= 5."""
    if k <= 5:
        return INF
    root = math.sqrt((3.0 * k - 2.0) * (k - 6.0) * (3.0 * k * k + 4.0 * k + 12.0))
    return (3.0 * k * k - 8.0 * k + 12.0 - root) / 24.0


def R_inf(k, ell):
    return ratio_R_inf(k, ell)


def ell0_Rinf(k, ell):
    return {"ell0": ell0(k), "R_inf": R_inf(k, ell)}


def ell1(k):
    """
    the root of F(k, .) in (1, ell_plus(k)); infinite for k=1, where B2 > 0 unconditionally.
    """
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError("k must be a positive integer, got: %r" % (k,))
    if k == 1:
        return INF
    return _ell1(int(k))


@functools.lru_cache(maxsize=None)
def _ell1(k):
    _, ell_plus = ell_bounds(k)
    lo = 1.0 + 1e-9
    hi = ELL_SEARCH_CAP if ell_plus == INF else ell_plus - 1e-9

    # near a finite ell_plus, eps* sits at the flat minimum of f1; step back until it resolves
    step = 1e-9
    while True:
        try:
            F_hi = F_value(k, hi)
            break
        except RangeError:
            step *= 10.0
            hi = ell_plus - step
            if hi <= lo:
                raise NumericalError("no usable upper bracket for ell1(%d)" % k)

    F_lo = F_value(k, lo)
    if not (F_lo > 0 > F_hi):
        raise NumericalError("F(%d, .) does not change sign on (%.10g, %.10g): %.3g, %.3g" % (k, lo, hi, F_lo, F_hi))

    root = scipy.optimize.brentq(lambda ell: F_value(k, ell), lo, hi, xtol=1e-14, rtol=1e-15, maxiter=500)
    logger.debug("ell1(%d) = %.12f", k, root)
    return root


def ell_star(k):
    if k in (1, 2):
        return INF
    return ell1(k)


Admissibility = collections.namedtuple("Admissibility", ["in_K", "in_K1", "in_Kstar"])


def admissible(k, ell):
    """membership of (k, ell) in K, K1 and K*."""
    check_k_ell(k, ell)
    in_K = k <= 5 or ell < ell0(k)
    in_K1 = in_K and (k == 1 or ell < ell1(k))
    in_Kstar = in_K and ell < ell_star(k)
    return Admissibility(in_K, in_K1, in_Kstar)


class CriticalityReport(object):
    """
    the critical exponents of one k, optionally with the memberships of a queried ell.
    """

    def __init__(self, k, ell=None):
        super(CriticalityReport, self).__init__()
        self.k = k
        self.ell0 = ell0(k)
        self.ell1 = ell1(k)
        self.ell_star = ell_star(k)
        self.E_k_upper = E_k_upper(k)
        self.ell = ell
        if ell is not None:
            self.in_K, self.in_K1, self.in_Kstar = admissible(k, ell)
        else:
            self.in_K = self.in_K1 = self.in_Kstar = None

    def R_inf(self, ell):
        return R_inf(self.k, ell)

    def __repr__(self):
        return "CriticalityReport(k=%d, ell1=%.10g)" % (self.k, self.ell1)


def beta_gap(k, ell, profile):
    """
    compare beta with ell + 1 for a solved profile.

    `profile` is a GlobalProfile or a ParamSet. beta > ell + 1 exactly when k > ell (gamma + 1).
    """
    params = getattr(profile, "params", profile)
    gamma = params.gamma
    beta = params.m * (ell + 1.0) / ell
    condition = k > ell * (gamma + 1.0)

    threshold = {3: BETA_GAP_ELL_3, 4: BETA_GAP_ELL_4}.get(k)
    if k == 3:
        guarantee = ell < BETA_GAP_ELL_3
    elif k == 4:
        guarantee = ell < ell1(4)
    else:
        guarantee = False

    return collections.OrderedDict(
        [
            ("beta", beta),
            ("ell_plus_1", ell + 1.0),
            ("satisfied", beta > ell + 1.0),
            ("condition", condition),
            ("threshold", threshold),
            ("guarantee", guarantee),
            ("not_applicable", k in (1, 2)),
        ]
    )


def critical_table(ks):
    """
    one row per k: (k, ell0, ell1, ell_star, eps* at ell1, k - k/ell1, R_inf at ell1).
    """
    rows = []
    for k in ks:
        l1 = ell1(k)
        finite = l1 != INF
        rows.append(
            collections.OrderedDict(
                [
                    ("k", k),
                    ("ell0", ell0(k)),
                    ("ell1", l1),
                    ("ell_star", ell_star(k)),
                    ("eps_star", epsilon_star(k, l1) if finite else None),
                    ("k_minus_k_over_ell1", k - k / l1),
                    ("R_inf", R_inf(k, l1) if finite else None),
                ]
            )
        )
    return rows
