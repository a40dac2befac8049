# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
Taylor expansions at the two singular points of the profile ODE.

  - at P0 = (0, 0): v(Z) = Z * sum(phi_n * Z^(2n)), a series in Z^2 (kind "P0_phi").
  - at Q1 = (0, eps): u(z) = sum(a_n * z^n), the analytic branch u_L (kind "Q1_a").
"""
import math
import logging
import warnings

import numpy as np
import numpy.polynomial.polynomial as P

from implode.errors import PoleError, RadiusError, TailWarning, NumericalError
from implode.params import POLE_GUARD, b_constants

logger = logging.getLogger(__name__)

KINDS = ("P0_phi", "Q1_a")

DEFAULT_TERMS = 60
MAX_TERMS = 200

# coefficients beyond this are dropped rather than overflow
COEFF_CAP = 1e250


class TaylorSeries(object):
    def __init__(self, kind, coeffs, center=0.0, damping=0.5, surrogate=1e6):
        super(TaylorSeries, self).__init__()
        if kind not in KINDS:
            raise ValueError("unknown series kind: %s" % kind)
        self.kind = kind
        self.center = center
        self.coeffs = np.array(coeffs, dtype=float)
        self.coeffs.flags.writeable = False
        self.radius_estimate = radius_estimate(self, damping=damping, surrogate=surrogate)

    @property
    def N(self):
        """the truncation order."""
        return len(self.coeffs) - 1

    def __call__(self, x):
        return P.polyval(x - self.center, self.coeffs)

    def derivative(self, x):
        return P.polyval(x - self.center, P.polyder(self.coeffs))

    def __repr__(self):
        return "TaylorSeries(%s, N=%d, radius=%.3g)" % (self.kind, self.N, self.radius_estimate)


def radius_estimate(s, damping=0.5, surrogate=1e6):
    """
    damping / limsup of |a_n|^(1/n) over the upper half of the coefficients.

    a heuristic: no rigorous bound on the tail is attempted.

    returns:
      float: surrogate when every tail coefficient vanishes.
    """
    coeffs = s.coeffs if isinstance(s, TaylorSeries) else np.asarray(s, dtype=float)
    N = len(coeffs) - 1
    if N < 1:
        return surrogate

    lo = max(1, N // 2) if N >= 10 else 1
    roots = [math.exp(math.log(abs(coeffs[n])) / n) for n in range(lo, N + 1) if coeffs[n] != 0]
    if not roots or max(roots) == 0:
        return surrogate
    return damping / max(roots)


def _ratio_limsup(coeffs):
    N = len(coeffs) - 1
    lo = max(0, N // 2)
    ratios = [abs(coeffs[n + 1] / coeffs[n]) for n in range(lo, N) if coeffs[n] != 0]
    return max(ratios) if ratios else 0.0


def eval_series(s, x, tol=1e-13):
    """
    evaluate a truncated series with an empirical tail bound.

    when the bound exceeds tol * max(1, |value|), a TailWarning is issued.

    returns:
      (float, float): the value and the tail bound.

    raises:
      RadiusError: if x lies beyond the radius estimate.
    """
    h = x - s.center
    if abs(h) > s.radius_estimate:
        raise RadiusError(
            "|x| = %.6g exceeds the series radius estimate %.6g" % (abs(h), s.radius_estimate),
            x=x,
            radius=s.radius_estimate,
        )

    value = P.polyval(h, s.coeffs)
    r = abs(h) * _ratio_limsup(s.coeffs)
    if r == 0:
        tail = 0.0
    elif r >= 1:
        tail = float("inf")
    else:
        tail = abs(s.coeffs[-1] * h ** s.N) * r / (1.0 - r)

    if tail >= tol * max(1.0, abs(value)):
        warnings.warn(
            TailWarning("%s series tail bound %.3e at x=%.6g exceeds tolerance %.1e" % (s.kind, tail, x, tol)),
            stacklevel=2,
        )
    return value, tail


def _get(a, i):
    return a[i] if 0 <= i < len(a) else 0.0


def p0_series(params, N=DEFAULT_TERMS, damping=0.5, surrogate=1e6):
    """
    coefficients phi_0..phi_N of the solution through P0, as a series in Z^2.
    """
    if N < 1 or N > MAX_TERMS:
        raise ValueError("series order must lie in [1, %d], got %d" % (MAX_TERMS, N))

    k, m, ell = params.k, params.m, params.ell
    phi = [m / (k + 1.0)]
    for n in range(1, N + 1):
        a = np.array(phi)
        Da = np.arange(len(a)) * a
        pp = np.convolve(a, a)
        ppp = np.convolve(pp, a)
        pppp = np.convolve(ppp, a)
        pD = np.convolve(a, Da)
        ppD = np.convolve(pp, Da)

        rhs = (
            ell * phi[n - 1]
            + (k - 2.0 * m - 2.0 * ell + 2.0) * _get(pp, n - 1)
            + (k + ell) * _get(ppp, n - 1)
            - _get(ppp, n - 2)
            + (m - k) * _get(pppp, n - 2)
            + 2.0 * ell * (n - 1) * phi[n - 1]
            - 4.0 * (ell - 1.0) * _get(pD, n - 1)
            + 2.0 * ell * _get(ppD, n - 1)
            - 2.0 * _get(ppD, n - 2)
        )
        value = rhs / (k + 1.0 + 2.0 * n)
        if not abs(value) < COEFF_CAP:
            logger.debug("p0 series truncated at order %d: coefficients overflow", n - 1)
            break
        phi.append(value)

    return TaylorSeries("P0_phi", phi, damping=damping, surrogate=surrogate)


def p0_radius_Z(s):
    """the radius of the P0 series in Z (the series variable is Z^2)."""
    return math.sqrt(s.radius_estimate)


def p0_v(s, Z, tol=1e-13):
    """
    v, dv/dZ and the tail bound of the P0 expansion at Z.
    """
    x = Z * Z
    phi, tail = eval_series(s, x, tol=tol)
    dphi = s.derivative(x)
    return Z * phi, phi + 2.0 * x * dphi, abs(Z) * tail


def q1_series(params, sonic, N=DEFAULT_TERMS, guard=POLE_GUARD, damping=0.5, surrogate=1e6):
    """
    coefficients a_0..a_N of the analytic branch through Q1.

    raises:
      PoleError: if R lies within `guard` of an integer in [2, N].
    """
    if N < 1 or N > MAX_TERMS:
        raise ValueError("series order must lie in [1, %d], got %d" % (MAX_TERMS, N))

    k, eps, A, B = params.k, params.eps, params.A, params.B
    R, delta = sonic.R, sonic.delta
    for n in range(2, N + 1):
        if abs(R - n) < guard:
            raise PoleError("R=%.17g is within %g of the pole at %d" % (R, guard, n), R=R, pole=n)

    a = [eps, sonic.a1]
    for n in range(2, N + 1):
        # sum_{j=2}^{n-1} a_j a_{n+1-j}
        s1 = sum(a[j] * a[n + 1 - j] for j in range(2, n))
        # sum_{j=1}^{n-1} a_j a_{n-j}
        s2 = sum(a[j] * a[n - j] for j in range(1, n))
        E = (
            -(n + 1) / 2.0 * s1
            - (2.0 - (k + 1.0) * n / 2.0) * s2
            - ((n - 3.0) * A + (n - 1.0) * B + 2.0 * k) * a[n - 1]
            + ((n - 4.0) * B + 2.0 * k) * a[n - 2]
        )
        value = E / ((R - n) * delta)
        if not abs(value) < COEFF_CAP:
            logger.debug("q1 series truncated at order %d: coefficients overflow", n - 1)
            break
        a.append(value)

    if len(a) > 4:
        coeffs = b_constants(params, sonic, guard=guard)
        for (n, closed) in ((2, coeffs.a2), (3, coeffs.a3), (4, coeffs.a4)):
            if abs(a[n] - closed) > 1e-9 * max(1.0, abs(closed)):
                raise NumericalError("a_%d recurrence %.17g disagrees with closed form %.17g" % (n, a[n], closed))

    return TaylorSeries("Q1_a", a, damping=damping, surrogate=surrogate)
