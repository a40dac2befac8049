# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
right-hand sides, named curves, landmarks, the operator L and barrier polynomials.

the Z-v system reads dv/dZ = Dv / DZ and the z-u system du/dz = Du / Dz.
polynomials in z are numpy coefficient arrays in increasing order.
"""
import math
import collections

import numpy as np
import numpy.polynomial.polynomial as P

from implode.errors import DomainError

ZvPoint = collections.namedtuple("ZvPoint", ["Z", "v"])
ZuPoint = collections.namedtuple("ZuPoint", ["z", "u"])
Landmarks = collections.namedtuple("Landmarks", ["Z1", "v1", "Ze", "zg", "zg_minus", "zQ0"])


def field_Zv(p, params):
    """returns (Dv, DZ) at the given ZvPoint."""
    Z, v = p
    m, k, ell = params.m, params.k, params.ell
    w = 1.0 - v * v
    Dv = w * (m * w * Z - k * v * (1.0 - v * Z))
    DZ = Z * ((1.0 - Z * v) ** 2 - ell * (v - Z) ** 2)
    return Dv, DZ


def f_poly(params):
    return np.array([-params.eps, -params.A, params.B])


def Du_poly(params):
    """Du = 2u [u + c(z)]; returns the coefficients of c."""
    k = params.k
    return np.array([-params.eps, k - params.A, params.B - k])


def Dz_polys(params):
    """Dz = a(z) u + b(z); returns (a, b)."""
    k, eps, A, B = params.k, params.eps, params.A, params.B
    return np.array([-1.0, k + 1.0]), np.array([eps, A - eps, -(A + B), B])


def field_zu(p, params):
    """returns (Du, Dz) at the given ZuPoint."""
    z, u = p
    Du = 2.0 * u * (u + P.polyval(z, Du_poly(params)))
    a, b = Dz_polys(params)
    Dz = P.polyval(z, a) * u + P.polyval(z, b)
    return Du, Dz


def landmarks(params):
    k, m, ell, gamma = params.k, params.m, params.ell, params.gamma
    s = math.sqrt(ell)
    return Landmarks(
        Z1=(1.0 + gamma) * s / (ell * gamma + 1.0),
        v1=1.0 / (gamma * s),
        Ze=k / (2.0 * math.sqrt((k - m) * m)),
        zg=(1.0 - s * gamma) / (s + 1.0),
        zg_minus=-(1.0 + s * gamma) / (s - 1.0),
        zQ0=1.0 / (k + 1.0),
    )


def _u_p(z, params):
    k = params.k
    return (k - params.B) * z * z + (params.A - k) * z + params.eps


def _u_b(z, params):
    k = params.k
    d = 1.0 - (k + 1.0) * z
    if d == 0:
        raise DomainError("u_b is singular at z = 1/(k+1)")
    return P.polyval(z, Dz_polys(params)[1]) / d


def _u_g(z, params):
    return params.eps + 2.0 * (1.0 + params.ell * params.gamma) * z + (params.ell - 1.0) * z * z


def _f(z, params):
    return P.polyval(z, f_poly(params))


def _v_disc(Z, params):
    k, m = params.k, params.m
    disc = k * k - 4.0 * (k - m) * m * Z * Z
    if disc < 0:
        raise DomainError("v1/v2 are real only for |Z| <= Ze, got Z=%r" % (Z,))
    return math.sqrt(disc)


def _v1(Z, params):
    return 2.0 * params.m * Z / (params.k + _v_disc(Z, params))


def _v2(Z, params):
    if Z == 0:
        raise DomainError("v2 is unbounded at Z=0")
    return (params.k + _v_disc(Z, params)) / (2.0 * (params.k - params.m) * Z)


def _v_plus(Z, params):
    s = math.sqrt(params.ell)
    if Z + s == 0:
        raise DomainError("v_plus is singular at Z = -sqrt(ell)")
    return (s * Z + 1.0) / (Z + s)


def _v_minus(Z, params):
    s = math.sqrt(params.ell)
    if Z == s:
        raise DomainError("v_minus is singular at Z = sqrt(ell)")
    return (1.0 - s * Z) / (Z - s)


def _Z_b(v, params):
    return params.k * v / (params.m + (params.k - params.m) * v * v)


def _Z_g(v, params):
    s = math.sqrt(params.ell)
    if v + s == 0:
        raise DomainError("Z_g is singular at v = -sqrt(ell)")
    return (s * v + 1.0) / (v + s)


CURVES = collections.OrderedDict(
    [
        ("u_p", _u_p),
        ("u_b", _u_b),
        ("u_g", _u_g),
        ("f", _f),
        ("v1", _v1),
        ("v2", _v2),
        ("v_plus", _v_plus),
        ("v_minus", _v_minus),
        ("Z_b", _Z_b),
        ("Z_g", _Z_g),
    ]
)

# curves in the z-u plane, the rest live in the Z-v plane
ZU_CURVES = ("u_p", "u_b", "u_g", "f")


def curve_eval(name, x, params):
    """
    evaluate a named curve from its closed form.

    raises:
      DomainError: for an unknown name, or x outside the curve's natural domain.
    """
    try:
        fn = CURVES[name]
    except KeyError:
        raise DomainError("unknown curve: %s" % name)
    return fn(x, params)


def u_g_poly(params):
    return np.array([params.eps, 2.0 * (1.0 + params.ell * params.gamma), params.ell - 1.0])


def L_poly(u_coeffs, params):
    """
    L(u) = -Dz(z, u) u' + Du(z, u) as a polynomial, for a polynomial u.

    args:
      u_coeffs (array-like): coefficients of u in increasing order.

    returns:
      np.ndarray: coefficients of L(u) in increasing order.
    """
    u = np.asarray(u_coeffs, dtype=float)
    a, b = Dz_polys(params)
    Dz = P.polyadd(P.polymul(a, u), b)
    Du = 2.0 * P.polymul(u, P.polyadd(u, Du_poly(params)))
    return P.polysub(Du, P.polymul(Dz, P.polyder(u)))


def L_apply(u_coeffs, z, params):
    """exact evaluation of L(u)(z) for a polynomial u."""
    return P.polyval(z, L_poly(u_coeffs, params))


def L_u_g_closed_form(z, params):
    ell, gamma = params.ell, params.gamma
    return 2.0 * params.k * ell * (1.0 - ell) * z * (gamma + z) ** 3


def Dz_on_u_g_closed_form(z, params):
    """Dz(z, u_g(z)) = k z (z + gamma) ((ell+1) z + ell gamma - 1)."""
    ell, gamma = params.ell, params.gamma
    return params.k * z * (z + gamma) * ((ell + 1.0) * z + ell * gamma - 1.0)


def L_closed_form(name, z, params, sonic, coeffs):
    """
    closed forms of L applied to the truncations u1, u2, u3 of the Q1 expansion.
    """
    k, ell = params.k, params.ell
    R, delta, a1 = sonic.R, sonic.delta, sonic.a1
    a2, a3, a4 = coeffs.a2, coeffs.a3, coeffs.a4
    if name == "u1":
        return -(R - 2.0) * delta * a2 * z ** 2 - (ell - 1.0) * a1 * z ** 3
    elif name == "u2":
        return -(z ** 3) * ((R - 3.0) * delta * a3 + 2.0 * k * a2 * (a2 + 1.0) * z)
    elif name == "u3":
        return z ** 4 * (-(R - 4.0) * delta * a4 + coeffs.B3 * a3 * z - (3.0 * k + 1.0) * a3 * a3 * z * z)
    else:
        raise DomainError("no closed form for L(%s)" % name)


class BarrierPoly(object):
    """
    a piecewise polynomial barrier.

    `pieces` is a list of (lo, hi, coefficients); the pieces tile the real line
    and a point at a breakpoint belongs to the piece on its right.
    """

    def __init__(self, name, pieces):
        super(BarrierPoly, self).__init__()
        self.name = name
        self.pieces = pieces

    @property
    def breakpoints(self):
        return [lo for (lo, _, _) in self.pieces[1:]]

    @property
    def coeffs(self):
        """the coefficients of the piece containing z=0."""
        return self._piece(0.0)

    def _piece(self, z):
        for (lo, hi, coeffs) in self.pieces:
            if lo <= z < hi:
                return coeffs
        return self.pieces[-1][2]

    def __call__(self, z):
        return P.polyval(z, self._piece(z))

    def derivative(self, z):
        return P.polyval(z, P.polyder(self._piece(z)))

    def L(self, z, params):
        return L_apply(self._piece(z), z, params)

    def __repr__(self):
        return "BarrierPoly(%s, %d piece(s))" % (self.name, len(self.pieces))


BARRIERS = ("u1", "u2", "u3", "U1", "U2", "U3", "U3star")


def barrier_poly(name, params, sonic, coeffs):
    """
    build a barrier from the Q1 coefficients.

    raises:
      DomainError: for an unknown barrier name.
    """
    eps, a1 = params.eps, sonic.a1
    a2, a3, a4 = coeffs.a2, coeffs.a3, coeffs.a4
    inf = float("inf")

    def whole(c):
        return BarrierPoly(name, [(-inf, inf, np.array(c, dtype=float))])

    if name == "u1":
        return whole([eps, a1])
    elif name == "u2":
        return whole([eps, a1, a2])
    elif name == "u3":
        return whole([eps, a1, a2, a3])
    elif name == "U1":
        return whole([eps, a1, a2, a3, coeffs.M1])
    elif name == "U2":
        return whole([eps, a1, a2, a3, 0.5 * a4, coeffs.M2])
    elif name == "U3":
        return whole([eps, a1, a2, a3, coeffs.M])
    elif name == "U3star":
        brk = 2.0 * coeffs.xi2
        return BarrierPoly(
            name,
            [
                (-inf, brk, np.array([eps, a1], dtype=float)),
                (brk, inf, np.array([eps, a1, a2, a3, coeffs.M], dtype=float)),
            ],
        )
    else:
        raise DomainError("unknown barrier: %s" % name)
