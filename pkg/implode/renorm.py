# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
the change of variables psi: (Z, v) -> (z, u), its inverse theta, and region classification.

psi maps R0 = {0 < v < 1, 0 < Zv < 1} onto D0 = {u > 0, z < 1} and sends
the sonic point P1 to Q1 = (0, eps).
"""
import math
import collections

from implode.fields import ZuPoint, ZvPoint, landmarks, curve_eval, barrier_poly
from implode.errors import DomainError

PLANES = ("Zv", "zu")

# most specific first
ZV_TAGS = ("R2plus", "R1", "R2", "R0")
ZU_TAGS = ("D2prime", "D2doubleprime", "D2", "D1", "D0")


class RegionTag(object):
    """
    region membership of a point.

    `tags` holds every region the point belongs to; `tag` names the most specific, or "outside".
    """

    def __init__(self, plane, tags):
        super(RegionTag, self).__init__()
        self.plane = plane
        self.tags = frozenset(tags)
        order = ZV_TAGS if plane == "Zv" else ZU_TAGS
        self.tag = next((t for t in order if t in self.tags), "outside")

    def __contains__(self, tag):
        return tag in self.tags

    def __eq__(self, other):
        return isinstance(other, RegionTag) and (self.plane, self.tags) == (other.plane, other.tags)

    def __hash__(self):
        return hash((self.plane, self.tags))

    def __repr__(self):
        return "RegionTag(%s, %s)" % (self.plane, self.tag)


def in_R0(Z, v):
    return 0 < v < 1 and 0 < Z * v < 1


def in_D0(z, u):
    return u > 0 and z < 1


def psi(p, params):
    """
    raises:
      DomainError: if p is not in R0.
    """
    Z, v = p
    if not in_R0(Z, v):
        raise DomainError("psi is defined on R0 only, got (Z=%r, v=%r)" % (Z, v))
    gamma = params.gamma
    w = 1.0 - v * v
    one_minus_Zv = 1.0 - Z * v
    z = ((1.0 + gamma * v * v) * Z - (1.0 + gamma) * v) / (Z * w)
    u = (1.0 + gamma) ** 2 * one_minus_Zv * one_minus_Zv / (Z * Z * w)
    return ZuPoint(z, u)


def theta(q, params):
    """
    raises:
      DomainError: if q is not in D0.
    """
    z, u = q
    if not in_D0(z, u):
        raise DomainError("theta is defined on D0 only, got (z=%r, u=%r)" % (z, u))
    gamma = params.gamma
    s = 1.0 - z
    r = math.sqrt(u + s * s)
    Z = (1.0 + gamma) * r / (u + (1.0 + gamma) * s)
    v = s / r
    return ZvPoint(Z, v)


def N_factor(z, u, params):
    """the positive factor relating dZ-flow to dz-flow: [u + (1-z)^2][u + (1+gamma)(1-z)] / u."""
    s = 1.0 - z
    return (u + s * s) * (u + (1.0 + params.gamma) * s) / u


def jacobian_psi(Z, v, params):
    """dPsi_z/dv dPsi_u/dZ - dPsi_z/dZ dPsi_u/dv, positive on R0."""
    g1 = 1.0 + params.gamma
    return 2.0 * g1 ** 3 * (1.0 - Z * v) ** 2 / (Z ** 4 * (1.0 - v * v) ** 3)


def window_derivative(z, u, du, params):
    """
    (dZ/dz, dv/dz) along the curve theta(z, u(z)), given u and u' at z.
    """
    g1 = 1.0 + params.gamma
    s = 1.0 - z
    q = u + s * s
    r = math.sqrt(q)
    D = u + g1 * s
    dr = (du - 2.0 * s) / (2.0 * r)
    dZ = g1 * (dr * D - r * (du - g1)) / (D * D)
    dv = (-r - s * dr) / q
    return dZ, dv


def dZdz_at_Q1(params, sonic):
    """closed form of dZ/dz at z=0 along the analytic branch; negative."""
    ell, gamma = params.ell, params.gamma
    return (
        (1.0 + gamma)
        * (2.0 * (ell * gamma * gamma - 1.0) - (ell * gamma - 1.0) * sonic.a1)
        / (2.0 * math.sqrt(ell) * (ell * gamma + 1.0) ** 2 * gamma * gamma)
    )


def _classify_Zv(Z, v, params):
    tags = set()
    if not in_R0(Z, v):
        return tags
    tags.add("R0")

    v1 = landmarks(params).v1
    Zb = curve_eval("Z_b", v, params)
    Zg = curve_eval("Z_g", v, params)
    if 0 < v < v1 and Zb < Z < Zg:
        tags.add("R1")
    elif v1 < v < 1:
        if Zg < Z < Zb:
            tags.add("R2")
        elif abs(Z - Zg) <= 1e-12 * max(1.0, Zg):
            tags.add("R2plus")
    return tags


def _classify_zu(z, u, params, sonic, coeffs):
    tags = set()
    if not in_D0(z, u):
        return tags
    tags.add("D0")

    ug = curve_eval("u_g", z, params)
    if 0 < z < 1 and u > ug:
        tags.add("D1")
    if landmarks(params).zg < z < 0 and 0 < u < ug:
        tags.add("D2")
        if sonic is not None and coeffs is not None:
            if u < barrier_poly("u3", params, sonic, coeffs)(z):
                tags.add("D2prime")
            if u < barrier_poly("U3star", params, sonic, coeffs)(z):
                tags.add("D2doubleprime")
    return tags


def classify(p, plane, params, sonic=None, coeffs=None):
    """
    classify a point by the defining inequalities of the named regions.

    args:
      p (tuple): a ZvPoint or ZuPoint.
      plane (str): "Zv" or "zu".
      params (ParamSet): the parameters.
      sonic (SonicData): needed, with coeffs, for D2prime and D2doubleprime.
      coeffs (CoeffTable): see sonic.

    returns:
      RegionTag
    """
    if plane == "Zv":
        return RegionTag(plane, _classify_Zv(p[0], p[1], params))
    elif plane == "zu":
        return RegionTag(plane, _classify_zu(p[0], p[1], params, sonic, coeffs))
    else:
        raise DomainError("unknown plane: %s" % plane)
