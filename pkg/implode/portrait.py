# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
phase portrait data for external plotting: nullcline polylines and unit field directions.
"""
import math
import logging
import collections

import numpy as np

from implode.errors import DomainError
from implode.fields import field_Zv, field_zu, curve_eval

logger = logging.getLogger(__name__)

# curve name -> True when the curve is a graph over the vertical coordinate
PLANE_CURVES = {
    "zv": collections.OrderedDict(
        [("v1", False), ("v2", False), ("v_plus", False), ("v_minus", False), ("Z_b", True), ("Z_g", True)]
    ),
    "zu": collections.OrderedDict([("u_p", False), ("u_b", False), ("u_g", False)]),
}

PORTRAIT_COLUMNS = ("kind", "name", "segment", "x", "y", "dx", "dy")

Window = collections.namedtuple("Window", ["x0", "x1", "y0", "y1"])


def parse_window(s):
    """parse "x0:x1:y0:y1"; an empty or inverted window is a DomainError."""
    try:
        x0, x1, y0, y1 = (float(part) for part in s.split(":"))
    except ValueError:
        raise DomainError("window must look like x0:x1:y0:y1, got %r" % (s,))
    if not (x1 > x0 and y1 > y0):
        raise DomainError("empty window: %r" % (s,))
    return Window(x0, x1, y0, y1)


def direction(plane, x, y, params):
    """
    the unit direction of the field at (x, y), or None at a critical point.

    for zv the field is (DZ, Dv); for zu it is (Dz, Du).
    """
    if plane == "zv":
        dy, dx = field_Zv((x, y), params)
    elif plane == "zu":
        dy, dx = field_zu((x, y), params)
    else:
        raise DomainError("unknown plane: %s" % plane)
    norm = math.hypot(dx, dy)
    if norm == 0 or not math.isfinite(norm):
        return None
    return dx / norm, dy / norm


def nullcline(name, plane, window, params, n=400):
    """
    sample a named curve across the window.

    returns:
      list of list of (float, float): polylines, split wherever the curve leaves the window or its domain.
    """
    transposed = PLANE_CURVES[plane][name]
    lo, hi = (window.y0, window.y1) if transposed else (window.x0, window.x1)

    polylines = []
    current = []
    for s in np.linspace(lo, hi, n):
        try:
            value = curve_eval(name, s, params)
        except DomainError:
            value = None
        if value is not None:
            x, y = (value, s) if transposed else (s, value)
            if window.x0 <= x <= window.x1 and window.y0 <= y <= window.y1:
                current.append((float(x), float(y)))
                continue
        if len(current) > 1:
            polylines.append(current)
        current = []
    if len(current) > 1:
        polylines.append(current)
    return polylines


def portrait(plane, params, window, n=20):
    """
    rows for a phase portrait: every nullcline vertex, then an n x n grid of unit directions.

    returns:
      list of collections.OrderedDict: with the keys in PORTRAIT_COLUMNS.
    """
    if plane not in PLANE_CURVES:
        raise DomainError("unknown plane: %s" % plane)
    if n < 2:
        raise DomainError("need at least 2 samples per axis, got %d" % n)

    rows = []
    for name in PLANE_CURVES[plane]:
        for (i, line) in enumerate(nullcline(name, plane, window, params)):
            for (x, y) in line:
                rows.append(collections.OrderedDict(zip(PORTRAIT_COLUMNS, ("curve", name, i, x, y, None, None))))

    skipped = 0
    for x in np.linspace(window.x0, window.x1, n):
        for y in np.linspace(window.y0, window.y1, n):
            d = direction(plane, x, y, params)
            if d is None:
                skipped += 1
                continue
            rows.append(
                collections.OrderedDict(zip(PORTRAIT_COLUMNS, ("arrow", "field", 0, float(x), float(y), d[0], d[1])))
            )
    if skipped:
        logger.debug("skipped %d critical grid points", skipped)
    return rows
