# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
adaptive Runge-Kutta integration of the Z-v, z-u and compactified W fields, with event detection.

    W = 1/Z,  v~(W) = v(1/W),  dv~/dW = G(W, v~)

integration uses scipy's `solve_ivp` with the method named by the solver configuration,
DOP853 by default; events are located on the dense output.
"""
import logging

import numpy as np
import scipy.integrate

from implode.config import SolverConfig
from implode.errors import DomainError, StepFailure
from implode.fields import field_Zv, field_zu, curve_eval

logger = logging.getLogger(__name__)

FIELDS = ("Zv", "zu", "W")
EVENTS = ("psi_z_equals", "delta_v_zero", "Z_reaches", "v_minus_Zb_zero")


def G(W, vt, params):
    """slope of the compactified field: dv~/dW."""
    m, k, ell = params.m, params.k, params.ell
    w = 1.0 - vt * vt
    return w * (m * w - k * vt * (W - vt)) / (ell * (W * vt - 1.0) ** 2 - (W - vt) ** 2)


def field_rhs(field, params):
    """
    the right hand side f(x, y) of a named field, with y a length-1 state.
    """
    if field == "Zv":

        def rhs(Z, y):
            Dv, DZ = field_Zv((Z, y[0]), params)
            return [Dv / DZ]

    elif field == "zu":

        def rhs(z, y):
            Du, Dz = field_zu((z, y[0]), params)
            return [Du / Dz]

    elif field == "W":

        def rhs(W, y):
            return [G(W, y[0], params)]

    else:
        raise DomainError("unknown field: %s" % field)
    return rhs


def psi_z(Z, v, gamma):
    """the z-coordinate of psi, without the domain check."""
    return ((1.0 + gamma * v * v) * Z - (1.0 + gamma) * v) / (Z * (1.0 - v * v))


def event_fn(name, x, y, params, value=None):
    """
    a smooth scalar whose sign change marks the named event.

    for the Z-v field x is Z and y[0] is v.
    """
    Z, v = x, y[0]
    if name == "psi_z_equals":
        return psi_z(Z, v, params.gamma) - value
    elif name == "delta_v_zero":
        return field_Zv((Z, v), params)[0]
    elif name == "Z_reaches":
        return Z - value
    elif name == "v_minus_Zb_zero":
        return Z - curve_eval("Z_b", v, params)
    else:
        raise DomainError("unknown event: %s" % name)


def make_event(name, params, value=None, terminal=False, direction=0):
    """wrap `event_fn` in the callable form solve_ivp expects."""
    if name not in EVENTS:
        raise DomainError("unknown event: %s" % name)

    def ev(x, y):
        return event_fn(name, x, y, params, value=value)

    ev.terminal = terminal
    ev.direction = direction
    ev.__name__ = name
    return ev


class Trajectory(object):
    """
    the result of one integration.

    attributes:
      x (np.ndarray): the accepted grid, strictly monotone.
      y (np.ndarray): states, shape (n_state, len(x)).
      termination (tuple): ("reached_end",) or ("event", name, location).
      events (dict): event name -> list of (x, y) occurrences, in integration order.
    """

    def __init__(self, x, y, sol, termination, events):
        super(Trajectory, self).__init__()
        self.x = x
        self.y = y
        self.sol = sol
        self.termination = termination
        self.events = events

    @property
    def x_end(self):
        return self.x[-1]

    @property
    def y_end(self):
        return self.y[:, -1]

    @property
    def direction(self):
        return 1 if self.x[-1] >= self.x[0] else -1

    def __call__(self, x):
        return self.sol(x)

    def covers(self, x):
        lo, hi = min(self.x[0], self.x[-1]), max(self.x[0], self.x[-1])
        return lo <= x <= hi

    def __repr__(self):
        return "Trajectory([%.6g, %.6g], %s)" % (self.x[0], self.x[-1], self.termination[0])


def integrate(field, x0, y0, x_end, params=None, events=(), cfg=None):
    """
    integrate from (x0, y0) toward x_end, in whichever direction that is.

    args:
      field (str or callable): a name from FIELDS, or f(x, y) for an augmented state.
      x0 (float): the start.
      y0 (list of float): the initial state.
      x_end (float): where to stop when no terminal event fires first.
      params (ParamSet): required for named fields.
      events (list): callables from `make_event`.
      cfg (SolverConfig): tolerances.

    returns:
      Trajectory

    raises:
      StepFailure: when the step size underflows (a singular point was hit).
    """
    cfg = cfg or SolverConfig()
    rhs = field_rhs(field, params) if isinstance(field, str) else field
    span = abs(x_end - x0)
    if span == 0:
        raise DomainError("empty integration span at x=%r" % (x0,))

    events = list(events)
    res = scipy.integrate.solve_ivp(
        rhs,
        (x0, x_end),
        np.atleast_1d(np.asarray(y0, dtype=float)),
        method=cfg.method,
        dense_output=True,
        events=events or None,
        rtol=cfg.rtol,
        atol=cfg.atol,
        max_step=span * cfg.max_step_fraction,
    )

    if res.status == -1:
        location = res.t[-1] if len(res.t) else x0
        raise StepFailure("integration failed near x=%.17g: %s" % (location, res.message), location=location)

    found = {}
    termination = ("reached_end",)
    for (ev, xs, ys) in zip(events, res.t_events or [], res.y_events or []):
        found[ev.__name__] = [(xe, ye) for (xe, ye) in zip(xs, ys)]
        if res.status == 1 and ev.terminal and len(xs):
            termination = ("event", ev.__name__, xs[-1])

    name = field if isinstance(field, str) else "custom"
    logger.debug("integrated %s from %.6g to %.6g in %d steps: %s", name, x0, res.t[-1], len(res.t), termination[0])
    return Trajectory(res.t, res.y, res.sol, termination, found)
