# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
"""
exception hierarchy used throughout implode.

`DomainError` and its subclasses mean the caller asked for something outside the
 parameter regime (the CLI exits with 3); `NumericalError` and its subclasses mean a
 computation on valid parameters failed (the CLI exits with 4).
"""


class DomainError(ValueError):
    pass


class RangeError(DomainError):
    pass


class InadmissibleError(DomainError):
    """(k, ell) outside the admissible set required by the requested pipeline."""

    def __init__(self, message, k=None, ell=None, memberships=None):
        super(InadmissibleError, self).__init__(message)
        self.k = k
        self.ell = ell
        self.memberships = memberships or {}


class NumericalError(RuntimeError):
    pass


class BracketError(NumericalError):
    def __init__(self, message, R_inf=None):
        super(BracketError, self).__init__(message)
        self.R_inf = R_inf


class PoleError(NumericalError):
    def __init__(self, message, R=None, pole=None):
        super(PoleError, self).__init__(message)
        self.R = R
        self.pole = pole


class RadiusError(NumericalError):
    def __init__(self, message, x=None, radius=None):
        super(RadiusError, self).__init__(message)
        self.x = x
        self.radius = radius


class StepFailure(NumericalError):
    def __init__(self, message, location=None):
        super(StepFailure, self).__init__(message)
        self.location = location


class EventMissed(NumericalError):
    def __init__(self, message, event=None, reached=None):
        super(EventMissed, self).__init__(message)
        self.event = event
        self.reached = reached


class NoSignChange(NumericalError):
    def __init__(self, message, samples=None):
        super(NoSignChange, self).__init__(message)
        # list of (R, g(R)) pairs
        self.samples = samples or []


class MultipleRoots(NumericalError):
    def __init__(self, message, roots=None):
        super(MultipleRoots, self).__init__(message)
        self.roots = roots or []


class SeamError(NumericalError):
    def __init__(self, message, seam=None, mismatch=None):
        super(SeamError, self).__init__(message)
        self.seam = seam
        self.mismatch = mismatch


class RegionError(NumericalError):
    def __init__(self, message, point=None, region=None):
        super(RegionError, self).__init__(message)
        self.point = point
        self.region = region


class TailWarning(UserWarning):
    pass
