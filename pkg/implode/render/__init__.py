# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import io
import csv
import json
import math

import numpy as np

import implode.profile

INF_MARKER = "inf"


def sanitize(obj):
    """
    convert a result into Python-native, JSON-safe values.

    namedtuples become dicts, numpy scalars and arrays become floats and lists,
    and non-finite floats become the string markers "inf", "-inf" and "nan".
    """
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for (k, v) in obj.items()}
    elif hasattr(obj, "_asdict"):
        return sanitize(obj._asdict())
    elif isinstance(obj, (list, tuple, set, np.ndarray)):
        return [sanitize(v) for v in obj]
    elif isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    elif isinstance(obj, (int, np.integer)):
        return int(obj)
    elif isinstance(obj, (float, np.floating)):
        obj = float(obj)
        if math.isinf(obj):
            return INF_MARKER if obj > 0 else "-" + INF_MARKER
        if math.isnan(obj):
            return "nan"
        return obj
    return obj


def convert_match_to_result_document(match):
    """
    "match": {
        "R0": 3.2981...,
        "residual": 1.2e-13,
        "bracket": [3.001, 3.999],
        "roots": [3.2981...],
        "zeta": 0.031...
    }
    """
    d = match.diagnostics
    return {
        "R0": match.R0,
        "residual": match.residual,
        "bracket": d["bracket"],
        "roots": d["roots"],
        "zeta": d["zeta"],
        "memberships": d["memberships"],
    }


def convert_profile_to_result_document(profile):
    doc = dict(implode.profile.profile_header(profile))
    doc.update(
        {
            "u0_star": profile.u0_star,
            "u_star": profile.u_star,
            "Z_star": profile.Z_star,
            "v_star": profile.v_star,
            "zeta_window": profile.zeta,
            "seams": profile.seams,
        }
    )
    return doc


def convert_solve_to_result_document(match, profile, beta_gap=None):
    """
    schema:

    ```json
    {
      "summary": {k, ell, R0, residual, Z1, v1, beta, v_inf},
      "match": {...},
      "profile": {...header scalars, u0_star, u_star, Z_star, v_star, seams...},
      "beta_gap": {...} (k >= 3 only)
    }
    ```
    """
    p = profile.params
    summary = {
        "k": p.k,
        "ell": p.ell,
        "R0": match.R0,
        "residual": match.residual,
        "Z1": profile.landmarks.Z1,
        "v1": profile.landmarks.v1,
        "beta": p.beta,
        "v_inf": profile.v_inf,
    }
    doc = {
        "summary": summary,
        "match": convert_match_to_result_document(match),
        "profile": convert_profile_to_result_document(profile),
    }
    if beta_gap is not None:
        doc["beta_gap"] = dict(beta_gap)
    return sanitize(doc)


def convert_checks_to_result_document(checks):
    return sanitize(
        {
            "passed": all(c.passed for c in checks),
            "counts": {"total": len(checks), "failed": sum(1 for c in checks if not c.passed)},
            "checks": [dict(c._asdict()) for c in checks],
        }
    )


class ImplodeJsonObjectEncoder(json.JSONEncoder):
    """JSON encoder that understands numpy values and emits sets as sorted lists"""

    def default(self, obj):
        if isinstance(obj, np.ndarray):
            return sanitize(obj)
        elif isinstance(obj, (np.floating, np.integer, np.bool_)):
            return sanitize(obj)
        elif isinstance(obj, set):
            return list(sorted(obj))
        else:
            # probably will TypeError
            return json.JSONEncoder.default(self, obj)


def render_json(doc):
    return json.dumps(sanitize(doc), cls=ImplodeJsonObjectEncoder, sort_keys=True)


def format_number(value):
    """17 significant digits, '.' decimal separator, markers for non-finite values."""
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isinf(value):
            return INF_MARKER if value > 0 else "-" + INF_MARKER
        if math.isnan(value):
            return "nan"
        return "%.17g" % value
    return str(value)


def render_csv(rows, fieldnames):
    f = io.StringIO()
    writer = csv.DictWriter(f, fieldnames=fieldnames, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: format_number(row.get(k)) for k in fieldnames})
    return f.getvalue()
