"""
implode profile file formats.

csv format: a comment line carrying the json header, then `csv` rows with 17 significant digits:

    # {"header": {"R0": 3.29..., "k": 2, ...}, "version": 1}
    Z,v,rho_hat,u0_hat,u_hat
    0,0,1,-1,0
    ...

json format:

    {
      "version": 1,
      "header": {"k": 2, "ell": 2.0, "R0": ..., "Z1": ..., "v_inf": ..., "rho_star": ..., ...},
      "rows": [
        {"Z": 0.0, "v": 0.0, "rho_hat": 1.0, "u0_hat": -1.0, "u_hat": 0.0},
        ...
      ]
    }

Copyright (C) 2021 implode developers. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
You may obtain a copy of the License at: [package root]/LICENSE.txt
Unless required by applicable law or agreed to in writing, software distributed under the License
 is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and limitations under the License.
"""
import io
import csv
import json
import logging
import collections

import implode.render
from implode.profile import EXPORT_COLUMNS

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")
COMMENT = "# "


def _parse_number(s):
    if s == implode.render.INF_MARKER:
        return float("inf")
    if s == "-" + implode.render.INF_MARKER:
        return float("-inf")
    return float(s)


def _parse_header(header):
    return collections.OrderedDict(
        (k, _parse_number(v) if isinstance(v, str) and v in ("inf", "-inf", "nan") else v) for (k, v) in header.items()
    )


def dumps(header, rows, format="csv"):
    """
    serialize a profile header and its rows to a string.

    args:
      header (Dict[str, Any]): the exported scalars.
      rows (List[Dict[str, float]]): with keys EXPORT_COLUMNS.
      format (str): "csv" or "json".
    """
    if format == "json":
        doc = {
            "version": 1,
            "header": header,
            "rows": [collections.OrderedDict((c, row[c]) for c in EXPORT_COLUMNS) for row in rows],
        }
        return implode.render.render_json(doc)
    elif format == "csv":
        first = COMMENT + implode.render.render_json({"version": 1, "header": header}) + "\n"
        return first + implode.render.render_csv(rows, EXPORT_COLUMNS)
    else:
        raise ValueError("unsupported profile format: %s" % format)


def _row(row):
    return collections.OrderedDict(
        (c, _parse_number(row[c]) if isinstance(row[c], str) else float(row[c])) for c in EXPORT_COLUMNS
    )


def _check_version(doc):
    if doc.get("version") != 1:
        raise ValueError("unsupported freeze format version: %s" % (doc.get("version")))


def loads(s):
    """
    deserialize a profile from a string in either format.

    returns:
      (collections.OrderedDict, List[collections.OrderedDict]): the header and the rows.
    """
    if s.startswith(COMMENT.strip()):
        first, _, rest = s.partition("\n")
        doc = json.loads(first[len(COMMENT.strip()) :])
        _check_version(doc)
        reader = csv.DictReader(io.StringIO(rest))
        if tuple(reader.fieldnames or ()) != EXPORT_COLUMNS:
            raise ValueError("unexpected profile columns: %s" % (reader.fieldnames,))
        rows = [_row(row) for row in reader]
    else:
        doc = json.loads(s)
        _check_version(doc)
        rows = [_row(row) for row in doc["rows"]]
    logger.debug("loaded profile with %d rows", len(rows))
    return _parse_header(doc["header"]), rows


def dump(path, header, rows, format="csv"):
    with open(path, "w", newline="") as f:
        f.write(dumps(header, rows, format=format))


def load(path):
    with open(path, "r", newline="") as f:
        return loads(f.read())
