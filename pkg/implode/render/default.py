# Copyright (C) 2021 implode developers. All Rights Reserved.
# Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
# You may obtain a copy of the License at: [package root]/LICENSE.txt
# Unless required by applicable law or agreed to in writing, software distributed under the License
#  is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and limitations under the License.
import tabulate

import implode.render.utils as rutils

tabulate.PRESERVE_WHITESPACE = True


def width(s, character_count):
    """pad the given string to at least `character_count`"""
    if len(s) < character_count:
        return s + " " * (character_count - len(s))
    else:
        return s


def render_critical_table(rows, ostream):
    """
    example::

        +-----+----------+-------------+-------------+-------------+-------------+---------+
        | k   | ell0     | ell1        | ell*        | eps*        | k - k/ell1  | R_inf   |
        |-----+----------+-------------+-------------+-------------+-------------+---------|
        | 2   | inf      | 1.881587232 | inf         | 9.581746731 | 0.937067617 | 1.0     |
        | ...                                                                              |
        +-----+----------+-------------+-------------+-------------+-------------+---------+
    """
    table = []
    for row in rows:
        table.append(
            (
                rutils.bold(str(row["k"])),
                rutils.num(row["ell0"], 10),
                rutils.bold2(rutils.num(row["ell1"], 10)),
                rutils.num(row["ell_star"], 10),
                rutils.num(row["eps_star"], 10),
                rutils.num(row["k_minus_k_over_ell1"], 10),
                rutils.num(row["R_inf"], 10),
            )
        )
    headers = [width("k", 3), "ell0", width("ell1", 12), "ell*", "eps*(ell1)", "k - k/ell1", "R_inf(ell1)"]
    ostream.write(tabulate.tabulate(table, headers=headers, tablefmt="psql"))
    ostream.write("\n")


def render_solve(doc, ostream):
    rows = [(width(key, 22), rutils.num(value, 15)) for (key, value) in sorted(doc["summary"].items())]
    ostream.write(tabulate.tabulate(rows, tablefmt="psql"))
    ostream.write("\n")

    profile = doc["profile"]
    rows = [
        ("rho*", rutils.num(profile["rho_star"], 15)),
        ("u0*", rutils.num(profile["u0_star"], 15)),
        ("u*", rutils.num(profile["u_star"], 15)),
        ("black curve Z*", ", ".join(rutils.num(Z, 10) for Z in profile["Z_star"]) or "-"),
        ("sonic window", rutils.num(profile["zeta_window"], 6)),
    ]
    ostream.write(tabulate.tabulate([(width(k, 22), v) for (k, v) in rows], tablefmt="psql"))
    ostream.write("\n")

    seams = [(s["seam"], rutils.num(s["Z"], 10), "%.2e" % s["c0"], "%.2e" % s["c1"]) for s in profile["seams"]]
    if seams:
        ostream.write(tabulate.tabulate(seams, headers=[width("seam", 30), "Z", "C0", "C1"], tablefmt="psql"))
        ostream.write("\n")

    if "beta_gap" in doc:
        gap = doc["beta_gap"]
        if gap.get("not_applicable"):
            ostream.writeln("beta > ell + 1: " + rutils.bold2("not applicable for k <= 2"))
        else:
            status = rutils.bold2("satisfied") if gap["satisfied"] else rutils.fail("violated")
            beta, ell_plus_1 = rutils.num(gap["beta"]), rutils.num(gap["ell_plus_1"])
            ostream.writeln("beta > ell + 1: %s (beta=%s, ell+1=%s)" % (status, beta, ell_plus_1))


def render_checks(doc, ostream):
    """
    one row per failed check, then a summary line; passing checks are counted by name.
    """
    by_name = {}
    failed = []
    for check in doc["checks"]:
        name = "%s: %s" % (check["suite"], check["name"])
        passed, total = by_name.get(name, (0, 0))
        by_name[name] = (passed + bool(check["passed"]), total + 1)
        if not check["passed"]:
            failed.append(check)

    rows = []
    for name, (passed, total) in sorted(by_name.items()):
        status = rutils.bold2("ok") if passed == total else rutils.fail("FAIL")
        rows.append((width(name, 50), "%d/%d" % (passed, total), status))
    ostream.write(tabulate.tabulate(rows, headers=["CHECK", "PASSED", ""], tablefmt="psql"))
    ostream.write("\n")

    if failed:
        rows = []
        for check in failed:
            point = ", ".join("%s=%s" % (k, rutils.num(v, 8)) for (k, v) in sorted(check["point"].items()))
            rows.append((check["name"], point, rutils.num(check["margin"], 4)))
        ostream.write(tabulate.tabulate(rows, headers=["FAILED", "POINT", "MARGIN"], tablefmt="psql"))
        ostream.write("\n")

    counts = doc["counts"]
    if doc["passed"]:
        ostream.writeln(rutils.bold("%d checks passed" % counts["total"]))
    else:
        ostream.writeln(rutils.fail("%d of %d checks failed" % (counts["failed"], counts["total"])))


def render_profile(header, rows, ostream):
    ostream.write(
        tabulate.tabulate([(width(k, 12), rutils.num(v, 15)) for (k, v) in header.items()], tablefmt="psql")
    )
    ostream.write("\n")
    columns = list(rows[0].keys()) if rows else []
    table = [[rutils.num(row[c], 12) for c in columns] for row in rows]
    ostream.write(tabulate.tabulate(table, headers=columns, tablefmt="psql"))
    ostream.write("\n")


def render_default(kind, doc, rows=None):
    """
    args:
      kind (str): one of "critical", "solve", "verify", "profile".
      doc: the result document; for "critical" the table rows, for "profile" the header.
      rows: the profile rows, for "profile".
    """
    ostream = rutils.StringIO()
    if kind == "critical":
        render_critical_table(doc, ostream)
    elif kind == "solve":
        render_solve(doc, ostream)
    elif kind == "verify":
        render_checks(doc, ostream)
    elif kind == "profile":
        render_profile(doc, rows, ostream)
    else:
        raise ValueError("unexpected result kind: %s" % kind)
    return ostream.getvalue()
