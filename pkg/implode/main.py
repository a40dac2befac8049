#!/usr/bin/env python3
"""
Copyright (C) 2021 implode developers. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
You may obtain a copy of the License at: [package root]/LICENSE.txt
Unless required by applicable law or agreed to in writing, software distributed under the License
 is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and limitations under the License.
"""
import sys
import logging
import argparse
import textwrap

import halo
import numpy as np
import colorama

import implode.render
import implode.freeze
import implode.verify
import implode.profile
import implode.version
import implode.portrait
import implode.criticality
import implode.render.default
from implode.config import SolverConfig, get_env_log_level
from implode.errors import DomainError, NumericalError
from implode.params import derive_params

logger = logging.getLogger("implode")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NUMERICAL = 4

FORMATS = ("csv", "json", "text")


def parse_k_range(s):
    """parse "3" or "2..6" into a list of dimensions k >= 1."""
    try:
        if ".." in s:
            lo, _, hi = s.partition("..")
            ks = list(range(int(lo), int(hi) + 1))
        else:
            ks = [int(s)]
    except ValueError:
        raise argparse.ArgumentTypeError("k must be an integer or a range like 2..6, got %r" % s)
    if not ks or min(ks) < 1:
        raise argparse.ArgumentTypeError("k must be at least 1, got %r" % s)
    return ks


def parse_k(s):
    ks = parse_k_range(s)
    if len(ks) != 1:
        raise argparse.ArgumentTypeError("a single k is required, got %r" % s)
    return ks[0]


def parse_grid(s):
    """parse "Z0:Z1:n" into a strictly increasing grid on [Z0, Z1]."""
    try:
        Z0, Z1, n = s.split(":")
        Z0, Z1, n = float(Z0), float(Z1), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError("grid must look like Z0:Z1:n, got %r" % s)
    if not (0 <= Z0 < Z1) or n < 2:
        raise argparse.ArgumentTypeError("grid must be increasing, start at Z0 >= 0, and have n >= 2: %r" % s)
    return np.linspace(Z0, Z1, n)


def parse_window(s):
    try:
        return implode.portrait.parse_window(s)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e))


def get_config(args):
    """the solver configuration: defaults, then --config, then --rtol/--atol/--terms."""
    cfg = SolverConfig.from_file(args.config) if args.config else SolverConfig()
    overrides = {name: getattr(args, name) for name in ("rtol", "atol", "terms") if getattr(args, name) is not None}
    if overrides:
        cfg = cfg.replace(**overrides)
    logger.debug("solver configuration: %r", cfg)
    return cfg


def emit(args, s):
    if args.out:
        with open(args.out, "w", newline="") as f:
            f.write(s)
        logger.debug("wrote %s", args.out)
    else:
        print(s.rstrip("\n"))


def cmd_critical(args, cfg):
    rows = [implode.render.sanitize(row) for row in implode.criticality.critical_table(args.k)]
    format = args.format or "text"
    if format == "json":
        emit(args, implode.render.render_json({"critical": rows}))
    elif format == "csv":
        emit(args, implode.render.render_csv(rows, list(rows[0].keys())))
    else:
        emit(args, implode.render.default.render_default("critical", rows))
    return EXIT_OK


def _solve(args, cfg):
    with halo.Halo(text="solving", spinner="simpleDots", stream=sys.stderr, enabled=not args.quiet):
        return implode.profile.solve(args.k, args.ell, cfg=cfg, strict=args.strict)


def cmd_solve(args, cfg):
    match, profile = _solve(args, cfg)
    gap = implode.criticality.beta_gap(args.k, args.ell, profile) if args.k >= 3 else None
    doc = implode.render.convert_solve_to_result_document(match, profile, beta_gap=gap)

    format = args.format or "text"
    if format == "json":
        emit(args, implode.render.render_json(doc))
    elif format == "csv":
        summary = doc["summary"]
        emit(args, implode.render.render_csv([summary], sorted(summary.keys())))
    else:
        emit(args, implode.render.default.render_default("solve", doc))
    return EXIT_OK


def cmd_profile(args, cfg):
    if args.input:
        header, rows = implode.freeze.load(args.input)
    else:
        if args.k is None or args.ell is None:
            logger.error("profile needs --k and --ell, or --in PATH")
            return EXIT_USAGE
        _, profile = _solve(args, cfg)
        header = implode.profile.profile_header(profile)
        rows = implode.profile.profile_table(profile, args.grid)

    format = args.format or "csv"
    if format == "text":
        emit(args, implode.render.default.render_default("profile", implode.render.sanitize(header), rows=rows))
    else:
        emit(args, implode.freeze.dumps(header, rows, format=format))
    return EXIT_OK


def cmd_portrait(args, cfg):
    k = args.k
    if args.gamma is not None:
        gamma = args.gamma
    elif args.m is not None:
        gamma = k / args.m - 1.0
    else:
        logger.error("portrait needs --gamma or --m")
        return EXIT_USAGE
    params = derive_params(k, args.ell, gamma)
    rows = implode.portrait.portrait(args.plane, params, args.window, n=args.n)

    format = args.format or "csv"
    if format == "json":
        header = {"k": k, "ell": args.ell, "gamma": gamma, "m": params.m, "plane": args.plane}
        emit(args, implode.render.render_json({"header": header, "rows": rows}))
    else:
        emit(args, implode.render.render_csv(rows, implode.portrait.PORTRAIT_COLUMNS))
    return EXIT_OK


def cmd_verify(args, cfg):
    checks = implode.verify.run_suites([args.suite], cfg=cfg, progress=not args.quiet)
    doc = implode.render.convert_checks_to_result_document(checks)

    format = args.format or "text"
    if format == "json":
        emit(args, implode.render.render_json(doc))
    elif format == "csv":
        rows = [dict(c, point=" ".join("%s=%r" % kv for kv in sorted(c["point"].items()))) for c in doc["checks"]]
        emit(args, implode.render.render_csv(rows, ["suite", "name", "point", "margin", "passed"]))
    else:
        emit(args, implode.render.default.render_default("verify", doc))
    return EXIT_OK if doc["passed"] else EXIT_NUMERICAL


COMMANDS = {
    "critical-ell": cmd_critical,
    "solve": cmd_solve,
    "profile": cmd_profile,
    "portrait": cmd_portrait,
    "verify": cmd_verify,
}


def get_parser():
    desc = "Construct self-similar imploding solutions of the relativistic isothermal Euler equations."
    epilog = textwrap.dedent(
        """
        examples:
          tabulate the critical exponents
            implode critical-ell --k 2..6

          match R0 and summarize the solution
            implode solve --k 2 --ell 2

          export the profile on a grid
            implode profile --k 2 --ell 2 --grid 0:20:401 --out profile.csv

          re-emit a saved profile as JSON
            implode profile --in profile.csv --format json

          sample the Z-v phase portrait
            implode portrait --plane zv --k 3 --ell 2 --m 1 --window 0:3:-1:1 --n 25

          run the self-checks
            implode verify --suite identities
         """
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-d", "--debug", action="store_true", help="enable debugging output on STDERR")
    common.add_argument("-q", "--quiet", action="store_true", help="disable all output but errors")
    common.add_argument(
        "--color",
        type=str,
        choices=("auto", "always", "never"),
        default="auto",
        help="enable ANSI color codes in results, default: only during interactive session",
    )
    common.add_argument("--config", type=str, help="path to a YAML file of solver settings")
    common.add_argument("--rtol", type=float, help="integrator relative tolerance, default: 1e-11")
    common.add_argument("--atol", type=float, help="integrator absolute tolerance, default: 1e-11")
    common.add_argument("--terms", type=int, help="series truncation order, default: 60")
    common.add_argument("--out", type=str, help="write results to this path instead of STDOUT")
    common.add_argument("--format", type=str, choices=FORMATS, help="output format")

    parser = argparse.ArgumentParser(
        description=desc, epilog=epilog, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    parser.add_argument("--version", action="version", version="%(prog)s {:s}".format(implode.version.__version__))
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True

    p = subparsers.add_parser("critical-ell", parents=[common], help="tabulate ell0, ell1, ell* and R_inf")
    p.add_argument("--k", type=parse_k_range, required=True, help="dimension k, or a range like 2..6")

    p = subparsers.add_parser("solve", parents=[common], help="match R0 and build the global solution")
    p.add_argument("--k", type=parse_k, required=True, help="dimension k")
    p.add_argument("--ell", type=float, required=True, help="exponent ell > 1")
    p.add_argument("--strict", action="store_true", help="fail when g(R) has more than one root")

    p = subparsers.add_parser("profile", parents=[common], help="export (Z, v, rho_hat, u0_hat, u_hat)")
    p.add_argument("--k", type=parse_k, help="dimension k")
    p.add_argument("--ell", type=float, help="exponent ell > 1")
    p.add_argument("--grid", type=parse_grid, default="0:20:401", help="export grid Z0:Z1:n, default: 0:20:401")
    p.add_argument("--in", dest="input", type=str, help="re-read a saved profile instead of solving")
    p.add_argument("--strict", action="store_true", help="fail when g(R) has more than one root")

    p = subparsers.add_parser("portrait", parents=[common], help="sample nullclines and field directions")
    p.add_argument("--plane", type=str, choices=("zv", "zu"), required=True, help="Z-v or z-u plane")
    p.add_argument("--k", type=parse_k, required=True, help="dimension k")
    p.add_argument("--ell", type=float, required=True, help="exponent ell > 1")
    p.add_argument("--gamma", type=float, help="the parameter gamma")
    p.add_argument("--m", type=float, help="the parameter m = k / (1 + gamma)")
    p.add_argument("--window", type=parse_window, required=True, help="x0:x1:y0:y1")
    p.add_argument("--n", type=int, default=20, help="direction samples per axis, default: 20")

    p = subparsers.add_parser("verify", parents=[common], help="run the self-check suites")
    p.add_argument(
        "--suite", type=str, choices=implode.verify.SUITES + ("all",), default="all", help="suite to run, default: all"
    )
    return parser


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]

    parser = get_parser()
    args = parser.parse_args(args=argv)

    if args.quiet:
        level = logging.ERROR
    elif args.debug:
        level = logging.DEBUG
    else:
        level = get_env_log_level()
    logging.basicConfig(level=level)
    logging.getLogger().setLevel(level)

    try:
        cfg = get_config(args)
    except (IOError, ValueError) as e:
        logger.error("%s", str(e))
        return EXIT_USAGE

    if args.color == "always":
        colorama.init(strip=False)
    elif args.color == "auto":
        colorama.init()
    elif args.color == "never":
        colorama.init(strip=True)
    else:
        raise RuntimeError("unexpected --color value: " + args.color)

    try:
        return COMMANDS[args.command](args, cfg)
    except DomainError as e:
        logger.error("%s", str(e))
        return EXIT_DOMAIN
    except NumericalError as e:
        logger.error("%s", str(e))
        return EXIT_NUMERICAL
    except (IOError, ValueError) as e:
        logger.error("%s", str(e))
        return EXIT_USAGE
    finally:
        colorama.deinit()
        logger.debug("done.")


if __name__ == "__main__":
    sys.exit(main())
