"""Command-line front end.

Subcommands:

    product      theta_{p1} theta_{p2} as canonical JSON
    expand-ray   wall-function series of one scattering ray
    theta-expand theta_p in the generator-monomial basis
    trace        broken-line dump for one charge near a direction
    verify       run a named verification suite (exit 1 on FAIL)

Points are written m,n in canonical form (n >= 0, m >= 0 when n = 0);
non-canonical input is rejected rather than silently folded, since the
sign convention encodes which multicurve is meant.  Output is
byte-identical across runs and thread counts.
"""

from __future__ import annotations

import argparse
import sys

from .base import BPoint
from .broken import enumerate_broken_lines, product_theta
from .diagrams import choose_basepoint, config, ray_series, rays_up_to
from .serialize import (dumps, element_to_json, normal_to_json,
                        series_to_json, trace_to_json)
from .verify import SUITES

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class CliError(Exception):
    pass


def parse_point(text: str) -> BPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise CliError(f"expected a point 'm,n', got {text!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError:
        raise CliError(f"expected integers in {text!r}")
    p = BPoint(m, n)
    if not p.is_canonical():
        raise CliError(
            f"point {text} is not canonical (need n >= 0, and m >= 0 when n = 0); "
            f"did you mean {-m},{-n}?")
    return p


def _emit(args, text: str):
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_product(args) -> int:
    cfg = config(args.surface)
    p1, p2 = parse_point(args.p1), parse_point(args.p2)
    element = product_theta(cfg, p1, p2)
    payload = element_to_json(element)
    if args.trace:
        budget = _pair_budget(p1, p2)
        Q = choose_basepoint(BPoint(0, 0), rays_up_to(budget), args.side)
        payload["traces"] = {
            f"{p.m},{p.n}": [trace_to_json(t) for t in
                             enumerate_broken_lines(cfg, p, Q, budget)]
            for p in (p1, p2)}
    _emit(args, dumps(payload))
    return EXIT_OK


def _pair_budget(p1, p2) -> int:
    from .base import f_norm
    return f_norm(p1) + f_norm(p2)


def cmd_expand_ray(args) -> int:
    cfg = config(args.surface)
    direction = parse_point(args.dir)
    if args.order < 0:
        raise CliError("order must be nonnegative")
    series = ray_series(cfg, direction, args.order)
    _emit(args, dumps(series_to_json(series)))
    return EXIT_OK


def cmd_theta_expand(args) -> int:
    from .algebra import theta_to_monomials
    cfg = config(args.surface)
    p = parse_point(args.point)
    _emit(args, dumps(normal_to_json(theta_to_monomials(cfg, p))))
    return EXIT_OK


def cmd_trace(args) -> int:
    cfg = config(args.surface)
    charge = parse_point(args.charge)
    if charge == (0, 0):
        raise CliError("charge must be nonzero")
    budget = args.budget
    if args.order is not None and args.order < budget:
        raise CliError(f"truncation override {args.order} is below the "
                       f"required budget {budget}")
    near = parse_point(args.near) if args.near else charge
    Q = choose_basepoint(near, rays_up_to(budget), args.side)
    traces = enumerate_broken_lines(cfg, charge, Q, budget)
    _emit(args, dumps({"charge": [charge.m, charge.n],
                       "basepoint": [Q[0], Q[1]],
                       "budget": budget,
                       "traces": [trace_to_json(t) for t in traces]}))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = config(args.surface, corruption=args.corrupt)
    if args.suite not in SUITES:
        raise CliError(f"unknown suite {args.suite!r}; "
                       f"choose from {', '.join(sorted(SUITES))}")
    report = SUITES[args.suite](cfg, args.max_f)
    _emit(args, dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="skeinscatter",
        description="Exact skein-algebra structure constants from quantum "
                    "broken lines on the scattering diagrams of the "
                    "4-punctured sphere and 1-punctured torus.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--surface", choices=("s04", "s11"), default="s04")
        p.add_argument("--output", default="-", help="output path (default stdout)")

    p = sub.add_parser("product", help="product of two quantum theta functions")
    common(p)
    p.add_argument("p1")
    p.add_argument("p2")
    p.add_argument("--trace", action="store_true",
                   help="include broken-line dumps for both charges")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("expand-ray", help="wall-function series of a ray")
    common(p)
    p.add_argument("--dir", required=True, help="primitive direction m,n")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(fn=cmd_expand_ray)

    p = sub.add_parser("theta-expand",
                       help="theta_p in the generator-monomial basis")
    common(p)
    p.add_argument("point")
    p.set_defaults(fn=cmd_theta_expand)

    p = sub.add_parser("trace", help="broken-line dump for one charge")
    common(p)
    p.add_argument("charge")
    p.add_argument("--budget", type=int, required=True, help="bend budget")
    p.add_argument("--near", help="target direction the basepoint hugs")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--order", type=int,
                   help="truncation override; must cover the budget")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("suite")
    p.add_argument("--max-f", type=int, default=None)
    p.add_argument("--corrupt", choices=("bump-one-wall", "flip-sign"),
                   help="inject a wall defect (the suite must then FAIL)")
    p.set_defaults(fn=cmd_verify)
    return ap


def run_cli(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
