"""``harmonic-atlas`` command line.

Exit codes: 0 pass, 1 test failure, 2 input error, 3 precondition failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import bounds, classes, families, geometry, operators, verify
from .errors import ConvergenceError, DegenerateError, DomainError, PreconditionError
from .series import HarmonicMap
from .special import HypergeometricParams

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_PRECONDITION = 0, 1, 2, 3
CHECKS = ("uk", "us", "a2", "uc_scan", "us_scan", "fk_scan", "ak_scan")


class InputError(Exception):
    pass


def _load_map(path: str) -> HarmonicMap:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        return HarmonicMap.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _emit(args, report: dict, lines: list[str]) -> None:
    report = {"schema": SCHEMA, "command": args.command, **report}
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def cmd_check(args) -> int:
    f = _load_map(args.infile)
    wanted = CHECKS if args.tests is None else tuple(args.tests.split(","))
    unknown = set(wanted) - set(CHECKS)
    if unknown:
        raise InputError(f"unknown tests: {', '.join(sorted(unknown))}")
    # every analytic criterion presumes a sense-preserving map
    geometry.require_sense_preserving(f, geometry.DEFAULT_GRID.points())
    results = []
    for name in wanted:
        if name == "uk":
            results.append(classes.uk_sufficient(f).to_dict())
        elif name == "us":
            results.append(classes.us_sufficient(f).to_dict())
        elif name == "a2":
            which = ("AK0",) if abs(f.b1) <= classes.PASS_TOL else ("AK_general",)
            results += [classes.a2_necessary(f, w).to_dict() for w in which]
        else:
            scan = {"uc_scan": geometry.uniformly_convex_scan,
                    "us_scan": geometry.uniformly_starlike_scan,
                    "fk_scan": geometry.fully_convex_scan,
                    "ak_scan": geometry.absolutely_convex_scan}[name]
            results.append(scan(f).to_dict())
    passed = all(r.get("passed", r.get("verdict") == "pass") for r in results)
    lines = []
    for r in results:
        ok = r.get("passed", r.get("verdict") == "pass")
        label = r.get("class", r.get("check"))
        value = r.get("margin", r.get("min_residual"))
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label:<22} {value:+.6e}")
    _emit(args, {"passed": passed, "results": results}, lines)
    return EXIT_PASS if passed else EXIT_FAIL


def cmd_transform(args) -> int:
    f = _load_map(args.infile)
    if args.inverse:
        out = operators.inverse_transfer(f, args.a)
        verdict = classes.us_sufficient(out)
        report = {"operator": {"inverse": True, "a": args.a}, "us": verdict.to_dict()}
        ok = verdict.passed
    else:
        if args.binf:
            p = operators.OperatorParams.from_values(args.a, None)
        elif args.beq:
            p = operators.OperatorParams.from_values(args.a, args.a)
        elif args.b is not None:
            p = operators.OperatorParams.from_values(args.a, args.b)
        else:
            raise InputError("give --b, --binf or --beq (or --inverse)")
        out, tv = operators.transfer_us_to_uk(f, p)
        uk = classes.uk_sufficient(out)
        report = {"operator": p.to_dict(), "transfer": tv.to_dict(), "uk": uk.to_dict()}
        ok = tv.admissible and uk.passed
    if args.outfile:
        _write(args.outfile, out.dumps())
    else:
        report["map"] = out.to_dict()
    lines = [f"{'PASS' if ok else 'FAIL'}  {json.dumps({k: v for k, v in report.items() if k != 'map'})}"]
    _emit(args, {"passed": ok, **report}, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_family(args) -> int:
    params = HypergeometricParams(
        complex(args.a, args.a_im) if args.a_im else args.a,
        complex(args.b, args.b_im) if args.b_im else args.b,
        args.c, conjugate_pair=bool(args.a_im))
    spec = families.HypergeometricSpec(params, complex(args.alpha_re, args.alpha_im),
                                       args.which, args.order)
    f = families.build_family(spec)
    conditions = []
    for fn in (families.t8_conditions, families.t9_conditions):
        try:
            conditions.append(fn(spec).to_dict())
        except DomainError as exc:
            conditions.append({"condition": fn.__name__, "skipped": str(exc)})
    report = {"family": args.which, "order": f.order, "conditions": conditions,
              "tails": families.family_tails(f)}
    if args.outfile:
        _write(args.outfile, f.dumps())
    else:
        report["map"] = f.to_dict()
    lines = [f"{c['condition']}: " + (f"lhs {c['lhs']:.6g} <= {c['threshold']:g} -> {c['satisfied']}"
                                      if "lhs" in c else c["skipped"]) for c in conditions]
    _emit(args, report, lines)
    return EXIT_PASS


def cmd_bounds(args) -> int:
    rep = bounds.BoundsReport.compute(args.r, args.b1)
    d = rep.to_dict()
    lines = [f"{k}: {v}" for k, v in d.items()]
    _emit(args, d, lines)
    return EXIT_PASS


@dataclass(frozen=True)
class PlotSpec:
    circles: tuple = ((0j, 0.25), (0j, 0.5), (0j, 0.75), (0j, 0.9))
    samples_per_circle: int = 256
    width: int = 600
    height: int = 600
    stroke_width: float = 1.5
    phase: float = 0.0
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        for c, r in self.circles:
            if r <= 0 or abs(c) + r > 1 - 1e-9:
                raise DomainError(f"circle ({c}, {r}) is not inside the unit disk")


def render_svg(f: HarmonicMap, spec: PlotSpec) -> str:
    curves, verdicts = [], []
    for c, r in spec.circles:
        w = geometry.circle_image(f, c, r, spec.samples_per_circle, spec.phase)
        curves.append(w)
        try:
            verdicts.append(geometry.polyline_is_convex(w))
        except DegenerateError:
            verdicts.append(False)
    pts = np.concatenate(curves)
    lo_x, hi_x, lo_y, hi_y = pts.real.min(), pts.real.max(), pts.imag.min(), pts.imag.max()
    span = max(hi_x - lo_x, hi_y - lo_y, 1e-12)
    scale = 0.9 * min(spec.width, spec.height) / span
    cx, cy = (lo_x + hi_x) / 2, (lo_y + hi_y) / 2
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" height="{spec.height}" '
           f'viewBox="0 0 {spec.width} {spec.height}">',
           f"<!-- scale {scale:.9g} px per unit, centre ({cx:.9g}, {cy:.9g}) -->"]
    for (c, r), w, ok in zip(spec.circles, curves, verdicts):
        x = spec.width / 2 + scale * (w.real - cx)
        y = spec.height / 2 - scale * (w.imag - cy)
        coords = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(x, y))
        out.append(f"<!-- circle centre ({c.real:g}, {c.imag:g}) radius {r:g}: convex={str(ok).lower()} -->")
        out.append(f'<polygon points="{coords}" fill="none" stroke="black" '
                   f'stroke-width="{spec.stroke_width:g}"/>')
    out.append("</svg>")
    return "\n".join(out)


def _parse_circle(text: str) -> tuple[complex, float]:
    try:
        x, y, r = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected CX,CY,R, got {text!r}") from None
    return complex(x, y), r


def cmd_plot(args) -> int:
    f = _load_map(args.infile)
    circles = tuple(args.circle) if args.circle else PlotSpec.circles
    spec = PlotSpec(circles, args.samples, args.width, args.height, args.stroke)
    svg = render_svg(f, spec)
    _write(args.outfile, svg)
    verdicts = [line.split("convex=")[1].split()[0] == "true"
                for line in svg.splitlines() if "convex=" in line]
    if args.outfile:
        _emit(args, {"curves": len(verdicts), "convex": verdicts, "out": args.outfile},
              [f"curve {i}: convex={v}" for i, v in enumerate(verdicts)])
    return EXIT_PASS


def cmd_verify(args) -> int:
    results = verify.run_battery()
    failed = [r.name for r in results if not r.passed]
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<24} {r.detail}" for r in results]
    if failed:
        lines.append(f"first failure: {failed[0]}")
    _emit(args, {"passed": not failed, "checks": [r.to_dict() for r in results],
                 "first_failure": failed[0] if failed else None}, lines)
    return EXIT_FAIL if failed else EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmonic-atlas",
                                     description="Convexity and starlikeness checks for harmonic maps.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="run class tests and grid scans")
    p.add_argument("--in", dest="infile", required=True, help="map JSON ('-' for stdin)")
    p.add_argument("--tests", help=f"comma-separated subset of {','.join(CHECKS)}")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("transform", parents=[common], help="apply H_{a,b} or its inverse")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile")
    p.add_argument("--a", type=float, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--b", type=float)
    g.add_argument("--binf", action="store_true", help="b -> infinity")
    g.add_argument("--beq", action="store_true", help="b = a")
    g.add_argument("--inverse", action="store_true", help="(a h + z h')/(a+1) on both parts")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("family", parents=[common], help="build a hypergeometric family member")
    p.add_argument("--which", choices=families.FAMILIES, default="f1")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--a-im", type=float, default=0.0, help="imaginary part (conjugate pair)")
    p.add_argument("--b-im", type=float, default=0.0)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--alpha-re", type=float, required=True)
    p.add_argument("--alpha-im", type=float, default=0.0)
    p.add_argument("--order", type=int)
    p.add_argument("--out", dest="outfile")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("bounds", parents=[common], help="growth, Jacobian and area bounds")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--b1", type=float, default=0.0, help="|b1|")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("plot", parents=[common], help="SVG of circle images")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", dest="outfile")
    p.add_argument("--circle", type=_parse_circle, action="append", help="CX,CY,R (repeatable)")
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--width", type=int, default=600)
    p.add_argument("--height", type=int, default=600)
    p.add_argument("--stroke", type=float, default=1.5)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("verify", parents=[common], help="run the cross-validation battery")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "transform" and args.inverse and args.b is not None:
        parser.error("--inverse takes no --b")
    try:
        if args.command == "family" and args.a_im and args.b_im != -args.a_im:
            raise InputError("a complex pair needs --b-im = -(--a-im) and --b = --a")
        return args.func(args)
    except PreconditionError as exc:
        witness = exc.witness
        if isinstance(witness, complex):
            witness = [witness.real, witness.imag]
        print(json.dumps({"schema": SCHEMA, "command": args.command, "error": "precondition",
                          "message": str(exc), "witness": witness}))
        return EXIT_PRECONDITION
    except (InputError, DomainError, DegenerateError, ConvergenceError, ValueError) as exc:
        print(json.dumps({"schema": SCHEMA, "command": args.command, "error": "input",
                          "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
