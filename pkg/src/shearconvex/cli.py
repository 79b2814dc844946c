"""Command-line surface: shear, convexity, probe, vk, reproduce.

Exit codes: 0 on success, 1 on usage or computation errors, 2 when a
`reproduce` case contradicts its pinned expectation.  Relative output paths
are resolved against $SHEARCONVEX_OUTDIR when it is set.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .boundary_rotation import boundary_rotation_value
from .geometry import (convexity_check, directional_convexity_check,
                       sample_boundary, turning_increments)
from .probe import ProbeConfig, probe_admissibility
from .quadrature import QuadratureConfig, ToleranceNotMet
from .render import csv_lines, dumps_report, render_curve_svg, round_floats
from .reproduce import CASES
from .shear import ShearSystem, harmonic_from_analytic, shear_construct
from .specs import (DEFAULT_FAMILY, SpecError, parse_eta, parse_omega,
                    parse_phi, parse_radii)


@dataclass(frozen=True)
class OutputSpec:
    format: str               # CSV | JSON | SVG
    path: Optional[str]       # None means stdout
    precision: int = 12

    def __post_init__(self):
        if self.format not in ("CSV", "JSON", "SVG"):
            raise ValueError(f"unknown output format {self.format!r}")
        if self.precision < 6:
            raise ValueError("precision must be >= 6")


def _resolve(path: Optional[str]) -> Optional[Path]:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get("SHEARCONVEX_OUTDIR")
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, out: OutputSpec) -> None:
    p = _resolve(out.path)
    if p is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _quad_cfg(args) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=args.quad_tol, order=args.quad_order)


def _add_common(p, quad: bool = True):
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--precision", type=int, default=12)
    if quad:
        p.add_argument("--quad-tol", type=float, default=1e-12)
        p.add_argument("--quad-order", type=int, default=15)


def cmd_shear(args) -> int:
    sys_ = ShearSystem(parse_phi(args.phi), parse_omega(args.omega), parse_eta(args.eta))
    f = shear_construct(sys_, _quad_cfg(args))
    theta = np.linspace(0.0, 2.0 * np.pi, args.n, endpoint=False)
    z = args.r * np.exp(1j * theta)
    h = f.h.value(z)
    g = f.g.value(z)
    gamma = h + np.conj(g)
    rows = zip(theta, z.real, z.imag, gamma.real, gamma.imag,
               h.real, h.imag, g.real, g.imag)
    header = ["theta", "re_z", "im_z", "re_f", "im_f", "re_h", "im_h", "re_g", "im_g"]
    out = OutputSpec("CSV", args.out, args.precision)
    _emit("\n".join(csv_lines(header, rows, out.precision)) + "\n", out)
    return 0


def _convexity_report(args):
    omega = parse_omega(args.omega)
    if args.omega == "zero":
        f = harmonic_from_analytic(parse_phi(args.phi))
    else:
        f = shear_construct(ShearSystem(parse_phi(args.phi), omega, parse_eta(args.eta)),
                            _quad_cfg(args))
    curve = sample_boundary(f, args.r, args.n)
    rep = convexity_check(curve, args.tol_backturn)
    gamma = curve.gamma
    report = {
        "label": f.label,
        "r": args.r,
        "n": args.n,
        "near_boundary": curve.near_boundary,
        "verdict": rep.verdict,
        "total_turning": rep.total_turning,
        "worst_backturn": rep.worst_backturn,
        "max_step": rep.max_step,
        "witness_window": list(rep.witness) if rep.witness else None,
        "curve": {
            "theta": curve.theta.tolist(),
            "re": gamma.real.tolist(),
            "im": gamma.imag.tolist(),
        },
        "parabola_overlay": bool(args.parabola_overlay),
    }
    if args.direction is not None:
        d = directional_convexity_check(curve, args.direction)
        report["direction"] = {"t": d.t, "passed": d.passed, "sign_changes": d.sign_changes}
    return report, curve


def cmd_convexity(args) -> int:
    report, curve = _convexity_report(args)
    out = OutputSpec("JSON", args.out, args.precision)
    rounded = round_floats(report, out.precision)
    _emit(dumps_report(rounded, out.precision), out)
    if args.svg:
        # render from the serialized (rounded) report so that re-rendering a
        # saved JSON reproduces the SVG byte for byte
        _emit(render_curve_svg(rounded), OutputSpec("SVG", args.svg, args.precision))
    if args.csv:
        inc = turning_increments(curve.tangent)
        rows = zip(curve.theta, curve.gamma.real, curve.gamma.imag, inc)
        _emit("\n".join(csv_lines(["theta", "re", "im", "turning_increment"],
                                  rows, args.precision)) + "\n",
              OutputSpec("CSV", args.csv, args.precision))
    return 0


def cmd_probe(args) -> int:
    family = args.family
    if args.seed is not None and "seed=" in family:
        head, _, tail = family.partition("seed=")
        rest = tail.split(",", 1)
        family = head + f"seed={args.seed}" + ("," + rest[1] if len(rest) > 1 else "")
    cfg = ProbeConfig(phi_spec=args.phi, eta=parse_eta(args.eta), family_spec=family,
                      radii=parse_radii(args.radii), n_samples=args.n,
                      quad=_quad_cfg(args))
    rep = probe_admissibility(cfg)
    payload = rep.to_jsonable()
    payload["config"]["seed_echo"] = args.seed
    out = OutputSpec("JSON", args.out, args.precision)
    _emit(dumps_report(payload, out.precision), out)
    return 0


def cmd_vk(args) -> int:
    phi = parse_phi(args.phi)
    radii = parse_radii(args.radii)
    values = [boundary_rotation_value(phi, r) for r in radii]
    worst = max(v.value_over_pi for v in values)
    report = {
        "phi": args.phi,
        "k": args.k,
        "values": [{"r": v.r, "value_over_pi": v.value_over_pi, "n": v.n} for v in values],
        "max_value_over_pi": worst,
        "member": bool(worst <= args.k + args.tol),
        "note": "sup over r < 1 approximated by the ladder max",
    }
    out = OutputSpec("JSON", args.out, args.precision)
    _emit(dumps_report(report, out.precision), out)
    return 0


def cmd_reproduce(args) -> int:
    fn = CASES.get(args.case)
    if fn is None:
        sys.stderr.write(f"unknown case {args.case!r}; choose from {sorted(CASES)}\n")
        return 1
    rows = fn()
    all_ok = True
    for name, ok, detail in rows:
        print(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
        all_ok = all_ok and ok
    return 0 if all_ok else 2


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="shearconvex",
                 description="harmonic shear construction and convexity verdicts")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shear", parents=[], help="emit sampled h, g, f as CSV")
    p.add_argument("--phi", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--r", type=float, default=0.9)
    p.add_argument("--n", type=int, default=256)
    _add_common(p)
    p.set_defaults(fn=cmd_shear)

    p = sub.add_parser("convexity", help="boundary curve verdict as JSON (+SVG/CSV)")
    p.add_argument("--phi", required=True)
    p.add_argument("--omega", default="zero")
    p.add_argument("--eta", default="-1,0")
    p.add_argument("--r", type=float, default=0.99)
    p.add_argument("--n", type=int, default=4096)
    p.add_argument("--direction", type=float, default=None)
    p.add_argument("--tol-backturn", type=float, default=1e-6)
    p.add_argument("--svg", default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--parabola-overlay", action="store_true")
    _add_common(p)
    p.set_defaults(fn=cmd_convexity)

    p = sub.add_parser("probe", help="sweep a dilatation family for failures")
    p.add_argument("--phi", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--family", default=DEFAULT_FAMILY)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--radii", default="0.9,0.99,0.999")
    p.add_argument("--n", type=int, default=4096)
    _add_common(p)
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("vk", help="boundary-rotation values and V_k membership")
    p.add_argument("--phi", required=True)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--radii", default="0.9,0.99,0.999")
    p.add_argument("--tol", type=float, default=1e-6)
    _add_common(p, quad=False)
    p.set_defaults(fn=cmd_vk)

    p = sub.add_parser("reproduce", help="run a named suite and print PASS/FAIL")
    p.add_argument("--case", required=True, help=f"one of {sorted(CASES)}")
    p.set_defaults(fn=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        return args.fn(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (SpecError, ValueError, ToleranceNotMet) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
