"""Command-line entry point.

Exit codes: 0 success, 1 invalid input (flags, files, grids), 2 numerical
failure (a verify tolerance breach or a truncation error).
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import approach_a as aa
from . import bench as bn
from . import mustard as mu
from . import qft as q
from . import verify as vf
from .clifford import CliffordError, Multivector, parse_root
from .fieldio import FieldFormatError, read_field, write_field
from .gft import (
    CALIBRATED,
    PERIODIC,
    GftPlan,
    GridError,
    GridSpec,
    MultivectorField,
    generalized_translate,
    gft_forward,
    gft_inverse,
    set_workers,
)
from .ppm import PPMError, read_ppm, write_ppm
from .special import RadialProfile, TruncationError

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2
GRID_VARIANTS = ("mustard", "reversed", "tau", "classical")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- shared flags -------------------------------------------------------------

def _grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=(PERIODIC, CALIBRATED), default=PERIODIC, help="grid discretization")
    p.add_argument("--n", type=int, default=16, help="samples per axis for generated fields")
    p.add_argument("--m", type=int, default=2, help="dimension for generated fields")
    p.add_argument("--delta", type=float, default=0.25, help="sample spacing on calibrated grids")
    p.add_argument("--seed", type=int, default=0, help="seed of the PCG64 generator for random fields")


def _plan_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--plan", choices=("qft", "gft"), default="gft")
    p.add_argument("--roots", help="comma-separated root expressions, one per axis (e.g. 'e12,e23,e13')")
    p.add_argument("--split", type=int, help="number of left-sided roots")


def _io_flags(p: argparse.ArgumentParser, inputs: str = "?") -> None:
    p.add_argument("--in", dest="inputs", nargs=inputs, default=None, metavar="PATH",
                   help="input CLFF field or P6 PPM image")
    p.add_argument("--out", help="output path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cliffconv", description="Clifford-valued Fourier transforms and convolutions.")
    parser.add_argument("--threads", type=int, default=os.cpu_count(), help="FFT worker threads (default: all cores)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("transform", help="forward or inverse GFT of a field or image")
    _grid_flags(p)
    _plan_flags(p)
    _io_flags(p)
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--method", choices=bn.METHODS, default="fast")

    p = sub.add_parser("convolve", help="grid convolutions, or radial Approach-A convolutions")
    _grid_flags(p)
    _plan_flags(p)
    _io_flags(p, "*")
    p.add_argument("--variant", choices=GRID_VARIANTS + aa.VARIANTS, default="mustard")
    p.add_argument("--preset", choices=sorted(aa.PRESETS), default="classical")
    p.add_argument("--alpha", type=float, help="transform angle (default pi/2)")
    p.add_argument("--beta", type=float, help="second angle of fractional_cft")
    p.add_argument("--kmax", type=int, default=aa.DEFAULT_KMAX)
    p.add_argument("--radii", default="0:3:13", help="start:stop:count of output radii (radial variants)")

    p = sub.add_parser("translate", help="generalized translation")
    _grid_flags(p)
    _plan_flags(p)
    _io_flags(p)
    p.add_argument("--shift", required=True, help="comma-separated displacement y")
    p.add_argument("--route", choices=("spectral", "closed"), default="spectral")
    p.add_argument("--preset", choices=sorted(aa.PRESETS), help="translate a radial Gaussian with an Approach-A kernel")
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--kmax", type=int, default=aa.DEFAULT_KMAX)

    p = sub.add_parser("filter", help="qFT multiplier filtering of a colour image")
    p.add_argument("--in", dest="inputs", required=True, metavar="PATH", help="P6 PPM image")
    p.add_argument("--out", required=True, help="output P6 PPM image")
    p.add_argument("--roots", default="e1,e2", help="the pair mu,nu of unit pure quaternions")
    p.add_argument("--multiplier", default="lowpass",
                   help=f"one of {', '.join(q.MULTIPLIER_PRESETS)} or a CLFF multiplier field path")
    p.add_argument("--sigma", type=float, default=2.0, help="Gaussian width in pixels")
    p.add_argument("--rotation", help="nine comma-separated entries of the rgb -> ijk basis matrix")

    p = sub.add_parser("verify", help="run identity suites and report PASS/FAIL")
    p.add_argument("--suite", choices=vf.SUITES + ("all",), default="all")
    p.add_argument("--m", type=int, help="dimension (suite default if omitted)")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, help="replace the tolerance of every upper-bound check")

    p = sub.add_parser("bench", help="time the fast path against the naive sums")
    p.add_argument("--op", choices=bn.OPS, default="axis")
    p.add_argument("--n", type=int, default=256)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--mode", default="fast,naive", help="comma-separated methods")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("presets", help="list presets or dump Approach-A coefficients as CSV")
    p.add_argument("--preset", choices=sorted(aa.PRESETS))
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--kmax", type=int, default=8)
    p.add_argument("--m", type=int, default=4)
    return parser


# -- helpers --------------------------------------------------------------------

def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{what} must be comma-separated numbers, got {text!r}") from None


def _is_ppm(path: str) -> bool:
    with open(path, "rb") as fh:
        return fh.read(2) == b"P6"


def load_field(path: str) -> MultivectorField:
    return q.encode_rgb(read_ppm(path)) if _is_ppm(path) else read_field(path)


def generated_grid(args) -> GridSpec:
    if args.mode == CALIBRATED:
        return GridSpec.calibrated(args.n, args.m, args.delta)
    return GridSpec.periodic(args.n, args.m)


def input_fields(args, count: int) -> list[MultivectorField]:
    paths = args.inputs or []
    if isinstance(paths, str):
        paths = [paths]
    if paths and len(paths) != count:
        raise UsageError(f"expected {count} input file(s), got {len(paths)}")
    if paths:
        return [load_field(p) for p in paths]
    grid = generated_grid(args)
    rng = np.random.default_rng(args.seed)
    return [MultivectorField.random(grid, rng, complex_coeffs=True) for _ in range(count)]


def build_plan(args, grid: GridSpec) -> GftPlan:
    m = grid.m
    if args.plan == "qft":
        if m != 2:
            raise GridError("the qft plan needs a two-dimensional field")
        exprs = (args.roots or "e1,e2").split(",")
        if len(exprs) != 2:
            raise UsageError("the qft plan takes exactly two roots mu,nu")
        if args.split not in (None, 1):
            raise UsageError("the qft plan has split 1")
        mu_, nu_ = (parse_root(e, 2) for e in exprs)
        return q.qft_plan(mu_, nu_, grid)
    if args.roots is None:
        roots, split = vf.standard_roots(m)
    else:
        roots = [parse_root(e, m) for e in args.roots.split(",")]
        split = math.ceil(m / 2)
    if args.split is not None:
        split = args.split
    if not 0 <= split <= m:
        raise UsageError(f"--split must lie in [0, {m}]")
    return GftPlan.from_roots(roots[:split], roots[split:], grid)


def _write_output(args, field: MultivectorField) -> None:
    if args.out:
        write_field(args.out, field)


def _summary(field: MultivectorField) -> None:
    print("m,sizes,mode,norm")
    print(f"{field.m},{'x'.join(map(str, field.grid.sizes))},{field.grid.mode},{field.norm():.12e}")


def _kernel_spec(args) -> aa.KernelSpecA:
    angle = args.alpha
    if args.preset == "fractional_cft" and angle is None:
        angle = math.pi / 2
    return aa.preset(args.preset, 4, angle, args.beta, args.kmax)


def _radii(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError("--radii takes start:stop:count")
    try:
        return np.linspace(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError:
        raise UsageError(f"bad --radii {text!r}") from None


def _complex_rows(header: str, xs, values) -> None:
    print(header + ",re,im")
    for x, v in zip(xs, values):
        print(f"{x:.12g},{v.real:.15e},{v.imag:.15e}")


# -- commands --------------------------------------------------------------------

def cmd_transform(args) -> int:
    (f,) = input_fields(args, 1)
    plan = build_plan(args, f.grid)
    out = (gft_inverse if args.inverse else gft_forward)(plan, f, args.method)
    _write_output(args, out)
    _summary(out)
    return EXIT_OK


def cmd_convolve(args) -> int:
    if args.variant in aa.VARIANTS:
        spec = _kernel_spec(args)
        gauss = lambda r: np.exp(-np.asarray(r) ** 2 / 2)
        s = _radii(args.radii)
        _complex_rows("s", s, aa.convolve_radial(spec, gauss, gauss, args.variant, s))
        return EXIT_OK
    f, g = input_fields(args, 2)
    if args.variant == "classical":
        out = mu.classical_convolve(f, g)
    else:
        plan = build_plan(args, f.grid)
        if args.variant == "mustard":
            out = mu.mustard_convolve_spectral(plan, f, g)
        elif args.variant == "reversed":
            out = mu.mustard_convolve_reversed(plan, f, g)
        else:
            out = mu.tau_convolve(plan, f, g)
    _write_output(args, out)
    _summary(out)
    return EXIT_OK


def cmd_translate(args) -> int:
    y = _floats(args.shift, "--shift")
    if args.preset:
        spec = _kernel_spec(args)
        if len(y) != spec.m:
            raise UsageError(f"--shift needs {spec.m} components for Approach-A kernels")
        f0 = RadialProfile.sample(lambda r: np.exp(-r**2 / 2))
        t = np.linspace(-4, 4, args.n)
        x = np.zeros((args.n, spec.m))
        x[:, 0] = t
        _complex_rows("x1", t, aa.translate_radial(spec, f0, y, x))
        return EXIT_OK
    (f,) = input_fields(args, 1)
    plan = build_plan(args, f.grid)
    if args.route == "closed":
        out = mu.translate_closed_form(plan, f, y)
    else:
        out = generalized_translate(plan, f, y)
    _write_output(args, out)
    _summary(out)
    return EXIT_OK


def cmd_filter(args) -> int:
    pixels = read_ppm(args.inputs)
    exprs = args.roots.split(",")
    if len(exprs) != 2:
        raise UsageError("--roots takes the pair mu,nu")
    mu_, nu_ = (parse_root(e, 2) for e in exprs)
    rotation = None
    if args.rotation:
        vals = _floats(args.rotation, "--rotation")
        if len(vals) != 9:
            raise UsageError("--rotation takes nine numbers")
        rotation = np.reshape(vals, (3, 3))
    grid = GridSpec(pixels.shape[:2], PERIODIC)
    if args.multiplier in q.MULTIPLIER_PRESETS:
        mult = q.multiplier_preset(args.multiplier, grid, mu_, args.sigma)
    else:
        mult = read_field(args.multiplier)
    out, report = q.filter_image(pixels, mult, mu_, nu_, rotation)
    write_ppm(args.out, out)
    print("height,width,scalar_residue,imag_residue,clipped")
    print(f"{pixels.shape[0]},{pixels.shape[1]},{report.scalar_residue:.3e},{report.imag_residue:.3e},{report.clipped}")
    return EXIT_OK


_SUITE_DEFAULT_M = {"clifford": 3, "gft": 2, "mustard": 2, "translate": 2, "qft": 2, "approach_a": 4}


def cmd_verify(args) -> int:
    names = vf.SUITES if args.suite == "all" else (args.suite,)
    checks = []
    for name in names:
        m = args.m if args.m is not None else _SUITE_DEFAULT_M[name]
        if name in ("mustard", "translate") and not 1 <= m <= 3:
            raise UsageError(f"the {name} suite supports m in 1..3")
        if name == "qft" and m != 2:
            raise UsageError("the qft suite is two-dimensional")
        if name == "approach_a" and m != 4:
            raise UsageError("the approach_a suite runs at m = 4")
        checks += vf.run_suite(name, m, args.n, args.seed)
    if args.tol is not None:
        checks = [vf.Check(c.suite, c.identity, c.gap, args.tol, c.kind) if c.kind == "max" else c for c in checks]
    sys.stdout.write(vf.checks_csv(checks))
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NUMERIC


def cmd_bench(args) -> int:
    methods = [s.strip() for s in args.mode.split(",") if s.strip()]
    rows = bn.run_bench(args.op, args.n, args.m, methods, args.seed, args.repeat)
    sys.stdout.write(bn.rows_csv(rows))
    return EXIT_OK


def cmd_presets(args) -> int:
    if args.preset is None:
        print("kind,name")
        for name in sorted(aa.PRESETS):
            print(f"kernel,{name}")
        for name in q.MULTIPLIER_PRESETS:
            print(f"multiplier,{name}")
        return EXIT_OK
    angle = args.alpha
    if args.preset == "fractional_cft" and angle is None:
        angle = math.pi / 2
    spec = aa.preset(args.preset, args.m, angle, args.beta, args.kmax)
    sys.stdout.write(aa.coefficients_csv(spec))
    return EXIT_OK


COMMANDS = {
    "transform": cmd_transform,
    "convolve": cmd_convolve,
    "translate": cmd_translate,
    "filter": cmd_filter,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "presets": cmd_presets,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads is not None and args.threads < 1:
            raise UsageError("--threads must be positive")
        set_workers(args.threads)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_INVALID
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CliffordError, GridError, aa.SpecError, FieldFormatError, PPMError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
