"""Command-line front end.

Subcommands::

    gen KIND M N OUT          write a delta/constant/gaussian/chirp/random signal
    transform IN OUT          forward or inverse rqft/lqft/sqft/sqlct/rqlct
    verify [IN]               run the residual checks and print a report
    image import|export PNG QSF

Exit codes: 0 success, 1 usage, 2 I/O or format, 3 verification failure.

QFT spectra are stored in DFT order (index 0 is the zero frequency) with
the frequency steps in the ``dx`` header fields and zero origin. QLCT
outputs are ordinary ascending grids and store their actual origin.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from .errors import FormatError, QFourierError
from .qft import NormalizationMode, TransformKind, TransformPlan, dqft, idqft
from .qlct import (LCTParams, QLCTConfig, irqlct, isqlct, output_grid, rqlct, sqlct)
from .quat import AxisConfig, Quaternion, qexp_pure, qmul
from .signal import Grid2D, QSignal2D, lp_norm
from .verify import SUITES, run_verify

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3

AXIS_PRESETS = {
    "ij": ((1, 0, 0), (0, 1, 0)),
    "jk": ((0, 1, 0), (0, 0, 1)),
    "ki": ((0, 0, 1), (1, 0, 0)),
    "ji": ((0, 1, 0), (1, 0, 0)),
    "kj": ((0, 0, 1), (0, 1, 0)),
    "ik": ((1, 0, 0), (0, 0, 1)),
}
QFT_KINDS = {"rqft": TransformKind.RIGHT, "lqft": TransformKind.LEFT, "sqft": TransformKind.TWO}
QLCT_KINDS = ("sqlct", "rqlct")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text: str, count: int, what: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    if len(vals) != count:
        raise UsageError(f"{what} needs {count} comma-separated numbers, got {text!r}")
    return vals


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--mode", choices=("unitary", "analytic"), default=d(None),
                   help="normalization (default: unitary for QFT, analytic for QLCT)")
    p.add_argument("--axis", choices=sorted(AXIS_PRESETS), default=d(None),
                   help="named axis pair (default ij)")
    p.add_argument("--u1", default=d(None), help="first axis as a,b,c")
    p.add_argument("--u2", default=d(None), help="second axis as a,b,c")
    p.add_argument("--seed", type=int, default=d(42))
    p.add_argument("--tolerance-scale", type=float, default=d(1.0))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qfourier", description="Quaternion Fourier and linear canonical transforms")
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a test signal")
    _global_flags(g, suppress=True)
    g.add_argument("kind", choices=("delta", "constant", "gaussian", "chirp", "random"))
    g.add_argument("m", type=int)
    g.add_argument("n", type=int)
    g.add_argument("out")
    g.add_argument("--dx", type=float, default=1.0)
    g.add_argument("--x1-0", type=float, default=0.0)
    g.add_argument("--x2-0", type=float, default=0.0)
    g.add_argument("--centered", action="store_true", help="origin at -m dx / 2")
    g.add_argument("--sigma", type=float, default=1.0)
    g.add_argument("--amplitude", default="1,0,0,0", help="quaternion w,x,y,z")
    g.add_argument("--rate", type=float, default=1.0, help="chirp rate")

    t = sub.add_parser("transform", help="apply a transform")
    _global_flags(t, suppress=True)
    t.add_argument("input")
    t.add_argument("out")
    t.add_argument("--kind", required=True, choices=tuple(QFT_KINDS) + QLCT_KINDS)
    t.add_argument("--dir", dest="direction", choices=("fwd", "inv"), default="fwd")
    for name in ("a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2"):
        t.add_argument(f"--{name}", type=float, default=None)
    t.add_argument("--x1-0", type=float, default=None, help="spatial origin for inverse output")
    t.add_argument("--x2-0", type=float, default=None)

    v = sub.add_parser("verify", help="run theorem checks")
    _global_flags(v, suppress=True)
    v.add_argument("input", nargs="?")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--synthetic", action="store_true")
    v.add_argument("--grid", type=int, default=8, help="size of the QLCT oracle grid")

    im = sub.add_parser("image", help="PNG import/export")
    _global_flags(im, suppress=True)
    im.add_argument("action", choices=("import", "export"))
    im.add_argument("png")
    im.add_argument("qsf")
    im.add_argument("--spectrum", action="store_true",
                    help="on export, write the log-magnitude of the right-sided spectrum")
    im.add_argument("--dx", type=float, default=1.0)
    return parser


def resolve_axis(args) -> AxisConfig:
    if args.u1 is not None or args.u2 is not None:
        if args.u1 is None or args.u2 is None:
            raise UsageError("--u1 and --u2 must be given together")
        if args.axis is not None:
            raise UsageError("use either --axis or --u1/--u2")
        return AxisConfig.from_vectors(_floats(args.u1, 3, "--u1"), _floats(args.u2, 3, "--u2"))
    v1, v2 = AXIS_PRESETS[args.axis or "ij"]
    return AxisConfig.from_vectors(v1, v2)


def _mode(args, default: NormalizationMode) -> NormalizationMode:
    return default if args.mode is None else NormalizationMode(args.mode)


# --------------------------------------------------------------------------
# commands


def cmd_gen(args) -> int:
    if args.m < 1 or args.n < 1:
        raise UsageError("dimensions must be positive")
    if not args.dx > 0:
        raise UsageError("--dx must be positive")
    if args.centered:
        grid = Grid2D.centered(args.m, args.n, args.dx)
    else:
        grid = Grid2D(args.m, args.n, args.dx, args.dx, args.x1_0, args.x2_0)
    amp = np.array(_floats(args.amplitude, 4, "--amplitude"))
    axis = resolve_axis(args)
    if args.kind == "delta":
        f = QSignal2D.delta(grid, (0, 0), Quaternion.from_array(amp))
    elif args.kind == "constant":
        f = QSignal2D.constant(grid, Quaternion.from_array(amp))
    elif args.kind == "random":
        f = QSignal2D.random(grid, np.random.default_rng(args.seed))
    else:
        x1, x2 = grid.mesh()
        # centre on a sample so the peak is attained exactly
        c1 = grid.coords1()[grid.m // 2]
        c2 = grid.coords2()[grid.n // 2]
        if args.kind == "gaussian":
            if not args.sigma > 0:
                raise UsageError("--sigma must be positive")
            env = np.exp(-((x1 - c1) ** 2 + (x2 - c2) ** 2) / (2 * args.sigma ** 2))
            f = QSignal2D(grid, env[..., None] * amp)
        else:
            left = qexp_pure(axis.u1.as_array(), args.rate * (x1 - c1) ** 2)
            right = qexp_pure(axis.u2.as_array(), args.rate * (x2 - c2) ** 2)
            f = QSignal2D(grid, qmul(qmul(left, amp), right))
    io.write_signal(f, args.out)
    print(f"wrote {args.kind} {grid.m}x{grid.n} to {args.out}")
    return EXIT_OK


def _lct_params(args) -> tuple[LCTParams, LCTParams]:
    names = ("a1", "b1", "c1", "d1", "a2", "b2", "c2", "d2")
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("QLCT needs " + ", ".join("--" + n for n in missing))
    vals = [getattr(args, n) for n in names]
    try:
        return LCTParams(*vals[:4]), LCTParams(*vals[4:])
    except QFourierError as exc:
        raise UsageError(str(exc))


def _spatial_from_spectrum(F: QSignal2D, args) -> Grid2D:
    g = F.grid
    x10 = 0.0 if args.x1_0 is None else args.x1_0
    x20 = 0.0 if args.x2_0 is None else args.x2_0
    return Grid2D(g.m, g.n, 2 * np.pi / (g.m * g.dx1), 2 * np.pi / (g.n * g.dx2), x10, x20)


def _store_grid(grid: Grid2D) -> Grid2D:
    # QSF keeps steps and origin only
    return Grid2D(grid.m, grid.n, grid.dx1, grid.dx2, grid.x1_0, grid.x2_0)


def cmd_transform(args) -> int:
    axis = resolve_axis(args)
    f = io.read_signal(args.input)
    if args.kind in QFT_KINDS:
        mode = _mode(args, NormalizationMode.UNITARY)
        kind = QFT_KINDS[args.kind]
        if args.direction == "fwd":
            plan = TransformPlan(f.grid, kind, axis, mode)
            out = dqft(f, plan)
            back = idqft(out, plan)
        else:
            plan = TransformPlan(_spatial_from_spectrum(f, args), kind, axis, mode)
            F = QSignal2D(plan.freq_grid, f.data)
            out = idqft(F, plan)
            back = dqft(out, plan)
            f = F
        residual = lp_norm(back - f) / max(lp_norm(f), 1e-300)
    else:
        a1, a2 = _lct_params(args)
        cfg = QLCTConfig(a1, a2, axis, _mode(args, NormalizationMode.ANALYTIC))
        fwd, inv = (sqlct, isqlct) if args.kind == "sqlct" else (rqlct, irqlct)
        if args.direction == "fwd":
            out = fwd(f, cfg)
            back = inv(out, cfg, out_grid=f.grid)
        else:
            target = output_grid(f.grid, cfg.inverse())
            if args.x1_0 is not None or args.x2_0 is not None:
                target = Grid2D(target.m, target.n, target.dx1, target.dx2,
                                target.x1_0 if args.x1_0 is None else args.x1_0,
                                target.x2_0 if args.x2_0 is None else args.x2_0)
            out = inv(f, cfg, out_grid=target)
            back = fwd(out, cfg, out_grid=f.grid)
        residual = lp_norm(back - f) / max(lp_norm(f), 1e-300)
    io.write_signal(QSignal2D(_store_grid(out.grid), out.data), args.out)
    print(f"norm_in={lp_norm(f):.12e}")
    print(f"norm_out={lp_norm(out):.12e}")
    print(f"roundtrip_residual={residual:.3e}")
    if out.meta.get("interpolated"):
        print("note: b = 0 axis resampled by linear interpolation")
    return EXIT_OK


def cmd_verify(args) -> int:
    axis = resolve_axis(args)
    if args.input is None and not args.synthetic:
        raise UsageError("verify needs an input file or --synthetic")
    f = None if args.synthetic and args.input is None else io.read_signal(args.input)
    if args.tolerance_scale <= 0:
        raise UsageError("--tolerance-scale must be positive")
    report = run_verify(f, args.suite, axis, args.seed, args.tolerance_scale, args.grid)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_image(args) -> int:
    if args.action == "import":
        f = io.import_png(args.png, args.dx)
        io.write_signal(f, args.qsf)
        print(f"imported {f.grid.m}x{f.grid.n} image to {args.qsf}")
        return EXIT_OK
    f = io.read_signal(args.qsf)
    if args.spectrum:
        from PIL import Image

        plan = TransformPlan(f.grid, TransformKind.RIGHT, resolve_axis(args),
                             _mode(args, NormalizationMode.UNITARY))
        F = dqft(f, plan)
        # shift the zero frequency to the centre for viewing
        rgb = np.roll(io.spectrum_magnitude_rgb(F), (f.grid.m // 2, f.grid.n // 2), axis=(0, 1))
        Image.fromarray(rgb).save(args.png, format="PNG")
    else:
        io.export_png(f, args.png)
    print(f"exported {args.qsf} to {args.png}")
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "transform": cmd_transform, "verify": cmd_verify, "image": cmd_image}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return EXIT_USAGE
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QFourierError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
