"""Command-line front end.

Exit status: 0 on success (a PASS, or any certificate verdict), 1 when a
lemma check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import fixtures, formats, lemmas, uncertainty
from .qft import convolve, qft_direct, qft_fast, qft_inverse
from .qsignal import GridSpec

THEOREMS = ("beurling", "hardy", "gelfand-shilov", "cowling-price")
CERTIFY_GRID = GridSpec(32, 32, 0.375, 0.375)


class UsageError(Exception):
    pass


def _pair(text: str, kind):
    try:
        a, b = (kind(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated values, got {text!r}") from None
    return a, b


def _grid(args, default: GridSpec) -> GridSpec:
    if args.grid is None and args.spacing is None:
        return default
    n1, n2 = args.grid if args.grid is not None else default.shape
    if args.spacing is not None:
        d1, d2 = args.spacing
    elif args.grid is not None:
        # keep the default box, resample it
        d1, d2 = default.d1 * default.n1 / n1, default.d2 * default.n2 / n2
    else:
        d1, d2 = default.d1, default.d2
    return GridSpec(n1, n2, d1, d2)


def _one_input(args) -> str:
    if not args.input or len(args.input) != 1:
        raise UsageError(f"{args.command} needs exactly one --input")
    return args.input[0]


def _out(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_transform(args) -> int:
    f = fixtures.sample(_one_input(args), _grid(args, fixtures.DEFAULT_GRID))
    S = qft_direct(f) if args.direct else qft_fast(f)
    if not args.output:
        raise UsageError("transform needs --output")
    formats.save_spectrum(args.output, S)
    print(f"wrote {S.grid.n1}x{S.grid.n2} spectrum to {args.output}")
    return 0


def cmd_inverse(args) -> int:
    if not args.output:
        raise UsageError("inverse needs --output")
    S = formats.load_spectrum(_one_input(args))
    f = qft_inverse(S)
    formats.save_signal(args.output, f)
    print(f"wrote {f.grid.n1}x{f.grid.n2} signal to {args.output}")
    return 0


def cmd_convolve(args) -> int:
    if not args.input or len(args.input) != 2:
        raise UsageError("convolve needs two --input values")
    if not args.output:
        raise UsageError("convolve needs --output")
    grid = _grid(args, fixtures.DEFAULT_GRID)
    f, g = (fixtures.sample(s, grid) for s in args.input)
    h = convolve(f, g)
    formats.save_signal(args.output, h)
    print(f"wrote {h.grid.n1}x{h.grid.n2} convolution to {args.output}")
    return 0


def cmd_export(args) -> int:
    f = fixtures.sample(_one_input(args), _grid(args, fixtures.DEFAULT_GRID))
    _out(args, formats.magnitude_csv(qft_fast(f)))
    return 0


def cmd_check_lemma(args) -> int:
    check = lemmas.CHECKS[args.name]
    result = check() if args.tolerance is None else check(tolerance=args.tolerance)
    print(result.line())
    if args.name == "convolution":
        print("  info: " + lemmas.check_convolution_restricted().line())
    return 0 if result.passed else 1


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"certify {args.theorem} needs " + ", ".join("--" + n for n in missing))


def cmd_certify(args) -> int:
    spec = _one_input(args) if args.input else "gaussian"
    f = fixtures.resolve(spec)
    if f is None:
        f = fixtures.sample(spec, _grid(args, CERTIFY_GRID))
    kw = {"radii": args.radii, "norm": args.norm}
    if args.theorem == "beurling":
        _need(args, "d")
        report = uncertainty.beurling_certify(f, uncertainty.BeurlingParams(args.d), **kw)
    elif args.theorem == "hardy":
        _need(args, "d", "alpha", "beta")
        report = uncertainty.hardy_check(f, uncertainty.HardyParams(args.d, args.alpha, args.beta), **kw)
    elif args.theorem == "gelfand-shilov":
        _need(args, "d", "alpha", "beta", "p")
        d = int(args.d)
        if d != args.d:
            raise UsageError("gelfand-shilov needs an integer --d")
        report = uncertainty.gelfand_shilov_check(
            f, uncertainty.GelfandShilovParams(d, args.alpha, args.beta, args.p, args.q), **kw)
    else:
        _need(args, "d", "alpha", "beta", "p")
        report = uncertainty.cowling_price_check(
            f, uncertainty.CowlingPriceParams(args.d, args.alpha, args.beta, args.p, args.q), **kw)
    _out(args, report.to_kv() if args.format == "kv" else report.to_text())
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", metavar="FIXTURE|PATH",
                        help="fixture name (" + ", ".join(fixtures.NAMES) + ") or file")
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--grid", type=lambda s: _pair(s, int), metavar="N1,N2")
    common.add_argument("--spacing", type=lambda s: _pair(s, float), metavar="D1,D2")

    parser = argparse.ArgumentParser(prog="quatft", description="Two-sided quaternion Fourier transform tools")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="write the QFT of a signal")
    p.add_argument("--direct", action="store_true", help="use the direct-sum reference")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("inverse", parents=[common], help="inverse QFT of a spectrum file")
    p.set_defaults(func=cmd_inverse)

    p = sub.add_parser("convolve", parents=[common], help="circular convolution of two signals")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("export", parents=[common], help="CSV of |F|_Q and ||F||_Q for plotting")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("check-lemma", help="run a transform identity on built-in fixtures")
    p.add_argument("name", choices=sorted(lemmas.CHECKS))
    p.add_argument("--tolerance", type=float)
    p.set_defaults(func=cmd_check_lemma)

    p = sub.add_parser("certify", parents=[common], help="uncertainty-principle certificate")
    p.add_argument("theorem", choices=THEOREMS)
    for name in ("d", "alpha", "beta", "p", "q"):
        p.add_argument("--" + name, type=float)
    p.add_argument("--radii", type=lambda s: tuple(float(v) for v in s.split(",")), metavar="R1,R2,...")
    p.add_argument("--norm", choices=("module", "modulus"), default="module")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, FileNotFoundError, TypeError) as exc:
        print(f"quatft: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
