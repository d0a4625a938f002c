"""Command-line front end.

Exit codes:
  0  success (and "symmetric" for symcheck)
  1  symcheck found the channel not symmetric
  2  parse error (file grammar, bad descriptor, bad arguments)
  3  validation error (non-stochastic rows, float input to symcheck, ...)
  4  result too large to compute exactly (materialization cap, histogram guard)
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import __version__
from .channel import (
    BITS,
    Channel,
    apply_dist,
    bsc,
    concat,
    materialize,
    power,
)
from .errors import HistogramTooLarge, MaterializationTooLarge, ParseError
from .formats import (
    format_channel,
    format_distribution,
    format_measure,
    format_prob,
    parse_channel,
    parse_distribution,
    parse_prob,
)
from .prob import (
    EXACT,
    Distribution,
    cond_min_entropy,
    entropy,
    min_entropy,
    neg_log_cond_min_entropy,
    neg_log_min_entropy,
    statistical_distance,
)
from .symmetry import find_symmetry_partition
from .wiretap import (
    LeakageReport,
    WiretapSetting,
    estimate_leakage_sd,
    input_guessing,
    leakage_sd,
)

EXIT_OK, EXIT_NOT_SYMMETRIC, EXIT_PARSE, EXIT_INVALID, EXIT_TOO_LARGE = range(5)

_BSC_SPEC = re.compile(r"bsc:([^\^]+)(?:\^(\d+))?\Z")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", source=path) from None


def load_channel(spec: str) -> Channel:
    """A channel file path or a ``bsc:<p>[^<c>]`` descriptor."""
    m = _BSC_SPEC.match(spec)
    if m:
        try:
            p = parse_prob(m.group(1))
        except ValueError as e:
            raise ParseError(str(e), source=spec) from None
        ch = bsc(p)
        return power(ch, int(m.group(2))) if m.group(2) else ch
    if spec.startswith("bsc:"):
        raise ParseError("expected bsc:<p>^<c>", source=spec)
    return parse_channel(_read(spec), spec)


def load_distribution(spec: str) -> Distribution:
    """A distribution file path, ``uniform:<c>`` or ``point:<bits>``."""
    if spec.startswith("uniform:"):
        c = spec[len("uniform:"):]
        if not c.isdigit() or int(c) < 1:
            raise ParseError("expected uniform:<c>", source=spec)
        if int(c) > 20:
            raise MaterializationTooLarge(2**20, 2 ** int(c))
        return Distribution.uniform(format(i, f"0{c}b") for i in range(2 ** int(c)))
    if spec.startswith("point:"):
        bits = spec[len("point:"):]
        if not bits or any(b not in BITS for b in bits):
            raise ParseError("expected point:<bits>", source=spec)
        return Distribution.point(bits)
    return parse_distribution(_read(spec), spec)


def _measure(args) -> int:
    exact = args.exact
    if args.which == "entropy":
        value = entropy(load_distribution(args.files[0]))
    elif args.which == "sd":
        value = statistical_distance(load_distribution(args.files[0]), load_distribution(args.files[1]))
    elif args.which == "minent":
        d = load_distribution(args.files[0])
        value = neg_log_min_entropy(d) if args.neglog else min_entropy(d)
    else:
        joint = apply_dist(load_channel(args.files[0]), load_distribution(args.files[1]))
        value = neg_log_cond_min_entropy(joint) if args.neglog else cond_min_entropy(joint)
    print(format_measure(value, exact))
    return EXIT_OK


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _channel(args) -> int:
    if args.which == "bsc":
        try:
            p = parse_prob(args.p)
        except ValueError as e:
            raise ParseError(str(e), source="<argument>") from None
        _emit(format_channel(bsc(p)), args.out)
    elif args.which == "power":
        ch = power(load_channel(args.base), args.c)
        try:
            _emit(format_channel(materialize(ch)), args.out)
        except MaterializationTooLarge:
            print(f"lazy product base={args.base} c={args.c}")
    elif args.which == "concat":
        ch = concat(load_channel(args.left), load_channel(args.right))
        try:
            _emit(format_channel(materialize(ch)), args.out)
        except MaterializationTooLarge:
            print(f"lazy concat left={args.left} right={args.right}")
    elif args.which == "entry":
        if (args.channel is None) == (args.base is None):
            raise ParseError("give exactly one of --channel or --base", source="<arguments>")
        ch = load_channel(args.channel or args.base)
        if args.power is not None:
            ch = power(ch, args.power)
        print(format_prob(ch.entry(args.x, args.y)))
    elif args.which == "apply":
        joint = apply_dist(load_channel(args.channel), load_distribution(args.dist))
        _emit(format_distribution(joint.marginal_y()), args.out)
    return EXIT_OK


def _symcheck(args) -> int:
    ch = load_channel(args.channel)
    if ch.mode != EXACT:
        print("error: symmetry check needs exact (rational) entries", file=sys.stderr)
        return EXIT_INVALID
    result = find_symmetry_partition(ch)
    print(result.certificate())
    return EXIT_OK if result else EXIT_NOT_SYMMETRIC


def _wiretap(args) -> int:
    adversary = load_channel(args.adv)
    c = adversary.input_bits
    if c is None:
        raise ValueError("adversary channel must take bit-string inputs")
    receiver = load_channel(args.recv) if args.recv else power(bsc(0), c)
    setting = WiretapSetting(c, receiver, adversary)
    if args.which == "leak":
        report = leakage_sd(setting, load_distribution(args.p0), load_distribution(args.p1))
    elif args.which == "guess":
        report = input_guessing(setting, load_distribution(args.px))
    else:
        report = estimate_leakage_sd(setting, load_distribution(args.p0), load_distribution(args.p1),
                                     n=args.n, seed=args.seed, workers=args.workers)
    print(report.to_csv_row(args.exact) if args.csv else report.to_text(args.exact))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chanlab", description="Discrete channels, information measures and wiretap leakage.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="entropy, statistical distance, min-entropy")
    m.add_argument("which", choices=["entropy", "sd", "minent", "condminent"])
    m.add_argument("files", nargs="+", help="distribution file(s); condminent takes CHANNEL DIST")
    m.add_argument("--exact", action="store_true", help="print exact results as rationals")
    m.add_argument("--neglog", action="store_true", help="print -lg of the guessing probability")
    m.set_defaults(func=_measure)

    ch = sub.add_parser("channel", help="construct and query channels")
    csub = ch.add_subparsers(dest="which", required=True)
    b = csub.add_parser("bsc")
    b.add_argument("p")
    b.add_argument("-o", "--out")
    pw = csub.add_parser("power")
    pw.add_argument("base")
    pw.add_argument("c", type=int)
    pw.add_argument("-o", "--out")
    cc = csub.add_parser("concat")
    cc.add_argument("left")
    cc.add_argument("right")
    cc.add_argument("-o", "--out")
    en = csub.add_parser("entry")
    en.add_argument("x")
    en.add_argument("y")
    en.add_argument("--channel")
    en.add_argument("--base")
    en.add_argument("--power", type=int)
    ap = csub.add_parser("apply")
    ap.add_argument("channel")
    ap.add_argument("dist")
    ap.add_argument("-o", "--out")
    ch.set_defaults(func=_channel)

    sc = sub.add_parser("symcheck", help="decide channel symmetry")
    sc.add_argument("channel")
    sc.set_defaults(func=_symcheck)

    w = sub.add_parser("wiretap", help="adversary-view leakage reports")
    w.add_argument("which", choices=["leak", "guess", "estimate"])
    w.add_argument("--adv", required=True, help="channel file or bsc:<p>^<c>")
    w.add_argument("--recv", help="receiver channel (default: noiseless)")
    w.add_argument("--p0")
    w.add_argument("--p1")
    w.add_argument("--px")
    w.add_argument("--n", type=int)
    w.add_argument("--seed", type=int)
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--csv", action="store_true", help="one header-less row: " + ",".join(LeakageReport.CSV_FIELDS))
    w.add_argument("--exact", action="store_true")
    w.set_defaults(func=_wiretap)
    return parser


def _check_args(parser, args) -> None:
    if args.command == "measure":
        need = 2 if args.which in ("sd", "condminent") else 1
        if len(args.files) != need:
            parser.error(f"measure {args.which} takes {need} file argument(s)")
    if args.command == "wiretap":
        need = {"leak": ("p0", "p1"), "guess": ("px",), "estimate": ("p0", "p1", "n", "seed")}[args.which]
        missing = [f"--{k}" for k in need if getattr(args, k) is None]
        if missing:
            parser.error(f"wiretap {args.which} requires " + ", ".join(missing))


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_args(parser, args)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (MaterializationTooLarge, HistogramTooLarge) as e:
        print(f"too large: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (ValueError, LookupError) as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
