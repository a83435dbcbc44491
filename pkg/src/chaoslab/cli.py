"""``chaoslab`` command line: certificates, replays, series, periodic points, A-report."""
from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

from . import counterexample
from . import interval_maps as im
from . import symbolic as sym
from .errors import ChaoslabError, InvalidInputError, UnsupportedDeltaError, VerificationFailure
from .interval_maps import AnglePoint, DistanceValue
from .systems import SYSTEMS, get_system
from .witness import (
    WitnessCertificate,
    asymptotic_witness,
    separation_series,
    verify_certificate,
)

EXIT_OK, EXIT_ERROR, EXIT_VERIFY = 0, 1, 2


class UsageError(ChaoslabError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _flag(flag: str, parse, text):
    try:
        return parse(text)
    except ChaoslabError as exc:
        raise UsageError(f"{flag}: {exc}") from None
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: cannot parse {text!r}") from None


def _rational(text: str) -> Fraction:
    return im.as_fraction(text.strip())


def _count(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError(text)
    return value


def format_decimal(value: float) -> str:
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def emit_series_csv(series: Sequence[tuple[int, DistanceValue]], path) -> None:
    """Write ``n,distance,distance_exact`` rows; exact column empty for enclosures."""
    if not series:
        raise UsageError("series is empty")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        _write_series(series, fh)


def _write_series(series, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n", "distance", "distance_exact"])
    for n, d in sorted(series, key=lambda row: row[0]):
        exact = f"{d.exact.numerator}/{d.exact.denominator}" if d.is_exact else ""
        writer.writerow([n, format_decimal(d.midpoint()), exact])


def _dump(obj, out: Optional[str]) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"--out: cannot write {out!r}: {exc.strerror}") from None


def periodic_points(system, n: int) -> list:
    """All points fixed by ``T^n`` (angle-periodic for the logistic system)."""
    sys_ = get_system(system)
    if not 1 <= n <= 20:
        raise UsageError(f"--period: must be in 1..20, got {n}")
    if sys_.id == "tent":
        return im.tent_periodic_points(n)
    if sys_.id == "full-shift":
        words = {sym.canonicalize((), bits) for bits in product((0, 1), repeat=n)}
        return sorted(words, key=lambda w: (len(w.cycle), w.cycle))
    return [AnglePoint(Fraction(a, (1 << n) - 1)) for a in range((1 << n) - 1)]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chaoslab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def system_arg(p):
        p.add_argument("--system", required=True, help=f"one of {', '.join(SYSTEMS)}")

    w = sub.add_parser("witness", help="build an asymptotic-sensitivity certificate")
    system_arg(w)
    w.add_argument("--center", required=True)
    w.add_argument("--radius", required=True)
    w.add_argument("--delta", default=None, help="defaults to the certified constant")
    w.add_argument("--verify", default="0", help="replay depth M; 0 skips replay")
    w.add_argument("--out")

    v = sub.add_parser("verify", help="replay a certificate file")
    system_arg(v)
    v.add_argument("--cert", required=True)
    v.add_argument("--depth", "--verify", dest="depth", default="1000")
    v.add_argument("--out")

    s = sub.add_parser("series", help="distance series d(T^n p, T^n q)")
    system_arg(s)
    s.add_argument("--pair", nargs=2, required=True, metavar=("P", "Q"))
    s.add_argument("--steps", required=True)
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out")

    p = sub.add_parser("periodic", help="list the points fixed by T^n")
    system_arg(p)
    p.add_argument("--period", required=True)
    p.add_argument("--out")

    c = sub.add_parser("counterexample", help="sampled report on the eventually-zero subshift")
    c.add_argument("--samples", default="1000")
    c.add_argument("--seed", default="0")
    c.add_argument("--delta", default=str(counterexample.DELTA_A))
    c.add_argument("--out")
    return parser


def _system(args):
    return _flag("--system", get_system, args.system)


def _cmd_witness(args) -> int:
    system = _system(args)
    center = _flag("--center", system.parse_point, args.center)
    radius = _flag("--radius", _rational, args.radius)
    delta = system.certified_delta if args.delta is None else _flag("--delta", _rational, args.delta)
    depth = _flag("--verify", _count, args.verify)
    if delta <= 0:
        raise UsageError(f"--delta: must be positive, got {delta}")
    try:
        cert = asymptotic_witness(system, center, radius, delta)
    except UnsupportedDeltaError as exc:
        raise UsageError(f"--delta: {exc}") from None
    except InvalidInputError as exc:
        raise UsageError(f"--radius: {exc}") from None
    _dump(cert.to_json(), args.out)
    if depth:
        report = verify_certificate(system, cert, depth)
        if not report.passed:
            print(f"verification failed: {', '.join(report.failures)}", file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def _cmd_verify(args) -> int:
    system = _system(args)
    depth = _flag("--depth", _count, args.depth)
    try:
        with open(args.cert, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--cert: cannot read {args.cert!r}: {exc}") from None
    cert = _flag("--cert", WitnessCertificate.from_json, data)
    report = verify_certificate(system, cert, depth)
    _dump(report.to_json(), args.out)
    return EXIT_OK if report.passed else EXIT_VERIFY


def _cmd_series(args) -> int:
    system = _system(args)
    p = _flag("--pair", system.parse_point, args.pair[0])
    q = _flag("--pair", system.parse_point, args.pair[1])
    steps = _flag("--steps", _count, args.steps)
    series = _flag("--steps", lambda n: separation_series(system, p, q, n), steps)
    if args.format == "json":
        _dump([{"distance": d.to_json(), "n": n} for n, d in series], args.out)
    elif args.out is None:
        _write_series(series, sys.stdout)
    else:
        try:
            emit_series_csv(series, args.out)
        except OSError as exc:
            raise UsageError(f"--out: cannot write {args.out!r}: {exc.strerror}") from None
    return EXIT_OK


def _cmd_periodic(args) -> int:
    system = _system(args)
    n = _flag("--period", int, args.period)
    points = periodic_points(system, n)
    _dump([system.format_point(p) for p in points], args.out)
    return EXIT_OK


def _cmd_counterexample(args) -> int:
    samples = _flag("--samples", _count, args.samples)
    seed = _flag("--seed", _count, args.seed)
    delta = _flag("--delta", _rational, args.delta)
    if not 0 < delta < 1:
        raise UsageError(f"--delta: {delta} not in (0, 1); A certifies only delta < 1")
    report = _flag("--samples", lambda s: counterexample.a_report(s, seed, delta), samples)
    _dump(report, args.out)
    return EXIT_OK


COMMANDS = {
    "witness": _cmd_witness,
    "verify": _cmd_verify,
    "series": _cmd_series,
    "periodic": _cmd_periodic,
    "counterexample": _cmd_counterexample,
}


def run(argv: Optional[Iterable[str]] = None) -> int:
    try:
        args = build_parser().parse_args(None if argv is None else list(argv))
        return COMMANDS[args.command](args)
    except VerificationFailure as exc:
        print(f"chaoslab: internal verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ChaoslabError as exc:
        print(f"chaoslab: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
