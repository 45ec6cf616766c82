"""Command-line surface: generation, chi-square runs, benchmark comparisons,
and rekey-interval dumps.

Exit status: 0 on success, 2 for usage errors, 1 for runtime errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import bench, sampler, stats
from .engine import (
    SEED_SIZE,
    Engine,
    EntropyError,
    OsEntropy,
    RekeyPolicy,
    events_to_csv,
    parse_seed_hex,
)

EXIT_USAGE = 2
EXIT_RUNTIME = 1


class UsageError(Exception):
    pass


def _resolve_seed(seed_arg):
    if seed_arg == "os":
        return OsEntropy().read()
    try:
        return parse_seed_hex(seed_arg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _resolve_policy(args):
    if args.policy == "fixed":
        return RekeyPolicy.fixed(args.fixed_interval)
    return RekeyPolicy.fuzzed(args.rekey_base)


def _derive_run_seed(seed, run_index):
    # Per-run seeds derived deterministically so Fixed and Fuzzed benches can
    # use matched seeds.
    return hashlib.blake2b(
        seed, digest_size=SEED_SIZE, salt=run_index.to_bytes(8, "little")
    ).digest()


def _add_common(parser):
    parser.add_argument(
        "--seed",
        default="os",
        help=f'{2 * SEED_SIZE} hex chars, or "os" for platform entropy (default)',
    )
    parser.add_argument(
        "--policy", choices=("fixed", "fuzzed"), default="fuzzed"
    )
    parser.add_argument(
        "--fixed-interval",
        type=int,
        default=1_600_000,
        metavar="BYTES",
        help="rekey budget for the fixed policy (default 1600000)",
    )
    parser.add_argument(
        "--rekey-base",
        type=int,
        default=1 << 20,
        metavar="BYTES",
        help="REKEY_BASE for the fuzzed policy (default 2^20)",
    )


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w"), True


def cmd_gen(args):
    if args.count <= 0:
        raise UsageError("--count must be positive")
    seed = _resolve_seed(args.seed)
    engine = Engine(seed, _resolve_policy(args))
    if args.raw:
        to_file = args.output is not None and args.output != "-"
        stream = open(args.output, "wb") if to_file else sys.stdout.buffer
        try:
            remaining = args.count
            while remaining:
                n = min(remaining, 1 << 20)
                stream.write(engine.random_u32_batch(n).tobytes())
                remaining -= n
        finally:
            if to_file:
                stream.close()
    else:
        out, close = _open_out(args.output)
        try:
            remaining = args.count
            while remaining:
                n = min(remaining, 1 << 20)
                out.write("\n".join(map(str, engine.random_u32_batch(n))))
                out.write("\n")
                remaining -= n
        finally:
            if close:
                out.close()
    if args.events:
        with open(args.events, "w") as f:
            f.write(engine.events_csv())
    return 0


def cmd_chisq(args):
    if args.count <= 0:
        raise UsageError("--count must be positive")
    if args.bins < 2:
        raise UsageError("--bins must be at least 2")
    seed = _resolve_seed(args.seed)
    engine = Engine(seed, _resolve_policy(args))
    values, _ = sampler.uniform_batch(engine, args.bins, args.count)
    hist = stats.Histogram.categorical(values, args.bins)
    expected = [args.count / args.bins] * args.bins
    result = stats.chi_square_test(hist, expected)
    payload = result.to_dict()
    payload["rekeys"] = engine.rekey_count
    out, close = _open_out(args.output)
    try:
        json.dump(payload, out)
        out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_compare(args):
    if args.count <= 0:
        raise UsageError("--count must be positive")
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    seed = _resolve_seed(args.seed)
    fixed = RekeyPolicy.fixed(args.fixed_interval)
    fuzzed = RekeyPolicy.fuzzed(args.rekey_base)
    reports = {}
    for policy in (fixed, fuzzed):
        runs = [
            bench.run_generation_bench(
                args.count, policy, _derive_run_seed(seed, i)
            )
            for i in range(args.runs)
        ]
        reports[policy.mode] = bench.aggregate(runs)
    rows = bench.compare(reports["fixed"], reports["fuzzed"])
    out, close = _open_out(args.output)
    try:
        if args.format == "csv":
            out.write(bench.comparison_csv(rows))
        else:
            json.dump(
                {
                    "reference": reports["fixed"].to_dict(),
                    "candidate": reports["fuzzed"].to_dict(),
                    "comparison": bench.comparison_dicts(rows),
                },
                out,
            )
            out.write("\n")
    finally:
        if close:
            out.close()
    return 0


def cmd_intervals(args):
    if args.policy == "fixed":
        raise UsageError(
            "intervals requires --policy fuzzed (fixed intervals are constant)"
        )
    if args.rekeys < 1:
        raise UsageError("--rekeys must be positive")
    if args.bins < 2:
        raise UsageError("--bins must be at least 2")
    seed = _resolve_seed(args.seed)
    engine = Engine(seed, RekeyPolicy.fuzzed(args.rekey_base))
    # Drain exactly the current budget each round; the next request rekeys.
    while engine.rekey_count < args.rekeys:
        engine.discard(max(engine.count, 1))
    events = engine.events[: args.rekeys]
    result = stats.interval_uniformity_test(events, args.rekey_base, args.bins)
    if args.output and args.output != "-":
        with open(args.output, "w") as f:
            f.write(events_to_csv(events))
        json.dump(result.to_dict(), sys.stdout)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(events_to_csv(events))
        json.dump(result.to_dict(), sys.stderr)
        sys.stderr.write("\n")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="arc4rng",
        description="ChaCha20 CSPRNG with randomized rekey interval: "
        "generation, benchmarks, and randomness statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit random 32-bit values")
    _add_common(p)
    p.add_argument("--count", type=int, required=True, metavar="N")
    p.add_argument("--raw", action="store_true", help="binary output instead of decimal lines")
    p.add_argument("--events", metavar="CSV", help="also write the rekey-event log")
    p.add_argument("--output", "-o", metavar="FILE")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("chisq", help="chi-square goodness of fit on bounded draws")
    _add_common(p)
    p.add_argument("--count", type=int, required=True, metavar="N")
    p.add_argument("--bins", type=int, default=100, metavar="K")
    p.add_argument("--output", "-o", metavar="FILE")
    p.set_defaults(func=cmd_chisq)

    p = sub.add_parser("compare", help="fixed-vs-fuzzed generation benchmark table")
    _add_common(p)
    p.add_argument("--count", type=int, default=39_600_000, metavar="N")
    p.add_argument("--runs", type=int, default=10)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--output", "-o", metavar="FILE")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("intervals", help="dump fuzzed rekey intervals + uniformity test")
    _add_common(p)
    p.add_argument("--rekeys", type=int, default=10_000, metavar="N")
    p.add_argument("--bins", type=int, default=16, metavar="K")
    p.add_argument("--output", "-o", metavar="FILE", help="interval CSV destination")
    p.set_defaults(func=cmd_intervals)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EntropyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
