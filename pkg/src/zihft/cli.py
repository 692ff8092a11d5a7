"""Command line: ``zihft simulate ...`` and ``zihft oracle ...``.

Exit status: 0 on success, 2 on usage or configuration errors, 1 on
runtime errors (including unwritable output paths).
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from zihft.config import ConfigError, SimConfig, parse_seed
from zihft.experiment import report_json, run_experiment, write_report, write_trade_log
from zihft.oracle import SmallConfig, TooLarge, exact_expectations

log = logging.getLogger("zihft")


def _seed(text: str) -> int:
    try:
        return parse_seed(text)
    except ConfigError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _price_list(text: str):
    try:
        prices = tuple(sorted({int(p) for p in text.split(",") if p.strip()}))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not prices:
        raise argparse.ArgumentTypeError("price list is empty")
    return prices


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zihft", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run the Monte Carlo experiment")
    sim.add_argument("--scenario", choices=["base", "hft", "compare"], default="compare")
    sim.add_argument("--steps", type=int, default=10_000)
    sim.add_argument("--runs", type=int, default=100)
    sim.add_argument("--seed", type=_seed, default=0, help="decimal or 0x-prefixed hex")
    sim.add_argument("--price-min", type=int, default=1)
    sim.add_argument("--price-max", type=int, default=200)
    sim.add_argument("--bin-width", type=float, default=5.0)
    sim.add_argument("--format", choices=["csv", "json"], default="json")
    sim.add_argument("--out", help="report path (default: JSON to stdout)")
    sim.add_argument("--trade-log", help="write every trade to this CSV file")
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--continuous-prices", action="store_true")
    sim.add_argument("--tie-break", choices=["time", "reverse"], default="time")
    pairing = sim.add_mutually_exclusive_group()
    pairing.add_argument("--paired", dest="paired", action="store_true", default=None,
                         help="use identical per-run seeds for base and hft (default for compare)")
    pairing.add_argument("--unpaired", dest="paired", action="store_false",
                         help="independent seeds per scenario")

    orc = sub.add_parser("oracle", help="exact expectations for a tiny configuration")
    orc.add_argument("--steps", type=int, required=True)
    orc.add_argument("--prices", type=_price_list, default=(1, 2))
    orc.add_argument("--hft", action="store_true")
    orc.add_argument("--markets", type=int, choices=[1, 2], default=None,
                     help="default: 2 with --hft, else 1")
    return parser


def _simulate(args) -> int:
    cfg = SimConfig(
        steps=args.steps,
        runs=args.runs,
        price_min=args.price_min,
        price_max=args.price_max,
        master_seed=args.seed,
        bin_width=args.bin_width,
        output_format=args.format,
        trade_log=args.trade_log,
        workers=args.workers,
        continuous_prices=args.continuous_prices,
        tie_break=args.tie_break,
    ).validate()
    report = run_experiment(cfg, args.scenario, args.paired)
    log.info("%d runs x %d steps in %.2fs", cfg.runs, cfg.steps, report.wall_clock_seconds)
    if args.out:
        for p in write_report(report, cfg.output_format, args.out):
            log.info("wrote %s", p)
    else:
        if cfg.output_format != "json":
            raise ConfigError("CSV output needs --out")
        if cfg.trade_log:
            write_trade_log(report, cfg.trade_log)
        sys.stdout.write(report_json(report))
    return 0


def _fraction_text(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator} ({float(v):.10g})"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _oracle(args) -> int:
    markets = args.markets or (2 if args.hft else 1)
    try:
        out = exact_expectations(SmallConfig(args.steps, args.prices, args.hft, markets))
    except TooLarge as e:
        raise ConfigError(str(e)) from None
    except ValueError as e:
        raise ConfigError(str(e)) from None
    for key, value in out.items():
        print(f"{key}: {_fraction_text(value)}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "simulate":
            return _simulate(args)
        return _oracle(args)
    except ConfigError as e:
        parser.print_usage(sys.stderr)
        print(f"zihft: error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"zihft: error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # noqa: BLE001
        log.exception("run failed")
        print(f"zihft: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
