"""Reproduce the base vs HFT comparison table at full scale.

    python scripts/reproduce_table1.py --out results/table1

writes results/table1.json and results/table1.csv (+ _runs/_histogram CSVs)
and prints the table.
"""
import argparse
from dataclasses import replace
from pathlib import Path

from zihft.config import SimConfig, parse_seed
from zihft.experiment import run_experiment, write_report

ROWS = [
    ("Price", "mean_price", "{:.2f}"),
    ("Volatility", "volatility", "{:.1f}"),
    ("Volume", "volume", "{:.0f}"),
    ("Probability of transaction", "txn_probability", "{:.3f}"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=100)
    ap.add_argument("--steps", type=int, default=10_000)
    ap.add_argument("--seed", type=parse_seed, default=0)
    ap.add_argument("--paired", action="store_true")
    ap.add_argument("--out", default="results/table1")
    args = ap.parse_args()

    cfg = SimConfig(steps=args.steps, runs=args.runs, master_seed=args.seed)
    report = run_experiment(cfg, "compare", paired=args.paired)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_report(report, "json", out.with_suffix(".json"))
    write_report(replace(report, config=replace(cfg, output_format="csv")), "csv", out.with_suffix(".csv"))

    print(f"{'':28s}{'base':>16s}{'hft':>16s}")
    for label, metric, fmt in ROWS:
        cells = []
        for name in ("base", "hft"):
            s = report.scenarios[name].summary[metric]
            cells.append(f"{fmt.format(s.mean)} ({fmt.format(s.sd)})")
        print(f"{label:28s}{cells[0]:>16s}{cells[1]:>16s}")
    print(f"\n{args.runs} runs x {args.steps} steps, {report.wall_clock_seconds:.1f}s")


if __name__ == "__main__":
    main()
