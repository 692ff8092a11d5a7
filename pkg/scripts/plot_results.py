"""Static figures from the CSV report: price histograms and metric bars with 95% CIs.

    python scripts/plot_results.py results/table1.csv
"""
import csv
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_csv(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def plot_histograms(hist_csv, out):
    rows = read_csv(hist_csv)
    by_scenario = defaultdict(list)
    for r in rows:
        by_scenario[r["scenario"]].append((float(r["bin_lower"]), float(r["bin_upper"]), int(r["count"])))
    fig, axes = plt.subplots(1, len(by_scenario), figsize=(5 * len(by_scenario), 3.5), sharey=True)
    axes = axes if len(by_scenario) > 1 else [axes]
    for ax, (name, bins) in zip(axes, sorted(by_scenario.items())):
        ax.bar([lo for lo, _, _ in bins], [c for _, _, c in bins],
               width=[hi - lo for lo, hi, _ in bins], align="edge", edgecolor="k", linewidth=0.3)
        ax.set_title(name)
        ax.set_xlabel("transaction price")
    axes[0].set_ylabel("trades")
    fig.tight_layout()
    fig.savefig(out, dpi=120)


def plot_metrics(summary_csv, out):
    rows = [r for r in read_csv(summary_csv) if r["metric"] != "order_fill_rate"]
    metrics = sorted({r["metric"] for r in rows})
    fig, axes = plt.subplots(1, len(metrics), figsize=(3.2 * len(metrics), 3))
    for ax, metric in zip(axes, metrics):
        sel = [r for r in rows if r["metric"] == metric]
        means = [float(r["mean"]) for r in sel]
        errs = [float(r["mean"]) - float(r["ci95_low"]) if r["ci95_low"] else 0 for r in sel]
        ax.bar([r["scenario"] for r in sel], means, yerr=errs, capsize=4)
        ax.set_title(metric)
    fig.tight_layout()
    fig.savefig(out, dpi=120)


def main():
    summary = Path(sys.argv[1] if len(sys.argv) > 1 else "results/table1.csv")
    hist = summary.with_name(summary.stem + "_histogram.csv")
    plot_histograms(hist, summary.with_name(summary.stem + "_histograms.png"))
    plot_metrics(summary, summary.with_name(summary.stem + "_metrics.png"))


if __name__ == "__main__":
    main()
