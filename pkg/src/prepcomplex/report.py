"""Figure rendering for result CSVs.

The only module that touches matplotlib.  Figures are written next to
the CSV they were derived from unless an output directory is given, and
file names derive from the CSV stem so repeated runs overwrite rather
than accumulate.
"""

import csv
import os
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["render_estimate_report", "render_source_report"]


def _target(csv_path, out_dir, suffix):
    stem = os.path.splitext(os.path.basename(csv_path))[0]
    directory = out_dir or os.path.dirname(os.path.abspath(csv_path))
    os.makedirs(directory, exist_ok=True)
    return os.path.join(directory, f"{stem}-{suffix}.png")


def _read(csv_path):
    with open(csv_path, "r", encoding="ascii") as fh:
        return list(csv.DictReader(fh))


def render_estimate_report(csv_path, out_dir=None):
    """Bar chart of estimated bits per state; returns written paths."""
    rows = _read(csv_path)
    if not rows:
        raise ValueError(f"no data rows in {csv_path}")
    labels = [r["state_id"] for r in rows]
    bits = [float(r["bits"]) for r in rows]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(rows) + 2), 3.5))
    ax.bar(range(len(rows)), bits, color="#4878a8")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("estimated bits")
    ax.set_title("compressed preparation estimates")
    fig.tight_layout()
    path = _target(csv_path, out_dir, "bits")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]


def render_source_report(csv_path, out_dir=None):
    """Mean measured rate against sentence length, with the source
    entropy as a reference line; returns written paths."""
    rows = _read(csv_path)
    if not rows:
        raise ValueError(f"no data rows in {csv_path}")
    by_m = defaultdict(list)
    for r in rows:
        by_m[int(r["m"])].append(float(r["bits_per_emission"]))
    ms = sorted(by_m)
    means = [sum(by_m[m]) / len(by_m[m]) for m in ms]
    entropy = float(rows[0]["H"])
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(ms, means, marker="o", label="measured rate")
    ax.axhline(entropy, color="gray", linestyle="--",
               label=f"H = {entropy:.4f}")
    ax.set_xscale("log")
    ax.set_xlabel("sentence length m")
    ax.set_ylabel("bits per emission")
    ax.set_title(rows[0].get("source_id", "source"))
    ax.legend()
    fig.tight_layout()
    path = _target(csv_path, out_dir, "rate")
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]
