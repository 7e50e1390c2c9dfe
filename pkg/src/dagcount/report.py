"""Staircase report rendering: CSV breakpoints and a matplotlib figure.

The CSV holds the sink row of the staircase, one line per breakpoint:
the highest grid level of the stretch, the certified count at that level,
and the exact length threshold.  The figure shows the same curve as a
step plot of certified count (log2 scale, so arbitrarily large grids
render without overflow) against the length bound, with the (1 + eps)
certainty band shaded around it.
"""
from __future__ import annotations

import csv
import math
import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")  # file rendering only; must be set before pyplot
import matplotlib.pyplot as plt  # noqa: E402

from .dyadic import power_decimal  # noqa: E402
from .errors import NoPathError  # noqa: E402
from .graph import weight_to_str  # noqa: E402


def render_staircase_report(staircase, out_dir: str, stem: str = "staircase") -> dict:
    """Write ``<stem>.csv`` and ``<stem>.png`` under ``out_dir``.

    Returns a result dict with the file paths and breakpoint count.
    Raises NoPathError for a graph whose sink row is empty: there is no
    curve to report.
    """
    row = staircase.rows[staircase.dag.t]
    if not row.his:
        raise NoPathError("sink is unreachable; nothing to report")
    grid = staircase.grid
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, stem + ".csv")
    png_path = os.path.join(out_dir, stem + ".png")

    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["level", "count_estimate", "length_threshold"])
        for value, hi in zip(row.values, row.his):
            writer.writerow([
                hi,
                power_decimal(grid.t_exp, hi, Fraction(1), "nearest"),
                weight_to_str(value),
            ])

    log2q = math.log2(1 + 2.0 ** -grid.t_exp)
    eps_band = math.log2(1 + float(grid.eps))
    xs: list[float] = []
    ys: list[float] = []
    # step curve: the certified count jumps at each breakpoint threshold
    prev_level = 0.0
    for value, hi in zip(row.values, row.his):
        x = float(value)
        if xs:
            xs.append(x)
            ys.append(prev_level)
        xs.append(x)
        prev_level = hi * log2q
        ys.append(prev_level)
    # extend flat past the last breakpoint for visual closure
    span = (xs[-1] - xs[0]) if xs[-1] > xs[0] else 1.0
    xs.append(xs[-1] + 0.05 * span)
    ys.append(prev_level)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(xs, ys, drawstyle="default", color="tab:blue",
            label="certified count")
    lo = [y - eps_band for y in ys]
    hi_band = [y + eps_band for y in ys]
    ax.fill_between(xs, lo, hi_band, color="tab:blue", alpha=0.15,
                    label="(1 + eps) band")
    ax.set_xlabel("length bound")
    ax.set_ylabel("certified path count (log2)")
    ax.set_title("paths within length bound")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(png_path, dpi=120)
    plt.close(fig)

    return {
        "kind": "staircase_report",
        "csv_file": csv_path,
        "png_file": png_path,
        "breakpoints": str(len(row.values)),
    }
