#!/usr/bin/env python3
"""Plot a `lab sweep` CSV: the norm on top, |fd| against omega_norm below.

    lab sweep --pair linf,l1 --x 1,2,3 --theta-grid 0.05:0.95:19 --out sweep.csv
    python3 tools/plot_sweep.py sweep.csv sweep.png
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main(src, dst):
    with open(src, newline="") as fh:
        rows = list(csv.DictReader(fh))
    t = [float(r["t"]) for r in rows]
    col = lambda name: [float(r[name]) for r in rows]
    fd = [max(abs(a), abs(b)) for a, b in zip(col("fd_left"), col("fd_right"))]

    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(6, 6))
    top.plot(t, col("norm"), marker="o")
    top.set_ylabel("norm")
    bottom.plot(t, fd, marker="o", label="max |fd|")
    bottom.plot(t, col("omega_norm"), linestyle="--", label="omega_norm")
    bottom.set_xlabel("t")
    bottom.legend()
    fig.tight_layout()
    fig.savefig(dst, dpi=120)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: plot_sweep.py SWEEP.csv OUT.png")
    main(sys.argv[1], sys.argv[2])
