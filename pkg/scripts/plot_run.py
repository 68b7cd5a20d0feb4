#!/usr/bin/env python3
"""Render the column files of a qpos1d run directory (documentation aid;
matplotlib is intentionally not a package dependency).

Usage: python scripts/plot_run.py <run_dir> [out.png]
"""

import sys
from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    run_dir = Path(sys.argv[1])
    out = sys.argv[2] if len(sys.argv) > 2 else None

    csvs = sorted(p for p in run_dir.glob("*.csv") if p.name != "multipliers.csv")
    if not csvs:
        sys.exit(f"no column files in {run_dir}")

    fig, ax = plt.subplots(figsize=(8, 5))
    for path in csvs:
        header = path.open().readline().strip().split(",")
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        ax.plot(data[:, 0], data[:, 1], label=path.stem, lw=0.8)
    ax.set_xlabel(header[0] + "  (a.u.)")
    ax.set_ylabel(header[1])
    ax.legend(fontsize=8)
    ax.set_title(run_dir.name)
    fig.tight_layout()
    if out:
        fig.savefig(out, dpi=150)
        print(f"wrote {out}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
