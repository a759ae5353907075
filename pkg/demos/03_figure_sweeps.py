"""
CGP along one-parameter gate families
=====================================

Writes the rotation and partial-swap curves as CSV files, the same data the
``cgpkit sweep`` command emits, and prints where they peak. Pass an output
directory as the first argument (default: current directory).
"""
import sys
from math import pi
from pathlib import Path

import numpy as np

from cgpkit.cli import sweep_rows

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(".")

# Real rotation by theta on [0, pi]
rot = np.array(sweep_rows("rotation", 0.0, pi, 181))
np.savetxt(out / "rotation.csv", rot, delimiter=",", header="param,cgp", comments="", fmt="%.17g")
peaks = rot[np.argsort(rot[:, 1])[-2:], 0]
print("rotation peaks at theta/pi =", np.sort(peaks) / pi, " value", rot[:, 1].max())
print("symmetry about pi/2:", np.abs(rot[:, 1] - rot[::-1, 1]).max())

# Two-qubit partial swap on [0, 1]
ps = np.array(sweep_rows("partial-swap", 0.0, 1.0, 101))
np.savetxt(out / "partial_swap.csv", ps, delimiter=",", header="param,cgp", comments="", fmt="%.17g")
print("partial swap peak at t =", ps[np.argmax(ps[:, 1]), 0], " value", ps[:, 1].max())

# Optional plot if matplotlib happens to be installed
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None
if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
    axes[0].plot(rot[:, 0], rot[:, 1])
    axes[0].set_xlabel("theta")
    axes[1].plot(ps[:, 0], ps[:, 1])
    axes[1].set_xlabel("t")
    for ax in axes:
        ax.set_ylabel("CGP (nats)")
    fig.tight_layout()
    fig.savefig(out / "sweeps.png", dpi=120)
    print("wrote", out / "sweeps.png")
