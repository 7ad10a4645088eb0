"""What would better sources buy? A visibility x imperfection grid.

Rows: TPI visibility from today's 0.30 (no post-selection) through the
Fourier-limit 0.59 and the lifetime-engineered 0.83 up to 1. Columns: with
and without the 2.1 ueV fine-structure splitting and a residual g2 = 0.05.
Every cell keeps the reference coincidence ratio k = 0.85 except the last,
which also assumes clean coincidences (k = 1).
"""

import json
from importlib.resources import files

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qdteleport import SweepScenario, sweep_grid

doc = json.loads((files("qdteleport") / "fixtures" / "fig5_grid.json").read_text())
rows = sweep_grid([SweepScenario(**s) for s in doc["sweep"]["scenarios"]])

vis_levels = sorted({r["visibility"] for r in rows})
columns = [(2.1, 0.05), (0.0, 0.05), (0.0, 0.0)]
col_names = ["FSS + g2", "g2 only", "clean"]

grid = np.full((len(vis_levels), len(columns)), np.nan)
for r in rows:
    i = vis_levels.index(r["visibility"])
    j = columns.index((r["fss_uev"], r["g2"]))
    grid[i, j] = r["f_bar"]

print("average fidelity (no temporal post-selection)")
print("   V     " + "  ".join(f"{n:>10}" for n in col_names))
for i, v in enumerate(vis_levels):
    cells = "  ".join(f"{grid[i, j]:10.4f}" for j in range(len(columns)))
    print(f"  {v:4.2f}   {cells}")
print("\n(the V=1 clean cell also sets k=1; everything else keeps k=0.85)")

fig, ax = plt.subplots(figsize=(5.2, 4))
im = ax.imshow(grid, origin="lower", cmap="viridis", vmin=0.6, vmax=1.0, aspect="auto")
ax.set_xticks(range(len(col_names)), col_names)
ax.set_yticks(range(len(vis_levels)), [f"{v:.2f}" for v in vis_levels])
ax.set_xlabel("source imperfections")
ax.set_ylabel("TPI visibility")
for i in range(grid.shape[0]):
    for j in range(grid.shape[1]):
        ax.text(j, i, f"{grid[i, j]:.3f}", ha="center", va="center",
                color="w" if grid[i, j] < 0.85 else "k")
fig.colorbar(im, label="average fidelity")
fig.tight_layout()
fig.savefig("source_parameter_grid.png", dpi=150)
print("wrote source_parameter_grid.png")
