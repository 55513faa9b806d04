#!/usr/bin/env python3
"""Level dynamics of a four-mode atom-molecule sector under a g sweep.

Sweeps the interaction strength over a grid, collects the full sector
spectrum at each point, writes a long-format CSV next to this script, and
prints where adjacent levels come closest (avoided crossings).
"""

import csv
import os

import numpy as np

from multiboson import build_sector_matrix, diagonalize, make_model, sector_from_occupations

W = [0.3, -0.1, 0.25, 0.05]
WQ = {(0, 3): 0.4, (1, 2): -0.2}
ANCHOR = (3, 2, 2, 4)

grid = np.linspace(0.0, 2.0, 41)
spectra = []
for g in grid:
    model = make_model(r=2, s=2, k=(1, 1, 1, 1), w=W, wq=WQ, g=g)
    sector = sector_from_occupations(model, ANCHOR)
    spectra.append(diagonalize(build_sector_matrix(model, sector)).energies)
spectra = np.array(spectra)

out_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "coupling_scan.csv")
with open(out_path, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["g", "level", "energy"])
    for g, energies in zip(grid, spectra):
        for level, energy in enumerate(energies):
            writer.writerow([f"{g:.17g}", level, f"{energy:.17g}"])
print(f"wrote {spectra.size} rows to {out_path}")

print(f"\nSector dimension {spectra.shape[1]}; spectrum ends at g = 0 and g = 2:")
print(f"  g = 0: {np.array2string(spectra[0], precision=3)}")
print(f"  g = 2: {np.array2string(spectra[-1], precision=3)}")

gaps = np.diff(spectra, axis=1)
level, point = np.unravel_index(np.argmin(gaps.T), gaps.T.shape)
print(f"\nClosest approach of adjacent levels: levels {level} and {level + 1} "
      f"near g = {grid[point]:.3f} (gap {gaps[point, level]:.4f})")
