"""Ideal tourniquet release: a dam-break analogue with shock capturing.

A vessel holds two rest states (radius 5 mm for x <= 0, 4 mm beyond); at
t = 0 the constriction is removed and a shock/rarefaction pair develops.
The script integrates to t = 5 ms on 200 cells, prints the wave structure,
and writes a gnuplot-ready CSV next to this file.
"""

import pathlib

import numpy as np

import bloodflow1d as bf
from bloodflow1d import cli

case = bf.build_case("tourniquet")
grid = bf.build_grid(case.x_min, case.x_max, 200)
config = bf.SchemeConfig()

result = bf.run_until(case, grid, config)
print(f"integrated {len(result.log)} steps to t = {result.t * 1e3:.1f} ms")

radius = np.sqrt(result.A / np.pi)  # mm
x = grid.x_interior()
print(f"radius range: {radius.min():.3f} .. {radius.max():.3f} mm")

# locate the right-moving shock from the steepest radius drop
jumps = np.abs(np.diff(radius))
i = int(np.argmax(jumps[x[:-1] > 0.0])) + int(np.sum(x[:-1] <= 0.0))
print(f"shock near x = {x[i] * 1e3:.1f} mm, "
      f"{abs(radius[i + 1] - radius[i]):.4f} mm drop in one cell")

out = pathlib.Path(__file__).with_suffix(".csv")
cli.write_snapshot(result.A, result.Q, grid, result.geom, result.t, out,
                   case=case.name, mode=config.mode, cfl=config.cfl)
print(f"snapshot written to {out}")
print("plot with: gnuplot -e \"set datafile separator ','; "
      f"plot '{out.name}' using 1:4 with lines\"")
