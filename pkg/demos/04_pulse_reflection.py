"""A pulse meeting a vessel expansion: reflection and transmission.

The vessel narrows from 5 mm to 4 mm over a short cosine ramp at mid-domain.
A small radius pulse is launched on one side; when its left-going half hits
the expansion it partially reflects, so by t = 6 ms the radius perturbation
R - R0 lives on two disjoint intervals.  Both pulse benchmarks are run and
their final perturbation footprints printed.
"""

import numpy as np

import bloodflow1d as bf

for name in ("pulse_to_expansion", "pulse_from_expansion"):
    case = bf.build_case(name)
    grid = bf.build_grid(case.x_min, case.x_max, 200)
    result = bf.run_until(case, grid, bf.SchemeConfig())
    x = grid.x_interior()
    r0 = np.sqrt(result.geom.A0[grid.interior()] / np.pi)
    amp = case.params["eps"] * case.params["r_right"]
    print(f"{name}:")
    for t in (0.002, 0.006):
        radius = np.sqrt(result.snapshots[t][0] / np.pi)
        dev = np.abs(radius - r0) > 0.05 * amp
        idx = np.flatnonzero(dev)
        pieces = []
        if idx.size:
            start = idx[0]
            for a, b in zip(idx[:-1], idx[1:]):
                if b > a + 1:
                    pieces.append((start, a))
                    start = b
            pieces.append((start, idx[-1]))
        span = ", ".join(f"[{x[a]:.3f}, {x[b]:.3f}]" for a, b in pieces)
        print(f"  t = {t * 1e3:.0f} ms: |R - R0| > 5% amp on {span or 'nothing'}")
    print()
