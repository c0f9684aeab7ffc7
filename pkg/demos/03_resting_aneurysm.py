"""Steady-state preservation on a vessel with an aneurysm bulge.

The rest state u = 0, A = A0(x) has a nonzero momentum-flux gradient that
the geometry source must cancel.  The balanced discretization reuses the
flux reconstruction's frozen coefficient rows for the source derivatives,
and the cancellation is exact in floating point: the state is a fixed point
of the discrete scheme.  The straightforward (unbalanced) source leaves
truncation-scale residuals that pollute the radius at visible levels.
"""

import numpy as np

import bloodflow1d as bf

case = bf.build_case("eternal_rest")
grid = bf.build_grid(case.x_min, case.x_max, 200)
s = grid.interior()

for mode in ("well_balanced", "non_well_balanced"):
    result = bf.run_until(case, grid, bf.SchemeConfig(mode=mode), t_end=0.5,
                          snapshot_times=())
    da = np.max(np.abs(result.A - result.geom.A0[s]))
    dq = np.max(np.abs(result.Q))
    print(f"{mode:18s} after {len(result.log):5d} steps: "
          f"max|A - A0| = {da:.3e} mm^2, max|Q| = {dq:.3e} mL/s")

print("\nwith balancing, the equilibrium survives bit-for-bit; without it,")
print("the spurious flow is at the scheme's truncation level and shows up")
print("as wiggles of the vessel radius near the bulge transitions.")
