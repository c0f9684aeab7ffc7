"""What makes the scheme well balanced: the frozen derivative operator.

The flux reconstruction at each interface produces, per characteristic
field, a 5-point coefficient row.  Differencing the rows of the two
interfaces around a node yields a 7-point linear derivative operator.  The
geometry source applies THAT operator - nonlinear weights and all - to its
own grid functions, so on the rest state flux gradient and source cancel
identically.  This demo pokes at the operator directly.
"""

import numpy as np

import bloodflow1d as bf
from bloodflow1d.source import (
    CENTRAL7,
    apply_frozen_operator,
    assemble_frozen_operator,
)
from bloodflow1d.weno import combined_rows

rng = np.random.default_rng(0)

# 1. on smooth data the nonlinear weights sit near the linear ones and the
#    frozen operator approaches the classical 7-point central derivative
x = 0.3 + 0.05 * np.arange(-3.0, 4.0)
smooth = np.sin(x)
rows = {
    "plus_hi": combined_rows(smooth[1:6])[1],
    "plus_lo": combined_rows(smooth[0:5])[1],
    "minus_hi": combined_rows(smooth[2:7][::-1])[1][::-1],
    "minus_lo": combined_rows(smooth[1:6][::-1])[1][::-1],
}
beta = assemble_frozen_operator(rows["plus_lo"], rows["plus_hi"],
                                rows["minus_lo"], rows["minus_hi"], dx=0.05)
print("frozen row on smooth data:", np.array2string(beta * 0.05, precision=4))
print("linear-weight limit      :", np.array2string(CENTRAL7, precision=4))
print(f"derivative of sin at 0.3 : {apply_frozen_operator(beta, smooth):+.6f} "
      f"(exact {np.cos(0.3):+.6f})")

# 2. the row annihilates constants and reproduces slopes for ANY weights,
#    even frozen from rough data - that is all the balancing needs
rough = rng.normal(size=7)
rows = [combined_rows(rough[1:6])[1], combined_rows(rough[0:5])[1],
        combined_rows(rough[2:7][::-1])[1][::-1],
        combined_rows(rough[1:6][::-1])[1][::-1]]
beta = assemble_frozen_operator(rows[1], rows[0], rows[3], rows[2], dx=0.05)
const = apply_frozen_operator(beta, np.full(7, 9.9))
slope = apply_frozen_operator(beta, 1.0 + 0.05 * np.arange(-3.0, 4.0) * 2.5)
print(f"\nrows frozen from noise:   D(const) = {const:+.2e}, "
      f"D(2.5 x + 1) = {slope:+.9f}")

# 3. the same mechanism inside the solver: an equilibrium state with a
#    bulgy vessel has exactly zero tendencies
case = bf.build_case("eternal_rest")
grid = bf.build_grid(case.x_min, case.x_max, 120)
geom = bf.sample_geometry(case.radius_profile, grid, case.k, case.rho)
A, Q = case.initial_state(grid, geom)
ev = bf.RhsEvaluator(grid, geom, bf.SchemeConfig())
dA, dQ = ev(A, Q, 0.0)
print(f"\nequilibrium tendencies:   max|dA/dt| = {np.max(np.abs(dA)):.1e}, "
      f"max|dQ/dt| = {np.max(np.abs(dQ)):.1e}")
