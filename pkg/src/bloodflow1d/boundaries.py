"""Ghost-node boundary conditions.

Three variants cover all benchmarks: transmissive outflow (zeroth-order
extrapolation), an imposed sinusoidal inflow discharge, and an outflow that
imposes the damped traveling-wave discharge of the friction benchmark at the
ghost coordinates (area is always extrapolated).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .mesh import FieldPair, Grid, VesselGeometry


@dataclass(frozen=True)
class Transmissive:
    """Zeroth-order extrapolation of (A, Q)."""


@dataclass(frozen=True)
class InflowDischarge:
    """Ghost discharge Q_amp sin(omega t); ghost area extrapolated."""

    q_amp: float
    omega: float


@dataclass(frozen=True)
class OutflowDampedWave:
    """Ghost discharge from the damped-wave solution at the ghost nodes.

    Q(x, t) = 0 ahead of the front (k_r x > omega t), else
    Q_amp sin(omega t - k_r x) exp(k_i x).  Area is extrapolated.
    """

    q_amp: float
    omega: float
    k_r: float
    k_i: float
    x_right: float

    def discharge(self, x, t: float):
        x = np.asarray(x, dtype=float)
        q = self.q_amp * np.sin(self.omega * t - self.k_r * x) * np.exp(self.k_i * x)
        return np.where(self.k_r * x > self.omega * t, 0.0, q)


def fill_ghosts(state: FieldPair, bc_left, bc_right, geom: VesselGeometry,
                grid: Grid, t: float) -> FieldPair:
    """Populate the ghost nodes of `state` in place for time t."""
    g = grid.ghost_width
    n = grid.n_cells
    A, Q = state.A, state.Q

    A[:g] = A[g]
    A[g + n:] = A[g + n - 1]
    if isinstance(bc_left, Transmissive):
        Q[:g] = Q[g]
    elif isinstance(bc_left, InflowDischarge):
        Q[:g] = bc_left.q_amp * np.sin(bc_left.omega * t)
    else:
        raise NotImplementedError(f"left boundary {bc_left!r}")

    if isinstance(bc_right, Transmissive):
        Q[g + n:] = Q[g + n - 1]
    elif isinstance(bc_right, OutflowDampedWave):
        xg = grid.node_x(np.arange(n, n + g))
        Q[g + n:] = bc_right.discharge(xg, t)
    else:
        raise NotImplementedError(f"right boundary {bc_right!r}")
    return state
