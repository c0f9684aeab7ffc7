"""Uniform 1D mesh, nodal state storage with ghost layers, vessel geometry.

Nodes are cell centers of a uniform mesh: x_j = x_min + (j + 1/2) dx for
j = 0 .. n_cells-1.  Arrays carry `ghost_width` extra nodes on each side so
that the widest reconstruction stencil is always complete.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, StateError

# r + 1 ghost nodes for the widest stencil {x_{j-r-1}, ..., x_{j+r+1}}, r = 2
GHOST_WIDTH = 3


@dataclass(frozen=True)
class Grid:
    """Uniform cell-centered grid."""

    x_min: float
    x_max: float
    n_cells: int
    ghost_width: int = GHOST_WIDTH

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def n_total(self) -> int:
        """Number of nodes including ghosts."""
        return self.n_cells + 2 * self.ghost_width

    def node_x(self, j):
        """Coordinate of interior node j (j may be an array; ghosts via j<0)."""
        return self.x_min + (np.asarray(j, dtype=float) + 0.5) * self.dx

    def x_interior(self) -> np.ndarray:
        return self.node_x(np.arange(self.n_cells))

    def x_padded(self) -> np.ndarray:
        """Coordinates of all nodes, ghosts included."""
        g = self.ghost_width
        return self.node_x(np.arange(-g, self.n_cells + g))

    def interior(self) -> slice:
        return slice(self.ghost_width, self.ghost_width + self.n_cells)


def build_grid(x_min: float, x_max: float, n_cells: int,
               ghost_width: int = GHOST_WIDTH) -> Grid:
    """Construct a uniform grid, validating extent and cell count."""
    if not (np.isfinite(x_min) and np.isfinite(x_max)) or x_max <= x_min:
        raise ConfigurationError(f"invalid domain [{x_min}, {x_max}]")
    if n_cells < 2 * ghost_width:
        raise ConfigurationError(
            f"n_cells={n_cells} too small, need at least {2 * ghost_width}")
    return Grid(float(x_min), float(x_max), int(n_cells), int(ghost_width))


@dataclass
class FieldPair:
    """Nodal conserved variables (A, Q), ghost nodes included.

    A is the cross-sectional area, Q = A*u the discharge.  Mutation of the
    ghost entries is done in place by the boundary-condition filler; share
    read-only otherwise.
    """

    A: np.ndarray
    Q: np.ndarray

    def copy(self) -> "FieldPair":
        return FieldPair(self.A.copy(), self.Q.copy())


@dataclass
class VesselGeometry:
    """Nodal rest geometry and wall/fluid constants.

    A0 is the cross section at rest (A0 = pi R0^2); sqrt_a0 and a0_32 are
    precomputed powers reused by the source discretization so that they are
    bit-identical to what the flux computation produces on the rest state.
    Arrays include ghost nodes (constant extrapolation outside the domain).
    """

    A0: np.ndarray
    sqrt_a0: np.ndarray
    a0_32: np.ndarray
    k: float
    rho: float

    @property
    def kc_full(self) -> float:
        """k / (rho sqrt(pi)) — prefactor of the geometry source."""
        return self.k / (self.rho * np.sqrt(np.pi))

    @property
    def kc_third(self) -> float:
        """k / (3 rho sqrt(pi)) — prefactor of the pressure flux."""
        return self.k / (3.0 * self.rho * np.sqrt(np.pi))

    @property
    def kc_wave(self) -> float:
        """k / (2 rho sqrt(pi)) — c^2 = kc_wave * sqrt(A)."""
        return self.k / (2.0 * self.rho * np.sqrt(np.pi))


def sample_geometry(radius_profile, grid: Grid, k: float, rho: float) -> VesselGeometry:
    """Sample a radius profile at the nodes and precompute geometry powers.

    Ghost nodes take the nearest interior value (constant extrapolation),
    which is exact for profiles that are flat near both boundaries.
    """
    x = grid.x_interior()
    r0 = np.asarray(radius_profile(x), dtype=float)
    if r0.shape != x.shape:
        r0 = np.broadcast_to(r0, x.shape).astype(float)
    if not np.all(np.isfinite(r0)) or np.any(r0 <= 0.0):
        raise ConfigurationError("radius profile must be positive and finite")
    g = grid.ghost_width
    a0 = np.empty(grid.n_total)
    a0[g:g + grid.n_cells] = np.pi * r0 * r0
    a0[:g] = a0[g]
    a0[g + grid.n_cells:] = a0[g + grid.n_cells - 1]
    sqrt_a0 = np.sqrt(a0)
    return VesselGeometry(a0, sqrt_a0, a0 * sqrt_a0, float(k), float(rho))


@dataclass(frozen=True)
class SchemeConfig:
    """Scheme parameters: stencil half-width, WENO regularizer, CFL, mode."""

    r: int = 2
    eps_weno: float = 1e-6
    cfl: float = 0.6
    mode: str = "well_balanced"  # or "non_well_balanced"

    def __post_init__(self):
        if self.r != 2:
            raise ConfigurationError("only r = 2 (fifth order) is supported")
        if not self.eps_weno > 0.0:
            raise ConfigurationError("eps_weno must be positive")
        if not 0.0 < self.cfl <= 1.0:
            raise ConfigurationError("cfl must lie in (0, 1]")
        if self.mode not in ("well_balanced", "non_well_balanced"):
            raise ConfigurationError(f"unknown mode {self.mode!r}")

    @property
    def well_balanced(self) -> bool:
        return self.mode == "well_balanced"


def primitive_from_conserved(A, Q, node_index=None, time=None):
    """(A, Q) -> (R, u) with R = sqrt(A/pi), u = Q/A.  Requires A > 0."""
    A = np.asarray(A, dtype=float)
    Q = np.asarray(Q, dtype=float)
    bad = ~(A > 0.0)
    if np.any(bad):
        where = node_index if node_index is not None else np.flatnonzero(np.atleast_1d(bad))
        raise StateError(f"non-positive area A at node(s) {where}"
                         + (f" at t={time}" if time is not None else ""))
    return np.sqrt(A / np.pi), Q / A


def conserved_from_primitive(R, u):
    """(R, u) -> (A, Q)."""
    R = np.asarray(R, dtype=float)
    A = np.pi * R * R
    return A, A * np.asarray(u, dtype=float)
