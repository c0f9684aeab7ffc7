"""Semi-discrete right-hand side and SSP-RK3 time integration.

The spatial operator at each interior node is

    -(fhat_{j+1/2} - fhat_{j-1/2}) / dx  +  source_j,

with interface fluxes from the characteristic-wise WENO reconstruction of
the split flux.  The source derivatives reuse, per interface and per
characteristic field, the exact coefficient rows the flux reconstruction
produced (the frozen operator), projected with the same eigenvector
matrices.  On the rest state the momentum flux is a pointwise multiple of
the source grid function, every viscosity term is exactly zero, and the two
hat values agree bitwise, so the assembled RHS is exactly zero: the
equilibrium is a fixed point of the fully discrete scheme.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import as_strided

from .boundaries import Transmissive, fill_ghosts
from .errors import BlowUpError, StateError
from .mesh import FieldPair, Grid, SchemeConfig, VesselGeometry, sample_geometry
from .source import central_derivative, pointwise_source_nonwb
from .weno import DEFAULT_TABLES, apply_rows, make_rows_workspace, rows_into


@dataclass
class RhsEvaluation:
    """Nodal tendencies plus the admissible CFL step for this state."""

    dA_dt: np.ndarray
    dQ_dt: np.ndarray
    dt_max: float


def _window_view(buf: np.ndarray, n_faces: int) -> np.ndarray:
    """(6, n_faces) view of a padded buffer; row i is buf[i:i+n_faces]."""
    step = buf.itemsize
    return as_strided(buf, shape=(6, n_faces), strides=(step, step))


class RhsEvaluator:
    """Callable computing (dA/dt, dQ/dt) at the interior nodes.

    Owns padded scratch state and preallocated sweep buffers; each call
    copies the interior values in, fills the ghost nodes for the stage
    time, and runs one vectorized pass over the n_cells + 1 interfaces.
    """

    def __init__(self, grid: Grid, geom: VesselGeometry, config: SchemeConfig,
                 bc_left=Transmissive(), bc_right=Transmissive(),
                 friction_cf: float = 0.0):
        if grid.ghost_width != 3:
            raise StateError("fifth-order stencils need ghost_width = 3")
        self.grid = grid
        self.geom = geom
        self.config = config
        self.bc_left = bc_left
        self.bc_right = bc_right
        self.friction_cf = float(friction_cf)
        self.dx = grid.dx
        n = grid.n_cells
        nf = n + 1
        m = grid.n_total
        self.n = n
        self.kc3 = geom.kc_third
        self.kcw = geom.kc_wave
        self.kc_full = geom.kc_full

        self.pad = FieldPair(np.empty(m), np.empty(m))
        self._u = np.empty(m)
        self._sqrtA = np.empty(m)
        self._f2 = np.empty(m)
        self._v1 = np.empty(m)
        self._tmp_m = np.empty(m)
        # fixed window views into the scratch buffers (rows = offsets -2..3)
        self._wQ = _window_view(self.pad.Q, nf)
        self._wF2 = _window_view(self._f2, nf)
        self._wV1 = _window_view(self._v1, nf)
        self._ft1 = np.empty((6, nf))
        self._ft2 = np.empty((6, nf))
        self._vt1 = np.empty((6, nf))
        self._vt2 = np.empty((6, nf))
        self._av1 = np.empty((6, nf))
        self._av2 = np.empty((6, nf))
        self._t6 = np.empty((6, nf))
        # axis 1 = quantity (flux, source g1, source s2), axis 2 = split
        # slot (plus f1, plus f2, minus f1, minus f2); zeros keep the source
        # quantities inert in non-well-balanced mode
        self._big = np.zeros((5, 3, 4, nf))
        self._rows = np.empty((5, 4, nf))
        self._rows_work = make_rows_workspace((4, nf))
        self._st1 = np.empty((6, nf))
        self._st2 = np.empty((6, nf))

        # time-independent source grid functions; press0 carries the
        # pressure-flux prefactor so that on A == A0 it is bit-identical to
        # the nodal momentum flux.
        self.press0 = self.kc3 * geom.a0_32
        self._wG1 = _window_view(geom.sqrt_a0, nf)
        self._wS2 = _window_view(self.press0, nf)
        self.dsqrt_a0 = central_derivative(geom.sqrt_a0, n, self.dx,
                                           grid.ghost_width)
        self.last_alphas = (0.0, 0.0)

    def max_speed(self, A_int, Q_int) -> float:
        """max_j |u_j| + c_j over the interior nodes."""
        c = np.sqrt(self.kcw * np.sqrt(A_int))
        return float(np.max(np.abs(Q_int / A_int) + c))

    def __call__(self, A_int, Q_int, t: float):
        dA, dQ, _ = self._sweep(A_int, Q_int, t, want_parts=False)
        return dA, dQ

    def evaluate_parts(self, A_int, Q_int, t: float) -> dict:
        """Full sweep returning internals (rows, hats, projections) for tests."""
        _, _, parts = self._sweep(A_int, Q_int, t, want_parts=True)
        return parts

    def _sweep(self, A_int, Q_int, t, want_parts):
        g = self.grid.ghost_width
        n = self.n
        dx = self.dx
        A, Q = self.pad.A, self.pad.Q
        A[g:g + n] = A_int
        Q[g:g + n] = Q_int
        fill_ghosts(self.pad, self.bc_left, self.bc_right, self.geom,
                    self.grid, t)
        if not np.min(A) > 0.0:
            raise StateError(f"non-positive area in stencil at t={t}")

        u = np.divide(Q, A, out=self._u)
        sqrtA = np.sqrt(A, out=self._sqrtA)
        f2 = np.multiply(Q, u, out=self._f2)
        tmp = np.multiply(A, sqrtA, out=self._tmp_m)
        tmp *= self.kc3
        f2 += tmp
        wb = self.config.well_balanced
        if wb:
            v1 = np.subtract(A, self.geom.A0, out=self._v1)
        else:
            v1 = self._v1
            v1[:] = A

        ui = u[g:g + n]
        ci = np.sqrt(self.kcw * sqrtA[g:g + n])
        alpha1 = float(np.max(np.abs(ui - ci)))
        alpha2 = float(np.max(np.abs(ui + ci)))
        self.last_alphas = (alpha1, alpha2)

        # interface states (arithmetic averages) and eigen data
        Aface = 0.5 * (A[g - 1:g + n] + A[g:g + n + 1])
        Qface = 0.5 * (Q[g - 1:g + n] + Q[g:g + n + 1])
        uf = Qface / Aface
        cf = np.sqrt(self.kcw * np.sqrt(Aface))
        lam1 = uf - cf
        lam2 = uf + cf
        inv2c = 0.5 / cf
        L11 = lam2 * inv2c
        L12 = -inv2c
        L21 = -(lam1 * inv2c)
        L22 = inv2c

        # characteristic projections of the flux and viscosity vectors on
        # the 6-point windows (rows = node offsets -2..3 from the left node)
        t6 = self._t6
        ft1 = np.multiply(L11, self._wQ, out=self._ft1)
        ft1 += np.multiply(L12, self._wF2, out=t6)
        ft2 = np.multiply(L21, self._wQ, out=self._ft2)
        ft2 += np.multiply(L22, self._wF2, out=t6)
        vt1 = np.multiply(L11, self._wV1, out=self._vt1)
        vt1 += np.multiply(L12, self._wQ, out=t6)
        vt2 = np.multiply(L21, self._wV1, out=self._vt2)
        vt2 += np.multiply(L22, self._wQ, out=t6)
        av1 = np.multiply(alpha1, vt1, out=self._av1)
        av2 = np.multiply(alpha2, vt2, out=self._av2)

        # split windows: slots 0/1 = plus part fields 1/2 (offsets -2..2),
        # slots 2/3 = minus part (offsets -1..3, mirrored for reconstruction);
        # the last slot axis stacks the flux with the two source functions so
        # one contraction with the frozen rows serves all three.
        big = self._big
        flux = big[:, 0]
        np.add(ft1[0:5], av1[0:5], out=flux[:, 0])
        np.add(ft2[0:5], av2[0:5], out=flux[:, 1])
        np.subtract(ft1[5:0:-1], av1[5:0:-1], out=flux[:, 2])
        np.subtract(ft2[5:0:-1], av2[5:0:-1], out=flux[:, 3])
        if wb:
            st1 = np.multiply(L12, self._wG1, out=self._st1)
            st2 = np.multiply(L22, self._wG1, out=self._st2)
            sg1 = big[:, 1]
            sg1[:, 0] = st1[0:5]
            sg1[:, 1] = st2[0:5]
            sg1[:, 2] = st1[5:0:-1]
            sg1[:, 3] = st2[5:0:-1]
            st1 = np.multiply(L12, self._wS2, out=self._st1)
            st2 = np.multiply(L22, self._wS2, out=self._st2)
            ss2 = big[:, 2]
            ss2[:, 0] = st1[0:5]
            ss2[:, 1] = st2[0:5]
            ss2[:, 2] = st1[5:0:-1]
            ss2[:, 3] = st2[5:0:-1]
            big *= 0.5
        else:
            flux *= 0.5

        rows = self._rows
        weights = rows_into(flux, rows, DEFAULT_TABLES,
                            self.config.eps_weno, work=self._rows_work)
        vals = apply_rows(rows[:, None], big)  # (3, 4, nf)
        fc1 = vals[0, 0] + vals[0, 2]
        fc2 = vals[0, 1] + vals[0, 3]
        fhat1 = fc1 + fc2
        fhat2 = lam1 * fc1 + lam2 * fc2

        dA = (fhat1[:-1] - fhat1[1:]) / dx
        dQ = (fhat2[:-1] - fhat2[1:]) / dx

        if wb:
            sc1 = vals[1, 0] + vals[1, 2]
            sc2 = vals[1, 1] + vals[1, 3]
            g1mom = lam1 * sc1 + lam2 * sc2
            sc1 = vals[2, 0] + vals[2, 2]
            sc2 = vals[2, 1] + vals[2, 3]
            s2mom = lam1 * sc1 + lam2 * sc2
            d_g1 = (g1mom[1:] - g1mom[:-1]) / dx
            d_s2 = (s2mom[1:] - s2mom[:-1]) / dx
            a0i = self.geom.A0[g:g + n]
            src = self.kc_full * (A[g:g + n] - a0i) * d_g1 + d_s2
        else:
            src = pointwise_source_nonwb(A[g:g + n], self.dsqrt_a0,
                                         self.kc_full)
        dQ = dQ + src
        if self.friction_cf != 0.0:
            dQ = dQ + (-self.friction_cf) * ui

        if not want_parts:
            return dA, dQ, None
        parts = {
            "fhat1": fhat1, "fhat2": fhat2, "rows": rows.copy(),
            "weights": np.stack([w.copy() for w in weights]),
            "lam1": lam1, "lam2": lam2, "L11": L11, "L12": L12, "L21": L21,
            "L22": L22, "alphas": (alpha1, alpha2), "dA": dA, "dQ": dQ,
            "src": src,
        }
        if wb:
            parts["g1mom"] = g1mom
            parts["s2mom"] = s2mom
        return dA, dQ, parts

def compute_dt(A_int, Q_int, geom: VesselGeometry, grid: Grid,
               cfl: float) -> float:
    """CFL step: dt = cfl dx / max_j(|u_j| + c_j)."""
    A = np.asarray(A_int, dtype=float)
    if np.any(~(A > 0.0)):
        raise StateError("compute_dt requires A > 0")
    c = np.sqrt(geom.kc_wave * np.sqrt(A))
    smax = float(np.max(np.abs(np.asarray(Q_int) / A) + c))
    return cfl * grid.dx / smax


def semidiscrete_rhs(state: FieldPair, geom: VesselGeometry, grid: Grid,
                     config: SchemeConfig, bc_left, bc_right, t: float,
                     friction_cf: float = 0.0) -> RhsEvaluation:
    """One RHS evaluation of a padded state (one-shot convenience API)."""
    g = grid.ghost_width
    n = grid.n_cells
    ev = RhsEvaluator(grid, geom, config, bc_left, bc_right, friction_cf)
    A_int = state.A[g:g + n]
    Q_int = state.Q[g:g + n]
    dA, dQ = ev(A_int, Q_int, t)
    return RhsEvaluation(dA, dQ, config.cfl * grid.dx / ev.max_speed(A_int, Q_int))


def rk3_step(A, Q, t, dt, rhs):
    """One three-stage SSP Runge-Kutta step.

    Stages are written incrementally so that a state with identically zero
    tendency is reproduced bit-for-bit.  With exact (rational) inputs the
    update equals the classical convex form
        U1 = U + dt F(U)
        U2 = 3/4 U + 1/4 (U1 + dt F(U1))
        U^{n+1} = 1/3 U + 2/3 (U2 + dt F(U2)).
    """
    k1a, k1q = rhs(A, Q, t)
    A1 = A + dt * k1a
    Q1 = Q + dt * k1q
    k2a, k2q = rhs(A1, Q1, t + dt)
    A2 = A + (A1 - A + dt * k2a) / 4
    Q2 = Q + (Q1 - Q + dt * k2q) / 4
    k3a, k3q = rhs(A2, Q2, t + dt / 2)
    return (A + 2 * (A2 - A + dt * k3a) / 3,
            Q + 2 * (Q2 - Q + dt * k3q) / 3)


@dataclass
class RunResult:
    """Final state plus the per-step log and any requested snapshots."""

    grid: Grid
    geom: VesselGeometry
    config: SchemeConfig
    case: object
    t: float
    A: np.ndarray
    Q: np.ndarray
    snapshots: dict = field(default_factory=dict)
    log: list = field(default_factory=list)
    dt_note: str = ""


def run_until(case, grid: Grid, config: SchemeConfig, t_end: float = None,
              snapshot_times=None, dt_factor: float = 1.0) -> RunResult:
    """Integrate a benchmark case to t_end with CFL-limited RK3 steps.

    The step is clipped so snapshot times and t_end are hit exactly.
    dt_factor < 1 shrinks the CFL step (used by accuracy studies to keep
    temporal error below spatial error); the choice is recorded in dt_note.
    """
    t_end = float(case.t_end if t_end is None else t_end)
    wanted = case.snapshots if snapshot_times is None else snapshot_times
    snaps = sorted({float(s) for s in wanted if 0.0 <= float(s) <= t_end})

    geom = sample_geometry(case.radius_profile, grid, case.k, case.rho)
    A, Q = case.initial_state(grid, geom)
    A = np.array(A, dtype=float)
    Q = np.array(Q, dtype=float)
    if not np.all(A > 0.0):
        raise StateError("initial area must be positive")
    bc_left, bc_right = case.boundary_conditions(geom, grid)
    ev = RhsEvaluator(grid, geom, config, bc_left, bc_right,
                      friction_cf=case.friction_cf)

    result = RunResult(grid, geom, config, case, 0.0, A, Q,
                       dt_note=f"dt = {config.cfl}*dx/max|u|+c"
                               + (f" * {dt_factor:.6g}" if dt_factor != 1.0 else ""))
    if snaps and snaps[0] == 0.0:
        result.snapshots[0.0] = (A.copy(), Q.copy())
        snaps = snaps[1:]

    t = 0.0
    step = 0
    tiny = 1e-13 * max(1.0, t_end)
    for target in sorted(set(snaps + [t_end])):
        while t < target - tiny:
            smax = ev.max_speed(A, Q)
            dt = config.cfl * grid.dx / smax * dt_factor
            if not dt > 0.0 or not np.isfinite(dt):
                raise BlowUpError(f"non-positive or non-finite time step at "
                                  f"t={t:g}", step=step, time=t)
            hit = t + dt >= target - tiny
            if hit:
                dt = target - t
            A, Q = rk3_step(A, Q, t, dt, ev)
            step += 1
            if not (np.all(np.isfinite(A)) and np.all(np.isfinite(Q))):
                raise BlowUpError(f"non-finite state after step {step}",
                                  step=step, time=t + dt)
            if not np.all(A > 0.0):
                raise BlowUpError(f"vessel collapsed (A <= 0) after step {step}",
                                  step=step, time=t + dt)
            t = target if hit else t + dt
            result.log.append((step, t, dt, smax))
        if target in snaps:
            result.snapshots[target] = (A.copy(), Q.copy())

    result.t = t
    result.A = A
    result.Q = Q
    return result
