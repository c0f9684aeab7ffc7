"""Benchmark case definitions, exact solutions, and error/convergence tools.

Working units
-------------
Cases are defined in a scaled unit system: radii in mm, areas in mm^2,
discharges in 1e-6 m^3/s (mL/s); x, t, u, c stay in meters/seconds.  The
stiffness and friction coefficients are rescaled consistently (k by 1e-3,
C_f by 1e6), which leaves u, c, and all wavenumbers unchanged.  The point of
the scaling is numerical: nodal flux values are then O(1)-O(1e4), so the
absolute WENO regularizer (1e-6) stays far below the smoothness indicators
at discontinuities and the reconstruction keeps its non-oscillatory bias.
Snapshot files convert back to SI on output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .boundaries import InflowDischarge, OutflowDampedWave, Transmissive
from .characteristics import wave_speed
from .errors import UsageError
from .integrator import RunResult, run_until
from .mesh import Grid, SchemeConfig, build_grid

AREA_SCALE = 1e6    # m^2 -> mm^2
FLOW_SCALE = 1e6    # m^3/s -> mL/s
RADIUS_SCALE = 1e3  # m -> mm
K_SCALE = 1e-3      # pairs with AREA_SCALE so u and c are unchanged
CF_SCALE = 1e6      # pairs with FLOW_SCALE in the friction term

RHO_BLOOD = 1060.0  # kg/m^3

CASE_NAMES = ("tourniquet", "wave", "eternal_rest", "pulse_to_expansion",
              "pulse_from_expansion", "wave_damping")


@dataclass(frozen=True)
class CaseSpec:
    """A benchmark definition in working units.

    radius_profile maps x [m] to the rest radius [mm]; initial_state builds
    interior (A, Q) from the grid and sampled geometry; exact, when present,
    maps (x, t) to a dict of reference fields.
    """

    name: str
    x_min: float
    x_max: float
    t_end: float
    snapshots: tuple
    k: float
    rho: float
    radius_profile: object
    initial_state: object
    boundary_conditions: object
    friction_cf: float = 0.0
    exact: object = None
    error_time: float = None
    params: dict = field(default_factory=dict)


def _rest_state(grid, geom):
    """A = A0, Q = 0 from the sampled geometry (bit-identical arrays)."""
    s = grid.interior()
    return geom.A0[s].copy(), np.zeros(grid.n_cells)


def _transmissive_bcs(geom, grid):
    return Transmissive(), Transmissive()


def _case_tourniquet() -> CaseSpec:
    k = 1e7 * K_SCALE
    r_left, r_right = 5.0, 4.0  # mm

    def initial(grid, geom):
        x = grid.x_interior()
        A = np.where(x <= 0.0, math.pi * r_left ** 2, math.pi * r_right ** 2)
        return A, np.zeros(grid.n_cells)

    return CaseSpec(
        name="tourniquet", x_min=-0.04, x_max=0.04, t_end=0.005,
        snapshots=(0.005,), k=k, rho=RHO_BLOOD,
        radius_profile=lambda x: np.full_like(np.asarray(x, dtype=float), r_right),
        initial_state=initial, boundary_conditions=_transmissive_bcs,
        params={"r_left": r_left, "r_right": r_right, "k_si": 1e7},
    )


def _wave_bump(x, length, eps, r0):
    """sin half-wave radius perturbation factor on [0.4 L, 0.6 L]."""
    x = np.asarray(x, dtype=float)
    lo, hi = 0.4 * length, 0.6 * length
    s = np.sin(np.pi * (x - lo) / (0.2 * length))
    return np.where((x >= lo) & (x <= hi), r0 * (1.0 + eps * s), r0)


def _case_wave() -> CaseSpec:
    k = 1e8 * K_SCALE
    r0, eps, length = 4.0, 5e-3, 0.16

    def initial(grid, geom):
        r = _wave_bump(grid.x_interior(), length, eps, r0)
        return np.pi * r * r, np.zeros(grid.n_cells)

    case = CaseSpec(
        name="wave", x_min=0.0, x_max=length, t_end=0.006,
        snapshots=(0.002, 0.004, 0.006), k=k, rho=RHO_BLOOD,
        radius_profile=lambda x: np.full_like(np.asarray(x, dtype=float), r0),
        initial_state=initial, boundary_conditions=_transmissive_bcs,
        error_time=0.004,
        params={"r0": r0, "eps": eps, "length": length, "k_si": 1e8},
    )
    object.__setattr__(case, "exact", lambda x, t: _exact_wave_fields(x, t, case))
    return case


def _case_eternal_rest() -> CaseSpec:
    k = 1e8 * K_SCALE
    r_tilde, dr = 4.0, 1.0  # mm
    length = 0.14
    x1, x2, x3, x4 = 1e-2, 3.05e-2, 4.95e-2, 7e-2

    def radius(x):
        x = np.asarray(x, dtype=float)
        r = np.full_like(x, r_tilde)
        up = (x >= x1) & (x <= x2)
        r = np.where(up, r_tilde + 0.5 * dr * (
            np.sin((x - x1) / (x2 - x1) * np.pi - 0.5 * np.pi) + 1.0), r)
        r = np.where((x > x2) & (x < x3), r_tilde + dr, r)
        down = (x >= x3) & (x <= x4)
        r = np.where(down, r_tilde + 0.5 * dr * (
            np.cos((x - x3) / (x4 - x3) * np.pi) + 1.0), r)
        return r

    return CaseSpec(
        name="eternal_rest", x_min=0.0, x_max=length, t_end=5.0,
        snapshots=(5.0,), k=k, rho=RHO_BLOOD,
        radius_profile=radius, initial_state=_rest_state,
        boundary_conditions=_transmissive_bcs,
        params={"r_tilde": r_tilde, "dr": dr, "length": length,
                "x1": x1, "x2": x2, "x3": x3, "x4": x4, "k_si": 1e8},
    )


def _expansion_radius(x, length, r_right, dr):
    """Wide section, cosine contraction near L/2, narrow section."""
    x = np.asarray(x, dtype=float)
    x1, x2 = 19.0 * length / 40.0, 0.5 * length
    ramp = r_right + 0.5 * dr * (1.0 + np.cos((x - x1) / (x2 - x1) * np.pi))
    r = np.where(x < x1, r_right + dr, np.where(x <= x2, ramp, r_right))
    return r


def _pulse_case(name: str, bump_lo_frac: float, bump_hi_frac: float) -> CaseSpec:
    k = 1e8 * K_SCALE
    r_right, dr, eps, length = 4.0, 1.0, 5e-3, 0.16

    def radius(x):
        return _expansion_radius(x, length, r_right, dr)

    def initial(grid, geom):
        x = grid.x_interior()
        lo, hi = bump_lo_frac * length, bump_hi_frac * length
        s = np.sin(100.0 / (20.0 * length) * np.pi * (x - lo))
        r0 = radius(x)
        r = np.where((x >= lo) & (x <= hi), r0 * (1.0 + eps * s), r0)
        A = np.where((x >= lo) & (x <= hi), np.pi * r * r,
                     geom.A0[grid.interior()])
        return A, np.zeros(grid.n_cells)

    return CaseSpec(
        name=name, x_min=0.0, x_max=length, t_end=0.006,
        snapshots=(0.002, 0.006), k=k, rho=RHO_BLOOD,
        radius_profile=radius, initial_state=initial,
        boundary_conditions=_transmissive_bcs,
        params={"r_right": r_right, "dr": dr, "eps": eps, "length": length,
                "bump": (bump_lo_frac, bump_hi_frac), "k_si": 1e8},
    )


def damping_wavenumbers(omega: float, c0: float, cf: float, a0: float):
    """(k_r, k_i) of the damped inflow wave Q_amp sin(wt - k_r x) e^{k_i x}.

    cf and a0 are in the same unit system (their ratio is what enters).
    """
    mag = (omega ** 4 / c0 ** 4 + (omega * cf / (a0 * c0 * c0)) ** 2) ** 0.25
    phi = 0.5 * math.atan(-cf / (a0 * omega))
    return mag * math.cos(phi), mag * math.sin(phi)


def _case_wave_damping(cf_si: float) -> CaseSpec:
    k = 1e8 * K_SCALE
    r0 = 4.0  # mm
    t_pulse = 0.5
    omega = 2.0 * math.pi / t_pulse
    q_amp = 3.45e-7 * FLOW_SCALE
    cf = cf_si * CF_SCALE
    a0 = math.pi * r0 * r0
    c0 = float(wave_speed(a0, k, RHO_BLOOD))
    k_r, k_i = damping_wavenumbers(omega, c0, cf, a0)

    def bcs(geom, grid):
        return (InflowDischarge(q_amp, omega),
                OutflowDampedWave(q_amp, omega, k_r, k_i, x_right=grid.x_max))

    case = CaseSpec(
        name="wave_damping", x_min=0.0, x_max=3.0, t_end=25.0,
        snapshots=(25.0,), k=k, rho=RHO_BLOOD,
        radius_profile=lambda x: np.full_like(np.asarray(x, dtype=float), r0),
        initial_state=_rest_state, boundary_conditions=bcs,
        friction_cf=cf,
        params={"r0": r0, "t_pulse": t_pulse, "omega": omega, "q_amp": q_amp,
                "cf_si": cf_si, "c0": c0, "k_r": k_r, "k_i": k_i, "k_si": 1e8},
    )
    object.__setattr__(case, "exact",
                       lambda x, t: {"Q": exact_damping_wave(x, t, case)})
    return case


def build_case(name: str, cf: float = 0.0) -> CaseSpec:
    """Construct a benchmark case by name; cf (SI m^2/s) only for damping."""
    if name == "tourniquet":
        return _case_tourniquet()
    if name == "wave":
        return _case_wave()
    if name == "eternal_rest":
        return _case_eternal_rest()
    if name == "pulse_to_expansion":
        return _pulse_case("pulse_to_expansion", 0.65, 0.85)
    if name == "pulse_from_expansion":
        return _pulse_case("pulse_from_expansion", 0.15, 0.35)
    if name == "wave_damping":
        return _case_wave_damping(cf)
    raise UsageError(f"unknown case {name!r}; choose from {CASE_NAMES}")


def exact_wave_solution(x, t: float, case: CaseSpec):
    """Linearized traveling-wave solution (R [mm], u [m/s]) of the wave case.

    R  = R0 + eps/2 [Phi(x - c0 t) + Phi(x + c0 t)]
    u  = -eps/2 (c0/R0) [-Phi(x - c0 t) + Phi(x + c0 t)]

    with Phi the half-sine bump R0 sin(pi (x - 0.4L)/(0.2L)) on
    [0.4L, 0.6L], the unique choice matching the initial radius to first
    order in eps.
    """
    if case.name != "wave":
        raise UsageError("exact_wave_solution applies to the wave case")
    p = case.params
    r0, eps, length = p["r0"], p["eps"], p["length"]
    c0 = float(wave_speed(math.pi * r0 * r0, case.k, case.rho))
    x = np.asarray(x, dtype=float)

    def phi(y):
        y = np.asarray(y, dtype=float)
        s = np.sin(np.pi * (y - 0.4 * length) / (0.2 * length))
        return np.where((y >= 0.4 * length) & (y <= 0.6 * length), r0 * s, 0.0)

    right = phi(x - c0 * t)
    left = phi(x + c0 * t)
    r = r0 + 0.5 * eps * (right + left)
    u = -0.5 * eps * (c0 / r0) * (-right + left)
    return r, u


def _exact_wave_fields(x, t, case):
    r, u = exact_wave_solution(x, t, case)
    a = np.pi * r * r
    return {"A": a, "Q": a * u, "R": r, "u": u}


def exact_damping_wave(x, t: float, case: CaseSpec):
    """Damped-wave discharge Q(x, t); zero ahead of the front k_r x > w t."""
    if case.name != "wave_damping":
        raise UsageError("exact_damping_wave applies to the wave_damping case")
    p = case.params
    x = np.asarray(x, dtype=float)
    q = p["q_amp"] * np.sin(p["omega"] * t - p["k_r"] * x) * np.exp(p["k_i"] * x)
    return np.where(p["k_r"] * x > p["omega"] * t, 0.0, q)


@dataclass
class ErrorReport:
    """L1 (dx-weighted) and Linf error norms per variable."""

    l1: dict
    linf: dict
    n_cells: int


def error_norms(numerical: dict, reference, grid: Grid) -> ErrorReport:
    """Error norms of numerical fields against a reference.

    `reference` is either a dict of nodal arrays or a callable of the node
    coordinates returning one.  Norms: l1 = dx * sum |num - ref|,
    linf = max |num - ref|, per shared variable.
    """
    if callable(reference):
        reference = reference(grid.x_interior())
    l1 = {}
    linf = {}
    for key, num in numerical.items():
        if key not in reference:
            continue
        diff = np.abs(np.asarray(num, dtype=float)
                      - np.asarray(reference[key], dtype=float))
        l1[key] = grid.dx * float(np.sum(diff))
        linf[key] = float(np.max(diff))
    return ErrorReport(l1, linf, grid.n_cells)


def observed_orders(errors):
    """log2 ratios of successive errors (assumes grid halving per level)."""
    out = []
    for a, b in zip(errors[:-1], errors[1:]):
        if a > 0.0 and b > 0.0:
            out.append(math.log2(a / b))
        else:
            out.append(float("nan"))
    return out


@dataclass
class ConvergenceResult:
    """Per-level L1 errors and observed orders for A and Q."""

    n_list: list
    l1_a: list
    l1_q: list
    orders_a: list
    orders_q: list
    dt_note: str


def convergence_study(case: CaseSpec, n_list, config: SchemeConfig,
                      dt_exponent: float = 0.75,
                      reference: str = "exact") -> ConvergenceResult:
    """Grid-refinement study of the L1 errors at case.error_time.

    The time step is shrunk as dt ~ dx^(1+dt_exponent) so temporal error
    decays faster than the fifth-order spatial error.  `reference` picks
    what the errors are measured against:

    * "exact"     the case's exact-solution handle (default),
    * "pairwise"  each level against the next refinement of the same
                  scheme (one extra level 2*max(n_list) is run),
    * "fine:<N>"  one fine run of the same scheme restricted to each level.
    """
    if case.error_time is None:
        raise UsageError(f"case {case.name} has no error-measurement time")
    n_list = sorted(int(n) for n in n_list)
    t_meas = case.error_time
    length = case.x_max - case.x_min
    dx0 = length / min(n_list)

    def level_run(n):
        grid = build_grid(case.x_min, case.x_max, n)
        fac = (grid.dx / dx0) ** dt_exponent
        res = run_until(case, grid, config, t_end=t_meas, snapshot_times=(),
                        dt_factor=fac)
        return grid, {"A": res.A, "Q": res.Q}

    runs = {}
    if reference == "pairwise":
        if any(2 * a != b for a, b in zip(n_list[:-1], n_list[1:])):
            raise UsageError("pairwise referencing needs doubling levels")
        need = n_list + [2 * max(n_list)]
    elif reference.startswith("fine:"):
        need = n_list + [int(reference.split(":", 1)[1])]
    elif reference == "exact":
        if case.exact is None:
            raise UsageError(f"case {case.name} has no exact solution")
        need = list(n_list)
    else:
        raise UsageError(f"unknown reference {reference!r}")
    for n in sorted(set(need)):
        runs[n] = level_run(n)

    l1_a, l1_q = [], []
    for n in n_list:
        grid, fields = runs[n]
        if reference == "exact":
            ref = case.exact(grid.x_interior(), t_meas)
        elif reference == "pairwise":
            ref = {k: restrict_to_coarse(v, n) for k, v in runs[2 * n][1].items()}
        else:
            n_fine = int(reference.split(":", 1)[1])
            ref = {k: restrict_to_coarse(v, n) for k, v in runs[n_fine][1].items()}
        rep = error_norms(fields, ref, grid)
        l1_a.append(rep.l1["A"])
        l1_q.append(rep.l1["Q"])

    note = (f"dt = cfl*dx/smax * (dx/dx_coarsest)^{dt_exponent}; "
            f"reference = {reference}")
    return ConvergenceResult(n_list, l1_a, l1_q, observed_orders(l1_a),
                             observed_orders(l1_q), note)


def restrict_to_coarse(fine_values: np.ndarray, n_coarse: int) -> np.ndarray:
    """Restrict fine-grid nodal values to the coarse cell centers.

    Odd refinement ratios have nested centers (exact restriction); even
    ratios interpolate with a six-point Lagrange rule (degree-5 polynomial,
    symmetric about the midpoint away from the boundaries).
    """
    fine_values = np.asarray(fine_values, dtype=float)
    n_fine = fine_values.shape[0]
    if n_fine % n_coarse:
        raise UsageError("fine cell count must be a multiple of the coarse")
    ratio = n_fine // n_coarse
    if ratio == 1:
        return fine_values.copy()
    if ratio % 2 == 1:
        return fine_values[(ratio - 1) // 2::ratio].copy()
    # fractional fine index of each coarse center, 6-point window around it
    f = ratio * np.arange(n_coarse) + (ratio - 1) / 2.0
    start = np.clip(np.floor(f).astype(int) - 2, 0, n_fine - 6)
    xi = f - start
    weights = np.ones((n_coarse, 6))
    for l in range(6):
        for m in range(6):
            if m != l:
                weights[:, l] *= (xi - m) / (l - m)
    idx = start[:, None] + np.arange(6)[None, :]
    return np.sum(weights * fine_values[idx], axis=1)


def reference_solution(case: CaseSpec, n_fine: int, t: float,
                       config: SchemeConfig) -> RunResult:
    """Fine-grid run used as the reference where no exact solution exists."""
    grid = build_grid(case.x_min, case.x_max, n_fine)
    return run_until(case, grid, config, t_end=t, snapshot_times=())
