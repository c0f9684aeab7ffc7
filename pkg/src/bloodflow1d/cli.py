"""Command-line driver.

Subcommands
-----------
run        integrate a benchmark case and write snapshot CSVs
converge   grid-refinement study of the wave case (L1 errors and orders)
verify-wb  long equilibrium run; reports steady-state preservation errors

Exit codes: 0 success, 1 usage error, 2 runtime failure (blow-up or a
verification miss), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import cases
from .cases import AREA_SCALE, FLOW_SCALE, build_case, convergence_study, error_norms
from .errors import BloodflowError, ConfigurationError, StateError, UsageError
from .integrator import run_until
from .mesh import Grid, SchemeConfig, build_grid

MIN_CELLS = 25

MODES = {"wb": "well_balanced", "nonwb": "non_well_balanced"}


@dataclass
class RunConfig:
    """Parsed command-line request."""

    command: str
    case: str = ""
    cells: int = 0
    mode: str = "wb"
    cf: float = 0.0
    snapshots: tuple = None
    out: str = "out"
    tend: float = None
    levels: tuple = ()
    dt_exponent: float = 0.75
    reference: str = "exact"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    p = _Parser(prog="bloodflow1d",
                description="1D blood-flow WENO solver (well-balanced)")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="integrate one benchmark case")
    run.add_argument("--case", required=True)
    run.add_argument("--cells", type=int, required=True)
    run.add_argument("--mode", choices=sorted(MODES), default="wb")
    run.add_argument("--cf", type=float, default=0.0,
                     help="friction coefficient in SI m^2/s (damping case)")
    run.add_argument("--snapshots", default=None,
                     help="comma-separated output times (default: case times)")
    run.add_argument("--out", default="out")

    conv = sub.add_parser("converge", help="grid-refinement error study")
    conv.add_argument("--case", default="wave")
    conv.add_argument("--levels", default="25,50,100,200,400,800,1600")
    conv.add_argument("--mode", choices=sorted(MODES), default="wb")
    conv.add_argument("--dt-exponent", type=float, default=0.75)
    conv.add_argument("--reference", default="exact",
                      help='"exact", "pairwise", or "fine:<N>"')
    conv.add_argument("--out", default="out")

    wb = sub.add_parser("verify-wb", help="steady-state preservation check")
    wb.add_argument("--cells", type=int, default=200)
    wb.add_argument("--tend", type=float, default=5.0)
    wb.add_argument("--mode", choices=sorted(MODES), default="wb")
    wb.add_argument("--out", default=None)
    return p


def parse_cli(argv) -> RunConfig:
    """Parse argv (no program name) into a RunConfig; raises UsageError."""
    ns = _build_parser().parse_args(argv)
    rc = RunConfig(command=ns.command)
    if ns.command == "run":
        if ns.case not in cases.CASE_NAMES:
            raise UsageError(f"unknown case {ns.case!r}")
        if ns.cells < MIN_CELLS:
            raise UsageError(f"--cells must be at least {MIN_CELLS}")
        snaps = None
        if ns.snapshots is not None:
            try:
                snaps = tuple(float(s) for s in ns.snapshots.split(",") if s)
            except ValueError as exc:
                raise UsageError(f"bad --snapshots list: {exc}") from exc
        rc.case, rc.cells, rc.mode = ns.case, ns.cells, ns.mode
        rc.cf, rc.snapshots, rc.out = ns.cf, snaps, ns.out
    elif ns.command == "converge":
        if ns.case not in cases.CASE_NAMES:
            raise UsageError(f"unknown case {ns.case!r}")
        try:
            levels = tuple(int(s) for s in ns.levels.split(",") if s)
        except ValueError as exc:
            raise UsageError(f"bad --levels list: {exc}") from exc
        if len(levels) < 2 or any(n < MIN_CELLS for n in levels):
            raise UsageError("need at least two levels of >= 25 cells")
        rc.case, rc.levels, rc.mode = ns.case, levels, ns.mode
        rc.dt_exponent, rc.reference, rc.out = ns.dt_exponent, ns.reference, ns.out
    else:
        if ns.cells < MIN_CELLS:
            raise UsageError(f"--cells must be at least {MIN_CELLS}")
        rc.cells, rc.tend, rc.mode, rc.out = ns.cells, ns.tend, ns.mode, ns.out
    return rc


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def write_snapshot(A, Q, grid: Grid, geom, t: float, path,
                   case: str = "", mode: str = "", cfl: float = 0.6):
    """Write one snapshot as CSV (SI units), gnuplot-friendly '#' header."""
    x = grid.x_interior()
    s = grid.interior()
    a_si = np.asarray(A) / AREA_SCALE
    q_si = np.asarray(Q) / FLOW_SCALE
    r_si = np.sqrt(a_si / np.pi)
    u = np.asarray(Q) / np.asarray(A)
    a0_si = geom.A0[s] / AREA_SCALE
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [
        f"# case: {case}",
        f"# n_cells: {grid.n_cells}",
        f"# t: {_fmt(t)}",
        f"# mode: {mode}",
        f"# scheme: weno5 characteristic LF-split + ssp-rk3, cfl={cfl}",
        "# columns: x[m],A[m^2],Q[m^3/s],R[m],u[m/s],A0[m^2]",
        "x,A,Q,R,u,A0",
    ]
    for j in range(grid.n_cells):
        lines.append(",".join(_fmt(v) for v in
                              (x[j], a_si[j], q_si[j], r_si[j], u[j], a0_si[j])))
    path.write_text("\n".join(lines) + "\n")
    return path


def read_snapshot(path):
    """Read a snapshot CSV back into a dict of column arrays."""
    names = None
    rows = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        if names is None:
            names = line.split(",")
            continue
        rows.append([float(v) for v in line.split(",")])
    data = np.array(rows)
    return {name: data[:, i] for i, name in enumerate(names)}


def write_convergence_table(result, path, note: str = ""):
    """CSV with columns N, L1_A, order_A, L1_Q, order_Q (first orders empty)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {result.dt_note}"]
    if note:
        lines.append(f"# {note}")
    lines.append("N,L1_A,order_A,L1_Q,order_Q")
    for i, n in enumerate(result.n_list):
        oa = f"{result.orders_a[i - 1]:.2f}" if i else ""
        oq = f"{result.orders_q[i - 1]:.2f}" if i else ""
        lines.append(f"{n},{_fmt(result.l1_a[i])},{oa},{_fmt(result.l1_q[i])},{oq}")
    path.write_text("\n".join(lines) + "\n")
    return path


def _cmd_run(rc: RunConfig) -> int:
    case = build_case(rc.case, cf=rc.cf)
    config = SchemeConfig(mode=MODES[rc.mode])
    grid = build_grid(case.x_min, case.x_max, rc.cells)
    if rc.snapshots is not None:
        snaps = rc.snapshots
        t_end = max(snaps) if snaps else case.t_end
    else:
        snaps = case.snapshots
        t_end = case.t_end
    res = run_until(case, grid, config, t_end=t_end, snapshot_times=snaps)
    out = Path(rc.out)
    for t, (A, Q) in sorted(res.snapshots.items()):
        name = f"{rc.case}_N{rc.cells}_t{t:g}_{rc.mode}.csv"
        p = write_snapshot(A, Q, grid, res.geom, t, out / name,
                           case=rc.case, mode=MODES[rc.mode], cfl=config.cfl)
        print(f"wrote {p}")
    dts = [rec[2] for rec in res.log]
    if dts:
        print(f"{rc.case}: {len(res.log)} steps to t={res.t:g}, "
              f"dt in [{min(dts):.3e}, {max(dts):.3e}]")
    else:
        print(f"{rc.case}: 0 steps (t_end = {res.t:g})")
    return 0


def _cmd_converge(rc: RunConfig) -> int:
    case = build_case(rc.case)
    config = SchemeConfig(mode=MODES[rc.mode])
    result = convergence_study(case, rc.levels, config,
                               dt_exponent=rc.dt_exponent,
                               reference=rc.reference)
    print(f"# {result.dt_note}")
    print(f"{'N':>6} {'L1_A':>13} {'ord_A':>6} {'L1_Q':>13} {'ord_Q':>6}")
    for i, n in enumerate(result.n_list):
        oa = f"{result.orders_a[i - 1]:6.2f}" if i else "      "
        oq = f"{result.orders_q[i - 1]:6.2f}" if i else "      "
        print(f"{n:6d} {result.l1_a[i]:13.4e} {oa} {result.l1_q[i]:13.4e} {oq}")
    p = write_convergence_table(result, Path(rc.out) / f"{rc.case}_convergence.csv")
    print(f"wrote {p}")
    return 0


def _cmd_verify_wb(rc: RunConfig) -> int:
    case = build_case("eternal_rest")
    config = SchemeConfig(mode=MODES[rc.mode])
    grid = build_grid(case.x_min, case.x_max, rc.cells)
    res = run_until(case, grid, config, t_end=rc.tend, snapshot_times=())
    s = grid.interior()
    ref = {"A": res.geom.A0[s], "Q": np.zeros(grid.n_cells)}
    rep = error_norms({"A": res.A, "Q": res.Q}, ref, grid)
    r_num = np.sqrt(res.A / np.pi)
    r0 = np.sqrt(res.geom.A0[s] / np.pi)
    max_dr_si = float(np.max(np.abs(r_num - r0))) / cases.RADIUS_SCALE
    print(f"steady-state preservation after t={rc.tend:g} s on {rc.cells} cells "
          f"({config.mode}, {len(res.log)} steps):")
    print(f"  L1(A)   = {rep.l1['A']:.3e}   L1(Q)   = {rep.l1['Q']:.3e}")
    print(f"  Linf(A) = {rep.linf['A']:.3e}   Linf(Q) = {rep.linf['Q']:.3e}")
    print(f"  max|R - R0| = {max_dr_si:.3e} m")
    if rc.out:
        p = write_snapshot(res.A, res.Q, grid, res.geom, res.t,
                           Path(rc.out) / f"eternal_rest_N{rc.cells}_t{rc.tend:g}_{rc.mode}.csv",
                           case="eternal_rest", mode=config.mode, cfl=config.cfl)
        print(f"wrote {p}")
    tol = 1e-12
    ok = all(v <= tol for v in (*rep.l1.values(), *rep.linf.values()))
    print(f"well-balanced check ({'PASS' if ok else 'FAIL'}): "
          f"errors {'<=' if ok else '>'} {tol:g}")
    return 0 if ok else 2


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        rc = parse_cli(argv)
        if rc.command == "run":
            return _cmd_run(rc)
        if rc.command == "converge":
            return _cmd_converge(rc)
        return _cmd_verify_wb(rc)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (ConfigurationError, StateError, BloodflowError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
