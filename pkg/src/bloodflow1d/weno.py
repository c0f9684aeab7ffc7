"""Fifth-order WENO reconstruction of upwind interface values.

The reconstruction follows the classical smoothness-indicator weighting of
three quadratic candidate stencils.  Besides the interface value itself,
every call exposes the *combined coefficient row*: the effective 5-point
linear functional that, frozen, is reused by the well-balanced source
discretization.  All kernels accept windows with arbitrary trailing axes so
the same code path serves single-window queries and whole-grid sweeps.

Window convention for the "plus" (upwind-biased) reconstruction at the
interface x_{j+1/2}: window values (w0..w4) live at nodes x_{j-2} .. x_{j+2},
candidate stencil k uses (w_k, w_{k+1}, w_{k+2}).  The "minus" reconstruction
is the mirror image: feed the window at x_{j-1} .. x_{j+3} reversed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError

# Candidate-stencil interface rows a[k][l] and linear weights C[k] for r = 2.
# Derived from exactness of the cell-average reconstruction on polynomials
# (degree <= 2 per stencil, degree <= 4 for the linear combination); the
# test suite re-derives both tables in exact rational arithmetic.
A_COEFFS = np.array([
    [2.0, -7.0, 11.0],
    [-1.0, 5.0, 2.0],
    [2.0, 5.0, -1.0],
]) / 6.0
LINEAR_WEIGHTS = np.array([0.1, 0.6, 0.3])

EPS_WENO = 1e-6

_C13 = 13.0 / 12.0


@dataclass(frozen=True)
class StencilTables:
    """Constant reconstruction tables: stencil rows and linear weights."""

    a_coeffs: np.ndarray = field(default_factory=lambda: A_COEFFS.copy())
    linear_weights: np.ndarray = field(default_factory=lambda: LINEAR_WEIGHTS.copy())

    def __post_init__(self):
        if not np.allclose(self.a_coeffs.sum(axis=1), 1.0, atol=1e-14):
            raise UsageError("each stencil row must sum to 1")
        if not np.isclose(self.linear_weights.sum(), 1.0, atol=1e-14) or \
                np.any(self.linear_weights <= 0.0):
            raise UsageError("linear weights must be positive and sum to 1")


DEFAULT_TABLES = StencilTables()


@dataclass
class ReconstructionResult:
    """Interface value, nonlinear weights, and the combined 5-point row."""

    value: float
    weights: np.ndarray
    combined_coeffs: np.ndarray


def _check_window(window):
    w = np.asarray(window, dtype=float)
    if w.shape[0] != 5:
        raise UsageError(f"window must hold 2r+1 = 5 values, got {w.shape[0]}")
    return w


def smoothness_indicators(window) -> np.ndarray:
    """Jiang-Shu indicators IS_k of the three candidate stencils.

    Each indicator is the scaled integral of the squared derivatives of the
    stencil's reconstruction polynomial over the center cell; for r = 2 it
    reduces to the familiar two-term quadratic forms below.
    """
    w = _check_window(window)
    d0 = w[1] - w[0]
    d1 = w[2] - w[1]
    d2 = w[3] - w[2]
    d3 = w[4] - w[3]
    # grouped as differences so constant windows give exactly zero
    is0 = _C13 * (d1 - d0) ** 2 + 0.25 * (3.0 * d1 - d0) ** 2
    is1 = _C13 * (d2 - d1) ** 2 + 0.25 * (d2 + d1) ** 2
    is2 = _C13 * (d3 - d2) ** 2 + 0.25 * (3.0 * d2 - d3) ** 2
    return np.stack([is0, is1, is2])


def nonlinear_weights(indicators, tables: StencilTables = DEFAULT_TABLES,
                      eps: float = EPS_WENO) -> np.ndarray:
    """omega_k = alpha_k / sum(alpha), alpha_k = C_k / (eps + IS_k)^2."""
    ind = np.asarray(indicators, dtype=float)
    if ind.shape[0] != 3:
        raise UsageError("expected 3 smoothness indicators")
    c = tables.linear_weights
    t0 = eps + ind[0]
    t1 = eps + ind[1]
    t2 = eps + ind[2]
    a0 = c[0] / (t0 * t0)
    a1 = c[1] / (t1 * t1)
    a2 = c[2] / (t2 * t2)
    inv = 1.0 / (a0 + a1 + a2)
    return np.stack([a0 * inv, a1 * inv, a2 * inv])


def make_rows_workspace(shape):
    """Scratch arrays for rows_into; shape is the trailing window shape."""
    return [np.empty(shape) for _ in range(7)]


def rows_into(window, rows_out, tables: StencilTables = DEFAULT_TABLES,
              eps: float = EPS_WENO, work=None):
    """Fill rows_out (same shape as window) with the combined rows.

    Allocation-light kernel used by the solver sweep; arithmetic is
    expression-for-expression the same as smoothness_indicators and
    nonlinear_weights, so both paths produce identical bits.  Returns the
    three weight arrays.  `work` (from make_rows_workspace) makes repeated
    calls allocation-free.
    """
    if work is None:
        work = make_rows_workspace(window.shape[1:])
    d0, d1, d2, d3, u, v, w = work
    d0 = np.subtract(window[1], window[0], out=d0)
    d1 = np.subtract(window[2], window[1], out=d1)
    d2 = np.subtract(window[3], window[2], out=d2)
    d3 = np.subtract(window[4], window[3], out=d3)
    c = tables.linear_weights
    # is_k = 13/12 (second difference)^2 + 1/4 (biased gradient)^2,
    # then alpha_k = C_k / (eps + is_k)^2, omega_k = alpha_k / sum(alpha)
    t0 = _C13 * (d1 - d0) ** 2 + 0.25 * (3.0 * d1 - d0) ** 2
    t0 += eps
    a0 = np.multiply(t0, t0, out=u)
    a0 = np.divide(c[0], a0, out=a0)
    t1 = _C13 * (d2 - d1) ** 2 + 0.25 * (d2 + d1) ** 2
    t1 += eps
    a1 = np.multiply(t1, t1, out=v)
    a1 = np.divide(c[1], a1, out=a1)
    t2 = _C13 * (d3 - d2) ** 2 + 0.25 * (3.0 * d2 - d3) ** 2
    t2 += eps
    a2 = np.multiply(t2, t2, out=w)
    a2 = np.divide(c[2], a2, out=a2)
    inv = np.add(a0, a1, out=d0)
    inv += a2
    inv = np.divide(1.0, inv, out=inv)
    om0 = np.multiply(a0, inv, out=d1)
    om1 = np.multiply(a1, inv, out=d2)
    om2 = np.multiply(a2, inv, out=d3)
    a = tables.a_coeffs
    np.multiply(om0, a[0, 0], out=rows_out[0])
    np.multiply(om0, a[0, 1], out=rows_out[1])
    rows_out[1] += om1 * a[1, 0]
    np.multiply(om0, a[0, 2], out=rows_out[2])
    rows_out[2] += om1 * a[1, 1]
    rows_out[2] += om2 * a[2, 0]
    np.multiply(om1, a[1, 2], out=rows_out[3])
    rows_out[3] += om2 * a[2, 1]
    np.multiply(om2, a[2, 2], out=rows_out[4])
    return om0, om1, om2


def combined_rows(window, tables: StencilTables = DEFAULT_TABLES,
                  eps: float = EPS_WENO):
    """Nonlinear weights and the combined 5-point coefficient row.

    `window` has shape (5, ...); returns (weights (3, ...), rows (5, ...)).
    The row sums to 1 by construction (each stencil row does).
    """
    w = _check_window(window)
    one_d = w.ndim == 1
    if one_d:
        w = w[:, None]
    rows = np.empty(w.shape)
    om = rows_into(w, rows, tables, eps)
    weights = np.stack(om)
    if one_d:
        return weights[:, 0], rows[:, 0]
    return weights, rows


def apply_rows(rows, window):
    """Fixed-order 5-term contraction sum_l rows[l] * window[l].

    Both the flux reconstruction and the frozen-operator source use this
    exact expression, which keeps the two bit-identical on identical inputs.
    """
    return (rows[0] * window[0] + rows[1] * window[1] + rows[2] * window[2]
            + rows[3] * window[3] + rows[4] * window[4])


def reconstruct_plus(window, tables: StencilTables = DEFAULT_TABLES,
                     eps: float = EPS_WENO) -> ReconstructionResult:
    """Upwind-biased interface value at x_{j+1/2} from nodes x_{j-2}..x_{j+2}."""
    w = _check_window(window)
    om, rows = combined_rows(w, tables, eps)
    return ReconstructionResult(apply_rows(rows, w), om, rows)


def reconstruct_minus(window, tables: StencilTables = DEFAULT_TABLES,
                      eps: float = EPS_WENO) -> ReconstructionResult:
    """Mirror-image interface value at x_{j+1/2} from nodes x_{j-1}..x_{j+3}.

    Identical to reconstruct_plus on the reversed window; the returned
    combined row is given in the original (unreversed) window order.
    """
    w = _check_window(window)
    res = reconstruct_plus(w[::-1], tables, eps)
    return ReconstructionResult(res.value, res.weights, res.combined_coeffs[::-1])
