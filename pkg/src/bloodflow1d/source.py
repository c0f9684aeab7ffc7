"""Source-term discretizations.

The geometry source k A/(rho sqrt(pi)) d(sqrt(A0))/dx is split into

    S1 = k/(rho sqrt(pi)) (A - A0) d(sqrt(A0))/dx,
    S2 = k/(3 rho sqrt(pi)) d(A0^(3/2))/dx,

and each derivative is evaluated with the *frozen* linear operator obtained
from the flux reconstruction: half with the plus-part coefficient rows, half
with the minus-part rows, at both neighboring interfaces.  Because the
frozen operator is linear and identical to the one applied to the flux, the
flux gradient and S2 cancel to round-off on the rest state A = A0, Q = 0.

This module holds the frozen-operator assembly and the pointwise sources;
the production sweep lives in the integrator, which shares its coefficient
rows with the flux reconstruction by construction.
"""

from __future__ import annotations

import numpy as np

# Seven-point central first-derivative row (units of 1/dx), offsets -3..3.
# This is what the frozen operator collapses to when every nonlinear weight
# equals its linear value; it is also the "straightforward" derivative used
# by the non-well-balanced source.
CENTRAL7 = np.array([-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0,
                     3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0])


def assemble_frozen_operator(plus_lo, plus_hi, minus_lo, minus_hi, dx: float):
    """Per-node 7-point derivative row from four interface coefficient rows.

    Arguments are combined 5-point reconstruction rows in window (ascending
    x) order: plus/minus parts at the interfaces j-1/2 (`lo`) and j+1/2
    (`hi`).  Leading axes broadcast, the last axis must have length 5.
    Returns the row over node offsets j-3 .. j+3 such that

        D(g)_j = sum_o beta[o] g_{j+o}

    is a consistent first-derivative approximation (rows sum to 0, exact on
    linear data).
    """
    plus_lo = np.asarray(plus_lo, dtype=float)
    plus_hi = np.asarray(plus_hi, dtype=float)
    minus_lo = np.asarray(minus_lo, dtype=float)
    minus_hi = np.asarray(minus_hi, dtype=float)
    beta = np.zeros(plus_hi.shape[:-1] + (7,))
    # plus windows: hi spans offsets -2..2, lo spans -3..1
    beta[..., 1:6] += plus_hi
    beta[..., 0:5] -= plus_lo
    # minus windows: hi spans offsets -1..3, lo spans -2..2
    beta[..., 2:7] += minus_hi
    beta[..., 1:6] -= minus_lo
    beta *= 0.5 / dx
    return beta


def apply_frozen_operator(beta, window7):
    """Contract a 7-point frozen row with nodal samples (last axis of 7)."""
    beta = np.asarray(beta, dtype=float)
    window7 = np.asarray(window7, dtype=float)
    return np.einsum("...o,...o->...", beta, window7)


def central_derivative(values_padded: np.ndarray, n_cells: int, dx: float,
                       ghost_width: int = 3) -> np.ndarray:
    """Seven-point central derivative at the interior nodes.

    Accumulated as antisymmetric pairs so constant data gives exactly zero.
    """
    g = ghost_width
    s = values_padded
    out = np.zeros(n_cells)
    for o in (1, 2, 3):
        out += CENTRAL7[3 + o] * (s[g + o:g + o + n_cells]
                                  - s[g - o:g - o + n_cells])
    return out / dx


def pointwise_source_nonwb(A_interior, dsqrt_a0_interior, kc_full: float):
    """Momentum source k A/(rho sqrt(pi)) * (central derivative of sqrt(A0)).

    `dsqrt_a0_interior` is the precomputed central derivative of sqrt(A0);
    the mass component of the source is zero.
    """
    return kc_full * A_interior * dsqrt_a0_interior


def friction_source(A, Q, cf: float):
    """Linear friction: momentum component -cf Q/A, mass component 0."""
    A = np.asarray(A, dtype=float)
    Q = np.asarray(Q, dtype=float)
    return np.zeros_like(A), -cf * (Q / A)
