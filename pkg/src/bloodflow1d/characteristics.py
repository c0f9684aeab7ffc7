"""Physical flux, eigen-structure, and the modified Lax-Friedrichs splitting.

The system is U_t + f(U)_x = S with U = (A, Q) and

    f(U) = (Q, Q^2/A + k/(3 rho sqrt(pi)) A^(3/2)).

Wave speeds are u -+ c with c = sqrt(k sqrt(A) / (2 rho sqrt(pi))).  The
global LF splitting applies per-field viscosity amplitudes to the vector
(A - A0, Q) instead of (A, Q); since A0 is time independent this is still a
valid splitting, and it makes the split flux constant on the rest state,
which is what lets the source discretization cancel it exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import StateError


def physical_flux(A, Q, k: float, rho: float):
    """Flux vector (Q, Q^2/A + k/(3 rho sqrt(pi)) A^(3/2))."""
    A = np.asarray(A, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if np.any(~(A > 0.0)):
        raise StateError("physical_flux requires A > 0")
    kc3 = k / (3.0 * rho * np.sqrt(np.pi))
    return Q, Q * (Q / A) + kc3 * (A * np.sqrt(A))


def wave_speed(A, k: float, rho: float):
    """c = sqrt(k sqrt(A) / (2 rho sqrt(pi))), equal to sqrt(k R / (2 rho))."""
    A = np.asarray(A, dtype=float)
    if np.any(~(A > 0.0)):
        raise StateError("wave_speed requires A > 0")
    kcw = k / (2.0 * rho * np.sqrt(np.pi))
    return np.sqrt(kcw * np.sqrt(A))


@dataclass
class EigenSystem:
    """Eigenvalues and left/right eigenvector matrices of df/dU."""

    lambda1: float
    lambda2: float
    right: np.ndarray
    left: np.ndarray


def eigen_system(A: float, Q: float, k: float, rho: float) -> EigenSystem:
    """Eigen decomposition at a single state, right = [[1, 1], [l1, l2]]."""
    c = float(wave_speed(A, k, rho))
    u = float(Q) / float(A)
    lam1, lam2 = u - c, u + c
    right = np.array([[1.0, 1.0], [lam1, lam2]])
    inv2c = 0.5 / c
    left = np.array([[lam2 * inv2c, -inv2c], [-(lam1 * inv2c), inv2c]])
    return EigenSystem(lam1, lam2, right, left)


@dataclass
class GlobalAlphas:
    """Per-characteristic-field viscosity amplitudes max_j |lambda_i(U_j)|."""

    alpha1: float
    alpha2: float


def global_alphas(A, Q, k: float, rho: float) -> GlobalAlphas:
    """Maxima of |u - c| and |u + c| over the given nodes."""
    A = np.asarray(A, dtype=float)
    Q = np.asarray(Q, dtype=float)
    c = wave_speed(A, k, rho)
    u = Q / A
    return GlobalAlphas(float(np.max(np.abs(u - c))), float(np.max(np.abs(u + c))))


def modified_lf_split(f_char, v_char, alpha: float):
    """Split one characteristic flux component: f± = (f ± alpha v) / 2.

    v_char is the characteristic component of (A - A0, Q) in well-balanced
    mode (of (A, Q) otherwise).  f+ + f- recovers f exactly.
    """
    f_char = np.asarray(f_char, dtype=float)
    v_char = np.asarray(v_char, dtype=float)
    av = alpha * v_char
    return 0.5 * (f_char + av), 0.5 * (f_char - av)
