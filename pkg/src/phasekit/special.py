"""Scalar special functions used by the closed forms.

Only what the closed-form kernels and bounds actually need: the Bessel
function J0, the error function, and the d-dimensional complex Gaussian
integral

    int exp(-2*pi*rho*|xi|^2 + 2*pi*c.xi) dxi
        = (2*rho)^(-d/2) * exp(pi/(2*rho) * c.c),   Re rho > 0,

with c.c = sum c_k^2 (a bilinear, not Hermitian, square).
"""

import math

import numpy as np

__all__ = ["bessel_j0", "erf", "gaussian_integral"]

# Power series loses ~|z|/2 digits to cancellation; beyond this switch to
# the (spectrally convergent) periodic-trapezoid integral representation.
_SERIES_CUTOFF = 8.0
_QUAD_NODES = 256


def _j0_series(z):
    z2 = 0.25 * z * z
    term = 1.0
    acc = 1.0
    for m in range(1, 200):
        term *= -z2 / (m * m)
        acc += term
        if abs(term) < 1e-18 * max(1.0, abs(acc)):
            break
    return acc


def _j0_integral(z):
    theta = 2.0 * np.pi * (np.arange(_QUAD_NODES) + 0.5) / _QUAD_NODES
    return float(np.mean(np.cos(z * np.cos(theta))))


def bessel_j0(z):
    """J0(z): power series for small |z|, trapezoid quadrature of the
    circle average (1/2pi) int_0^2pi exp(i z cos theta) dtheta beyond."""
    z = float(z)
    if not math.isfinite(z):
        raise ValueError(f"bessel_j0 requires finite input, got {z}")
    if abs(z) <= _SERIES_CUTOFF:
        return _j0_series(z)
    return _j0_integral(z)


def erf(x):
    """Standard error function (IEEE-accurate via the C library)."""
    return math.erf(x)


def gaussian_integral(rho, c, d):
    """Closed form of int exp(-2*pi*rho*|xi|^2 + 2*pi*c.xi) dxi over R^d.

    Principal branch of (2*rho)^(-d/2).  For the propagators in this
    package rho moves along paths staying in the right half-plane, where
    the principal branch is the continuous one.
    """
    rho = complex(rho)
    if not rho.real > 0:
        raise ValueError(f"gaussian_integral requires Re rho > 0, got {rho}")
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    if c.shape != (d,):
        raise ValueError(f"c must have {d} components, got shape {c.shape}")
    c_dot_c = np.sum(c * c)
    return complex((2.0 * rho) ** (-d / 2.0) * np.exp(np.pi * c_dot_c / (2.0 * rho)))
