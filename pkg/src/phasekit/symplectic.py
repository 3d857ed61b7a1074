"""Real and complex symplectic matrix algebra.

2d x 2d block matrices S = [[A, B], [C, D]] acting on phase-space points
(x, xi); S is symplectic when S^T J S = J with the plain (non-conjugate)
transpose, also for complex entries.  Provides the generators used by the
propagator calculus: J, scalings D_E, shears V_Q (real or imaginary),
hyperbolic blocks R_theta of the Hermite semigroup, and phase-space
rotations S_mu of the fractional Fourier transform.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SymplecticMatrix",
    "j_matrix",
    "build_generator",
    "sp_compose",
    "sp_tensor",
    "sp_is_symplectic",
]

_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class SymplecticMatrix:
    """A 2d x 2d complex matrix with block accessors."""

    dim: int
    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        if m.shape != (2 * self.dim, 2 * self.dim):
            raise ValueError(f"expected shape {(2 * self.dim,) * 2}, got {m.shape}")
        object.__setattr__(self, "mat", m)

    @property
    def A(self):
        d = self.dim
        return self.mat[:d, :d]

    @property
    def B(self):
        d = self.dim
        return self.mat[:d, d:]

    @property
    def C(self):
        d = self.dim
        return self.mat[d:, :d]

    @property
    def D(self):
        d = self.dim
        return self.mat[d:, d:]

    def apply(self, z):
        """Apply to a phase-space point (returns a plain array)."""
        z = np.asarray(z, dtype=complex)
        out = self.mat @ z
        if np.max(np.abs(out.imag)) < 1e-14 * max(1.0, np.max(np.abs(out.real))):
            return out.real
        return out

    def inverse(self):
        """Symplectic inverse -J S^T J (exact in exact arithmetic)."""
        J = _j_block(self.dim)
        return SymplecticMatrix(self.dim, -J @ self.mat.T @ J)

    def residual(self):
        J = _j_block(self.dim)
        return float(np.max(np.abs(self.mat.T @ J @ self.mat - J)))


def _j_block(d):
    I = np.eye(d)
    O = np.zeros((d, d))
    return np.block([[O, I], [-I, O]])


def j_matrix(d):
    """The standard symplectic form J = [[0, I], [-I, 0]]."""
    return SymplecticMatrix(d, _j_block(d))


def _blocks(A, B, C, D):
    return np.block([[A, B], [C, D]])


def build_generator(kind, d=1, E=None, Q=None, alpha=None, theta=None, mu=None):
    """Construct one of the standard generators.

    kind: 'J' | 'D_E' (E invertible) | 'V_Q' (Q symmetric) |
          'V_ialpha' (alpha >= 0) | 'R_theta' (theta >= 0, scalar or
          per-axis) | 'S_mu' (rotation angle mu).
    """
    I = np.eye(d)
    O = np.zeros((d, d))
    if kind == "J":
        return j_matrix(d)
    if kind == "D_E":
        E = np.asarray(E, dtype=complex)
        if E.shape != (d, d):
            raise ValueError(f"E must be {d}x{d}")
        if abs(np.linalg.det(E)) < 1e-12:
            raise ValueError("E must be invertible")
        return SymplecticMatrix(d, _blocks(np.linalg.inv(E), O, O, E.T))
    if kind == "V_Q":
        Q = np.asarray(Q, dtype=complex)
        if Q.shape != (d, d) or np.max(np.abs(Q - Q.T)) > 1e-12:
            raise ValueError("Q must be symmetric")
        return SymplecticMatrix(d, _blocks(I, O, Q, I))
    if kind == "V_ialpha":
        if alpha is None or alpha < 0:
            raise ValueError("V_ialpha requires alpha >= 0")
        return SymplecticMatrix(d, _blocks(I, O, 1j * alpha * I, I))
    if kind == "R_theta":
        th = np.broadcast_to(np.asarray(theta, dtype=float), (d,))
        if np.any(th < 0):
            raise ValueError("R_theta requires theta >= 0")
        ch = np.diag(np.cosh(th)).astype(complex)
        sh = np.diag(np.sinh(th)).astype(complex)
        return SymplecticMatrix(d, _blocks(ch, -1j * sh, 1j * sh, ch))
    if kind == "S_mu":
        if mu is None:
            raise ValueError("S_mu requires mu")
        c, s = np.cos(mu), np.sin(mu)
        return SymplecticMatrix(d, _blocks(c * I, s * I, -s * I, c * I))
    raise ValueError(f"unknown generator kind {kind!r}")


def sp_compose(s1, s2):
    """Matrix product S1 S2 (symplectic whenever both factors are)."""
    if s1.dim != s2.dim:
        raise ValueError("dimension mismatch in composition")
    return SymplecticMatrix(s1.dim, s1.mat @ s2.mat)


def sp_tensor(s1, s2):
    """Interleaved tensor: blockwise [[A1,0,B1,0],[0,A2,0,B2],[C1,0,D1,0],[0,C2,0,D2]]."""
    if s1.dim != s2.dim:
        raise ValueError("tensor factors must share the dimension")
    d = s1.dim
    O = np.zeros((d, d))
    top = np.block([[s1.A, O, s1.B, O], [O, s2.A, O, s2.B]])
    bottom = np.block([[s1.C, O, s1.D, O], [O, s2.C, O, s2.D]])
    return SymplecticMatrix(2 * d, np.vstack([top, bottom]))


def sp_is_symplectic(s, tol=_RESIDUAL_TOL):
    """(flag, residual) with residual = max|S^T J S - J|."""
    if isinstance(s, SymplecticMatrix):
        m = s
    else:
        arr = np.asarray(s, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] % 2:
            raise ValueError(f"expected a square 2d x 2d matrix, got {arr.shape}")
        m = SymplecticMatrix(arr.shape[0] // 2, arr)
    r = m.residual()
    return r <= tol, r
