"""Uniform periodic grids, sampled fields, and the centered discrete Fourier transform.

The continuum convention throughout the package is the unitary transform

    f_hat(xi) = int f(x) exp(-2*pi*i*x.xi) dx,

discretized on centered grids x_k = -L/2 + k*dx so that every integral
becomes a Riemann sum with weight dx**d.  The dual grid has spacing
1/L and the duality dx * dxi * n = 1 makes forward/inverse round trips
exact to round-off.
"""

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Grid",
    "SampledField",
    "PhaseSpaceField",
    "make_grid",
    "dft",
]


def _is_power_of_two(n):
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    """Uniform centered periodic grid on [-L/2, L/2)^d, all axes identical."""

    dim: int
    points_per_axis: int
    extent: float

    @property
    def n(self):
        return self.points_per_axis

    @property
    def spacing(self):
        return self.extent / self.points_per_axis

    @property
    def dual_spacing(self):
        return 1.0 / self.extent

    @property
    def shape(self):
        return (self.points_per_axis,) * self.dim

    @property
    def size(self):
        return self.points_per_axis**self.dim

    def axis(self):
        """Sample points of one axis, x_k = (k - n/2) * dx."""
        n = self.points_per_axis
        return (np.arange(n) - n // 2) * self.spacing

    def mesh(self):
        """Open (broadcastable) coordinate arrays, one per axis."""
        return np.meshgrid(*([self.axis()] * self.dim), indexing="ij", sparse=True)

    def squared_radius(self):
        """|x|^2 on the full grid."""
        out = np.zeros(self.shape)
        for c in self.mesh():
            out = out + c**2
        return out

    def dual(self):
        """The frequency-side grid: same n, spacing 1/L (an involution)."""
        return Grid(self.dim, self.points_per_axis, self.points_per_axis / self.extent)

    def offset_of(self, coords, tol=1e-9):
        """Signed per-axis cell counts of an on-grid point (for circular shifts)."""
        coords = np.atleast_1d(np.asarray(coords, dtype=float))
        if coords.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} coordinates, got {coords.shape}")
        ratio = coords / self.spacing
        k = np.rint(ratio)
        if np.max(np.abs(ratio - k)) > tol:
            raise ValueError(f"point {coords} is not on the grid (spacing {self.spacing})")
        return tuple(int(v) for v in k)

    def index_of(self, coords, tol=1e-9):
        """Per-axis array indices of an on-grid point (x_k = (k - n/2) dx)."""
        half = self.points_per_axis // 2
        idx = tuple(k + half for k in self.offset_of(coords, tol))
        if any(k < 0 or k >= self.points_per_axis for k in idx):
            raise ValueError(f"point {coords} lies outside the grid extent {self.extent}")
        return idx


def make_grid(d, n, L):
    """Build a Grid, enforcing d in {1,2,3}, n a power of two >= 8, L > 0."""
    if d not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {d}")
    if not isinstance(n, (int, np.integer)) or not _is_power_of_two(int(n)) or n < 8:
        raise ValueError(f"points_per_axis must be a power of two >= 8, got {n}")
    if not L > 0:
        raise ValueError(f"extent must be positive, got {L}")
    return Grid(int(d), int(n), float(L))


@dataclass
class SampledField:
    """Complex samples of a function on a Grid (values.shape == grid.shape)."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {self.values.shape} does not match grid shape {self.grid.shape}"
            )

    def copy(self):
        return SampledField(self.grid, self.values.copy())

    def norm(self):
        """Discrete L2 norm, sqrt(sum |f|^2 dx^d)."""
        w = self.grid.spacing**self.grid.dim
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * w))

    def inner(self, other):
        """Discrete inner product <f, g> = sum f conj(g) dx^d."""
        if other.grid != self.grid:
            raise ValueError("grid mismatch in inner product")
        w = self.grid.spacing**self.grid.dim
        return complex(np.sum(self.values * np.conj(other.values)) * w)


@dataclass
class PhaseSpaceField:
    """Samples on a position x frequency grid (values.shape == pos.shape + freq.shape)."""

    pos_grid: Grid
    freq_grid: Grid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        expected = self.pos_grid.shape + self.freq_grid.shape
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape}, expected {expected}")

    def cell(self):
        """Phase-space cell volume dx^d * dxi^d."""
        return (
            self.pos_grid.spacing**self.pos_grid.dim
            * self.freq_grid.spacing**self.freq_grid.dim
        )

    def integral(self):
        """Riemann sum of the field over phase space."""
        return complex(np.sum(self.values) * self.cell())

    def inner(self, other):
        if (other.pos_grid, other.freq_grid) != (self.pos_grid, self.freq_grid):
            raise ValueError("grid mismatch in phase-space inner product")
        return complex(np.sum(self.values * np.conj(other.values)) * self.cell())

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.cell()))


def _centered_axes(values, axes, inverse=False):
    """Centered DFT along the given axes (no quadrature weight).

    Computes sum_k v_k exp(-+2*pi*i*(k-n/2)(m-n/2)/n) exactly, via
    fftshift(fft(ifftshift(v))); exact for even n.
    """
    shifted = np.fft.ifftshift(values, axes=axes)
    if inverse:
        out = np.fft.ifftn(shifted, axes=axes)
        out = out * np.prod([values.shape[a] for a in axes])
    else:
        out = np.fft.fftn(shifted, axes=axes)
    return np.fft.fftshift(out, axes=axes)


def dft(fld, direction="forward"):
    """Unitary-convention DFT between a grid and its dual.

    forward approximates f_hat(xi) = int f(x) exp(-2*pi*i*x.xi) dx with
    Riemann weight dx^d; inverse uses the +i kernel and weight dxi^d.
    Both return a field on the dual of the input grid, so
    dft(dft(f), 'inverse') recovers f exactly (up to round-off).
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")
    g = fld.grid
    axes = tuple(range(g.dim))
    weight = g.spacing**g.dim
    out = _centered_axes(fld.values, axes, inverse=(direction == "inverse")) * weight
    return SampledField(g.dual(), out)
