"""Time-frequency shifts, the short-time Fourier transform, and the
cross-Wigner distribution on sampled fields.

Conventions:

    pi(z) f(t) = exp(2*pi*i*xi0.t) f(t - x0),            z = (x0, xi0)
    V_g f(x, xi) = int f(y) conj(g(y - x)) exp(-2*pi*i*xi.y) dy
    W(f, g)(x, xi) = int f(x + y/2) conj(g(x - y/2)) exp(-2*pi*i*y.xi) dy

The Wigner integral is discretized after the substitution u = y/2,

    W(f, g)(x, xi) = 2^d int f(x + u) conj(g(x - u)) exp(-4*pi*i*u.xi) du,

so only on-grid samples are read; the price is that the returned
frequency grid is refined by 2 (spacing dxi/2).
"""

from dataclasses import dataclass

import numpy as np

from .grids import Grid, PhaseSpaceField, SampledField, _centered_axes

__all__ = [
    "Window",
    "gaussian_window",
    "tf_shift",
    "stft",
    "cross_wigner",
    "wigner_freq_grid",
]


@dataclass
class Window:
    """Analysis window; the gaussian tag marks samples of exp(-pi*|x|^2)."""

    field: SampledField
    analytic_tag: str = "custom"

    def __post_init__(self):
        if self.analytic_tag not in ("gaussian", "custom"):
            raise ValueError(f"unknown window tag {self.analytic_tag!r}")
        if self.analytic_tag == "gaussian":
            ref = np.exp(-np.pi * self.field.grid.squared_radius())
            if np.max(np.abs(self.field.values - ref)) > 1e-12:
                raise ValueError("gaussian-tagged window does not sample exp(-pi*|x|^2)")


def gaussian_window(grid):
    """The canonical window g(x) = exp(-pi*|x|^2) sampled on `grid`."""
    values = np.exp(-np.pi * grid.squared_radius()).astype(complex)
    return Window(SampledField(grid, values), "gaussian")


def _split_point(z, d):
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if z.shape != (2 * d,):
        raise ValueError(f"phase-space point needs {2 * d} coordinates, got {z.shape}")
    return z[:d], z[d:]


def tf_shift(fld, z):
    """Time-frequency shift pi(z) f with z = (x0, xi0).

    x0 must be on-grid (circular translation, no interpolation); xi0 is an
    arbitrary real modulation evaluated pointwise.
    """
    g = fld.grid
    x0, xi0 = _split_point(z, g.dim)
    shifts = g.offset_of(x0)
    out = np.roll(fld.values, shifts, axis=tuple(range(g.dim)))
    phase = np.zeros(g.shape)
    for c, f0 in zip(g.mesh(), xi0):
        phase = phase + f0 * c
    return SampledField(g, out * np.exp(2j * np.pi * phase))


def _window_at(window_values, pos_index, dim):
    """Samples of g(y - x) for the grid point x with per-axis index pos_index."""
    n = window_values.shape[0]
    shifts = tuple((k - n // 2) for k in pos_index)
    return np.roll(window_values, shifts, axis=tuple(range(dim)))


def stft(fld, window, freq_grid=None, positions=None):
    """Short-time Fourier transform V_g f on pos-grid x dual-grid points.

    For each on-grid x the xi-slice is the forward DFT (Riemann weight
    included) of f(.) conj(g(. - x)).  `positions` restricts evaluation to
    the given per-axis index tuples and returns a dict index -> slice;
    otherwise the full PhaseSpaceField is returned.  A custom `freq_grid`
    switches to direct (non-FFT) evaluation on that grid.
    """
    g = fld.grid
    if window.field.grid != g:
        raise ValueError("window and field live on different grids")
    wv = window.field.values
    dual = g.dual()
    weight = g.spacing**g.dim

    if freq_grid is not None and freq_grid != dual:
        kernel = _direct_kernel(g, freq_grid)
    else:
        freq_grid = dual
        kernel = None

    def one_slice(idx):
        prod = fld.values * np.conj(_window_at(wv, idx, g.dim))
        if kernel is None:
            return _centered_axes(prod, tuple(range(g.dim))) * weight
        return np.tensordot(kernel, prod.ravel(), axes=([1], [0])).reshape(freq_grid.shape) * weight

    if positions is not None:
        return {tuple(idx): one_slice(tuple(idx)) for idx in positions}

    out = np.empty(g.shape + freq_grid.shape, dtype=complex)
    for idx in np.ndindex(*g.shape):
        out[idx] = one_slice(idx)
    return PhaseSpaceField(g, freq_grid, out)


def _direct_kernel(grid, freq_grid):
    """exp(-2*pi*i*xi.y) matrix, rows indexed by freq points, cols by grid points."""
    ys = np.stack([c.ravel() for c in np.meshgrid(*([grid.axis()] * grid.dim), indexing="ij")], axis=-1)
    xis = np.stack(
        [c.ravel() for c in np.meshgrid(*([freq_grid.axis()] * freq_grid.dim), indexing="ij")],
        axis=-1,
    )
    return np.exp(-2j * np.pi * (xis @ ys.T))


def wigner_freq_grid(grid):
    """Frequency grid of the discrete Wigner transform: spacing dxi/2."""
    return Grid(grid.dim, grid.points_per_axis, grid.points_per_axis / (2.0 * grid.extent))


def cross_wigner(f, g=None):
    """Cross-Wigner distribution W(f, g) (W(f, f) if g is omitted).

    Returned on pos-grid x refined frequency grid (spacing dxi/2); reads
    wrap periodically, consistent with the torus discretization.
    """
    if g is None:
        g = f
    if g.grid != f.grid:
        raise ValueError("cross_wigner requires both fields on the same grid")
    gr = f.grid
    n, d = gr.points_per_axis, gr.dim

    idx = np.arange(n)
    # index arrays of shape (n,)*2d: first d axes are x, last d are u.
    # Lags x +- u that leave the grid contribute zero (zero extension);
    # periodic reads would plant a spurious image at |x| ~ L/2.
    plus_idx = []
    minus_idx = []
    valid = True
    for a in range(d):
        j = idx.reshape((1,) * a + (n,) + (1,) * (2 * d - a - 1))
        k = idx.reshape((1,) * (d + a) + (n,) + (1,) * (d - a - 1))
        p = j + k - n // 2
        m = j - k + n // 2
        valid = valid & (p >= 0) & (p < n) & (m >= 0) & (m < n)
        plus_idx.append(p % n)
        minus_idx.append(m % n)
    prod = np.where(
        valid, f.values[tuple(plus_idx)] * np.conj(g.values[tuple(minus_idx)]), 0.0
    )

    u_axes = tuple(range(d, 2 * d))
    out = _centered_axes(prod, u_axes) * (2.0 * gr.spacing) ** d
    return PhaseSpaceField(gr, wigner_freq_grid(gr), out)
