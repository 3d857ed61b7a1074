"""Cross-module phase-space covariance checks: the fractional transform
against grid rotations, and the Hermite semigroup's intertwining with the
doubled-parameter flow under the sqrt(2) phase-space rescaling pair."""

import numpy as np
import pytest

from phasekit.grids import make_grid
from phasekit.propagators import frft_apply, hermite_apply
from phasekit.transforms import cross_wigner, gaussian_window, tf_shift
from phasekit.grids import _centered_axes


@pytest.fixture(scope="module")
def grid():
    return make_grid(1, 256, 16.0)  # self-dual


@pytest.fixture(scope="module")
def state(grid):
    return tf_shift(gaussian_window(grid).field, (1.0, 0.5))


class TestFrftWignerCovariance:
    def test_quarter_turn(self, grid, state):
        # W(F_(pi/2) u)(x, xi) = Wu(-xi, x) on shared sample points
        W1 = cross_wigner(frft_apply(np.pi / 2.0, state))
        W0 = cross_wigner(state)
        n = grid.points_per_axis
        scale = np.max(np.abs(W0.values))
        checked = 0
        for i in range(n // 2 - 60, n // 2 + 60, 3):
            for m in range(n // 2 - 120, n // 2 + 120, 4):
                if (m - n // 2) % 2:
                    continue
                # position -xi_m has pos index n/2 - (m - n/2)/2;
                # frequency x_i has freq index n/2 + 2 (i - n/2)
                pos_idx = n // 2 - (m - n // 2) // 2
                freq_idx = n // 2 + 2 * (i - n // 2)
                if not (0 <= pos_idx < n and 0 <= freq_idx < n):
                    continue
                assert abs(W1.values[i, m] - W0.values[pos_idx, freq_idx]) <= 1e-8 * scale
                checked += 1
        assert checked > 500

    def test_half_turn(self, grid, state):
        # W(F_pi u)(z) = Wu(-z): exact index reversal on the periodic grid
        W1 = cross_wigner(frft_apply(np.pi, state))
        W0 = cross_wigner(state)
        flipped = np.roll(np.flip(W0.values, axis=(0, 1)), (1, 1), axis=(0, 1))
        assert np.max(np.abs(W1.values - flipped)) <= 1e-8 * np.max(np.abs(W0.values))


def _hermite_along_axis(values, axis, spacing, theta):
    """Dense semigroup quadrature along one axis of a plain array."""
    n = values.shape[axis]
    spec = _centered_axes(values, (axis,)) * spacing
    dual_spacing = 1.0 / (n * spacing)
    x = (np.arange(n) - n // 2) * spacing
    eta = (np.arange(n) - n // 2) * dual_spacing
    ch, th = np.cosh(theta), np.tanh(theta)
    M = np.exp(-np.pi * th * (x[:, None] ** 2 + eta[None, :] ** 2))
    M = M * np.exp(2j * np.pi * np.outer(x, eta) / ch) * (ch**-0.5 * dual_spacing)
    return np.moveaxis(np.tensordot(M, spec, axes=([1], [axis])), 0, axis)


class TestHermiteIntertwining:
    def test_wigner_of_semigroup_is_rescaled_doubled_flow(self, grid, state):
        # |W(R_theta f)| = |T_sqrt2 R_(theta,theta) T_(1/sqrt2) W(f)|:
        # the sqrt(2) rescaling pair is realized by reading the same sample
        # values on axes stretched by sqrt(2), so no interpolation occurs
        theta = 0.6
        lhs = cross_wigner(hermite_apply((theta,), state))
        W0 = cross_wigner(state)
        mid = 2.0**-0.5 * W0.values  # T_(1/sqrt2) on the stretched axes
        pos_h = np.sqrt(2.0) * W0.pos_grid.spacing
        freq_h = np.sqrt(2.0) * W0.freq_grid.spacing
        mid = _hermite_along_axis(mid, 0, pos_h, theta)
        mid = _hermite_along_axis(mid, 1, freq_h, theta)
        rhs = 2.0**0.5 * mid  # T_sqrt2 reads back on the original axes
        scale = np.max(np.abs(lhs.values))
        assert np.max(np.abs(np.abs(rhs) - np.abs(lhs.values))) <= 1e-7 * scale

    def test_gaussian_eigenvalue_through_the_pipeline(self, grid):
        # plain Gaussian input: both sides reduce to exp(-theta) W(g)
        theta = 0.8
        g = gaussian_window(grid).field
        lhs = cross_wigner(hermite_apply((theta,), g))
        W0 = cross_wigner(g)
        assert np.max(np.abs(lhs.values - np.exp(-theta) * W0.values)) <= 1e-9 * np.max(
            np.abs(W0.values)
        )
