import numpy as np
import pytest

from phasekit.grids import SampledField, dft, make_grid


def gaussian_field(grid, width=1.0):
    return SampledField(grid, np.exp(-np.pi * grid.squared_radius() / width**2))


def random_smooth_field(grid, rng):
    """Band-limited random field: Gaussian envelope times a few low modes."""
    x2 = grid.squared_radius()
    vals = np.zeros(grid.shape, dtype=complex)
    for _ in range(4):
        center = rng.uniform(-1.5, 1.5, size=grid.dim)
        freq = rng.uniform(-2.0, 2.0, size=grid.dim)
        amp = rng.standard_normal() + 1j * rng.standard_normal()
        phase = np.zeros(grid.shape)
        shift2 = np.zeros(grid.shape)
        for c, x0, f0 in zip(grid.mesh(), center, freq):
            phase = phase + f0 * c
            shift2 = shift2 + (c - x0) ** 2
        vals += amp * np.exp(-np.pi * shift2) * np.exp(2j * np.pi * phase)
    del x2
    return SampledField(grid, vals)


class TestMakeGrid:
    def test_basic_1d(self):
        g = make_grid(1, 8, 8.0)
        assert g.spacing == 1.0
        assert g.dual_spacing == 0.125

    def test_basic_2d(self):
        g = make_grid(2, 16, 4.0)
        assert g.spacing == 0.25
        assert g.dual_spacing == 0.25

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            make_grid(1, 7, 8.0)

    def test_rejects_bad_dim_and_extent(self):
        with pytest.raises(ValueError):
            make_grid(4, 8, 8.0)
        with pytest.raises(ValueError):
            make_grid(1, 8, -1.0)
        with pytest.raises(ValueError):
            make_grid(1, 4, 8.0)

    def test_duality_relations(self):
        g = make_grid(1, 64, 12.0)
        assert g.points_per_axis * g.spacing == pytest.approx(g.extent)
        assert g.spacing * g.dual_spacing * g.points_per_axis == pytest.approx(1.0)
        assert g.dual().dual() == g


class TestDft:
    def test_gaussian_is_fixed_point(self):
        g = make_grid(1, 256, 16.0)
        f = gaussian_field(g)
        fh = dft(f, "forward")
        ref = np.exp(-np.pi * fh.grid.squared_radius())
        assert np.max(np.abs(fh.values - ref)) <= 1e-12

    def test_round_trip(self):
        rng = np.random.default_rng(7)
        g = make_grid(1, 128, 10.0)
        f = SampledField(g, rng.standard_normal(g.shape) + 1j * rng.standard_normal(g.shape))
        back = dft(dft(f, "forward"), "inverse")
        assert np.max(np.abs(back.values - f.values)) <= 1e-13 * np.max(np.abs(f.values))

    def test_shift_produces_phase(self):
        # forward transform of g(x - 1) carries exp(-2*pi*i*xi)
        g = make_grid(1, 256, 16.0)
        x = g.axis()
        f = SampledField(g, np.exp(-np.pi * (x - 1.0) ** 2))
        fh = dft(f, "forward")
        xi = fh.grid.axis()
        ref = np.exp(-np.pi * xi**2) * np.exp(-2j * np.pi * xi)
        assert np.max(np.abs(fh.values - ref)) <= 1e-10

    def test_parseval(self):
        rng = np.random.default_rng(3)
        for d, n, L in [(1, 128, 12.0), (2, 32, 8.0)]:
            g = make_grid(d, n, L)
            f = random_smooth_field(g, rng)
            fh = dft(f, "forward")
            assert fh.norm() == pytest.approx(f.norm(), rel=1e-12)

    def test_linearity(self):
        rng = np.random.default_rng(11)
        g = make_grid(1, 64, 8.0)
        f1 = random_smooth_field(g, rng)
        f2 = random_smooth_field(g, rng)
        a, b = 1.3 - 0.2j, -0.7 + 2.1j
        lhs = dft(SampledField(g, a * f1.values + b * f2.values), "forward")
        rhs = a * dft(f1, "forward").values + b * dft(f2, "forward").values
        assert np.max(np.abs(lhs.values - rhs)) <= 1e-12 * np.max(np.abs(rhs))

    def test_round_trip_many_fields(self):
        rng = np.random.default_rng(5)
        g = make_grid(1, 64, 8.0)
        for _ in range(10):
            f = random_smooth_field(g, rng)
            back = dft(dft(f, "forward"), "inverse")
            assert np.max(np.abs(back.values - f.values)) <= 1e-12 * np.max(np.abs(f.values))

    def test_rejects_unknown_direction(self):
        g = make_grid(1, 8, 8.0)
        f = gaussian_field(g)
        with pytest.raises(ValueError):
            dft(f, "sideways")
