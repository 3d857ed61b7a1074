import numpy as np
import pytest

from phasekit._threads import worker_count
from phasekit.cli import run_command
from phasekit.grids import make_grid
from phasekit.transforms import Window, gaussian_window, stft
from phasekit.verify import run_suite


class TestWorkerCount:
    def test_default_is_serial(self, monkeypatch):
        monkeypatch.delenv("PHASEKIT_THREADS", raising=False)
        assert worker_count() == 1

    def test_positive_integer_accepted(self, monkeypatch):
        monkeypatch.setenv("PHASEKIT_THREADS", "3")
        assert worker_count() == 3

    @pytest.mark.parametrize("bad", ["0", "-2", "two", "1.5"])
    def test_invalid_values_rejected(self, monkeypatch, bad):
        monkeypatch.setenv("PHASEKIT_THREADS", bad)
        with pytest.raises(ValueError):
            worker_count()

    def test_parallel_report_identical_to_serial(self, monkeypatch):
        monkeypatch.delenv("PHASEKIT_THREADS", raising=False)
        serial = run_suite("metaplectic").to_json()
        monkeypatch.setenv("PHASEKIT_THREADS", "2")
        parallel = run_suite("metaplectic").to_json()
        assert serial == parallel


class TestStftCustomFrequencyGrid:
    def test_matches_gaussian_law_at_half_cells(self):
        grid = make_grid(1, 256, 16.0)
        win = gaussian_window(grid)
        # a frequency grid with half the native spacing over a narrow band
        from phasekit.grids import Grid

        freq = Grid(1, 64, 64 * grid.dual_spacing / 2.0)
        assert freq.spacing == pytest.approx(grid.dual_spacing / 2.0)
        V = stft(win.field, win, freq_grid=freq)
        xi = freq.axis()
        n = grid.points_per_axis
        x0 = 1.0
        i = grid.index_of((x0,))[0]
        ref = 2.0**-0.5 * np.exp(-0.5 * np.pi * (x0**2 + xi**2))
        assert np.max(np.abs(np.abs(V.values[i]) - ref)) <= 1e-9

    def test_custom_window_tag(self):
        grid = make_grid(1, 64, 8.0)
        x = grid.axis()
        from phasekit.grids import SampledField

        w = Window(SampledField(grid, np.exp(-2.0 * x**2)), "custom")
        V = stft(gaussian_window(grid).field, w)
        assert V.values.shape == (64, 64)


class TestCliVerifyAll:
    def test_all_suite_exits_zero_on_default_config(self, tmp_path):
        out = tmp_path / "all.json"
        code = run_command(["verify", "--suite", "all", "--out", str(out)])
        assert code == 0
