"""Acceptance gate: one test per primary criterion, each printing a
PASS/FAIL line (run with -s to see them) and checked against its stated
tolerance and runtime budget."""

import time

import mpmath
import numpy as np
import pytest
from scipy import integrate

from phasekit.gabor import (
    free_gabor_mod,
    gabor_complex_hermite_mod,
    gabor_heat_bound,
    gabor_heat_closed,
    gabor_hermite_mod,
    gabor_numeric,
    gabor_wave_bound,
    gabor_wave_modsq,
    heat_epsilon,
    phase_space_rotation,
)
from phasekit.grids import Grid, SampledField, dft, make_grid
from phasekit.kernels import ReducedKernel, apply_kernel, kernel_from_symbol, kernel_wave, lacuna_report
from phasekit.propagators import (
    ComplexDiffusion,
    HermiteParams,
    complex_hermite_apply,
    frft_apply,
    heat_propagate,
    heat_symbol,
    hermite_apply,
    wave_propagate,
)
from phasekit.special import bessel_j0, gaussian_integral
from phasekit.symplectic import build_generator, j_matrix, sp_compose
from phasekit.transforms import cross_wigner, gaussian_window, tf_shift
from phasekit.verify import _golden_max

from test_grids import random_smooth_field


def _report(name, budget, started):
    elapsed = time.perf_counter() - started
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.2f}s / budget {budget:g}s)")
    assert elapsed < budget, f"{name} exceeded its runtime budget"


class TestAcceptance:
    def test_peak_table(self):
        # |G_t(0,0)|, d=1, alpha=1: real and complex rows at t = 0, 1, 2, 5.
        # The t = 0 column is quoted with the window normalized to unit
        # norm (the raw overlap is ||g||^2 = 2^(-1/2)); later columns are
        # raw closed-form values.
        started = time.perf_counter()
        rows = {
            0.0: (1.000, 0.262, 0.192, 0.124),
            1.0: (1.000, 0.228, 0.164, 0.105),
        }
        for beta, expected in rows.items():
            gam = ComplexDiffusion(1.0, beta)
            raw0 = abs(gabor_heat_closed(0.0, gam, (0.0, 0.0), (0.0, 0.0), 1))
            assert raw0 == pytest.approx(2.0**-0.5, rel=1e-14)
            assert abs(raw0 / 2.0**-0.5 - expected[0]) <= 1e-3
            for t, ref in zip((1.0, 2.0, 5.0), expected[1:]):
                peak = abs(gabor_heat_closed(t, gam, (0.0, 0.0), (0.0, 0.0), 1))
                assert abs(peak - ref) <= 1e-3, (beta, t)
        _report("peak-table", 1.0, started)

    def test_epsilon_extremum(self):
        started = time.perf_counter()
        t_star = _golden_max(lambda t: heat_epsilon(t, 1.0, 0.0), 1e-3, 1.0)
        assert abs(t_star - 1.0 / (2.0 * np.pi)) <= 1e-10
        assert abs(heat_epsilon(t_star, 1.0, 0.0) - np.pi / 4.0) <= 1e-10
        _report("epsilon-extremum", 1.0, started)

    def test_heat_closed_vs_numeric(self):
        started = time.perf_counter()
        grid = make_grid(1, 512, 16.0)
        win = gaussian_window(grid)
        rng = np.random.default_rng(271828)
        for gam in (ComplexDiffusion(1.0, 0.0), ComplexDiffusion(1.0, 1.0)):
            for t in (0.1, 1.0):
                for _ in range(25):
                    z = (rng.integers(-32, 32) * grid.spacing, rng.uniform(-1.5, 1.5))
                    w = (rng.integers(-32, 32) * grid.spacing, rng.uniform(-1.5, 1.5))
                    num = gabor_numeric(lambda f: heat_propagate(f, t, gam), z, w, win)
                    clo = gabor_heat_closed(t, gam, z, w, 1)
                    assert abs(num - clo) <= 1e-5 * abs(clo)
        _report("heat-closed-vs-numeric", 30.0, started)

    def test_wigner_kernel_oracle_spine(self):
        started = time.perf_counter()
        # symbol route vs closed heat kernel
        t0, gam = 0.1, ComplexDiffusion(1.0)
        symg = Grid(1, 512, 32.0).dual()
        kern = kernel_from_symbol(SampledField(symg, heat_symbol(t0, gam, symg.axis()[:, None])))
        S, XI = np.meshgrid(kern.s_axis, kern.xi_axis, indexing="ij")
        closed = ReducedKernel.heat(t0, gam, 1).eval_reduced(S, XI)
        assert np.max(np.abs(kern.values.real - closed)) <= 1e-6 * np.max(np.abs(closed))

        # symbol route vs closed wave kernel (tapered pair)
        t, eps = 1.0, 0.06
        xi = symg.axis()
        sym = SampledField(symg, t * np.sinc(2.0 * np.abs(xi) * t) * np.exp(-np.pi * eps * xi**2))
        wkern = kernel_from_symbol(sym)

        def smoothed(s, x):
            val, _ = integrate.quad(
                lambda y: kernel_wave(1, t, s - y, x) * np.exp(-2.0 * np.pi * y**2 / eps),
                -1.0, 1.0, limit=800, points=[s - t, s + t],
            )
            return np.sqrt(2.0 / eps) * np.exp(-2.0 * np.pi * eps * x**2) * val

        peak = np.max(np.abs(wkern.values))
        for s_val in np.linspace(-1.5, 1.5, 7):
            for x_val in np.linspace(-3.0, 3.0, 7):
                i = np.argmin(np.abs(wkern.s_axis - s_val))
                j = np.argmin(np.abs(wkern.xi_axis - x_val))
                ref = smoothed(wkern.s_axis[i], wkern.xi_axis[j])
                assert abs(wkern.values[i, j].real - ref) <= 1e-6 * peak

        # kernel action consistency
        g256 = make_grid(1, 256, 16.0)
        f = gaussian_window(g256).field
        heat_out = apply_kernel(ReducedKernel.heat(0.5, gam, 1), cross_wigner(f))
        heat_ref = cross_wigner(heat_propagate(f, 0.5, gam))
        num = np.sqrt(np.sum(np.abs(heat_out.values - heat_ref.values) ** 2))
        den = np.sqrt(np.sum(np.abs(heat_ref.values) ** 2))
        assert num / den <= 1e-4

        g512 = make_grid(1, 512, 16.0)
        f2 = gaussian_window(g512).field
        wave_out = apply_kernel(ReducedKernel.wave(1, 1.0), cross_wigner(f2))
        wave_ref = cross_wigner(wave_propagate(f2, 1.0, "sine"))
        num = np.sqrt(np.sum(np.abs(wave_out.values - wave_ref.values) ** 2))
        den = np.sqrt(np.sum(np.abs(wave_ref.values) ** 2))
        assert num / den <= 1e-3
        _report("wigner-kernel-oracle-spine", 60.0, started)

    def test_bound_domination(self):
        started = time.perf_counter()
        rng = np.random.default_rng(1618)
        for _ in range(700):
            t = rng.uniform(0.05, 4.0)
            gam = ComplexDiffusion(1.0, rng.uniform(-2.0, 2.0))
            z = rng.uniform(-3.0, 3.0, size=2)
            w = rng.uniform(-3.0, 3.0, size=2)
            assert gabor_heat_bound(t, gam, z, w, 1) - abs(gabor_heat_closed(t, gam, z, w, 1)) >= 0.0
        for _ in range(200):
            t = rng.uniform(0.2, 2.0)
            z = rng.uniform(-2.5, 2.5, size=2)
            w = rng.uniform(-2.5, 2.5, size=2)
            modsq = gabor_wave_modsq(t, 1, z, w, n_radial=96)
            assert gabor_wave_bound(t, 1, z, w) - np.sqrt(modsq) >= 0.0
        for _ in range(100):
            t = rng.uniform(0.3, 1.5)
            z = rng.uniform(-1.2, 1.2, size=6)
            w = rng.uniform(-1.2, 1.2, size=6)
            modsq = gabor_wave_modsq(t, 3, z, w, n_radial=16, n_angular=32)
            assert gabor_wave_bound(t, 3, z, w) - np.sqrt(modsq) >= 0.0
        _report("bound-domination", 30.0, started)

    def test_transform_invariants(self):
        started = time.perf_counter()
        grid = make_grid(1, 256, 16.0)
        rng = np.random.default_rng(31415)
        f = random_smooth_field(grid, rng)
        g = random_smooth_field(grid, rng)

        fh = dft(f, "forward")
        assert abs(fh.norm() - f.norm()) <= 1e-8 * f.norm()

        lhs = cross_wigner(f, g).inner(cross_wigner(g, f))
        rhs = f.inner(g) * np.conj(g.inner(f))
        assert abs(lhs - rhs) <= 1e-8 * abs(rhs)

        W0 = cross_wigner(f)
        z = (1.0, 3.0 * W0.freq_grid.spacing)
        Wz = cross_wigner(tf_shift(f, z))
        moved = np.roll(W0.values, (round(z[0] / grid.spacing), 3), axis=(0, 1))
        assert np.max(np.abs(Wz.values - moved)) <= 1e-8 * np.max(np.abs(W0.values))

        n = grid.points_per_axis
        Wfg = cross_wigner(f, g)
        Whh = cross_wigner(dft(f, "forward"), dft(g, "forward"))
        scale = np.max(np.abs(Wfg.values))
        for i in range(n // 2 - 24, n // 2 + 24, 3):
            for half in range(-24, 24, 3):
                m = n // 2 + 2 * half
                freq_idx = 3 * n // 2 - 2 * i
                if 0 <= freq_idx < n:
                    assert abs(Wfg.values[i, m] - Whh.values[n // 2 + half, freq_idx]) <= 1e-8 * scale

        state = tf_shift(gaussian_window(grid).field, (1.0, 0.5))
        Ws = cross_wigner(state)
        Wq = cross_wigner(frft_apply(np.pi / 2.0, state))
        smax = np.max(np.abs(Ws.values))
        for i in range(n // 2 - 40, n // 2 + 40, 4):
            for m in range(n // 2 - 80, n // 2 + 80, 4):
                if (m - n // 2) % 2:
                    continue
                pos_idx = n // 2 - (m - n // 2) // 2
                freq_idx = n // 2 + 2 * (i - n // 2)
                if 0 <= pos_idx < n and 0 <= freq_idx < n:
                    assert abs(Wq.values[i, m] - Ws.values[pos_idx, freq_idx]) <= 1e-8 * smax
        Wh = cross_wigner(frft_apply(np.pi, state))
        flipped = np.roll(np.flip(Ws.values, axis=(0, 1)), (1, 1), axis=(0, 1))
        assert np.max(np.abs(Wh.values - flipped)) <= 1e-8 * smax

        win = gaussian_window(grid)
        Wg = cross_wigner(win.field)
        x = grid.axis()
        xi = Wg.freq_grid.axis()
        ref = 2.0**0.5 * np.exp(-2.0 * np.pi * (x[:, None] ** 2 + xi[None, :] ** 2))
        assert np.max(np.abs(Wg.values - ref)) <= 1e-8 * np.max(ref)
        _report("transform-invariants", 20.0, started)

    def test_special_functions(self):
        started = time.perf_counter()
        rng = np.random.default_rng(2024)
        for _ in range(100):
            rho = rng.uniform(0.1, 5.0) + 1j * rng.uniform(-3.0, 3.0)
            c = rng.uniform(-1.5, 1.5) + 1j * rng.uniform(-1.5, 1.5)
            val = gaussian_integral(rho, [c], 1)

            def integrand(xx, part):
                v = np.exp(-2.0 * np.pi * rho * xx * xx + 2.0 * np.pi * c * xx)
                return v.real if part == "re" else v.imag

            re, _ = integrate.quad(integrand, -20, 20, args=("re",), limit=400)
            im, _ = integrate.quad(integrand, -20, 20, args=("im",), limit=400)
            assert abs(val - (re + 1j * im)) <= 1e-7 * max(1.0, abs(val))

        nodes = 4096
        theta = 2.0 * np.pi * (np.arange(nodes) + 0.5) / nodes
        for z in np.linspace(0.0, 30.0, 61):
            with mpmath.workdps(40):
                zz = mpmath.mpf(z) / 2
                acc = mpmath.mpf(1)
                term = mpmath.mpf(1)
                m = 0
                while True:
                    m += 1
                    term *= -(zz * zz) / (m * m)
                    acc += term
                    if abs(term) < mpmath.mpf(10) ** -35 * max(1, abs(acc)):
                        break
                series = float(acc)
            quad = float(np.mean(np.cos(z * np.cos(theta))))
            assert abs(series - quad) <= 1e-10
            assert abs(bessel_j0(z) - series) <= 1e-10
        _report("special-functions", 10.0, started)

    def test_hermite(self):
        started = time.perf_counter()
        grid = make_grid(1, 256, 16.0)
        win = gaussian_window(grid)
        rng = np.random.default_rng(8128)

        f = random_smooth_field(grid, rng)
        one = hermite_apply((0.5,), hermite_apply((0.3,), f))
        two = hermite_apply((0.8,), f)
        num = np.sqrt(np.sum(np.abs(one.values - two.values) ** 2))
        den = np.sqrt(np.sum(np.abs(two.values) ** 2))
        assert num / den <= 1e-8

        for _ in range(25):
            z = (rng.integers(-20, 20) * grid.spacing, rng.uniform(-1.2, 1.2))
            w = (rng.integers(-20, 20) * grid.spacing, rng.uniform(-1.2, 1.2))
            numv = abs(gabor_numeric(lambda v: hermite_apply((1.0,), v), z, w, win))
            clo = gabor_hermite_mod((1.0,), z, w)
            assert abs(numv - clo) <= 1e-5 * clo

        for mu in (0.3, 1.1, 2.0):
            out = frft_apply(mu, win.field)
            err = np.sqrt(np.sum(np.abs(out.values - win.field.values) ** 2))
            assert err / np.sqrt(np.sum(np.abs(win.field.values) ** 2)) <= 1e-8

        # rotation of the Gabor peak: restricted to the orbit |w| = |z| the
        # maximizer is S_(mu t) z itself (one angular cell); the free peak
        # contracts to exp(-theta t) S_(mu t) z (cross-checked numerically)
        theta, mu, t = 0.7, 1.3, 1.0
        z0 = np.array([0.0, 1.0])
        rotated = phase_space_rotation(mu * t, 1) @ z0
        phi = np.linspace(-np.pi, np.pi, 2881, endpoint=False)
        cell = phi[1] - phi[0]
        vals = [gabor_complex_hermite_mod(theta, mu, t, z0, (np.cos(p), np.sin(p))) for p in phi]
        best = phi[int(np.argmax(vals))]
        ref_angle = np.arctan2(rotated[1], rotated[0])
        assert abs(np.angle(np.exp(1j * (best - ref_angle)))) <= cell

        axis = np.linspace(-2.0, 2.0, 161)
        grid_cell = axis[1] - axis[0]
        panel = np.array(
            [[gabor_complex_hermite_mod(theta, mu, t, z0, (y, e)) for e in axis] for y in axis]
        )
        iy, ie = np.unravel_index(np.argmax(panel), panel.shape)
        target = np.exp(-theta * t) * rotated
        assert abs(axis[iy] - target[0]) <= grid_cell
        assert abs(axis[ie] - target[1]) <= grid_cell
        params = HermiteParams((theta,), mu=mu, t=t)
        peak_num = abs(
            gabor_numeric(
                lambda v: complex_hermite_apply(params, v),
                z0,
                (round(target[0] / grid.spacing) * grid.spacing, target[1]),
                win,
            )
        )
        peak_clo = gabor_complex_hermite_mod(theta, mu, t, z0,
                                             (round(target[0] / grid.spacing) * grid.spacing, target[1]))
        assert abs(peak_num - peak_clo) <= 1e-5 * peak_clo
        _report("hermite", 60.0, started)

    def test_lacuna_ghost(self):
        started = time.perf_counter()
        grid = make_grid(1, 1024, 32.0)
        for t in (1.0, 3.0):
            rep = lacuna_report(t, grid)
            assert abs(rep.gabor_center_ratio - np.exp(-0.5 * np.pi * t**2)) <= 1e-8
            assert abs(rep.ghost_period - 1.0 / (2.0 * t)) <= rep.ghost_period_bin
        _report("lacuna-ghost", 20.0, started)

    def test_symplectic_algebra(self):
        started = time.perf_counter()
        rng = np.random.default_rng(1729)

        def random_generator():
            kind = rng.choice(["J", "D_E", "V_Q", "V_ialpha", "R_theta", "S_mu"])
            if kind == "J":
                return j_matrix(1)
            if kind == "D_E":
                return build_generator("D_E", 1, E=rng.standard_normal((1, 1)) + 2.0 * np.eye(1))
            if kind == "V_Q":
                return build_generator("V_Q", 1, Q=np.array([[rng.standard_normal()]]))
            if kind == "V_ialpha":
                return build_generator("V_ialpha", 1, alpha=rng.uniform(0.0, 2.0))
            if kind == "R_theta":
                return build_generator("R_theta", 1, theta=rng.uniform(0.0, 1.5))
            return build_generator("S_mu", 1, mu=rng.uniform(-np.pi, np.pi))

        for kind, kwargs in [
            ("J", {}),
            ("D_E", {"E": np.array([[0.5]])}),
            ("V_Q", {"Q": np.array([[1.2]])}),
            ("V_ialpha", {"alpha": 0.7}),
            ("R_theta", {"theta": 0.9}),
            ("S_mu", {"mu": 1.1}),
        ]:
            gmat = build_generator(kind, 1, **kwargs)
            assert gmat.residual() <= 1e-10

        for _ in range(50):
            word = random_generator()
            for _ in range(int(rng.integers(0, 6))):
                word = sp_compose(word, random_generator())
            scale = max(1.0, float(np.max(np.abs(word.mat))) ** 2)
            assert word.residual() <= 1e-10 * scale

        theta, mu, t = 0.7, 1.3, 1.0
        prod = sp_compose(
            build_generator("R_theta", 1, theta=theta * t),
            build_generator("S_mu", 1, mu=mu * t),
        )
        wv = (theta + 1j * mu) * t
        ref = np.array([[np.cosh(wv), -1j * np.sinh(wv)], [1j * np.sinh(wv), np.cosh(wv)]])
        assert np.max(np.abs(prod.mat - ref)) <= 1e-12
        _report("symplectic-algebra", 5.0, started)
