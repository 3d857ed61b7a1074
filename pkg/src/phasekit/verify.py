"""Named verification suites: oracle comparisons and invariants, producing
deterministic machine-readable reports.

Every check compares an implementation route against an independent one
(closed form vs grid propagator, symbol route vs closed kernel, bounds vs
moduli) and records (measured, expected, tolerance, pass).  Random test
fields are band-limited Gaussians with seeded centers and widths, so a
fixed config reproduces the report bit for bit.  Entries marked
``recorded`` document a comparison without gating the suite.
"""

from dataclasses import asdict, dataclass, field

import numpy as np

from . import gabor as gb
from . import kernels as kn
from ._serialize import dumps
from ._threads import worker_count
from .grids import Grid, SampledField, dft, make_grid
from .special import erf
from .propagators import (
    ComplexDiffusion,
    WaveMeasure,
    complex_hermite_apply,
    frft_apply,
    heat_propagate,
    heat_symbol,
    hermite_apply,
    HermiteParams,
    wave_measure_pairing,
    wave_propagate,
)
from .symplectic import build_generator, j_matrix, sp_compose, sp_is_symplectic, sp_tensor
from .transforms import cross_wigner, gaussian_window, tf_shift

__all__ = ["SuiteConfig", "CheckResult", "SuiteReport", "run_suite", "SUITE_NAMES"]

SUITE_NAMES = ("transforms", "heat", "wave", "hermite", "metaplectic", "all")


@dataclass(frozen=True)
class SuiteConfig:
    grid_n: int = 256
    extent: float = 16.0
    seed: int = 31415


@dataclass
class CheckResult:
    check_id: str
    description: str
    anchor: str
    measured: float
    expected: float
    tolerance: float
    passed: bool
    recorded: bool = False
    diagnostic: str = ""


@dataclass
class SuiteReport:
    suite: str
    config: SuiteConfig
    entries: list
    overall: bool = field(init=False)

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: e.check_id)
        self.overall = all(e.passed for e in self.entries if not e.recorded)

    def to_dict(self):
        return {
            "suite": self.suite,
            "config": asdict(self.config),
            "entries": [asdict(e) for e in self.entries],
            "overall": self.overall,
        }

    def to_json(self):
        return dumps(self.to_dict())


def _err_check(check_id, description, anchor, measured, tolerance, expected=0.0, recorded=False):
    measured = float(measured)
    ok = abs(measured - expected) <= tolerance
    diag = "" if ok else "deviation exceeds tolerance; grid may be under-resolved"
    return CheckResult(check_id, description, anchor, measured, expected, tolerance, ok, recorded, diag)


def _margin_check(check_id, description, anchor, margin, recorded=False):
    margin = float(margin)
    ok = margin >= 0.0
    diag = "" if ok else "bound is violated at a sampled point"
    return CheckResult(check_id, description, anchor, margin, 0.0, 0.0, ok, recorded, diag)


def _failed(check_id, description, anchor, exc):
    return CheckResult(
        check_id, description, anchor, float("inf"), 0.0, 0.0, False, False, f"{exc}"
    )


def _random_field(grid, rng):
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
    return SampledField(grid, vals)


def _rel_l2(a, b):
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2) / np.sum(np.abs(b) ** 2)))


def _golden_max(fn, lo, hi, iters=90):
    """Plain golden-section maximization on [lo, hi]."""
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = fn(d)
    return 0.5 * (a + b)


def _grid_points(rng, grid, count, cells, span):
    pts = []
    for _ in range(count):
        z = (rng.integers(-cells, cells) * grid.spacing, rng.uniform(-span, span))
        w = (rng.integers(-cells, cells) * grid.spacing, rng.uniform(-span, span))
        pts.append((z, w))
    return pts


# ---------------------------------------------------------------- transforms


def _suite_transforms(cfg):
    grid = make_grid(1, cfg.grid_n, cfg.extent)
    rng = np.random.default_rng(cfg.seed)
    out = []

    f = _random_field(grid, rng)
    fh = dft(f, "forward")
    out.append(
        _err_check(
            "transforms.parseval",
            "discrete Parseval equality",
            "sum |f|^2 dx = sum |fhat|^2 dxi",
            abs(fh.norm() - f.norm()) / f.norm(),
            1e-12,
        )
    )
    back = dft(fh, "inverse")
    out.append(
        _err_check(
            "transforms.roundtrip",
            "inverse(forward(f)) recovers f",
            "unitary DFT round trip",
            np.max(np.abs(back.values - f.values)) / np.max(np.abs(f.values)),
            1e-12,
        )
    )
    g2 = _random_field(grid, rng)
    lhs = dft(SampledField(grid, 1.5 * f.values - 2j * g2.values), "forward").values
    rhs = 1.5 * dft(f, "forward").values - 2j * dft(g2, "forward").values
    out.append(
        _err_check(
            "transforms.linearity",
            "DFT linearity",
            "dft(a f + b g) = a dft(f) + b dft(g)",
            np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)),
            1e-12,
        )
    )

    win = gaussian_window(grid)
    W = cross_wigner(win.field)
    x = grid.axis()
    xi = W.freq_grid.axis()
    ref = 2.0**0.5 * np.exp(-2.0 * np.pi * (x[:, None] ** 2 + xi[None, :] ** 2))
    out.append(
        _err_check(
            "transforms.wigner-gaussian",
            "Gaussian phase-space density closed form",
            "W g = 2^(d/2) exp(-2 pi (x^2 + xi^2))",
            np.max(np.abs(W.values - ref)) / np.max(ref),
            1e-8,
        )
    )
    out.append(
        _err_check(
            "transforms.wigner-mass",
            "phase-space mass equals squared norm",
            "int W(f, f) = ||f||_2^2",
            abs(cross_wigner(f).integral().real - f.norm() ** 2) / f.norm() ** 2,
            1e-9,
        )
    )
    f1, g1 = _random_field(grid, rng), _random_field(grid, rng)
    f2, g22 = _random_field(grid, rng), _random_field(grid, rng)
    moyal_lhs = cross_wigner(f1, g1).inner(cross_wigner(f2, g22))
    moyal_rhs = f1.inner(f2) * np.conj(g1.inner(g22))
    out.append(
        _err_check(
            "transforms.moyal",
            "Moyal orthogonality relation",
            "<W(f1,g1), W(f2,g2)> = <f1,f2> conj<g1,g2>",
            abs(moyal_lhs - moyal_rhs) / abs(moyal_rhs),
            1e-8,
        )
    )

    W0 = cross_wigner(f)
    z = (1.0, 3.0 * W0.freq_grid.spacing)
    try:
        Wz = cross_wigner(tf_shift(f, z))
        shifted = np.roll(W0.values, (round(z[0] / grid.spacing), 3), axis=(0, 1))
        meas = np.max(np.abs(Wz.values - shifted)) / np.max(np.abs(W0.values))
        out.append(
            _err_check(
                "transforms.wigner-shift-covariance",
                "phase-space translation covariance",
                "W(pi(z) f) = W f (. - z)",
                meas,
                1e-10,
            )
        )
    except ValueError as exc:
        out.append(
            _failed(
                "transforms.wigner-shift-covariance",
                "phase-space translation covariance",
                "W(pi(z) f) = W f (. - z)",
                exc,
            )
        )

    Whh = cross_wigner(dft(f, "forward"), dft(g2, "forward"))
    Wfg = cross_wigner(f, g2)
    n = grid.points_per_axis
    scale = np.max(np.abs(Wfg.values))
    worst = 0.0
    for i in range(n // 2 - n // 8, n // 2 + n // 8, 3):
        for half in range(-n // 8, n // 8, 3):
            m = n // 2 + 2 * half
            pos_idx = n // 2 + half
            freq_idx = 3 * n // 2 - 2 * i
            if 0 <= freq_idx < n:
                worst = max(worst, abs(Wfg.values[i, m] - Whh.values[pos_idx, freq_idx]))
    out.append(
        _err_check(
            "transforms.wigner-fourier-covariance",
            "Fourier rotation covariance",
            "W(f, g)(x, xi) = W(fhat, ghat)(xi, -x)",
            worst / scale,
            1e-8,
        )
    )
    return out


# ---------------------------------------------------------------------- heat


def _suite_heat(cfg):
    rng = np.random.default_rng(cfg.seed + 1)
    out = []
    table = {
        (0.0, 1.0): 0.262,
        (0.0, 2.0): 0.192,
        (0.0, 5.0): 0.124,
        (1.0, 1.0): 0.228,
        (1.0, 2.0): 0.164,
        (1.0, 5.0): 0.105,
    }
    for (beta, t), ref in table.items():
        gam = ComplexDiffusion(1.0, beta)
        peak = abs(gb.gabor_heat_closed(t, gam, (0.0, 0.0), (0.0, 0.0), 1))
        label = "real" if beta == 0.0 else "complex"
        out.append(
            _err_check(
                f"heat.peak-{label}-t{t:g}",
                f"coinciding-point Gabor value at t={t:g} ({label} diffusion)",
                "|G_t(0,0)| = (2 |1 + 2 pi gamma t|)^(-1/2)",
                peak,
                1e-3,
                expected=ref,
            )
        )

    t_star = _golden_max(lambda t: gb.heat_epsilon(t, 1.0, 0.0), 1e-3, 1.0)
    out.append(
        _err_check(
            "heat.epsilon-max-location",
            "sharpest Gaussian rate attained at t = 1/(2 pi)",
            "argmax_t eps(t, 1, 0)",
            abs(t_star - 1.0 / (2.0 * np.pi)),
            1e-10,
        )
    )
    out.append(
        _err_check(
            "heat.epsilon-max-value",
            "maximal Gaussian rate pi/4",
            "max_t eps(t, 1, 0) = pi/4",
            abs(gb.heat_epsilon(t_star, 1.0, 0.0) - np.pi / 4.0),
            1e-10,
        )
    )

    grid = make_grid(1, cfg.grid_n, cfg.extent)
    win = gaussian_window(grid)
    worst = 0.0
    for gam in (ComplexDiffusion(1.0), ComplexDiffusion(1.0, 1.0)):
        for z, w in _grid_points(rng, grid, 6, max(1, cfg.grid_n // 16), 1.5):
            num = gb.gabor_numeric(lambda f: heat_propagate(f, 1.0, gam), z, w, win)
            clo = gb.gabor_heat_closed(1.0, gam, z, w, 1)
            worst = max(worst, abs(num - clo) / abs(clo))
    out.append(
        _err_check(
            "heat.gabor-closed-vs-numeric",
            "closed-form Gabor matrix against the grid propagator",
            "G_t(z,w) closed form",
            worst,
            1e-6,
        )
    )

    margin = np.inf
    for _ in range(200):
        t = rng.uniform(0.05, 4.0)
        gam = ComplexDiffusion(1.0, rng.uniform(-2.0, 2.0))
        z = rng.uniform(-3.0, 3.0, size=2)
        w = rng.uniform(-3.0, 3.0, size=2)
        margin = min(
            margin,
            gb.gabor_heat_bound(t, gam, z, w, 1) - abs(gb.gabor_heat_closed(t, gam, z, w, 1)),
        )
    out.append(
        _margin_check(
            "heat.bound-domination",
            "Gaussian envelope dominates the closed form",
            "|G_t| <= prefactor exp(-eps/2 (|z2|^2+|w2|^2) - eps |z1-w1|^2)",
            margin,
        )
    )

    t0, gam0 = 0.1, ComplexDiffusion(1.0)
    try:
        symg = Grid(1, cfg.grid_n, 2.0 * cfg.extent).dual()
        sym = SampledField(symg, heat_symbol(t0, gam0, symg.axis()[:, None]))
        kern = kn.kernel_from_symbol(sym)
        S, XI = np.meshgrid(kern.s_axis, kern.xi_axis, indexing="ij")
        closed = kn.ReducedKernel.heat(t0, gam0, 1).eval_reduced(S, XI)
        meas = np.max(np.abs(kern.values.real - closed)) / np.max(np.abs(closed))
        out.append(
            _err_check(
                "heat.kernel-symbol-route",
                "sampled symbol route against the closed kernel",
                "kappa(s, xi) = W(sigma)(xi, -s)",
                meas,
                1e-6,
            )
        )
    except ValueError as exc:
        out.append(
            _failed(
                "heat.kernel-symbol-route",
                "sampled symbol route against the closed kernel",
                "kappa(s, xi) = W(sigma)(xi, -s)",
                exc,
            )
        )

    f = win.field
    W0 = cross_wigner(f)
    out.append(
        _err_check(
            "heat.kernel-action",
            "kernel action against propagate-then-transform",
            "W(T f) = kappa *_x W(f) per frequency slice",
            _rel_l2(
                kn.apply_kernel(kn.ReducedKernel.heat(0.5, gam0, 1), W0).values,
                cross_wigner(heat_propagate(f, 0.5, gam0)).values,
            ),
            1e-4,
        )
    )
    out.append(
        _err_check(
            "heat.wigner-evolution",
            "direct phase-space evolution against propagate-then-transform",
            "shear, Gaussian smoothing in x, Gaussian damping in xi",
            _rel_l2(
                kn.evolve_wigner_heat(W0, 0.5, 1.0, 0.0).values,
                cross_wigner(heat_propagate(f, 0.5, gam0)).values,
            ),
            1e-4,
        )
    )
    return out


# ---------------------------------------------------------------------- wave


def _suite_wave(cfg):
    rng = np.random.default_rng(cfg.seed + 2)
    out = []
    for d in (1, 2, 3):
        mass = wave_measure_pairing(WaveMeasure(d, 2.0), lambda y: np.ones(len(y)))
        out.append(
            _err_check(
                f"wave.measure-mass-d{d}",
                f"propagation measure total mass, d={d}",
                "mu_t(R^d) = t",
                abs(mass - 2.0),
                1e-10,
            )
        )

    t = 1.0
    worst = 0.0
    for u in np.linspace(-2.0, 2.0, 17):
        got = gb.wave_overlap_profile(t, u)
        ref = 0.5 * erf(np.sqrt(np.pi) * max(t - abs(u), 0.0))
        worst = max(worst, abs(got - ref))
    out.append(
        _err_check(
            "wave.overlap-erf-profile",
            "center-frequency overlap profile against the erf closed form",
            "I(u) = erf(sqrt(pi)(t-|u|)_+)/2",
            worst,
            1e-9,
        )
    )

    grid = make_grid(1, cfg.grid_n, cfg.extent)
    win = gaussian_window(grid)
    worst = 0.0
    for z, w in _grid_points(rng, grid, 4, max(1, cfg.grid_n // 16), 1.0):
        num = abs(gb.gabor_numeric(lambda f: wave_propagate(f, t, "sine"), z, w, win)) ** 2
        clo = gb.gabor_wave_modsq(t, 1, z, w)
        worst = max(worst, abs(num - clo) / max(clo, 1e-12))
    out.append(
        _err_check(
            "wave.gabor-modsq-vs-numeric",
            "squared Gabor modulus against the grid propagator",
            "|<T_t pi(z) g, pi(w) g>|^2 double-measure form",
            worst,
            1e-4,
        )
    )

    margin = np.inf
    for _ in range(200):
        tt = rng.uniform(0.2, 2.0)
        z = rng.uniform(-2.5, 2.5, size=2)
        w = rng.uniform(-2.5, 2.5, size=2)
        margin = min(margin, gb.gabor_wave_bound(tt, 1, z, w) - np.sqrt(gb.gabor_wave_modsq(tt, 1, z, w)))
    out.append(
        _margin_check(
            "wave.bound-domination-d1",
            "envelope dominates the modulus, d=1",
            "sqrt(C_t) exp(-pi/4 |x-y|^2) exp(-pi/2 |xi-eta|^2)",
            margin,
        )
    )
    margin = np.inf
    for _ in range(25):
        tt = rng.uniform(0.3, 1.5)
        z = rng.uniform(-1.2, 1.2, size=6)
        w = rng.uniform(-1.2, 1.2, size=6)
        # coarser nodes suffice: the light-cone bound has 2^(d/2) slack
        modsq = gb.gabor_wave_modsq(tt, 3, z, w, n_radial=16, n_angular=32)
        margin = min(margin, gb.gabor_wave_bound(tt, 3, z, w) - np.sqrt(modsq))
    out.append(
        _margin_check(
            "wave.bound-domination-d3",
            "light-cone envelope dominates the modulus, d=3",
            "t exp(-pi/2 (|x-y|-t)^2) exp(-pi/2 |xi-eta|^2)",
            margin,
        )
    )

    try:
        symg = Grid(1, cfg.grid_n, 2.0 * cfg.extent).dual()
        xi = symg.axis()
        xi_edge = max(np.abs(xi))
        # taper strong enough that the symbol clears the resolution gate
        eps = max(0.06, 11.5 / (np.pi * xi_edge**2))
        sym = SampledField(symg, t * np.sinc(2.0 * np.abs(xi) * t) * np.exp(-np.pi * eps * xi**2))
        kern = kn.kernel_from_symbol(sym)
        from scipy import integrate

        def smoothed(s, x):
            val, _ = integrate.quad(
                lambda y: kn.kernel_wave(1, t, s - y, x) * np.exp(-2.0 * np.pi * y**2 / eps),
                -1.0,
                1.0,
                limit=800,
                points=[s - t, s + t],
            )
            return np.sqrt(2.0 / eps) * np.exp(-2.0 * np.pi * eps * x**2) * val

        peak = np.max(np.abs(kern.values))
        worst = 0.0
        for s_val in np.linspace(-1.5, 1.5, 7):
            for x_val in np.linspace(-2.5, 2.5, 5):
                i = np.argmin(np.abs(kern.s_axis - s_val))
                j = np.argmin(np.abs(kern.xi_axis - x_val))
                worst = max(worst, abs(kern.values[i, j].real - smoothed(kern.s_axis[i], kern.xi_axis[j])))
        out.append(
            _err_check(
                "wave.kernel-symbol-route-d1",
                "tapered symbol route against the smoothed closed kernel",
                "kappa = 1_{|s|<=t} sin(4 pi (t-|s|) xi)/(4 pi xi)",
                worst / peak,
                1e-6,
            )
        )
    except ValueError as exc:
        out.append(
            _failed(
                "wave.kernel-symbol-route-d1",
                "tapered symbol route against the smoothed closed kernel",
                "kappa = 1_{|s|<=t} sin(4 pi (t-|s|) xi)/(4 pi xi)",
                exc,
            )
        )

    # resolution-limited by the kernel kink at |s| = t: O(dx^2)
    act_grid = make_grid(1, max(cfg.grid_n, 512), cfg.extent)
    f = gaussian_window(act_grid).field
    out.append(
        _err_check(
            "wave.kernel-action",
            "kernel action against propagate-then-transform",
            "per-slice convolution with the compactly supported kernel",
            _rel_l2(
                kn.apply_kernel(kn.ReducedKernel.wave(1, t), cross_wigner(f)).values,
                cross_wigner(wave_propagate(f, t, "sine")).values,
            ),
            1e-3,
        )
    )

    try:
        lac_grid = make_grid(1, 4 * cfg.grid_n, 2.0 * cfg.extent)
        rep = kn.lacuna_report(1.0, lac_grid)
        out.append(
            _err_check(
                "wave.lacuna-gabor-suppression",
                "Gabor center-to-peak ratio inside the lacuna",
                "ratio = exp(-pi t^2/2)",
                abs(rep.gabor_center_ratio - rep.gabor_center_ratio_expected),
                1e-8,
            )
        )
        out.append(
            _err_check(
                "wave.lacuna-ghost-period",
                "ghost-line oscillation period at s = 0",
                "cos(4 pi xi t): period 1/(2t)",
                abs(rep.ghost_period - rep.ghost_period_expected),
                rep.ghost_period_bin,
            )
        )
        out.append(
            _err_check(
                "wave.lacuna-ghost-shape",
                "ghost-line shape correlation",
                "slice(s=0) ~ cos(4 pi xi t) x mollifier envelope",
                rep.ghost_correlation,
                0.01,
                expected=1.0,
            )
        )
    except ValueError as exc:
        for cid in ("wave.lacuna-gabor-suppression", "wave.lacuna-ghost-period", "wave.lacuna-ghost-shape"):
            out.append(_failed(cid, "lacuna/ghost analysis", "d=1 half-sum-of-points kernel", exc))

    out.append(_wave_d2_recorded(cfg))
    return out


def _wave_d2_recorded(cfg):
    """Record (without gating) the d=2 symbol-route vs closed-form ratio.

    The d=2 closed form has a known delicate constant; any mismatch is
    reported rather than silently absorbed.
    """
    check_id = "wave.kernel-d2-constant-crosscheck"
    desc = "d=2 closed-form constant against the symbol route (recorded)"
    anchor = "kappa_2 = 1_{|s|<2t}/(2 pi) J0(4 pi r(s) |xi_perp|)"
    if cfg.grid_n < 64:
        return CheckResult(check_id, desc, anchor, float("nan"), 1.0, 0.0, True, True, "skipped: grid too coarse")
    try:
        t, eps = 0.5, 0.3
        symg = Grid(2, 64, 8.0).dual()
        xi2 = symg.squared_radius()
        r = np.sqrt(xi2)
        sym = SampledField(symg, t * np.sinc(2.0 * r * t) * np.exp(-np.pi * eps * xi2))
        W = cross_wigner(sym)
        # kappa(s, xi) = W(sigma)(xi, -s); probe s on the first axis, xi = 0
        n = 64
        s_axis = W.freq_grid.axis()
        ratios = []
        for s_val in (0.3, 0.5, 0.7):
            i = int(np.argmin(np.abs(s_axis + s_val)))  # r-index of -s
            got = W.values[n // 2, n // 2, i, n // 2].real
            closed = kn.kernel_wave(2, t, np.array([s_val, 0.0]), np.zeros(2))
            ratios.append(got / closed)
        measured = float(np.max(np.abs(np.asarray(ratios) - 1.0)))
        return CheckResult(
            check_id,
            desc,
            anchor,
            measured,
            0.0,
            0.0,
            True,
            True,
            f"ratios sampled at xi=0: {[f'{r:.4f}' for r in ratios]}",
        )
    except Exception as exc:  # recorded entry must never gate the suite
        return CheckResult(check_id, desc, anchor, float("nan"), 0.0, 0.0, True, True, f"{exc}")


# ------------------------------------------------------------------- hermite


def _suite_hermite(cfg):
    rng = np.random.default_rng(cfg.seed + 3)
    grid = make_grid(1, cfg.grid_n, cfg.extent)
    win = gaussian_window(grid)
    out = []

    t = 0.5
    damped = hermite_apply((2.0 * t,), win.field)
    out.append(
        _err_check(
            "hermite.ground-state",
            "Gaussian is the exp(-t)-damped fixed point",
            "R_(2t) g = exp(-t) g",
            np.max(np.abs(damped.values - np.exp(-t) * win.field.values)),
            1e-10,
        )
    )

    f = _random_field(grid, rng)
    one = hermite_apply((0.5,), hermite_apply((0.3,), f))
    two = hermite_apply((0.8,), f)
    out.append(
        _err_check(
            "hermite.semigroup-law",
            "composition of parameters",
            "R_a R_b = R_(a+b)",
            _rel_l2(one.values, two.values),
            1e-8,
        )
    )

    worst = 0.0
    for z, w in _grid_points(rng, grid, 8, max(1, cfg.grid_n // 20), 1.2):
        num = abs(gb.gabor_numeric(lambda v: hermite_apply((1.0,), v), z, w, win))
        clo = gb.gabor_hermite_mod((1.0,), z, w)
        worst = max(worst, abs(num - clo) / clo)
    out.append(
        _err_check(
            "hermite.gabor-closed-vs-numeric",
            "closed-form Gabor modulus against the quadrature propagator",
            "per-axis Gaussian law with damping exp(-theta/2)",
            worst,
            1e-5,
        )
    )

    worst = 0.0
    for mu in (0.3, 1.1, 2.0):
        try:
            outp = frft_apply(mu, win.field)
            worst = max(worst, _rel_l2(outp.values, win.field.values))
        except ValueError as exc:
            out.append(
                _failed(
                    "hermite.frft-gaussian-fixed-point",
                    "Gaussian fixed point of the fractional transform",
                    "F_mu g = g",
                    exc,
                )
            )
            break
    else:
        out.append(
            _err_check(
                "hermite.frft-gaussian-fixed-point",
                "Gaussian fixed point of the fractional transform",
                "F_mu g = g",
                worst,
                1e-8,
            )
        )

    theta, mu, tt = 0.7, 1.3, 1.0
    worst = 0.0
    params = HermiteParams((theta,), mu=mu, t=tt)
    try:
        for z, w in _grid_points(rng, grid, 5, max(1, cfg.grid_n // 24), 1.0):
            num = abs(gb.gabor_numeric(lambda v: complex_hermite_apply(params, v), z, w, win))
            clo = gb.gabor_complex_hermite_mod(theta, mu, tt, z, w)
            worst = max(worst, abs(num - clo) / clo)
        out.append(
            _err_check(
                "hermite.complex-gabor-closed-vs-numeric",
                "rotated Gabor modulus against the composed propagator",
                "|G| at (S_(mu t) z, w)",
                worst,
                1e-5,
            )
        )
    except ValueError as exc:
        out.append(
            _failed(
                "hermite.complex-gabor-closed-vs-numeric",
                "rotated Gabor modulus against the composed propagator",
                "|G| at (S_(mu t) z, w)",
                exc,
            )
        )

    # rotation of the peak: restricted to |w| = |z| the maximizer is S_(mu t) z
    z0 = np.array([0.0, 1.0])
    rotated = gb.phase_space_rotation(mu * tt, 1) @ z0
    phi = np.linspace(-np.pi, np.pi, 1441, endpoint=False)
    vals = [gb.gabor_complex_hermite_mod(theta, mu, tt, z0, (np.cos(p), np.sin(p))) for p in phi]
    best = phi[int(np.argmax(vals))]
    ref_angle = np.arctan2(rotated[1], rotated[0])
    out.append(
        _err_check(
            "hermite.rotation-argmax",
            "peak direction follows the phase-space rotation",
            "argmax_{|w|=|z|} |G(z, w)| = S_(mu t) z",
            abs(np.angle(np.exp(1j * (best - ref_angle)))),
            float(phi[1] - phi[0]),
        )
    )

    g12 = make_grid(1, min(cfg.grid_n, 128), 12.0)
    f12 = tf_shift(gaussian_window(g12).field, (0.75, 0.5))
    out.append(
        _err_check(
            "hermite.kernel-action",
            "two-point kernel action against propagate-then-transform",
            "separable dense quadrature with the dilation factor 2^d",
            _rel_l2(
                kn.apply_kernel(kn.ReducedKernel.hermite((0.8,)), cross_wigner(f12)).values,
                cross_wigner(hermite_apply((0.8,), f12)).values,
            ),
            1e-4,
        )
    )
    return out


# --------------------------------------------------------------- metaplectic


def _suite_metaplectic(cfg):
    rng = np.random.default_rng(cfg.seed + 4)
    out = []

    worst = 0.0
    for d in (1, 2):
        gens = [
            j_matrix(d),
            build_generator("D_E", d, E=np.eye(d) * 2.0),
            build_generator("V_Q", d, Q=np.eye(d) * 0.7),
            build_generator("V_ialpha", d, alpha=1.3),
            build_generator("R_theta", d, theta=0.9),
            build_generator("S_mu", d, mu=0.8),
        ]
        for g in gens:
            worst = max(worst, g.residual())
    out.append(
        _err_check(
            "metaplectic.generators",
            "every generator satisfies the symplectic relation",
            "S^T J S = J",
            worst,
            1e-10,
        )
    )

    def random_generator(d=1):
        kind = rng.choice(["J", "D_E", "V_Q", "V_ialpha", "R_theta", "S_mu"])
        if kind == "J":
            return j_matrix(d)
        if kind == "D_E":
            return build_generator("D_E", d, E=rng.standard_normal((d, d)) + 2.0 * np.eye(d))
        if kind == "V_Q":
            Q = rng.standard_normal((d, d))
            return build_generator("V_Q", d, Q=Q + Q.T)
        if kind == "V_ialpha":
            return build_generator("V_ialpha", d, alpha=rng.uniform(0.0, 2.0))
        if kind == "R_theta":
            return build_generator("R_theta", d, theta=rng.uniform(0.0, 1.5, size=d))
        return build_generator("S_mu", d, mu=rng.uniform(-np.pi, np.pi))

    worst = 0.0
    for _ in range(50):
        word = random_generator()
        for _ in range(int(rng.integers(0, 6))):
            word = sp_compose(word, random_generator())
        scale = max(1.0, float(np.max(np.abs(word.mat))) ** 2)
        worst = max(worst, word.residual() / scale)
    out.append(
        _err_check(
            "metaplectic.random-words",
            "random generator words stay symplectic",
            "S^T J S = J for words of length <= 6",
            worst,
            1e-10,
        )
    )

    theta, mu, t = 0.7, 1.3, 1.0
    prod = sp_compose(
        build_generator("R_theta", 1, theta=theta * t), build_generator("S_mu", 1, mu=mu * t)
    )
    wv = (theta + 1j * mu) * t
    ref = np.array([[np.cosh(wv), -1j * np.sinh(wv)], [1j * np.sinh(wv), np.cosh(wv)]])
    out.append(
        _err_check(
            "metaplectic.complex-factorization",
            "hyperbolic-times-rotation block identity",
            "R_(theta t) S_(mu t) has entries cosh((theta + i mu) t), -+ i sinh",
            np.max(np.abs(prod.mat - ref)),
            1e-12,
        )
    )

    worst = 0.0
    for _ in range(20):
        s1 = sp_compose(random_generator(), random_generator())
        s2 = sp_compose(random_generator(), random_generator())
        tens = sp_tensor(s1, s2)
        scale = max(1.0, float(np.max(np.abs(tens.mat))) ** 2)
        worst = max(worst, tens.residual() / scale)
    out.append(
        _err_check(
            "metaplectic.tensor",
            "interleaved tensor of symplectic matrices is symplectic",
            "S1 (x) S2 block layout",
            worst,
            1e-10,
        )
    )

    grid = make_grid(1, cfg.grid_n, cfg.extent)
    state = tf_shift(gaussian_window(grid).field, (1.0, 0.5))
    W0 = cross_wigner(state)
    try:
        W1 = cross_wigner(frft_apply(np.pi, state))
        flipped = np.roll(np.flip(W0.values, axis=(0, 1)), (1, 1), axis=(0, 1))
        out.append(
            _err_check(
                "metaplectic.covariance-half-turn",
                "parity covariance of the phase-space density",
                "W(F_pi u)(z) = W u(-z)",
                np.max(np.abs(W1.values - flipped)) / np.max(np.abs(W0.values)),
                1e-8,
            )
        )
    except ValueError as exc:
        out.append(
            _failed(
                "metaplectic.covariance-half-turn",
                "parity covariance of the phase-space density",
                "W(F_pi u)(z) = W u(-z)",
                exc,
            )
        )
    return out


_SUITES = {
    "transforms": _suite_transforms,
    "heat": _suite_heat,
    "wave": _suite_wave,
    "hermite": _suite_hermite,
    "metaplectic": _suite_metaplectic,
}


def run_suite(name, config=None):
    """Run a named suite (or 'all') and return its SuiteReport."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    cfg = config or SuiteConfig()
    names = list(_SUITES) if name == "all" else [name]
    entries = []
    workers = worker_count()
    if workers > 1 and len(names) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            for chunk in pool.map(lambda n: _SUITES[n](cfg), names):
                entries.extend(chunk)
    else:
        for n in names:
            entries.extend(_SUITES[n](cfg))
    return SuiteReport(name, cfg, entries)
