"""Reduced Wigner kernels of the propagators and their action on
phase-space fields.

For a Fourier multiplier the phase-space evolution kernel factors as

    k_W(x, xi, y, eta) = delta(xi - eta) * kappa(x - y, xi),

with kappa(s, xi) = W(sigma)(xi, -s) = W(E)(s, xi), the Wigner transform
of the symbol (equivalently of the convolution kernel E).  The delta
factor is never discretized: kernels are stored reduced and applied as a
per-frequency-slice convolution in x.

Closed forms (kept exactly as stated; see each function):

  * heat, alpha > 0 -- a Gaussian in s and in the sheared frequency
    xi - kappa_shear * s;
  * wave, d <= 3 -- compactly supported in s (|s| <= t for d = 1,
    |s| < 2t otherwise), oscillating through sinc/J0 factors;
  * Hermite -- a full two-point Gaussian k(z, w) on phase space (no
    delta factor), per-axis separable;
  * complex Hermite -- the Hermite kernel with the input slot rigidly
    rotated, k(z, w) = k_hermite(z, S_(mu t) w).

Normalization: the heat closed form below is the phase-space density of
the unit-peak Gaussian exp(-|x|^2/(4 gamma t)); the propagator convolves
with the unit-mass kernel, whose phase-space density is smaller by
|4 pi gamma t|^d.  ReducedKernel instances carry the propagator
normalization (and, for the Hermite forms, the 2^d dilation factor of
the phase-space rescaling pair), so that apply_kernel reproduces
propagate-then-transform; the module-level closed forms keep the
reference constants.  Both conventions are pinned by tests.
"""

from dataclasses import dataclass, field

import numpy as np

from .grids import Grid, PhaseSpaceField, SampledField
from .special import bessel_j0
from .transforms import cross_wigner, wigner_freq_grid
from .gabor import phase_space_rotation

__all__ = [
    "ReducedKernel",
    "kernel_heat",
    "kernel_wave",
    "kernel_hermite",
    "kernel_complex_hermite",
    "kernel_from_symbol",
    "heat_kernel_scale",
    "apply_kernel",
    "evolve_wigner_heat",
    "lacuna_report",
    "LacunaReport",
]


def kernel_heat(t, gamma, s, xi, d):
    """Reduced heat kernel, reference closed form (alpha > 0, t > 0):

        (8 pi t (a^2+b^2)/a)^(d/2) exp(-a_s |s|^2) exp(-b_f |xi - k s|^2)

    with a_s = alpha/(2 t |gamma|^2), b_f = 8 pi^2 t |gamma|^2 / alpha and
    shear k = beta/(4 pi t |gamma|^2); for beta = 0 this is
    (8 pi alpha t)^(d/2) exp(-|s|^2/(2 alpha t) - 8 pi^2 alpha t |xi|^2).
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    if not gamma.alpha > 0:
        raise ValueError("heat kernel needs alpha > 0 (alpha = 0 is the pure shear flow)")
    s = np.asarray(s, dtype=float)
    xi = np.asarray(xi, dtype=float)
    mod2 = gamma.modulus_sq
    a_s = gamma.alpha / (2.0 * t * mod2)
    b_f = 8.0 * np.pi**2 * t * mod2 / gamma.alpha
    shear = gamma.beta / (4.0 * np.pi * t * mod2)
    s2 = s**2 if d == 1 else np.sum(s**2, axis=-1)
    ridge = xi - shear * s
    r2 = ridge**2 if d == 1 else np.sum(ridge**2, axis=-1)
    pref = (8.0 * np.pi * t * mod2 / gamma.alpha) ** (d / 2.0)
    return pref * np.exp(-a_s * s2 - b_f * r2)


def heat_kernel_scale(t, gamma, d):
    """|4 pi gamma t|^(-d): converts the reference closed form into the
    phase-space kernel of the unit-mass heat propagator."""
    return float((4.0 * np.pi * t) ** -d * gamma.modulus_sq ** (-d / 2.0))


def _perp_norm(s, xi, d):
    """|xi_perp|, the frequency component orthogonal to s (xi itself at s = 0)."""
    if d == 1:
        return np.abs(xi)
    s = np.asarray(s, dtype=float)
    xi = np.asarray(xi, dtype=float)
    s2 = np.sum(s**2, axis=-1)
    dot = np.sum(s * xi, axis=-1)
    xi2 = np.sum(xi**2, axis=-1)
    perp2 = np.where(s2 > 0, xi2 - np.where(s2 > 0, dot, 0.0) ** 2 / np.where(s2 > 0, s2, 1.0), xi2)
    return np.sqrt(np.maximum(perp2, 0.0))


def kernel_wave(d, t, s, xi):
    """Reduced wave (sine propagator) kernel, d <= 3:

      d=1: 1_{|s|<=t} sin(4 pi (t-|s|) xi) / (4 pi xi)
      d=2: 1_{|s|<2t} (1/2pi) J0(4 pi r(s) |xi_perp|)
      d=3: 1_{|s|<2t} (r(s)/(8 pi t^2)) J0(4 pi r(s) |xi_perp|)

    with r(s) = sqrt(t^2 - |s|^2/4); at s = 0 the orthogonal component is
    taken to be xi itself (rotational symmetry).  Identically zero outside
    the stated support.
    """
    if d not in (1, 2, 3):
        raise ValueError(f"wave kernel defined for d in {{1,2,3}}, got {d}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    s = np.asarray(s, dtype=float)
    xi = np.asarray(xi, dtype=float)
    if d == 1:
        gap = t - np.abs(s)
        inside = gap >= 0.0
        phase = 4.0 * np.pi * np.where(inside, gap, 0.0)
        # sin(phase*xi)/(4 pi xi) with the sinc limit at xi = 0
        vals = np.where(inside, (phase / (4.0 * np.pi)) * np.sinc(phase * xi / np.pi), 0.0)
        return vals if vals.shape else float(vals)
    s_abs2 = np.sum(s**2, axis=-1) if s.ndim else s**2
    inside = s_abs2 < (2.0 * t) ** 2
    r = np.sqrt(np.maximum(t**2 - 0.25 * s_abs2, 0.0))
    perp = _perp_norm(s, xi, d)
    j0 = np.vectorize(bessel_j0)(4.0 * np.pi * r * perp)
    if d == 2:
        vals = np.where(inside, j0 / (2.0 * np.pi), 0.0)
    else:
        vals = np.where(inside, r / (8.0 * np.pi * t**2) * j0, 0.0)
    return vals if vals.shape else float(vals)


def _hermite_axis_kernel(theta, a, b):
    """One-variable factor sinh^(-1/2) exp(-(2pi/tanh)(a^2+b^2)) exp((4pi/sinh) ab)."""
    sh, th = np.sinh(theta), np.tanh(theta)
    return sh**-0.5 * np.exp(-2.0 * np.pi / th * (a**2 + b**2) + 4.0 * np.pi / sh * a * b)


def kernel_hermite(theta, z, w):
    """Full two-point Hermite kernel (reference closed form):

        prod_{theta_j > 0} sinh(theta_j)^(-1)
            exp(-(2 pi / tanh theta_j)(x_j^2 + xi_j^2 + y_j^2 + eta_j^2))
            exp((4 pi / sinh theta_j)(x_j y_j + xi_j eta_j)).

    Evaluated only on active axes; identity axes (theta_j = 0) carry
    delta factors and are rejected here.
    """
    theta = tuple(float(v) for v in np.atleast_1d(theta))
    if any(v < 0 for v in theta):
        raise ValueError(f"theta entries must be >= 0, got {theta}")
    if any(v == 0 for v in theta):
        raise ValueError("identity axes carry delta factors; evaluate active axes only")
    d = len(theta)
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    out = 1.0
    for j, th in enumerate(theta):
        out = out * _hermite_axis_kernel(th, z[..., j], w[..., j])
        out = out * _hermite_axis_kernel(th, z[..., d + j], w[..., d + j])
    # each axis contributes two one-variable factors, each sinh^(-1/2)
    return out


def kernel_complex_hermite(theta, mu, t, z, w):
    """Complex Hermite kernel: the Hermite kernel with the input slot
    rotated forward, k(z, w) = k_hermite(z, S_(mu t) w); mu = 0 reduces to
    kernel_hermite with Theta = (theta t, ...)."""
    if not theta > 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    d = z.shape[-1] // 2
    S = phase_space_rotation(mu * t, d)
    w_rot = w @ S.T if w.ndim > 1 else S @ w
    return kernel_hermite((theta * t,) * d, z, w_rot)


@dataclass
class ReducedKernel:
    """A propagator's phase-space kernel, closed-form or grid-sampled.

    form 'sampled': values[s_idx, xi_idx] on (s_axis, xi_axis).
    forms 'heat'/'wave': eval(s, xi) reduced kernels (delta in frequency),
        normalized so that apply_kernel matches propagate-then-transform.
    forms 'hermite'/'complex_hermite': eval(z, w) full kernels including
        the 2^d dilation factor of the action normalization.
    """

    form: str
    dim: int
    params: dict = field(default_factory=dict)
    s_axis: np.ndarray = None
    xi_axis: np.ndarray = None
    values: np.ndarray = None

    @classmethod
    def heat(cls, t, gamma, d=1):
        return cls("heat", d, {"t": t, "gamma": gamma})

    @classmethod
    def wave(cls, d, t):
        return cls("wave", d, {"t": t})

    @classmethod
    def hermite(cls, theta):
        theta = tuple(float(v) for v in np.atleast_1d(theta))
        return cls("hermite", len(theta), {"theta": theta})

    @classmethod
    def complex_hermite(cls, theta, mu, t, d=1):
        return cls("complex_hermite", d, {"theta": theta, "mu": mu, "t": t})

    def eval_reduced(self, s, xi):
        if self.form == "heat":
            p = self.params
            return kernel_heat(p["t"], p["gamma"], s, xi, self.dim) * heat_kernel_scale(
                p["t"], p["gamma"], self.dim
            )
        if self.form == "wave":
            return kernel_wave(self.dim, self.params["t"], s, xi)
        if self.form == "sampled":
            si = _nearest_index(self.s_axis, s)
            xj = _nearest_index(self.xi_axis, xi)
            return self.values[si, xj]
        raise ValueError(f"{self.form!r} is not a reduced (delta-factored) kernel")

    def eval_full(self, z, w):
        d = self.dim
        if self.form == "hermite":
            return 2.0**d * kernel_hermite(self.params["theta"], z, w)
        if self.form == "complex_hermite":
            p = self.params
            return 2.0**d * kernel_complex_hermite(p["theta"], p["mu"], p["t"], z, w)
        raise ValueError(f"{self.form!r} is not a full two-point kernel")


def _nearest_index(axis, value):
    return int(np.argmin(np.abs(axis - np.asarray(value))))


def kernel_from_symbol(symbol_field, edge_tol=1e-6):
    """Sampled reduced kernel kappa(s, xi) = W(sigma)(xi, -s) from symbol samples.

    The symbol must be resolved: samples on the boundary shell of its grid
    may not exceed edge_tol times the peak (slowly decaying symbols must be
    tapered first).  The returned s axis has spacing equal to half the
    reciprocal spacing of the symbol grid; sampling the symbol at spacing
    1/(2L) therefore yields kappa on an s grid of spacing L/n.
    """
    g = symbol_field.grid
    vals = symbol_field.values
    peak = float(np.max(np.abs(vals)))
    if peak == 0.0:
        raise ValueError("symbol is identically zero")
    shell = np.zeros(g.shape, dtype=bool)
    for axis in range(g.dim):
        shell[tuple(slice(None) if a != axis else [0, -1] for a in range(g.dim))] = True
    edge = float(np.max(np.abs(vals[shell])))
    if edge > edge_tol * peak:
        raise ValueError(
            "under-resolved symbol: boundary magnitude "
            f"{edge:.3e} exceeds {edge_tol:.0e} x peak {peak:.3e}; "
            "enlarge the grid or taper the symbol"
        )
    W = cross_wigner(symbol_field)
    if g.dim != 1:
        raise ValueError("sampled kernels are built in one dimension")
    n = g.points_per_axis
    # W.values[xi_idx, r_idx]; kappa[s_idx, xi_idx] = W[xi_idx, index of -s]
    neg = (n - np.arange(n)) % n
    kappa = W.values.T[neg, :]
    s_axis = wigner_freq_grid(g).axis()
    return ReducedKernel(
        "sampled",
        g.dim,
        {"source": "symbol"},
        s_axis=s_axis,
        xi_axis=g.axis(),
        values=kappa,
    )


def _centered_fft_conv(kernel_slices, field_slices, dx):
    """Per-column circular convolution sum_y kappa(x - y) F(y) dx.

    kernel_slices[k, m]: kappa at s = (k - n/2) dx for frequency column m.
    """
    k0 = np.fft.ifftshift(kernel_slices, axes=0)
    return np.fft.ifft(np.fft.fft(k0, axis=0) * np.fft.fft(field_slices, axis=0), axis=0) * dx


def apply_kernel(kernel, w_in):
    """Evolve a phase-space field by a propagator kernel.

    Reduced (delta-factored) forms act per frequency slice by an
    FFT-accelerated convolution in x; the Hermite forms act by dense
    quadrature (separable per variable for the unrotated kernel, full
    two-point matrix for the rotated one).
    """
    pos, freq = w_in.pos_grid, w_in.freq_grid
    if kernel.form in ("heat", "wave", "sampled"):
        if pos.dim != 1:
            raise ValueError("kernel action implemented on one-dimensional phase space")
        if kernel.form == "sampled" and abs(kernel.s_axis[1] - kernel.s_axis[0] - pos.spacing) > 1e-12:
            raise ValueError(
                "sampled kernel s-spacing does not match the field's position spacing; "
                "sample the symbol at half the reciprocal spacing of the target grid"
            )
        s = pos.axis()
        xi = freq.axis()
        if kernel.form == "sampled":
            rows = [_nearest_index(kernel.s_axis, v) for v in s]
            cols = [_nearest_index(kernel.xi_axis, v) for v in xi]
            slices = kernel.values[np.ix_(rows, cols)]
        else:
            slices = kernel.eval_reduced(s[:, None], xi[None, :])
        out = _centered_fft_conv(slices, w_in.values, pos.spacing)
        return PhaseSpaceField(pos, freq, out)

    if kernel.form in ("hermite", "complex_hermite"):
        if pos.dim != 1:
            raise ValueError("dense kernel action implemented on one-dimensional phase space")
        x = pos.axis()
        xi = freq.axis()
        cell = pos.spacing * freq.spacing
        if kernel.form == "hermite":
            th = kernel.params["theta"][0]
            Mx = np.sqrt(2.0) * _hermite_axis_kernel(th, x[:, None], x[None, :]) * pos.spacing
            Mf = np.sqrt(2.0) * _hermite_axis_kernel(th, xi[:, None], xi[None, :]) * freq.spacing
            return PhaseSpaceField(pos, freq, Mx @ w_in.values @ Mf.T)
        if pos.size * freq.size > 4096:
            raise ValueError("rotated dense kernel action limited to small phase-space grids")
        Z = np.stack(np.meshgrid(x, xi, indexing="ij"), axis=-1).reshape(-1, 2)
        p = kernel.params
        mat = 2.0**pos.dim * kernel_complex_hermite(
            p["theta"], p["mu"], p["t"], Z[:, None, :], Z[None, :, :]
        )
        out = (mat @ w_in.values.ravel()) * cell
        return PhaseSpaceField(pos, freq, out.reshape(w_in.values.shape))

    raise ValueError(f"unknown kernel form {kernel.form!r}")


def evolve_wigner_heat(w_in, t, alpha, beta=0.0):
    """Heat evolution of a phase-space density (alpha > 0, t > 0):

        W_out(x, xi) = (2 pi alpha t)^(-d/2) exp(-8 pi^2 alpha t |xi|^2)
            int W_in(x - 4 pi beta t xi - y, xi) exp(-|y|^2/(2 alpha t)) dy

    realized per frequency slice as a frequency-domain multiplier
    exp(-2 pi^2 alpha t k^2) exp(-8 i pi^2 beta t k xi): shear by
    4 pi beta t xi, normalized Gaussian smoothing in x, then Gaussian
    damping in xi.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    pos, freq = w_in.pos_grid, w_in.freq_grid
    if pos.dim != 1:
        raise ValueError("implemented on one-dimensional phase space")
    n = pos.points_per_axis
    k = np.fft.fftfreq(n, pos.spacing)
    xi = freq.axis()
    mult = np.exp(
        -2.0 * np.pi**2 * alpha * t * k[:, None] ** 2
        - 8j * np.pi**2 * beta * t * k[:, None] * xi[None, :]
    )
    out = np.fft.ifft(np.fft.fft(w_in.values, axis=0) * mult, axis=0)
    out = out * np.exp(-8.0 * np.pi**2 * alpha * t * xi[None, :] ** 2)
    return PhaseSpaceField(pos, freq, out)


@dataclass
class LacunaReport:
    """Ghost-frequency analysis of the d = 1 cosine propagator.

    The x-side kernel is the half-sum of two point masses at +-t; its
    phase-space density carries, besides the two light-cone lines, an
    interference ("ghost") line at s = 0 oscillating as cos(4 pi xi t).
    The Gabor matrix of the same propagator shows no such line: its value
    at s = 0 is suppressed by exp(-pi t^2 / 2) relative to the light-cone
    amplitude.
    """

    t: float
    ghost_correlation: float
    ghost_period: float
    ghost_period_expected: float
    ghost_period_bin: float
    ghost_amplitude: float
    gabor_center_ratio: float
    gabor_center_ratio_expected: float
    gabor_numeric_vs_closed: float


def lacuna_report(t, grid, taper=0.09):
    """Measure the ghost line of the mollified cosine kernel and the
    corresponding Gabor suppression at the lacuna center.

    The grid must resolve both light-cone offsets: t on-grid and within
    half the reduced-kernel s range.
    """
    from .propagators import wave_propagate  # local import to avoid a cycle
    from .transforms import gaussian_window
    from .gabor import gabor_numeric

    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    half_range = grid.points_per_axis * grid.spacing / 4.0
    if t > half_range:
        raise ValueError(f"grid s-range +-{half_range} cannot hold the offsets +-{t}")
    try:
        grid.offset_of((t,))
    except ValueError as err:
        raise ValueError(f"t must be an on-grid offset: {err}") from None

    # mollified symbol cos(2 pi xi t) exp(-pi taper xi^2) on the half-spacing grid
    sym_grid = Grid(1, grid.points_per_axis, 2.0 * grid.extent).dual()
    xi = sym_grid.axis()
    sym = SampledField(sym_grid, np.cos(2.0 * np.pi * xi * t) * np.exp(-np.pi * taper * xi**2))
    kern = kernel_from_symbol(sym)
    s0 = _nearest_index(kern.s_axis, 0.0)
    slice0 = kern.values[s0, :].real
    envelope = np.exp(-2.0 * np.pi * taper * kern.xi_axis**2)
    ref = np.cos(4.0 * np.pi * kern.xi_axis * t) * envelope
    corr = float(
        np.dot(slice0, ref) / np.sqrt(np.dot(slice0, slice0) * np.dot(ref, ref))
    )

    # dominant oscillation frequency of the s = 0 slice
    dxi = kern.xi_axis[1] - kern.xi_axis[0]
    spectrum = np.abs(np.fft.rfft(slice0))
    spectrum[0] = 0.0
    f_cycles = np.fft.rfftfreq(len(slice0), dxi)
    f_peak = float(f_cycles[int(np.argmax(spectrum))])
    period = 1.0 / f_peak if f_peak > 0 else np.inf
    bin_width = float(f_cycles[1])

    # Gabor side: numeric cosine-propagator matrix at s in {0, +-t}, xi = eta = 0
    win = gaussian_window(grid)
    apply_cos = lambda f: wave_propagate(f, t, "cosine")
    h0 = abs(gabor_numeric(apply_cos, (0.0, 0.0), (0.0, 0.0), win))
    hp = abs(gabor_numeric(apply_cos, (t, 0.0), (0.0, 0.0), win))
    hm = abs(gabor_numeric(apply_cos, (-t, 0.0), (0.0, 0.0), win))
    # the two light-cone humps share the amplitude nu/2 and contaminate each
    # other by exp(-2 pi t^2); the ratio below removes that exactly
    cross = np.exp(-2.0 * np.pi * t**2)
    ratio = h0 * (1.0 + cross) / (hp + hm)
    expected = np.exp(-0.5 * np.pi * t**2)
    closed_center = 2.0**-0.5 * np.exp(-0.5 * np.pi * t**2)
    return LacunaReport(
        t=t,
        ghost_correlation=corr,
        ghost_period=period,
        ghost_period_expected=1.0 / (2.0 * t),
        ghost_period_bin=bin_width,
        ghost_amplitude=float(np.max(np.abs(slice0))),
        gabor_center_ratio=float(ratio),
        gabor_center_ratio_expected=float(expected),
        gabor_numeric_vs_closed=float(abs(h0 - closed_center)),
    )
