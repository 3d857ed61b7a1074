"""Evolution operators: Fourier multipliers for the complex heat and wave
equations, the Hermite semigroup, the fractional Fourier transform, and
their compositions.

Heat flow (diffusion parameter gamma = alpha + i beta, alpha >= 0):

    symbol sigma(t, xi) = exp(-4*pi^2*gamma*t*|xi|^2)
    kernel K_t(x) = (4*pi*gamma*t)^(-d/2) exp(-|x|^2 / (4*gamma*t))

Wave flow: the sine propagator has symbol sin(2*pi*|xi|*t)/(2*pi*|xi|)
and, for d <= 3, acts by convolution against a positive measure mu_t of
total mass t supported in the ball of radius t; the time derivative has
symbol cos(2*pi*|xi|*t).

Hermite semigroup (per-axis parameters theta_j >= 0):

    R_theta u(x) = cosh(theta)^(-1/2) int u_hat(eta)
        exp(-pi*tanh(theta)*(x^2 + eta^2)) exp(2*pi*i*x*eta/cosh(theta)) deta

evaluated by direct quadrature on the dual grid (desk scale, no
eigenfunction expansion).  The complex Hermite propagator factors as
R_(theta*t) composed with the fractional Fourier transform F_(mu*t).
"""

from dataclasses import dataclass, field

import numpy as np

from .grids import SampledField, dft, _centered_axes

__all__ = [
    "ComplexDiffusion",
    "WaveMeasure",
    "HermiteParams",
    "heat_symbol",
    "wave_symbol",
    "apply_multiplier",
    "heat_propagate",
    "wave_propagate",
    "heat_kernel",
    "wave_measure_nodes",
    "wave_measure_pairing",
    "hermite_apply",
    "frft_apply",
    "complex_hermite_apply",
]

# below this |sin(mu)| the chirp form of the fractional transform blows up;
# the exact identity/parity branch takes over
FRFT_ANGLE_THRESHOLD = 1e-6


@dataclass(frozen=True)
class ComplexDiffusion:
    """gamma = alpha + i*beta with alpha >= 0 and gamma != 0."""

    alpha: float
    beta: float = 0.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.alpha == 0 and self.beta == 0:
            raise ValueError("gamma must be nonzero")

    @property
    def gamma(self):
        return complex(self.alpha, self.beta)

    @property
    def modulus_sq(self):
        return self.alpha**2 + self.beta**2


@dataclass(frozen=True)
class WaveMeasure:
    """The propagation measure mu_t of the sine multiplier, d <= 3."""

    dim: int
    t: float

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ValueError(f"wave measure defined for d in {{1,2,3}}, got {self.dim}")
        if not self.t > 0:
            raise ValueError(f"t must be positive, got {self.t}")


@dataclass(frozen=True)
class HermiteParams:
    """Per-axis semigroup parameters Theta, rotation rate mu, and time t."""

    theta: tuple
    mu: float = 0.0
    t: float = 1.0

    def __post_init__(self):
        th = tuple(float(v) for v in np.atleast_1d(self.theta))
        if any(v < 0 for v in th):
            raise ValueError(f"theta entries must be >= 0, got {th}")
        if self.t < 0:
            raise ValueError(f"t must be >= 0, got {self.t}")
        object.__setattr__(self, "theta", th)


def heat_symbol(t, gamma, xi):
    """sigma(t, xi) = exp(-4*pi^2*gamma*t*|xi|^2); xi may be a point or array of points."""
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    xi2 = _squared_norm(xi)
    return np.exp(-4.0 * np.pi**2 * gamma.gamma * t * xi2)


def wave_symbol(kind, t, xi):
    """Wave multipliers: 'sine' -> sin(2 pi |xi| t)/(2 pi |xi|), 'cosine' -> cos(2 pi |xi| t).

    The sine symbol takes the value t at xi = 0 (removable singularity).
    """
    r = np.sqrt(_squared_norm(xi))
    if kind == "sine":
        return t * np.sinc(2.0 * r * t)
    if kind == "cosine":
        return np.cos(2.0 * np.pi * r * t)
    raise ValueError(f"unknown wave symbol kind {kind!r}")


def _squared_norm(xi):
    xi = np.asarray(xi, dtype=float)
    if xi.ndim <= 1:
        return np.sum(np.atleast_1d(xi) ** 2)
    return np.sum(xi**2, axis=-1)


def _symbol_on_dual(symbol, grid):
    """Evaluate a symbol callable (or accept an array) on the dual-grid mesh.

    Callables receive stacked points of shape grid.shape + (d,).
    """
    dual = grid.dual()
    if callable(symbol):
        pts = np.stack(np.meshgrid(*([dual.axis()] * dual.dim), indexing="ij"), axis=-1)
        vals = np.asarray(symbol(pts), dtype=complex)
    else:
        vals = np.asarray(symbol, dtype=complex)
    if vals.shape != dual.shape:
        raise ValueError(f"symbol samples shaped {vals.shape}, expected {dual.shape}")
    return vals


def apply_multiplier(symbol, fld):
    """sigma(D) f = inverse-DFT( sigma . DFT f ).

    `symbol` is either a callable evaluated on the dual grid or an array of
    samples already on it.  Non-finite symbol values are rejected.
    """
    vals = _symbol_on_dual(symbol, fld.grid)
    if not np.all(np.isfinite(vals)):
        raise ValueError("multiplier symbol has non-finite values on the dual grid")
    spec = dft(fld, "forward")
    return dft(SampledField(spec.grid, spec.values * vals), "inverse")


def heat_propagate(fld, t, gamma):
    """Heat evolution exp(gamma t Laplacian) via the frequency multiplier."""
    xi2 = fld.grid.dual().squared_radius()
    return apply_multiplier(np.exp(-4.0 * np.pi**2 * gamma.gamma * t * xi2), fld)


def wave_propagate(fld, t, kind="sine"):
    """Sine (or cosine) wave propagator at time t via the frequency multiplier."""
    r = np.sqrt(fld.grid.dual().squared_radius())
    if kind == "sine":
        return apply_multiplier(t * np.sinc(2.0 * r * t), fld)
    return apply_multiplier(np.cos(2.0 * np.pi * r * t), fld)


def heat_kernel(t, gamma, x, d):
    """K_t(x) = (4*pi*gamma*t)^(-d/2) exp(-|x|^2/(4*gamma*t)), principal branch.

    For alpha = 0 the kernel is purely oscillatory; it is still evaluated.
    """
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    x2 = _squared_norm(x)
    gt = gamma.gamma * t
    return (4.0 * np.pi * gt) ** (-d / 2.0) * np.exp(-x2 / (4.0 * gt))


def wave_measure_nodes(measure, n_radial=200, n_angular=128):
    """Quadrature nodes/weights for int f dmu_t.

    d=1: Gauss-Legendre on [-t, t] with density 1/2.
    d=2: substitution r = t*sin(phi) absorbs the (t^2-r^2)^(-1/2) weight
         (Gauss-Legendre in phi, trapezoid in the angle).
    d=3: surface measure on the sphere |y| = t, Gauss-Legendre in
         cos(polar) x trapezoid in azimuth, total weight t.
    Returns (points, weights) with points of shape (N, d).
    """
    t, d = measure.t, measure.dim
    if d == 1:
        u, w = np.polynomial.legendre.leggauss(n_radial)
        pts = (t * u)[:, None]
        wts = 0.5 * t * w
        return pts, wts
    if d == 2:
        phi, wphi = np.polynomial.legendre.leggauss(n_radial)
        phi = 0.25 * np.pi * (phi + 1.0)
        wphi = 0.25 * np.pi * wphi
        ang = 2.0 * np.pi * (np.arange(n_angular) + 0.5) / n_angular
        r = t * np.sin(phi)
        pts = np.stack(
            [
                np.outer(r, np.cos(ang)).ravel(),
                np.outer(r, np.sin(ang)).ravel(),
            ],
            axis=-1,
        )
        wts = np.outer(t * np.sin(phi) * wphi, np.full(n_angular, 1.0 / n_angular)).ravel()
        return pts, wts
    u, wu = np.polynomial.legendre.leggauss(n_radial)
    ang = 2.0 * np.pi * (np.arange(n_angular) + 0.5) / n_angular
    s = np.sqrt(1.0 - u**2)
    pts = np.stack(
        [
            t * np.outer(s, np.cos(ang)).ravel(),
            t * np.outer(s, np.sin(ang)).ravel(),
            t * np.outer(u, np.ones(n_angular)).ravel(),
        ],
        axis=-1,
    )
    wts = np.outer(0.5 * t * wu, np.full(n_angular, 1.0 / n_angular)).ravel()
    return pts, wts


def wave_measure_pairing(measure, test, n_radial=200, n_angular=128):
    """int test dmu_t by the quadratures above; `test` maps (N, d) points to values."""
    pts, wts = wave_measure_nodes(measure, n_radial, n_angular)
    acc = complex(np.sum(wts * np.asarray(test(pts))))
    if abs(acc.imag) < 1e-13 * (abs(acc.real) + 1.0):
        return acc.real
    return acc


def _axis_centered_dft(values, axis, spacing):
    return _centered_axes(values, (axis,)) * spacing


def _hermite_axis_matrix(grid, theta):
    """Dense map from the centered spectrum to position samples for one axis."""
    x = grid.axis()
    eta = grid.dual().axis()
    ch, th = np.cosh(theta), np.tanh(theta)
    M = np.exp(-np.pi * th * (x[:, None] ** 2 + eta[None, :] ** 2))
    M = M * np.exp(2j * np.pi * np.outer(x, eta) / ch)
    return M * (ch**-0.5 * grid.dual_spacing)


def hermite_apply(params, fld):
    """Apply the Hermite semigroup R_Theta axis by axis.

    Axes with theta_j = 0 act as the identity.  Each active axis is a
    1-d centered DFT followed by the dense quadrature matrix of the
    defining integral (n x n contraction; intended for n <= 512 in 1-d,
    n <= 128 per axis in 2-d).
    """
    if isinstance(params, HermiteParams):
        theta = params.theta
        if params.mu != 0.0:
            raise ValueError("hermite_apply requires mu = 0; use complex_hermite_apply")
    else:
        theta = tuple(float(v) for v in np.atleast_1d(params))
    g = fld.grid
    if len(theta) != g.dim:
        raise ValueError(f"need {g.dim} axis parameters, got {len(theta)}")
    if any(v < 0 for v in theta):
        raise ValueError(f"theta entries must be >= 0, got {theta}")
    out = fld.values
    for axis, th in enumerate(theta):
        if th == 0.0:
            continue
        spec = _axis_centered_dft(out, axis, g.spacing)
        M = _hermite_axis_matrix(g, th)
        out = np.moveaxis(np.tensordot(M, spec, axes=([1], [axis])), 0, axis)
    return SampledField(g, out)


def _parity(values):
    """f(x) -> f(-x) on the centered periodic grid (index k -> (n-k) mod n)."""
    out = values
    for axis in range(values.ndim):
        out = np.roll(np.flip(out, axis=axis), 1, axis=axis)
    return out


def _quarter_power(fld, q):
    """(F_(pi/2))^q on a self-dual grid, exact up to phase (q taken mod 4)."""
    q = q % 4
    if q == 0:
        return fld.copy()
    if q == 2:
        return SampledField(fld.grid, _parity(fld.values))
    out = dft(fld, "forward" if q == 1 else "inverse")
    return SampledField(fld.grid, out.values)


def _chirp_quadrature(mu, fld):
    """Dense per-axis quadrature of the defining chirp integral (well
    conditioned only for mu away from multiples of pi)."""
    g = fld.grid
    cot = 1.0 / np.tan(mu)
    x = g.axis()
    chirp = np.exp(1j * np.pi * cot * x**2)
    kernel = np.exp(-2j * np.pi * np.outer(x, x) / np.sin(mu))
    M = (1 - 1j * cot) ** 0.5 * chirp[:, None] * kernel * chirp[None, :] * g.spacing
    out = fld.values
    for axis in range(g.dim):
        out = np.moveaxis(np.tensordot(M, out, axes=([1], [axis])), 0, axis)
    return SampledField(g, out)


def frft_apply(mu, fld):
    """Fractional Fourier transform F_mu on a sampled field.

    F_mu f(xi) = (1 - i cot mu)^(d/2) int f(x)
        exp(i*pi*(|x|^2+|xi|^2)/tan(mu)) exp(-2*pi*i*x.xi/sin(mu)) dx.

    Angles with |sin(mu)| below the threshold dispatch to the exact
    identity (mu ~ 0 mod 2 pi) or parity (mu ~ pi) branch.  Otherwise mu
    is reduced modulo exact quarter turns (plain DFTs) to a residual
    angle in [pi/4, 3 pi/4), where the dense chirp quadrature of the
    defining integral is well conditioned; the reduction step needs a
    self-dual grid (extent^2 = n), on which the quarter turn maps the
    grid to itself.  Unitary up to grid-truncation error on resolved
    fields; phases are tracked only up to a constant.
    """
    g = fld.grid
    if abs(np.sin(mu)) < FRFT_ANGLE_THRESHOLD:
        half_turns = round(mu / np.pi)
        if half_turns % 2 == 0:
            return fld.copy()
        return SampledField(g, _parity(fld.values))
    quarters = int(np.floor((mu - np.pi / 4.0) / (np.pi / 2.0)))
    residual = mu - quarters * np.pi / 2.0
    if quarters % 4 and abs(g.extent**2 - g.points_per_axis) > 1e-9:
        raise ValueError(
            "fractional transform at a general angle needs a self-dual grid "
            f"(extent^2 = n); got extent {g.extent}, n {g.points_per_axis}"
        )
    return _chirp_quadrature(residual, _quarter_power(fld, quarters))


def complex_hermite_apply(params, fld):
    """Propagator of the complex Hermite flow: R_(theta t) after F_(mu t).

    `params.theta` must be isotropic (one common positive value); t = 0 is
    the identity.
    """
    if not isinstance(params, HermiteParams):
        raise TypeError("complex_hermite_apply expects HermiteParams")
    theta = set(params.theta)
    if len(theta) != 1:
        raise ValueError("complex Hermite flow is isotropic; theta entries must agree")
    th = theta.pop()
    if th <= 0:
        raise ValueError("complex Hermite flow requires theta > 0")
    if params.t == 0.0:
        return fld.copy()
    rotated = frft_apply(params.mu * params.t, fld)
    return hermite_apply((th * params.t,) * fld.grid.dim, rotated)
