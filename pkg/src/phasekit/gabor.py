"""Gabor matrices h(z, w) = <T pi(z)g, pi(w)g> of the propagators.

Everything is taken against the Gaussian window g(x) = exp(-pi*|x|^2)
(norm^2 = 2^(-d/2)); phase-space points are z = (z1, z2) with position
part z1 and frequency part z2.

Closed forms:

  * identity:  |h(z, w)| = 2^(-d/2) exp(-pi/2 |w - z|^2)
  * heat:      G_t(z, w) = (2*rho_t)^(-d/2) exp(-pi(|z2|^2+|w2|^2))
                   exp(2*pi*i(z2.z1 - w2.w1)) exp(pi/(2*rho_t) c.c),
               rho_t = 1 + 2*pi*gamma*t, c = (z2+w2) + i(w1-z1),
    with the sharp Gaussian bound governed by eps(t, alpha, beta)
  * wave (d <= 3): |h|^2 as a double integral against the propagation
    measure, evaluated by quadrature
  * Hermite, per-axis parameters theta_j >= 0:
      |h(z, w)| = prod_j 2^(-1/2) exp(-theta_j/2)
          exp(-pi/4 (1+exp(-theta_j)) (z_j - w_j)^2)
          exp(-pi/4 (1-exp(-theta_j)) (z_j + w_j)^2)
    where (z_j - w_j)^2 pairs the j-th position and frequency
    coordinates.  The amplitude 2^(-1/2) exp(-theta_j/2) per axis is
    pinned by the eigenstate identity <R_theta g, g> = exp(-theta/2)
    ||g||^2 and by matching the quadrature propagator at a reference
    point; it is continuous through theta_j = 0, where the factor
    degenerates to the free overlap.
  * complex Hermite: the Hermite modulus evaluated at (S_(mu t) z, w),
    a rigid phase-space rotation of the z argument.
"""

from dataclasses import dataclass, field

import numpy as np

from .propagators import WaveMeasure, wave_measure_nodes
from .special import erf
from .transforms import tf_shift

__all__ = [
    "GaborSlice",
    "DecayFit",
    "free_gabor_mod",
    "gabor_numeric",
    "gabor_heat_closed",
    "heat_epsilon",
    "gabor_heat_bound",
    "wave_overlap_profile",
    "gabor_wave_modsq",
    "gabor_wave_bound",
    "gabor_hermite_mod",
    "gabor_complex_hermite_mod",
    "phase_space_rotation",
    "fit_decay",
    "fit_decay_profile",
]


def _split(z, d):
    z = np.atleast_1d(np.asarray(z, dtype=float))
    if z.shape != (2 * d,):
        raise ValueError(f"phase-space point needs {2 * d} coordinates, got {z.shape}")
    return z[:d], z[d:]


@dataclass
class GaborSlice:
    """A w-slice of a Gabor matrix at fixed z, with axes and metadata."""

    fixed_z: tuple
    w_pos_axis: np.ndarray
    w_freq_axis: np.ndarray
    values: np.ndarray
    kind: str
    params: dict = field(default_factory=dict)
    modulus_only: bool = True

    def __post_init__(self):
        expected = (len(self.w_pos_axis), len(self.w_freq_axis))
        if self.values.shape != expected:
            raise ValueError(f"slice shaped {self.values.shape}, expected {expected}")
        if self.modulus_only and np.iscomplexobj(self.values):
            raise ValueError("modulus-only slice must carry real values")


@dataclass
class DecayFit:
    """Least-squares envelope fit log|h| ~ log C - eps * dist^p."""

    prefactor: float
    rate: float
    exponent: float
    residual: float

    def __post_init__(self):
        if not (self.prefactor > 0 and self.rate > 0 and self.exponent > 0):
            raise ValueError("decay fit parameters must be positive")


def free_gabor_mod(z, w, d):
    """|<pi(z)g, pi(w)g>| = 2^(-d/2) exp(-pi/2 |w - z|^2)."""
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    return 2.0 ** (-d / 2.0) * np.exp(-0.5 * np.pi * np.sum((w - z) ** 2))


def gabor_numeric(apply_T, z, w, window):
    """Discrete <apply_T(pi(z) g), pi(w) g> with Riemann weight.

    Position parts of z and w must land on grid points (tf_shift does not
    interpolate); frequency parts are unrestricted.
    """
    shifted = tf_shift(window.field, z)
    evolved = apply_T(shifted)
    probe = tf_shift(window.field, w)
    return evolved.inner(probe)


def gabor_heat_closed(t, gamma, z, w, d):
    """Closed-form heat Gabor matrix entry G_t(z, w) (t >= 0).

    rho_t = 1 + 2*pi*gamma*t stays in the right half plane for
    alpha >= 0, so the principal branch of (2*rho_t)^(-d/2) is the one
    continuous in t from rho_0 = 1.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    z1, z2 = _split(z, d)
    w1, w2 = _split(w, d)
    rho = 1.0 + 2.0 * np.pi * gamma.gamma * t
    c = (z2 + w2) + 1j * (w1 - z1)
    out = (2.0 * rho) ** (-d / 2.0)
    out = out * np.exp(-np.pi * (np.sum(z2**2) + np.sum(w2**2)))
    out = out * np.exp(2j * np.pi * (np.dot(z2, z1) - np.dot(w2, w1)))
    return complex(out * np.exp(np.pi / (2.0 * rho) * np.sum(c * c)))


def heat_epsilon(t, alpha, beta):
    """Sharp Gaussian decay rate of the heat Gabor bound:

        eps = pi/4 (1 - sqrt(1 - 8*pi*alpha*t / ((1+2*pi*alpha*t)^2 + (2*pi*beta*t)^2)))

    Satisfies 0 < eps <= pi/4, with the maximum pi/4 at beta = 0,
    t = 1/(2*pi*alpha).
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    # cancellation-free form of the radicand:
    # 1 - 8 pi a t / |rho|^2 = ((1 - 2 pi a t)^2 + (2 pi b t)^2) / |rho|^2
    denom = (1.0 + 2.0 * np.pi * alpha * t) ** 2 + (2.0 * np.pi * beta * t) ** 2
    numer = (1.0 - 2.0 * np.pi * alpha * t) ** 2 + (2.0 * np.pi * beta * t) ** 2
    return 0.25 * np.pi * (1.0 - np.sqrt(numer / denom))


def gabor_heat_bound(t, gamma, z, w, d):
    """Pointwise dominating envelope of |G_t(z, w)| (alpha > 0, t > 0):

        2^(-d/2) ((1+2 pi alpha t)^2 + (2 pi beta t)^2)^(-d/4)
            exp(-eps/2 (|z2|^2 + |w2|^2) - eps |z1 - w1|^2).
    """
    eps = heat_epsilon(t, gamma.alpha, gamma.beta)
    z1, z2 = _split(z, d)
    w1, w2 = _split(w, d)
    mod2 = (1.0 + 2.0 * np.pi * gamma.alpha * t) ** 2 + (2.0 * np.pi * gamma.beta * t) ** 2
    pref = 2.0 ** (-d / 2.0) * mod2 ** (-d / 4.0)
    expo = -0.5 * eps * (np.sum(z2**2) + np.sum(w2**2)) - eps * np.sum((z1 - w1) ** 2)
    return float(pref * np.exp(expo))


def wave_overlap_profile(t, u, zeta=0.0, n_nodes=400):
    """The d = 1 inner wave integral

        I_zeta(u) = int exp(-pi r^2/4) m_t(u + r/2) m_t(u - r/2)
                        exp(-2*pi*i*r*zeta) dr,

    supported in |u| <= t; at center frequency zeta = 0 it equals
    (1/2) erf(sqrt(pi) (t - |u|)_+).  (The integration limits
    |r| <= 2(t - |u|)_+ give the 1/2: int_0^(2 tau) exp(-pi r^2/4) dr
    = erf(sqrt(pi) tau).)
    """
    half = max(0.0, t - abs(u))
    if half == 0.0:
        return 0.0 if zeta == 0.0 else 0.0 + 0.0j
    nodes, wts = np.polynomial.legendre.leggauss(n_nodes)
    r = 2.0 * half * nodes
    wts = 2.0 * half * wts
    vals = 0.25 * np.exp(-0.25 * np.pi * r**2) * np.exp(-2j * np.pi * r * zeta)
    acc = complex(np.sum(wts * vals))
    return acc.real if zeta == 0.0 else acc


_WAVE_NODES = {1: (200, 1), 2: (48, 64), 3: (48, 96)}


def gabor_wave_modsq(t, d, z, w, n_radial=None, n_angular=None):
    """|<T_t pi(z)g, pi(w)g>|^2 for the sine wave propagator, d <= 3:

        2^(-d) exp(-pi|z2 - w2|^2) *
        int int exp(-pi |z1 - w1 - (a+b)/2|^2) exp(-pi/4 |a-b|^2)
                exp(-2*pi*i (a-b).(z2+w2)/2) dmu_t(a) dmu_t(b),

    evaluated by the product quadrature of the propagation measure.
    """
    if d not in (1, 2, 3):
        raise ValueError(f"wave Gabor matrix defined for d <= 3, got {d}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    nr, na = _WAVE_NODES[d]
    nr = n_radial or nr
    na = n_angular or na
    pts, wts = wave_measure_nodes(WaveMeasure(d, t), nr, na)
    z1, z2 = _split(z, d)
    w1, w2 = _split(w, d)
    diff = z1 - w1
    zeta = 0.5 * (z2 + w2)

    acc = 0.0 + 0.0j
    block = 512
    for start in range(0, len(pts), block):
        a = pts[start : start + block][:, None, :]
        wa = wts[start : start + block][:, None]
        mid = 0.5 * (a + pts[None, :, :])
        gap = a - pts[None, :, :]
        F = np.exp(
            -np.pi * np.sum((diff - mid) ** 2, axis=-1) - 0.25 * np.pi * np.sum(gap**2, axis=-1)
        )
        F = F * np.exp(-2j * np.pi * np.tensordot(gap, zeta, axes=([2], [0])))
        acc += np.sum(wa * wts[None, :] * F)
    out = 2.0 ** (-d) * np.exp(-np.pi * np.sum((z2 - w2) ** 2)) * acc.real
    return max(out, 0.0)


def _wave_gap_integral(t, d):
    """J_t = int int exp(-pi |a-b|^2/4) dmu_t(a) dmu_t(b)  (finite, <= t^2)."""
    nr, na = _WAVE_NODES[d]
    pts, wts = wave_measure_nodes(WaveMeasure(d, t), nr, na)
    acc = 0.0
    block = 512
    for start in range(0, len(pts), block):
        a = pts[start : start + block][:, None, :]
        wa = wts[start : start + block][:, None]
        gap2 = np.sum((a - pts[None, :, :]) ** 2, axis=-1)
        acc += float(np.sum(wa * wts[None, :] * np.exp(-0.25 * np.pi * gap2)))
    return acc


def gabor_wave_bound(t, d, z, w):
    """Dominating envelope of the sine-propagator Gabor modulus.

    d = 1: sqrt(C_t) exp(-pi/4 |x-y|^2) exp(-pi/2 |xi-eta|^2) with
           C_t = sup|I| * vol(B_2t) * exp(4 pi t^2), sup|I| = erf(sqrt(pi) t)/2.
    d = 2: same profile with the integrated autocorrelation constant
           2^(-d) J_t exp(4 pi t^2) (the pointwise sup of I degenerates
           on the light circle, the integrated form does not).
    d = 3: the sharper light-cone form t exp(-pi/2 (|x-y|-t)^2)
           exp(-pi/2 |xi-eta|^2).
    """
    if d not in (1, 2, 3):
        raise ValueError(f"wave bound defined for d <= 3, got {d}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    z1, z2 = _split(z, d)
    w1, w2 = _split(w, d)
    pos2 = np.sum((z1 - w1) ** 2)
    freq2 = np.sum((z2 - w2) ** 2)
    if d == 3:
        r = np.sqrt(pos2)
        return float(t * np.exp(-0.5 * np.pi * (r - t) ** 2) * np.exp(-0.5 * np.pi * freq2))
    if d == 1:
        c_t = 0.5 * erf(np.sqrt(np.pi) * t) * 4.0 * t * np.exp(4.0 * np.pi * t**2)
    else:
        c_t = 2.0 ** (-d) * _wave_gap_integral(t, d) * np.exp(4.0 * np.pi * t**2)
    return float(np.sqrt(c_t) * np.exp(-0.25 * np.pi * pos2 - 0.5 * np.pi * freq2))


def _hermite_axis_pairs(theta, z, w):
    d = len(theta)
    z1, z2 = _split(z, d)
    w1, w2 = _split(w, d)
    return [
        (theta[j], (z1[j], z2[j]), (w1[j], w2[j]))
        for j in range(d)
    ]


def gabor_hermite_mod(theta, z, w):
    """|<R_Theta pi(z)g, pi(w)g>| per the per-axis closed form above.

    theta: per-axis semigroup parameters, entries >= 0; identity axes
    (theta_j = 0) contribute the free overlap factor.
    """
    theta = tuple(float(v) for v in np.atleast_1d(theta))
    if any(v < 0 for v in theta):
        raise ValueError(f"theta entries must be >= 0, got {theta}")
    out = 1.0
    for th, zj, wj in _hermite_axis_pairs(theta, z, w):
        diff2 = (zj[0] - wj[0]) ** 2 + (zj[1] - wj[1]) ** 2
        if th == 0.0:
            out *= 2.0**-0.5 * np.exp(-0.5 * np.pi * diff2)
            continue
        summ2 = (zj[0] + wj[0]) ** 2 + (zj[1] + wj[1]) ** 2
        damp = np.exp(-th)
        out *= (
            2.0**-0.5
            * np.exp(-0.5 * th)
            * np.exp(-0.25 * np.pi * (1.0 + damp) * diff2)
            * np.exp(-0.25 * np.pi * (1.0 - damp) * summ2)
        )
    return float(out)


def phase_space_rotation(mu, d):
    """The 2d x 2d rotation S_mu = [[cos I, sin I], [-sin I, cos I]]."""
    I = np.eye(d)
    c, s = np.cos(mu), np.sin(mu)
    return np.block([[c * I, s * I], [-s * I, c * I]])


def gabor_complex_hermite_mod(theta, mu, t, z, w):
    """|<R_((theta + i mu) t) pi(z)g, pi(w)g>|: the Hermite modulus at
    (S_(mu t) z, w) -- the z argument is rigidly rotated in phase space."""
    if not theta > 0:
        raise ValueError(f"theta must be positive, got {theta}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")
    z = np.asarray(z, dtype=float)
    d = len(z) // 2
    rotated = phase_space_rotation(mu * t, d) @ z
    return gabor_hermite_mod((theta * t,) * d, rotated, w)


def fit_decay_profile(distances, values, exponent_grid):
    """Fit log(values) ~ log C - eps * dist^p over candidate exponents p.

    Returns the DecayFit with minimal max log-domain misfit.
    """
    distances = np.asarray(distances, dtype=float)
    values = np.asarray(values, dtype=float)
    mask = values > 0
    if np.count_nonzero(mask) < 3:
        raise ValueError("need at least three positive samples to fit a decay envelope")
    dist = distances[mask]
    logv = np.log(values[mask])
    best = None
    for p in exponent_grid:
        basis = np.stack([np.ones_like(dist), -(dist**p)], axis=-1)
        coef, *_ = np.linalg.lstsq(basis, logv, rcond=None)
        resid = float(np.max(np.abs(basis @ coef - logv)))
        if coef[1] <= 0:
            continue
        if best is None or resid < best.residual:
            best = DecayFit(float(np.exp(coef[0])), float(coef[1]), float(p), resid)
    if best is None:
        raise ValueError("no candidate exponent produced a decaying fit")
    return best


def fit_decay(slice_, exponent_grid, direction="position"):
    """Fit the off-diagonal decay of a GaborSlice along one axis through
    the (pos, freq) cell nearest the slice's fixed point."""
    vals = np.abs(slice_.values)
    if not np.any(vals > 0):
        raise ValueError("cannot fit an all-zero slice")
    d = len(slice_.fixed_z) // 2
    z1, z2 = slice_.fixed_z[:d], slice_.fixed_z[d:]
    i0 = int(np.argmin(np.abs(slice_.w_pos_axis - z1[0])))
    j0 = int(np.argmin(np.abs(slice_.w_freq_axis - z2[0])))
    if direction == "position":
        dist = np.abs(slice_.w_pos_axis - slice_.w_pos_axis[i0])
        prof = vals[:, j0]
    elif direction == "frequency":
        dist = np.abs(slice_.w_freq_axis - slice_.w_freq_axis[j0])
        prof = vals[i0, :]
    else:
        raise ValueError(f"unknown direction {direction!r}")
    keep = dist > 0
    return fit_decay_profile(dist[keep], prof[keep], exponent_grid)
