"""phasekit: Wigner kernels and Gabor matrices of evolution propagators.

Numerical toolkit for phase-space (time-frequency) analysis of the
complex heat, wave, and Hermite semigroup propagators: closed-form Gabor
matrices and reduced Wigner kernels, cross-validated against direct
grid computations, plus the symplectic matrix calculus they rest on.
"""

from .grids import Grid, PhaseSpaceField, SampledField, dft, make_grid
from .special import bessel_j0, erf, gaussian_integral
from .transforms import Window, cross_wigner, gaussian_window, stft, tf_shift

__version__ = "0.1.0"
