"""Uniform periodic grids and the spectral operations built on them.

All position-space fields are complex samples on a :class:`SpatialGrid`.
The Fourier convention is the symmetric one,

    g(p) = (2 pi)^{-1/2} int dz g(z) exp(-i p z)
    g(z) = (2 pi)^{-1/2} int dp g(p) exp(+i p z)

realized discretely so that the round trip is exact and the discrete
Parseval identity  sum |g|^2 dz = sum |g_hat|^2 dp  holds to machine
precision.  Momentum samples follow the FFT ordering of numpy.fft.fftfreq.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np


def _ensure_finite(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{what} contains non-finite samples")
    return values


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform periodic position grid with its conjugate momentum grid.

    n_points must be even (powers of two are the fast, recommended choice
    for production resolutions; small validation grids may use other even
    sizes).  dz * dp * n_points = 2 pi by construction; p_max = pi / dz is
    the Nyquist momentum.
    """

    n_points: int
    z_min: float
    z_max: float

    def __post_init__(self):
        n = self.n_points
        if n < 4 or n % 2 != 0:
            raise ValueError(f"n_points must be an even integer >= 4, got {n}")
        if not self.z_max > self.z_min:
            raise ValueError("z_max must exceed z_min")
        rel = abs(self.dz * self.dp * self.n_points - 2 * np.pi) / (2 * np.pi)
        if rel > 1e-12:
            raise ValueError("grid spacings violate dz*dp*n = 2*pi")

    @property
    def length(self) -> float:
        return self.z_max - self.z_min

    @property
    def dz(self) -> float:
        return self.length / self.n_points

    @property
    def dp(self) -> float:
        return 2 * np.pi / self.length

    @property
    def p_max(self) -> float:
        return np.pi / self.dz

    @cached_property
    def z(self) -> np.ndarray:
        return self.z_min + self.dz * np.arange(self.n_points)

    @cached_property
    def p(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.n_points, d=self.dz)

    @cached_property
    def _phase_fwd(self) -> np.ndarray:
        # e^{-i p z_min}: accounts for the grid not starting at z = 0
        return np.exp(-1j * self.p * self.z_min)

    def index_of(self, z0: float) -> int:
        """Index of the grid point nearest to z0."""
        i = int(round((z0 - self.z_min) / self.dz))
        return min(max(i, 0), self.n_points - 1)

    def sample(self, func: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        return np.asarray(func(self.z), dtype=complex)

    # -- transforms ---------------------------------------------------------

    def forward(self, values: np.ndarray) -> np.ndarray:
        """Position samples -> momentum samples (unitary convention)."""
        _ensure_finite(values, "field")
        return self.dz / np.sqrt(2 * np.pi) * self._phase_fwd * np.fft.fft(values)

    def inverse(self, values_p: np.ndarray) -> np.ndarray:
        """Momentum samples -> position samples; exact inverse of forward."""
        _ensure_finite(values_p, "momentum field")
        scale = self.dp * self.n_points / np.sqrt(2 * np.pi)
        return scale * np.fft.ifft(values_p / self._phase_fwd)

    def apply_multiplier(self, values: np.ndarray, multiplier) -> np.ndarray:
        """inverse( m(p) * forward(values) ); linear in the field."""
        m = multiplier.sample(self) if hasattr(multiplier, "sample") else np.asarray(multiplier)
        _ensure_finite(m, "spectral multiplier")
        return self.inverse(m * self.forward(values))

    # -- quadrature ---------------------------------------------------------

    def integrate(self, values: np.ndarray):
        """dz * sum(samples); rectangle = trapezoid on a periodic grid."""
        return np.sum(values) * self.dz

    def l2_norm(self, values: np.ndarray) -> float:
        return float(np.sqrt(np.real(self.integrate(np.abs(values) ** 2))))

    def normalize(self, values: np.ndarray) -> np.ndarray:
        nrm = self.l2_norm(values)
        if nrm < 1e-300:
            raise ValueError("cannot normalize a zero field")
        return values / nrm

    # -- oracles ------------------------------------------------------------

    def convolve_direct(self, values: np.ndarray, kernel: np.ndarray) -> np.ndarray:
        """O(N^2) periodic convolution  dz * sum_l k[(j-l) mod N] f[l].

        Test oracle for the FFT multiplier path; `kernel` is indexed by
        separation (kernel[j] = k(j*dz), periodic).
        """
        n = self.n_points
        if len(values) != n or len(kernel) != n:
            raise ValueError("field and kernel must live on this grid")
        _ensure_finite(values, "field")
        _ensure_finite(kernel, "kernel")
        out = np.empty(n, dtype=complex)
        idx = np.arange(n)
        for j in range(n):
            out[j] = np.sum(kernel[(j - idx) % n] * values)
        return out * self.dz

    def dft_direct(self, values: np.ndarray) -> np.ndarray:
        """O(N^2) direct evaluation of forward(); test oracle."""
        ph = np.exp(-1j * np.outer(self.p, self.z))
        return self.dz / np.sqrt(2 * np.pi) * ph @ values


@dataclass(frozen=True)
class SpectralMultiplier:
    """A pure scalar function of momentum plus a human-readable tag.

    Operators diagonal in momentum space (dispersion factors, smoothing
    kernels, yardstick conversions) are represented this way and applied
    through SpatialGrid.apply_multiplier.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    tag: str

    def __call__(self, p):
        return self.fn(np.asarray(p, dtype=float))

    def sample(self, grid: SpatialGrid) -> np.ndarray:
        vals = np.asarray(self.fn(grid.p))
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"multiplier '{self.tag}' is not finite on the momentum grid")
        return vals
