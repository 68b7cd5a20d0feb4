"""Model parameters, the dispersion relation and its kernel family.

The model: neutral scalar bosons of bare mass m in one dimension, atomic
units (hbar = 1, c = 137 by default), single-particle energy

    omega(p) = sqrt(m^2 c^4 + c^2 p^2).

Every kernel used by the simulator is DEFINED by its momentum-space
multiplier; real-space tables are derived artifacts sampled on a grid:

    V1      : omega(p)                  (one-body energy kernel)
    I_plus  : (c / sqrt 2) omega^{-1/2} (smoothing kernel; real, positive,
                                         Compton-scale decay, integrable
                                         |z|^{-1/2}-type spike at 0)
    I_minus : omega^{+1/2} / (sqrt 2 c) (formally divergent in real space;
                                         regularized by the grid cutoff)

They satisfy 2 * I_plus * I_minus = identity exactly as multipliers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SpatialGrid, SpectralMultiplier

# Sign convention of the quartic vertex: positive coupling increases the
# density between two separated packets (effective attraction), matching the
# reported short-time behavior this artifact reproduces.  Relative to a bare
# "+lambda phi^4" normal-ordered term this is a lambda -> -lambda relabeling;
# the sign of the coupling is otherwise a free convention of the model.
QUARTIC_VERTEX_SIGN = -1.0


@dataclass(frozen=True)
class ModelParams:
    """Bare mass, light speed and quartic coupling strength (atomic units)."""

    mass: float = 1.0
    light_speed: float = 137.0
    coupling: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        if not self.light_speed > 0:
            raise ValueError("light_speed must be positive")

    @property
    def mc(self) -> float:
        return self.mass * self.light_speed

    @property
    def rest_energy(self) -> float:
        return self.mass * self.light_speed**2

    @property
    def compton_length(self) -> float:
        return 1.0 / self.mc


def omega(p, params: ModelParams):
    """Single-particle energy; even in p, >= rest energy."""
    p = np.asarray(p, dtype=float)
    return np.sqrt(params.rest_energy**2 + (params.light_speed * p) ** 2)


def multiplier_v1(params: ModelParams) -> SpectralMultiplier:
    """One-body coupling: plain multiplication by omega(p)."""
    return SpectralMultiplier(lambda p: omega(p, params), "V1 = omega(p)")


def multiplier_i_plus(params: ModelParams) -> SpectralMultiplier:
    c = params.light_speed
    return SpectralMultiplier(
        lambda p: (c / np.sqrt(2.0)) * omega(p, params) ** -0.5,
        "I+ = (c/sqrt2) omega^{-1/2}",
    )


def multiplier_i_minus(params: ModelParams) -> SpectralMultiplier:
    c = params.light_speed
    return SpectralMultiplier(
        lambda p: omega(p, params) ** 0.5 / (np.sqrt(2.0) * c),
        "I- = omega^{1/2}/(sqrt2 c)",
    )


def multiplier_nw_to_field(params: ModelParams) -> SpectralMultiplier:
    """Yardstick conversion factor M(p) = sqrt(m c^2 / omega(p)).

    M(0) = 1 and M(p) < 1 otherwise; the normalization makes both position
    yardsticks agree in the nonrelativistic limit.
    """
    e0 = params.rest_energy
    return SpectralMultiplier(
        lambda p: np.sqrt(e0 / omega(p, params)), "M = sqrt(mc^2/omega)"
    )


@dataclass(frozen=True)
class KernelTable:
    """Real-space samples of a multiplier kernel on a grid.

    values[j] is the kernel at separation j*dz (periodic), normalized so
    that grid.convolve_direct(f, values) equals the multiplier application.
    `singular` flags kernels whose continuum limit is distribution-valued
    (cutoff-dependent tables).
    """

    grid: SpatialGrid
    values: np.ndarray
    multiplier: SpectralMultiplier
    singular: bool = False

    @classmethod
    def from_multiplier(cls, grid: SpatialGrid, multiplier: SpectralMultiplier,
                        singular: bool = False) -> "KernelTable":
        m = multiplier.sample(grid)
        # K_j = (1/(N dz)) sum_k m(p_k) e^{i p_k j dz}
        values = np.fft.ifft(m) / grid.dz
        return cls(grid=grid, values=values, multiplier=multiplier, singular=singular)

    @property
    def separations(self) -> np.ndarray:
        n = self.grid.n_points
        j = np.arange(n)
        j = np.where(j <= n // 2, j, j - n)
        return j * self.grid.dz


def check_momentum_window(grid: SpatialGrid, params: ModelParams,
                          factor: float = 2.0) -> None:
    """Require p_max to clear the Compton momentum scale m*c.

    Kernel tables need the grid to resolve the Compton spike; a window
    below ~2 m c cannot represent the omega^{+-1/2} family meaningfully.
    """
    if grid.p_max < factor * params.mc:
        raise ValueError(
            f"momentum window p_max = {grid.p_max:.4g} does not clear "
            f"{factor} * m*c = {factor * params.mc:.4g}"
        )


# -- boosts in momentum space -----------------------------------------------

def boost_momentum_map(p, theta: float, params: ModelParams):
    """Momentum of a boosted mode: p cosh(theta) - (omega(p)/c) sinh(theta).

    Strictly monotone increasing in p for any rapidity; composes additively
    in theta (hyperbolic rotation of the energy-momentum pair).
    """
    p = np.asarray(p, dtype=float)
    return p * np.cosh(theta) - omega(p, params) / params.light_speed * np.sinh(theta)


def boost_jacobian(p, theta: float, params: ModelParams):
    """d p(theta) / d p = cosh(theta) - (c p / omega) sinh(theta).

    Equals omega(p(theta)) / omega(p), hence strictly positive.
    """
    p = np.asarray(p, dtype=float)
    w = omega(p, params)
    return np.cosh(theta) - params.light_speed * p / w * np.sinh(theta)
