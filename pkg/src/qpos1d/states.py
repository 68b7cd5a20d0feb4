"""Single-particle wave packets and the two position yardsticks.

A packet is stored as its Newton-Wigner (NW) or field-operator (FIELD)
spatial amplitude.  The two are related diagonally in momentum space by
M(p) = sqrt(m c^2 / omega(p)): the FIELD amplitude is the M-filtered NW
amplitude, which is why FIELD densities are wider and never compactly
supported.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

import numpy as np

from .errors import ShapeDomainError
from .grid import SpatialGrid
from .kernels import ModelParams, multiplier_nw_to_field


class Yardstick(enum.Enum):
    NW = "nw"
    FIELD = "field"


@dataclass(frozen=True)
class PacketShape:
    """Box or Gaussian amplitude profile.

    box:      G(z) ~ theta(w - |z - center|), edge sampled at half height
    gaussian: G(z) ~ exp(-(z - center)^2 / w^2)

    Both are renormalized to unit L2 norm when sampled.
    """

    kind: str
    width: float
    center: float = 0.0

    def __post_init__(self):
        if self.kind not in ("box", "gaussian"):
            raise ValueError(f"unknown shape kind {self.kind!r}")
        if not self.width > 0:
            raise ValueError("width must be positive")

    def profile(self, z: np.ndarray) -> np.ndarray:
        u = z - self.center
        if self.kind == "box":
            vals = np.where(np.abs(u) < self.width, 1.0, 0.0)
            vals = vals + 0.5 * (np.abs(u) == self.width)
            return vals.astype(complex)
        return np.exp(-(u / self.width) ** 2).astype(complex)


@dataclass(frozen=True)
class WavePacket:
    """A complex spatial amplitude tagged with its yardstick and parameters."""

    grid: SpatialGrid
    values: np.ndarray
    yardstick: Yardstick
    params: ModelParams
    display_scale: float = 1.0   # recorded 1/norm for non-unit FIELD packets

    def norm(self) -> float:
        return self.grid.l2_norm(self.values)

    def momentum_amplitude(self) -> np.ndarray:
        return self.grid.forward(self.values)

    def with_values(self, values: np.ndarray) -> "WavePacket":
        return replace(self, values=values)


@dataclass(frozen=True)
class DensityProfile:
    """Nonnegative real field with its raw integral recorded."""

    grid: SpatialGrid
    values: np.ndarray
    raw_integral: float
    normalized: bool

    def integral(self) -> float:
        return float(np.real(self.grid.integrate(self.values)))


def make_packet(shape: PacketShape, grid: SpatialGrid, params: ModelParams) -> WavePacket:
    """Unit-normalized NW packet with amplitude G(z - center).

    Requires the shape to sit at least 5 widths away from both grid
    boundaries and the grid to resolve it (w >= 4 dz).
    """
    if shape.width < 4 * grid.dz:
        raise ShapeDomainError(
            f"width {shape.width:g} under-resolved on dz = {grid.dz:g} (need w >= 4 dz)"
        )
    margin = 5 * shape.width
    if shape.center - margin < grid.z_min or shape.center + margin > grid.z_max:
        raise ShapeDomainError(
            f"shape at {shape.center:g} (width {shape.width:g}) needs a "
            f"{margin:g} margin inside [{grid.z_min:g}, {grid.z_max:g}]"
        )
    vals = grid.normalize(shape.profile(grid.z))
    return WavePacket(grid=grid, values=vals, yardstick=Yardstick.NW, params=params)


def smooth_edges(pkt: WavePacket, delta: float) -> WavePacket:
    """Convolve with a narrow unit Gaussian (momentum factor e^{-p^2 d^2/4}).

    Used to regularize box edges at the few-dz scale before operations that
    require fast spectral decay (boosts); renormalizes NW packets.
    """
    mult = np.exp(-(pkt.grid.p * delta) ** 2 / 4.0)
    vals = pkt.grid.apply_multiplier(pkt.values, mult)
    if pkt.yardstick is Yardstick.NW:
        vals = pkt.grid.normalize(vals)
    return pkt.with_values(vals)


def convert_yardstick(pkt: WavePacket, target: Yardstick) -> WavePacket:
    """Switch between NW and FIELD amplitudes via M(p) = sqrt(mc^2/omega).

    NW -> FIELD multiplies the momentum amplitude by M (norm shrinks for
    relativistic momentum content); FIELD -> NW divides.  FIELD packets
    record 1/norm as their display normalization factor.
    """
    if target is pkt.yardstick:
        return pkt
    m = multiplier_nw_to_field(pkt.params).sample(pkt.grid)
    if target is Yardstick.FIELD:
        vals = pkt.grid.apply_multiplier(pkt.values, m)
        nrm = pkt.grid.l2_norm(vals)
        return replace(pkt, values=vals, yardstick=Yardstick.FIELD,
                       display_scale=1.0 / nrm**2 if nrm > 0 else 1.0)
    vals = pkt.grid.apply_multiplier(pkt.values, 1.0 / m)
    return replace(pkt, values=vals, yardstick=Yardstick.NW, display_scale=1.0)


def density(pkt: WavePacket, normalize: bool = False) -> DensityProfile:
    """Pointwise |amplitude|^2 of a single-particle packet.

    With normalize=True the profile is rescaled to unit integral (the
    display convention for FIELD densities).
    """
    rho = np.abs(pkt.values) ** 2
    raw = float(np.real(pkt.grid.integrate(rho)))
    if normalize:
        if raw <= 0:
            raise ValueError("cannot normalize a zero density")
        rho = rho / raw
    return DensityProfile(grid=pkt.grid, values=rho, raw_integral=raw,
                          normalized=normalize)
