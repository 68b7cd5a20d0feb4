"""Short-time expansion of the two-particle NW density with the quartic
interaction switched on.

For two disjoint unit packets centered at x and y the density expands as

    rho(z, t) = rho(z, 0) + r_free(z) t^2 + lambda r_int(z) t^2 + O(t^3),

the linear-in-t terms vanishing identically.  r_free is the free quadratic
spreading of each packet alone; r_int is the leading interaction effect.

r_int reduces to chains of one-dimensional convolutions.  With the smeared
profiles

    A_u = I+ * G_u           (u in {x, y})
    B_u = I+ * V1 * G_u      (V1 acting as the omega(p) multiplier)

the expectation values assemble, per unit coupling, to

    <H0 n V>              = 24 s [ (V1 Gx) S(Ax Ay^2) + Gy S(Ax Ay Bx)
                                 + Gx S(Ax Ay By) + (V1 Gy) S(Ax^2 Ay) ]
    <(V H0 + H0 V) n>     = 24 s [ Gx ( S(Bx Ay^2) + 2 S(Ax Ay By) + SV(Ax Ay^2) )
                                 + Gy ( S(Ax^2 By) + 2 S(Ax Ay Bx) + SV(Ax^2 Ay) ) ]

where S = convolution with I+, SV = I+ * V1 convolution, and s is the
vertex sign convention; then, still per unit coupling,
r_int = 2 <H0 n V> - <(V H0 + H0 V) n>.
Every term costs O(N log N); the whole field integrates to zero (unitarity
order by order).  The brute-force two-particle oracle in `fock` validates
the assembly wholesale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CutoffInstabilityError
from .grid import SpatialGrid
from .kernels import (
    QUARTIC_VERTEX_SIGN,
    ModelParams,
    multiplier_i_plus,
    multiplier_v1,
    omega,
)
from .states import DensityProfile, PacketShape

MAX_OVERLAP = 1e-6


@dataclass(frozen=True)
class TwoParticleConfig:
    """Two same-shape packets at centers x < y with negligible overlap."""

    grid: SpatialGrid
    params: ModelParams
    shape_kind: str
    width: float
    x: float
    y: float

    def __post_init__(self):
        if not self.x < self.y:
            raise ValueError("need x < y")
        ov = abs(self.overlap())
        if ov > MAX_OVERLAP:
            raise ValueError(
                f"packet overlap {ov:.3e} exceeds {MAX_OVERLAP:g}; "
                "the disjoint-packet expansion does not apply"
            )

    def _packet(self, center: float) -> np.ndarray:
        prof = PacketShape(self.shape_kind, self.width, center).profile(self.grid.z)
        return np.real(self.grid.normalize(prof))

    @cached_property
    def g_x(self) -> np.ndarray:
        return self._packet(self.x)

    @cached_property
    def g_y(self) -> np.ndarray:
        return self._packet(self.y)

    def overlap(self) -> float:
        return float(np.real(self.grid.integrate(self.g_x * self.g_y)))


@dataclass(frozen=True)
class ShortTimeDensity:
    """The three expansion fields plus the validity scale of the expansion."""

    config: TwoParticleConfig
    rho0: DensityProfile
    r_free: np.ndarray
    r_int: np.ndarray
    energy_scale: float      # r.m.s. omega(p) of one packet

    @property
    def t_valid(self) -> float:
        """Time where t * E_char reaches 0.1 (expansion trust horizon)."""
        return 0.1 / self.energy_scale

    def density_at(self, t: float) -> tuple[DensityProfile, bool, float]:
        """rho0 + t^2 (r_free + lambda r_int), with a validity flag and the
        norm defect of the truncated (non-unitary) expansion."""
        lam = self.config.params.coupling
        vals = self.rho0.values + t**2 * (self.r_free + lam * self.r_int)
        grid = self.config.grid
        integral = float(np.real(grid.integrate(vals)))
        profile = DensityProfile(grid=grid, values=vals, raw_integral=integral,
                                 normalized=False)
        valid = abs(t) * self.energy_scale <= 0.1
        return profile, valid, integral - 2.0


def initial_density(cfg: TwoParticleConfig) -> DensityProfile:
    """Sum of the two single-particle densities; integral = 2."""
    vals = cfg.g_x**2 + cfg.g_y**2
    raw = float(np.real(cfg.grid.integrate(vals)))
    return DensityProfile(grid=cfg.grid, values=vals, raw_integral=raw,
                          normalized=False)


def characteristic_energy(cfg: TwoParticleConfig) -> float:
    """r.m.s. omega(p) over one packet's spectrum (both share the shape)."""
    amp = cfg.grid.forward(cfg.g_x)
    w2 = omega(cfg.grid.p, cfg.params) ** 2
    mass = np.abs(amp) ** 2
    return float(np.sqrt(np.sum(mass * w2) / np.sum(mass)))


def r_free_quadratic(cfg: TwoParticleConfig) -> np.ndarray:
    """Half the second time derivative of the freely evolving density.

    Free evolution factorizes over the two packets, so no interaction
    machinery enters: exact spectral evolution is centrally differenced in
    t with step h fixed by E_char h = 1e-3 and Richardson-extrapolated over
    {h, h/2}.  Symmetric about each center for symmetric shapes.
    """
    grid, params = cfg.grid, cfg.params
    w = omega(grid.p, params)
    ax = grid.forward(cfg.g_x)
    ay = grid.forward(cfg.g_y)
    h = 1e-3 / characteristic_energy(cfg)

    def rho(t: float) -> np.ndarray:
        ph = np.exp(-1j * w * t)
        px = grid.inverse(ph * ax)
        py = grid.inverse(ph * ay)
        return np.abs(px) ** 2 + np.abs(py) ** 2

    r0 = rho(0.0)

    def second_diff(step: float) -> np.ndarray:
        return (rho(step) - 2 * r0 + rho(-step)) / step**2

    richardson = (4 * second_diff(h / 2) - second_diff(h)) / 3
    return 0.5 * richardson


def _chain_fields(cfg: TwoParticleConfig):
    grid, params = cfg.grid, cfg.params
    i_plus = multiplier_i_plus(params).sample(grid)
    v1 = multiplier_v1(params).sample(grid)

    def conv(mult, f):
        return np.real(grid.apply_multiplier(f, mult))

    a_x = conv(i_plus, cfg.g_x)
    a_y = conv(i_plus, cfg.g_y)
    wg_x = conv(v1, cfg.g_x)
    wg_y = conv(v1, cfg.g_y)
    b_x = conv(i_plus, wg_x)
    b_y = conv(i_plus, wg_y)
    return conv, i_plus, v1, a_x, a_y, b_x, b_y, wg_x, wg_y


def _r_int_raw(cfg: TwoParticleConfig) -> np.ndarray:
    conv, i_plus, v1, a_x, a_y, b_x, b_y, wg_x, wg_y = _chain_fields(cfg)
    g_x, g_y = cfg.g_x, cfg.g_y

    t1 = (wg_x * conv(i_plus, a_x * a_y**2)
          + g_y * conv(i_plus, a_x * a_y * b_x)
          + g_x * conv(i_plus, a_x * a_y * b_y)
          + wg_y * conv(i_plus, a_x**2 * a_y))
    t2 = (g_x * (conv(i_plus, b_x * a_y**2)
                 + 2 * conv(i_plus, a_x * a_y * b_y)
                 + conv(i_plus, conv(v1, a_x * a_y**2)))
          + g_y * (conv(i_plus, a_x**2 * b_y)
                   + 2 * conv(i_plus, a_x * a_y * b_x)
                   + conv(i_plus, conv(v1, a_x**2 * a_y))))
    return QUARTIC_VERTEX_SIGN * 24.0 * (2 * t1 - t2)


def r_int(cfg: TwoParticleConfig, check_cutoff: bool = True) -> np.ndarray:
    """Leading interaction correction to the density, per unit coupling.

    With check_cutoff the computation is repeated on a grid with doubled
    p_max (same domain, doubled n_points); a relative L2 change above 1%
    raises CutoffInstabilityError (guards the regularized kernels).
    """
    result = _r_int_raw(cfg)
    if check_cutoff:
        fine = TwoParticleConfig(
            grid=SpatialGrid(2 * cfg.grid.n_points, cfg.grid.z_min, cfg.grid.z_max),
            params=cfg.params, shape_kind=cfg.shape_kind,
            width=cfg.width, x=cfg.x, y=cfg.y)
        on_fine = _r_int_raw(fine)[::2]
        change = np.linalg.norm(on_fine - result) / np.linalg.norm(result)
        if change > 0.01:
            raise CutoffInstabilityError(
                f"r_int changed by {change:.2%} under p_max doubling"
            )
    return result


def short_time_expansion(cfg: TwoParticleConfig,
                         check_cutoff: bool = True) -> ShortTimeDensity:
    return ShortTimeDensity(
        config=cfg,
        rho0=initial_density(cfg),
        r_free=r_free_quadratic(cfg),
        r_int=r_int(cfg, check_cutoff=check_cutoff),
        energy_scale=characteristic_energy(cfg),
    )


def short_time_density(cfg: TwoParticleConfig, t: float,
                       check_cutoff: bool = True):
    """Convenience wrapper: expansion evaluated at one time."""
    return short_time_expansion(cfg, check_cutoff=check_cutoff).density_at(t)


def asymmetry_metric(values: np.ndarray, grid: SpatialGrid, center: float,
                     half_window: float) -> float:
    """int |f(c+s) - f(c-s)| ds / int |f(c+s) + f(c-s)| ds over (0, window].

    Zero for fields even about the center; order-one for materially
    asymmetric ones.
    """
    ic = grid.index_of(center)
    k = int(round(half_window / grid.dz))
    if ic - k < 0 or ic + k >= grid.n_points:
        raise ValueError("window extends beyond the grid")
    right = values[ic + 1: ic + k + 1]
    left = values[ic - 1: ic - k - 1: -1]
    num = float(np.sum(np.abs(right - left)))
    den = float(np.sum(np.abs(right + left)))
    return num / den if den > 0 else 0.0


def linear_terms_check(cfg: TwoParticleConfig) -> tuple[np.ndarray, np.ndarray]:
    """First-order-in-t coefficients, evaluated with the brute-force
    two-particle oracle; both vanish (below 1e-8 of the quadratic scale).

    Coarse grids only (the oracle's dense sector grows as n^2).
    """
    from . import fock

    if cfg.grid.n_points > 48:
        raise ValueError("linear_terms_check needs a coarse grid (n_points <= 48)")
    basis = fock.SectorBasis(cfg.grid)
    report = fock.oracle_short_time(cfg, basis=basis, t_list=())
    return report.c1_free, report.c1_int
