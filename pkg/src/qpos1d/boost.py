"""Moving-frame densities for both yardsticks.

The NW yardstick boosts by remapping the momentum amplitude,

    psi'(q) = sqrt(dp/dq) psi(p(q)),   p(q) = momentum map at -theta,

which preserves the NW norm.  The FIELD yardstick boosts by evaluating the
time-evolved FIELD amplitude at Lorentz-transformed points (z cosh, z/c
sinh) of the t = 0 hyperplane; its norm is NOT preserved.  For comparison,
`naive_lorentz_density` applies the plain Lorentz point remap to the
density itself -- the deliberately "incorrect" reference curve for the NW
yardstick.

`kernel_f_theta` materializes the boost as a small dense position-space
matrix (test artifact).  Its quadrature nodes are parameterized by the
mid-rapidity momentum s, with node pairs (q, p) = (map(s, +theta/2),
map(s, -theta/2)) and the symmetric weight sqrt(omega(q) omega(p)) /
omega(s): this makes the kernel symmetry f_theta(z, z') = f_-theta(z', z)*
exact at the matrix level rather than only in quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SpectralOverflowError
from .grid import SpatialGrid
from .kernels import ModelParams, boost_momentum_map, omega
from .states import DensityProfile, WavePacket, Yardstick

_CHUNK = 1024


@dataclass(frozen=True)
class BoostParams:
    """Frame velocity with its rapidity theta = artanh(v/c) and gamma."""

    velocity: float
    rapidity: float
    gamma: float

    @classmethod
    def from_velocity(cls, v: float, params: ModelParams) -> "BoostParams":
        c = params.light_speed
        if abs(v) >= c:
            raise ValueError(f"|v| = {abs(v):g} must be below c = {c:g}")
        th = np.arctanh(v / c)
        return cls(velocity=v, rapidity=float(th), gamma=float(np.cosh(th)))

    @classmethod
    def from_rapidity(cls, theta: float, params: ModelParams) -> "BoostParams":
        c = params.light_speed
        return cls(velocity=float(c * np.tanh(theta)), rapidity=float(theta),
                   gamma=float(np.cosh(theta)))


def lorentz_map(a, b, theta: float, light_speed: float):
    """The pair map L_theta for a (position, time) pair:

        a' = a cosh(theta) - c b sinh(theta)
        b' = b cosh(theta) - (a/c) sinh(theta)

    L_theta and L_-theta compose to the identity.
    """
    ch, sh = np.cosh(theta), np.sinh(theta)
    return a * ch - light_speed * b * sh, b * ch - a / light_speed * sh


def spectral_mass_window(pkt: WavePacket, tail: float = 1e-8) -> tuple[float, float]:
    """Smallest central momentum interval holding all but `tail` of the
    packet's spectral mass (tail/2 excluded per side)."""
    grid = pkt.grid
    amp = pkt.momentum_amplitude()
    order = np.argsort(grid.p)
    ps = grid.p[order]
    mass = np.abs(amp[order]) ** 2 * grid.dp
    cum = np.cumsum(mass)
    total = cum[-1]
    lo = int(np.searchsorted(cum, 0.5 * tail * total))
    hi = int(np.searchsorted(cum, (1 - 0.5 * tail) * total))
    hi = min(hi, len(ps) - 1)
    return float(ps[lo]), float(ps[hi])


def _resample_momentum(pkt: WavePacket, p_new: np.ndarray) -> np.ndarray:
    """Band-limited evaluation of the momentum amplitude at arbitrary p.

    Exact for grid fields (direct Fourier sum of the trigonometric
    interpolant), restricted to the samples where the field is nonzero.
    """
    grid = pkt.grid
    sup = np.abs(pkt.values) > 1e-15 * np.abs(pkt.values).max()
    zs = grid.z[sup]
    fs = pkt.values[sup]
    out = np.empty(len(p_new), dtype=complex)
    scale = grid.dz / np.sqrt(2 * np.pi)
    for i0 in range(0, len(p_new), _CHUNK):
        pp = p_new[i0:i0 + _CHUNK]
        out[i0:i0 + len(pp)] = np.exp(-1j * np.outer(pp, zs)) @ fs * scale
    return out


def boost_nw(pkt: WavePacket, b: BoostParams) -> WavePacket:
    """Boost a NW packet: psi'(q) = sqrt(J) psi(p(q)) on the momentum grid.

    p(q) is the inverse momentum map (a boost by -theta; the group property
    makes it analytic, no root finding) and J its Jacobian.  Rejects packets
    whose 1 - 1e-8 spectral-mass window would leave the momentum grid;
    within that precondition the NW norm is conserved to ~1e-8.
    """
    if pkt.yardstick is not Yardstick.NW:
        raise ValueError("boost_nw expects a NW packet")
    grid, params = pkt.grid, pkt.params
    th = b.rapidity
    if th == 0.0:
        return pkt

    p_lo, p_hi = spectral_mass_window(pkt)
    q_lo = boost_momentum_map(p_lo, th, params)
    q_hi = boost_momentum_map(p_hi, th, params)
    if q_lo < -grid.p_max or q_hi > grid.p_max:
        raise SpectralOverflowError(
            f"boosted spectral window [{q_lo:.4g}, {q_hi:.4g}] leaves the "
            f"momentum grid (p_max = {grid.p_max:.4g})"
        )

    p_src = boost_momentum_map(grid.p, -th, params)
    jac = omega(p_src, params) / omega(grid.p, params)
    inside = np.abs(p_src) <= grid.p_max
    amp_new = np.zeros(grid.n_points, dtype=complex)
    amp_new[inside] = _resample_momentum(pkt, p_src[inside])
    amp_new *= np.sqrt(jac) * inside
    return pkt.with_values(grid.inverse(amp_new))


def evaluate_evolved_amplitude(momentum_amp: np.ndarray, grid: SpatialGrid,
                               params: ModelParams, z_points: np.ndarray,
                               t_points: np.ndarray) -> np.ndarray:
    """psi(z_i, t_i) = (2 pi)^{-1/2} sum_k dp amp(p_k) e^{i p_k z_i - i omega_k t_i}.

    Direct oscillatory sums over the momentum grid, one independent output
    point at a time (chunked); used for Lorentz-point sampling where every
    output position carries its own time.
    """
    w = omega(grid.p, params)
    out = np.empty(len(z_points), dtype=complex)
    coef = momentum_amp * grid.dp / np.sqrt(2 * np.pi)
    for i0 in range(0, len(z_points), _CHUNK):
        zz = z_points[i0:i0 + _CHUNK]
        tt = t_points[i0:i0 + _CHUNK]
        phase = np.exp(1j * (np.outer(zz, grid.p) - np.outer(tt, w)))
        out[i0:i0 + len(zz)] = phase @ coef
    return out


def boost_field(pkt: WavePacket, b: BoostParams,
                window: tuple[float, float] | None = None) -> WavePacket:
    """Boost a FIELD packet by Lorentz-point evaluation.

    For each output z the time-evolved FIELD amplitude is evaluated at
    (z cosh(theta), (z/c) sinh(theta)).  Cost is O(N_out * N_p); `window`
    restricts the output positions (amplitude zero outside).  The FIELD
    norm is generally NOT preserved.
    """
    if pkt.yardstick is not Yardstick.FIELD:
        raise ValueError("boost_field expects a FIELD packet")
    grid, params = pkt.grid, pkt.params
    th = b.rapidity
    if th == 0.0:
        return pkt

    p_lo, p_hi = spectral_mass_window(pkt)
    q_lo = boost_momentum_map(p_lo, th, params)
    q_hi = boost_momentum_map(p_hi, th, params)
    if q_lo < -grid.p_max or q_hi > grid.p_max:
        raise SpectralOverflowError(
            f"boosted spectral window [{q_lo:.4g}, {q_hi:.4g}] leaves the "
            f"momentum grid (p_max = {grid.p_max:.4g})"
        )

    if window is None:
        sel = np.ones(grid.n_points, dtype=bool)
    else:
        sel = (grid.z >= window[0]) & (grid.z <= window[1])
    z_out = grid.z[sel]
    z_src, t_src = lorentz_map(z_out, np.zeros_like(z_out), -th, params.light_speed)
    amp = pkt.momentum_amplitude()
    vals = np.zeros(grid.n_points, dtype=complex)
    vals[sel] = evaluate_evolved_amplitude(amp, grid, params, z_src, t_src)
    return pkt.with_values(vals)


def naive_lorentz_density(source, b: BoostParams,
                          normalize: bool = True,
                          window: tuple[float, float] | None = None) -> DensityProfile:
    """Density remapped with the plain Lorentz formula (the "incorrect"
    comparison curve for the NW yardstick).

    Given a WavePacket, samples its evolving density at the lab events
    (z cosh(theta), (z/c) sinh(theta)) that a moving observer's t' = 0
    hyperplane picks out.  Given a bare DensityProfile (no time evolution
    available), falls back to the static coordinate dilation z -> z cosh.
    Renormalized for display by default; `window` limits the evaluated
    output positions (zero outside).
    """
    th = b.rapidity
    if isinstance(source, WavePacket):
        grid, params = source.grid, source.params
        if window is None:
            sel = np.ones(grid.n_points, dtype=bool)
        else:
            sel = (grid.z >= window[0]) & (grid.z <= window[1])
        z_out = grid.z[sel]
        z_src, t_src = lorentz_map(z_out, np.zeros_like(z_out), -th,
                                   params.light_speed)
        amp = source.momentum_amplitude()
        vals = np.zeros(grid.n_points)
        vals[sel] = np.abs(evaluate_evolved_amplitude(amp, grid, params,
                                                      z_src, t_src)) ** 2
    elif isinstance(source, DensityProfile):
        grid = source.grid
        vals = np.interp(grid.z * np.cosh(th), grid.z, np.real(source.values),
                         left=0.0, right=0.0)
    else:
        raise TypeError("source must be a WavePacket or DensityProfile")
    raw = float(np.real(grid.integrate(vals)))
    if normalize and raw > 0:
        vals = vals / raw
    return DensityProfile(grid=grid, values=vals, raw_integral=raw,
                          normalized=normalize)


def predicted_peaks(z_left: float, z_right: float, theta: float) -> list[float]:
    """The four boosted-edge peak locations z_{L,R} e^{+-theta}, sorted.

    For a density supported on [z_L, z_R] each edge contributes a peak pair
    with separation |z| 2 sinh(theta); the inner pair approaches z = 0 as
    the rapidity grows.
    """
    if not z_left < z_right:
        raise ValueError("need z_left < z_right")
    vals = [z_left * np.exp(theta), z_left * np.exp(-theta),
            z_right * np.exp(-theta), z_right * np.exp(theta)]
    return sorted(float(v) for v in vals)


def kernel_f_theta(grid: SpatialGrid, b: BoostParams, params: ModelParams,
                   oversample: int = 2, flat_fraction: float = 0.7,
                   roll_fraction: float = 0.08) -> np.ndarray:
    """Dense matrix F with (F @ psi) * dz = boosted amplitude (test artifact).

    Quadrature over the mid-rapidity momentum s with the symmetric node
    pairs described in the module docstring, and a smooth momentum taper
    keeping all participating momenta inside the grid window.  Guarded to
    small grids; the spectral path in boost_nw is the production route.
    """
    n = grid.n_points
    if n > 512:
        raise ValueError("kernel_f_theta is a test artifact; use n_points <= 512")
    th = b.rapidity
    ns = n * oversample
    ds = grid.dp / oversample
    s = -grid.p_max + ds * (np.arange(ns) + 0.5)
    q = boost_momentum_map(s, th / 2, params)
    pm = boost_momentum_map(s, -th / 2, params)
    weight = np.sqrt(omega(q, params) * omega(pm, params)) / omega(s, params)

    a = flat_fraction * grid.p_max
    roll = roll_fraction * grid.p_max

    def taper(x):
        return 0.25 * (1 + np.tanh((x + a) / roll)) * (1 + np.tanh((a - x) / roll))

    chi = taper(q) * taper(pm)
    e_out = np.exp(1j * np.outer(grid.z, q))
    e_in = np.exp(-1j * np.outer(pm, grid.z))
    return (ds / (2 * np.pi)) * (e_out * (weight * chi)) @ e_in


def boost_nw_matrix(pkt: WavePacket, b: BoostParams, **kwargs) -> WavePacket:
    """Boost via the f_theta matrix path (cross-check for boost_nw)."""
    f = kernel_f_theta(pkt.grid, b, pkt.params, **kwargs)
    return pkt.with_values(f @ pkt.values * pkt.grid.dz)
