"""qpos1d: spatial probability densities of 1D scalar bosons compared under
the Newton-Wigner and field-operator position yardsticks.

Spectral (FFT) machinery on uniform periodic grids, exact free evolution
with light-cone diagnostics, second-order short-time two-particle
interaction corrections, moving-frame (boost) transformations of both
yardsticks, and a brute-force two-particle Fock oracle for validation.
"""

__version__ = "0.1.0"

from .grid import SpatialGrid, SpectralMultiplier
from .kernels import (
    KernelTable,
    ModelParams,
    boost_jacobian,
    boost_momentum_map,
    multiplier_i_minus,
    multiplier_i_plus,
    multiplier_nw_to_field,
    multiplier_v1,
    omega,
)
from .states import (
    DensityProfile,
    PacketShape,
    WavePacket,
    Yardstick,
    convert_yardstick,
    density,
    make_packet,
    smooth_edges,
)
from .evolution import (
    LightConeReport,
    detect_peaks,
    evolve_free,
    lightcone_fraction,
    peak_tracks,
)
from .boost import (
    BoostParams,
    boost_field,
    boost_nw,
    boost_nw_matrix,
    kernel_f_theta,
    lorentz_map,
    naive_lorentz_density,
    predicted_peaks,
)
from .interaction import (
    ShortTimeDensity,
    TwoParticleConfig,
    asymmetry_metric,
    initial_density,
    linear_terms_check,
    r_free_quadratic,
    r_int,
    short_time_density,
    short_time_expansion,
)

__all__ = [name for name in dir() if not name.startswith("_")]
