"""Brute-force ground truth on a coarse grid: the symmetrized two-particle
sector with dense operators.

Discretization: site operators a_i with [a_i, a_j^+] = delta_ij / dz are
realized through unit bosons b_i = a_i sqrt(dz).  A two-particle state is
kept as a symmetric matrix Psi with |Psi> = sum_ij Psi_ij b_i^+ b_j^+ |0>,
inner product <Phi|Psi> = 2 sum conj(Phi) Psi.  In this representation

    H0  Psi = Omega Psi + Psi Omega          (Omega = omega(p) multiplier)
    V   Psi = s 12 lambda / dz * S diag(S Psi S) S
    <Phi| n(z_i) |Psi> = (4/dz) sum_l conj(Phi_il) Psi_il

with S the I+ smearing matrix and s the vertex sign convention.  The
2 <-> 2 channel is the only part of the quartic term that contributes to
two-particle expectations of number-conserving observables (the 0 <-> 4
channels cannot return to the sector within a single insertion).

The short-time report computes the Taylor coefficients of rho(z, t) as
exact matrix expectations.  The interaction part is extracted exactly:
the vertex is linear in lambda, so the quadratic coefficient is a degree-2
polynomial in lambda and the +-lambda difference quotient (which the exact
polynomial evaluation implements without cancellation) isolates the O(lambda)
piece.  Exact propagation uses the dense sector Hamiltonian's spectral
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ProjectionLossError
from .grid import SpatialGrid
from .kernels import (
    QUARTIC_VERTEX_SIGN,
    ModelParams,
    multiplier_i_plus,
    multiplier_v1,
)

MAX_COARSE_POINTS = 48


def multiplier_matrix(grid: SpatialGrid, multiplier) -> np.ndarray:
    """Dense matrix of a spectral-multiplier operator on grid fields."""
    m = multiplier.sample(grid) if hasattr(multiplier, "sample") else np.asarray(multiplier)
    eye = np.eye(grid.n_points)
    return np.real(np.fft.ifft(m[:, None] * np.fft.fft(eye, axis=0), axis=0))


@dataclass(frozen=True)
class SectorBasis:
    """Symmetrized two-particle basis |z_i, z_j>, i <= j, on a coarse grid."""

    grid: SpatialGrid

    def __post_init__(self):
        if self.grid.n_points > MAX_COARSE_POINTS:
            raise ValueError(
                f"sector basis limited to n_points <= {MAX_COARSE_POINTS} "
                f"(dense dimension grows as n^2)"
            )

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        n = self.grid.n_points
        return [(i, j) for i in range(n) for j in range(i, n)]

    @property
    def dim(self) -> int:
        n = self.grid.n_points
        return n * (n + 1) // 2

    def mat_to_vec(self, psi: np.ndarray) -> np.ndarray:
        """Symmetric-matrix state -> coefficients on the normalized basis."""
        out = np.empty(self.dim, dtype=complex)
        for a, (i, j) in enumerate(self.pairs):
            out[a] = psi[i, j] * (2.0 if i < j else np.sqrt(2.0))
        return out

    def vec_to_mat(self, vec: np.ndarray) -> np.ndarray:
        n = self.grid.n_points
        psi = np.zeros((n, n), dtype=complex)
        for a, (i, j) in enumerate(self.pairs):
            if i < j:
                psi[i, j] = psi[j, i] = vec[a] / 2.0
            else:
                psi[i, i] = vec[a] / np.sqrt(2.0)
        return psi


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator on the sector basis with its hermiticity residual."""

    basis: SectorBasis
    matrix: np.ndarray

    @property
    def hermiticity_residual(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())


class TwoParticleOperators:
    """The matrix machinery shared by the oracle entry points."""

    def __init__(self, grid: SpatialGrid, params: ModelParams):
        self.grid = grid
        self.params = params
        self.omega_mat = multiplier_matrix(grid, multiplier_v1(params))
        self.smear_mat = multiplier_matrix(grid, multiplier_i_plus(params))

    def apply_h0(self, psi: np.ndarray) -> np.ndarray:
        return self.omega_mat @ psi + psi @ self.omega_mat

    def apply_vertex(self, psi: np.ndarray) -> np.ndarray:
        """The 2->2 quartic channel at unit coupling (sign convention folded in)."""
        s = self.smear_mat
        diag = np.diag(s @ psi @ s)
        return QUARTIC_VERTEX_SIGN * (12.0 / self.grid.dz) * (s @ (diag[:, None] * s))

    def apply_h(self, psi: np.ndarray, lam: float) -> np.ndarray:
        return self.apply_h0(psi) + lam * self.apply_vertex(psi)

    def inner(self, phi: np.ndarray, psi: np.ndarray) -> complex:
        return complex(2.0 * np.sum(np.conj(phi) * psi))

    def number_overlap(self, phi: np.ndarray, psi: np.ndarray) -> np.ndarray:
        """<Phi| n(z_i) |Psi> for every site i."""
        return (4.0 / self.grid.dz) * np.sum(np.conj(phi) * psi, axis=1)

    def density(self, psi: np.ndarray) -> np.ndarray:
        return np.real(self.number_overlap(psi, psi))

    def product_state(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Symmetrized two-packet state sum f_i g_j a_i^+ a_j^+ |0> dz^2."""
        return self.grid.dz * 0.5 * (np.outer(f, g) + np.outer(g, f))


def build_h0(basis: SectorBasis, params: ModelParams) -> OperatorMatrix:
    """The free Hamiltonian lifted to the symmetric two-particle sector."""
    ops = TwoParticleOperators(basis.grid, params)
    return _lift(basis, ops.apply_h0)


def build_v22(basis: SectorBasis, params: ModelParams) -> OperatorMatrix:
    """The number-conserving quartic channel on the sector (with coupling)."""
    ops = TwoParticleOperators(basis.grid, params)
    lam = params.coupling
    return _lift(basis, lambda psi: lam * ops.apply_vertex(psi))


def _lift(basis: SectorBasis, apply_op) -> OperatorMatrix:
    dim = basis.dim
    n = basis.grid.n_points
    mat = np.zeros((dim, dim), dtype=complex)
    for a, (i, j) in enumerate(basis.pairs):
        psi = np.zeros((n, n))
        if i < j:
            psi[i, j] = psi[j, i] = 0.5
        else:
            psi[i, i] = 1.0 / np.sqrt(2.0)
        mat[:, a] = basis.mat_to_vec(apply_op(psi))
    return OperatorMatrix(basis=basis, matrix=mat)


def project_fine_to_coarse(values: np.ndarray, fine: SpatialGrid,
                           coarse: SpatialGrid, max_loss: float = 0.01) -> np.ndarray:
    """Restrict a fine-grid field to a coarse grid over the same domain by
    spectral truncation; rejects packets losing more than max_loss of norm."""
    if (fine.z_min, fine.z_max) != (coarse.z_min, coarse.z_max):
        raise ValueError("grids must share the domain")
    step = fine.n_points // coarse.n_points
    if step * coarse.n_points != fine.n_points:
        raise ValueError("fine grid must be an integer refinement")
    amp = fine.forward(values)
    keep = np.abs(fine.p) <= coarse.p_max * (1 - 1e-12)
    lost = 1.0 - np.sum(np.abs(amp[keep]) ** 2) / np.sum(np.abs(amp) ** 2)
    if lost > max_loss:
        raise ProjectionLossError(
            f"{lost:.2%} of the norm lies beyond the coarse momentum window"
        )
    coarse_amp = np.zeros(coarse.n_points, dtype=complex)
    order_f = np.argsort(fine.p)
    pf, af = fine.p[order_f], amp[order_f]
    for k, p in enumerate(coarse.p):
        i = np.searchsorted(pf, p)
        if i < len(pf) and abs(pf[i] - p) < 1e-9 * max(1.0, abs(p)):
            coarse_amp[k] = af[i]
    return coarse.inverse(coarse_amp)


@dataclass(frozen=True)
class OracleShortTimeReport:
    """Exact Taylor data of rho(z, t) for a two-packet configuration.

    c1_* are the linear coefficients (they vanish for the real product
    state); c2_free is the full quadratic coefficient at lambda = 0 and
    c2_int its exact O(lambda) part per unit coupling.  `densities` holds
    the exactly propagated density at the requested times, at the
    configuration's own coupling.
    """

    rho0: np.ndarray
    c1_free: np.ndarray
    c1_int: np.ndarray
    c2_free: np.ndarray
    c2_int: np.ndarray
    times: tuple
    densities: np.ndarray          # shape (len(times), n)
    norm_drift: float              # max | <psi(t)|psi(t)> - <psi|psi> |


def taylor_coefficients(ops: TwoParticleOperators, psi: np.ndarray, lam: float):
    """(rho0, c1, c2) of rho(t) = <psi(t)| n |psi(t)> at coupling lam."""
    h_psi = ops.apply_h(psi, lam)
    hh_psi = ops.apply_h(h_psi, lam)
    rho0 = np.real(ops.number_overlap(psi, psi))
    c1 = np.real(1j * (ops.number_overlap(h_psi, psi)
                       - ops.number_overlap(psi, h_psi)))
    c2 = np.real(ops.number_overlap(h_psi, h_psi)
                 - 0.5 * ops.number_overlap(hh_psi, psi)
                 - 0.5 * ops.number_overlap(psi, hh_psi))
    return rho0, c1, c2


def interaction_coefficients(ops: TwoParticleOperators, psi: np.ndarray):
    """Exact (c1, c2) O(lambda) parts, per unit coupling.

    Equivalent to the (+lambda, -lambda) difference quotient of the full
    coefficients, evaluated through the polynomial structure so that the
    free part cancels exactly instead of numerically.
    """
    h0_psi = ops.apply_h0(psi)
    v_psi = ops.apply_vertex(psi)
    c1 = np.real(1j * (ops.number_overlap(v_psi, psi)
                       - ops.number_overlap(psi, v_psi)))
    # <H0 n V> + <V n H0> - Re<(H0 V + V H0) n> taken with both orderings
    cross = ops.apply_h0(v_psi) + ops.apply_vertex(h0_psi)
    t1 = (ops.number_overlap(h0_psi, v_psi)
          + ops.number_overlap(v_psi, h0_psi))
    t2 = (ops.number_overlap(cross, psi) + ops.number_overlap(psi, cross))
    c2 = np.real(t1 - 0.5 * t2)
    return c1, c2


def oracle_short_time(cfg, basis: SectorBasis | None = None,
                      t_list=(), state=None) -> OracleShortTimeReport:
    """Exact two-particle short-time data for a TwoParticleConfig.

    `state` overrides the default real product state with an arbitrary
    symmetric-matrix state (used for generic-state convergence checks).
    """
    if basis is None:
        basis = SectorBasis(cfg.grid)
    if basis.grid is not cfg.grid and basis.grid != cfg.grid:
        raise ValueError("basis and configuration grids differ")
    ops = TwoParticleOperators(cfg.grid, cfg.params)
    psi = ops.product_state(cfg.g_x, cfg.g_y) if state is None else state
    lam = cfg.params.coupling

    c1_int, c2_int = interaction_coefficients(ops, psi)
    rho0, c1_free, c2_free = taylor_coefficients(ops, psi, 0.0)

    times = tuple(float(t) for t in t_list)
    densities = np.zeros((len(times), cfg.grid.n_points))
    norm_drift = 0.0
    if times:
        h_full = build_h0(basis, cfg.params).matrix
        if lam != 0.0:
            h_full = h_full + build_v22(basis, cfg.params).matrix
        evals, evecs = np.linalg.eigh(h_full)
        v0 = basis.mat_to_vec(psi)
        coeff = evecs.conj().T @ v0
        base_norm = float(np.real(np.vdot(v0, v0)))
        for k, t in enumerate(times):
            vt = evecs @ (np.exp(-1j * evals * t) * coeff)
            psit = basis.vec_to_mat(vt)
            densities[k] = ops.density(psit)
            norm_drift = max(norm_drift,
                             abs(float(np.real(np.vdot(vt, vt))) - base_norm))

    return OracleShortTimeReport(
        rho0=rho0, c1_free=c1_free, c1_int=c1_int,
        c2_free=c2_free, c2_int=c2_int,
        times=times, densities=densities, norm_drift=norm_drift,
    )
