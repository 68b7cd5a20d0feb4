import numpy as np
import pytest

from qpos1d import ModelParams, SpatialGrid, TwoParticleConfig, omega, r_int
from qpos1d.errors import ProjectionLossError
from qpos1d.fock import (
    SectorBasis,
    TwoParticleOperators,
    build_h0,
    build_v22,
    oracle_short_time,
    project_fine_to_coarse,
)
from qpos1d.interaction import r_free_quadratic


@pytest.fixture(scope="module")
def coarse():
    return SpatialGrid(32, -0.15, 0.15)


@pytest.fixture(scope="module")
def coarse_cfg(coarse, params):
    return TwoParticleConfig(grid=coarse, params=params, shape_kind="gaussian",
                             width=0.026, x=-0.072, y=0.072)


def test_basis_dimensions(coarse):
    basis = SectorBasis(coarse)
    n = coarse.n_points
    assert basis.dim == n * (n + 1) // 2
    # round trip through the normalized basis coefficients
    rng = np.random.default_rng(7)
    psi = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    psi = 0.5 * (psi + psi.T)
    back = basis.vec_to_mat(basis.mat_to_vec(psi))
    assert np.max(np.abs(back - psi)) < 1e-12


def test_basis_size_guard():
    with pytest.raises(ValueError):
        SectorBasis(SpatialGrid(128, -0.15, 0.15))


def test_h0_plane_wave_eigenvalues(coarse, params):
    basis = SectorBasis(coarse)
    h0 = build_h0(basis, params)
    assert h0.hermiticity_residual < 1e-12 * np.abs(h0.matrix).max()
    ops = TwoParticleOperators(coarse, params)
    n = coarse.n_points
    k1, k2 = coarse.p[3], coarse.p[10]
    f1 = np.exp(1j * k1 * coarse.z) / np.sqrt(n)
    f2 = np.exp(1j * k2 * coarse.z) / np.sqrt(n)
    psi = 0.5 * (np.outer(f1, f2) + np.outer(f2, f1))
    hpsi = ops.apply_h0(psi)
    expected = omega(k1, params) + omega(k2, params)
    assert np.max(np.abs(hpsi - expected * psi)) < 1e-8 * expected * np.abs(psi).max()


def test_h0_ground_state_energy(params):
    g = SpatialGrid(16, -0.15, 0.15)
    basis = SectorBasis(g)
    h0 = build_h0(basis, params)
    evals = np.linalg.eigvalsh(h0.matrix)
    assert evals[0] >= 2 * params.rest_energy - 1e-6
    assert evals[0] == pytest.approx(2 * params.rest_energy, rel=1e-12)


def test_v22_zero_coupling_and_hermiticity(coarse):
    basis = SectorBasis(coarse)
    free = ModelParams(coupling=0.0)
    assert np.abs(build_v22(basis, free).matrix).max() == 0.0
    lam = ModelParams(coupling=1.0)
    v = build_v22(basis, lam)
    assert v.hermiticity_residual < 1e-12 * np.abs(v.matrix).max()


def test_v22_translation_invariance(coarse, params):
    # shifting all site indices by one (periodically) leaves elements alone
    ops = TwoParticleOperators(coarse, params)
    rng = np.random.default_rng(3)
    psi = rng.normal(size=(coarse.n_points,) * 2)
    psi = 0.5 * (psi + psi.T)
    rolled = np.roll(np.roll(psi, 1, axis=0), 1, axis=1)
    v_then_roll = np.roll(np.roll(ops.apply_vertex(psi), 1, axis=0), 1, axis=1)
    roll_then_v = ops.apply_vertex(rolled)
    assert np.max(np.abs(v_then_roll - roll_then_v)) \
        < 1e-10 * np.abs(v_then_roll).max()


def test_number_operator_counts_two(coarse_cfg, coarse, params):
    ops = TwoParticleOperators(coarse, params)
    psi = ops.product_state(coarse_cfg.g_x, coarse_cfg.g_y)
    # discrete commutator bookkeeping: sum_i n(z_i) dz = particle number
    assert np.sum(ops.density(psi)) * coarse.dz == pytest.approx(2.0, rel=1e-8)
    assert np.real(ops.inner(psi, psi)) == pytest.approx(1.0, rel=1e-8)


def test_oracle_linear_terms_vanish(coarse_cfg):
    report = oracle_short_time(coarse_cfg)
    scale = np.abs(report.c2_free).max()
    assert np.abs(report.c1_free).max() < 1e-10 * scale
    assert np.abs(report.c1_int).max() < 1e-10 * scale


def test_oracle_free_part_matches_spectral_evolution(coarse_cfg):
    report = oracle_short_time(coarse_cfg)
    spectral = r_free_quadratic(coarse_cfg)
    rel = np.linalg.norm(report.c2_free - spectral) / np.linalg.norm(spectral)
    assert rel < 0.02          # two fully independent paths


def test_oracle_interaction_part_matches_chain_assembly(coarse_cfg):
    report = oracle_short_time(coarse_cfg)
    spectral = r_int(coarse_cfg, check_cutoff=False)
    rel = np.linalg.norm(report.c2_int - spectral) / np.linalg.norm(spectral)
    assert rel < 0.02


def test_oracle_propagation_unitary(coarse_cfg):
    ts = np.linspace(0.0, 2e-5, 4)
    report = oracle_short_time(coarse_cfg, t_list=ts)
    assert report.norm_drift < 1e-10
    # density stays normalized to two particles
    for rho in report.densities:
        assert np.sum(rho) * coarse_cfg.grid.dz == pytest.approx(2.0, abs=1e-8)


def test_truncation_error_order_kicked_state(coarse, coarse_cfg, params):
    # a momentum-kicked (complex) state has a nonzero t^3 term: the residual
    # of the quadratic expansion scales as t^3
    ops = TwoParticleOperators(coarse, params)
    k0 = 25.0
    gx = coarse_cfg.g_x * np.exp(1j * k0 * coarse.z)
    gy = coarse_cfg.g_y * np.exp(-1j * k0 * coarse.z)
    state = ops.product_state(gx, gy)
    ts = np.geomspace(3e-7, 3e-6, 6)
    report = oracle_short_time(coarse_cfg, t_list=ts, state=state)
    lam = params.coupling
    from qpos1d.fock import taylor_coefficients

    rho0, c1, c2 = taylor_coefficients(ops, state, lam)
    errs = [np.linalg.norm(report.densities[k] - (rho0 + t * c1 + t**2 * c2))
            for k, t in enumerate(ts)]
    slope = np.polyfit(np.log(ts), np.log(errs), 1)[0]
    assert slope == pytest.approx(3.0, abs=0.2)


def test_truncation_error_order_real_state(coarse_cfg, coarse, params):
    # time-reversal symmetry of the real product state pushes the residual
    # to t^4
    ops = TwoParticleOperators(coarse, params)
    psi = ops.product_state(coarse_cfg.g_x, coarse_cfg.g_y)
    ts = np.geomspace(3e-7, 3e-6, 6)
    report = oracle_short_time(coarse_cfg, t_list=ts)
    from qpos1d.fock import taylor_coefficients

    rho0, c1, c2 = taylor_coefficients(ops, psi, params.coupling)
    errs = [np.linalg.norm(report.densities[k] - (rho0 + t * c1 + t**2 * c2))
            for k, t in enumerate(ts)]
    slope = np.polyfit(np.log(ts), np.log(errs), 1)[0]
    assert slope == pytest.approx(4.0, abs=0.2)


def test_projection_guard(params):
    fine = SpatialGrid(256, -0.15, 0.15)
    coarse = SpatialGrid(32, -0.15, 0.15)
    z = fine.z
    smooth = np.exp(-(z / 0.03) ** 2).astype(complex)
    projected = project_fine_to_coarse(smooth, fine, coarse)
    # smooth packets survive: values match at the common points
    assert np.max(np.abs(projected - smooth[::8])) < 1e-10
    spiky = np.exp(-(z / 0.001) ** 2).astype(complex)
    with pytest.raises(ProjectionLossError):
        project_fine_to_coarse(spiky, fine, coarse)


def test_oracle_density_slope_vanishes_at_zero_time(coarse_cfg):
    # Richardson-style check on the exact propagation: the density has no
    # linear-in-t component for the real product state
    t = 1e-6
    report = oracle_short_time(coarse_cfg, t_list=(-t, t))
    slope = (report.densities[1] - report.densities[0]) / (2 * t)
    curvature = np.abs(report.densities[1] - report.rho0).max() / t
    assert np.abs(slope).max() < 1e-6 * curvature
