"""The batch scenarios behind the command line.

Each runner computes one experiment, writes plain-text column files
(17-significant-digit decimals, one header line naming the columns) and
returns a flat metric dictionary for the manifest.  Runs are deterministic:
identical configs produce byte-identical data files.
"""

from __future__ import annotations

import numpy as np

from . import __version__
from .boost import (
    BoostParams,
    boost_field,
    boost_nw,
    naive_lorentz_density,
    predicted_peaks,
)
from .config import ExperimentConfig
from .evolution import detect_peaks, evolve_free, lightcone_fraction
from .grid import SpatialGrid
from .interaction import (
    TwoParticleConfig,
    asymmetry_metric,
    initial_density,
    r_free_quadratic,
    r_int,
)
from .kernels import (
    KernelTable,
    ModelParams,
    check_momentum_window,
    multiplier_i_minus,
    multiplier_i_plus,
    multiplier_nw_to_field,
    omega,
)
from .states import (
    PacketShape,
    Yardstick,
    convert_yardstick,
    density,
    make_packet,
    smooth_edges,
)

SCENARIO_HELP = {
    "fig1": "free evolution of a sharp box packet; light-cone fractions for "
            "both position yardsticks at t = 0, T/2, T",
    "fig2": "short-time two-packet interaction correction r_int for two "
            "packet widths; midpoint ratio and asymmetry metrics",
    "fig3": "moving-frame densities of a box packet: correct NW boost, "
            "naive Lorentz remap, field-yardstick boost, four-peak check",
    "evolve": "free evolution of a configured packet at a list of times",
    "boost": "NW boost of a configured packet at a configured velocity",
    "kernels": "sampled smoothing-kernel table, multiplier tables and the "
               "kernel duality residual",
}


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def write_columns(path, header: str, columns) -> None:
    cols = [np.asarray(c, dtype=float) for c in columns]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(header + "\n")
        for row in zip(*cols):
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_manifest(path, config: ExperimentConfig, metrics: dict,
                   wall_time: float) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"tool_version = {__version__}\n")
        for (section, key), value in sorted(config.values.items()):
            if isinstance(value, list):
                value = ",".join(_fmt(v) for v in value)
            elif isinstance(value, float):
                value = _fmt(value)
            fh.write(f"config.{section}.{key} = {value}\n")
        for key in sorted(metrics):
            fh.write(f"metric.{key} = {_fmt(metrics[key])}\n")
        fh.write(f"wall_time_s = {wall_time:.3f}\n")


def _grid_params(cfg: ExperimentConfig):
    grid = SpatialGrid(cfg[("grid", "n_points")], cfg[("grid", "z_min")],
                       cfg[("grid", "z_max")])
    params = ModelParams(mass=cfg[("model", "mass")],
                         light_speed=cfg[("model", "light_speed")],
                         coupling=cfg[("model", "coupling")])
    check_momentum_window(grid, params)
    return grid, params


def run_fig1(cfg: ExperimentConfig, out_dir) -> dict:
    grid, params = _grid_params(cfg)
    w = cfg[("packet", "width")]
    center = cfg[("packet", "center")]
    t_final = cfg[("times", "t_final")]
    times = [0.0, t_final / 2, t_final]

    pkt = make_packet(PacketShape("box", w, center), grid, params)
    metrics = {}
    for k, t in enumerate(times):
        nw_t = evolve_free(pkt, t)
        rho_a = density(nw_t, normalize=False)
        rho_phi = density(convert_yardstick(nw_t, Yardstick.FIELD), normalize=True)
        write_columns(out_dir / f"rho_a_t{k}.csv", "z,rho",
                      (grid.z, rho_a.values))
        write_columns(out_dir / f"rho_phi_t{k}.csv", "z,rho",
                      (grid.z, rho_phi.values))
        rep_a = lightcone_fraction(rho_a, w, t, params.light_speed)
        rep_phi = lightcone_fraction(rho_phi, w, t, params.light_speed)
        metrics[f"time_t{k}"] = t
        metrics[f"fraction_outside_nw_t{k}"] = rep_a.fraction_outside
        metrics[f"fraction_outside_field_t{k}"] = rep_phi.fraction_outside
    return metrics


def run_fig2(cfg: ExperimentConfig, out_dir) -> dict:
    grid, params = _grid_params(cfg)
    widths = cfg[("two_packets", "widths")]
    x, y = cfg[("two_packets", "x")], cfg[("two_packets", "y")]
    i_mid = grid.index_of(0.5 * (x + y))
    inner = 0.25 * (y - x)

    metrics = {}
    r_mid = []
    for k, w in enumerate(widths):
        two = TwoParticleConfig(grid=grid, params=params, shape_kind="gaussian",
                                width=w, x=x, y=y)
        rho0 = initial_density(two)
        r = r_int(two)
        rfree = r_free_quadratic(two)
        write_columns(out_dir / f"r_int_w{k}.csv", "z,r_int", (grid.z, r))
        write_columns(out_dir / f"rho0_w{k}.csv", "z,rho", (grid.z, rho0.values))
        r_mid.append(r[i_mid])
        window = (grid.z > x + w) & (grid.z < y - w)
        metrics[f"width_w{k}"] = w
        metrics[f"r_int_midpoint_w{k}"] = r[i_mid]
        metrics[f"rho0_midpoint_w{k}"] = rho0.values[i_mid]
        metrics[f"positive_fraction_between_w{k}"] = float(np.mean(r[window] > 0))
        metrics[f"asymmetry_r_int_w{k}"] = asymmetry_metric(r, grid, x, inner)
        metrics[f"asymmetry_r_free_w{k}"] = asymmetry_metric(rfree, grid, x, inner)
    if len(widths) >= 2 and r_mid[1] != 0:
        metrics["midpoint_ratio"] = r_mid[0] / r_mid[1]
    return metrics


def run_fig3(cfg: ExperimentConfig, out_dir) -> dict:
    grid, params = _grid_params(cfg)
    w = cfg[("packet", "width")]
    center = cfg[("packet", "center")]
    smooth_dz = cfg[("packet", "edge_smoothing_dz")]
    v = cfg[("boost", "velocity")]
    field_window = cfg[("boost", "field_window")]
    b = BoostParams.from_velocity(v, params)

    pkt = make_packet(PacketShape("box", w, center), grid, params)
    if smooth_dz > 0:
        pkt = smooth_edges(pkt, smooth_dz * grid.dz)

    rho_rest = density(pkt)
    boosted = boost_nw(pkt, b)
    rho_boost = density(boosted)
    naive = naive_lorentz_density(pkt, b, window=(-field_window, field_window))

    field_rest = convert_yardstick(pkt, Yardstick.FIELD)
    field_boost = boost_field(field_rest, b, window=(-field_window, field_window))
    rho_phi_rest = density(field_rest)
    rho_phi_boost = density(field_boost)

    write_columns(out_dir / "rho_rest.csv", "z,rho", (grid.z, rho_rest.values))
    write_columns(out_dir / "rho_boosted.csv", "z,rho", (grid.z, rho_boost.values))
    write_columns(out_dir / "rho_naive.csv", "z,rho", (grid.z, naive.values))
    write_columns(out_dir / "rho_phi_boosted.csv", "z,rho",
                  (grid.z, rho_phi_boost.values))

    peaks = detect_peaks(rho_boost.values, grid)
    peaks.sort(key=lambda ph: -ph[1])
    found = sorted(zp for zp, _ in peaks[:4])
    predicted = predicted_peaks(center - w, center + w, b.rapidity)

    metrics = {
        "rapidity": b.rapidity,
        "nw_norm_rest": rho_rest.raw_integral,
        "nw_norm_boosted": rho_boost.raw_integral,
        "field_norm_rest": rho_phi_rest.raw_integral,
        "field_norm_boosted": rho_phi_boost.raw_integral,
        "field_norm_rel_change": abs(rho_phi_boost.raw_integral
                                     - rho_phi_rest.raw_integral)
                                 / rho_phi_rest.raw_integral,
        "peak_rightmost": found[-1] if found else float("nan"),
        "peak_rightmost_predicted": predicted[-1],
    }
    for k, (zp, zq) in enumerate(zip(found, predicted)):
        metrics[f"peak_{k}"] = zp
        metrics[f"peak_{k}_predicted"] = zq
    return metrics


def run_evolve(cfg: ExperimentConfig, out_dir) -> dict:
    grid, params = _grid_params(cfg)
    shape = PacketShape(cfg[("packet", "kind")], cfg[("packet", "width")],
                        cfg[("packet", "center")])
    times = cfg[("times", "times")]
    pkt = make_packet(shape, grid, params)
    metrics = {}
    for k, t in enumerate(times):
        rho = density(evolve_free(pkt, t))
        write_columns(out_dir / f"rho_t{k}.csv", "z,rho", (grid.z, rho.values))
        rep = lightcone_fraction(rho, shape.width, t, params.light_speed)
        metrics[f"time_t{k}"] = t
        metrics[f"fraction_outside_t{k}"] = rep.fraction_outside
        metrics[f"norm_t{k}"] = rho.raw_integral
    return metrics


def run_boost(cfg: ExperimentConfig, out_dir) -> dict:
    grid, params = _grid_params(cfg)
    shape = PacketShape(cfg[("packet", "kind")], cfg[("packet", "width")],
                        cfg[("packet", "center")])
    smooth_dz = cfg[("packet", "edge_smoothing_dz")]
    b = BoostParams.from_velocity(cfg[("boost", "velocity")], params)
    pkt = make_packet(shape, grid, params)
    if smooth_dz > 0 and shape.kind == "box":
        pkt = smooth_edges(pkt, smooth_dz * grid.dz)
    boosted = boost_nw(pkt, b)
    rho_rest = density(pkt)
    rho_boost = density(boosted)
    half = (grid.z_min / 2, grid.z_max / 2)
    naive = naive_lorentz_density(pkt, b, window=half)
    write_columns(out_dir / "rho_rest.csv", "z,rho", (grid.z, rho_rest.values))
    write_columns(out_dir / "rho_boosted.csv", "z,rho", (grid.z, rho_boost.values))
    write_columns(out_dir / "rho_naive.csv", "z,rho", (grid.z, naive.values))
    return {
        "rapidity": b.rapidity,
        "nw_norm_rest": rho_rest.raw_integral,
        "nw_norm_boosted": rho_boost.raw_integral,
    }


def run_kernels(cfg: ExperimentConfig, out_dir) -> dict:
    grid, params = _grid_params(cfg)
    i_plus = multiplier_i_plus(params)
    i_minus = multiplier_i_minus(params)
    table = KernelTable.from_multiplier(grid, i_plus)
    order = np.argsort(table.separations)
    write_columns(out_dir / "kernel_i_plus.csv", "z,value",
                  (table.separations[order], np.real(table.values)[order]))
    p_sorted = np.sort(grid.p)
    write_columns(out_dir / "multipliers.csv",
                  "p,omega,i_plus,i_minus,nw_to_field",
                  (p_sorted, omega(p_sorted, params), i_plus(p_sorted),
                   i_minus(p_sorted), multiplier_nw_to_field(params)(p_sorted)))
    duality = np.abs(2 * i_plus(grid.p) * i_minus(grid.p) - 1.0).max()
    peak = float(np.real(table.values).max())
    at_compton = float(np.real(
        table.values[int(round(params.compton_length / grid.dz))]))
    return {
        "duality_residual": float(duality),
        "kernel_peak": peak,
        "kernel_at_compton_over_peak": at_compton / peak,
        "compton_length": params.compton_length,
    }


RUNNERS = {
    "fig1": run_fig1,
    "fig2": run_fig2,
    "fig3": run_fig3,
    "evolve": run_evolve,
    "boost": run_boost,
    "kernels": run_kernels,
}
