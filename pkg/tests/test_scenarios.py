"""End-to-end runs of the figure scenarios at quarter resolution.

The acceptance suite pins the quantitative anchors at production
resolution; these runs check the full config -> files -> manifest path and
that the reduced-scale numbers land in the right neighborhoods.
"""

import numpy as np
import pytest

from qpos1d.cli import EXIT_OK, main


def run_scenario(tmp_path, name, extra=""):
    out = tmp_path / name
    cfg = tmp_path / f"{name}.cfg"
    cfg.write_text(f"[run]\nscenario = {name}\nout_dir = {out}\n"
                   f"[grid]\nn_points = 4096\n{extra}")
    assert main(["run", str(cfg)]) == EXIT_OK
    manifest = dict(line.split(" = ", 1)
                    for line in (out / "manifest.txt").read_text().splitlines())
    return out, manifest


def test_fig1_files_and_metrics(tmp_path):
    out, man = run_scenario(tmp_path, "fig1")
    for k in range(3):
        assert (out / f"rho_a_t{k}.csv").exists()
        assert (out / f"rho_phi_t{k}.csv").exists()
    assert float(man["metric.fraction_outside_nw_t1"]) == pytest.approx(0.03, abs=0.01)
    assert float(man["metric.fraction_outside_field_t0"]) == pytest.approx(0.06, abs=0.015)
    assert (float(man["metric.fraction_outside_nw_t2"])
            < float(man["metric.fraction_outside_nw_t1"]))
    # emitted NW density is unit normalized
    z, rho = np.loadtxt(out / "rho_a_t0.csv", delimiter=",", skiprows=1, unpack=True)
    assert np.sum(rho) * (z[1] - z[0]) == pytest.approx(1.0, abs=1e-8)


def test_fig2_files_and_metrics(tmp_path):
    out, man = run_scenario(tmp_path, "fig2")
    for k in range(2):
        assert (out / f"r_int_w{k}.csv").exists()
        assert (out / f"rho0_w{k}.csv").exists()
    assert 0.10 <= float(man["metric.midpoint_ratio"]) <= 0.25
    assert float(man["metric.rho0_midpoint_w0"]) \
        < 1e-4 * float(man["metric.rho0_midpoint_w1"])
    assert float(man["metric.positive_fraction_between_w0"]) >= 0.8
    assert float(man["metric.asymmetry_r_int_w0"]) > 0.05
    assert float(man["metric.asymmetry_r_free_w0"]) < 1e-3
    header = (out / "r_int_w0.csv").read_text().splitlines()[0]
    assert header == "z,r_int"


def test_fig3_files_and_metrics(tmp_path):
    out, man = run_scenario(tmp_path, "fig3")
    for name in ("rho_rest", "rho_boosted", "rho_naive", "rho_phi_boosted"):
        assert (out / f"{name}.csv").exists()
    assert float(man["metric.rapidity"]) == pytest.approx(0.9287, abs=2e-4)
    # quarter resolution: the edge smoothing costs a few percent on the peak
    assert float(man["metric.peak_rightmost"]) == pytest.approx(1.85e-2, rel=0.05)
    assert abs(float(man["metric.nw_norm_boosted"]) - 1.0) < 1e-8
    assert float(man["metric.field_norm_rel_change"]) > 1e-3
