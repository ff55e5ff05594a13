import json
import math
from dataclasses import replace

import numpy as np
import pytest

from glasslab import cli
from glasslab.disorder import DisorderSpec
from glasslab.experiments import (
    DEFAULT_TOLERANCES,
    ExperimentConfig,
    ExperimentReport,
    run_concentration,
    run_descent,
    run_edge,
    run_mixture_info,
    run_moments,
    run_spectrum,
    run_universality,
    sample_points,
    write_report,
)
from glasslab.hamiltonian import radius_parameter

MIXED = {"gammas": {"2": 1.0, "3": 1.0}}


def make_cfg(**kw):
    data = {"mixture": MIXED, "N": 20, "seed": 7}
    data.update(kw)
    return ExperimentConfig.from_dict(data)


# config parsing


def test_config_round_trip():
    cfg = make_cfg(trials=3, eps=0.25, K=5, moment_ks=[2, 4],
                   x_sampling={"mode": "radii_grid", "radii": [0.3, 0.6]})
    again = ExperimentConfig.from_dict(cfg.to_dict())
    assert again == cfg
    assert cfg.tol("edge_delta_divisor") == DEFAULT_TOLERANCES["edge_delta_divisor"]


@pytest.mark.parametrize(
    "bad",
    [
        {"trials": 0},
        {"eps": 0.0},
        {"K": 1},
        {"N": 1},
        {"x_sampling": {"mode": "grid"}},
        {"x_sampling": {"mode": "radii_grid"}},
        {"x_sampling": {"mode": "radii_grid", "radii": [1.5]}},
        {"tolerances": {"nonsense": 1.0}},
        {"colour": "blue"},
    ],
)
def test_config_rejects_invalid(bad):
    with pytest.raises(ValueError):
        make_cfg(**bad)


def test_config_requires_mixture_and_N():
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"N": 10})


def test_sampling_modes():
    cfg = make_cfg(
        x_sampling=[
            {"mode": "sphere_uniform", "n": 2},
            {"mode": "ball_uniform", "n": 3, "min_rho": 0.5},
            {"mode": "radii_grid", "radii": [0.25]},
            {"mode": "north_pole", "radii": [0.5]},
        ]
    )
    pts = sample_points(cfg)
    rhos = [radius_parameter(x) for _, x in pts]
    assert len(pts) == 7
    np.testing.assert_allclose(rhos[:2], 1.0)
    assert all(0.5 <= r <= 1.0 for r in rhos[2:5])
    assert rhos[5] == pytest.approx(0.25)
    np.testing.assert_array_equal(pts[6][1][:-1], 0.0)
    assert pts[6][1][-1] == pytest.approx(math.sqrt(10))
    # same config, same points
    again = sample_points(cfg)
    for (_, a), (_, b) in zip(pts, again):
        np.testing.assert_array_equal(a, b)


# reports


def test_report_check_uses_only_value_and_threshold():
    r = ExperimentReport("x", {})
    assert r.check("a", 0.1, "<=", 0.2)
    assert not r.check("b", float("nan"), "<=", 0.2)
    assert not r.check("c", None, ">=", 0.0)
    assert not r.passed
    with pytest.raises(ValueError):
        r.check("d", 1.0, "==", 1.0)
    data = json.loads(r.to_json())
    assert data["checks"][1]["value"] is None


# experiments at toy scale


def test_spectrum_reference_radius_at_quarter_radius():
    cfg = make_cfg(x_sampling={"mode": "radii_grid", "radii": [0.25]})
    rep = run_spectrum(cfg)
    rec = rep.records[0]
    assert rec["xi2"] == pytest.approx(3.5)
    assert rec["semicircle_radius"] == pytest.approx(2 * math.sqrt(3.5))
    esd = json.loads(next(iter(rep.attachments.values())))
    assert len(esd["eigenvalues"]) == 20


def test_spectrum_skips_origin_for_pure_three_spin():
    cfg = make_cfg(mixture={"gammas": {"3": 1.0}}, x_sampling={"mode": "radii_grid", "radii": [0.0, 1.0]})
    rep = run_spectrum(cfg)
    assert "skipped" in rep.records[0]
    assert "w1" in rep.records[1]


def test_moments_records_both_hessians():
    cfg = make_cfg(trials=3, moment_ks=[2, 3], x_sampling={"mode": "north_pole", "radii": [1.0]})
    rep = run_moments(cfg)
    assert len(rep.records) == 2
    for r in rep.records:
        assert math.isfinite(r["euclidean_normalized"]) and math.isfinite(r["projected_normalized"])
    tol = 8 / math.sqrt(3 * 20) + 40 / 20
    assert rep.summary["tolerance"] == pytest.approx(tol)
    assert rep.tables["moments"].startswith("point,k,")


def test_moments_needs_orders():
    with pytest.raises(ValueError):
        run_moments(make_cfg(moment_ks=[]))


def test_edge_threshold_and_wide_eps():
    rep = run_edge(make_cfg(eps=0.5, x_sampling={"mode": "sphere_uniform", "n": 2}))
    assert rep.summary["threshold"] == pytest.approx(rep.summary["delta_calibration"] / 4)
    # pure 2-spin: eps past the whole support counts every eigenvalue
    cfg = make_cfg(mixture={"gammas": {"2": 0.1}}, eps=0.9, x_sampling={"mode": "sphere_uniform", "n": 2})
    rep = run_edge(cfg)
    assert all(r["edge_mass"] == 1.0 for r in rep.records)
    with pytest.raises(ValueError):
        run_edge(make_cfg(eps=1.0))


def test_descent_with_two_steps():
    rep = run_descent(make_cfg(K=2, trials=2))
    assert rep.summary["full_rsb"] in (True, False)
    for r in rep.records:
        assert r["max_norm_error"] <= 1e-8
        assert r["max_signed_first_order"] <= 0
    assert set(rep.tables) == {"trace_t0", "trace_t1"}
    assert "mean increment correlation" not in [c["name"] for c in rep.checks]


def test_descent_pure_two_spin_has_oracle_and_no_correlation():
    rep = run_descent(make_cfg(mixture={"gammas": {"2": 1.0}}, K=4))
    assert "oracle_energy_per_site" in rep.records[0]
    assert rep.records[0]["increment_correlation"] is None
    assert any("correlation undefined" in n for n in rep.notes)


def test_universality_validation():
    with pytest.raises(ValueError):
        run_universality(make_cfg(disorders=[{"kind": "gaussian"}]))
    a = make_cfg(K=3)
    b = replace(a, N=21, disorder=DisorderSpec("uniform_sym"))
    with pytest.raises(ValueError):
        run_universality([a, b])


def test_universality_identical_kinds_give_zero_difference():
    cfg = make_cfg(K=4, trials=2, disorders=[{"kind": "rademacher"}, {"kind": "rademacher"}])
    rep = run_universality(cfg)
    assert rep.records[1]["delta_energy_per_site"] == 0.0
    assert rep.records[1]["delta_edge_mass"] == 0.0
    assert any("outside the log-Sobolev" in n for n in rep.notes)


def test_concentration_validation_and_shape():
    with pytest.raises(ValueError):
        run_concentration(make_cfg(N_grid=[10, 20], trials=1))
    with pytest.raises(ValueError):
        run_concentration(make_cfg(N_grid=[10], trials=3))
    rep = run_concentration(make_cfg(N_grid=[10, 30], trials=4))
    assert [r["N"] for r in rep.records] == [10, 30]
    assert rep.records[0]["lipschitz_constant"] == pytest.approx(4.0)


def test_mixture_info():
    rep = run_mixture_info(make_cfg())
    s = rep.summary
    assert s["xi2_1"] == pytest.approx(8.0)
    assert s["ground_state_target"] == pytest.approx((8**1.5 - 2**1.5) / 9)
    assert s["predicted_energy"] == pytest.approx(-20 * s["ground_state_target"])


# determinism and output files


def test_reports_are_byte_identical(tmp_path):
    cfg = make_cfg(trials=2, K=3, x_sampling={"mode": "ball_uniform", "n": 2})
    for fn in (run_spectrum, run_edge, run_descent):
        a = write_report(fn(cfg), tmp_path / f"{fn.__name__}_a").read_bytes()
        b = write_report(fn(cfg), tmp_path / f"{fn.__name__}_b").read_bytes()
        assert a == b


def _write_cfg(tmp_path, **kw):
    data = {"mixture": MIXED, "N": 16, "seed": 1}
    data.update(kw)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_cli_writes_outputs(tmp_path):
    cfg = _write_cfg(tmp_path, x_sampling={"mode": "sphere_uniform", "n": 2},
                     tolerances={"spectrum_w1": 10.0})
    out = tmp_path / "out"
    assert cli.main(["spectrum", "--config", cfg, "--out", str(out)]) == 0
    names = {p.name for p in out.iterdir()}
    assert {"report.json", "timing.json"} <= names
    assert any(n.startswith("esd_") for n in names)
    report = json.loads((out / "report.json").read_text())
    assert report["experiment"] == "spectrum" and report["passed"]


def test_cli_csv_and_seed_override(tmp_path):
    cfg = _write_cfg(tmp_path, K=3, tolerances={"descent_energy": 100.0})
    out = tmp_path / "out"
    assert cli.main(["descent", "--config", cfg, "--seed", "5", "--out", str(out)]) == 0
    assert (out / "trace_t0.csv").read_text().startswith("step,rho,lambda_min,energy")
    assert json.loads((out / "report.json").read_text())["config"]["seed"] == 5


def test_cli_exit_code_on_tolerance_failure(tmp_path):
    cfg = _write_cfg(tmp_path, tolerances={"spectrum_w1": 0.0})
    assert cli.main(["spectrum", "--config", cfg, "--out", str(tmp_path / "o")]) == 2


def test_cli_exit_code_on_config_errors(tmp_path, capsys):
    assert cli.main(["spectrum", "--config", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["spectrum", "--config", str(bad)]) == 1
    cfg = _write_cfg(tmp_path, trials=1, N_grid=[8, 16])
    assert cli.main(["concentration", "--config", cfg]) == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense", "--config", cfg])
    assert exc.value.code == 1


def test_cli_prints_report_without_out(tmp_path, capsys):
    cfg = _write_cfg(tmp_path)
    assert cli.main(["mixture-info", "--config", cfg]) == 0
    assert json.loads(capsys.readouterr().out)["experiment"] == "mixture-info"
