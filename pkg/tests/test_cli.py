import json
import os

import numpy as np
import pytest

from psr.cli import ConfigError, load_config, main, resolve_scenario, write_csv


FAST_FIG1 = [
    "--override", "span.max=8",
    "--override", "n_points=801",
    "--override", "tol=1e-8",
]


def run_cli(*args):
    return main(list(args))


def test_units_para_h2(tmp_path):
    code = run_cli("units", "--preset", "para-h2", "--n", "1e21",
                   "--out", str(tmp_path))
    assert code == 0
    manifest = json.loads((tmp_path / "para-h2" / "manifest.json").read_text())
    ct0 = manifest["derived_units"]["ct0_mm"]
    assert abs(ct0 - 0.03) < 0.15 * 0.03
    assert manifest["derived_units"]["E0_sq_TW_mm2"] == pytest.approx(1.0, rel=0.3)
    assert manifest["dimensionless"]["gamma_plus"] == pytest.approx(15.217, rel=1e-3)


def test_units_density_override(tmp_path):
    run_cli("units", "--preset", "para-h2", "--n", "1e21", "--out", str(tmp_path / "a"))
    run_cli("units", "--preset", "para-h2", "--n", "4e21", "--out", str(tmp_path / "b"))
    m1 = json.loads((tmp_path / "a" / "para-h2" / "manifest.json").read_text())
    m4 = json.loads((tmp_path / "b" / "para-h2" / "manifest.json").read_text())
    assert m4["derived_units"]["t0_s"] == pytest.approx(
        m1["derived_units"]["t0_s"] / 2.0, rel=1e-12)


def test_profile_fig1_csv(tmp_path):
    code = run_cli("profile", "--scenario", "fig1", "--out", str(tmp_path), *FAST_FIG1)
    assert code == 0
    csv = (tmp_path / "fig1" / "profile.csv").read_text().splitlines()
    assert csv[0] == "xi,R,L,r1,r2,r3,deta,W_invariant_h,invariant_l"
    assert len(csv) == 802
    seg = (tmp_path / "fig1" / "segments.csv").read_text().splitlines()
    assert seg[0] == "xi_start,xi_end,type,eta"
    tags = [line.split(",")[2] for line in seg[1:]]
    assert set(tags) <= {"emitter", "absorber", "symmetric"}
    assert "emitter" in tags and "absorber" in tags
    manifest = json.loads((tmp_path / "fig1" / "manifest.json").read_text())
    assert manifest["diagnostics"]["period_cv"] < 0.01


def test_profile_reruns_are_bit_identical(tmp_path):
    run_cli("profile", "--scenario", "fig1", "--out", str(tmp_path / "r1"), *FAST_FIG1)
    run_cli("profile", "--scenario", "fig1", "--out", str(tmp_path / "r2"), *FAST_FIG1)
    a = (tmp_path / "r1" / "fig1" / "profile.csv").read_bytes()
    b = (tmp_path / "r2" / "fig1" / "profile.csv").read_bytes()
    assert a == b


def test_fig4_symmetric_columns_bitwise(tmp_path):
    """With l = 0 the R and L columns of a symmetric run are byte-identical.

    The span stops short of the first field node (xi ~ 0.616), where the
    flux form is singular for l = 0.
    """
    code = run_cli("profile", "--scenario", "fig4", "--out", str(tmp_path),
                   "--override", "invariants.l=0",
                   "--override", "span.max=0.5",
                   "--override", "n_points=101",
                   "--override", "tol=1e-8")
    assert code == 0
    lines = (tmp_path / "fig4" / "profile.csv").read_text().splitlines()[1:]
    for line in lines:
        parts = line.split(",")
        assert parts[1] == parts[2]


def test_validation_exit_codes(tmp_path):
    # negative tau2 -> config error naming the key
    code = run_cli("profile", "--scenario", "fig1", "--out", str(tmp_path),
                   "--override", "tau2=-1")
    assert code == 1
    # unknown scenario
    assert run_cli("profile", "--scenario", "nope", "--out", str(tmp_path)) == 1
    # malformed override
    assert run_cli("profile", "--scenario", "fig1", "--out", str(tmp_path),
                   "--override", "tau2") == 1
    # command/mode mismatch
    assert run_cli("eigen", "--scenario", "fig1", "--out", str(tmp_path)) == 1
    # missing config file
    assert run_cli("profile", "--config", str(tmp_path / "none.cfg"),
                   "--scenario", "fig1", "--out", str(tmp_path)) == 1


def test_override_names_offending_key(tmp_path, capsys):
    code = run_cli("profile", "--scenario", "fig1", "--out", str(tmp_path),
                   "--override", "tau2=-1")
    assert code == 1
    err = capsys.readouterr().err
    assert "tau2" in err


def test_solver_error_exit_code(tmp_path, capsys):
    """fig3 in flux coordinates hits a field node: exit 2 with a location."""
    code = run_cli("profile", "--scenario", "fig3", "--out", str(tmp_path),
                   "--override", "formulation=reduced")
    assert code == 2
    assert "xi" in capsys.readouterr().err


def test_config_file_scenario(tmp_path):
    cfg = tmp_path / "scenarios.cfg"
    cfg.write_text(
        "[scenario.quick]\n"
        "mode = profile\n"
        "formulation = reduced\n"
        "params.gamma_plus = 15\n"
        "params.gamma_minus = 0.64\n"
        "params.tau1 = 1000\n"
        "params.tau2 = 10\n"
        "boundary.R0 = 1e-4\n"
        "boundary.L0 = 1\n"
        "invariants.h = -1\n"
        "invariants.l = 0.01\n"
        "span.max = 5\n"
        "n_points = 201\n"
        "tol = 1e-8\n"
    )
    code = run_cli("profile", "--config", str(cfg), "--scenario", "quick",
                   "--out", str(tmp_path))
    assert code == 0
    assert (tmp_path / "quick" / "profile.csv").exists()


def test_config_overrides_preset(tmp_path):
    cfg = tmp_path / "scenarios.cfg"
    cfg.write_text("[scenario.fig1]\nspan.max = 5\nn_points = 201\ntol = 1e-8\n")
    code = run_cli("profile", "--config", str(cfg), "--scenario", "fig1",
                   "--out", str(tmp_path))
    assert code == 0
    manifest = json.loads((tmp_path / "fig1" / "manifest.json").read_text())
    assert manifest["scenario"]["span.max"] == "5"


def test_eigen_cli_not_converged_flagged(tmp_path):
    code = run_cli("eigen", "--scenario", "eigen-delta10", "--out", str(tmp_path),
                   "--override", "eigen.max_iter=2")
    assert code == 2  # flagged, still writes outputs
    lev = (tmp_path / "eigen-delta10" / "levels.csv").read_text().splitlines()
    assert lev[0] == "k,h_sq,nodes,converged"
    assert len(lev) >= 2
    assert (tmp_path / "eigen-delta10" / "scf_level_1.csv").exists()


def test_eigen_cli_converges_loose_tol(tmp_path):
    code = run_cli("eigen", "--scenario", "eigen-delta10", "--out", str(tmp_path),
                   "--override", "eigen.tol=1e-2")
    assert code == 0
    manifest = json.loads((tmp_path / "eigen-delta10" / "manifest.json").read_text())
    assert manifest["diagnostics"]["scf"]["converged"]
    levels = manifest["diagnostics"]["levels"]
    assert [lvl["k"] for lvl in levels] == list(range(1, len(levels) + 1))


def test_bloch_scan_cli(tmp_path):
    code = run_cli("bloch-scan", "--scenario", "bloch-grid", "--out", str(tmp_path),
                   "--override", "scan.steps=5")
    assert code == 0
    lines = (tmp_path / "bloch-grid" / "bloch_scan.csv").read_text().splitlines()
    assert lines[0] == "eR,eL,r1,r2,r3,deta"
    assert len(lines) == 26


def test_sweep_single_cell_matches_direct_run(tmp_path):
    run_cli("profile", "--scenario", "fig1", "--out", str(tmp_path / "direct"), *FAST_FIG1)
    code = run_cli("sweep", "--scenario", "fig1", "--out", str(tmp_path / "swept"),
                   *FAST_FIG1,
                   "--override", "sweep.parameter=tau2",
                   "--override", "sweep.values=10")
    assert code == 0
    direct = (tmp_path / "direct" / "fig1" / "profile.csv").read_bytes()
    cell = (tmp_path / "swept" / "fig1" / "cell_0000" / "profile.csv").read_bytes()
    assert direct == cell


def test_sweep_summary_and_worker_determinism(tmp_path, monkeypatch):
    args = ("sweep", "--scenario", "fig1", *FAST_FIG1,
            "--override", "sweep.parameter=tau2",
            "--override", "sweep.values=5,10")
    monkeypatch.setenv("PSR_THREADS", "1")
    assert run_cli(*args, "--out", str(tmp_path / "w1")) == 0
    monkeypatch.setenv("PSR_THREADS", "2")
    assert run_cli(*args, "--out", str(tmp_path / "w2")) == 0
    s1 = (tmp_path / "w1" / "fig1" / "summary.csv").read_bytes()
    s2 = (tmp_path / "w2" / "fig1" / "summary.csv").read_bytes()
    assert s1 == s2
    lines = s1.decode().splitlines()
    assert lines[0].startswith("cell,tau2,status")
    assert len(lines) == 3
    c1 = (tmp_path / "w1" / "fig1" / "cell_0001" / "profile.csv").read_bytes()
    c2 = (tmp_path / "w2" / "fig1" / "cell_0001" / "profile.csv").read_bytes()
    assert c1 == c2


def test_sweep_partial_failure_continues(tmp_path):
    """A failing cell is recorded; the sweep itself succeeds."""
    code = run_cli("sweep", "--scenario", "fig3", "--out", str(tmp_path),
                   "--override", "formulation=reduced",
                   "--override", "n_points=201",
                   "--override", "tol=1e-8",
                   "--override", "sweep.parameter=span.max",
                   "--override", "sweep.values=0.5,20")
    assert code == 0
    summary = (tmp_path / "fig3" / "summary.csv").read_text().splitlines()
    statuses = [line.split(",")[2] for line in summary[1:]]
    assert statuses == ["ok", "error"]


def test_write_csv_empty_and_deterministic(tmp_path):
    path = write_csv(tmp_path / "empty.csv", ["a", "b"], [np.array([]), np.array([])])
    assert path.read_text() == "a,b\n"
    p2 = write_csv(tmp_path / "vals.csv", ["x"], [np.array([0.1, 1.0 / 3.0])])
    assert p2.read_text() == "x\n0.1\n0.3333333333333333\n"


def test_resolve_scenario_layering():
    sc = resolve_scenario("fig1", {"fig1": {"tol": "1e-6"}}, ["tau2=20"])
    assert sc["tol"] == "1e-6"
    assert sc["params.tau2"] == "20"
    with pytest.raises(ConfigError):
        resolve_scenario("missing", {}, [])
    with pytest.raises(ConfigError):
        resolve_scenario(None, {}, [])
