import json
import subprocess
import sys

from smhd.cli import main

RATIONAL_PAIR = {
    "plus": {"h": 2.0, "v": [1.0, 0.0], "B": [0.5, 0.0]},
    "minus": {"h": 1.0, "v": [2.0, 0.0], "B": [1.0, 0.0]},
    "front": {"slope": 0.0, "speed": 0.0},
    "g": 1.0,
}

CVS_PAIR = {
    "plus": {"h": 1.0, "v": [0.0, 0.25], "B": [0.0, 1.0]},
    "minus": {"h": 1.0, "v": [0.0, -0.25], "B": [0.0, -1.0]},
    "front": {"slope": 0.0, "speed": 0.0},
    "g": 1.0,
}


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def test_classify_continuous(tmp_path, capsys):
    doc = {"plus": RATIONAL_PAIR["minus"], "minus": RATIONAL_PAIR["minus"],
           "front": {"slope": 0.0, "speed": 2.0}, "g": 1.0}
    code = main(["classify", "--input", _write(tmp_path, "pair.json", doc)])
    out = capsys.readouterr().out
    assert code == 0
    assert "continuous" in out


def test_classify_rational_shock(tmp_path, capsys):
    code = main(["classify", "--input", _write(tmp_path, "pair.json", RATIONAL_PAIR),
                 "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "shock" in out
    doc = json.loads((tmp_path / "classify.json").read_text())
    assert doc["kind"] == "shock"
    assert doc["residual_max"] < 1e-12
    assert doc["lax"]["satisfied"] is True
    assert doc["lax"]["k"] == 1


def test_classify_cvs_reports_symmetrizer(tmp_path, capsys):
    code = main(["classify", "--input", _write(tmp_path, "pair.json", CVS_PAIR),
                 "--out", str(tmp_path)])
    assert code == 0
    doc = json.loads((tmp_path / "classify.json").read_text())
    assert doc["kind"] == "current-vortex-sheet"
    assert abs(doc["symmetrizer"]["lambda_plus"] - 0.25) < 1e-14
    assert doc["cvs_verdict"]["tag"] == "sufficiently-stable"


def test_classify_inadmissible_exit_code(tmp_path, capsys):
    doc = {"plus": {"h": 2.0, "v": [1.0, 1.0], "B": [0.3, 0.0]},
           "minus": RATIONAL_PAIR["minus"], "front": {"slope": 0.0, "speed": 0.0}, "g": 1.0}
    code = main(["classify", "--input", _write(tmp_path, "pair.json", doc)])
    capsys.readouterr()
    assert code == 2


def test_classify_malformed_input(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json", encoding="utf-8")
    assert main(["classify", "--input", str(p)]) == 1
    assert main(["classify", "--input", str(tmp_path / "missing.json")]) == 1
    bad = _write(tmp_path, "neg.json", {"plus": {"h": -1, "v": [0, 0], "B": [0, 0]},
                                        "minus": RATIONAL_PAIR["minus"]})
    assert main(["classify", "--input", bad]) == 1
    capsys.readouterr()


def test_shock_bundle_and_roundtrip(tmp_path, capsys):
    code = main(["shock", "1", "2", "0.5", "0", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    doc = json.loads((tmp_path / "shock.json").read_text())
    assert abs(doc["linearized"]["froude"] - 0.5**0.5) < 1e-14
    assert abs(doc["linearized"]["d0"] - 1.625) < 1e-14
    assert abs(doc["linearized"]["a0"] + 1.25) < 1e-14
    pair_path = _write(tmp_path, "pair.json", doc["pair"])
    assert main(["classify", "--input", pair_path]) == 0
    out2 = capsys.readouterr().out
    assert "shock" in out2


def test_shock_expansion_exit_2(tmp_path, capsys):
    code = main(["shock", "1", "0.5", "0.5", "0", "--out", str(tmp_path)])
    err = capsys.readouterr().err
    assert code == 2
    assert "Lax violated" in err
    doc = json.loads((tmp_path / "shock.json").read_text())
    assert doc["linearized"] is None
    assert doc["diagnostics"]["satisfied"] is False


def test_shock_degenerate_exit_1(capsys):
    assert main(["shock", "1", "1", "0.5", "0"]) == 1
    capsys.readouterr()


def test_stability_nsc(capsys):
    code = main(["stability", "nsc", "--v2-jump", "3", "--b2-plus", "1", "--h", "1"])
    out = capsys.readouterr().out
    assert code == 0
    assert "nsc-unstable" in out


def test_stability_cvs(tmp_path, capsys):
    code = main(["stability", "cvs", "--input", _write(tmp_path, "p.json", CVS_PAIR)])
    out = capsys.readouterr().out
    assert code == 0
    assert "sufficiently-stable" in out


def test_sweep_minimal_grid(tmp_path, capsys):
    spec = {"verdict": "lax",
            "x_axis": {"name": "ratio", "min": 0.5, "max": 2.0, "count": 2},
            "y_axis": {"name": "b1_plus", "min": 0.2, "max": 0.8, "count": 2},
            "fixed": {"h_minus": 1.0, "b2": 0.0, "g": 1.0}}
    code = main(["sweep", "--spec", _write(tmp_path, "spec.json", spec),
                 "--out", str(tmp_path)])
    capsys.readouterr()
    assert code == 0
    lines = (tmp_path / "sweep.csv").read_text().strip().splitlines()
    assert len(lines) == 5  # header + 4 grid points
    svg = (tmp_path / "sweep.svg").read_text()
    assert svg.startswith("<?xml") and "</svg>" in svg


def test_sweep_lax_verdict_depends_only_on_ratio(tmp_path, capsys):
    spec = {"verdict": "lax",
            "x_axis": {"name": "ratio", "min": 0.3, "max": 2.5, "count": 12},
            "y_axis": {"name": "b1_plus", "min": 0.1, "max": 1.5, "count": 7},
            "fixed": {"h_minus": 1.0, "b2": 0.0, "g": 1.0}}
    code = main(["sweep", "--spec", _write(tmp_path, "spec.json", spec),
                 "--out", str(tmp_path)])
    capsys.readouterr()
    assert code == 0
    rows = [line.split(",") for line in
            (tmp_path / "sweep.csv").read_text().strip().splitlines()[1:]]
    for ratio_s, _b1s, code_s, _m in rows:
        assert (int(code_s) == 2) == (float(ratio_s) > 1.0)


def test_sweep_deterministic_outputs(tmp_path, capsys):
    spec = {"verdict": "cvs-nsc",
            "x_axis": {"name": "v2_jump", "min": 0.0, "max": 4.0, "count": 9},
            "y_axis": {"name": "b2_plus", "min": -1.5, "max": 1.5, "count": 9},
            "fixed": {"h": 1.0, "g": 1.0}}
    spec_path = _write(tmp_path, "spec.json", spec)
    for d in ("a", "b"):
        (tmp_path / d).mkdir()
        assert main(["sweep", "--spec", spec_path, "--out", str(tmp_path / d)]) == 0
    capsys.readouterr()
    assert (tmp_path / "a" / "sweep.csv").read_bytes() == (tmp_path / "b" / "sweep.csv").read_bytes()
    assert (tmp_path / "a" / "sweep.svg").read_bytes() == (tmp_path / "b" / "sweep.svg").read_bytes()


def test_sweep_invalid_axes(tmp_path, capsys):
    spec = {"verdict": "lax",
            "x_axis": {"name": "ratio", "min": 0.5, "max": 2.0, "count": 1},
            "y_axis": {"name": "b1_plus", "min": 0.2, "max": 0.8, "count": 2},
            "fixed": {}}
    assert main(["sweep", "--spec", _write(tmp_path, "s.json", spec),
                 "--out", str(tmp_path)]) == 1
    capsys.readouterr()


def test_simulate_small_riemann(tmp_path, capsys):
    cfg = {"kind": "fv", "dimensions": 1, "cells": [120], "extents": [[-4.0, 4.0]],
           "end_time": 1.0, "cfl": 0.45, "g": 1.0, "output_interval": 0.25,
           "initial": {"type": "riemann",
                       "minus": {"h": 1.0, "v": [2.0, 0.0], "B": [1.0, 0.0]},
                       "plus": {"h": 2.0, "v": [1.0, 0.0], "B": [0.5, 0.0]},
                       "interface": 0.0}}
    code = main(["simulate", "--config", _write(tmp_path, "cfg.json", cfg),
                 "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "front drift" in out
    ts = (tmp_path / "timeseries.csv").read_text().splitlines()
    assert ts[0] == "t,mass,momX,momY,fluxBx,fluxBy,divNorm,frontAmp,energy"
    assert (tmp_path / "snapshot.csv").exists()


def test_simulate_deterministic_csv(tmp_path, capsys):
    cfg = {"kind": "fv", "dimensions": 1, "cells": [64], "extents": [[-2.0, 2.0]],
           "end_time": 0.3, "output_interval": 0.1,
           "initial": {"type": "riemann",
                       "minus": {"h": 1.0, "v": [2.0, 0.0], "B": [1.0, 0.0]},
                       "plus": {"h": 2.0, "v": [1.0, 0.0], "B": [0.5, 0.0]}}}
    path = _write(tmp_path, "cfg.json", cfg)
    for d in ("a", "b"):
        (tmp_path / d).mkdir()
        assert main(["simulate", "--config", path, "--out", str(tmp_path / d)]) == 0
    capsys.readouterr()
    assert (tmp_path / "a" / "timeseries.csv").read_bytes() \
        == (tmp_path / "b" / "timeseries.csv").read_bytes()
    assert (tmp_path / "a" / "snapshot.csv").read_bytes() \
        == (tmp_path / "b" / "snapshot.csv").read_bytes()


def test_simulate_empty_path_exit_1(capsys):
    assert main(["simulate", "--config", ""]) == 1
    err = capsys.readouterr().err
    assert "config" in err


def test_simulate_bad_config_exit_1(tmp_path, capsys):
    cfg = {"kind": "fv", "dimensions": 1, "cells": [4], "extents": [[-1, 1]],
           "end_time": 1.0, "initial": {"type": "uniform",
                                        "state": {"h": 1, "v": [0, 0], "B": [0, 0]}}}
    assert main(["simulate", "--config", _write(tmp_path, "c.json", cfg),
                 "--out", str(tmp_path)]) == 1
    capsys.readouterr()


def test_simulate_cfl_violation_exit_4(tmp_path, capsys):
    cfg = {"kind": "fv", "dimensions": 1, "cells": [32], "extents": [[-1, 1]],
           "end_time": 0.5, "dt_fixed": 1.0,
           "initial": {"type": "riemann",
                       "minus": {"h": 1.0, "v": [2.0, 0.0], "B": [1.0, 0.0]},
                       "plus": {"h": 2.0, "v": [1.0, 0.0], "B": [0.5, 0.0]}}}
    assert main(["simulate", "--config", _write(tmp_path, "c.json", cfg),
                 "--out", str(tmp_path)]) == 4
    capsys.readouterr()


def test_simulate_linear_kind(tmp_path, capsys):
    cfg = {"kind": "linear",
           "shock": {"h_minus": 1.0, "ratio": 2.0, "b1_plus": 0.5, "b2": 0.0, "g": 1.0},
           "cells": [64, 8], "extents": [[0.0, 8.0], [0.0, 4.0]],
           "end_time": 1.0, "output_interval": 0.25,
           "pulse": {"center": [3.0, 2.0], "width": 0.5, "p_amplitude": 1.0,
                     "potential_amplitude": 0.4}}
    code = main(["simulate", "--config", _write(tmp_path, "c.json", cfg),
                 "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert "norm ratio" in out
    assert (tmp_path / "timeseries.csv").read_text().startswith("t,l2U,h1U")


def test_console_script_help():
    proc = subprocess.run([sys.executable, "-m", "smhd.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "smhd" in proc.stdout
