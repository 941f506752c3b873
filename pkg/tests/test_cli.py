import csv
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hp3flat.cli import run
from hp3flat.params import Certificate, ParamsFile, SchemaError, load_schema

ROOT = Path(__file__).resolve().parents[1]

ISO = {"family": "I", "mode": "isotropy2", "theta": {"cos": "1/4"}, "r": "1/5", "w": [1, 1],
       "checks": ["horizontal", "totally_real", "flat_isometric", "harmonic", "isotropy", "det", "torus"]}
ISO_FLOAT = {"family": "II", "mode": "isotropy2", "theta": {"radians": 1.2}, "r": 0.05, "w": [1, 0]}
GEN_NEG = {"family": "II", "mode": "general", "theta1": {"cos": "1/4"}, "theta2": {"cos": "-1/3"},
           "free_weights": [0.1, 0.05], "w": [0.5, 0]}


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_verify_gamma3_certificate(tmp_path, capsys):
    path = write(tmp_path, "iso.json", ISO)
    assert run(["verify", path]) == 0
    cert = Certificate.from_json(capsys.readouterr().out)
    assert cert.report["isotropy_order"] == 2
    assert cert.report["passed"] is True
    assert cert.torus["descends"] is True
    assert cert.input == ISO
    assert Certificate.from_json(cert.to_json()) == cert


def test_certificates_are_reproducible(tmp_path):
    path = write(tmp_path, "iso.json", ISO)
    outs = []
    for i in range(2):
        out = tmp_path / f"cert{i}.json"
        assert run(["verify", path, "--seed", "5", "--samples", "20", "-o", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_check_failure_exit_code(tmp_path):
    path = write(tmp_path, "iso.json", ISO)
    # an impossible tolerance forces check failures
    assert run(["verify", path, "--tol", "1e-30", "--samples", "10"]) == 2


def test_torus_float_angles_with_w_is_usage_error(tmp_path, capsys):
    path = write(tmp_path, "f.json", ISO_FLOAT)
    assert run(["torus", path]) == 1
    assert "exactness" in capsys.readouterr().err


def test_torus_and_lattice(tmp_path, capsys):
    assert run(["torus", write(tmp_path, "iso.json", ISO)]) == 0
    assert json.loads(capsys.readouterr().out)["descends"] is True
    assert run(["torus", write(tmp_path, "neg.json", GEN_NEG)]) == 2
    assert json.loads(capsys.readouterr().out)["reason"] == "irrational_obstruction"
    assert run(["lattice", write(tmp_path, "iso.json", ISO)]) == 0
    assert json.loads(capsys.readouterr().out)["index"] >= 1
    assert run(["lattice", write(tmp_path, "f.json", ISO_FLOAT)]) == 1


def test_schema_errors_report_paths(tmp_path, capsys):
    bad = dict(ISO, family="IV", w=[1])
    assert run(["verify", write(tmp_path, "bad.json", bad)]) == 1
    err = capsys.readouterr().err
    assert "/family" in err and "/w" in err
    with pytest.raises(SchemaError):
        ParamsFile.from_dict({"family": "I", "mode": "general", "w": [0, 0], "theta": {"radians": 1}})
    with pytest.raises(SchemaError):
        ParamsFile.from_dict(dict(ISO, r="0.2"))


def test_region_error_is_usage_error(tmp_path, capsys):
    bad = dict(ISO_FLOAT, r=0.9)
    assert run(["verify", write(tmp_path, "out.json", bad)]) == 1
    assert "Gamma_3" in capsys.readouterr().err


def test_construct_isotropy_det(tmp_path, capsys):
    path = write(tmp_path, "iso.json", ISO)
    assert run(["construct", path, "--z", "0.5", "-1"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["lift"]) == 8 and len(out["quaternionic"]) == 4
    assert abs(sum(a * a + b * b for a, b in out["lift"]) - 1) < 1e-12
    assert run(["isotropy", path]) == 0
    assert json.loads(capsys.readouterr().out)["isotropy_order"] == 2
    assert run(["isotropy", "--reference", "clifford"]) == 0
    assert json.loads(capsys.readouterr().out)["isotropy_order"] == 3
    assert run(["isotropy", path, "--expect", "3"]) == 2
    capsys.readouterr()
    assert run(["det-fr", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(complex(*out["det_afr_series"]) - complex(*out["det_afr_closed"])) < 1e-12


def test_sample_and_plot(tmp_path, capsys):
    assert run(["sample", "--family", "III", "--n", "5", "--seed", "1"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert len(rows) == 5 and all(r["mode"] == "isotropy2" for r in rows)
    stem = tmp_path / "plot"
    assert run(["plot-region", "--resolution", "256", "--output", str(stem)]) == 0
    assert (tmp_path / "plot.csv").exists() and (tmp_path / "plot.svg").exists()
    with open(tmp_path / "plot.csv") as fh:
        assert sum(1 for _ in csv.DictReader(fh)) == 4 * 256
    assert run(["plot-region", "--resolution", "4", "--output", str(stem)]) == 1


def test_usage_errors(capsys):
    assert run([]) == 1
    assert run(["nope"]) == 1
    assert run(["isotropy"]) == 1
    assert run(["--version"]) == 0


def test_schema_shipped_in_docs_matches_package():
    doc = json.loads((ROOT / "docs" / "params.schema.json").read_text())
    assert doc == load_schema()


def test_console_entry_point(tmp_path):
    path = write(tmp_path, "iso.json", ISO)
    proc = subprocess.run([sys.executable, "-m", "hp3flat", "isotropy", path],
                          capture_output=True, text=True, env=dict(os.environ))
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["isotropy_order"] == 2
