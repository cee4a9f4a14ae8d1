import json
import math
import os
import shutil

import numpy as np
import pytest

from coxdeform import bundled, cli, orbifold as ob, serialize


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bundled_examples_roundtrip():
    for name in bundled.BUILTIN_NAMES:
        Q = bundled.load_builtin(name)
        doc = serialize.dump_orbifold(Q)
        Q2 = serialize.load_orbifold(doc)
        assert Q2.orders == Q.orders
        assert set(Q2.base.ridges) == set(Q.base.ridges)


def test_dumps_canonicalizes_floats():
    text = serialize.dumps({"x": 0.1 + 0.2})
    assert json.loads(text)["x"] == 0.3


def test_schema_error_names_ridge(tmp_path):
    doc = bundled.builtin_document("tetrahedron353")
    doc["orders"][0][2] = 1
    with pytest.raises(serialize.SchemaError, match=r"\(1,\s?2\)"):
        serialize.load_orbifold(doc)


def test_schema_error_unknown_facet():
    doc = bundled.builtin_document("tetrahedron353")
    doc["ridges"][0] = [1, 9]
    with pytest.raises(serialize.SchemaError, match="unknown facet"):
        serialize.load_polytope(doc)


def test_builtin_dir_override(tmp_path, monkeypatch):
    src = os.path.join(os.path.dirname(bundled.__file__), "data")
    for name in os.listdir(src):
        shutil.copy(os.path.join(src, name), tmp_path)
    doc = json.load(open(tmp_path / "tetrahedron353.json"))
    doc["orders"] = [[i, j, (4 if m == 5 else m)] for i, j, m in doc["orders"]]
    with open(tmp_path / "tetrahedron353.json", "w") as fh:
        json.dump(doc, fh)
    monkeypatch.setenv(bundled.BUILTIN_DIR_ENV, str(tmp_path))
    Q = bundled.load_builtin("tetrahedron353")
    assert 4 in Q.orders.values() and 5 not in Q.orders.values()


def test_cli_dim_tetrahedron(capsys):
    code, out, _ = run_cli(capsys, "dim", "tetrahedron353")
    assert code == 0
    report = json.loads(out)
    assert report["dimension"] == 0
    assert report["rank_phi"]["rank"] == 13
    assert report["rank_psi"]["kernel_dim"] == 6
    assert report["config"]["seed"] == 0


def test_cli_check_doubled_cube(capsys):
    code, out, _ = run_cli(capsys, "check", "doubled_cube")
    assert code == 0
    report = json.loads(out)
    assert report["weakly_orderable"] is False
    assert report["certificate"] == list(range(1, 10))


def test_cli_check_reports_ordering(capsys):
    code, out, _ = run_cli(capsys, "check", "cube_flex")
    report = json.loads(out)
    assert code == 0 and report["weakly_orderable"]
    assert sorted(report["ordering"]) == list(range(1, 7))
    assert report["andreev"]["vertex_violations"] == []


def test_cli_realize_writes_normals(capsys, tmp_path):
    out_path = tmp_path / "real.json"
    code, _, _ = run_cli(capsys, "realize", "cube_rigid", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert len(doc["realization"]["normals"]) == 6
    assert doc["realization"]["residual_norm"] < 1e-9
    assert all(doc["realization"]["vertex_flags"].values())


def test_cli_curve_contains_singular_point(capsys, tmp_path):
    base = tmp_path / "ess"
    code, _, _ = run_cli(capsys, "curve", "esselmann", "--res", "61",
                         "--out", str(base))
    assert code == 0
    contour = json.loads((tmp_path / "ess.json").read_text())
    dmin = min(math.hypot(p[0] - 1, p[1] - 1)
               for seg in contour["segments"] for p in seg)
    assert dmin < 0.05
    rows = (tmp_path / "ess.csv").read_text().splitlines()
    assert rows[0] == "x,y,det"
    assert len(rows) == 1 + 61 * 61


def test_cli_stats_deterministic(capsys):
    code1, out1, _ = run_cli(capsys, "stats", "prism3", "--d", "7",
                             "--mode", "montecarlo", "--samples", "150",
                             "--seed", "5")
    code2, out2, _ = run_cli(capsys, "stats", "prism3", "--d", "7",
                             "--mode", "montecarlo", "--samples", "150",
                             "--seed", "5")
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical reports


def test_cli_stats_csv(capsys):
    code, out, _ = run_cli(capsys, "stats", "cube", "--d", "4",
                           "--mode", "montecarlo", "--samples", "50",
                           "--seed", "2", "--format", "csv")
    assert code == 0
    header, row = out.splitlines()
    assert header == "d,fraction,ci_low,ci_high"
    assert row.startswith("4,")


def test_cli_validation_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    doc = bundled.builtin_document("tetrahedron353")
    doc["orders"][0][2] = 1
    bad.write_text(json.dumps(doc))
    code, _, err = run_cli(capsys, "check", str(bad))
    assert code == 1 and "validation failure" in err

    code, _, err = run_cli(capsys, "check", str(tmp_path / "missing.json"))
    assert code == 1


def test_cli_numerical_exit_code(capsys):
    code, _, err = run_cli(capsys, "realize", "doubled_cube",
                           "--seed-name", "random", "--seed", "123")
    assert code == 2 and "numerical failure" in err


def test_cli_cartan_command(capsys, tmp_path):
    from coxdeform import vinberg

    path = tmp_path / "mat.json"
    path.write_text(json.dumps({"matrix": vinberg.esselmann_base_matrix().tolist()}))
    code, out, _ = run_cli(capsys, "cartan", str(path))
    assert code == 0
    report = json.loads(out)
    assert report["rank"] == 5
    assert report["conditions_passed"] is True
    assert report["classification"] == "negative-irreducible"
    coords = report["normal_form"]["cycle_coordinates"]
    assert coords["1,4"] == pytest.approx(1.0)
    assert coords["4,6"] == pytest.approx(1.0)


def test_cli_esselmann_dim(capsys):
    code, out, _ = run_cli(capsys, "dim", "esselmann")
    assert code == 0
    report = json.loads(out)
    assert report["formula_dimension"] == 1
    assert report["rank_phi"]["full_rank"] is False
    assert report["rank_phi"]["kernel_minus_gauge"] == 2
    assert report["rank_sum"]["identity_holds"] is True
