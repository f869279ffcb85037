import json

import pytest

from jnum import cli, jumping
from jnum.datasets import data_path
from jnum.model import load_resolution, validate


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cusp_file():
    return str(data_path("cusp.json"))


def test_validate_bundled(capsys):
    for name in ("example1.json", "example2-d3.json", "cusp.json", "aad14-ideal.json"):
        code, _, _ = run(capsys, "validate", str(data_path(name)))
        assert code == 0, name


def test_validate_corrupt_names_label(tmp_path, capsys, cusp_file):
    doc = json.loads(open(cusp_file).read())
    doc["matrix"]["E1"]["E3"] = 2  # E3 row still says 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert "E1" in out + err


def test_validate_json_report(capsys, cusp_file):
    code, out, _ = run(capsys, "validate", cusp_file, "--format", "json")
    assert code == 0
    assert json.loads(out)["errors"] == []


def test_bundled_fallback(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, _ = run(capsys, "validate", "data/cusp.json")
    assert code == 0


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 2
    assert err


def test_closure_example1(capsys):
    code, out, _ = run(capsys, "closure", str(data_path("example1.json")), "-d", "E2:1,E4:1")
    assert code == 0
    assert out.strip() == "E1:1 E2:1 E3:2 E4:3 E5:1 E6:1"


def test_closure_cusp_with_trace(capsys, cusp_file):
    code, out, _ = run(capsys, "closure", cusp_file, "-d", "E3:1", "--trace")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "E1:1 E2:1 E3:2"
    assert any(line.startswith("  sweep 0: +") for line in lines[1:])


def test_closure_antieffective_echo(capsys, cusp_file):
    code, out, _ = run(capsys, "closure", cusp_file, "-d", "E1:1,E2:1,E3:2")
    assert code == 0
    assert out.strip() == "E1:1 E2:1 E3:2"


def test_closure_sequential_json(capsys, cusp_file):
    code, out, _ = run(capsys, "closure", cusp_file, "-d", "E3:1", "--mode", "sequential", "--format", "json", "--trace")
    doc = json.loads(out)
    assert code == 0
    assert doc["closure"] == {"D_aff": 0, "E1": 1, "E2": 1, "E3": 2}
    assert all(len(step["added"]) == 1 for step in doc["trace"])


def test_closure_unknown_label(capsys, cusp_file):
    code, _, err = run(capsys, "closure", cusp_file, "-d", "E9:1")
    assert code == 2
    assert "E9" in err


def test_closure_unknown_effectivity_exit_2(capsys, tmp_path):
    from jnum.model import dumps, make_example2

    path = tmp_path / "ex2.json"
    path.write_text(dumps(make_example2(3)))
    code, _, err = run(capsys, "closure", str(path), "-d", "E1:2,Ep:3,E2:2,E3:4")
    assert code == 2
    assert "E1" in err


def test_jumping_example1(capsys):
    code, out, _ = run(capsys, "jumping", str(data_path("example1.json")), "--up-to", "1", "--certify")
    assert code == 0
    rows = [line for line in out.splitlines() if "CertifiedJumping" in line]
    assert len(rows) == 9
    assert "Undetermined" not in out


def test_jumping_cusp(capsys, cusp_file):
    code, out, _ = run(capsys, "jumping", cusp_file, "--up-to", "3", "--certify")
    assert code == 0
    assert "jumping numbers: 5/6, 1, 11/6, 2, 17/6, 3" in out


def test_jumping_example2_d3(capsys):
    code, out, _ = run(capsys, "jumping", str(data_path("example2-d3.json")), "--up-to", "1", "--certify")
    assert code == 0
    assert "jumping numbers: 1/2, 9/14, 11/14, 13/14, 1" in out


def test_jumping_default_bound_and_periodicity(capsys, cusp_file):
    code, out, _ = run(capsys, "jumping", cusp_file, "--certify")
    assert code == 0
    assert "periodicity from (0, 1]: 5/6, 1" in out


def test_jumping_undetermined_exit_3(capsys):
    code, out, _ = run(capsys, "jumping", str(data_path("aad14-ideal.json")), "--certify")
    assert code == 3
    assert "UNDETERMINED: 1" in out
    assert "Skoda periodicity" in out


def test_jumping_without_certify(capsys):
    code, out, _ = run(capsys, "jumping", str(data_path("aad14-ideal.json")))
    assert code == 0
    assert "UNDETERMINED" not in out


def test_jumping_json_stable(capsys):
    argv = ("jumping", str(data_path("example1.json")), "--up-to", "1", "--certify", "--format", "json")
    code1, out1, _ = run(capsys, *argv)
    code2, out2, _ = run(capsys, *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["records"][0]["lambda"] == "5/9"
    assert doc["jumping_numbers"][-1] == "1"
    assert set(doc["records"][0]) == {"lambda", "closure", "minimal_jumping_divisor", "status"}


def test_rationals_never_decimal(capsys, cusp_file):
    _, out, _ = run(capsys, "jumping", cusp_file, "--up-to", "3", "--certify", "--format", "json")
    doc = json.loads(out)
    for rec in doc["records"]:
        assert "." not in rec["lambda"]


def test_bad_bound(capsys, cusp_file):
    with pytest.raises(SystemExit) as exc:
        cli.main(["jumping", cusp_file, "--up-to", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["jumping", cusp_file, "--up-to", "abc"])
    capsys.readouterr()


def test_bad_caps(capsys, cusp_file):
    with pytest.raises(SystemExit) as exc:
        cli.main(["jumping", cusp_file, "--r6-cap", "0"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_scan_agree(capsys, cusp_file):
    code, out, _ = run(capsys, "scan", cusp_file, "--up-to", "2")
    assert code == 0
    assert out.splitlines()[-1] == "AGREE"
    code, out, _ = run(capsys, "scan", str(data_path("example1.json")), "--up-to", "1")
    assert code == 0


def test_scan_below_lct(capsys, cusp_file):
    code, out, _ = run(capsys, "scan", cusp_file, "--up-to", "1/2", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["scan"] == [] and doc["verdict"] == "AGREE"


def test_scan_disagree_exit_4(capsys, cusp_file, monkeypatch):
    monkeypatch.setattr(jumping, "brute_scan", lambda r, bound, **kw: [])
    code, out, _ = run(capsys, "scan", cusp_file, "--up-to", "2")
    assert code == 4
    assert "DISAGREE" in out


@pytest.mark.parametrize("d,count", [(3, 21), (4, 36)])
def test_gen_example2(capsys, tmp_path, d, count):
    path = tmp_path / f"ex2-{d}.json"
    code, out, _ = run(capsys, "gen-example2", "--d", str(d), "--out", str(path))
    assert code == 0
    assert f"Ep count {count}" in out
    r = load_resolution(path)
    assert r.prime("Ep").count == count
    assert validate(r).ok


def test_gen_example2_stdout_matches_bundled(capsys):
    code, out, _ = run(capsys, "gen-example2", "--d", "3")
    assert code == 0
    assert out == data_path("example2-d3.json").read_text()


def test_gen_example2_rejects_small_d(capsys):
    code, _, err = run(capsys, "gen-example2", "--d", "2")
    assert code == 2
    assert err
