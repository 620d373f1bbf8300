import csv
import io
import json

import pytest

from lusztigsp.cli import canonical, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def test_orbits(capsys):
    doc = run_json(capsys, "orbits", "--n", "1", "--p", "3")
    assert doc["num_orbits"] == len(doc["orbits"]) == 3
    assert sorted(o["size"] for o in doc["orbits"]) == [1, 4, 4]
    doc = run_json(capsys, "orbits", "--n", "2", "--p", "3")
    assert sum(o["size"] for o in doc["orbits"]) == 3**8


@pytest.mark.parametrize(
    "argv,msg",
    [
        (["orbits", "--n", "1", "--p", "2"], "p must be an odd prime"),
        (["orbits", "--n", "1", "--p", "9"], "p must be an odd prime"),
        (["orbits", "--n", "3", "--p", "3"], "cap"),
        (["orbits", "--n", "1"], "--p is required"),
        (["ft-check", "--n", "2", "--p", "3"], "not a positive triangular"),
        (["ft-check", "--p", "3"], "exactly one"),
        (["ft-check", "--product", "1,2", "--p", "3"], "not a positive triangular"),
        (["ft-check", "--product", "x", "--p", "3"], "two integers"),
        (["census", "--n-max", "0"], "n_max must be >= 1"),
        (["hilbert", "eps", "zz", "--p", "5"], "cannot parse"),
        (["padic-catalog", "--n", "0", "--p", "5"], "n must be >= 1"),
    ],
)
def test_validation_errors(capsys, argv, msg):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert msg in err


def test_classify(capsys, tmp_path):
    doc = run_json(capsys, "classify", write(tmp_path, "m.json", [[0, 1], [0, 0]]), "--p", "3")
    assert doc == {"partition": [2], "forms": [{"part": 2, "dim": 1, "disc_sign": 1}]}
    doc = run_json(capsys, "classify", write(tmp_path, "z.json", [[0, 0], [0, 0]]), "--p", "3")
    assert doc == {"partition": [1, 1], "forms": []}
    doc = run_json(capsys, "classify", write(tmp_path, "n.json", [[0, -1], [0, 0]]), "--p", "3")
    assert doc["forms"][0]["disc_sign"] == -1


@pytest.mark.parametrize(
    "content,msg",
    [
        ([[1, 0], [0, 2]], "not nilpotent"),
        ([[0, 1], [1, 1]], "not in sp_2n"),
        ("[[0, 1], [0", "not valid JSON"),
        ([[0, 1, 0], [0, 0, 0], [0, 0, 0]], "even"),
        ([[0, 1], [0]], "square JSON array"),
        ([[0, 1.5], [0, 0]], "square JSON array"),
    ],
)
def test_classify_errors(capsys, tmp_path, content, msg):
    code, _, err = run(capsys, "classify", write(tmp_path, "bad.json", content), "--p", "3")
    assert code == 2 and msg in err


def test_classify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", str(tmp_path / "nope.json"), "--p", "3")
    assert code == 2 and "cannot read" in err


def test_ft_check(capsys):
    doc = run_json(capsys, "ft-check", "--n", "1", "--p", "3")
    assert doc["is_eigenfunction"] and doc["matches_prediction"]
    assert abs(doc["eigenvalue"]["re"]) < 1e-9 and abs(doc["eigenvalue"]["im"] + 1) < 1e-9
    doc = run_json(capsys, "ft-check", "--product", "1,1", "--p", "5")
    assert doc["is_eigenfunction"] and abs(doc["eigenvalue"]["re"] - 1) < 1e-9
    assert doc["mode"] == "product" and doc["points_checked"] == 5**6


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--n-max", "10", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10
    zero = [int(r["n"]) for r in rows if r["enum_count"] == "0"]
    assert zero == [5, 8]
    assert rows[6]["enum_count"] == "2"  # 7 = 6 + 1
    assert [r["mismatch"] for r in rows[:3]] == ["True"] * 3


def test_census_json_single_row(capsys):
    doc = run_json(capsys, "census", "--n-max", "1")
    assert len(doc["rows"]) == 1 and doc["rows"][0]["enum_count"] == 2
    assert doc["mismatch_count"] == 1


def test_padic_catalog(capsys):
    doc = run_json(capsys, "padic-catalog", "--n", "2", "--p", "3")
    assert doc["eigenspace_dim"] == 1 and doc["stable_dim"] == 1
    assert doc["distributions"][0]["eigenvalue"] == "-1"
    doc = run_json(capsys, "padic-catalog", "--n", "5", "--p", "5")
    assert doc["distributions"] == []


def test_hilbert_and_normalize(capsys):
    assert run_json(capsys, "hilbert", "eps", "pi", "--p", "5")["symbol"] == -1
    assert run_json(capsys, "hilbert", "pi^-1", "pi^-1", "--p", "7")["symbol"] == -1
    doc = run_json(capsys, "normalize-form", "1", "-1", "eps", "--p", "5")
    assert doc["hyperbolic_planes"] == 1 and doc["anisotropic"] == ["eps"]
    assert doc["class"] == {"dim": 3, "disc": "eps", "hasse": 1}


def test_lusztig_coefficients(capsys):
    doc = run_json(capsys, "lusztig", "--n", "3", "--p", "5")
    assert [c["coefficient"] for c in doc["coefficients"]] == [1, 1, -1, -1]
    assert doc["partition"] == [4, 2]


def test_text_and_output_file(capsys, tmp_path):
    out_path = tmp_path / "atlas.txt"
    code, out, _ = run(capsys, "orbits", "--n", "1", "--p", "5", "--format", "text", "--output", str(out_path))
    assert code == 0 and out == ""
    text = out_path.read_text()
    assert text.splitlines()[0].split() == ["partition", "forms", "size", "representative"]
    assert len(text.splitlines()) == 4


def test_tolerance_must_be_positive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["census", "--n-max", "1", "--tolerance", "0"])
    assert exc.value.code == 2


def test_canonical_numbers():
    assert canonical(-0.0) == 0.0 and str(canonical(-0.0)) == "0.0"
    assert canonical(1 / 3) == 0.333333333333
    assert canonical(complex(1e-20, -1)) == {"re": 1e-20, "im": -1.0}
    assert canonical({"b": (1, 2)}) == {"b": [1, 2]}
