import io
import json

import pytest

from nsemigroup import finops
from nsemigroup.cli import main


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--json", *argv)
    return code, json.loads(out)


BOX = {"k": 2, "n": 2, "table": [1, 0, 0, 1]}
NAND = {"k": 2, "n": 2, "table": [1, 1, 1, 0]}


def test_check(tmp_path, capsys):
    assert run(capsys, "check", write(tmp_path, "box.json", BOX))[:2] == (0, "associative\n")
    code, obj = run_json(capsys, "check", write(tmp_path, "nand.json", NAND))
    assert code == 1 and obj == {"k": 2, "n": 2, "associative": False}


def test_json_flag_position_is_free(tmp_path, capsys):
    path = write(tmp_path, "box.json", BOX)
    a = run(capsys, "--json", "check", path)
    b = run(capsys, "check", path, "--json")
    assert a == b


def test_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(NAND)))
    assert run(capsys, "check", "-")[0] == 1


def test_derive_then_classify(tmp_path, capsys):
    code, out, _ = run(capsys, "derive", write(tmp_path, "box.json", BOX), "--ell", "3")
    assert code == 0
    derived = json.loads(out)
    assert derived["n"] == 4
    path = write(tmp_path, "d.json", derived)
    assert run(capsys, "check", path)[0] == 0
    code, obj = run_json(capsys, "classify", path, "--probes")
    assert code == 0
    assert obj["form"] == obj["probe_form"] == "sumbar"
    assert obj["case"] == "2.1"
    assert obj["read"] == ["0^n", "10^(n-1)"]
    assert len(obj["probes"]) == 7


def test_classify_negative_and_human(tmp_path, capsys):
    code, out, _ = run(capsys, "classify", write(tmp_path, "nand.json", NAND))
    assert code == 1 and out.startswith("not_associative")
    code, out, _ = run(capsys, "classify", write(tmp_path, "box.json", BOX), "--probes")
    assert code == 0 and "case 2.1" in out


def test_classify_poly(tmp_path, capsys):
    product = {"ring": "Z", "n": 2, "coeffs": [
        {"vars": [1, 2], "coef": "2"}, {"vars": [1], "coef": "1"}, {"vars": [2], "coef": "1"}]}
    code, obj = run_json(capsys, "classify-poly", write(tmp_path, "p.json", product))
    assert code == 0 and obj == {"form": "product", "a": "2", "b": "1/2", "associative": True}
    omega = {"ring": {"prime": 3}, "n": 3, "coeffs": [
        {"vars": [1], "coef": "1"}, {"vars": [2], "coef": "2"}, {"vars": [3], "coef": "1"}]}
    code, obj = run_json(capsys, "classify-poly", write(tmp_path, "o.json", omega))
    assert code == 0 and obj["form"] == "omega_sum" and obj["omega"] == "2"
    diff = {"ring": "Z", "n": 2, "coeffs": [{"vars": [1], "coef": "1"}, {"vars": [2], "coef": "-1"}]}
    code, out, _ = run(capsys, "classify-poly", write(tmp_path, "d.json", diff))
    assert code == 1 and out.startswith("no_form")


def test_enumerate(capsys):
    code, obj = run_json(capsys, "enumerate", "--k", "2", "--n", "3")
    assert code == 0 and obj["associative"] == 8 and len(obj["tables"]) == 8
    code, obj = run_json(capsys, "enumerate", "--prime", "3", "--n", "2", "--threads", "2")
    assert code == 0 and obj["associative"] == 14 and obj["verdict"] == "pass"
    assert run(capsys, "enumerate", "--k", "2", "--prime", "3", "--n", "2")[0] == 2


@pytest.mark.parametrize("argv", [
    ["verify", "two-element", "--n", "3"],
    ["verify", "marmat", "--prime", "3", "--n", "3"],
    ["verify", "semigroup-count", "--k", "3"],
    ["verify", "primitive", "--max-n", "9"],
])
def test_verify_suites_pass_in_both_modes(capsys, argv):
    code, obj = run_json(capsys, *argv)
    assert code == 0 and obj["verdict"] == "pass"
    code, out, _ = run(capsys, *argv)
    assert code == 0 and ": pass" in out


def test_verify_primitive_arities(capsys):
    code, obj = run_json(capsys, "verify", "primitive", "--max-n", "17")
    assert code == 0
    assert obj["details"]["primitive_sumbar_arities"] == [2, 3, 5, 9, 17]


def test_fixtures(capsys):
    code, obj = run_json(capsys, "fixtures", "phi", "[0,1,0]")
    assert code == 0 and obj["associative"] and obj["outside_multilinear"]
    code, obj = run_json(capsys, "fixtures", "band", "2", "2")
    assert code == 0 and obj["k"] == 4 and obj["associative"]
    assert run(capsys, "fixtures", "phi", "[1,0,1]")[0] == 2
    assert run(capsys, "fixtures", "band", "2")[0] == 2


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check", str(bad))[0] == 2
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "check", write(tmp_path, "short.json", {"k": 2, "n": 2, "table": [0, 1]}))[0] == 2
    assert run(capsys, "classify", write(tmp_path, "k3.json", {"k": 3, "n": 2, "table": [0] * 9}))[0] == 2
    assert run(capsys, "--threads", "-1", "enumerate", "--k", "2", "--n", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "bogus"])
    assert exc.value.code == 2


def test_guard_rail_exit_code(capsys):
    before = finops.get_max_cells()
    code, _, err = run(capsys, "--max-cells", "2000", "enumerate", "--k", "2", "--n", "4")
    assert code == 3 and "error" in err
    assert finops.get_max_cells() == before
    assert run(capsys, "enumerate", "--k", "2", "--n", "5")[0] == 3
