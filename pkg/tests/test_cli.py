import json

import pytest

from hilali.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_space_info_even_sphere(capsys):
    code, data = run_json(capsys, "space", "info", "sphere:4")
    assert code == 0
    assert data["P"]["text"] == "1 + t^4" and data["Ppi"]["text"] == "t^4 + t^7"
    assert data["classification"] == "elliptic" and data["euler"] == 2 and data["eulerPi"] == 0


def test_space_info_point_human(capsys):
    code, out, _ = run(capsys, "space", "info", "point")
    assert code == 0 and "P: 1\n" in out


def test_map_info_referee(capsys):
    code, data = run_json(capsys, "map", "info", "counterexample:referee")
    assert code == 0 and data["Pf(1)"] == "1" and data["Ppif(1)"] == "2"


@pytest.mark.parametrize("argv, code", [
    (("check", "hilali", "sphere:2"), 0),
    (("check", "relative-hilali", "counterexample:referee"), 1),
    (("check", "relative-hilali", "constant:sphere:2"), 0),
    (("check", "identities", "degree:2:0"), 0),
    (("check", "identities", "counterexample:referee"), 3),
    (("check", "injectivity", "identity:sphere:2"), 0),
    (("check", "injectivity", "wedge-inclusion:3"), 3),
    (("check", "hilali", "wedge:3,3"), 3),
    (("check", "relative-hilali", "wedge-inclusion:3"), 3),
    (("space", "info", "nothing:1"), 2),
    (("space", "info", "constant:sphere:2"), 2),
    (("product-threshold", "constant:sphere:2"), 0),
    (("product-threshold", "identity:sphere:2"), 3),
    (("product-threshold", "constant:sphere:2", "--s", "-1"), 2),
    (("hyperbolic", "wedge:3,3", "--n", "60"), 0),
    (("hyperbolic", "sphere:3"), 3),
    (("hyperbolic", "fold:3", "--experiment", "threshold", "--r", "0.9"), 2),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_relative_hilali_values(capsys):
    code, data = run_json(capsys, "check", "relative-hilali", "counterexample:referee")
    assert code == 1 and (data["lhs"], data["rhs"], data["holds"]) == ("2", "1", False)


def test_product_threshold_report(capsys):
    code, data = run_json(capsys, "product-threshold", "constant:sphere:2", "--s", "1")
    assert code == 0 and data["analytic_bound"] == 3 and data["exact_minimum"] == 3
    assert data["verified_range"] == [3, 8]


def test_hyperbolic_felix_report(capsys):
    code, data = run_json(capsys, "hyperbolic", "wedge:3,3", "--n", "60", "--experiment", "felix")
    assert code == 0 and data["felix_bound_satisfied"] is True
    assert data["radius"] == pytest.approx(2 ** -0.5, rel=0.03)


def test_human_and_json_agree(capsys):
    _, data = run_json(capsys, "check", "relative-hilali", "counterexample:referee")
    _, out, _ = run(capsys, "check", "relative-hilali", "counterexample:referee")
    assert f"lhs: {data['lhs']}" in out and f"rhs: {data['rhs']}" in out


def test_export_round_trip(capsys, tmp_path):
    _, text, _ = run(capsys, "export", "counterexample:referee")
    path = tmp_path / "referee.json"
    path.write_text(text, encoding="utf-8")
    _, again, _ = run(capsys, "export", str(path))
    assert again == text
    code, data = run_json(capsys, "check", "relative-hilali", str(path))
    assert code == 1 and data["lhs"] == "2"


def test_malformed_file_exits_2(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")
    assert run(capsys, "space", "info", str(path))[0] == 2


def test_identities_on_map_file_with_non_elliptic_target(capsys, tmp_path):
    _, text, _ = run(capsys, "export", "counterexample:referee")
    path = tmp_path / "m.json"
    path.write_text(text, encoding="utf-8")
    assert run(capsys, "check", "identities", str(path))[0] == 3


def test_error_report_in_json(capsys):
    code, data = run_json(capsys, "product-threshold", "identity:sphere:2")
    assert code == 3 and data["error"] == "NotApplicable" and data["exitCode"] == 3


def test_catalog_lists_references(capsys):
    code, data = run_json(capsys, "catalog")
    assert code == 0 and data["maps"]["counterexample:referee"]["cokernel"] == "neither"


def test_truncation_env_override(capsys, monkeypatch):
    monkeypatch.setenv("HILALI_TRUNCATION", "12")
    _, data = run_json(capsys, "space", "info", "kq:4")
    assert data["homology"]["support"] == {"truncatedAt": 12, "infinite": True}


def test_deterministic_output(capsys):
    first = run(capsys, "map", "info", "wedge-inclusion:3", "--format", "json")[1]
    assert run(capsys, "map", "info", "wedge-inclusion:3", "--format", "json")[1] == first
