import json

from posetcodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def js(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_weight_stats(capsys):
    code, out = js(capsys, "weight", "stats", "--q", "5", "--weight", "lee")
    assert code == 0 and out["M_w"] == 2 and out["S_w"] == 1 and not out["non_archimedean"]


def test_weight_validate_reports_axiom(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text("[0, 1, 3, 3, 1]")
    code, out = js(capsys, "weight", "validate", "--q", "5", "--weight", str(path))
    assert code == 1 and out["violations"][0] == {"axiom": "triangle", "witness": [1, 1]}


def test_invalid_weight_is_usage_error(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text("[0, 1, 3, 3, 1]")
    code, _, err = run(capsys, "ball", "size", "--q", "5", "--n", "2", "--D", "1", "--weight", str(path))
    assert code == 2 and "triangle" in err


def test_ball_size(capsys):
    code, out = js(capsys, "ball", "size", "--q", "5", "--n", "2", "--weight", "lee", "--D", "3", "--brute")
    assert code == 0 and out["size"] == out["brute_size"] == 15


def test_ball_on_antichain(capsys):
    code, out = js(capsys, "ball", "enumerate", "--q", "2", "--n", "3", "--poset", "antichain", "--D", "1")
    assert out["size"] == 4


def test_ball_enumerate_on_relabelled_chain(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"n": 2, "covers": [[2, 1]]}))
    code, out = js(capsys, "ball", "enumerate", "--q", "2", "--n", "2", "--poset", str(path), "--D", "1")
    assert out["members"] == [[0, 0], [0, 1]]


def test_anticode_size_and_build(capsys):
    code, out = js(capsys, "anticode", "size", "--q", "7", "--n", "1", "--weight", "lee", "--D", "2",
                   "--witnesses", "--brute")
    assert out["a_star"] == out["brute_a_star"] == 3 and len(out["witnesses"]) == 3
    code, out = js(capsys, "anticode", "build", "--q", "7", "--n", "1", "--weight", "lee", "--D", "2",
                   "--center", "3", "--K", "1,2")
    assert out["members"] == [[3], [4], [5]]


def test_anticode_check_exit_codes(capsys):
    code, out = js(capsys, "anticode", "check", "--q", "7", "--n", "1", "--weight", "lee", "--D", "2",
                   "--set", "0;1;2")
    assert code == 0 and out["form"] == "x_plus_Y"
    code, out = js(capsys, "anticode", "check", "--q", "7", "--n", "1", "--weight", "lee", "--D", "3",
                   "--set", "0;3")
    assert code == 1 and not out["optimal"]


def test_anticode_needs_chain(capsys):
    code, _, err = run(capsys, "anticode", "size", "--q", "2", "--n", "2", "--poset", "antichain", "--D", "1")
    assert code == 2


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "anticode", "size", "--q", "3", "--n", "6", "--D", "3", "--brute")
    assert code == 3 and "budget" in err


def test_code_commands(capsys, tmp_path):
    code, out = js(capsys, "code", "build-mds", "--q", "3", "--n", "3", "--d", "2")
    assert code == 0 and len(out["words"]) == 9 and out["report"]["mds"]
    path = tmp_path / "c.json"
    path.write_text(json.dumps(out))
    code, out = js(capsys, "code", "report", "--q", "3", "--code", str(path))
    assert out["diameter_perfect"] and out["perfect"]
    code, out = js(capsys, "code", "check", "--q", "3", "--code", str(path), "--property", "mds")
    assert code == 0 and out["holds"]
    path.write_text(json.dumps({"q": 3, "n": 2, "words": [[0, 0], [1, 0], [0, 1]]}))
    code, out = js(capsys, "code", "check", "--q", "3", "--code", str(path))
    assert code == 1 and not out["holds"]


def test_threshold_code(capsys, tmp_path):
    code, out = js(capsys, "code", "build-threshold", "--q", "7", "--n", "2", "--weight", "lee",
                   "--S", "2", "--R", "1")
    assert len(out["words"]) == 21 and out["d_weighted"] == 2 and not out["diameter_perfect"]


def test_verify_subset(capsys):
    code, out = js(capsys, "verify", "--fields", "2,3", "--n-max", "2", "--random-weights", "0",
                   "--only", "ball-size-formula", "--only", "optimal-anticode-size")
    assert code == 0 and out["passed"] and [c["name"] for c in out["checks"]] == [
        "ball-size-formula", "optimal-anticode-size"]


def test_verify_table_format(capsys):
    code, out, _ = run(capsys, "verify", "--fields", "2", "--random-weights", "0", "--only",
                       "ball-membership", "--format", "table")
    assert code == 0 and out.startswith("PASS")


def test_search_equality(capsys):
    code, out = js(capsys, "search-equality", "--fields", "4", "--max-value", "3")
    assert code == 0 and out["found"] > 0 and out["examples"][0]["brute_product"] == 4


def test_usage_error(capsys):
    code, _, _ = run(capsys, "ball", "size", "--q", "5")
    assert code == 2


def test_verify_rejects_invalid_weight_file(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text("[0, 1, 3, 3, 1]")
    code, _, err = run(capsys, "verify", "--weight-file", str(path), "--only", "weight-axioms")
    assert code == 2 and "triangle" in err
