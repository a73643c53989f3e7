import json

from compairs.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_scd_seven_chains(capsys):
    code, out, _ = run(capsys, "verify", "scd", "--n", "3", "--k", "2", "--deterministic")
    assert code == 0
    d = json.loads(out)
    assert all(c["status"] == "pass" for c in d["checks"])
    count = next(c for c in d["checks"] if c["claim_id"] == "scd.chain_count")
    assert count["actual"] == 7


def test_verify_subspace_small(capsys):
    code, out, _ = run(capsys, "verify", "subspace-small", "--deterministic")
    assert code == 0
    d = json.loads(out)
    posets = {(c["parameters"]["poset"]["q"], c["parameters"]["poset"]["n"]) for c in d["checks"]}
    assert posets == {(2, 2), (2, 3), (3, 2)}
    assert all(c["status"] == "pass" for c in d["checks"])


def test_unknown_suite_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "unknown-name")
    assert code == 2 and "unknown" in err


def test_bad_subcommand_is_usage_error(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_capacity_exit_code(capsys):
    code, _, err = run(capsys, "search", "exhaustive", "--poset", "chain:6,2", "--m", "3")
    assert code == 3 and "capacity" in err


def test_failing_check_exit_code(capsys):
    code, out, _ = run(capsys, "construct", "sec3", "--n", "8", "--deterministic")
    assert code == 1
    failed = [c["claim_id"] for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert failed == ["sec3.compB_lt_compX"]


def test_deterministic_reports_are_byte_identical(capsys, tmp_path):
    outs = []
    for w in ("1", "4"):
        path = tmp_path / f"r{w}.json"
        code, _, _ = run(capsys, "verify", "kleitman-small", "lower-bounds", "--workers", w,
                         "--deterministic", "--out", str(path))
        assert code == 0
        d = json.loads(path.read_text())
        outs.append(d["checks"])
    assert outs[0] == outs[1]
    # the same config is byte-identical
    first = run(capsys, "verify", "sec5", "scd", "--deterministic")[1]
    assert run(capsys, "verify", "sec5", "scd", "--deterministic")[1] == first


def test_csv_output(capsys):
    code, out, _ = run(capsys, "scd", "--n", "2", "--k", "1", "--verify", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "claim_id,parameters,expected,actual,status" and len(lines) == 6


def test_search_exhaustive_json(capsys):
    code, out, _ = run(capsys, "search", "exhaustive", "--poset", "chain:3,1", "--m", "4..5")
    assert code == 0
    d = json.loads(out)
    assert [(r["M"], r["min_comp"], r["centered_achieves"]) for r in d] == [(4, 2, True), (5, 4, True)]


def test_search_anneal(capsys):
    code, out, _ = run(capsys, "search", "anneal", "--n", "2", "--k", "3", "--m-range", "3..5",
                       "--budget", "500")
    assert code == 0
    assert [r["M"] for r in json.loads(out)] == [3, 4, 5]


def test_centered_comp_compress_roundtrip(capsys, tmp_path):
    code, out, _ = run(capsys, "centered", "--poset", "chain:2,2", "--m", "4")
    assert code == 0
    fam = json.loads(out)
    assert fam["comp"] == 2
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"poset": fam["poset"], "members": ["00", "22", "11", "02"]}))
    code, out, err = run(capsys, "compress", str(path), "--kind", "topbottom", "--trace")
    assert code == 0
    steps = [json.loads(line) for line in err.splitlines()]
    assert steps and all(s["comp_after"] <= s["comp_before"] for s in steps)
    assert {"step", "a", "b", "case", "swapped", "potential"} <= set(steps[0])
    path.write_text(out)
    code, out, _ = run(capsys, "comp", str(path))
    assert code == 0 and json.loads(out)["comp"] == steps[-1]["comp_after"]


def test_compress_mid_requires_assertion(capsys, tmp_path):
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"poset": {"type": "chain_product", "n": 3, "k": 1},
                                "members": ["111", "100"]}))
    assert run(capsys, "compress", str(path), "--kind", "mid")[0] == 2
    assert run(capsys, "compress", str(path), "--kind", "mid", "--property-q")[0] == 0


def test_construct_sec5(capsys):
    code, out, _ = run(capsys, "construct", "sec5", "--n", "20", "--k", "2", "--j", "10",
                       "--deterministic")
    assert code == 0
    details = next(c for c in json.loads(out)["checks"] if c["claim_id"] == "sec5.details")
    assert details["actual"]["comp_diff_sign"] == -1


def test_missing_file_fails(capsys, tmp_path):
    assert run(capsys, "comp", str(tmp_path / "nope.json"))[0] == 1
