import json

from commvar import cli


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, _ = run(capsys, argv)
    return code, json.loads(out)


def test_construct_weyl(capsys):
    code, doc = run_json(capsys, ["construct", "weyl", "--p", "2", "--alpha", "0", "--beta", "0"])
    assert code == 0
    assert doc["A"] == "0,0;1,0" and doc["B"] == "0,1;0,0"
    assert doc["commutator_is_identity"] is True
    assert doc["algebra_dimension"] == 4


def test_construct_blockpair(capsys):
    code, doc = run_json(capsys, ["construct", "blockpair", "--p", "2", "--r", "2"])
    assert code == 0
    assert doc["regular"] is True
    assert doc["invariant_factors"] == ["t^4"]
    assert doc["kernel_action"]["multiplier_ok"] is True
    assert doc["xp_nonzero"] is True


def test_construct_group(capsys):
    code, doc = run_json(capsys, ["construct", "group", "--n", "2", "--d", "2", "--q", "3"])
    assert code == 0
    assert doc["[D,rho]"] == "zeta*I"
    assert doc["zeta"] == "2"
    assert doc["rho"] == "0,1;1,0"


def test_construct_splitpair(capsys):
    code, doc = run_json(
        capsys,
        ["construct", "splitpair", "--p", "2", "--r", "2", "--a", "0,1", "--b", "0,0"],
    )
    assert code == 0
    assert doc["joint_centralizer_dimension"] == 2
    assert doc["scalar_pairs_distinct"] is True


def test_verify_suites(capsys):
    code, doc = run_json(capsys, ["verify", "--suite", "weyl", "--p", "3", "--r", "2"])
    assert code == 0
    assert {c["name"] for c in doc["checks"]} == {
        "algebra_dimension_p2",
        "solution_family",
        "block_divisibility",
    }
    assert all(c["status"] == "pass" for c in doc["checks"])

    code, doc = run_json(capsys, ["verify", "--suite", "group", "--n", "2", "--d", "2", "--q", "3"])
    assert code == 0
    assert all(c["status"] == "pass" for c in doc["checks"])
    coset_check = next(c for c in doc["checks"] if c["name"] == "solution_coset_law")
    assert coset_check["mode"] == "exhaustive"

    code, doc = run_json(capsys, ["verify", "--suite", "group", "--n", "2", "--d", "2", "--q", "5"])
    assert code == 0
    coset_check = next(c for c in doc["checks"] if c["name"] == "solution_coset_law")
    assert coset_check["mode"] == "sampled" and coset_check["status"] == "pass"

    code, doc = run_json(capsys, ["verify", "--suite", "lie-trace", "--n", "2", "--p", "3"])
    assert code == 0
    check = doc["checks"][0]
    assert check["name"] == "trace_obstruction" and check["status"] == "pass"
    assert check["count"] == "0" and check["brute_count"] == "0"

    code, doc = run_json(capsys, ["verify", "--suite", "lie-trace", "--n", "2", "--p", "2"])
    assert code == 0
    assert doc["checks"][0]["status"] == "skipped"

    code, doc = run_json(capsys, ["verify", "--suite", "canon"])
    assert code == 0
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_count_lie_with_expect(capsys):
    code, doc = run_json(
        capsys, ["count", "lie", "--p", "2", "--n", "2", "--qs", "2,4,8", "--expect"]
    )
    assert code == 0
    assert doc["fitted_dimension"] == 5 and doc["expected_dimension"] == 5
    assert doc["match"] is True
    assert [c["count"] for c in doc["counts"]] == ["24", "960", "32256"]


def test_count_strategy_both(capsys):
    code, doc = run_json(
        capsys,
        ["count", "lie", "--p", "2", "--n", "2", "--qs", "2,4", "--strategy", "both"],
    )
    assert code == 0
    strategies = {(c["q"], c["strategy"]): c["count"] for c in doc["counts"]}
    assert strategies[(2, "class")] == strategies[(2, "brute")] == "24"
    assert strategies[(4, "class")] == strategies[(4, "brute")] == "960"


def test_count_group_expect_mismatch_is_exit_1(capsys):
    # the exact counts at q in {3,9} fit exponent ~5.62, rounding to 6,
    # away from the formula value 5; --expect must report the mismatch
    code, doc = run_json(
        capsys, ["count", "group", "--n", "2", "--d", "2", "--qs", "3,9", "--expect"]
    )
    assert code == 1
    assert doc["fitted_dimension"] == 6 and doc["expected_dimension"] == 5
    assert doc["match"] is False
    assert doc["d"] == 2 and doc["zeta"]["3"] == "2"


def test_count_w_expect(capsys):
    code, doc = run_json(
        capsys, ["count", "W", "--n", "2", "--d", "2", "--qs", "3,9", "--expect"]
    )
    assert code == 0
    assert doc["fitted_dimension"] == 3 and doc["match"] is True


def test_count_commuting(capsys):
    code, doc = run_json(
        capsys, ["count", "commuting", "--n", "2", "--qs", "2,4", "--expect"]
    )
    assert code == 0
    assert doc["fitted_dimension"] == 6 and doc["match"] is True


def test_classes_command(capsys):
    code, doc = run_json(capsys, ["classes", "--n", "2", "--q", "3"])
    assert code == 0
    assert doc["count"] == 12  # q^2 + q classes of M_2(F_q)
    assert doc["total_class_size"] == doc["expected_total"] == "81"
    code, doc = run_json(capsys, ["classes", "--n", "2", "--q", "3", "--invertible"])
    assert code == 0
    assert doc["total_class_size"] == "48"


def test_dims_commands(capsys):
    code, doc = run_json(capsys, ["dims", "lie", "--p", "2", "--n", "2"])
    assert code == 0
    assert doc["dim_C"] == 5 and doc["dims_pgl"] == [4, 4]
    assert doc["equal_dimension_exception"] is True
    code, doc = run_json(capsys, ["dims", "group", "--n", "3", "--d", "3"])
    assert code == 0
    assert doc["dim_V"] == 10 and doc["dim_W"] == 7


def test_config_errors_exit_2(capsys):
    code, _, err = run(capsys, ["count", "group", "--n", "3", "--d", "2", "--qs", "3,9"])
    assert code == 2 and "error" in err
    code, _, err = run(capsys, ["count", "lie", "--n", "2", "--qs", "6,36"])
    assert code == 2
    code, _, err = run(capsys, ["count", "lie", "--p", "3", "--n", "2", "--qs", "2,4"])
    assert code == 2
    code, _, err = run(
        capsys,
        ["--max-brute", "10", "count", "lie", "--n", "2", "--qs", "2,4", "--strategy", "brute"],
    )
    assert code == 2


def test_env_var_overrides_brute_limit(capsys, monkeypatch):
    monkeypatch.setenv(cli.ENV_MAX_BRUTE, "10")
    code, _, _ = run(
        capsys, ["count", "lie", "--n", "2", "--qs", "2,4", "--strategy", "brute"]
    )
    assert code == 2
    monkeypatch.setenv(cli.ENV_MAX_BRUTE, str(1 << 26))
    code, _, _ = run(
        capsys, ["count", "lie", "--n", "2", "--qs", "2,4", "--strategy", "brute"]
    )
    assert code == 0


def test_byte_identical_output_for_identical_config(capsys):
    argv = ["--seed", "7", "verify", "--suite", "weyl", "--p", "2", "--r", "2"]
    code1, out1, _ = run(capsys, argv)
    code2, out2, _ = run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    argv = ["count", "lie", "--p", "2", "--n", "2", "--qs", "2,4"]
    _, out1, _ = run(capsys, argv)
    _, out2, _ = run(capsys, argv)
    assert out1 == out2


def test_threads_do_not_change_output(capsys):
    base = ["count", "commuting", "--n", "2", "--qs", "2,4"]
    _, out1, _ = run(capsys, ["--threads", "1"] + base)
    _, out4, _ = run(capsys, ["--threads", "4"] + base)
    assert out1 == out4


def test_output_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, ["--output", str(path), "dims", "lie", "--p", "2", "--n", "4"])
    assert code == 0
    assert path.read_text() == out
