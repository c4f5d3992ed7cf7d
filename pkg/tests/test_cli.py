"""Command-line harness: exit codes, report shape, determinism."""

import json

import pytest

from cyclocover.cli import EXIT_CAP, EXIT_PASS, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_small_grid_passes(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1..2", "--d", "2..3")
    assert code == EXIT_PASS
    doc = json.loads(out)
    assert doc["schema"] == 1
    payload = doc["payload"]
    assert payload["pass"]
    assert payload["summary"] == {"total": 4, "passed": 4, "failed": 0}
    assert [(c["n"], c["d"]) for c in payload["cases"]] == [
        (1, 2),
        (1, 3),
        (2, 2),
        (2, 3),
    ]


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--n", "1", "--d", "2", "--suite", "lemma-4.1")
    assert code == EXIT_PASS
    case = json.loads(out)["payload"]["cases"][0]
    assert set(case["statements"]) == {"lemma-4.1"}


def test_verify_remark_only_reported_for_odd_n(capsys):
    _, out, _ = run(
        capsys, "verify", "--n", "2", "--d", "2", "--suite", "remark-4.3"
    )
    case = json.loads(out)["payload"]["cases"][0]
    assert "remark-4.3" not in case["statements"]
    _, out, _ = run(
        capsys, "verify", "--n", "1", "--d", "2", "--suite", "remark-4.3"
    )
    case = json.loads(out)["payload"]["cases"][0]
    assert case["statements"]["remark-4.3"] is True


def test_verify_cap_exceeded_names_the_case(capsys):
    code, _, err = run(capsys, "verify", "--n", "4..4", "--d", "7..7")
    assert code == EXIT_CAP
    assert "n=4" in err and "d=7" in err


def test_cap_flag_overrides_env(capsys, monkeypatch):
    monkeypatch.setenv("CYCLOCOVER_CAP", "8")
    code, _, err = run(capsys, "verify", "--n", "1", "--d", "3")
    assert code == EXIT_CAP
    code, _, _ = run(capsys, "verify", "--n", "1", "--d", "3", "--cap", "1024")
    assert code == EXIT_PASS


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "3..1"])
    assert exc.value.code == EXIT_USAGE
    capsys.readouterr()
    code, _, _ = run(capsys, "verify", "--n", "1", "--d", "2", "--format", "csv")
    assert code == EXIT_USAGE


def test_ranks_json_and_csv_agree(capsys, tmp_path):
    code, out, _ = run(capsys, "ranks", "--d", "2..4", "--n", "1..3")
    assert code == EXIT_PASS
    table = json.loads(out)["payload"]["table"]
    assert table["pass"]
    out_file = tmp_path / "ranks.csv"
    code, _, _ = run(
        capsys, "ranks", "--d", "2..4", "--n", "1..3", "--format", "csv",
        "--out", str(out_file),
    )
    assert code == EXIT_PASS
    lines = out_file.read_text().splitlines()
    assert lines[0] == "d,n,p,pass"
    assert len(lines) == 1 + len(table["entries"])
    for line, entry in zip(lines[1:], table["entries"]):
        d, n, p, ok = line.split(",")
        assert (int(d), int(n), int(p)) == (entry["d"], entry["n"], entry["p"])


def test_determinism_repeated_runs(capsys):
    _, out1, _ = run(capsys, "verify", "--n", "1..2", "--d", "2..3")
    _, out2, _ = run(capsys, "verify", "--n", "1..2", "--d", "2..3")
    p1, p2 = json.loads(out1), json.loads(out2)
    assert json.dumps(p1["payload"], sort_keys=True) == json.dumps(
        p2["payload"], sort_keys=True
    )


def test_determinism_across_job_counts(capsys):
    _, out1, _ = run(capsys, "verify", "--n", "1", "--d", "2..3", "--jobs", "2")
    _, out2, _ = run(capsys, "verify", "--n", "1", "--d", "2..3", "--jobs", "1")
    assert (
        json.loads(out1)["payload"] == json.loads(out2)["payload"]
    )


def test_timings_are_segregated_from_payload(capsys):
    _, out, _ = run(capsys, "verify", "--n", "1", "--d", "2")
    doc = json.loads(out)
    assert "timings" in doc and "verify_seconds" in doc["timings"]
    assert "timings" not in doc["payload"]
    assert json.dumps(doc["payload"], sort_keys=True).find("seconds") == -1
