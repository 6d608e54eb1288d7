import csv
import json
import math

import pytest

from akrvoro import akr_node
from akrvoro.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = []
    summary = {}
    header = None
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            summary[key.strip()] = value
            continue
        if header is None:
            header = next(csv.reader([line]))
            continue
        rows.append(dict(zip(header, next(csv.reader([line])))))
    return rows, summary


def test_nodes_emits_expected_table(capsys):
    code, out, _ = run_cli(capsys, ["nodes", "--n", "4", "--j", "2"])
    assert code == 0
    rows, _ = parse_csv(out)
    assert [int(r["k"]) for r in rows] == [0, 1, 2, 3, 4]
    values = [float(r["t"]) for r in rows]
    assert values[0] == 0.0 and values[1] == 0.0 and values[4] == 1.0
    assert values[2] == pytest.approx(0.4082483, abs=1e-7)
    assert values[3] == pytest.approx(math.sqrt(0.5), rel=1e-15)
    for k in range(5):
        assert values[k] == akr_node(4, k, 2)


def test_dry_run_round_trips_the_config(capsys):
    argv = [
        "residual",
        "--kind",
        "akr-2d",
        "--fn",
        "exp-sum",
        "--point",
        "0.5",
        "0.5",
        "--n0",
        "64",
        "--doublings",
        "7",
        "--format",
        "json",
        "--dry-run",
    ]
    code, out, _ = run_cli(capsys, argv)
    assert code == 0
    cfg = json.loads(out)
    assert cfg["command"] == "residual"
    assert cfg["kind"] == "akr-2d"
    assert cfg["fn_name"] == "exp-sum"
    assert cfg["point"] == [0.5, 0.5]
    assert cfg["n0"] == 64
    assert cfg["doublings"] == 7
    assert cfg["j"] == 2
    assert cfg["format"] == "json"
    assert cfg["tolerance"] == 0.01
    assert cfg["dry_run"] is True


def test_lemma_at_one_passes_with_zero_series(capsys):
    code, out, _ = run_cli(
        capsys, ["lemma", "--x", "1.0", "--n0", "64", "--doublings", "4"]
    )
    assert code == 0
    rows, summary = parse_csv(out)
    assert all(float(r["value"]) == 0.0 for r in rows)
    assert summary["verdict"] == "PASS"


def test_lemma_interior_point_passes(capsys):
    code, out, _ = run_cli(
        capsys, ["lemma", "--x", "0.5", "--n0", "64", "--doublings", "5"]
    )
    assert code == 0
    rows, summary = parse_csv(out)
    assert len(rows) == 6
    assert float(summary["limit_estimate"]) == pytest.approx(0.0, abs=1e-2)
    assert all(float(r["value"]) >= -1e-13 for r in rows)


def test_csv_and_json_payloads_match(capsys):
    base = ["lemma", "--x", "0.25", "--n0", "32", "--doublings", "4"]
    code_csv, out_csv, _ = run_cli(capsys, base)
    code_json, out_json, _ = run_cli(capsys, base + ["--format", "json"])
    assert code_csv == code_json == 0
    rows_csv, summary_csv = parse_csv(out_csv)
    payload = json.loads(out_json)
    assert payload["command"] == "lemma"
    assert len(payload["rows"]) == len(rows_csv)
    for row_c, row_j in zip(rows_csv, payload["rows"]):
        assert int(row_c["n"]) == row_j["n"]
        assert float(row_c["value"]) == row_j["value"]
        if row_c["diff"] == "":
            assert row_j["diff"] is None
        else:
            assert float(row_c["diff"]) == row_j["diff"]
        if row_c["rate_estimate"] == "":
            assert row_j["rate_estimate"] is None
        else:
            assert float(row_c["rate_estimate"]) == row_j["rate_estimate"]
    for key in ("limit_estimate", "min_value", "target"):
        assert float(summary_csv[key]) == payload["summary"][key]
    assert summary_csv["verdict"] == payload["summary"]["verdict"]


def test_eval_values(capsys):
    code, out, _ = run_cli(
        capsys,
        ["eval", "--kind", "akr-1d", "--fn", "e2", "--n", "16", "--point", "0.4"],
    )
    assert code == 0
    rows, summary = parse_csv(out)
    assert float(rows[0]["value"]) == pytest.approx(0.16, abs=1e-12)

    code, out, _ = run_cli(
        capsys,
        [
            "eval",
            "--kind",
            "bernstein-2d",
            "--fn",
            "monomial(1,1)",
            "--n",
            "8",
            "--point",
            "0.4",
            "0.6",
        ],
    )
    assert code == 0
    rows, _ = parse_csv(out)
    assert float(rows[0]["value"]) == pytest.approx(0.24, abs=1e-13)


def test_eval_rejects_wrong_arity(capsys):
    code, _, err = run_cli(
        capsys,
        ["eval", "--kind", "akr-1d", "--fn", "exp-sum", "--n", "16", "--point", "0.4"],
    )
    assert code == 2
    assert "arity" in err


def test_residual_verdict_passes_for_known_limit(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "residual",
            "--kind",
            "akr-1d",
            "--fn",
            "e1",
            "--point",
            "0.5",
            "--n0",
            "64",
            "--doublings",
            "5",
            "--format",
            "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["verdict"] == "PASS"
    assert payload["summary"]["target"] == pytest.approx(-0.25)
    assert payload["summary"]["limit_estimate"] == pytest.approx(-0.25, rel=1e-3)
    assert payload["rows"][0]["n"] == 64
    assert len(payload["rows"]) == 6


def test_residual_fail_verdict_gives_exit_one(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "residual",
            "--kind",
            "akr-1d",
            "--fn",
            "e1",
            "--point",
            "0.5",
            "--n0",
            "8",
            "--doublings",
            "3",
            "--tolerance",
            "1e-12",
        ],
    )
    assert code == 1
    _, summary = parse_csv(out)
    assert summary["verdict"] == "FAIL"


def test_residual_schedule_too_short_to_extrapolate(capsys):
    code, _, err = run_cli(
        capsys,
        [
            "residual",
            "--kind",
            "akr-1d",
            "--fn",
            "e1",
            "--point",
            "0.5",
            "--n0",
            "8",
            "--doublings",
            "2",
        ],
    )
    assert code == 2
    assert "at least 4" in err


def test_residual_with_general_order_reports_without_verdict(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "residual",
            "--kind",
            "akr-1d",
            "--fn",
            "e1",
            "--point",
            "0.5",
            "--n0",
            "8",
            "--doublings",
            "3",
            "--j",
            "3",
            "--format",
            "json",
        ],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["verdict"] is None
    assert payload["summary"]["target"] is None


def test_unknown_function_is_a_usage_error_with_json_error_object(capsys):
    code, _, err = run_cli(
        capsys,
        [
            "eval",
            "--kind",
            "akr-1d",
            "--fn",
            "nope",
            "--n",
            "4",
            "--point",
            "0.5",
            "--format",
            "json",
        ],
    )
    assert code == 2
    error = json.loads(err)["error"]
    assert error["type"] == "UnknownFunctionError"
    assert "nope" in error["message"]


def test_positivity_requirement_is_enforced(capsys):
    code, _, err = run_cli(
        capsys,
        [
            "residual",
            "--kind",
            "akr-2d",
            "--fn",
            "exp-sum",
            "--point",
            "0.0",
            "0.5",
            "--n0",
            "4",
            "--doublings",
            "2",
        ],
    )
    assert code == 2
    assert "positive" in err


def test_argparse_rejects_bad_usage():
    with pytest.raises(SystemExit) as exc:
        main(["residual", "--kind", "bogus-kind", "--fn", "e1", "--point", "0.5"])
    assert exc.value.code == 2


def test_decompose_rows_and_bound_column(capsys):
    code, out, _ = run_cli(
        capsys,
        [
            "decompose",
            "--fn",
            "exp-sum",
            "--point",
            "0.5",
            "0.5",
            "--n0",
            "16",
            "--doublings",
            "2",
        ],
    )
    assert code == 0
    rows, _ = parse_csv(out)
    assert [int(r["n"]) for r in rows] == [16, 32, 64]
    for r in rows:
        total = float(r["total"])
        parts = float(r["e_term"]) + float(r["f_term"]) + float(r["g_residual"])
        assert parts == pytest.approx(total, abs=1e-12)
        assert abs(float(r["g_residual"])) <= float(r["g_bound"])


def test_output_file_writing(tmp_path, capsys):
    out_path = tmp_path / "nodes.csv"
    code, out, _ = run_cli(
        capsys, ["nodes", "--n", "4", "--j", "3", "--out", str(out_path)]
    )
    assert code == 0
    assert out == ""
    rows, _ = parse_csv(out_path.read_text())
    assert [float(r["t"]) for r in rows][:3] == [0.0, 0.0, 0.0]


def test_worker_env_variable_keeps_output_identical(capsys, monkeypatch):
    argv = ["lemma", "--x", "0.5", "--n0", "16", "--doublings", "3"]
    code_seq, out_seq, _ = run_cli(capsys, argv)
    monkeypatch.setenv("AKRVORO_WORKERS", "3")
    code_par, out_par, _ = run_cli(capsys, argv)
    assert code_seq == code_par == 0
    assert out_seq == out_par
    monkeypatch.setenv("AKRVORO_WORKERS", "0")
    code_bad, _, err = run_cli(capsys, argv)
    assert code_bad == 2
    assert "AKRVORO_WORKERS" in err


def test_verify_subset_runs_fast_criteria(capsys):
    code, out, _ = run_cli(capsys, ["verify", "--criteria", "1,8"])
    assert code == 0
    rows, summary = parse_csv(out)
    assert [int(r["criterion"]) for r in rows] == [1, 8]
    assert all(r["status"] == "PASS" for r in rows)
    assert summary["verdict"] == "PASS"
