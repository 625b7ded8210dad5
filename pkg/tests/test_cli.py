import io
import json
import shutil
import subprocess
import sys

import pytest

from conftest import COMPAS_PATH, SMALL_CSV
from parityd.cli import main


@pytest.fixture()
def small_csv(tmp_path):
    path = tmp_path / "small.csv"
    path.write_bytes(SMALL_CSV)
    return path


SMALL_FLAGS = [
    "--label-col", "outcome",
    "--attrs", "grp,site",
    "--id-col", "id",
]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_passing_audit_exits_zero(capsys, small_csv):
    # site has a single group, so every row is its own reference and the
    # audit passes vacuously.
    code, out, err = run_cli(
        capsys, "audit", "--input", str(small_csv),
        "--decision-col", "picked", "--label-col", "outcome",
        "--attrs", "site", "--id-col", "id", "--metrics", "FPR",
    )
    assert code == 0
    assert "overall verdict: **PASS**" in out
    assert err == ""


def test_failing_audit_exits_one(capsys, small_csv):
    code, out, _ = run_cli(
        capsys, "audit", "--input", str(small_csv),
        "--decision-col", "picked", *SMALL_FLAGS,
    )
    assert code == 1
    assert "overall verdict: **FAIL**" in out


def test_compas_fixture_exits_one(capsys):
    code, out, _ = run_cli(
        capsys, "audit", "--input", str(COMPAS_PATH),
        "--score-col", "score", "--cutoff", "5",
        "--label-col", "label", "--attrs", "race,sex,age_cat",
        "--id-col", "entity_id",
        "--ref", "fixed:race=Caucasian,sex=Male,age_cat=25-45",
    )
    assert code == 1
    assert "## race" in out


def test_markdown_bytes_stable_across_runs(capsys, small_csv):
    argv = ("audit", "--input", str(small_csv), "--decision-col", "picked", *SMALL_FLAGS)
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second


def test_json_no_timestamp_bytes_stable(capsys, small_csv):
    argv = (
        "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS, "--format", "json", "--no-timestamp",
    )
    _, first, _ = run_cli(capsys, *argv)
    _, second, _ = run_cli(capsys, *argv)
    assert first == second
    assert "generated_at" not in json.loads(first)


def test_json_default_carries_timestamp(capsys, small_csv):
    _, out, _ = run_cli(
        capsys, "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS, "--format", "json",
    )
    payload = json.loads(out)
    assert payload["generated_at"].endswith("Z")


def test_csv_format(capsys, small_csv):
    _, out, _ = run_cli(
        capsys, "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS, "--format", "csv",
    )
    assert out.splitlines()[0] == "attribute,group,metric,rate,ref_group,ref_rate,ratio,verdict"


def test_out_writes_file_and_status_goes_to_stderr(capsys, small_csv, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, err = run_cli(
        capsys, "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS, "--format", "json", "--no-timestamp", "--out", str(out_path),
    )
    assert code == 1
    assert out == ""  # stdout untouched when writing to a file
    assert f"report written to {out_path}" in err
    assert "FAIL" in err
    payload = json.loads(out_path.read_bytes())
    assert payload["overall_verdict"] == "fail"


def test_score_policies_thread_through(capsys, small_csv):
    _, out, _ = run_cli(
        capsys, "audit", "--input", str(small_csv), "--score-col", "score",
        "--top-k", "3", "--ties", "all", *SMALL_FLAGS,
        "--format", "json", "--no-timestamp",
    )
    config = json.loads(out)["config"]["threshold"]
    assert config == {
        "kind": "top_k", "k": 3, "p": None, "cutoff": None,
        "tie_mode": "include_all_ties",
    }


def test_tau_flag_beats_environment(capsys, small_csv, monkeypatch):
    monkeypatch.setenv("PARITYD_TAU", "0.5")
    _, out, _ = run_cli(
        capsys, "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS, "--tau", "0.9", "--format", "json", "--no-timestamp",
    )
    assert json.loads(out)["config"]["tau"] == 0.9


def test_tau_environment_default(capsys, small_csv, monkeypatch):
    monkeypatch.setenv("PARITYD_TAU", "0.5")
    _, out, _ = run_cli(
        capsys, "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS, "--format", "json", "--no-timestamp",
    )
    assert json.loads(out)["config"]["tau"] == 0.5


def test_tree_path_flag_selects_metrics_and_rationale(capsys, small_csv):
    _, out, _ = run_cli(
        capsys, "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS, "--tree-path", "uses-labels,punitive,small-fraction",
        "--format", "json", "--no-timestamp",
    )
    config = json.loads(out)["config"]
    assert config["metrics"] == ["FDR"]
    assert config["tree_path"] == ["uses-labels", "punitive", "small-fraction"]
    assert config["tree_rationale"]


USAGE_ERRORS = [
    ("missing label col", ["audit", "--input", "x.csv", "--score-col", "s",
                           "--cutoff", "1", "--attrs", "a"]),
    ("score and decision", ["audit", "--input", "x.csv", "--score-col", "s",
                            "--decision-col", "d", "--label-col", "l", "--attrs", "a"]),
    ("no subcommand", []),
    ("bad format", ["audit", "--input", "x.csv", "--decision-col", "d",
                    "--label-col", "l", "--attrs", "a", "--format", "yaml"]),
]


@pytest.mark.parametrize("argv", [a for _, a in USAGE_ERRORS],
                         ids=[n for n, _ in USAGE_ERRORS])
def test_argparse_usage_errors_exit_two(capsys, argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err.startswith("error: ")


def config_errors(small_csv):
    base = ["audit", "--input", str(small_csv), *SMALL_FLAGS]
    return [
        ("no threshold for scores", base + ["--score-col", "score"]),
        ("two score policies", base + ["--score-col", "score", "--top-k", "2",
                                       "--cutoff", "0.5"]),
        ("policy with decision col", base + ["--decision-col", "picked", "--top-k", "2"]),
        ("unknown reference", base + ["--decision-col", "picked", "--ref", "median"]),
        ("malformed fixed pair", base + ["--decision-col", "picked", "--ref", "fixed:grp"]),
        ("unknown metric", base + ["--decision-col", "picked", "--metrics", "Accuracy"]),
        ("non-terminal tree path", base + ["--decision-col", "picked",
                                           "--tree-path", "uses-labels"]),
        ("unknown tree answer", base + ["--decision-col", "picked",
                                        "--tree-path", "maybe"]),
        ("tau out of range", base + ["--decision-col", "picked", "--tau", "1.5"]),
    ]


def test_config_errors_exit_two(capsys, small_csv):
    for name, argv in config_errors(small_csv):
        code, out, err = run_cli(capsys, *argv)
        assert code == 2, name
        assert out == "", name
        assert err.startswith("error: "), name


def test_missing_input_file_exits_two(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "audit", "--input", str(tmp_path / "absent.csv"),
        "--decision-col", "picked", *SMALL_FLAGS,
    )
    assert code == 2
    assert err.startswith("error: ")


def test_bad_tau_environment_exits_two(capsys, small_csv, monkeypatch):
    monkeypatch.setenv("PARITYD_TAU", "wide")
    code, _, err = run_cli(
        capsys, "audit", "--input", str(small_csv), "--decision-col", "picked",
        *SMALL_FLAGS,
    )
    assert code == 2
    assert "PARITYD_TAU" in err


def test_tree_answers_prints_recommendation(capsys):
    code, out, _ = run_cli(capsys, "tree", "--answers", "no-labels-used")
    assert code == 0
    assert out.splitlines()[0] == "path: no-labels-used"
    assert out.splitlines()[1] == "metrics: PPrev,PPR"
    assert out.splitlines()[2].startswith("rationale: ")


def test_tree_emit_flags_is_paste_ready(capsys):
    code, out, _ = run_cli(
        capsys, "tree", "--answers", "uses-labels,assistive,small-fraction",
        "--emit-flags",
    )
    assert code == 0
    assert out == "--metrics FOR\n"


def test_tree_rejects_partial_path(capsys):
    code, _, err = run_cli(capsys, "tree", "--answers", "uses-labels,assistive")
    assert code == 2
    assert err.startswith("error: ")


def test_tree_interactive_accepts_numbers_and_ids(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1\npunitive\n2\n"))
    code, out, _ = run_cli(capsys, "tree")
    assert code == 0
    assert "path: uses-labels,punitive,full-population" in out
    assert "metrics: FPR" in out


def test_tree_interactive_eof_aborts(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    code, _, err = run_cli(capsys, "tree")
    assert code == 2
    assert "error: interview aborted" in err


def test_installed_script_runs(small_csv):
    script = shutil.which("parityd")
    argv = [script] if script else [sys.executable, "-m", "parityd.cli"]
    result = subprocess.run(
        argv + ["audit", "--input", str(small_csv), "--decision-col", "picked",
                *SMALL_FLAGS, "--format", "json", "--no-timestamp"],
        capture_output=True,
    )
    assert result.returncode == 1
    payload = json.loads(result.stdout)
    assert payload["overall_verdict"] == "fail"
    assert result.stderr == b""
