import json
from pathlib import Path

import pytest

from app.cli import exit_code_for, main
from app.core.exceptions import (
    BudgetExceededError,
    ClaimFailureError,
    FixtureValidationError,
    InstabilityError,
    InternalConsistencyError,
)
from app.models.enums import ExitCode

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def run(tmp_path, *args, name="report.json"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, out


def test_enumerate_trivial_group(tmp_path):
    code, out = run(tmp_path, "enumerate", "--fixture", str(FIXTURES / "trivial_group.json"))
    assert code == ExitCode.SUCCESS
    report = json.loads(out.read_text())
    assert report["count"] == 1


def test_enumerate_s3_lists_lambda_and_rho(tmp_path):
    code, out = run(tmp_path, "enumerate", "--fixture", "group:S3")
    assert code == ExitCode.SUCCESS
    entries = json.loads(out.read_text())["entries"]
    assert len(entries) == 5
    assert sum(e["abelian"] for e in entries) == 3
    assert sum(e["is_lambda"] for e in entries) == 1
    assert sum(e["is_rho"] for e in entries) == 1
    assert all(e["normalized"] and e["regular"] for e in entries)


def test_enumerate_over_budget_exits_3(tmp_path):
    code, out = run(tmp_path, "enumerate", "--fixture", "group:C12")
    assert code == ExitCode.BUDGET_EXCEEDED
    assert not out.exists()


def test_nbg_forced_zero(tmp_path):
    code, out = run(tmp_path, "nbg", "--fixture", "split:S3", "--samples", "1", "--force-zero")
    assert code == ExitCode.SUCCESS
    report = json.loads(out.read_text())
    assert report["rows"][0]["x"] == ["0"] * 6
    assert report["rows"][0]["agrees"]
    assert report["agreement_rate"] == "1"


def test_nbg_split_samples_all_agree(tmp_path):
    code, out = run(tmp_path, "nbg", "--fixture", "split:S3", "--samples", "25", "--seed", "4")
    assert code == ExitCode.SUCCESS
    assert json.loads(out.read_text())["all_agree"]


def test_theorem_both_free_and_verify_only(tmp_path):
    code, out = run(tmp_path, "theorem", "--fixture", "split:S3", "--box", "1")
    assert code == ExitCode.SUCCESS
    report = json.loads(out.read_text())
    assert report["verdict"] == "both-free"
    assert report["config"]["seed"] == 0
    code, verified = run(tmp_path, "--verify-only", str(out), name="verify.json")
    assert code == ExitCode.SUCCESS
    checks = json.loads(verified.read_text())
    assert checks["all_valid"]
    assert checks["checked"] == 4


def test_theorem_scaled_lattice(tmp_path):
    code, out = run(tmp_path, "theorem", "--fixture", "split:S3", "--lattice", "scaled:3", "--box", "1")
    assert code == ExitCode.SUCCESS
    assert json.loads(out.read_text())["verdict"] == "both-free"


def test_theorem_lattice_fixture(tmp_path):
    code, out = run(tmp_path, "theorem", "--fixture", "split:S3", "--box", "1",
                    "--lattice", str(FIXTURES / "s3_augmentation_lattice.json"))
    assert code == ExitCode.SUCCESS
    assert json.loads(out.read_text())["verdict"] != "contradiction"


def test_reports_are_byte_identical(tmp_path):
    args = ("theorem", "--fixture", "split:S3", "--box", "1")
    _, first = run(tmp_path, *args, name="a.json")
    text = first.read_text()
    _, second = run(tmp_path, *args, name="a.json")
    assert second.read_text() == text


def test_corrupted_fixture_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": 2, "identity": 0, "table": [[0, 1], [0, 1]]}))
    code, out = run(tmp_path, "enumerate", "--fixture", str(bad))
    assert code == ExitCode.FIXTURE_INVALID
    assert not out.exists()


def test_missing_fixture_exits_2(tmp_path):
    code, _ = run(tmp_path, "enumerate", "--fixture", str(tmp_path / "absent.json"))
    assert code == ExitCode.FIXTURE_INVALID


def test_group_only_fixture_cannot_run_nbg(tmp_path):
    code, _ = run(tmp_path, "nbg", "--fixture", str(FIXTURES / "c2_group.json"))
    assert code == ExitCode.FIXTURE_INVALID


def test_invalid_sample_count_exits_2(tmp_path):
    code, _ = run(tmp_path, "nbg", "--fixture", "split:S3", "--samples", "0")
    assert code == ExitCode.FIXTURE_INVALID


def test_hopf_order_markdown(tmp_path):
    code, out = run(tmp_path, "hopf-order", "--fixture", "split:S3", "--format", "markdown", name="hopf.md")
    assert code == ExitCode.SUCCESS
    text = out.read_text()
    assert text.startswith("# Hopf orders")
    assert "| kg | yes | yes | yes | yes |" in text


def test_hopf_order_context_fixture(tmp_path):
    code, out = run(tmp_path, "hopf-order", "--fixture", str(FIXTURES / "c2_split.json"))
    assert code == ExitCode.SUCCESS
    sides = json.loads(out.read_text())["sides"]
    assert [s["ambient"] for s in sides] == ["kg", "hlambda"]
    assert sides[0]["is_hopf"]


def test_command_is_required_without_verify_only():
    with pytest.raises(SystemExit) as exc:
        main(["--fixture", "split:S3"])
    assert exc.value.code == 2


@pytest.mark.parametrize("exc, code", [
    (FixtureValidationError("bad", identity="table_shape"), ExitCode.FIXTURE_INVALID),
    (InstabilityError("unstable", sigma="s", vector=[1]), ExitCode.FIXTURE_INVALID),
    (BudgetExceededError("too big", order=13, budget=12), ExitCode.BUDGET_EXCEEDED),
    (ClaimFailureError("claim", index=0, claim="action"), ExitCode.CONTRADICTION),
    (InternalConsistencyError("broken"), ExitCode.CONTRADICTION),
])
def test_exit_code_contract(exc, code):
    assert exit_code_for(exc) == code
