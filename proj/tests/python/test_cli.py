import json
from fractions import Fraction

import jsonschema
import pytest

SL2_SUITE = ["suite", "run", "--algebra", "sl2", "--jets", "6", "--max-len", "3", "--degree", "4", "--h-order", "2"]

NON_INVARIANT_METRIC = {
    "name": "sl2-flat",
    "dim": 3,
    "bracket": [[0, 1, 1, 2, 1], [0, 2, 2, -2, 1], [1, 2, 0, 1, 1]],
    "metric": [[0, 0, 1, 1], [1, 1, 1, 1], [2, 2, 1, 1]],
}


def validator(schema):
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


@pytest.mark.parametrize(
    "args",
    [
        ["algebra", "validate", "--algebra", "so3"],
        ["ce", "cohomology", "--algebra", "sl2", "--module", "jets:3"],
        ["hochschild", "verify", "--algebra", "sl2", "--max-len", "3", "--jets", "4", "--checks", "hkr,cor,d0,at"],
        ["duflo", "char-check", "--algebra", "so3", "--order", "4"],
        ["duflo", "character", "--algebra", "oscillator", "--order", "4"],
        ["duflo", "iso-check", "--algebra", "sl2", "--degree", "4", "--order", "4"],
        ["wilson", "unknot", "--algebra", "sl2", "--f", "casimir^1", "--h-order", "2"],
    ],
)
def test_commands_pass_and_match_schema(run, schema, args):
    proc = run(*args)
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout)
    validator(schema).validate(report)
    assert report["summary"]["status"] == "pass"


def test_suite_is_byte_identical_and_valid(run, schema):
    first, second = run(*SL2_SUITE), run(*SL2_SUITE)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    report = json.loads(first.stdout)
    validator(schema).validate(report)
    assert all(c["status"] == "pass" for c in report["checks"])
    wilson = next(c for c in report["checks"] if c["name"] == "wilson")["result"]
    assert Fraction(*wilson["coeff"][1]) == Fraction(1, 8)


def test_schema_rejects_malformed_reports(run, schema):
    report = json.loads(run("duflo", "character", "--algebra", "sl2", "--order", "2").stdout)
    v = validator(schema)
    broken = json.loads(json.dumps(report))
    broken["checks"][0]["result"]["bernoulli"][0] = [1, 0]
    assert not v.is_valid(broken)
    broken = json.loads(json.dumps(report))
    del broken["summary"]
    assert not v.is_valid(broken)
    broken = json.loads(json.dumps(report))
    broken["checks"][0]["status"] = "skipped"
    assert not v.is_valid(broken)


@pytest.mark.parametrize(
    "args",
    [
        [],
        ["bogus"],
        ["algebra", "validate"],
        ["ce", "cohomology", "--algebra", "sl2", "--module", "foo:1"],
        ["hochschild", "verify", "--algebra", "sl2", "--checks", "hkr,xyz"],
        ["duflo", "iso-check", "--algebra", "sl2", "--degree", "6", "--order", "4"],
        ["wilson", "unknot", "--algebra", "sl2", "--f", "casimir^x"],
        ["wilson", "unknot", "--algebra", "sl2", "--h-order", "3", "--order", "3"],
        ["algebra", "validate", "--algebra", "/nonexistent.json"],
        ["suite", "run", "--algebra", "sl2", "--format", "yaml"],
    ],
)
def test_usage_errors_exit_2(run, args):
    assert run(*args).returncode == 2


def test_invariant_failure_exits_3_and_skips(run, tmp_path, schema):
    path = tmp_path / "flat.json"
    path.write_text(json.dumps(NON_INVARIANT_METRIC))
    proc = run("suite", "run", "--algebra", str(path))
    assert proc.returncode == 3
    report = json.loads(proc.stdout)
    validator(schema).validate(report)
    assert report["checks"][0]["status"] == "fail"
    assert all(c["status"] == "skipped" for c in report["checks"][1:])
    text = run("algebra", "validate", "--algebra", str(path), "--format", "text")
    assert text.returncode == 3
    assert "axiom=invariance" in text.stdout


def test_output_dir_env_and_out_flag(run, tmp_path):
    out_dir = tmp_path / "reports"
    proc = run("algebra", "validate", "--algebra", "sl2", env={"DUFLO_OUTPUT_DIR": str(out_dir)})
    assert proc.returncode == 0
    assert proc.stdout == ""
    assert json.loads((out_dir / "algebra-validate.json").read_text())["command"] == "algebra validate"
    explicit = tmp_path / "x" / "v.json"
    assert run("algebra", "validate", "--algebra", "sl2", "--out", str(explicit)).returncode == 0
    assert explicit.exists()


def test_baseline_create_match_and_divergence(run, tmp_path):
    baseline = tmp_path / "pin.json"
    args = ["suite", "run", "--algebra", "so3", "--checks", "character,wilson", "--jets", "6", "--baseline", str(baseline)]
    created = run(*args)
    assert created.returncode == 0
    assert "notice" in created.stderr and baseline.exists()
    assert run(*args).returncode == 0

    pinned = json.loads(baseline.read_text())
    pinned["checks"][1]["result"]["coeff"][1] = [7, 9]
    baseline.write_text(json.dumps(pinned))
    mismatch = run(*args)
    assert mismatch.returncode == 4
    assert "/checks/1/result/coeff/1/0" in mismatch.stderr
