"""End-to-end tests: the installed CLI, exit statuses, report bytes."""

import json
import subprocess
import sys

import pytest


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "premetric.cli", *args],
                          capture_output=True, text=True, timeout=300)


def write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


BASE = {"n": 4, "p": 2, "seed": 42, "samples": 3}


def test_check_all_pass_exits_zero(tmp_path):
    cfg = write_config(tmp_path, "ok.json", BASE)
    r = run_cli("check", "--config", cfg)
    assert r.returncode == 0
    assert "[FAIL]" not in r.stdout
    assert r.stdout.startswith("report: check (seed 42)")
    assert "conservation-0000" in r.stdout
    assert "identity-0000-sym" in r.stdout
    assert r.stdout.rstrip().endswith("failed")


def test_custom_law_phi_failure_exits_one(tmp_path):
    cfg = write_config(tmp_path, "phi.json", {
        "n": 4, "p": 2, "seed": 1, "samples": 1,
        "F": "dx0^dx1 + (x2)*dx1^dx3",
        "constitutive": {"kind": "custom", "G": "(x1)*dx2^dx3"},
    })
    r = run_cli("constitutive", "--config", cfg)
    assert r.returncode == 1
    assert "[FAIL]" in r.stdout
    assert "witness:" in r.stdout
    # the balance identity must hold even when phi_u does not vanish
    for line in r.stdout.splitlines():
        if "balance" in line:
            assert "[PASS]" in line


def test_malformed_form_exits_two_with_position(tmp_path):
    cfg = write_config(tmp_path, "bad.json", dict(BASE, F="dx0 ^^ dx1"))
    r = run_cli("check", "--config", cfg)
    assert r.returncode == 2
    assert r.stdout == ""          # no partial report
    assert "1:" in r.stderr        # line:column diagnostic


def test_bad_config_value_exits_two(tmp_path):
    cfg = write_config(tmp_path, "bad2.json", dict(BASE, p=9))
    r = run_cli("check", "--config", cfg)
    assert r.returncode == 2
    assert "p:" in r.stderr
    assert r.stdout == ""


def test_missing_config_flag_exits_two():
    r = run_cli("check")
    assert r.returncode == 2


def test_unknown_subcommand_exits_two():
    r = run_cli("frobnicate", "--config", "x.json")
    assert r.returncode == 2


def test_structured_reports_byte_identical_for_fixed_seed(tmp_path):
    cfg = write_config(tmp_path, "det.json", dict(BASE, mode="complex"))
    outs = []
    for k in range(2):
        r = run_cli("reciprocity", "--config", cfg, "--format", "structured")
        assert r.returncode == 0
        outs.append(r.stdout)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["schema"] == 1
    assert doc["summary"]["status"] == "PASS"
    assert doc["summary"]["total"] == len(doc["checks"])
    ids = [c["id"] for c in doc["checks"]]
    assert ids == sorted(ids)


def test_seed_flag_overrides_config(tmp_path):
    cfg = write_config(tmp_path, "seed.json", BASE)
    r = run_cli("check", "--config", cfg, "--seed", "7", "--format", "structured")
    assert r.returncode == 0
    assert json.loads(r.stdout)["seed"] == 7


def test_out_flag_writes_file_not_stdout(tmp_path):
    cfg = write_config(tmp_path, "out.json", BASE)
    dest = tmp_path / "report.json"
    r = run_cli("split", "--config", cfg, "--format", "structured",
                "--out", str(dest))
    assert r.returncode == 0
    assert r.stdout == ""
    doc = json.loads(dest.read_text(encoding="utf-8"))
    assert doc["command"] == "split"
    assert doc["summary"]["failed"] == 0


def test_suites_key_overrides_subcommand_default(tmp_path):
    cfg = write_config(tmp_path, "ov.json", dict(BASE, suites=["split"]))
    r = run_cli("check", "--config", cfg)
    assert r.returncode == 0
    assert "split-0000-F" in r.stdout
    assert "conservation-" not in r.stdout


def test_suite_precondition_failure_is_config_error(tmp_path):
    cfg = write_config(tmp_path, "pre.json", {"n": 3, "p": 1, "samples": 1})
    r = run_cli("reciprocity", "--config", cfg)
    assert r.returncode == 2
    assert r.stdout == ""


def test_text_and_structured_agree_on_outcome(tmp_path):
    cfg = write_config(tmp_path, "agree.json", dict(BASE, samples=2))
    text = run_cli("check", "--config", cfg)
    structured = run_cli("check", "--config", cfg, "--format", "structured")
    assert text.returncode == structured.returncode == 0
    doc = json.loads(structured.stdout)
    assert text.stdout.count("[PASS]") == doc["summary"]["passed"]


@pytest.mark.parametrize("command", ["check", "split", "constitutive",
                                     "reciprocity"])
def test_every_subcommand_is_wired(tmp_path, command):
    payload = dict(BASE, samples=1)
    if command == "constitutive":
        payload["metric"] = {"diagonal": [1, -1, -1, -1]}
        payload["constitutive"] = {"kind": "maxwell-lorentz", "Z0": 1}
    cfg = write_config(tmp_path, f"{command}.json", payload)
    r = run_cli(command, "--config", cfg)
    assert r.returncode == 0
    assert f"report: {command}" in r.stdout
