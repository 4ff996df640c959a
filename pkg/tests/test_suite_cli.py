import json
import subprocess
import sys
from pathlib import Path

import pytest

from noise_lab.config import load_config_dict, load_model_config
from noise_lab.suite import CheckResult, Report, run_verification_suite

REPO = Path(__file__).resolve().parent.parent
TWO_COINS = REPO / "examples" / "two-coins.json"
FOUR_COINS = REPO / "examples" / "four-coins.json"


def run_cli(*args, cwd=REPO):
    return subprocess.run(
        [sys.executable, "-m", "noise_lab", *args],
        capture_output=True,
        cwd=cwd,
    )


def test_suite_two_coins_all_pass():
    cfg = load_model_config(str(TWO_COINS))
    report = run_verification_suite(cfg)
    assert report.n_fail == 0
    assert report.n_skip == 0
    assert report.n_pass >= 25
    assert report.exit_code() == 0


def test_suite_selection():
    cfg = load_model_config(str(TWO_COINS))
    report = run_verification_suite(cfg, "regopen")
    assert {r.group for r in report.results} == {"regopen"}
    with pytest.raises(ValueError):
        run_verification_suite(cfg, "nonsense")


def test_suite_skips_geometry_without_embedding():
    cfg = load_config_dict({"cells": [{"k": 2, "probs": ["1/2", "1/2"]}]})
    report = run_verification_suite(cfg, "geometry")
    assert all(r.status == "skip" for r in report.results)
    assert report.exit_code() == 0
    assert report.exit_code(strict=True) == 3


def test_suite_float_backend_skips_exact_only_checks():
    cfg = load_config_dict(
        {"cells": [{"k": 2, "probs": ["1/2", "1/2"]}] * 3, "backend": "float"}
    )
    report = run_verification_suite(cfg, "chaos")
    statuses = {r.name: r.status for r in report.results}
    assert statuses["first_chaos"] == "skip"
    report_laws = run_verification_suite(cfg, "laws")
    assert report_laws.n_fail == 0
    assert any(r.status == "pass" for r in report_laws.results)


def test_suite_skips_oversized_exact_model():
    cfg = load_config_dict({"cells": [{"k": 2, "probs": ["1/2", "1/2"]}] * 13})
    report = run_verification_suite(cfg, "laws")
    assert all(r.status == "skip" for r in report.results)
    assert any("cap exceeded" in r.detail for r in report.results)
    assert report.exit_code(strict=True) == 3


def test_report_exit_codes_and_renderings():
    rep = Report(seed=0, backend="exact", selection="all")
    rep.results.append(CheckResult("laws", "ok", "pass", "detail"))
    assert rep.exit_code() == 0
    rep.results.append(CheckResult("laws", "broken", "fail", witnesses=("w1",)))
    assert rep.exit_code() == 1
    rep.results.append(CheckResult("geometry", "nothing", "skip"))
    assert rep.exit_code() == 1  # fail wins over skip
    text = rep.render_text()
    assert "FAIL" in text and "| w1" in text
    data = rep.to_json_dict()
    assert data["summary"] == {"pass": 1, "fail": 1, "skip": 1}


def test_cli_verify_reproducible(tmp_path):
    out1 = run_cli("verify", str(TWO_COINS), "--seed", "0", "--json", str(tmp_path / "r1.json"))
    out2 = run_cli("verify", str(TWO_COINS), "--seed", "0", "--json", str(tmp_path / "r2.json"))
    assert out1.returncode == 0
    assert out1.stdout == out2.stdout
    assert (tmp_path / "r1.json").read_bytes() == (tmp_path / "r2.json").read_bytes()
    payload = json.loads((tmp_path / "r1.json").read_text())
    assert payload["summary"]["fail"] == 0


def test_cli_verify_seed_changes_witnesses():
    out1 = run_cli("verify", str(TWO_COINS), "--seed", "1", "--only", "laws")
    out2 = run_cli("verify", str(TWO_COINS), "--seed", "2", "--only", "laws")
    assert out1.returncode == out2.returncode == 0
    # Same checks, same statuses; the runs are still independent executions.
    assert out1.stdout.count(b"PASS") == out2.stdout.count(b"PASS")


def test_cli_input_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"cells": [{"k": 2, "probs": ["1/2", "1/3"]}]}')
    out = run_cli("verify", str(bad))
    assert out.returncode == 2
    assert b"input error" in out.stderr

    missing = run_cli("verify", str(tmp_path / "nope.json"))
    assert missing.returncode == 2


def test_cli_strict_skip_exit_3(tmp_path):
    cfg = tmp_path / "noemb.json"
    cfg.write_text('{"cells": [{"k": 2, "probs": ["1/2", "1/2"]}]}')
    out = run_cli("verify", str(cfg), "--only", "geometry", "--strict")
    assert out.returncode == 3
    relaxed = run_cli("verify", str(cfg), "--only", "geometry")
    assert relaxed.returncode == 0


def test_cli_spectrum_table_and_csv(tmp_path):
    csv_path = tmp_path / "table.csv"
    out = run_cli("spectrum", str(TWO_COINS), "--vector", "demo", "--csv", str(csv_path))
    assert out.returncode == 0
    text = out.stdout.decode()
    assert "atom" in text and "{0,1}" in text
    rows = csv_path.read_text().strip().splitlines()
    assert rows[0] == "atom,dim,canonical,mass,mass_decimal"
    assert rows[1] == '"{}",1,1/4,9,9'
    assert rows[3] == '"{1}",1,1/4,0,0'
    assert rows[4] == '"{0,1}",1,1/4,4,4'


def test_cli_spectrum_unknown_vector():
    out = run_cli("spectrum", str(TWO_COINS), "--vector", "ghost")
    assert out.returncode == 2


def test_cli_chaos_summary():
    out = run_cli("chaos", str(FOUR_COINS), "--subalgebra", "blocks", "--vector", "pairsum")
    assert out.returncode == 0
    text = out.stdout.decode()
    assert "first-chaos dimension: 4" in text
    assert "classification: classical" in text
    assert "delta^2 = 1" in text
    assert "defect bound: pass" in text


def test_cli_chaos_defaults_to_full_subalgebra():
    out = run_cli("chaos", str(FOUR_COINS), "--vector", "pairsum")
    assert out.returncode == 0
    assert b"additivity on subalgebra: no" in out.stdout


def test_cli_verify_four_coins_chaos_group():
    out = run_cli("verify", str(FOUR_COINS), "--only", "chaos")
    assert out.returncode == 0
    assert out.stdout.count(b"FAIL") == 0
