from __future__ import annotations

import json
import subprocess
import sys

import pytest

from arenscalc.cli import main
from arenscalc.tensor import random_map, save_map, to_dict

# ---------------------------------------------------------------------------
# parse


def test_parse_prints_signature(capsys):
    assert main(["parse", "f^{***}"]) == 0
    out = capsys.readouterr().out
    assert "f^{***}" in out
    assert "Y** x Z** x W* -> X*" in out


def test_parse_unknown_character(capsys):
    assert main(["parse", "f^{q}"]) == 2
    assert "UnknownCharacter" in capsys.readouterr().err


def test_parse_flip_arity_mismatch(capsys):
    assert main(["parse", "m^{i}", "--arity", "2"]) == 2
    assert "FlipArityMismatch" in capsys.readouterr().err


def test_parse_bilinear_signature(capsys):
    assert main(["parse", "m^{r*}", "--arity", "2"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0] == "m^{r*}"


# ---------------------------------------------------------------------------
# classify


def test_classify_close_to_regular(capsys):
    assert main(["classify", "f^{t****s}", "f^{s****t}"]) == 0
    assert capsys.readouterr().out.strip() == "EQUAL-IFF close-to-regular(f)"


def test_classify_unconditional(capsys):
    assert main(["classify", "f^{i****i}", "f^{rs****t}"]) == 0
    assert capsys.readouterr().out.strip() == "UNCOND-EQUAL"


def test_classify_reflexive(capsys):
    assert main(["classify", "f", "f"]) == 0
    assert capsys.readouterr().out.strip() == "UNCOND-EQUAL"


def test_classify_parse_error(capsys):
    assert main(["classify", "f^{z}", "f"]) == 2


# ---------------------------------------------------------------------------
# check


def test_check_fixture_completely_regular(capsys):
    assert main(["check", "f^{****}", "f^{i****i}", "--fixture", "z3-conv"]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_check_random_unconditional_pair(capsys):
    assert main(["check", "f^{j****j}", "f^{rt****s}", "--seed", "7"]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_check_random_reflexive_collapse(capsys):
    # in the exact rational model every tensor is completely regular,
    # so same-map extension comparisons always pass; disagreement can
    # only come from comparing two different map files
    assert main(["check", "f^{****}", "f^{i****i}", "--seed", "0"]) == 0
    assert capsys.readouterr().out.startswith("PASS")


def test_check_bilinear_fixture(capsys):
    assert main(["check", "m^{r***r}", "m^{***}", "--fixture", "z2-pi"]) == 0


def test_check_derivation_fixture_reflexive(capsys):
    assert main(["check", "D^{****}", "D", "--fixture", "poly3-euler"]) == 0


def test_check_flip_beyond_map_arity(capsys):
    assert main(["check", "m^{i}", "m", "--fixture", "z2-pi"]) == 2


def test_check_unknown_fixture(capsys):
    assert main(["check", "f", "f", "--fixture", "z9-conv"]) == 2
    assert "unknown fixture" in capsys.readouterr().err


def test_check_map_pair_corruption(tmp_path, capsys):
    good = tmp_path / "good.json"
    bad = tmp_path / "bad.json"
    m = random_map(3, (2, 2, 2), 2, seed=11, name="f")
    save_map(m, good)
    data = to_dict(m)
    data["entries"] = list(data["entries"])
    data["entries"][5] = str(int(data["entries"][5].split("/")[0]) + 1)
    bad.write_text(json.dumps(data))
    code = main(
        ["check", "f^{****}", "f^{****}", "--map", str(good), "--map", str(bad)]
    )
    assert code == 1
    out = capsys.readouterr().out
    assert "at index" in out


def test_check_map_single_file(tmp_path, capsys):
    path = tmp_path / "m.json"
    save_map(random_map(3, (2, 2, 2), 2, seed=4, name="f"), path)
    assert main(["check", "f^{s****t}", "f^{t****s}", "--map", str(path)]) in (0, 1)


def test_check_map_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"name": "f", "entries": [')
    assert main(["check", "f", "f", "--map", str(path)]) == 2


def test_check_map_missing_file(capsys):
    assert main(["check", "f", "f", "--map", "/nonexistent/m.json"]) == 2


def test_check_map_and_fixture_conflict(capsys):
    assert (
        main(["check", "f", "f", "--map", "x.json", "--fixture", "z2-conv"]) == 2
    )


def test_check_three_maps_rejected(tmp_path, capsys):
    path = tmp_path / "m.json"
    save_map(random_map(3, (2, 2, 2), 2, seed=4), path)
    args = ["check", "f", "f"]
    for _ in range(3):
        args += ["--map", str(path)]
    assert main(args) == 2


def test_check_bad_dims(capsys):
    assert main(["check", "f", "f", "--dims", "0,2,2,2"]) == 2
    assert main(["check", "f", "f", "--dims", "7,2,2,2"]) == 2
    assert main(["check", "f", "f", "--dims", "2,a,2,2"]) == 2
    assert main(["check", "f", "f", "--dims", "2"]) == 2


# ---------------------------------------------------------------------------
# report


def test_report_rejects_zero_trials(capsys):
    assert main(["report", "--trials", "0"]) == 2
    assert "--trials" in capsys.readouterr().err


def test_report_rejects_unknown_fixture(capsys):
    assert main(["report", "--fixture", "z9"]) == 2


def test_report_rejects_wrong_dims_count(capsys):
    assert main(["report", "--dims", "2,2"]) == 2


def test_report_writes_deterministic_file(tmp_path, capsys):
    small = ["--trials", "3", "--instances", "2"]
    p1, p2 = tmp_path / "r1.md", tmp_path / "r2.md"
    assert main(["report", "--out", str(p1)] + small) == 0
    assert main(["report", "--out", str(p2)] + small) == 0
    b1, b2 = p1.read_bytes(), p2.read_bytes()
    assert b1 == b2
    text = b1.decode()
    assert "Summary:" in text
    assert "FAIL" not in text
    assert "timestamp" not in text.lower()


def test_report_stdout_contains_s3_section(capsys):
    code = main(
        ["report", "--trials", "1", "--instances", "1", "--fixture", "s3"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "s3: six extensions coincide" in out
    assert "z2:" not in out


def test_report_seed_changes_config_line(tmp_path):
    small = ["--trials", "2", "--instances", "1"]
    p1, p2 = tmp_path / "a.md", tmp_path / "b.md"
    assert main(["report", "--seed", "1", "--out", str(p1)] + small) == 0
    assert main(["report", "--seed", "2", "--out", str(p2)] + small) == 0
    assert "seed=1" in p1.read_text()
    assert "seed=2" in p2.read_text()


# ---------------------------------------------------------------------------
# console entry point


def test_installed_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "arenscalc.cli"],
        capture_output=True,
        text=True,
        input="",
    )
    # bare invocation is a usage error from argparse
    assert proc.returncode == 2


def test_module_invocation_parse():
    proc = subprocess.run(
        [sys.executable, "-m", "arenscalc.cli", "parse", "f^{***}"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "Y** x Z** x W* -> X*" in proc.stdout
