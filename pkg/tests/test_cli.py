import json

import pytest

from maxclass.cli import main
from maxclass.lazard import BchTable


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_jacobi_text_and_exit(capsys):
    code, out, _ = run(capsys, "jacobi", "--p", "5", "--i", "7", "--coeff", "1")
    assert code == 0
    assert "lambda = 24" in out and "3i+3-p = 19" in out


def test_jacobi_json_deterministic(capsys):
    code1, out1, _ = run(capsys, "jacobi", "--p", "5", "--i", "7", "--coeff", "1",
                         "--format", "json")
    code2, out2, _ = run(capsys, "jacobi", "--p", "5", "--i", "7", "--coeff", "1",
                         "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["lambda"] == {"exact": True, "value": 24}


def test_jacobi_rejects_zero_coefficients(capsys):
    code, _, err = run(capsys, "jacobi", "--p", "5", "--i", "7", "--coeff", "0")
    assert code == 2
    assert "Hhat" in err


def test_bad_prime_is_config_error(capsys):
    code, _, err = run(capsys, "jacobi", "--p", "6", "--i", "7", "--coeff", "1")
    assert code == 2


def test_build_mainline_and_branch(capsys):
    code, out, _ = run(capsys, "build", "--p", "5", "--i", "7", "--m", "15", "--coeff", "1")
    assert code == 0 and "mainline" in out
    code, out, _ = run(capsys, "build", "--p", "5", "--i", "7", "--m", "17", "--coeff", "2",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["classification"] == "branch"
    assert obj["order_exp"] == 11
    assert obj["maximal_class_verified"] is True


def test_build_refuses_m_beyond_lambda(capsys):
    code, _, err = run(capsys, "build", "--p", "5", "--i", "7", "--m", "30", "--coeff", "1")
    assert code == 2 and "lambda" in err


def test_enumerate_writes_outputs(capsys, tmp_path):
    dot = tmp_path / "tree.dot"
    js = tmp_path / "tree.json"
    code, out, _ = run(capsys, "enumerate", "--p", "5", "--i", "7", "--m-max", "17",
                       "--out-dot", str(dot), "--out-json", str(js))
    assert code == 0
    assert dot.read_text().startswith("digraph")
    obj = json.loads(js.read_text())
    assert len(obj["nodes"]) == 11 and len(obj["edges"]) == 10
    assert "membership_shift_note" in obj


def test_enumerate_budget_exhausted_exit_3(capsys):
    code, _, err = run(capsys, "enumerate", "--p", "5", "--i", "7", "--m-max", "12",
                       "--coeff-mod", "3", "--budget", "10")
    assert code == 3 and "budget" in err.lower()


def test_config_file_merging(capsys, tmp_path):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("p = 5\ni = 7\ncoeff = 1\n# comment\nm-work = 40\n")
    code, out1, _ = run(capsys, "jacobi", "--config", str(cfgfile))
    assert code == 0 and "lambda = 24" in out1
    # explicit flag overrides the file
    code, out2, _ = run(capsys, "jacobi", "--config", str(cfgfile), "--coeff", "2")
    assert code == 0 and "lambda = 24" in out2


def test_scan_conjecture1(capsys):
    code, out, _ = run(capsys, "scan-conjecture1", "--p", "5", "--i-max", "6",
                       "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["unresolved_atleast"] == 0
    assert all(e["exact"] for e in obj["entries"])


def test_verify_quick_passes(capsys):
    code, out, _ = run(capsys, "verify", "--p", "5", "--quick")
    assert code == 0
    assert "overall: PASS" in out


def test_verify_fault_injection_fails(capsys):
    code, out, _ = run(capsys, "verify", "--p", "5", "--quick", "--inject-fault", "epsilon")
    assert code == 1
    assert "image_valuations" in out and "FAIL" in out
    code, out, _ = run(capsys, "verify", "--p", "5", "--quick", "--inject-fault", "bch")
    assert code == 1
    assert "overall: FAIL" in out


def test_bch_regen_round_trip(capsys, tmp_path):
    out_file = tmp_path / "bch.json"
    code, out, _ = run(capsys, "bch-regen", "--max-class", "4", "--out", str(out_file))
    assert code == 0
    tab = BchTable.from_json(json.loads(out_file.read_text()))
    assert tab.max_class == 4 and tab.self_test(4)
