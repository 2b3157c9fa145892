import contextlib
import io
import json

from grcodes.cli import RunConfig, main


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        status = main(list(argv))
    return status, out.getvalue(), err.getvalue()


def test_ring_info_text():
    status, out, _ = run_cli("ring", "info", "--p", "2", "--r", "2")
    assert status == 0
    assert "modulus 1,1,1" in out
    assert "|R| = 16" in out and "|R*| = 12" in out


def test_ring_info_json():
    status, out, _ = run_cli("ring", "info", "--p", "2", "--r", "2", "--format", "json")
    assert status == 0
    payload = json.loads(out)
    assert payload["modulus"] == [1, 1, 1]
    assert payload["size"] == 16 and payload["units"] == 12


def test_non_prime_rejected():
    status, _, err = run_cli("ring", "info", "--p", "4", "--r", "1")
    assert status == 2
    assert "prime" in err


def test_bad_modulus_rejected_with_order():
    status, _, err = run_cli("ring", "info", "--p", "2", "--r", "2", "--modulus", "3,1,1")
    assert status == 2
    assert "order 6" in err and "expected 3" in err


def test_gauss_trivial_pair():
    status, out, _ = run_cli("gauss", "--p", "2", "--r", "1")
    assert status == 0
    assert "EQUAL" in out


def test_gauss_sweep_pair_count():
    status, out, _ = run_cli("gauss", "--p", "2", "--r", "1", "--sweep", "--format", "json")
    assert status == 0
    payload = json.loads(out)
    assert payload["pairs"] == payload["pairs_expected"] == 8
    assert payload["all_equal"] is True


def test_gauss_dump_sums():
    status, out, _ = run_cli(
        "gauss", "--p", "2", "--r", "1", "--chi-i", "0", "--chi-b", "1",
        "--beta", "1", "--format", "json", "--dump-sums",
    )
    assert status == 0
    payload = json.loads(out)
    assert payload["equal"] is True
    assert payload["closed_coeffs"]["m"] == 4
    assert payload["closed_coeffs"]["coeffs"] == [0, 2]  # 2 * zeta_4


def test_gauss_rejects_non_teichmuller_b():
    status, _, err = run_cli("gauss", "--p", "2", "--r", "1", "--chi-b", "2")
    assert status == 2
    assert "Teichmuller" in err


def test_code_build_json():
    status, out, _ = run_cli(
        "code", "build", "--p", "2", "--r", "1", "--s", "2", "--e", "1",
        "--vbar", "full", "--format", "json",
    )
    assert status == 0
    payload = json.loads(out)
    assert payload["n"] == 12 and payload["e_prime"] == 1
    assert payload["stabilizer_size"] == 2 and payload["n_tilde"] == 6


def test_code_weights_csv_deterministic_across_threads():
    argv = ["code", "weights", "--p", "2", "--r", "1", "--s", "2", "--e", "1",
            "--vbar", "full", "--format", "csv"]
    _, first, _ = run_cli(*argv)
    _, second, _ = run_cli(*argv, "--threads", "4")
    assert first == second
    assert first.startswith("table,key,value\n")
    assert "hamming,8,3" in first


def test_code_verify_pass():
    status, out, _ = run_cli(
        "code", "verify", "--theorem", "3.1", "--p", "2", "--r", "1", "--s", "2",
        "--e", "1", "--vbar", "full",
    )
    assert status == 0
    assert "summary:" in out and "0 failed" in out


def test_code_verify_precondition_violated():
    status, _, err = run_cli(
        "code", "verify", "--theorem", "3.3", "--p", "3", "--r", "1", "--s", "3",
        "--sprime", "1", "--e", "1", "--d", "1",
    )
    assert status == 2
    assert "dual-subspace" in err


def test_code_verify_unknown_theorem():
    status, _, _ = run_cli(
        "code", "verify", "--theorem", "9.9", "--p", "2", "--r", "1", "--s", "2", "--e", "1",
    )
    assert status == 2


def test_gray_map_cli():
    status, out, _ = run_cli("gray", "map", "--p", "2", "--r", "1", "--beta", "2")
    assert status == 0
    assert out.strip() == "1 1"


def test_gray_analyze_json():
    status, out, _ = run_cli(
        "gray", "analyze", "--p", "2", "--r", "1", "--s", "2", "--e", "1",
        "--d", "2", "--sprime", "1", "--which", "C", "--format", "json",
    )
    assert status == 0
    payload = json.loads(out)
    assert payload["length"] == 24 and payload["size"] == 16
    assert payload["min_distance"] == 12 and payload["two_distance"] is True
    assert payload["weights"] == {"0": 1, "12": 12, "16": 3}


def test_config_round_trip(tmp_path):
    cfg = RunConfig(p=2, r=1, s=2, e=1, vbar="full", format="json", threads=2)
    text = cfg.to_file_text()
    assert RunConfig.from_file_text(text) == cfg


def test_config_file_with_flag_override(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("p = 2\nr = 1\ns = 2\ne = 1\nvbar = full\nformat = json\n")
    status, out, _ = run_cli("code", "build", "--config", str(path))
    assert status == 0
    assert json.loads(out)["n"] == 12
    # flag overrides the file value
    status, out, _ = run_cli("code", "build", "--config", str(path), "--format", "csv")
    assert status == 0
    assert out.startswith("table,key,value")


def test_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("nonsense = 1\n")
    status, _, err = run_cli("code", "build", "--config", str(path))
    assert status == 2
    assert "unknown key" in err


def test_output_file(tmp_path):
    path = tmp_path / "report.json"
    status, out, _ = run_cli(
        "ring", "info", "--p", "2", "--r", "1", "--format", "json",
        "--output", str(path),
    )
    assert status == 0 and out == ""
    assert json.loads(path.read_text())["q"] == 2


def test_verify_report_outputs_have_no_timing():
    _, out, err = run_cli(
        "code", "verify", "--theorem", "3.4", "--p", "3", "--r", "1", "--s", "3",
        "--sprime", "1", "--e", "2", "--d", "2", "--format", "json",
    )
    assert "elapsed" in err and "elapsed" not in out
    payload = json.loads(out)
    assert payload["summary"] == {"failed": 0, "passed": 4}
