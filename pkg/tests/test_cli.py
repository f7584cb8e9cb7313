import json

import pytest

from gsmlink.cli import main


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


CT_NEW1 = {"scheme": "ct", "n_t": 4, "n_a": 2, "L": 4,
           "alphabet": {"kind": "modified-square", "M": 16}}


def test_alphabet_command(capsys, tmp_path):
    out = tmp_path / "a.txt"
    assert main(["alphabet", "modified-square", "16", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "23/8" in text
    assert "P1=yes P2=yes" in text
    assert out.exists()


def test_alphabet_command_invalid_m(capsys):
    assert main(["alphabet", "cross", "8"]) == 1
    assert "error:" in capsys.readouterr().err


def test_metrics_new1(capsys, tmp_path):
    cfg = write_json(tmp_path / "new1.json", CT_NEW1)
    assert main(["metrics", "--config", cfg]) == 0
    text = capsys.readouterr().out
    assert "8/49" in text
    assert "eta         11" in text


def test_metrics_invalid_config(capsys, tmp_path):
    cfg = write_json(tmp_path / "bad.json", {"scheme": "nope"})
    assert main(["metrics", "--config", cfg]) == 1


def test_build_and_compare(capsys, tmp_path):
    cfg1 = write_json(tmp_path / "ct.json", CT_NEW1)
    cfg2 = write_json(tmp_path / "gsm.json",
                      {"scheme": "gsm", "n_t": 4, "n_a": 2, "L": 4,
                       "alphabets": [{"kind": "square", "M": 16},
                                     {"kind": "square", "M": 16}]})
    out = tmp_path / "c.txt"
    assert main(["build", "--config", cfg1, "--out", str(out)]) == 0
    assert out.exists()
    assert main(["compare", cfg1, cfg2]) == 0
    assert "gain of first over second" in capsys.readouterr().out


def test_verify_ct_passes(capsys, tmp_path):
    cfg = write_json(tmp_path / "ct.json", CT_NEW1)
    assert main(["verify", "--config", cfg]) == 0
    text = capsys.readouterr().out
    assert "FAIL" not in text
    assert "dmin^2 = 1" in text


def test_verify_rejects_p2_violating_alphabet(capsys, tmp_path):
    # conventional square QAM contains -alpha: the build must be refused
    cfg = write_json(tmp_path / "bad.json",
                     {"scheme": "ct", "n_t": 4, "n_a": 2, "L": 4,
                      "alphabet": {"kind": "square", "M": 16}})
    assert main(["verify", "--config", cfg]) == 1
    assert "P2" in capsys.readouterr().err


def test_cap_flag(tmp_path, capsys):
    cfg = write_json(tmp_path / "ct.json", CT_NEW1)
    assert main(["--cap", "100", "metrics", "--config", cfg]) == 1
    assert "cap" in capsys.readouterr().err


SIM = {"schemes": [{"name": "tiny", "scheme": "ct", "n_t": 4, "n_a": 2, "L": 2,
                    "alphabet": {"kind": "modified-square", "M": 4}}],
       "n_r": 2, "snr_db": [8, 12], "seed": 5,
       "min_errors": 20, "max_trials": 3000}


def test_simulate_reproducible_csv(tmp_path, capsys):
    cfg = write_json(tmp_path / "sim.json", SIM)
    out1, out2 = tmp_path / "r1.csv", tmp_path / "r2.csv"
    assert main(["simulate", "--config", cfg, "--out", str(out1)]) == 0
    assert main(["simulate", "--config", cfg, "--out", str(out2), "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert out1.read_text().startswith("scheme,snr_db,")


def test_simulate_empty_snr_list(tmp_path, capsys):
    bad = dict(SIM, snr_db=[])
    cfg = write_json(tmp_path / "sim.json", bad)
    assert main(["simulate", "--config", cfg]) == 1


def test_encode_debug(tmp_path, capsys):
    cfg = write_json(tmp_path / "ct.json",
                     {"scheme": "ct", "n_t": 4, "n_a": 2, "L": 2,
                      "alphabet": {"kind": "modified-square", "M": 4}})
    assert main(["encode", "--config", cfg, "000000"]) == 0
    out = capsys.readouterr().out.split()
    assert len(out) == 4
