import json
import subprocess
import sys

import pytest

from hardyseq.cli import main
from hardyseq.verification import SweepSpec, run_verification


@pytest.fixture
def weights_file(tmp_path):
    path = tmp_path / "weights.json"
    payload = {
        "u": {"start": 0, "values": [1, 1]},
        "v": {"start": 0, "values": [1, 1]},
        "w": {"start": 0, "values": [1, 1]},
        "a": {"start": 0, "values": [1, 1]},
    }
    path.write_text(json.dumps(payload))
    return str(path)


@pytest.fixture
def linft_file(tmp_path):
    path = tmp_path / "linft.json"
    payload = {
        "u": {"start": 0, "values": [2, 1]},
        "v": {"start": 0, "values": [4, 1]},
        "w": {"start": 0, "values": [1, 1]},
    }
    path.write_text(json.dumps(payload))
    return str(path)


class TestChar:
    def test_regime_iii_fixture(self, weights_file, capsys):
        code = main(["char", "--weights", weights_file, "--p", "1", "--q", "1"])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["value"] == 3.0
        assert out["regime"]["case"] == "III"
        assert out["formula_id"] == "gop-iii"

    def test_missing_file(self, capsys):
        assert main(["char", "--weights", "/nonexistent.json", "--p", "1", "--q", "1"]) == 2
        assert "error" in capsys.readouterr().err

    def test_p_zero(self, weights_file, capsys):
        assert main(["char", "--weights", weights_file, "--p", "0", "--q", "1"]) == 2

    def test_antigop_flipped(self, weights_file, capsys):
        code = main(
            ["char", "--weights", weights_file, "--p", "1", "--q", "1",
             "--form", "antigop", "--variant", "flipped"]
        )
        assert code == 0
        assert json.loads(capsys.readouterr().out)["variant"] == "flipped"

    def test_csv_format(self, weights_file, capsys):
        code = main(["char", "--weights", weights_file, "--p", "1", "--q", "1",
                     "--format", "csv"])
        assert code == 0
        out = capsys.readouterr().out
        assert "value,3.0" in out


class TestOracle:
    def test_linft_fixture_spikes_only(self, linft_file, capsys):
        code = main(
            ["oracle", "--weights", linft_file, "--p", "1", "--q", "inf",
             "--form", "antigop-sup", "--spikes-only"]
        )
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["constant"] == 2.0
        assert out["certificate"] == "exact-spike"

    def test_brute_force_gop(self, weights_file, capsys):
        code = main(
            ["oracle", "--weights", weights_file, "--p", "1", "--q", "1",
             "--restarts", "2", "--iterations", "20"]
        )
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["constant"] == pytest.approx(2.0, rel=1e-9)
        assert "argmax" in out

    def test_bad_q(self, weights_file):
        assert main(["oracle", "--weights", weights_file, "--p", "1", "--q", "-1"]) == 2


class TestBridge:
    def test_unit_fixture(self, weights_file, capsys):
        code = main(["bridge", "--weights", weights_file, "--p", "1", "--q", "1"])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["discrete_lhs"] == 4.0
        assert out["lhs_equal"] and out["exact_lhs"]

    def test_missing_a(self, tmp_path, capsys):
        path = tmp_path / "partial.json"
        path.write_text(json.dumps({"u": {"start": 0, "values": [1]}}))
        assert main(["bridge", "--weights", str(path), "--p", "1", "--q", "1"]) == 2


class TestPartition:
    def test_uniform_window(self, tmp_path, capsys):
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"start": 0, "values": [1, 1, 1, 1]}))
        code = main(["partition", "--weights", str(path), "--n0", "0"])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["ns"] == [0, 1, 2, "inf"]
        assert out["K"] == 3 and out["kset"] == [2]

    def test_accepts_w_key(self, weights_file, capsys):
        assert main(["partition", "--weights", weights_file]) == 0

    def test_n0_out_of_range(self, weights_file):
        assert main(["partition", "--weights", weights_file, "--n0", "99"]) == 2


class TestVerify:
    def test_default_small_spec(self, tmp_path, capsys):
        spec = {"seed": 1, "ensemble": 4, "window_sizes": [3, 5],
                "regimes": [[1.0, 1.0], [0.5, 1.0]],
                "suites": ["chain", "partition", "linft"]}
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        code = main(["verify", "--spec", str(path)])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["passed"] is True
        assert out["schema_version"] == 1
        assert set(out["suites"]) == {"chain", "partition", "linft"}

    def test_empty_regime_list(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"regimes": []}))
        assert main(["verify", "--spec", str(path)]) == 2

    def test_empty_suites(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"suites": []}))
        assert main(["verify", "--spec", str(path)]) == 2

    def test_unknown_suite(self, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"suites": ["nope"]}))
        assert main(["verify", "--spec", str(path)]) == 2

    def test_output_file_round_trips(self, tmp_path):
        spec = {"seed": 3, "ensemble": 3, "suites": ["chain"], "window_sizes": [4]}
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        out_path = tmp_path / "report.json"
        code = main(["verify", "--spec", str(path), "--out", str(out_path)])
        assert code == 0
        report = json.loads(out_path.read_text())
        assert report["passed"] is True

    def test_seed_determinism(self, tmp_path, capsys):
        spec = {"seed": 5, "ensemble": 4, "suites": ["linft"], "window_sizes": [4]}
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec))
        main(["verify", "--spec", str(path)])
        first = capsys.readouterr().out
        main(["verify", "--spec", str(path)])
        second = capsys.readouterr().out
        assert first == second


class TestReplay:
    def test_replay_reproduces_identical_numbers(self):
        entry = {
            "suite": "chain",
            "a": {"start": 0, "values": [1.0, 1.0]},
            "p": 0.5,
            "n": 0,
        }
        spec = SweepSpec(suites=("chain",), ensemble=1, replay=(entry,))
        report1 = run_verification(spec)
        report2 = run_verification(spec)
        assert report1["replay"] == report2["replay"]
        assert report1["replay"][0]["observed"] == [1.0, 2.0, 4.0]
        assert report1["replay"][0]["passed"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hardyseq.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "hardyseq" in proc.stdout
