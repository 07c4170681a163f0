"""CLI subcommands, output schemas, and the exit-code contract."""

import json

import numpy as np
import pytest

from markovmix import load_pair
from markovmix.cli import (
    EXIT_BOUND_FAILED,
    EXIT_CAP,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VALIDATION,
    main,
)
from markovmix.verify import BoundEntry, BoundReport

LAZY_TO_ASYM = ["--p0", "two_state:p=0.25,q=0.25", "--p1", "two_state:p=0.2,q=0.4"]


@pytest.fixture()
def pair_file(tmp_path):
    path = tmp_path / "pair.json"
    code = main(["generate", *LAZY_TO_ASYM, "--name", "lazy-to-asym", "--out", str(path)])
    assert code == EXIT_OK
    return path


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestGenerate:
    def test_pair_file_round_trip(self, pair_file):
        name, pair = load_pair(pair_file)
        assert name == "lazy-to-asym"
        np.testing.assert_array_equal(pair.p0.entries, [[0.75, 0.25], [0.25, 0.75]])
        np.testing.assert_array_equal(pair.p1.entries, [[0.8, 0.2], [0.4, 0.6]])

    def test_reload_is_bitwise_stable(self, pair_file, tmp_path):
        from markovmix import save_pair

        name, pair = load_pair(pair_file)
        other = tmp_path / "copy.json"
        save_pair(other, name, pair)
        name2, pair2 = load_pair(other)
        assert name2 == name
        np.testing.assert_array_equal(pair.p0.entries, pair2.p0.entries)
        np.testing.assert_array_equal(pair.p1.entries, pair2.p1.entries)

    def test_single_kernel_output(self, capsys):
        code, payload = run_json(capsys, ["generate", "--p0", "complete_graph:n=3,alpha=0.5"])
        assert code == EXIT_OK
        assert payload["n"] == 3
        assert "P1" not in payload

    def test_seed_flag_feeds_random_dense(self, capsys):
        code1, one = run_json(
            capsys, ["generate", "--p0", "random_dense:n=3", "--seed", "9"]
        )
        code2, two = run_json(
            capsys, ["generate", "--p0", "random_dense:n=3,seed=9"]
        )
        assert code1 == code2 == EXIT_OK
        assert one["P0"] == two["P0"]

    def test_bad_family_exits_validation(self):
        assert main(["generate", "--p0", "mystery:n=3"]) == EXIT_VALIDATION


class TestSubcommands:
    def test_validate(self, capsys, pair_file):
        code, payload = run_json(capsys, ["validate", "--chain", str(pair_file)])
        assert code == EXIT_OK
        assert payload["valid"] is True
        assert payload["P0"] == {"irreducible": True, "period": 1, "aperiodic": True}

    def test_stationary(self, capsys, pair_file):
        code, payload = run_json(capsys, ["stationary", "--chain", str(pair_file)])
        assert code == EXIT_OK
        np.testing.assert_allclose(payload["pi0"], [0.5, 0.5], atol=1e-14)
        np.testing.assert_allclose(payload["pi1"], [2 / 3, 1 / 3], atol=1e-12)

    def test_stationary_at_s(self, capsys, pair_file):
        code, payload = run_json(
            capsys,
            ["stationary", "--chain", str(pair_file), "--which", "P0", "--s", "0.5"],
        )
        assert code == EXIT_OK
        np.testing.assert_allclose(payload["pi_s"], [13 / 22, 9 / 22], atol=1e-12)
        assert "pi1" not in payload

    def test_mixing(self, capsys, pair_file):
        code, payload = run_json(
            capsys,
            ["mixing", "--chain", str(pair_file), "--which", "P1", "--epsilon", "0.05"],
        )
        assert code == EXIT_OK
        assert payload["tmix"] == 3
        assert payload["kernel"] == "P1"

    def test_sup_mixing(self, capsys, pair_file):
        code, payload = run_json(
            capsys, ["sup-mixing", "--chain", str(pair_file), "--epsilon", "0.05"]
        )
        assert code == EXIT_OK
        assert payload["sup_tmix"] == 4
        assert payload["argmax_s"] == 0.0

    def test_adiabatic(self, capsys, pair_file):
        code, payload = run_json(
            capsys, ["adiabatic", "--chain", str(pair_file), "--epsilon", "0.1"]
        )
        assert code == EXIT_OK
        assert payload["heuristic"] is False
        assert payload["t_ad"] >= 1

    def test_stable(self, capsys, pair_file):
        code, payload = run_json(
            capsys, ["stable", "--chain", str(pair_file), "--epsilon", "0.05"]
        )
        assert code == EXIT_OK
        assert payload["t_sad"] == 2

    def test_corridor(self, capsys, pair_file):
        code, payload = run_json(
            capsys, ["corridor", "--chain", str(pair_file), "--steps", "2"]
        )
        assert code == EXIT_OK
        assert payload["T"] == 2
        np.testing.assert_allclose(payload["gaps"], [0.0409091, 0.0466667], atol=1e-7)

    def test_verify_json(self, capsys, pair_file):
        code, payload = run_json(
            capsys, ["verify", "--chain", str(pair_file), "--epsilon", "0.2"]
        )
        assert code == EXIT_OK
        assert {e["bound_id"] for e in payload["entries"]} == {
            "PROP1", "PROP2", "PROP3", "PROP4", "COR1", "THM2", "THM3"
        }

    def test_verify_csv_to_file(self, pair_file, tmp_path):
        out = tmp_path / "report.csv"
        code = main(
            [
                "verify", "--chain", str(pair_file),
                "--epsilon", "0.2", "--format", "csv", "--out", str(out),
            ]
        )
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "chain,eps,bound_id,empirical,theoretical,pass,detail"


class TestDeterminism:
    def test_identical_invocations_identical_bytes(self, capsys, pair_file):
        argv = ["verify", "--chain", str(pair_file), "--epsilon", "0.2"]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        second = capsys.readouterr().out
        assert first == second


class TestExitCodes:
    def test_validation_failure(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(
            json.dumps(
                {"name": "bad", "n": 2, "P0": [[0.5, 0.6], [0.5, 0.5]], "P1": [[0.5, 0.5], [0.5, 0.5]]}
            )
        )
        assert main(["validate", "--chain", str(bad)]) == EXIT_VALIDATION
        assert "row 0" in capsys.readouterr().err

    def test_not_ergodic_is_validation_failure(self, tmp_path):
        bad = tmp_path / "cycle.json"
        bad.write_text(
            json.dumps(
                {"name": "cycle", "n": 2, "P0": [[0.0, 1.0], [1.0, 0.0]], "P1": [[0.5, 0.5], [0.5, 0.5]]}
            )
        )
        assert main(["validate", "--chain", str(bad)]) == EXIT_VALIDATION

    def test_cap_exceeded(self, pair_file, capsys):
        code = main(
            ["stable", "--chain", str(pair_file), "--epsilon", "0.0001", "--cap", "3"]
        )
        assert code == EXIT_CAP
        assert "cap" in capsys.readouterr().err

    def test_corridor_over_cap(self, pair_file):
        code = main(
            ["corridor", "--chain", str(pair_file), "--steps", "50", "--cap", "10"]
        )
        assert code == EXIT_CAP

    def test_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["mixing", "--chain", "x.json", "--epsilon", "not-a-number"])
        assert excinfo.value.code == EXIT_USAGE
        with pytest.raises(SystemExit) as excinfo:
            main(["no-such-command"])
        assert excinfo.value.code == EXIT_USAGE

    def test_bound_failure_exit(self, pair_file, monkeypatch, capsys):
        import markovmix.cli as cli

        failing = BoundReport(
            chain_name="synthetic",
            eps_list=(0.1,),
            entries=(BoundEntry(0.1, "PROP2", 1.0, 2.0, False, "kernel=P0"),),
            grid_resolution=0.01,
            caps_hit=(),
        )
        monkeypatch.setattr(cli, "verify_all", lambda *a, **k: failing)
        code = main(["verify", "--chain", str(pair_file), "--epsilon", "0.1"])
        assert code == EXIT_BOUND_FAILED
        capsys.readouterr()

    def test_missing_file(self, tmp_path):
        assert main(["validate", "--chain", str(tmp_path / "nope.json")]) == EXIT_VALIDATION
