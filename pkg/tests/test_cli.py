import csv
import json

import pytest

from core.config.settings import RunSettings
from core.errors import ExitCode
from core.managers.trial_runner import CSV_FIELDS
from main import SplitPoolApp


def run(*argv, threads=1):
    return SplitPoolApp(RunSettings(threads=threads, log_level="WARNING")).run(list(argv))


def read_csv(path):
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        return reader.fieldnames, list(reader)


def without_timing(rows):
    return [{key: value for key, value in row.items() if key != "decode_ns"} for row in rows]


class TestDesign:

    def test_explicit_dump(self, tmp_path):
        out = tmp_path / "design.json"
        assert run("design", "--n", "1024", "--k", "16", "--variant", "explicit", "--seed", "7",
                   "--out", str(out)) == ExitCode.OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["t"] == 1920
        assert data["params"]["seed"] == 7
        assert len(data["levels"]) == 6
        assert len(data["final"]) == 12

    def test_dump_is_byte_identical(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        for out in (first, second):
            assert run("design", "--n", "1024", "--k", "16", "--seed", "0x7", "--out", str(out)) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_hashed_dump(self, tmp_path):
        out = tmp_path / "hashed.json"
        assert run("design", "--n", "1024", "--k", "16", "--variant", "hashed", "--r", "8",
                   "--out", str(out)) == ExitCode.OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["r"] == 8
        assert data["params"]["Ctil"] == 2
        assert len(data["levels"]) == 12
        assert all(len(entry["coeffs"]) == 8 for entry in data["levels"] + data["final"])
        assert {entry["m"] for entry in data["final"]} == {10}

    def test_saffron_dump(self, tmp_path):
        out = tmp_path / "saffron.json"
        assert run("design", "--n", "1024", "--k", "16", "--variant", "saffron", "--out", str(out)) == 0
        assert json.loads(out.read_text(encoding="utf-8"))["t"] == 10240

    def test_stdout(self, capsys):
        assert run("design", "--n", "16", "--k", "2", "--C", "16") == ExitCode.OK
        assert json.loads(capsys.readouterr().out)["t"] == 108


class TestSimulate:

    def test_csv_schema(self, tmp_path):
        out = tmp_path / "sim.csv"
        assert run("simulate", "--n", "1024", "--k", "16", "--trials", "5", "--seed", "1",
                   "--out", str(out)) == ExitCode.OK
        fields, rows = read_csv(out)
        assert fields == CSV_FIELDS
        assert len(rows) == 6
        assert [row["trial"] for row in rows] == ["0", "1", "2", "3", "4", "summary"]
        assert all(row["success"] in ("0", "1") for row in rows[:-1])
        assert all(row["t"] == "1920" for row in rows[:-1])
        assert rows[-1]["seed"] == "1"
        assert 0.0 <= float(rows[-1]["success"]) <= 1.0
        assert len({row["seed"] for row in rows[:-1]}) == 5

    def test_reproducible(self, tmp_path):
        outputs = []
        for name in ("a.csv", "b.csv"):
            out = tmp_path / name
            assert run("simulate", "--n", "512", "--k", "8", "--variant", "hashed", "--trials", "4",
                       "--seed", "9", "--out", str(out)) == 0
            outputs.append(without_timing(read_csv(out)[1]))
        assert outputs[0] == outputs[1]

    def test_worker_count_does_not_change_results(self, tmp_path):
        serial, parallel = tmp_path / "serial.csv", tmp_path / "parallel.csv"
        assert run("simulate", "--n", "512", "--k", "8", "--trials", "6", "--seed", "3",
                   "--out", str(serial)) == 0
        assert run("simulate", "--n", "512", "--k", "8", "--trials", "6", "--seed", "3",
                   "--out", str(parallel), threads=2) == 0
        assert without_timing(read_csv(serial)[1]) == without_timing(read_csv(parallel)[1])

    def test_no_defectives(self, tmp_path):
        out = tmp_path / "empty.csv"
        assert run("simulate", "--n", "1024", "--k", "16", "--defectives", "0", "--trials", "3",
                   "--out", str(out)) == ExitCode.OK
        rows = read_csv(out)[1]
        assert all(row["success"] == "1" and row["n_total"] == "0" for row in rows[:-1])

    def test_too_many_defectives(self):
        assert run("simulate", "--n", "1024", "--k", "16", "--defectives", "17",
                   "--trials", "1") == ExitCode.USAGE

    @pytest.mark.parametrize("variant", ["saffron", "bloom"])
    def test_baselines(self, tmp_path, variant):
        out = tmp_path / "base.csv"
        assert run("simulate", "--n", "1024", "--k", "16", "--variant", variant, "--trials", "3",
                   "--out", str(out)) == 0
        rows = read_csv(out)[1]
        assert all(row["variant"] == variant and row["r"] == "0" for row in rows)


class TestExitCodes:

    def test_bad_parameter(self, tmp_path):
        assert run("design", "--n", "1024", "--k", "16", "--C", "12") == ExitCode.USAGE

    @pytest.mark.parametrize("argv", [
        ("design", "--variant", "nope"),
        ("frobnicate",),
        (),
        ("design", "--seed", "-3"),
    ])
    def test_usage_errors(self, argv):
        assert run(*argv) == ExitCode.USAGE

    def test_help(self):
        assert run("--help") == ExitCode.OK

    def test_subcommand_help(self, capsys):
        assert run("verify", "--help") == ExitCode.OK
        assert "verify - " in capsys.readouterr().out

    def test_internal_errors_are_raised(self, monkeypatch):
        app = SplitPoolApp(RunSettings(threads=1, log_level="WARNING"))
        command = app.command_registry.get_command("design")

        def broken(args):
            raise RuntimeError("boom")

        monkeypatch.setattr(command, "execute", broken)
        with pytest.raises(RuntimeError):
            app.run(["design"])

    def test_unwritable_output(self, tmp_path):
        assert run("design", "--n", "64", "--k", "4", "--out", str(tmp_path)) == ExitCode.IO

    def test_verification_failure(self, tmp_path):
        out = tmp_path / "verify.json"
        assert run("verify", "--check", "leaf-tail", "--q", "0.3", "--hmax", "3",
                   "--out", str(out)) == ExitCode.VERIFICATION
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["pass"] is False


class TestVerify:

    @pytest.mark.parametrize("argv", [
        ("--check", "rwise", "--m", "3", "--r", "3"),
        ("--check", "rwise", "--m", "3", "--r", "2", "--bits", "1"),
        ("--check", "branching", "--q", "0.0625", "--trials", "100000"),
        ("--check", "leaf-tail", "--q", "0.0833", "--hmax", "10"),
        ("--check", "leaf-mgf"),
        ("--check", "mean", "--n", "1024", "--k", "16", "--trials", "20"),
        ("--check", "hashed-pd", "--n", "1024", "--k", "16", "--r", "7", "--trials", "10"),
    ])
    def test_passing_checks(self, tmp_path, argv):
        out = tmp_path / "verify.json"
        assert run("verify", *argv, "--out", str(out)) == ExitCode.OK
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["pass"] is True
        assert all(check["pass"] for check in data["checks"])

    def test_branching_reports_both_checks(self, tmp_path):
        out = tmp_path / "verify.json"
        run("verify", "--check", "branching", "--trials", "50000", "--out", str(out))
        names = [check["check"] for check in json.loads(out.read_text(encoding="utf-8"))["checks"]]
        assert names == ["branching-bound", "branching-mc"]


class TestSweepAndBench:

    def test_sweep_rows(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run("sweep", "--n", "1024", "--k", "16,32", "--variant", "explicit,saffron",
                   "--trials", "3", "--out", str(out)) == ExitCode.OK
        rows = read_csv(out)[1]
        assert len(rows) == 2 * 2 * 4
        summaries = [row for row in rows if row["trial"] == "summary"]
        assert [(row["variant"], row["k"]) for row in summaries] == [
            ("explicit", "16"), ("explicit", "32"), ("saffron", "16"), ("saffron", "32"),
        ]

    def test_sweep_grid_file(self, tmp_path):
        grid = tmp_path / "grid.json"
        grid.write_text(json.dumps({"n": [256], "k": [4], "variant": ["bloom"], "trials": 2}),
                        encoding="utf-8")
        out = tmp_path / "sweep.csv"
        assert run("sweep", "--grid", str(grid), "--out", str(out)) == 0
        assert len(read_csv(out)[1]) == 3

    def test_sweep_uses_variant_defaults(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run("sweep", "--n", "256", "--k", "4", "--variant", "hashed,saffron", "--C", "8,16",
                   "--trials", "2", "--out", str(out)) == ExitCode.OK
        rows = read_csv(out)[1]
        hashed = [row for row in rows if row["variant"] == "hashed"]
        saffron = [row for row in rows if row["variant"] == "saffron"]
        assert {row["Ctil"] for row in hashed} == {"2"}
        assert {row["C"] for row in hashed} == {"8", "16"}
        assert len(saffron) == 3

    def test_sweep_unknown_variant(self):
        assert run("sweep", "--variant", "explicit,bogus", "--trials", "1") == ExitCode.USAGE

    def test_bench(self, tmp_path):
        out = tmp_path / "bench.json"
        assert run("bench", "--n", "1024", "--k", "16,32", "--variant", "hashed", "--warmup", "0",
                   "--iterations", "2", "--out", str(out)) == ExitCode.OK
        reports = json.loads(out.read_text(encoding="utf-8"))["bench"]
        assert [report["k"] for report in reports] == [16, 32]
        assert all(report["field_multiplications"] > 0 for report in reports)
        assert all(report["median_decode_ns"] >= 0 for report in reports)

    def test_bench_bad_k_list(self):
        assert run("bench", "--k", "16,x") == ExitCode.USAGE
