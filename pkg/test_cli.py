import csv
import json

import pytest

from graphoplex.main import EXIT_FAILURE, EXIT_LIMIT, EXIT_OK, EXIT_USAGE, build_parser, run
from graphoplex.selftest import run_selftest


def cli(*args):
    return run(list(args) + ["--no-log-files"])


def stdout_json(capsys):
    return json.loads(capsys.readouterr().out)


class TestHomology:
    def test_trivial_group_polygons(self, tmp_path):
        out = tmp_path / "trivial"
        status = cli("homology", "--species", "group:trivial", "--complex", "connected", "--kmax", "12",
                     "--rmin", "1", "--rmax", "1", "--boundary", "dE", "--output", str(out))
        assert status == EXIT_OK
        document = json.loads((tmp_path / "trivial.json").read_text())
        nonzero = [row["k"] for row in document["rows"] if row["betti"]]
        assert nonzero == [3, 7, 11]
        with open(tmp_path / "trivial.csv", newline="") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["k", "r", "dim", "rank_out", "rank_in", "betti", "exact"]
        assert len(rows) == 13

    def test_group_homology_defaults(self, capsys):
        assert cli("group-homology") == EXIT_OK
        document = stdout_json(capsys)
        assert document["species"] == "group:trivial"
        assert document["filter"] == "connected"
        assert [row["k"] for row in document["rows"] if row["betti"]] == [3, 7, 11]

    def test_group_homology_needs_a_group(self):
        assert cli("group-homology", "--species", "cc") == EXIT_USAGE

    def test_csv_to_stdout(self, capsys):
        assert cli("homology", "--kmax", "3", "--rmin", "1", "--rmax", "1", "--format", "csv") == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "k,r,dim,rank_out,rank_in,betti,exact"
        assert len(lines) == 4

    def test_json_only(self, tmp_path):
        out = tmp_path / "cc"
        assert cli("homology", "--kmax", "3", "--format", "json", "--output", str(out)) == EXIT_OK
        assert (tmp_path / "cc.json").exists()
        assert not (tmp_path / "cc.csv").exists()


class TestUsageErrors:
    @pytest.mark.parametrize("args", [
        ["homology", "--species", "group:nosuch"],
        ["homology", "--species", "xx"],
        ["homology", "--kmax", "15"],
        ["homology", "--kmin", "3", "--kmax", "2"],
        ["homology", "--kmax", "12", "--rmax", "6"],
        ["boundary", "--boundary", "dN", "--n", "abc"],
        ["homology", "--complex", "nope"],
        ["homology", "--species", "group", "--group-table", "/nonexistent/table.json"],
        ["homology", "--species", "group:s3"],
        ["verify", "--suite", "pairing-restriction", "--species", "aa"],
    ])
    def test_exit_code(self, args):
        assert cli(*args) == EXIT_USAGE

    def test_missing_subcommand(self):
        assert run([]) == EXIT_USAGE

    def test_dh_on_connected_complex_fails(self):
        assert cli("homology", "--complex", "connected", "--boundary", "dH", "--kmax", "3") == EXIT_FAILURE


class TestLimits:
    def test_cell_limit(self):
        assert cli("enumerate", "--kmax", "4", "--rmin", "3", "--rmax", "3", "--max-cells", "1") == EXIT_LIMIT


class TestEnumerate:
    def test_listing(self, capsys):
        assert cli("enumerate", "--kmin", "2", "--kmax", "2", "--rmin", "2", "--rmax", "2") == EXIT_OK
        document = stdout_json(capsys)
        [basis] = document["bases"]
        assert basis["k"] == 2 and basis["r"] == 2
        assert [c["automorphisms"] for c in basis["classes"]] == [12]

    def test_deterministic(self, tmp_path):
        for name in ("first", "second"):
            assert cli("enumerate", "--kmax", "4", "--rmax", "2", "--output", str(tmp_path / name)) == EXIT_OK
        assert (tmp_path / "first.json").read_bytes() == (tmp_path / "second.json").read_bytes()
        assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()

    def test_parallel_output_matches(self, tmp_path):
        assert cli("enumerate", "--kmax", "4", "--output", str(tmp_path / "serial")) == EXIT_OK
        assert cli("enumerate", "--kmax", "4", "--jobs", "2", "--output", str(tmp_path / "parallel")) == EXIT_OK
        assert (tmp_path / "serial.json").read_bytes() == (tmp_path / "parallel.json").read_bytes()

    def test_edge_bound(self, capsys):
        assert cli("enumerate", "--kmax", "4", "--rmax", "2", "--emax", "3") == EXIT_OK
        document = stdout_json(capsys)
        assert all(b["k"] + b["r"] - 1 <= 3 for b in document["bases"])


class TestBoundary:
    def test_symbolic_n(self, capsys):
        assert cli("boundary", "--kmin", "4", "--kmax", "4", "--rmin", "2", "--rmax", "2",
                   "--boundary", "dN", "--n", "sym") == EXIT_OK
        document = stdout_json(capsys)
        assert document["kind"] == "N"
        assert document["n"] == "sym"
        [matrix] = document["matrices"]
        assert (matrix["k"], matrix["r"]) == (4, 2)
        assert all("s" in entry["value"] or entry["value"].lstrip("-").isdigit() for entry in matrix["entries"])

    def test_edge_matrix_has_no_n(self, capsys):
        assert cli("boundary", "--kmax", "3", "--rmin", "1", "--rmax", "1") == EXIT_OK
        document = stdout_json(capsys)
        assert document["kind"] == "E"
        assert document["n"] is None


class TestVerify:
    def test_squares(self, capsys):
        assert cli("verify", "--suite", "squares", "--kmax", "4", "--rmax", "2") == EXIT_OK
        document = stdout_json(capsys)
        assert document["pass"] is True
        assert document["reports"][0]["suite"] == "squares"

    def test_moyal_report_is_written(self, tmp_path):
        out = tmp_path / "moyal"
        assert cli("verify", "--suite", "moyal", "--seed", "7", "--output", str(out)) == EXIT_OK
        document = json.loads((tmp_path / "moyal.json").read_text())
        assert document["reports"][0]["checked"] > 0
        with open(tmp_path / "moyal.csv", newline="") as f:
            assert list(csv.reader(f)) == [["suite", "check", "message", "witness"]]

    def test_selftest(self, capsys):
        assert cli("selftest") == EXIT_OK
        document = stdout_json(capsys)
        assert document["pass"] is True

    def test_selftest_reports_a_crashing_check(self):
        def broken_runner(args):
            raise RuntimeError("runner exploded")

        report = run_selftest(broken_runner)
        assert not report.passed
        crashed = [f.message for f in report.failures if f.witness.get("error", "").startswith("RuntimeError")]
        assert crashed == ["verify squares on cc passes", "unknown group is a usage error"]
        assert report.checked > len(crashed)

    def test_empty_window_is_a_failure(self, capsys):
        assert cli("verify", "--suite", "adjoint", "--kmax", "1") == EXIT_FAILURE
        document = stdout_json(capsys)
        assert document["reports"][0]["failures"][0]["check"] == "vacuous"


def test_every_subcommand_is_registered():
    parser = build_parser()
    subcommands = next(action for action in parser._actions if action.dest == "command")
    assert set(subcommands.choices) == {"enumerate", "boundary", "homology", "group-homology", "verify", "selftest"}
