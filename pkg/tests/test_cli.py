import json
import os
from pathlib import Path
from unittest.mock import patch

import pytest

from config import Settings
from main import EXIT_ERROR, EXIT_FALSE, EXIT_OK, build_parser, main
from monitoring import pipeline_monitor
from ui.commands import _parse_members, command_namespace, parse_keep, run_command

CORPUS_DIR = Path(__file__).parent.parent / "data" / "corpus"


def corpus_file(name):
    return str(CORPUS_DIR / f"{name}.qpa")


class TestCommandLine:
    """Test cases for the command-line driver."""

    def setup_method(self):
        """Set up test fixtures."""
        pipeline_monitor.reset()

    def test_check(self, capsys):
        """Test check prints the algebra report and exits 0."""
        assert main(["check", corpus_file("two_zero_relations")]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["dim"] == 11
        assert report["gldim_le_2"] is True
        assert report["minimal_relations"] == ["alpha*beta", "gamma*delta"]

    def test_output_is_canonical_json(self, capsys):
        """Test reports are printed with sorted keys."""
        main(["check", corpus_file("a2")])
        out = capsys.readouterr().out
        assert out == json.dumps(json.loads(out), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def test_text_format(self, capsys):
        """Test the text format renders scalars and tables."""
        assert main(["check", corpus_file("a2"), "--format", "text"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "relext.algebra/1" in out
        assert "[basis]" in out

    def test_ar_dot(self, capsys):
        """Test the AR quiver as DOT."""
        assert main(["ar", corpus_file("a2"), "--format", "dot"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("digraph AR {")

    def test_partial(self, capsys):
        """Test the partial extension report of the corpus keep."""
        assert main(["partial", corpus_file("two_zero_relations"), "--keep", "lambda"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["relations"] == ["alpha*beta", "gamma*delta", "lambda*alpha", "beta*lambda"]
        assert report["transitivity"]["holds"] is True

    def test_bimodule_not_summand_exits_1(self, capsys):
        """Test a generated subbimodule that is not a summand gives exit code 1."""
        code = main(["bimodule", corpus_file("kite"), "--generator", "u + v"])
        assert code == EXIT_FALSE
        report = json.loads(capsys.readouterr().out)
        assert report["bimodule"]["dim"] == 7
        assert report["direct_summand"] is False

    def test_slices_local(self, capsys):
        """Test checking a given set of dimension vectors."""
        assert main(["slices", corpus_file("a2"), "--local", "0,1;1,1"]) == EXIT_OK
        assert main(["slices", corpus_file("a2"), "--local", "0,1;1,0"]) == EXIT_FALSE
        capsys.readouterr()

    def test_missing_file(self, capsys):
        """Test an unreadable input exits 2 with a message on stderr."""
        assert main(["check", "does/not/exist.qpa"]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("Error:")

    def test_parse_error(self, tmp_path, capsys):
        """Test a malformed file exits 2 and reports its location."""
        bad = tmp_path / "bad.qpa"
        bad.write_text("vertices 1 2\narrow a 1 3\n")
        assert main(["check", str(bad)]) == EXIT_ERROR
        assert ":2:11:" in capsys.readouterr().err

    def test_infinite_dimensional_input(self, tmp_path, capsys):
        """Test a free loop exits 2."""
        loop = tmp_path / "loop.qpa"
        loop.write_text("vertices 1\narrow l 1 1\n")
        assert main(["check", str(loop), "--length-cap", "8"]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("Error:")

    def test_field_override(self, capsys):
        """Test --field replaces the ground field of the file."""
        assert main(["check", corpus_file("a2"), "--field", "F 5"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["dim"] == 3

    @patch.dict(os.environ, {"RELEXT_KNIT_CAP": "many"})
    def test_bad_environment(self, capsys):
        """Test a malformed setting exits 2 before running the command."""
        assert main(["check", corpus_file("a2")]) == EXIT_ERROR
        assert "RELEXT_KNIT_CAP" in capsys.readouterr().err

    def test_metrics_out(self, tmp_path, capsys):
        """Test --metrics-out writes the monitor export."""
        target = tmp_path / "metrics.json"
        assert main(["--metrics-out", str(target), "check", corpus_file("a2")]) == EXIT_OK
        capsys.readouterr()
        data = json.loads(target.read_text())
        assert data["summary"]["total_operations"] == 1
        assert data["metrics_history"][0]["operation"] == "check"

    def test_corpus_list(self, capsys):
        """Test the corpus manifest lists every entry."""
        assert main(["corpus", "list"]) == EXIT_OK
        names = [row["name"] for row in json.loads(capsys.readouterr().out)["entries"]]
        assert "two_zero_relations" in names
        assert "e6_local" in names

    def test_unknown_command(self):
        """Test argparse rejects unknown subcommands."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["knit"])


class TestCommandHelpers:
    """Test cases for argument helpers and programmatic runs."""

    def test_parse_keep(self):
        """Test keep lists split on commas and spaces."""
        assert parse_keep("lambda, mu") == ["lambda", "mu"]
        assert parse_keep("") == []
        assert parse_keep(None) is None

    def test_parse_members(self):
        """Test dimension vector lists."""
        assert _parse_members("(1,0); (1,1)") == [[1, 0], [1, 1]]

    def test_run_command(self):
        """Test commands run from a namespace without the parser."""
        result = run_command("decompose", command_namespace(file=corpus_file("independent_potential")),
                             Settings())
        assert result.exit_code == 0
        assert result.report["count"] == 2

    @pytest.mark.slow
    def test_regenerate_is_deterministic(self, tmp_path):
        """Test regenerating the corpus twice writes identical reports."""
        first, second = tmp_path / "first", tmp_path / "second"
        for out in (first, second):
            run_command("corpus", command_namespace(action="regenerate", out=str(out)), Settings())
        names = sorted(p.name for p in first.iterdir())
        assert names == sorted(p.name for p in second.iterdir())
        for name in names:
            assert (first / name).read_text() == (second / name).read_text(), name
