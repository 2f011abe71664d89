"""Tests for the command line interface."""

import json

from src.macdonald_interp.__main__ import EXIT_PASS, EXIT_USAGE, main


def test_compute_interp(capsys) -> None:
    """I_(1)|2 = x1 + x2 - (1 + t) has three terms."""
    assert main(["compute", "interp", "--mu", "1", "--n", "2"]) == EXIT_PASS
    document = json.loads(capsys.readouterr().out)
    assert document["vars"] == ["x1", "x2"]
    assert len(document["terms"]) == 3


def test_compute_dual_family(capsys) -> None:
    """Jack duals are printed as factored rational functions."""
    assert main(["compute", "dual", "--mu", "1", "--n", "1", "--family", "jack"]) == EXIT_PASS
    assert json.loads(capsys.readouterr().out)


def test_compute_bad_input(capsys) -> None:
    """Malformed partitions and counts exit with the usage code."""
    assert main(["compute", "interp", "--mu", "1,2", "--n", "2"]) == EXIT_USAGE
    assert "Error:" in capsys.readouterr().err
    assert main(["compute", "interp", "--mu", "1", "--n", "0"]) == EXIT_USAGE
    assert main(["compute", "nothing", "--mu", "1", "--n", "2"]) == EXIT_USAGE


def test_nodes(capsys) -> None:
    """X_2((1)) has two coordinates."""
    assert main(["nodes", "--lambda", "1", "--n", "2"]) == EXIT_PASS
    assert len(json.loads(capsys.readouterr().out)) == 2


def test_verify(capsys) -> None:
    """A small Cauchy run passes and is reproducible without timing."""
    argv = ["verify", "cauchy", "--n", "1", "--k", "1", "--cutoff", "3", "--no-timing"]
    assert main(argv) == EXIT_PASS
    first = capsys.readouterr().out
    document = json.loads(first)
    assert document["status"] == "pass"
    assert "millis" not in document["reports"][0]
    assert main(argv) == EXIT_PASS
    assert capsys.readouterr().out == first


def test_verify_bad_flags() -> None:
    """Unknown suites and out-of-range flags exit with the usage code."""
    assert main(["verify", "nope"]) == EXIT_USAGE
    assert main(["verify", "cauchy", "--n", "0"]) == EXIT_USAGE
    assert main(["verify", "cauchy", "--profile", "laptop"]) == EXIT_USAGE


def test_bench(capsys) -> None:
    """One line per report and a total."""
    assert main(["bench", "--suite", "one-row", "--suite", "vanishing", "--n", "1", "--cutoff", "2"]) == EXIT_PASS
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3
    assert json.loads(lines[-1])["suites"] == 2
