"""Tests for the gf2trace command line: output and exit codes."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from unittest.mock import patch

import pytest
import yaml

from gf2trace.cli import build_parser, run
from gf2trace.tools import golden

# ── Parser ────────────────────────────────────────────────────────────────────


def test_parser_defaults() -> None:
    args = build_parser().parse_args(["counts"])
    assert (args.n_min, args.n_max, args.method) == (2, 12, "enumerate")
    assert args.output_format == "text"
    assert args.threads is None


@pytest.mark.parametrize(
    "argv", [[], ["frobnicate"], ["counts", "--method", "guess"], ["transform", "0x3B"]]
)
def test_usage_errors_exit_2(argv: list[str]) -> None:
    """argparse rejections surface as exit code 2, never as a traceback."""
    assert run(argv) == 2


def test_version(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["--version"]) == 0
    assert "gf2trace" in capsys.readouterr().out


# ── classify / transform ──────────────────────────────────────────────────────


@pytest.mark.parametrize(
    ("poly", "expected"),
    [
        ("0x3B", "irreducible, bucket S_{1,1}, signature 1"),
        ("x^5+x^2+1", "irreducible, bucket S_{0,0}, signature 0"),
        ("x^5+x^4+x^3+x^2+x+1", "reducible"),
        ("x+1", "irreducible, degree 1 (no bucket)"),
    ],
)
def test_classify_text(capsys: pytest.CaptureFixture[str], poly: str, expected: str) -> None:
    assert run(["classify", poly]) == 0
    assert capsys.readouterr().out == expected + "\n"


def test_classify_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["classify", "--format", "json", "x^5+x^4+x^3+x+1"]) == 0
    info = json.loads(capsys.readouterr().out)
    assert info == {
        "poly": "0x3B",
        "degree": 5,
        "irreducible": True,
        "bucket": "S_{1,1}",
        "signature": 1,
    }


def test_classify_malformed_polynomial(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["classify", "x^5+y"]) == 2
    assert "gf2trace classify: error: malformed polynomial" in capsys.readouterr().err


@pytest.mark.parametrize(
    ("argv", "expected"),
    [
        (["--op", "psi", "0x3B"], "0x25"),
        (["--op", "psi_inv", "0x37"], "0x29"),
        (["--op", "gl2", "--matrix", "0,1,1,1", "0x3B"], "0x25"),
        (["--op", "q", "--style", "symbolic", "x+1"], "x^2+x+1"),
        (["--op", "q_root", "--style", "symbolic", "x^4+x^3+x^2+x+1"], "x^2+x+1"),
        (["--op", "reciprocal", "--style", "symbolic", "x^3+x+1"], "x^3+x^2+1"),
    ],
)
def test_transform(capsys: pytest.CaptureFixture[str], argv: list[str], expected: str) -> None:
    assert run(["transform", *argv]) == 0
    assert capsys.readouterr().out.strip() == expected


def test_transform_gl2_needs_matrix(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["transform", "--op", "gl2", "0x3B"]) == 2
    assert "--matrix" in capsys.readouterr().err


def test_transform_rejects_low_degree() -> None:
    assert run(["transform", "--op", "psi", "x+1"]) == 2


# ── counts / table / verify ───────────────────────────────────────────────────


def test_counts_all_routes_csv(capsys: pytest.CaptureFixture[str]) -> None:
    """The cross-checked routes reproduce the reference row for every degree."""
    argv = ["counts", "--min", "2", "--max", "12", "--method", "all", "--format", "csv"]
    assert run([*argv, "--threads", "1"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [int(r["n"]) for r in rows] == list(range(2, 13))
    assert {r["method"] for r in rows} == {"all"}
    for r in rows:
        expected = golden.get_row(int(r["n"]))
        assert tuple(int(r[k]) for k in ("s00", "s01", "s10", "s11")) == expected


@pytest.mark.parametrize(
    ("method", "route"), [("field", "analytic+field"), ("analytic", "analytic")]
)
def test_counts_single_route_json(
    capsys: pytest.CaptureFixture[str], method: str, route: str
) -> None:
    assert run(["counts", "--min", "5", "--max", "6", "--method", method, "--format", "json"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert [r["method"] for r in records] == [route, route]
    assert records[0]["s11"] == 2


def test_counts_budget_is_a_usage_error(capsys: pytest.CaptureFixture[str]) -> None:
    """A scan over the budget is reported on stderr and exits 2."""
    assert run(["counts", "--min", "27", "--max", "27"]) == 2
    assert "--long-run" in capsys.readouterr().err


def test_counts_field_budget(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["counts", "--min", "12", "--max", "12", "--method", "field", "--field-max", "8"]
    assert run(argv) == 2
    assert "--field-max" in capsys.readouterr().err


def test_counts_empty_range() -> None:
    assert run(["counts", "--min", "6", "--max", "5"]) == 2


def test_bad_thread_env(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("GF2TRACE_THREADS", "lots")
    assert run(["counts", "--min", "3", "--max", "3"]) == 2


def test_table_yaml(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["table", "--min", "3", "--max", "5", "--format", "yaml"]) == 0
    records = yaml.safe_load(capsys.readouterr().out)
    assert [r["n"] for r in records] == [3, 4, 5]
    assert {r["method"] for r in records} == {"enumerate"}


def test_verify_passes(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["verify", "2", "10"]) == 0
    out = capsys.readouterr().out
    assert out.rstrip().endswith("all rows pass")
    assert out.count("PASS") == 9


def test_verify_single_degree_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["verify", "7", "--format", "json"]) == 0
    (record,) = json.loads(capsys.readouterr().out)
    assert record["n"] == 7
    assert record["passed"] is True


def test_verify_mismatch_exits_1(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    """A doctored reference row turns verify into a failed check."""
    (tmp_path / "reference_counts.yaml").write_text("rows:\n  5: [2, 1, 1, 3]\n")
    with patch.object(golden, "_DATA_DIR", tmp_path):
        assert run(["verify", "5"]) == 1
    out = capsys.readouterr().out
    assert "FAIL s11: expected 3, got 2" in out
    assert "1 row(s) fail" in out


# ── bijection / sri / bench ───────────────────────────────────────────────────


def test_bijection_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["bijection", "3", "9", "--format", "json", "--sample", "2"]) == 0
    documents = json.loads(capsys.readouterr().out)
    assert [d["n"] for d in documents] == [3, 5, 7, 9]
    assert all(d["passed"] for d in documents)
    assert all(len(d["sample"]) <= 2 for d in documents)


def test_bijection_text_with_transitions(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["bijection", "5", "--transitions"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("n=5: |S11|=2 |S00|=2")
    assert "PASS" in out


def test_bijection_transitions_yaml(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["bijection", "7", "--transitions", "--format", "yaml"]) == 0
    (doc,) = yaml.safe_load(capsys.readouterr().out)
    assert doc["transitions"]
    diagonal = [t for t in doc["transitions"] if t["source"] in ("S_{1,1}", "S_{0,0}")]
    assert all(len(t["targets"]) == 1 for t in diagonal)


def test_bijection_without_odd_degree() -> None:
    assert run(["bijection", "2", "2"]) == 2


@pytest.mark.parametrize("n", [2, 5, 8, 12])
def test_sri_passes(capsys: pytest.CaptureFixture[str], n: int) -> None:
    assert run(["sri", str(n)]) == 0
    assert capsys.readouterr().out.rstrip().endswith("PASS")


def test_sri_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert run(["sri", "8", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["parity_verdict"] == 1
    assert doc["s11"] % 2 == 1
    assert doc["descent"] == [[8, 1], [4, 1], [2, 1], [1, 1]]
    assert doc["passed"] is True


def test_bench(capsys: pytest.CaptureFixture[str]) -> None:
    """A generous threshold passes and a zero threshold fails."""
    assert run(["bench", "--degree", "10", "--threshold", "600"]) == 0
    assert "OK" in capsys.readouterr().out
    assert run(["bench", "--degree", "10", "--threshold", "0"]) == 1
