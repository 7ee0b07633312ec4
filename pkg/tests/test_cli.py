"""Command line interface tests.

Drives `main` in process: exit codes (0 success, 1 failed property, 2 usage
errors, 3 internal certification failures), the generate -> verify closed
loop, byte determinism of repeated runs, and the output formats.
"""

from __future__ import annotations

import json

import pytest

from orthoseq.cli import main
from orthoseq.verify import VerificationReport


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


# ----------------------------------------------------------------------
# exit codes


def test_generate_succeeds(capsys):
    code, out = run(capsys, "generate", "--family", "de-bruijn", "--sigma", "3", "-k", "2")
    assert code == 0
    assert out.splitlines() == ["010211220", "011002212"]


def test_verify_pass_is_zero(capsys):
    code, out = run(
        capsys, "verify", "--property", "de-bruijn", "--sigma", "3", "-k", "2",
        "--word", "012002211",
    )
    assert code == 0
    assert "PASS" in out


def test_verify_failure_is_one(capsys):
    code, out = run(
        capsys, "verify", "--property", "de-bruijn", "--sigma", "3", "-k", "2",
        "--word", "012002212",
    )
    assert code == 1
    assert "FAIL" in out and "witness" in out


def test_self_orthogonality_failure_names_witness(capsys):
    code, out = run(
        capsys, "verify", "--property", "self-orthogonal", "--sigma", "3", "-k", "2",
        "--word", "000111222020212101",
    )
    assert code == 1
    assert "202" in out


def test_usage_errors_are_two(capsys, tmp_path):
    # no alphabet given
    assert main(["verify", "--property", "de-bruijn", "--word", "0011"]) == 2
    capsys.readouterr()
    # empty words file
    empty = tmp_path / "none.txt"
    empty.write_text("# nothing here\n")
    code = main(
        ["verify", "--property", "de-bruijn", "--sigma", "2", "--words-file", str(empty)]
    )
    assert code == 2
    capsys.readouterr()
    # --dna pins sigma to 4
    assert main(["generate", "--family", "kautz", "--dna", "--sigma", "5"]) == 2
    capsys.readouterr()
    # argparse rejects an unknown family with its own exit code 2
    assert main(["generate", "--family", "mystery", "--sigma", "3"]) == 2
    capsys.readouterr()


def test_certification_failure_is_three(capsys, monkeypatch):
    # force the internal certificate to report a failure
    def doomed(word, sigma, k):
        return VerificationReport("de_bruijn(forced)", False, witness=(0,))

    monkeypatch.setattr("orthoseq.constructions.verify.is_de_bruijn", doomed)
    code = main(["generate", "--family", "de-bruijn", "--sigma", "3", "-k", "2"])
    assert code == 3
    capsys.readouterr()


# ----------------------------------------------------------------------
# the generate -> verify closed loop


@pytest.mark.parametrize(
    "gen,ver",
    [
        (
            ["--family", "de-bruijn", "--sigma", "3", "-k", "2", "--ell", "2"],
            ["--property", "de-bruijn", "--sigma", "3", "-k", "2", "--ell", "2"],
        ),
        (
            ["--family", "kautz", "--dna", "-k", "2", "--ell", "2"],
            ["--property", "kautz", "--dna", "-k", "2", "--ell", "2"],
        ),
        (
            ["--family", "balanced-de-bruijn", "-c", "2", "-b", "2", "-k", "2"],
            ["--property", "balanced", "--sigma", "4", "-k", "2", "-b", "2", "--ell", "1"],
        ),
        (
            ["--family", "fixed-weight-kautz", "--dna", "-k", "3", "--band", "1", "2"],
            ["--property", "fixed-weight-kautz", "--dna", "-k", "3", "--band", "1", "2"],
        ),
    ],
)
def test_generated_collections_verify(capsys, tmp_path, gen, ver):
    out_file = tmp_path / "words.txt"
    assert main(["generate", *gen, "-o", str(out_file)]) == 0
    assert main(["verify", *ver, "--words-file", str(out_file)]) == 0
    capsys.readouterr()


def test_family_aliases_match_long_names(capsys):
    _, long_form = run(capsys, "generate", "--family", "de-bruijn", "--sigma", "3")
    _, short_form = run(capsys, "generate", "--family", "ortho-db", "--sigma", "3")
    assert long_form == short_form


# ----------------------------------------------------------------------
# determinism


def test_identical_runs_are_byte_identical(capsys, tmp_path):
    argv = [
        "generate", "--family", "kautz", "--sigma", "4", "-k", "2", "--ell", "2",
        "--format", "json",
    ]
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(argv + ["-o", str(first)]) == 0
    assert main(argv + ["-o", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    capsys.readouterr()


# ----------------------------------------------------------------------
# output formats


def test_generate_json_document(capsys):
    code, out = run(
        capsys, "generate", "--family", "de-bruijn", "--sigma", "3", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["sigma"] == 3 and doc["k"] == 2
    assert doc["count"] == len(doc["words"]) == 2
    assert all(report["holds"] for report in doc["certificate"])


def test_generate_csv(capsys):
    code, out = run(
        capsys, "generate", "--family", "de-bruijn", "--sigma", "3", "--format", "csv"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "index,length,word"
    assert lines[1] == "0,9,010211220"


def test_generate_fasta_uses_canonical_rotation(capsys):
    code, out = run(
        capsys, "generate", "--family", "de-bruijn", "--sigma", "3", "--format", "fasta"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith(">de-bruijn_0 ")
    assert "linearized at canonical rotation" in lines[0]
    # 001021122 is the least rotation of the generated word 010211220
    assert lines[1] == "001021122"


def test_verify_json_reports(capsys):
    code, out = run(
        capsys, "verify", "--property", "de-bruijn", "--sigma", "3", "-k", "2",
        "--word", "012002211", "--format", "json",
    )
    assert code == 0
    reports = json.loads(out)
    assert reports and all(r["holds"] for r in reports)


def test_enumerate_counts_all_coverings(capsys):
    code, out = run(capsys, "enumerate", "--sigma", "3", "-k", "2")
    assert code == 0
    assert len(out.splitlines()) == 24


def test_enumerate_csv_and_guard(capsys):
    code, out = run(capsys, "enumerate", "--sigma", "2", "-k", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "index,length,word"
    assert len(out.splitlines()) == 3
    assert main(["enumerate", "--sigma", "3", "-k", "2", "--max-results", "5"]) == 2
    capsys.readouterr()


def test_export_dot(capsys):
    code, out = run(capsys, "export", "--sigma", "3", "-k", "2")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("->") == 9


def test_export_json(capsys):
    code, out = run(capsys, "export", "--dna", "-k", "3", "--kautz", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 12
    assert len(doc["arcs"]) == 36


def test_export_weight_band_graph(capsys):
    code, out = run(
        capsys, "export", "--dna", "-k", "3", "--kautz", "--band", "1", "1"
    )
    assert code == 0
    assert out.count("->") == 16  # the weight-1 adjacent-distinct 3-words
