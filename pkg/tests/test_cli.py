"""End-to-end tests for the ``absix`` command-line interface.

Everything drives ``absix.cli.main`` in-process (plus one subprocess smoke
test), asserting exit codes, stream routing, and byte-level determinism.
"""

import json
import pathlib
import re
import subprocess
import sys

import pytest

import absix
from absix import __version__
from absix.absic import (
    absolute_ic,
    boundary_cohomology,
    compact_table,
    plain_table,
)
from absix.atlas import dump_atlas
from absix.cli import atlas_hash, main
from absix.corpus import CATALOGUE, builtin
from absix.plus import ih_one_point

DATA_DIR = pathlib.Path(absix.__file__).parent / "corpus"

# Two disjoint projective lines: structurally valid but disconnected, so the
# one-point compactification table must be refused.
DISCONNECTED_DOC = {
    "dimension": 1,
    "components": ["P"],
    "strata": [
        {
            "subset": [],
            "cohomology": [[[0, 0], [0, 0]], [], [[1, 1], [1, 1]]],
            "pairings": [
                [["1", "0"], ["0", "1"]], [],
                [["1", "0"], ["0", "1"]],
            ],
        },
        {"subset": ["P"], "cohomology": [[[0, 0]]], "pairings": [[["1"]]]},
    ],
    "restrictions": [
        {"from": [], "to": ["P"], "matrices": [[["1", "0"]]]}
    ],
}


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _write_doc(tmp_path, doc, name="case.atlas.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def _broken_pairing_doc():
    doc = dump_atlas(builtin("a1"))
    stratum = next(s for s in doc["strata"] if s["subset"] == [])
    stratum["pairings"][0] = [["0"]]
    return doc


def _expect_json_table(t):
    return {
        "kind": t.kind,
        "byDegree": {
            str(n): {
                str(w): {
                    f"{p},{q}": k for (p, q), k in obj.hodge_numbers().items()
                }
                for w, obj in t.degree(n).pieces
            }
            for n in t.degrees()
        },
    }


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def test_validate_accepts_every_shipped_file(capsys):
    files = sorted(DATA_DIR.glob("*.atlas.json"))
    assert files
    for f in files:
        code, out, err = run_cli(capsys, "validate", str(f))
        assert (code, out, err) == (0, "atlas valid\n", ""), f.name


def test_validate_prints_findings_and_fails(tmp_path, capsys):
    path = _write_doc(tmp_path, _broken_pairing_doc())
    code, out, err = run_cli(capsys, "validate", path)
    assert code == 1
    assert "PairingNotPerfect" in out
    assert "atlas valid" not in out


def test_validate_missing_file_is_io_error(tmp_path, capsys):
    code, out, err = run_cli(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 2
    assert "cannot read" in err
    assert out == ""


def test_validate_malformed_json_is_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"dimension": 1,', encoding="utf-8")
    code, out, err = run_cli(capsys, "validate", str(path))
    assert code == 2
    assert err.startswith("parse error at line 1")


# ---------------------------------------------------------------------------
# compute: target resolution and error routing
# ---------------------------------------------------------------------------

def test_compute_corpus_reference_text_report(capsys):
    code, out, err = run_cli(capsys, "compute", "@a1")
    assert (code, err) == (0, "")
    assert out.startswith("atlas: a1\n")
    assert "hash: sha256:" in out
    assert "H^n(X), weight-graded [plain]" in out
    assert "absolute intersection cohomology H^n_!*(X) [absoluteIC]" in out
    assert "IH^n of the one-point compactification [onePointIC]" in out
    assert "weight criteria:" in out
    assert "verdict: true" in out
    assert "candidate comparison:" in out
    assert "matchesPlus: true" in out


def test_compute_unknown_corpus_name_is_domain_error(capsys):
    code, out, err = run_cli(capsys, "compute", "@no_such_atlas")
    assert code == 1
    assert err.startswith("error:")
    assert "no corpus atlas named" in err


def test_compute_bad_parameter_values_are_parse_errors(capsys):
    code, _, err = run_cli(capsys, "compute", "@pn_minus_hyperplane(n=two)")
    assert code == 2
    assert "must be an integer" in err
    code, _, err = run_cli(capsys, "compute", "@pn_minus_hyperplane(n=0)")
    assert code == 2
    assert err.startswith("parse error")
    code, _, err = run_cli(capsys, "compute", "@pn_minus_hyperplane(3)")
    assert code == 2
    assert "expected param=value" in err


def test_compute_unknown_parameter_name_is_domain_error(capsys):
    code, _, err = run_cli(capsys, "compute", "@a1(m=2)")
    assert code == 1
    assert "bad parameters" in err


def test_compute_missing_file_is_io_error(tmp_path, capsys):
    code, _, err = run_cli(capsys, "compute", str(tmp_path / "gone.json"))
    assert code == 2
    assert "cannot read" in err


def test_compute_invalid_atlas_file_is_domain_error(tmp_path, capsys):
    path = _write_doc(tmp_path, _broken_pairing_doc())
    code, out, err = run_cli(capsys, "compute", path)
    assert code == 1
    assert err.startswith("invalid atlas:")


def test_compute_ihplus_needs_connected_atlas(tmp_path, capsys):
    path = _write_doc(tmp_path, DISCONNECTED_DOC)
    code, out, err = run_cli(capsys, "compute", path, "--what", "ihplus")
    assert code == 1
    assert err == "error: the one-point table needs a connected X\n"
    # Other tables of the same atlas are still available.
    code, out, err = run_cli(capsys, "compute", path, "--what", "absic")
    assert (code, err) == (0, "")
    assert "[absoluteIC]" in out


def test_compute_parameterized_reference(capsys):
    code, out, err = run_cli(
        capsys, "compute", "@pn_minus_hyperplane(n=3)", "--format", "json",
        "--what", "absic",
    )
    assert (code, err) == (0, "")
    doc = json.loads(out)
    assert doc["atlasName"] == "pn_minus_hyperplane(n=3)"
    expected = _expect_json_table(absolute_ic(builtin("pn_minus_hyperplane", n=3)).table)
    assert doc["tables"] == {"absoluteIC": expected}


# ---------------------------------------------------------------------------
# compute: JSON report shape, agreement with the library, determinism
# ---------------------------------------------------------------------------

def test_json_report_shape_and_determinism(capsys):
    code, out, err = run_cli(capsys, "compute", "@gm", "--format", "json")
    assert (code, err) == (0, "")
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["atlasName"] == "gm"
    prov = doc["provenance"]
    assert prov["engine"] == f"absix {__version__}"
    assert re.fullmatch(r"sha256:[0-9a-f]{64}", prov["atlasHash"])
    assert prov["atlasHash"] == atlas_hash(builtin("gm"))
    # Canonical rendering: sorted keys, two-space indent, trailing newline.
    assert out == json.dumps(doc, indent=2, sort_keys=True) + "\n"
    assert set(doc["tables"]) == {
        "plain", "compactSupport", "absoluteIC", "boundary", "onePointIC",
    }
    assert "criteria" in doc and "comparison" in doc
    assert "dichotomy" not in doc  # verdict holds for gm
    code2, out2, err2 = run_cli(capsys, "compute", "@gm", "--format", "json")
    assert (code2, out2, err2) == (code, out, err)


@pytest.mark.parametrize("name", ["gm", "low_dim_Z", "gm_times_a1"])
def test_json_tables_agree_with_library(name, capsys):
    code, out, err = run_cli(capsys, "compute", f"@{name}", "--format", "json")
    assert (code, err) == (0, "")
    doc = json.loads(out)
    a = builtin(name)
    res = absolute_ic(a)
    assert doc["tables"]["plain"] == _expect_json_table(plain_table(a))
    assert doc["tables"]["compactSupport"] == _expect_json_table(compact_table(a))
    assert doc["tables"]["absoluteIC"] == _expect_json_table(res.table)
    assert doc["tables"]["boundary"] == _expect_json_table(
        boundary_cohomology(a, res))
    assert doc["tables"]["onePointIC"] == _expect_json_table(ih_one_point(a, res))


def test_json_dichotomy_appears_when_verdict_fails(capsys):
    code, out, err = run_cli(
        capsys, "compute", "@gm_times_a1", "--format", "json", "--what", "criteria",
    )
    assert (code, err) == (0, "")
    doc = json.loads(out)
    assert "tables" not in doc
    crit = doc["criteria"]
    assert crit["verdict"] is False
    assert crit["cond2ByDegree"] == [[0, True], [1, False]]
    assert crit["injectivityRoute"] == "via-weights"
    assert doc["dichotomy"]["mode"] == "general"
    assert doc["dichotomy"]["horn"] == "i"
    assert doc["dichotomy"]["degrees"] == [1, 3]


def test_what_selects_tables(capsys):
    for what, expected in [
        ("cohomology", {"plain", "compactSupport"}),
        ("absic", {"absoluteIC"}),
        ("boundary", {"boundary"}),
        ("ihplus", {"onePointIC"}),
    ]:
        code, out, err = run_cli(
            capsys, "compute", "@a1", "--format", "json", "--what", what,
        )
        assert (code, err) == (0, ""), what
        doc = json.loads(out)
        assert set(doc["tables"]) == expected, what
        assert "criteria" not in doc, what


def test_degree_filter(capsys):
    code, out, err = run_cli(
        capsys, "compute", "@gm", "--format", "json", "--what", "cohomology",
        "--degree", "1",
    )
    assert (code, err) == (0, "")
    doc = json.loads(out)
    assert set(doc["tables"]["plain"]["byDegree"]) == {"1"}
    assert set(doc["tables"]["compactSupport"]["byDegree"]) == {"1"}
    # A degree with no classes renders as an explicitly zero table.
    code, out, err = run_cli(
        capsys, "compute", "@gm", "--what", "absic", "--degree", "7",
    )
    assert (code, err) == (0, "")
    assert "(zero)" in out


def test_criteria_text_for_failing_atlas(capsys):
    code, out, err = run_cli(capsys, "compute", "@gm_times_a1", "--what", "criteria")
    assert (code, err) == (0, "")
    assert "cond2 (boundary weights <= n for n <= d-1): false (fails at degrees 1)" in out
    assert "cond3 (boundary weights >= n+1 for n >= d): false (fails at degrees 2)" in out
    assert "injectivity range [via-weights]: 2:false" in out
    assert "verdict: false" in out
    assert "mode: general" in out
    assert "degrees: 1, 3" in out


def test_lefschetz_route_rendered_for_single_smooth_boundary(capsys):
    code, out, err = run_cli(
        capsys, "compute", "@middle_dim_Z_selfint_zero", "--what", "criteria",
    )
    assert (code, err) == (0, "")
    assert "lefschetz route (single smooth boundary): 2:false" in out
    assert "mode: exemplar" in out


# ---------------------------------------------------------------------------
# corpus listing and argument handling
# ---------------------------------------------------------------------------

def test_corpus_listing(capsys):
    code, out, err = run_cli(capsys, "corpus")
    assert (code, err) == (0, "")
    lines = out.splitlines()
    assert len(lines) == len(CATALOGUE) >= 8
    pattern = re.compile(r"^\w+(?:\(.*\))?  --  .+$")
    for line in lines:
        assert pattern.match(line), line
    names = {line.split("  --  ")[0].split("(")[0] for line in lines}
    assert {"gm", "gm_times_a1", "pn_minus_hyperplane", "surface_resolution"} <= names
    assert any(line.startswith("pn_minus_hyperplane(") for line in lines)


def test_usage_errors_exit_with_code_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["compute", "@a1", "--what", "bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_module_is_runnable_as_script():
    proc = subprocess.run(
        [sys.executable, "-m", "absix.cli", "corpus"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "  --  " in proc.stdout.splitlines()[0]
