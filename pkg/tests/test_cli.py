import json
import subprocess
import sys

import pytest

from conftest import CORPUS
from partialgroups.cli import (
    REPORT_FORMAT,
    RunOptions,
    StructureDocument,
    main,
    parse_document,
    parse_text,
    render_document,
    render_json,
    render_text,
    run,
)
from partialgroups.errors import DocumentError

DOCUMENTS = sorted(CORPUS.glob("*.json"))
MUTANTS = sorted((CORPUS / "mutants").glob("*.json"))
SMALL = CORPUS / "f2_cyclic_trivial.json"


def cyclic(name, order, gen):
    return {"kind": "group", "name": name, "cyclic": {"order": order, "generator": gen}}


def write(tmp_path, tree, name="doc.json"):
    path = tmp_path / name
    path.write_text(json.dumps(tree, indent=2) + "\n", encoding="utf-8")
    return path


def invoke(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("path", DOCUMENTS + MUTANTS, ids=lambda p: p.stem)
def test_corpus_documents_parse_and_round_trip(path):
    doc = parse_document(path)
    assert doc.declarations
    assert render_document(doc) == path.read_text(encoding="utf-8")
    assert parse_text(render_document(doc)).to_tree() == doc.to_tree()


def test_empty_document_is_an_empty_run(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text("\n", encoding="utf-8")
    assert parse_document(path) == StructureDocument()
    code, out, _ = invoke(capsys, "verify", path, "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["ok"] and report["declarations"] == []


def test_undeclared_reference_names_its_location(tmp_path, capsys):
    tree = {
        "format": "partialgroups/1",
        "declarations": [
            cyclic("C2", 2, "x"),
            {"kind": "action", "name": "phi", "actor": "C2", "target": "C3", "trivial": True},
        ],
    }
    path = write(tmp_path, tree)
    with pytest.raises(DocumentError) as info:
        parse_document(path)
    assert "'C3'" in str(info.value)
    assert f"{path}:12: /declarations/1/target" in str(info.value)
    code, out, err = invoke(capsys, "verify", path)
    assert code == 2 and out == "" and "undeclared reference" in err


def test_forward_references_are_rejected(tmp_path):
    tree = {
        "format": "partialgroups/1",
        "declarations": [
            {"kind": "check", "name": "c", "suite": "axioms", "subject": "C2"},
            cyclic("C2", 2, "x"),
        ],
    }
    with pytest.raises(DocumentError):
        parse_document(write(tmp_path, tree))


def test_duplicate_names_are_rejected(tmp_path):
    tree = {"format": "partialgroups/1", "declarations": [cyclic("C2", 2, "x"), cyclic("C2", 2, "y")]}
    with pytest.raises(DocumentError) as info:
        parse_document(write(tmp_path, tree))
    assert "already declared" in str(info.value)


def test_schema_errors_point_at_the_declaration(tmp_path):
    tree = {"format": "partialgroups/1", "declarations": [cyclic("C2", 2, "x"), cyclic("C3", "three", "a")]}
    path = write(tmp_path, tree)
    with pytest.raises(DocumentError) as info:
        parse_document(path)
    # the second declaration starts on line 12 of the indented file
    assert f"{path}:12: /declarations/1" in str(info.value)


def test_malformed_json_reports_line_and_column(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "format": "partialgroups/1",\n  "declarations": [\n', encoding="utf-8")
    with pytest.raises(DocumentError) as info:
        parse_document(path)
    assert f"{path}:4:1" in str(info.value)
    assert invoke(capsys, "verify", path)[0] == 2


def test_wrong_format_tag_is_a_document_error(tmp_path):
    with pytest.raises(DocumentError):
        parse_document(write(tmp_path, {"format": "something-else", "declarations": []}))


def test_missing_file_is_a_document_error(tmp_path, capsys):
    code, _, err = invoke(capsys, "verify", tmp_path / "absent.json")
    assert code == 2 and "cannot read document" in err


def test_clean_document_exits_zero(capsys):
    code, out, _ = invoke(capsys, "verify", SMALL)
    assert code == 0
    assert out.splitlines()[-1] == "result: ok"
    assert "[ok] check L2-is-C6 (isomorphism)" in out


@pytest.mark.parametrize("path", MUTANTS, ids=lambda p: p.stem)
def test_mutants_exit_nonzero_with_a_counterexample(path, capsys):
    code, out, _ = invoke(capsys, "verify", path, "--format", "json")
    assert code == 1
    report = json.loads(out)
    assert not report["ok"]
    failed = [e for r in report["declarations"] for rep in r["reports"] for e in rep["entries"] if not e["passed"]]
    assert failed and all(e["counterexample"] is not None for e in failed)


def test_verbs_select_declarations(capsys):
    _, out, _ = invoke(capsys, "build", SMALL, "--format", "json")
    built = json.loads(out)
    assert built["verb"] == "build" and built["ok"]
    assert {r["kind"] for r in built["declarations"]} == {"group", "action", "construction"}
    _, out, _ = invoke(capsys, "check", SMALL, "--format", "json")
    checked = json.loads(out)
    assert [r["name"] for r in checked["declarations"]] == ["L2-is-C6", "L2-structure", "L2-conjugation", "L2-split-words"]


def test_failed_declaration_aborts_the_run(tmp_path, capsys):
    mutant = json.loads((CORPUS / "mutants" / "corrupted_table.json").read_text(encoding="utf-8"))
    mutant["declarations"].append(cyclic("C5", 5, "b"))
    code, out, _ = invoke(capsys, "verify", write(tmp_path, mutant), "--format", "json")
    report = json.loads(out)
    assert code == 1 and report["aborted"]
    assert "C5" not in [r["name"] for r in report["declarations"]]
    assert report["declarations"][-1]["error"]["kind"] == "verification-failed"


def test_report_verb_rerenders_a_saved_report(tmp_path, capsys):
    _, saved, _ = invoke(capsys, "verify", SMALL, "--format", "json")
    _, text, _ = invoke(capsys, "verify", SMALL)
    path = tmp_path / "saved.json"
    path.write_text(saved, encoding="utf-8")
    assert invoke(capsys, "report", path) == (0, text, "")
    assert invoke(capsys, "report", path, "--format", "json") == (0, saved, "")
    path.write_text(json.dumps({"format": "other"}), encoding="utf-8")
    assert invoke(capsys, "report", path)[0] == 2


def test_json_reports_are_deterministic_across_jobs():
    doc = parse_document(SMALL)
    one = render_json(run(doc, RunOptions(jobs=1), origin="x"))
    two = render_json(run(doc, RunOptions(jobs=2), origin="x"))
    assert one == two
    assert json.loads(one)["format"] == REPORT_FORMAT


def test_seed_and_bound_are_recorded():
    report = run(parse_document(SMALL), RunOptions(max_len=3, seed=11))
    assert (report["seed"], report["max_len"]) == (11, 3)
    assert "seed 11, max_len 3" in render_text(report).splitlines()[0]


def test_bad_options_exit_with_usage_error(capsys):
    assert invoke(capsys, "verify", SMALL, "--max-len", "1")[0] == 2
    assert invoke(capsys, "verify", SMALL, "--jobs", "0")[0] == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "partialgroups.cli", "build", str(SMALL)], capture_output=True, text=True
    )
    assert out.returncode == 0 and out.stdout.endswith("result: ok\n")
