from __future__ import annotations

import json
from pathlib import Path

import pytest

from delibsum.cli import main
from delibsum.store import StudyStore

from conftest import build_study, write_backend_manifest


def test_full_workflow_artifacts(study_dir):
    store = StudyStore(study_dir)
    assert store.step_info("ingest")
    assert len(store.selection["debate_ids"]) == 40
    assert len(store.summaries) == 240  # 40 debates x 6 models
    assert len(store.tuples) == 360
    assert len(store.assignments) == 1_800 + 80 * 5  # bws + likert allocations


def test_report_before_judgments_says_no_data(study_dir, capsys):
    assert main(["report", "--study", str(study_dir)]) == 0
    out = capsys.readouterr().out
    assert "no data" in out


def test_design_before_run_is_workflow_error(tmp_path, capsys):
    corpus = tmp_path / "c.jsonl"
    study = tmp_path / "study"
    assert main(["synth", "--out", str(corpus), "--seed", "1"]) == 0
    assert main(["ingest", "--study", str(study), "--input", str(corpus)]) == 0
    code = main(["design", "--study", str(study), "--seed", "1"])
    assert code == 1
    err = capsys.readouterr().err
    assert "run" in err


def test_design_needs_six_summaries(tmp_path, capsys):
    corpus = tmp_path / "c.jsonl"
    study = tmp_path / "study"
    backends = write_backend_manifest(tmp_path / "backends.json", n_summarizers=5)
    for argv in (
        ["synth", "--out", str(corpus), "--seed", "2"],
        ["ingest", "--study", str(study), "--input", str(corpus)],
        ["select", "--study", str(study), "--seed", "2"],
        ["run", "--study", str(study), "--backend-manifest", str(backends)],
    ):
        assert main(argv) == 0
    code = main(["design", "--study", str(study), "--seed", "2"])
    assert code == 1
    err = capsys.readouterr().err
    assert "6" in err and "got 5" in err


def test_run_twice_is_byte_identical(tmp_path):
    first = build_study(tmp_path / "a", seed=21)
    second = build_study(tmp_path / "b", seed=21)
    run_a = (first / "runs" / "run-00000021" / "records.lines").read_bytes()
    run_b = (second / "runs" / "run-00000021" / "records.lines").read_bytes()
    assert run_a == run_b


def test_select_is_seed_sensitive(tmp_path):
    corpus = tmp_path / "c.jsonl"
    study = tmp_path / "study"
    assert main(["synth", "--out", str(corpus), "--seed", "4"]) == 0
    assert main(["ingest", "--study", str(study), "--input", str(corpus)]) == 0
    assert main(["select", "--study", str(study), "--seed", "1"]) == 0
    first = json.loads((study / "selection.json").read_text())["debate_ids"]
    assert main(["select", "--study", str(study), "--seed", "2"]) == 0
    second = json.loads((study / "selection.json").read_text())["debate_ids"]
    assert first != second
    assert main(["select", "--study", str(study), "--seed", "1"]) == 0
    assert json.loads((study / "selection.json").read_text())["debate_ids"] == first


def test_ingest_rejects_malformed_rows(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"comment_id": "c1", "debate_id": "d1", "text": "  "}\n')
    code = main(["ingest", "--study", str(tmp_path / "s"), "--input", str(bad)])
    assert code == 1
    assert "line 1" in capsys.readouterr().err


def test_rouge_verb(tmp_path, capsys):
    candidates = tmp_path / "cand.txt"
    references = tmp_path / "ref.txt"
    candidates.write_text("el gato duerme\nuno dos tres\n")
    references.write_text("el gato duerme en casa\ncuatro cinco seis\n")
    assert main(["rouge", "--candidates", str(candidates), "--references", str(references)]) == 0
    lines = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert len(lines) == 2
    assert set(lines[0]) == {"r1", "r2", "rl"}
    assert lines[0]["r1"]["precision"] == 1.0
    assert lines[1]["r1"]["f1"] == 0.0


def test_rouge_x100(tmp_path, capsys):
    candidates = tmp_path / "cand.txt"
    references = tmp_path / "ref.txt"
    candidates.write_text("a b c\n")
    references.write_text("a b c d e f\n")
    assert main([
        "rouge", "--candidates", str(candidates), "--references", str(references), "--x100"
    ]) == 0
    (line,) = [json.loads(l) for l in capsys.readouterr().out.splitlines()]
    assert line["r1"]["recall"] == 50.0


def test_rouge_mismatched_files(tmp_path, capsys):
    (tmp_path / "c.txt").write_text("a\nb\n")
    (tmp_path / "r.txt").write_text("a\n")
    code = main([
        "rouge", "--candidates", str(tmp_path / "c.txt"), "--references", str(tmp_path / "r.txt")
    ])
    assert code == 1


def test_report_json_written_to_file(study_dir, tmp_path):
    out = tmp_path / "report.json"
    assert main(["report", "--study", str(study_dir), "--format", "json", "-o", str(out)]) == 0
    body = json.loads(out.read_text())
    assert body["status"] == "no data"


def test_missing_input_file(tmp_path, capsys):
    code = main(["ingest", "--study", str(tmp_path / "s"), "--input", str(tmp_path / "nope")])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_manifest_records_seeds(study_dir):
    manifest = json.loads((study_dir / "manifest.json").read_text())
    assert manifest["steps"]["select"]["seed"] == 7
    assert manifest["steps"]["design"]["seed"] == 7
    assert manifest["steps"]["assign"]["per_tuple"] == 5
