from __future__ import annotations

import json
import shutil
from pathlib import Path

import pytest

from delibsum.backends import BackendDescriptor
from delibsum.cli import main as cli_main

DATA_DIR = Path(__file__).parent / "data"

SAMPLE_DEBATE_PATH = DATA_DIR / "sample_debate_es.jsonl"


@pytest.fixture(scope="session")
def sample_debate_rows() -> list[dict]:
    with open(SAMPLE_DEBATE_PATH, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def translator_descriptor(endpoint="mock:identity", max_input_chars=2_000, **kw):
    return BackendDescriptor(
        backend_id=kw.pop("backend_id", "mt"),
        kind="translator",
        endpoint=endpoint,
        model_label=kw.pop("model_label", "identity translator"),
        max_input_chars=max_input_chars,
        **kw,
    )


def summarizer_descriptor(backend_id, k=1, max_input_chars=4_000, endpoint=None, **kw):
    return BackendDescriptor(
        backend_id=backend_id,
        kind="summarizer",
        endpoint=endpoint or f"mock:lead-k?k={k}",
        model_label=kw.pop("model_label", f"lead-{k} summarizer"),
        max_input_chars=max_input_chars,
        **kw,
    )


def write_backend_manifest(path: Path, n_summarizers: int = 6, max_input_chars=2_000):
    manifest = {
        "pair": {"source": "es", "pivot": "en"},
        "translator": translator_descriptor(max_input_chars=max_input_chars).to_dict(),
        "summarizers": [
            summarizer_descriptor(f"model-{i}", k=i + 1).to_dict()
            for i in range(n_summarizers)
        ],
    }
    path.write_text(json.dumps(manifest, indent=2), encoding="utf-8")
    return path


EVALUATORS = [f"rater-{i:02d}" for i in range(10)]


def build_study(
    root: Path,
    seed: int = 7,
    evaluators: list[str] | None = None,
    n_summarizers: int = 6,
) -> Path:
    """Drive the CLI end to end on a synthetic corpus; returns the study dir."""
    root.mkdir(parents=True, exist_ok=True)
    corpus = root / "comments.jsonl"
    study = root / "study"
    backends = write_backend_manifest(root / "backends.json", n_summarizers)
    evaluators = evaluators or EVALUATORS
    steps = [
        ["synth", "--out", str(corpus), "--seed", str(seed)],
        ["ingest", "--study", str(study), "--input", str(corpus)],
        ["select", "--study", str(study), "--seed", str(seed)],
        ["run", "--study", str(study), "--backend-manifest", str(backends), "--seed", str(seed)],
        ["design", "--study", str(study), "--seed", str(seed)],
        [
            "assign",
            "--study",
            str(study),
            "--evaluators",
            ",".join(evaluators),
            "--seed",
            str(seed),
        ],
    ]
    for argv in steps:
        code = cli_main(argv)
        assert code == 0, f"CLI step {argv[0]} failed"
    return study


@pytest.fixture(scope="session")
def study_template(tmp_path_factory) -> Path:
    """One fully built synthetic study, copied per test that mutates it."""
    return build_study(tmp_path_factory.mktemp("template"))


@pytest.fixture
def study_dir(study_template, tmp_path) -> Path:
    target = tmp_path / "study"
    shutil.copytree(study_template, target)
    return target
