from __future__ import annotations

import json
import random
import threading
from pathlib import Path

import pytest

from delibsum.corpus import Comment, Debate
from delibsum.evaldesign import assign_evaluators, assign_likert_raters, generate_tuples
from delibsum.pipeline import LanguagePair, LogicalClock, run_roundtrip
from delibsum.store import (
    AuthorizationError,
    ConflictError,
    StoreError,
    StudyStore,
    UnknownEvaluatorError,
    ValidationError,
    WorkflowError,
    summary_id_for,
)
from conftest import summarizer_descriptor, translator_descriptor

PAIR = LanguagePair(source="es", pivot="en")
EVALUATORS = [f"e{i}" for i in range(5)]


def make_debate(debate_id: str, n: int = 3) -> Debate:
    return Debate(
        debate_id=debate_id,
        comments=tuple(
            Comment(f"{debate_id}-c{i}", debate_id, i, f"Frase {i} del debate {debate_id}.")
            for i in range(n)
        ),
    )


def build_mini_study(root: Path, n_debates: int = 2, fsync: bool = False) -> StudyStore:
    """Two-debate study wired through the real pipeline with mock backends."""
    store = StudyStore(root, fsync=fsync, create=True)
    debates = [make_debate(f"d{i}") for i in range(n_debates)]
    store.save_debates(debates, source="inline")
    from delibsum.corpus import SelectionPlan

    plan = SelectionPlan(size_buckets=((1, 10, n_debates),), length_filters=(), seed=0)
    store.save_selection(debates, plan)

    translator = translator_descriptor()
    summarizers = [summarizer_descriptor(f"m{i}", k=i + 1) for i in range(6)]
    clock = LogicalClock()
    records = []
    for debate in debates:
        for record in run_roundtrip(debate, translator, summarizers, PAIR, clock=clock):
            records.append(
                (summary_id_for("run-1", record.debate_id, record.model_id), record)
            )
    store.write_run("run-1", records, translator, summarizers, PAIR.to_dict(), seed=0)

    tuples = []
    for index, debate in enumerate(debates):
        ids = sorted(
            sid for sid, raw in store.summaries.items() if raw["debate_id"] == debate.debate_id
        )
        tuples.extend(generate_tuples(ids, seed=index, debate_id=debate.debate_id))
    store.save_design(tuples, seed=0)

    assignments = assign_evaluators(tuples, EVALUATORS, per_tuple=2)
    likert_targets = sorted(store.summaries)[:4]
    assignments.extend(assign_likert_raters(likert_targets, EVALUATORS, 2))
    store.save_assignments(assignments, {"per_tuple": 2, "likert_raters": 2})
    return store


@pytest.fixture
def store(tmp_path) -> StudyStore:
    return build_mini_study(tmp_path / "study")


def any_open_bws(store: StudyStore, evaluator: str):
    return next(
        a for a in store.open_assignments(evaluator) if a.kind == "bws"
    )


def any_open_likert(store: StudyStore, evaluator: str):
    return next(
        a for a in store.open_assignments(evaluator) if a.kind == "likert"
    )


RATINGS = {"informativeness": 3, "fluency": 3, "consistency": 2, "creativity": 2}


class TestSubmissions:
    def test_valid_bws_stored_and_closed(self, store):
        assignment = any_open_bws(store, "e0")
        members = store.tuples[assignment.target_id].summary_ids
        ack = store.submit_bws("e0", assignment.assignment_id, members[0], members[1])
        assert ack["status"] == "stored"
        assert store.is_submitted(assignment.assignment_id)
        assert assignment.assignment_id not in {
            a.assignment_id for a in store.open_assignments("e0")
        }

    def test_best_equals_worst_rejected(self, store):
        assignment = any_open_bws(store, "e0")
        members = store.tuples[assignment.target_id].summary_ids
        with pytest.raises(ValidationError, match="differ"):
            store.submit_bws("e0", assignment.assignment_id, members[0], members[0])

    def test_summary_outside_tuple_rejected(self, store):
        assignment = any_open_bws(store, "e0")
        members = store.tuples[assignment.target_id].summary_ids
        foreign = next(s for s in store.summaries if s not in members)
        with pytest.raises(ValidationError, match="not in this tuple"):
            store.submit_bws("e0", assignment.assignment_id, members[0], foreign)

    def test_foreign_assignment_rejected(self, store):
        assignment = any_open_bws(store, "e0")
        members = store.tuples[assignment.target_id].summary_ids
        with pytest.raises(AuthorizationError):
            store.submit_bws("e1", assignment.assignment_id, members[0], members[1])

    def test_duplicate_retry_is_idempotent(self, store):
        assignment = any_open_bws(store, "e0")
        members = store.tuples[assignment.target_id].summary_ids
        store.submit_bws("e0", assignment.assignment_id, members[0], members[1])
        ack = store.submit_bws("e0", assignment.assignment_id, members[0], members[1])
        assert ack["status"] == "duplicate"
        log = (store.root / "judgments.log").read_text().splitlines()
        assert len(log) == 1

    def test_conflicting_resubmission_rejected(self, store):
        assignment = any_open_bws(store, "e0")
        members = store.tuples[assignment.target_id].summary_ids
        store.submit_bws("e0", assignment.assignment_id, members[0], members[1])
        with pytest.raises(ConflictError):
            store.submit_bws("e0", assignment.assignment_id, members[1], members[0])

    def test_unknown_assignment(self, store):
        with pytest.raises(ValidationError):
            store.submit_bws("e0", "bws-999999", "a", "b")

    def test_likert_valid(self, store):
        assignment = any_open_likert(store, "e0")
        ack = store.submit_likert("e0", assignment.target_id, RATINGS)
        assert ack["status"] == "stored"

    def test_likert_missing_dimension(self, store):
        assignment = any_open_likert(store, "e0")
        partial = {k: v for k, v in RATINGS.items() if k != "creativity"}
        with pytest.raises(ValidationError, match="creativity"):
            store.submit_likert("e0", assignment.target_id, partial)

    def test_likert_out_of_scale(self, store):
        assignment = any_open_likert(store, "e0")
        with pytest.raises(ValidationError):
            store.submit_likert("e0", assignment.target_id, {**RATINGS, "fluency": 5})

    def test_likert_unknown_dimension(self, store):
        assignment = any_open_likert(store, "e0")
        with pytest.raises(ValidationError, match="unknown"):
            store.submit_likert("e0", assignment.target_id, {**RATINGS, "novelty": 2})

    def test_likert_without_allocation_rejected(self, store):
        unassigned = next(
            s
            for s in store.summaries
            if not any(
                a.kind == "likert" and a.target_id == s and a.evaluator_id == "e0"
                for a in store.assignments.values()
            )
        )
        with pytest.raises(AuthorizationError):
            store.submit_likert("e0", unassigned, RATINGS)

    def test_likert_conflict_and_duplicate(self, store):
        assignment = any_open_likert(store, "e0")
        store.submit_likert("e0", assignment.target_id, RATINGS)
        ack = store.submit_likert("e0", assignment.target_id, RATINGS)
        assert ack["status"] == "duplicate"
        with pytest.raises(ConflictError):
            store.submit_likert("e0", assignment.target_id, {**RATINGS, "fluency": 4})


class TestClaims:
    def test_stable_claim(self, store):
        first = store.next_assignment("e0")
        second = store.next_assignment("e0")
        assert first.assignment_id == second.assignment_id

    def test_claim_advances_after_submit(self, store):
        first = store.next_assignment("e0")
        members = store.tuples[first.target_id].summary_ids
        store.submit_bws("e0", first.assignment_id, members[0], members[1])
        assert store.next_assignment("e0").assignment_id != first.assignment_id

    def test_unknown_evaluator(self, store):
        with pytest.raises(UnknownEvaluatorError):
            store.next_assignment("stranger")

    def test_payload_is_blind(self, store):
        assignment = any_open_bws(store, "e0")
        payload = store.assignment_payload(assignment)
        assert len(payload["summaries"]) == 4
        blob = json.dumps(payload)
        for model_id in set(store.summary_to_model().values()):
            assert model_id not in blob
        assert payload["debate_text"]

    def test_concurrent_claims_agree(self, store):
        results = []

        def claim():
            results.append(store.next_assignment("e1").assignment_id)

        threads = [threading.Thread(target=claim) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(set(results)) == 1


class TestReplay:
    def submit_everything(self, store, rng):
        for evaluator in EVALUATORS:
            for assignment in list(store.open_assignments(evaluator)):
                if assignment.kind == "bws":
                    members = store.tuples[assignment.target_id].summary_ids
                    best, worst = rng.sample(list(members), 2)
                    store.submit_bws(evaluator, assignment.assignment_id, best, worst)
                else:
                    ratings = {k: rng.randint(1, 4) for k in RATINGS}
                    store.submit_likert(evaluator, assignment.target_id, ratings)

    def test_reload_equals_memory(self, store):
        self.submit_everything(store, random.Random(0))
        reloaded = StudyStore(store.root)
        assert reloaded.bws_judgments == store.bws_judgments
        assert reloaded.likert_judgments == store.likert_judgments
        assert reloaded.assignments == store.assignments
        assert reloaded.tuples == store.tuples

    def test_every_prefix_is_consistent(self, store):
        self.submit_everything(store, random.Random(1))
        log_path = store.root / "judgments.log"
        raw = log_path.read_bytes()
        rng = random.Random(2)
        cuts = sorted(rng.sample(range(len(raw)), 12)) + [len(raw)]
        for cut in cuts:
            log_path.write_bytes(raw[:cut])
            reloaded = StudyStore(store.root)
            total = len(reloaded.bws_judgments) + len(reloaded.likert_judgments)
            complete_lines = raw[:cut].count(b"\n")
            assert total in (complete_lines, complete_lines + 1)
            for assignment_id in reloaded.bws_judgments:
                assert reloaded.assignments[assignment_id].kind == "bws"

    def test_interior_corruption_is_an_error(self, store):
        assignment = any_open_bws(store, "e0")
        members = store.tuples[assignment.target_id].summary_ids
        store.submit_bws("e0", assignment.assignment_id, members[0], members[1])
        log_path = store.root / "judgments.log"
        log_path.write_text("garbage\n" + log_path.read_text())
        with pytest.raises(StoreError, match="corrupt"):
            StudyStore(store.root)

    def test_no_assignment_gets_two_judgments(self, store):
        self.submit_everything(store, random.Random(3))
        lines = (store.root / "judgments.log").read_text().splitlines()
        ids = [json.loads(line)["assignment_id"] for line in lines]
        assert len(ids) == len(set(ids))


class TestWorkflow:
    def test_missing_step_named(self, tmp_path):
        store = StudyStore(tmp_path / "s", create=True)
        with pytest.raises(WorkflowError, match="ingest"):
            store.require_step("ingest")

    def test_selection_requires_ingest(self, tmp_path):
        from delibsum.corpus import SelectionPlan

        store = StudyStore(tmp_path / "s", create=True)
        with pytest.raises(WorkflowError):
            store.save_selection([], SelectionPlan())

    def test_missing_directory(self, tmp_path):
        with pytest.raises(StoreError):
            StudyStore(tmp_path / "absent")

    def test_summary_ids_are_opaque(self):
        sid = summary_id_for("run-1", "d1", "model-bart")
        assert "bart" not in sid
        assert sid == summary_id_for("run-1", "d1", "model-bart")
        assert sid != summary_id_for("run-1", "d1", "model-t5")
