"""Append-only study persistence with total log replay.

A study is a directory of human-auditable record-line files plus a
manifest tracking which workflow steps have run:

    manifest.json        workflow state + config snapshot
    debates.lines        ingested debates (with comments)
    selection.json       selected debate ids + the plan and seed used
    runs/<id>/           run manifest + one record-line per summary
    design.lines         evaluation tuples
    assignments.lines    evaluator allocations (bws + likert)
    judgments.log        append-only judgment log, the source of truth

Judgments are immutable once appended; assignment status (open vs
submitted) is derived from the log, so reloading any prefix of it yields a
consistent state. All mutations funnel through a single in-process writer
lock; submit transitions are idempotent per assignment.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from pathlib import Path

from .backends import BackendDescriptor
from .corpus import Debate, SelectionPlan
from .evaldesign import (
    LIKERT_DIMENSIONS,
    Assignment,
    BWSJudgment,
    EvalTuple,
    LikertJudgment,
)
from .pipeline import SummaryRecord

__all__ = [
    "StoreError",
    "WorkflowError",
    "ValidationError",
    "AuthorizationError",
    "ConflictError",
    "UnknownEvaluatorError",
    "StudyStore",
    "summary_id_for",
]


class StoreError(Exception):
    """Base class for study-store failures."""


class WorkflowError(StoreError):
    """A verb ran before its prerequisite step; names the missing step."""


class ValidationError(StoreError):
    """Judgment payload violates an invariant (best=worst, bad rating...)."""


class AuthorizationError(StoreError):
    """Evaluator acted on an assignment that is not theirs."""


class ConflictError(StoreError):
    """Resubmission with a payload differing from the stored judgment."""


class UnknownEvaluatorError(StoreError):
    """Evaluator is not registered in this study."""


def summary_id_for(run_id: str, debate_id: str, model_id: str) -> str:
    """Opaque, deterministic summary id; carries no model hint, so payloads
    built from it keep evaluators blind."""
    digest = hashlib.blake2s(
        f"{run_id}|{debate_id}|{model_id}".encode("utf-8"), digest_size=6
    ).hexdigest()
    return f"s{digest}"


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _read_lines(path: Path) -> list[dict]:
    """Parse a record-line file, tolerating a torn (crash-truncated) final
    line: a last line without a newline terminator that fails to parse is
    dropped; damage anywhere else is a real error."""
    if not path.exists():
        return []
    raw = path.read_text(encoding="utf-8")
    if not raw:
        return []
    lines = raw.split("\n")
    trailing_complete = lines[-1] == ""
    if trailing_complete:
        lines = lines[:-1]
    records = []
    for index, line in enumerate(lines):
        if not line.strip():
            continue
        try:
            records.append(json.loads(line))
        except json.JSONDecodeError as exc:
            if index == len(lines) - 1 and not trailing_complete:
                break
            raise StoreError(f"{path.name}:{index + 1}: corrupt record: {exc.msg}") from exc
    return records


class StudyStore:
    """Single-writer store for one study directory."""

    def __init__(self, root: str | Path, fsync: bool = True, create: bool = False):
        self.root = Path(root)
        if create:
            self.root.mkdir(parents=True, exist_ok=True)
        if not self.root.is_dir():
            raise StoreError(f"study directory {self.root} does not exist")
        self._fsync = fsync
        self._lock = threading.Lock()
        self._load()

    # -- paths ------------------------------------------------------------

    @property
    def _manifest_path(self) -> Path:
        return self.root / "manifest.json"

    @property
    def _debates_path(self) -> Path:
        return self.root / "debates.lines"

    @property
    def _selection_path(self) -> Path:
        return self.root / "selection.json"

    @property
    def _design_path(self) -> Path:
        return self.root / "design.lines"

    @property
    def _assignments_path(self) -> Path:
        return self.root / "assignments.lines"

    @property
    def _judgments_path(self) -> Path:
        return self.root / "judgments.log"

    def run_dir(self, run_id: str) -> Path:
        return self.root / "runs" / run_id

    # -- loading ----------------------------------------------------------

    def _load(self) -> None:
        self.manifest: dict = {"study_id": self.root.name, "steps": {}}
        if self._manifest_path.exists():
            self.manifest = json.loads(self._manifest_path.read_text(encoding="utf-8"))

        self.debates: dict[str, Debate] = {}
        for raw in _read_lines(self._debates_path):
            debate = Debate.from_dict(raw)
            self.debates[debate.debate_id] = debate

        self.selection: dict | None = None
        if self._selection_path.exists():
            self.selection = json.loads(self._selection_path.read_text(encoding="utf-8"))

        self.tuples: dict[str, EvalTuple] = {}
        for raw in _read_lines(self._design_path):
            etuple = EvalTuple.from_dict(raw)
            self.tuples[etuple.tuple_id] = etuple

        self.assignments: dict[str, Assignment] = {}
        for raw in _read_lines(self._assignments_path):
            assignment = Assignment.from_dict(raw)
            self.assignments[assignment.assignment_id] = assignment
        self.evaluators = {a.evaluator_id for a in self.assignments.values()}

        self.summaries: dict[str, dict] = {}
        run_id = self.latest_run_id()
        if run_id is not None:
            for raw in _read_lines(self.run_dir(run_id) / "records.lines"):
                self.summaries[raw["summary_id"]] = raw

        self.bws_judgments: dict[str, BWSJudgment] = {}
        self.likert_judgments: dict[str, LikertJudgment] = {}
        for raw in _read_lines(self._judgments_path):
            self._apply_judgment(raw)

    def _apply_judgment(self, raw: dict) -> None:
        assignment_id = raw["assignment_id"]
        if raw["type"] == "bws":
            self.bws_judgments[assignment_id] = BWSJudgment(
                assignment_id=assignment_id,
                best_summary_id=raw["best_summary_id"],
                worst_summary_id=raw["worst_summary_id"],
                submitted_at=raw.get("submitted_at", 0.0),
            )
        elif raw["type"] == "likert":
            self.likert_judgments[assignment_id] = LikertJudgment(
                summary_id=raw["summary_id"],
                evaluator_id=raw["evaluator_id"],
                submitted_at=raw.get("submitted_at", 0.0),
                **{dim: raw[dim] for dim in LIKERT_DIMENSIONS},
            )
        else:
            raise StoreError(f"unknown judgment type {raw['type']!r}")

    # -- low-level writes ---------------------------------------------------

    def _append(self, path: Path, obj: dict) -> None:
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(_dump(obj) + "\n")
            fh.flush()
            if self._fsync:
                os.fsync(fh.fileno())

    def _write_manifest(self) -> None:
        self._manifest_path.write_text(
            json.dumps(self.manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )

    # -- workflow steps -----------------------------------------------------

    def mark_step(self, step: str, info: dict) -> None:
        self.manifest.setdefault("steps", {})[step] = info
        self._write_manifest()

    def require_step(self, step: str) -> dict:
        info = self.manifest.get("steps", {}).get(step)
        if info is None:
            raise WorkflowError(f"step {step!r} has not run yet; run `delibsum {step}` first")
        return info

    def step_info(self, step: str) -> dict | None:
        return self.manifest.get("steps", {}).get(step)

    # -- corpus / selection -------------------------------------------------

    def save_debates(self, debates: list[Debate], source: str) -> None:
        with open(self._debates_path, "w", encoding="utf-8") as fh:
            for debate in debates:
                fh.write(_dump(debate.to_dict()) + "\n")
        self.debates = {d.debate_id: d for d in debates}
        self.mark_step("ingest", {"debates": len(debates), "source": source})

    def save_selection(self, selected: list[Debate], plan: SelectionPlan) -> None:
        self.require_step("ingest")
        self.selection = {
            "debate_ids": [d.debate_id for d in selected],
            "plan": plan.to_dict(),
            "sampling": "uniform-without-replacement",
        }
        self._selection_path.write_text(
            json.dumps(self.selection, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        self.mark_step("select", {"selected": len(selected), "seed": plan.seed})

    def selected_debates(self) -> list[Debate]:
        self.require_step("select")
        assert self.selection is not None
        return [self.debates[d] for d in self.selection["debate_ids"]]

    # -- pipeline runs --------------------------------------------------------

    def write_run(
        self,
        run_id: str,
        records: list[tuple[str, SummaryRecord]],
        translator: BackendDescriptor,
        summarizers: list[BackendDescriptor],
        pair_info: dict,
        seed: int,
    ) -> None:
        """Persist a completed run: manifest first, then one line per
        (summary_id, record)."""
        rdir = self.run_dir(run_id)
        rdir.mkdir(parents=True, exist_ok=True)
        manifest = {
            "run_id": run_id,
            "seed": seed,
            "pair": pair_info,
            "translator": translator.to_dict(),
            "summarizers": [s.to_dict() for s in summarizers],
        }
        (rdir / "manifest.json").write_text(
            json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        with open(rdir / "records.lines", "w", encoding="utf-8") as fh:
            for summary_id, record in records:
                line = {"summary_id": summary_id, "run_id": run_id, **record.to_dict()}
                fh.write(_dump(line) + "\n")
        self.summaries = {
            summary_id: {"summary_id": summary_id, "run_id": run_id, **record.to_dict()}
            for summary_id, record in records
        }
        self.mark_step("run", {"run_id": run_id, "records": len(records)})

    def latest_run_id(self) -> str | None:
        info = self.step_info("run")
        return info["run_id"] if info else None

    def run_manifest(self, run_id: str) -> dict | None:
        path = self.run_dir(run_id) / "manifest.json"
        if not path.exists():
            return None
        manifest = json.loads(path.read_text(encoding="utf-8"))
        records = _read_lines(self.run_dir(run_id) / "records.lines")
        manifest["records"] = len(records)
        manifest["failed"] = sum(1 for r in records if r["status"] != "success")
        return manifest

    # -- design / assignments -------------------------------------------------

    def save_design(self, tuples: list[EvalTuple], seed: int) -> None:
        self.require_step("run")
        with open(self._design_path, "w", encoding="utf-8") as fh:
            for etuple in tuples:
                fh.write(_dump(etuple.to_dict()) + "\n")
        self.tuples = {t.tuple_id: t for t in tuples}
        self.mark_step("design", {"tuples": len(tuples), "seed": seed})

    def save_assignments(self, assignments: list[Assignment], config: dict) -> None:
        self.require_step("design")
        with open(self._assignments_path, "w", encoding="utf-8") as fh:
            for assignment in assignments:
                fh.write(_dump(assignment.to_dict()) + "\n")
        self.assignments = {a.assignment_id: a for a in assignments}
        self.evaluators = {a.evaluator_id for a in assignments}
        self.mark_step("assign", {"assignments": len(assignments), **config})

    # -- judgment state ---------------------------------------------------------

    def summary_to_model(self) -> dict[str, str]:
        return {sid: raw["model_id"] for sid, raw in self.summaries.items()}

    def is_submitted(self, assignment_id: str) -> bool:
        return assignment_id in self.bws_judgments or assignment_id in self.likert_judgments

    def open_assignments(self, evaluator_id: str) -> list[Assignment]:
        if evaluator_id not in self.evaluators:
            raise UnknownEvaluatorError(f"evaluator {evaluator_id!r} is not registered")
        pending = [
            a
            for a in self.assignments.values()
            if a.evaluator_id == evaluator_id and not self.is_submitted(a.assignment_id)
        ]
        return sorted(pending, key=lambda a: a.assignment_id)

    def next_assignment(self, evaluator_id: str) -> Assignment | None:
        """Stable claim: the same open assignment until it is submitted."""
        with self._lock:
            pending = self.open_assignments(evaluator_id)
            return pending[0] if pending else None

    def assignment_payload(self, assignment: Assignment) -> dict:
        """Evaluator-facing view: texts only, never model labels."""
        if assignment.kind == "bws":
            etuple = self.tuples[assignment.target_id]
            summary_ids = list(etuple.summary_ids)
            debate_id = etuple.debate_id
        else:
            summary_ids = [assignment.target_id]
            debate_id = self.summaries[assignment.target_id]["debate_id"]
        debate_text = next(
            (
                raw["source_text"]
                for raw in self.summaries.values()
                if raw["debate_id"] == debate_id
            ),
            "",
        )
        return {
            "assignment_id": assignment.assignment_id,
            "kind": assignment.kind,
            "debate_id": debate_id,
            "debate_text": debate_text,
            "summaries": [
                {"summary_id": sid, "text": self.summaries[sid]["target_summary"]}
                for sid in summary_ids
            ],
        }

    # -- submissions ---------------------------------------------------------

    def submit_bws(
        self,
        evaluator_id: str,
        assignment_id: str,
        best_summary_id: str,
        worst_summary_id: str,
        now: float | None = None,
    ) -> dict:
        with self._lock:
            assignment = self.assignments.get(assignment_id)
            if assignment is None or assignment.kind != "bws":
                raise ValidationError(f"unknown BWS assignment {assignment_id!r}")
            if assignment.evaluator_id != evaluator_id:
                raise AuthorizationError(
                    f"assignment {assignment_id!r} belongs to another evaluator"
                )
            if best_summary_id == worst_summary_id:
                raise ValidationError("best and worst must differ")
            members = self.tuples[assignment.target_id].summary_ids
            for sid in (best_summary_id, worst_summary_id):
                if sid not in members:
                    raise ValidationError(f"summary {sid!r} is not in this tuple")
            existing = self.bws_judgments.get(assignment_id)
            if existing is not None:
                if (
                    existing.best_summary_id == best_summary_id
                    and existing.worst_summary_id == worst_summary_id
                ):
                    return {"status": "duplicate", "assignment_id": assignment_id}
                raise ConflictError(f"assignment {assignment_id!r} already submitted")
            judgment = BWSJudgment(
                assignment_id=assignment_id,
                best_summary_id=best_summary_id,
                worst_summary_id=worst_summary_id,
                submitted_at=time.time() if now is None else now,
            )
            self._append(self._judgments_path, {"type": "bws", **judgment.to_dict()})
            self.bws_judgments[assignment_id] = judgment
            return {"status": "stored", "assignment_id": assignment_id}

    def submit_likert(
        self,
        evaluator_id: str,
        summary_id: str,
        ratings: dict,
        assignment_id: str | None = None,
        now: float | None = None,
    ) -> dict:
        with self._lock:
            assignment = self._resolve_likert(evaluator_id, summary_id, assignment_id)
            missing = [d for d in LIKERT_DIMENSIONS if d not in ratings]
            if missing:
                raise ValidationError(f"missing rating dimension(s): {', '.join(missing)}")
            extra = [d for d in ratings if d not in LIKERT_DIMENSIONS]
            if extra:
                raise ValidationError(f"unknown rating dimension(s): {', '.join(extra)}")
            try:
                judgment = LikertJudgment(
                    summary_id=summary_id,
                    evaluator_id=evaluator_id,
                    submitted_at=time.time() if now is None else now,
                    **{dim: ratings[dim] for dim in LIKERT_DIMENSIONS},
                )
            except ValueError as exc:
                raise ValidationError(str(exc)) from exc
            existing = self.likert_judgments.get(assignment.assignment_id)
            if existing is not None:
                if existing.ratings() == judgment.ratings():
                    return {"status": "duplicate", "assignment_id": assignment.assignment_id}
                raise ConflictError(
                    f"assignment {assignment.assignment_id!r} already submitted"
                )
            self._append(
                self._judgments_path,
                {
                    "type": "likert",
                    "assignment_id": assignment.assignment_id,
                    **judgment.to_dict(),
                },
            )
            self.likert_judgments[assignment.assignment_id] = judgment
            return {"status": "stored", "assignment_id": assignment.assignment_id}

    def _resolve_likert(
        self, evaluator_id: str, summary_id: str, assignment_id: str | None
    ) -> Assignment:
        if assignment_id is not None:
            assignment = self.assignments.get(assignment_id)
            if assignment is None or assignment.kind != "likert":
                raise ValidationError(f"unknown Likert assignment {assignment_id!r}")
            if assignment.target_id != summary_id:
                raise ValidationError("assignment does not cover this summary")
            if assignment.evaluator_id != evaluator_id:
                raise AuthorizationError(
                    f"assignment {assignment_id!r} belongs to another evaluator"
                )
            return assignment
        for assignment in sorted(self.assignments.values(), key=lambda a: a.assignment_id):
            if (
                assignment.kind == "likert"
                and assignment.evaluator_id == evaluator_id
                and assignment.target_id == summary_id
            ):
                return assignment
        raise AuthorizationError(
            f"evaluator {evaluator_id!r} has no Likert assignment for {summary_id!r}"
        )
