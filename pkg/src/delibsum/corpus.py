"""Debate corpus ingestion, selection, and concatenation.

Raw platform exports are parsed into comments, grouped into debates, and
classified against a selection plan (size buckets over comment counts plus
length filters over total characters). A seeded sampler then picks the
study set, and each debate is concatenated into a single source text.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass

__all__ = [
    "Comment",
    "Debate",
    "SelectionPlan",
    "CorpusError",
    "ParseError",
    "PlanError",
    "SelectionError",
    "parse_comments",
    "group_into_debates",
    "classify_debate",
    "select_debates",
    "concatenate",
]

FORMAT_DELIMITED = "delimited-table"
FORMAT_RECORD_LINES = "record-lines"

REQUIRED_FIELDS = ("comment_id", "debate_id", "text")


class CorpusError(Exception):
    """Base class for corpus-layer failures."""


class ParseError(CorpusError):
    """Raised when input rows are malformed; carries per-row diagnostics."""

    def __init__(self, row_errors: list[tuple[int, str]]):
        self.row_errors = row_errors
        lines = "; ".join(f"line {n}: {msg}" for n, msg in row_errors[:10])
        more = "" if len(row_errors) <= 10 else f" (+{len(row_errors) - 10} more)"
        super().__init__(f"{len(row_errors)} malformed row(s): {lines}{more}")


class PlanError(CorpusError):
    """Raised for ill-formed selection plans (overlapping or inverted ranges)."""


class SelectionError(CorpusError):
    """Raised when a bucket cannot be filled; names the bucket and shortfall."""


@dataclass(frozen=True)
class Comment:
    comment_id: str
    debate_id: str
    position: int
    text: str

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError(f"comment {self.comment_id!r}: empty text")
        if self.position < 0:
            raise ValueError(f"comment {self.comment_id!r}: negative position")


@dataclass(frozen=True)
class Debate:
    """One proposal's discussion: comments ordered by position.

    ``total_chars`` counts Unicode code points, not bytes; the corpus is
    accented Spanish and byte counts would skew the length filters.
    """

    debate_id: str
    comments: tuple[Comment, ...]
    title: str | None = None

    def __post_init__(self):
        positions = [c.position for c in self.comments]
        if positions != sorted(positions):
            raise ValueError(f"debate {self.debate_id!r}: comments not in position order")
        for c in self.comments:
            if c.debate_id != self.debate_id:
                raise ValueError(
                    f"debate {self.debate_id!r}: foreign comment {c.comment_id!r}"
                )

    @property
    def comment_count(self) -> int:
        return len(self.comments)

    @property
    def total_chars(self) -> int:
        return sum(len(c.text) for c in self.comments)

    def to_dict(self) -> dict:
        return {
            "debate_id": self.debate_id,
            "title": self.title,
            "comments": [
                {
                    "comment_id": c.comment_id,
                    "debate_id": c.debate_id,
                    "position": c.position,
                    "text": c.text,
                }
                for c in self.comments
            ],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Debate":
        return cls(
            debate_id=raw["debate_id"],
            title=raw.get("title"),
            comments=tuple(
                Comment(
                    comment_id=c["comment_id"],
                    debate_id=c["debate_id"],
                    position=int(c["position"]),
                    text=c["text"],
                )
                for c in raw["comments"]
            ),
        )


@dataclass(frozen=True)
class SelectionPlan:
    """Study-set recipe: disjoint size buckets, overlapping length filters.

    Defaults mirror the deliberation scenarios the harness was built around:
    20 small debates (n=10), 15 medium (20-30), 5 large (60-70), with three
    character-length filters that intentionally overlap.
    """

    size_buckets: tuple[tuple[int, int, int], ...] = (
        (10, 10, 20),
        (20, 30, 15),
        (60, 70, 5),
    )
    length_filters: tuple[tuple[int, int], ...] = (
        (1_000, 5_000),
        (3_000, 13_000),
        (10_000, 18_000),
    )
    seed: int = 0

    def validate(self) -> None:
        for lo, hi, count in self.size_buckets:
            if lo > hi:
                raise PlanError(f"size bucket ({lo}, {hi}) has min > max")
            if count <= 0:
                raise PlanError(f"size bucket ({lo}, {hi}) target {count} not positive")
        for lo, hi in self.length_filters:
            if lo > hi:
                raise PlanError(f"length filter ({lo}, {hi}) has min > max")
        spans = sorted((lo, hi) for lo, hi, _ in self.size_buckets)
        for (_, prev_hi), (lo, _) in zip(spans, spans[1:]):
            if lo <= prev_hi:
                raise PlanError("size buckets overlap; they must partition n")

    def to_dict(self) -> dict:
        return {
            "size_buckets": [list(b) for b in self.size_buckets],
            "length_filters": [list(f) for f in self.length_filters],
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "SelectionPlan":
        return cls(
            size_buckets=tuple(tuple(b) for b in raw["size_buckets"]),
            length_filters=tuple(tuple(f) for f in raw["length_filters"]),
            seed=int(raw.get("seed", 0)),
        )


def _row_to_comment(raw: dict, fallback_position: int) -> Comment:
    for key in REQUIRED_FIELDS:
        if key not in raw or raw[key] is None:
            raise ValueError(f"missing field {key!r}")
    text = str(raw["text"])
    if not text.strip():
        raise ValueError("empty text")
    position = raw.get("position")
    if position is None or position == "":
        position = fallback_position
    else:
        try:
            position = int(position)
        except (TypeError, ValueError):
            raise ValueError(f"position {position!r} is not an integer") from None
    if position < 0:
        raise ValueError(f"position {position} is negative")
    return Comment(
        comment_id=str(raw["comment_id"]),
        debate_id=str(raw["debate_id"]),
        position=position,
        text=text,
    )


def parse_comments(raw: bytes, format: str) -> list[Comment]:
    """Parse a raw export into comments, preserving input order.

    ``format`` is either ``delimited-table`` (CSV with a header naming at
    least comment_id, debate_id, position, text) or ``record-lines`` (one
    JSON object per line, same keys). A blank or absent position is derived
    from input order within the comment's debate. Malformed rows are never
    dropped silently: all of them are collected and raised as a ParseError
    carrying line numbers.
    """
    try:
        decoded = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError([(0, f"input is not valid UTF-8: {exc}")]) from exc

    comments: list[Comment] = []
    errors: list[tuple[int, str]] = []
    seen_per_debate: dict[str, int] = {}

    def consume(line_no: int, raw_row: dict) -> None:
        debate_id = str(raw_row.get("debate_id", ""))
        fallback = seen_per_debate.get(debate_id, 0)
        try:
            comment = _row_to_comment(raw_row, fallback)
        except ValueError as exc:
            errors.append((line_no, str(exc)))
            return
        seen_per_debate[comment.debate_id] = fallback + 1
        comments.append(comment)

    if format == FORMAT_DELIMITED:
        reader = csv.DictReader(io.StringIO(decoded))
        for line_no, row in enumerate(reader, start=2):
            if row.get(None):
                errors.append((line_no, "too many columns"))
                continue
            consume(line_no, row)
    elif format == FORMAT_RECORD_LINES:
        for line_no, line in enumerate(decoded.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                errors.append((line_no, f"invalid JSON: {exc.msg}"))
                continue
            if not isinstance(row, dict):
                errors.append((line_no, "record is not an object"))
                continue
            consume(line_no, row)
    else:
        raise ValueError(f"unknown format {format!r}")

    if errors:
        raise ParseError(errors)
    return comments


def group_into_debates(comments: list[Comment]) -> list[Debate]:
    """Group comments into debates keyed by debate_id, sorted by debate_id.

    Within each debate comments are ordered by position; a repeated
    (debate_id, position) pair is a collision and rejected.
    """
    by_debate: dict[str, list[Comment]] = {}
    for comment in comments:
        by_debate.setdefault(comment.debate_id, []).append(comment)

    debates = []
    for debate_id in sorted(by_debate):
        group = sorted(by_debate[debate_id], key=lambda c: c.position)
        for a, b in zip(group, group[1:]):
            if a.position == b.position:
                raise CorpusError(
                    f"debate {debate_id!r}: comments {a.comment_id!r} and "
                    f"{b.comment_id!r} collide at position {a.position}"
                )
        debates.append(Debate(debate_id=debate_id, comments=tuple(group)))
    return debates


def classify_debate(
    debate: Debate, plan: SelectionPlan
) -> tuple[int | None, list[int]]:
    """Locate a debate in the plan: its size bucket (if any) and every
    length filter containing it.

    Size buckets partition comment counts, so at most one index comes back.
    Length ranges overlap by design, so the second element is the list of
    all matching filter indexes. An empty filter list in the plan means no
    length restriction, and every debate matches vacuously.
    """
    plan.validate()
    n = debate.comment_count
    bucket_index = None
    for i, (lo, hi, _) in enumerate(plan.size_buckets):
        if lo <= n <= hi:
            bucket_index = i
            break
    matching = [
        i
        for i, (lo, hi) in enumerate(plan.length_filters)
        if lo <= debate.total_chars <= hi
    ]
    return bucket_index, matching


def select_debates(debates: list[Debate], plan: SelectionPlan) -> list[Debate]:
    """Sample the study set: per-bucket target counts, uniform without
    replacement, deterministic given plan.seed.

    A debate qualifies for a bucket when its comment count falls in the
    bucket range and it matches at least one length filter (or the plan has
    none). Output is ordered bucket by bucket, sampled debates in
    debate_id order within each bucket.
    """
    plan.validate()
    candidates: dict[int, list[Debate]] = {i: [] for i in range(len(plan.size_buckets))}
    for debate in debates:
        bucket, length_matches = classify_debate(debate, plan)
        if bucket is None:
            continue
        if plan.length_filters and not length_matches:
            continue
        candidates[bucket].append(debate)

    rng = random.Random(plan.seed)
    selected: list[Debate] = []
    for i, (_, _, target) in enumerate(plan.size_buckets):
        pool = sorted(candidates[i], key=lambda d: d.debate_id)
        if len(pool) < target:
            raise SelectionError(f"bucket {i} shortfall {target - len(pool)}")
        picked = rng.sample(pool, target)
        selected.extend(sorted(picked, key=lambda d: d.debate_id))
    return selected


def concatenate(debate: Debate) -> str:
    """Join a debate's comments, in position order, with single newlines.

    The newline keeps comment boundaries visible to downstream chunking;
    comment text itself is never mutated.
    """
    if not debate.comments:
        raise CorpusError(f"debate {debate.debate_id!r} has no comments")
    return "\n".join(c.text for c in debate.comments)
