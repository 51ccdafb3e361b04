"""Round-trip orchestration: translate, summarise per model, translate back.

The debate's source text is translated to the pivot language once, every
configured summariser runs on that shared translation, and each summary is
translated back to the source language. Per-model failures produce failed
records without aborting the run; only a forward-translation failure kills
the whole debate, since there is nothing left to summarise.

Transport errors are retried up to 3 attempts with exponential backoff;
errors reported by the model itself are never retried.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .backends import (
    KIND_SUMMARIZER,
    KIND_TRANSLATOR,
    BackendDescriptor,
    BackendError,
    BackendPool,
    TransportError,
)
from .chunking import chunk_text, rejoin, truncate_at_boundary
from .corpus import Debate, concatenate

__all__ = [
    "LanguagePair",
    "Provenance",
    "SummaryRecord",
    "LogicalClock",
    "translate",
    "summarize",
    "run_roundtrip",
]

RETRY_ATTEMPTS = 3
RETRY_BASE_DELAY = 0.5

STATUS_SUCCESS = "success"
STATUS_FAILED = "failed"


@dataclass(frozen=True)
class LanguagePair:
    source: str
    pivot: str = "en"

    def __post_init__(self):
        if self.source == self.pivot:
            raise ValueError("source and pivot languages must differ")

    def to_dict(self) -> dict:
        return {"source": self.source, "pivot": self.pivot}

    @classmethod
    def from_dict(cls, raw: dict) -> "LanguagePair":
        return cls(source=raw["source"], pivot=raw.get("pivot", "en"))


class LogicalClock:
    """Deterministic stand-in for wall time: 0, 1, 2, ...

    Run stores must be byte-identical across reruns with the same seed, so
    record timestamps are logical sequence numbers by default; wall-clock
    timing never enters the record store.
    """

    def __init__(self):
        self._tick = -1

    def __call__(self) -> float:
        self._tick += 1
        return float(self._tick)


@dataclass(frozen=True)
class Provenance:
    translator_id: str
    started_at: float
    finished_at: float
    chunk_count: int
    truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "translator_id": self.translator_id,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "chunk_count": self.chunk_count,
            "truncated": self.truncated,
        }


@dataclass(frozen=True)
class SummaryRecord:
    debate_id: str
    model_id: str
    status: str
    source_text: str
    english_source: str
    english_summary: str
    target_summary: str
    provenance: Provenance
    error: str | None = None

    def __post_init__(self):
        if self.status == STATUS_SUCCESS and not self.english_summary:
            raise ValueError("successful record must carry a non-empty summary")

    def to_dict(self) -> dict:
        return {
            "debate_id": self.debate_id,
            "model_id": self.model_id,
            "status": self.status,
            "source_text": self.source_text,
            "english_source": self.english_source,
            "english_summary": self.english_summary,
            "target_summary": self.target_summary,
            "provenance": self.provenance.to_dict(),
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "SummaryRecord":
        prov = raw["provenance"]
        return cls(
            debate_id=raw["debate_id"],
            model_id=raw["model_id"],
            status=raw["status"],
            source_text=raw["source_text"],
            english_source=raw["english_source"],
            english_summary=raw["english_summary"],
            target_summary=raw["target_summary"],
            provenance=Provenance(
                translator_id=prov["translator_id"],
                started_at=prov["started_at"],
                finished_at=prov["finished_at"],
                chunk_count=prov["chunk_count"],
                truncated=prov.get("truncated", False),
            ),
            error=raw.get("error"),
        )


def _with_retry(call, sleep=time.sleep, chunk_index: int | None = None):
    last: TransportError | None = None
    for attempt in range(RETRY_ATTEMPTS):
        try:
            return call()
        except TransportError as exc:
            exc.chunk_index = chunk_index
            last = exc
            if attempt < RETRY_ATTEMPTS - 1:
                sleep(RETRY_BASE_DELAY * 2**attempt)
    assert last is not None
    raise last


def translate(
    backend: BackendDescriptor,
    text: str,
    pair: LanguagePair,
    direction: str = "forward",
    pool: BackendPool | None = None,
    sleep=time.sleep,
) -> str:
    """Translate ``text``, chunking to the backend's input limit and
    rejoining responses with the original separators.

    ``forward`` goes source -> pivot, ``backward`` pivot -> source.
    Whitespace-only chunks skip the wire and pass through verbatim.
    """
    if backend.kind != KIND_TRANSLATOR:
        raise BackendError(f"{backend.backend_id} is not a translator")
    if direction == "forward":
        source, target = pair.source, pair.pivot
    elif direction == "backward":
        source, target = pair.pivot, pair.source
    else:
        raise ValueError(f"unknown direction {direction!r}")
    instance = (pool or BackendPool()).get(backend)
    chunks = chunk_text(text, backend.max_input_chars)
    translated = []
    for index, chunk in enumerate(chunks):
        if not chunk.content:
            translated.append("")
            continue
        translated.append(
            _with_retry(
                lambda c=chunk: instance.translate(c.content, source, target),
                sleep=sleep,
                chunk_index=index,
            )
        )
    return rejoin(chunks, translated)


@dataclass(frozen=True)
class _SummarizeOutcome:
    summary: str
    truncated: bool


def _summarize_audited(
    backend: BackendDescriptor,
    text: str,
    pool: BackendPool | None = None,
    sleep=time.sleep,
) -> _SummarizeOutcome:
    if backend.kind != KIND_SUMMARIZER:
        raise BackendError(f"{backend.backend_id} is not a summarizer")
    if not text:
        raise BackendError(f"{backend.backend_id}: nothing to summarize")
    prepared, truncated = truncate_at_boundary(text, backend.max_input_chars)
    instance = (pool or BackendPool()).get(backend)
    summary = _with_retry(lambda: instance.summarize(prepared), sleep=sleep)
    if not summary:
        raise BackendError(f"{backend.backend_id}: empty summary")
    return _SummarizeOutcome(summary=summary, truncated=truncated)


def summarize(
    backend: BackendDescriptor,
    text: str,
    pool: BackendPool | None = None,
    sleep=time.sleep,
) -> str:
    """Summarise ``text``, truncating oversized input at the last boundary
    within the backend's limit. The backend's output comes back unmodified."""
    return _summarize_audited(backend, text, pool=pool, sleep=sleep).summary


def run_roundtrip(
    debate: Debate,
    translator: BackendDescriptor,
    summarizers: list[BackendDescriptor],
    pair: LanguagePair,
    pool: BackendPool | None = None,
    clock=None,
    sleep=time.sleep,
) -> list[SummaryRecord]:
    """Produce one SummaryRecord per configured summariser for a debate.

    The forward translation is computed once and shared: a fair comparison
    and one round of translator calls instead of one per model.
    """
    if not summarizers:
        raise ValueError("at least one summarizer must be configured")
    pool = pool or BackendPool()
    clock = clock or LogicalClock()

    source_text = concatenate(debate)
    english_source = translate(
        translator, source_text, pair, direction="forward", pool=pool, sleep=sleep
    )
    chunk_count = len(chunk_text(source_text, translator.max_input_chars))

    records = []
    for summarizer in summarizers:
        started = clock()
        truncated = False
        try:
            outcome = _summarize_audited(summarizer, english_source, pool=pool, sleep=sleep)
            truncated = outcome.truncated
            target_summary = translate(
                translator,
                outcome.summary,
                pair,
                direction="backward",
                pool=pool,
                sleep=sleep,
            )
            records.append(
                SummaryRecord(
                    debate_id=debate.debate_id,
                    model_id=summarizer.backend_id,
                    status=STATUS_SUCCESS,
                    source_text=source_text,
                    english_source=english_source,
                    english_summary=outcome.summary,
                    target_summary=target_summary,
                    provenance=Provenance(
                        translator_id=translator.backend_id,
                        started_at=started,
                        finished_at=clock(),
                        chunk_count=chunk_count,
                        truncated=truncated,
                    ),
                )
            )
        except (BackendError, TransportError) as exc:
            records.append(
                SummaryRecord(
                    debate_id=debate.debate_id,
                    model_id=summarizer.backend_id,
                    status=STATUS_FAILED,
                    source_text=source_text,
                    english_source=english_source,
                    english_summary="",
                    target_summary="",
                    provenance=Provenance(
                        translator_id=translator.backend_id,
                        started_at=started,
                        finished_at=clock(),
                        chunk_count=chunk_count,
                        truncated=truncated,
                    ),
                    error=str(exc),
                )
            )
    return records
