"""ROUGE-1/2/L scoring over candidate/reference text pairs.

Tokenisation is lowercase with splits on runs of non-alphanumeric
characters; there is no stemming and no stopword removal, so scores are
not numerically comparable to published numbers produced with the official
Perl script's defaults. ROUGE-L is computed summary-level: one LCS over
the full token sequences rather than per-sentence union.

Scores stay in [0, 1]; reports scale by 100 for display.

The LCS dynamic programme is the hot loop; a compiled kernel is used when
available and a pure-Python twin otherwise (set DELIBSUM_PURE_PYTHON=1 to
force the fallback).
"""

from __future__ import annotations

import os
import re
from collections import Counter
from dataclasses import dataclass

if os.environ.get("DELIBSUM_PURE_PYTHON") == "1":
    from . import _kernels_py as _kernels

    _KERNEL_BACKEND = "python"
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]

        _KERNEL_BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as _kernels  # type: ignore[no-redef]

        _KERNEL_BACKEND = "python"

__all__ = [
    "RougeScore",
    "tokenize",
    "ngram_counts",
    "rouge_n",
    "lcs_len",
    "rouge_l",
    "score_pair",
    "kernel_backend",
]

_TOKEN = re.compile(r"[^\W_]+", re.UNICODE)


def kernel_backend() -> str:
    """Which LCS kernel is active: "cython" or "python"."""
    return _KERNEL_BACKEND


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_ratios(cls, precision: float, recall: float) -> "RougeScore":
        if precision + recall == 0:
            f1 = 0.0
        else:
            f1 = 2.0 * precision * recall / (precision + recall)
        return cls(precision=precision, recall=recall, f1=f1)

    def to_dict(self, x100: bool = False) -> dict:
        scale = 100.0 if x100 else 1.0
        rounder = (lambda v: round(v * scale, 2)) if x100 else (lambda v: v * scale)
        return {
            "precision": rounder(self.precision),
            "recall": rounder(self.recall),
            "f1": rounder(self.f1),
        }


def tokenize(text: str) -> list[str]:
    """Lowercase and split on maximal runs of non-alphanumeric characters.

    Unicode letters and digits are kept ("tranvía", "2024"); underscores
    count as separators. No stemming.
    """
    return _TOKEN.findall(text.lower())


def ngram_counts(tokens: list[str], n: int) -> Counter:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: list[str], reference: list[str], n: int) -> RougeScore:
    """Clipped n-gram overlap: recall against the reference's n-gram count,
    precision against the candidate's. A side with zero n-grams contributes
    a 0 ratio rather than a division error."""
    cand = ngram_counts(candidate, n)
    ref = ngram_counts(reference, n)
    overlap = sum(min(count, ref[gram]) for gram, count in cand.items())
    cand_total = sum(cand.values())
    ref_total = sum(ref.values())
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    return RougeScore.from_ratios(precision, recall)


def _to_ids(a: list[str], b: list[str]) -> tuple[list[int], list[int]]:
    vocab: dict[str, int] = {}
    return (
        [vocab.setdefault(tok, len(vocab)) for tok in a],
        [vocab.setdefault(tok, len(vocab)) for tok in b],
    )


def lcs_len(a: list[str], b: list[str]) -> int:
    """Length of a longest common subsequence of two token lists."""
    a_ids, b_ids = _to_ids(a, b)
    return _kernels.lcs_len_ids(a_ids, b_ids)


def rouge_l(candidate: list[str], reference: list[str]) -> RougeScore:
    """Summary-level ROUGE-L: one LCS over the full token sequences."""
    lcs = lcs_len(candidate, reference)
    precision = lcs / len(candidate) if candidate else 0.0
    recall = lcs / len(reference) if reference else 0.0
    return RougeScore.from_ratios(precision, recall)


def score_pair(candidate_text: str, reference_text: str) -> dict[str, RougeScore]:
    """ROUGE-1/2/L for one candidate/reference text pair."""
    cand = tokenize(candidate_text)
    ref = tokenize(reference_text)
    return {
        "r1": rouge_n(cand, ref, 1),
        "r2": rouge_n(cand, ref, 2),
        "rl": rouge_l(cand, ref),
    }
