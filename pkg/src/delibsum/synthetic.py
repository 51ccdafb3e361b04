"""Deterministic synthetic corpus for demos and end-to-end tests.

Generates comment data engineered so the default selection plan is
satisfiable: each size bucket gets a few more qualifying debates than its
target, and every debate's total character count lands inside at least one
length filter. Texts are nonsense Spanish-flavoured sentences, which is
enough for mock backends and keeps the repository free of real user data.
"""

from __future__ import annotations

import json
import random

from .corpus import Comment, SelectionPlan

_WORDS = (
    "tranvía carril bici casco acera calzada semáforo peatón ciclista multa "
    "norma respeto propuesta barrio transporte movilidad contaminación luz "
    "noche peligro velocidad ciudad calle coche moto ruta parque plaza"
).split()

_PUNCT = (".", ".", ".", "!", "?")


def _sentence(rng: random.Random, words: int) -> str:
    body = " ".join(rng.choice(_WORDS) for _ in range(words))
    return body + rng.choice(_PUNCT)


def _comment_text(rng: random.Random, target_chars: int) -> str:
    # Cut to the exact budget so per-debate totals stay inside their
    # length filter; trailing partial words are harmless in nonsense text.
    parts: list[str] = []
    size = 0
    while size <= target_chars + 50:
        sentence = _sentence(rng, rng.randint(4, 12))
        parts.append(sentence)
        size += len(sentence) + 1
    return " ".join(parts)[:target_chars].rstrip()


def synthesize_comments(
    seed: int = 0,
    plan: SelectionPlan | None = None,
    surplus: int = 5,
) -> list[Comment]:
    """Build comments for ``target + surplus`` debates per plan bucket.

    Deterministic for a given seed. Per-debate character budgets are drawn
    from the narrowest applicable length filter so classification is stable
    regardless of sentence-length jitter.
    """
    plan = plan or SelectionPlan()
    plan.validate()
    rng = random.Random(seed)
    comments: list[Comment] = []
    debate_no = 0
    for bucket_index, (lo, hi, target) in enumerate(plan.size_buckets):
        for _ in range(target + surplus):
            debate_no += 1
            debate_id = f"d{debate_no:04d}"
            n = rng.randint(lo, hi)
            if plan.length_filters:
                flo, fhi = plan.length_filters[
                    min(bucket_index, len(plan.length_filters) - 1)
                ]
                # Aim well inside the filter; sentences overshoot slightly.
                budget = rng.randint(flo + (fhi - flo) // 4, flo + (fhi - flo) // 2)
            else:
                budget = 120 * n
            per_comment = max(20, budget // n)
            for position in range(n):
                comments.append(
                    Comment(
                        comment_id=f"{debate_id}-c{position:03d}",
                        debate_id=debate_id,
                        position=position,
                        text=_comment_text(rng, per_comment),
                    )
                )
    return comments


def write_record_lines(comments: list[Comment], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for c in comments:
            fh.write(
                json.dumps(
                    {
                        "comment_id": c.comment_id,
                        "debate_id": c.debate_id,
                        "position": c.position,
                        "text": c.text,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
