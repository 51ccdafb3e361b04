"""Study reports: comparison table, rating table, significance matrix.

A report is a pure function of the design and the judgment log, so
regenerating it over the same study yields byte-identical output. Floats
are kept at full precision in the JSON document and rounded to two
decimals only in the text rendering.
"""

from __future__ import annotations

import json

from .evaldesign import (
    LIKERT_DIMENSIONS,
    aggregate_likert,
    score_bws,
)
from .stats import pairwise_significance
from .store import StudyStore

__all__ = ["build_report", "render_text", "report_json"]


def _per_debate_scores(store: StudyStore) -> dict[str, list[float | None]]:
    """Per-model comparison scores aligned over the judged debates, the
    pairing unit for the t-tests."""
    summary_to_model = store.summary_to_model()
    deltas: dict[str, dict[str, list[int]]] = {}
    for judgment in store.bws_judgments.values():
        assignment = store.assignments[judgment.assignment_id]
        etuple = store.tuples[assignment.target_id]
        per_debate = deltas.setdefault(etuple.debate_id, {})
        for sid in etuple.summary_ids:
            model = summary_to_model[sid]
            delta = 0
            if sid == judgment.best_summary_id:
                delta = 1
            elif sid == judgment.worst_summary_id:
                delta = -1
            per_debate.setdefault(model, []).append(delta)

    debates = sorted(deltas)
    models = sorted({m for scores in deltas.values() for m in scores})
    matrix: dict[str, list[float | None]] = {m: [] for m in models}
    for debate_id in debates:
        for model in models:
            per_model = deltas[debate_id].get(model)
            matrix[model].append(
                100.0 * sum(per_model) / len(per_model) if per_model else None
            )
    return matrix


def build_report(store: StudyStore) -> dict:
    """Assemble the full report document from the store's current state."""
    study_id = store.manifest.get("study_id", store.root.name)
    if not store.bws_judgments and not store.likert_judgments:
        return {"study_id": study_id, "status": "no data"}

    report: dict = {
        "study_id": study_id,
        "status": "ok",
        "judgment_counts": {
            "bws": len(store.bws_judgments),
            "likert": len(store.likert_judgments),
        },
    }
    summary_to_model = store.summary_to_model()

    if store.bws_judgments:
        judgments = [
            store.bws_judgments[k] for k in sorted(store.bws_judgments)
        ]
        comparisons = score_bws(
            judgments, store.assignments, store.tuples, summary_to_model
        )
        report["comparison"] = [c.to_dict() for c in comparisons]
        matrix = _per_debate_scores(store)
        if len(matrix) >= 2 and any(len(v) >= 2 for v in matrix.values()):
            report["significance"] = [
                o.to_dict() for o in pairwise_significance(matrix)
            ]

    if store.likert_judgments:
        judgments = [
            store.likert_judgments[k] for k in sorted(store.likert_judgments)
        ]
        report["ratings"] = aggregate_likert(judgments, summary_to_model)

    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def render_text(report: dict) -> str:
    """Human-readable tables: comparison scores, per-dimension ratings,
    pairwise significance with non-significant pairs flagged."""
    if report.get("status") == "no data":
        return f"study {report['study_id']}: no data\n"

    lines = [f"study {report['study_id']}"]
    counts = report["judgment_counts"]
    lines.append(
        f"judgments: {counts['bws']} best-worst, {counts['likert']} likert"
    )

    if "comparison" in report:
        lines.append("")
        lines.append("comparison (best-worst scaling)")
        header = f"{'model':<16} {'comp':>8} {'sd':>7} {'comp[0,100]':>12} {'sd[0,100]':>10}"
        lines.append(header)
        lines.append("-" * len(header))
        for row in report["comparison"]:
            lines.append(
                f"{row['model_id']:<16} {_fmt(row['comp']):>8} {_fmt(row['sd']):>7} "
                f"{_fmt(row['comp_normalized']):>12} {_fmt(row['sd_normalized']):>10}"
            )

    if "ratings" in report:
        ratings = report["ratings"]
        for pair in (LIKERT_DIMENSIONS[:2], LIKERT_DIMENSIONS[2:]):
            lines.append("")
            header = f"{'model':<16}" + "".join(
                f" {dim:>15} {'sd':>6}" for dim in pair
            )
            lines.append(header)
            lines.append("-" * len(header))
            for model in sorted(ratings):
                cells = []
                for dim in pair:
                    cell = ratings[model][dim]
                    cells.append(f" {_fmt(cell['mean']):>15} {_fmt(cell['sd']):>6}")
                lines.append(f"{model:<16}" + "".join(cells))

    if "significance" in report:
        lines.append("")
        lines.append("paired t-tests (two-tailed, per-debate pairing)")
        header = f"{'pair':<34} {'t':>9} {'df':>4} {'p':>9}  "
        lines.append(header)
        lines.append("-" * len(header))
        for row in report["significance"]:
            flag = "" if row["significant_at_05"] else "  not significant"
            if row.get("degenerate"):
                flag += "  (zero-variance differences)"
            pair_label = f"{row['model_a']} vs {row['model_b']}"
            t_text = f"{row['t']:>9.4f}" if row["t"] is not None else f"{'inf':>9}"
            lines.append(
                f"{pair_label:<34} {t_text} {row['df']:>4} {row['p']:>9.4f}{flag}"
            )

    return "\n".join(lines) + "\n"
