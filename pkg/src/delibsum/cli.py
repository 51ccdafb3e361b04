"""Command-line workflow: synth, ingest, select, run, design, assign,
serve, report, rouge.

Each verb writes its artifact into the study directory and refuses to run
before its prerequisites (the error names the missing step). Every seeded
step records its seed in the study manifest, so a study is reproducible
from its directory alone.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import metrics
from .backends import BackendDescriptor, BackendPool
from .corpus import (
    CorpusError,
    SelectionPlan,
    group_into_debates,
    parse_comments,
    select_debates,
)
from .evaldesign import (
    DesignError,
    assign_evaluators,
    assign_likert_raters,
    generate_tuples,
    select_likert_targets,
)
from .pipeline import LanguagePair, LogicalClock, run_roundtrip
from .report import build_report, render_text, report_json
from .store import StoreError, StudyStore, summary_id_for
from .synthetic import synthesize_comments, write_record_lines

DEFAULT_CONFIG = {
    "plan": SelectionPlan().to_dict(),
    "per_tuple": 5,
    "likert_raters": 5,
    "likert_per_debate": 2,
}


def derive_seed(base: int, *parts: str) -> int:
    """Stable per-item sub-seed; hash-based so it survives process
    boundaries (PYTHONHASHSEED does not apply)."""
    digest = hashlib.blake2s(
        ("|".join([str(base), *parts])).encode("utf-8"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big")


def load_config(path: str | None) -> dict:
    config = json.loads(json.dumps(DEFAULT_CONFIG))
    if path:
        with open(path, encoding="utf-8") as fh:
            user = json.load(fh)
        config.update(user)
    return config


def load_backend_manifest(path: str) -> tuple[BackendDescriptor, list[BackendDescriptor], LanguagePair]:
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    translator = BackendDescriptor.from_dict(raw["translator"])
    summarizers = [BackendDescriptor.from_dict(s) for s in raw["summarizers"]]
    pair = LanguagePair.from_dict(raw.get("pair", {"source": "es", "pivot": "en"}))
    return translator, summarizers, pair


def _open_store(args, create: bool = False) -> StudyStore:
    return StudyStore(args.study, create=create)


def cmd_synth(args) -> int:
    plan = SelectionPlan.from_dict(load_config(args.config)["plan"])
    comments = synthesize_comments(seed=args.seed, plan=plan, surplus=args.surplus)
    write_record_lines(comments, args.out)
    print(f"wrote {len(comments)} comments to {args.out}")
    return 0


def cmd_ingest(args) -> int:
    store = _open_store(args, create=True)
    raw = Path(args.input).read_bytes()
    comments = parse_comments(raw, args.format)
    debates = group_into_debates(comments)
    store.save_debates(debates, source=args.input)
    print(f"ingested {len(comments)} comments into {len(debates)} debates")
    return 0


def cmd_select(args) -> int:
    store = _open_store(args)
    config = load_config(args.config)
    plan = SelectionPlan.from_dict(config["plan"])
    if args.seed is not None:
        plan = SelectionPlan(plan.size_buckets, plan.length_filters, args.seed)
    store.require_step("ingest")
    selected = select_debates(list(store.debates.values()), plan)
    store.save_selection(selected, plan)
    print(f"selected {len(selected)} debates (seed {plan.seed})")
    return 0


def cmd_run(args) -> int:
    store = _open_store(args)
    debates = store.selected_debates()
    translator, summarizers, pair = load_backend_manifest(args.backend_manifest)
    run_id = args.run_id or f"run-{args.seed:08d}"
    pool = BackendPool()
    clock = LogicalClock()
    records = []
    for debate in debates:
        for record in run_roundtrip(
            debate, translator, summarizers, pair, pool=pool, clock=clock
        ):
            sid = summary_id_for(run_id, record.debate_id, record.model_id)
            records.append((sid, record))
    store.write_run(run_id, records, translator, summarizers, pair.to_dict(), args.seed)
    failed = sum(1 for _, r in records if r.status != "success")
    print(f"run {run_id}: {len(records)} records, {failed} failed")
    return 0


def cmd_design(args) -> int:
    store = _open_store(args)
    store.require_step("run")
    debates = store.selected_debates()
    by_debate: dict[str, list[str]] = {}
    for sid, raw in store.summaries.items():
        if raw["status"] == "success":
            by_debate.setdefault(raw["debate_id"], []).append(sid)
    tuples = []
    for debate in debates:
        summary_ids = sorted(by_debate.get(debate.debate_id, []))
        seed = derive_seed(args.seed, "design", debate.debate_id)
        tuples.extend(generate_tuples(summary_ids, seed, debate_id=debate.debate_id))
    store.save_design(tuples, args.seed)
    print(f"designed {len(tuples)} tuples over {len(debates)} debates")
    return 0


def cmd_assign(args) -> int:
    store = _open_store(args)
    store.require_step("design")
    config = load_config(args.config)
    evaluators = [e.strip() for e in args.evaluators.split(",") if e.strip()]
    per_tuple = args.per_tuple or config["per_tuple"]
    likert_raters = args.likert_raters or config["likert_raters"]
    likert_per_debate = config["likert_per_debate"]

    tuples = sorted(store.tuples.values(), key=lambda t: t.tuple_id)
    assignments = assign_evaluators(tuples, evaluators, per_tuple)

    debates = store.selected_debates()
    models = sorted({raw["model_id"] for raw in store.summaries.values()})
    targets = select_likert_targets(
        debates, models, per_debate=likert_per_debate, seed=args.seed
    )
    run_id = store.latest_run_id()
    target_summaries = [
        summary_id_for(run_id, debate_id, model_id) for debate_id, model_id in targets
    ]
    assignments.extend(
        assign_likert_raters(target_summaries, evaluators, likert_raters)
    )
    store.save_assignments(
        assignments,
        {
            "per_tuple": per_tuple,
            "likert_raters": likert_raters,
            "likert_per_debate": likert_per_debate,
            "evaluators": evaluators,
            "seed": args.seed,
        },
    )
    print(f"allocated {len(assignments)} assignments to {len(evaluators)} evaluators")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .api import create_app

    store = _open_store(args)
    store.require_step("assign")
    uvicorn.run(create_app(store), host=args.host, port=args.port)
    return 0


def cmd_report(args) -> int:
    store = _open_store(args)
    report = build_report(store)
    payload = report_json(report) if args.format == "json" else render_text(report)
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return 0


def cmd_rouge(args) -> int:
    candidates = Path(args.candidates).read_text(encoding="utf-8").splitlines()
    references = Path(args.references).read_text(encoding="utf-8").splitlines()
    if len(candidates) != len(references):
        raise CorpusError(
            f"candidate/reference line counts differ: {len(candidates)} vs {len(references)}"
        )
    out = sys.stdout if not args.out else open(args.out, "w", encoding="utf-8")
    try:
        for candidate, reference in zip(candidates, references):
            scores = metrics.score_pair(candidate, reference)
            row = {name: score.to_dict(x100=args.x100) for name, score in scores.items()}
            out.write(json.dumps(row, sort_keys=True, ensure_ascii=False) + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="delibsum",
        description="Cross-lingual deliberation summarisation pipeline and "
        "human-evaluation harness",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def study_arg(p):
        p.add_argument("--study", required=True, help="study directory")

    p = sub.add_parser("synth", help="generate a synthetic demo corpus")
    p.add_argument("--out", "-o", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--surplus", type=int, default=5, help="extra debates per bucket")
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("ingest", help="parse comments and group into debates")
    study_arg(p)
    p.add_argument("--input", required=True)
    p.add_argument(
        "--format", choices=["delimited-table", "record-lines"], default="record-lines"
    )
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("select", help="sample the study set per the plan")
    study_arg(p)
    p.add_argument("--config", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("run", help="translate, summarise, back-translate")
    study_arg(p)
    p.add_argument("--backend-manifest", required=True)
    p.add_argument("--run-id", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("design", help="build best-worst tuples per debate")
    study_arg(p)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("assign", help="allocate tuples and likert targets")
    study_arg(p)
    p.add_argument("--evaluators", required=True, help="comma-separated evaluator ids")
    p.add_argument("--config", default=None)
    p.add_argument("--per-tuple", type=int, default=None)
    p.add_argument("--likert-raters", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_assign)

    p = sub.add_parser("serve", help="run the evaluation HTTP service")
    study_arg(p)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("report", help="comparison, ratings, significance")
    study_arg(p)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("rouge", help="score candidate/reference file pairs")
    p.add_argument("--candidates", required=True, help="one candidate text per line")
    p.add_argument("--references", required=True, help="one reference text per line")
    p.add_argument("--x100", action="store_true", help="scale scores by 100")
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(func=cmd_rouge)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CorpusError, DesignError, StoreError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
