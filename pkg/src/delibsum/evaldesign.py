"""Best-Worst scaling design, evaluator allocation, and score aggregation.

Six summaries per debate are arranged into 9 tuples of 4 such that every
summary appears in exactly 6 tuples and every pair of summaries shares a
tuple 3 or 4 times (9 tuples cover 54 pair slots over 15 pairs, so exact
balance is impossible). Each tuple is rated by a fixed number of
independent evaluators; a summary's comparison score is the percentage of
judgments naming it Best minus the percentage naming it Worst, in
[-100, 100], with an affine [0, 100] normalisation alongside.

A second, absolute rating pass covers two summaries per debate on four
1-4 Likert dimensions, with model picks balanced to within one evaluation
globally.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "DesignError",
    "EvalTuple",
    "Assignment",
    "BWSJudgment",
    "LikertJudgment",
    "ModelComparison",
    "LIKERT_DIMENSIONS",
    "generate_tuples",
    "assign_evaluators",
    "assign_likert_raters",
    "score_bws",
    "select_likert_targets",
    "aggregate_likert",
]

TUPLES_PER_DEBATE = 9
TUPLE_SIZE = 4
SUMMARIES_PER_DEBATE = 6
APPEARANCES_PER_SUMMARY = 6

LIKERT_DIMENSIONS = ("informativeness", "fluency", "consistency", "creativity")

_MAX_DESIGN_ATTEMPTS = 10_000


class DesignError(Exception):
    """Raised for infeasible or ill-formed evaluation designs."""


@dataclass(frozen=True)
class EvalTuple:
    tuple_id: str
    debate_id: str
    summary_ids: tuple[str, str, str, str]
    display_order_seed: int

    def __post_init__(self):
        if len(set(self.summary_ids)) != TUPLE_SIZE:
            raise ValueError(f"tuple {self.tuple_id!r}: needs {TUPLE_SIZE} distinct ids")

    def to_dict(self) -> dict:
        return {
            "tuple_id": self.tuple_id,
            "debate_id": self.debate_id,
            "summary_ids": list(self.summary_ids),
            "display_order_seed": self.display_order_seed,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "EvalTuple":
        return cls(
            tuple_id=raw["tuple_id"],
            debate_id=raw["debate_id"],
            summary_ids=tuple(raw["summary_ids"]),
            display_order_seed=int(raw["display_order_seed"]),
        )


@dataclass(frozen=True)
class Assignment:
    """Allocation of one evaluation unit to one evaluator.

    ``target_id`` is a tuple_id for kind "bws" and a summary_id for kind
    "likert". Open/submitted status is derived from the judgment log, not
    stored here.
    """

    assignment_id: str
    kind: str
    target_id: str
    evaluator_id: str

    def to_dict(self) -> dict:
        return {
            "assignment_id": self.assignment_id,
            "kind": self.kind,
            "target_id": self.target_id,
            "evaluator_id": self.evaluator_id,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Assignment":
        return cls(
            assignment_id=raw["assignment_id"],
            kind=raw["kind"],
            target_id=raw["target_id"],
            evaluator_id=raw["evaluator_id"],
        )


@dataclass(frozen=True)
class BWSJudgment:
    assignment_id: str
    best_summary_id: str
    worst_summary_id: str
    submitted_at: float = 0.0

    def __post_init__(self):
        if self.best_summary_id == self.worst_summary_id:
            raise ValueError("best and worst must differ")

    def to_dict(self) -> dict:
        return {
            "assignment_id": self.assignment_id,
            "best_summary_id": self.best_summary_id,
            "worst_summary_id": self.worst_summary_id,
            "submitted_at": self.submitted_at,
        }


@dataclass(frozen=True)
class LikertJudgment:
    summary_id: str
    evaluator_id: str
    informativeness: int
    fluency: int
    consistency: int
    creativity: int
    submitted_at: float = 0.0

    def __post_init__(self):
        for dim in LIKERT_DIMENSIONS:
            value = getattr(self, dim)
            if not isinstance(value, int) or not 1 <= value <= 4:
                raise ValueError(f"{dim} must be an integer in 1..4, got {value!r}")

    def ratings(self) -> dict[str, int]:
        return {dim: getattr(self, dim) for dim in LIKERT_DIMENSIONS}

    def to_dict(self) -> dict:
        return {
            "summary_id": self.summary_id,
            "evaluator_id": self.evaluator_id,
            **self.ratings(),
            "submitted_at": self.submitted_at,
        }


@dataclass(frozen=True)
class ModelComparison:
    model_id: str
    comp: float
    sd: float
    comp_normalized: float
    sd_normalized: float
    appearances: int
    best_count: int
    worst_count: int

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "comp": self.comp,
            "sd": self.sd,
            "comp_normalized": self.comp_normalized,
            "sd_normalized": self.sd_normalized,
            "appearances": self.appearances,
            "best_count": self.best_count,
            "worst_count": self.worst_count,
        }


def _pair_counts(tuples: list[set[str]]) -> dict[frozenset, int]:
    counts: dict[frozenset, int] = {}
    for members in tuples:
        for pair in combinations(sorted(members), 2):
            key = frozenset(pair)
            counts[key] = counts.get(key, 0) + 1
    return counts


def _repair_appearances(
    tuples: list[set[str]], ids: list[str], rng: random.Random
) -> None:
    """Swap members between tuples until every id appears exactly 6 times."""
    target = APPEARANCES_PER_SUMMARY
    while True:
        counts = {i: 0 for i in ids}
        for members in tuples:
            for sid in members:
                counts[sid] += 1
        over = [i for i in ids if counts[i] > target]
        under = [i for i in ids if counts[i] < target]
        if not over:
            return
        donor = rng.choice(over)
        receiver = rng.choice(under)
        hosts = [t for t in tuples if donor in t and receiver not in t]
        host = rng.choice(hosts)
        host.remove(donor)
        host.add(receiver)


def generate_tuples(
    summary_ids: list[str], seed: int, debate_id: str = ""
) -> list[EvalTuple]:
    """Generate the 9x4 comparison design for one debate's six summaries.

    Constrained randomised search: sample 9 random 4-subsets, repair
    appearance counts by swaps, and accept the first design where every
    summary appears exactly 6 times and all 15 pair co-occurrence counts
    land in {3, 4}. Within-tuple display order is shuffled with a seed
    recorded on the tuple. Deterministic for a given (ids, seed).
    """
    ids = list(summary_ids)
    if len(ids) != SUMMARIES_PER_DEBATE or len(set(ids)) != SUMMARIES_PER_DEBATE:
        raise DesignError(
            f"design needs exactly {SUMMARIES_PER_DEBATE} distinct summary ids, "
            f"got {len(ids)}"
        )
    rng = random.Random(seed)
    for _ in range(_MAX_DESIGN_ATTEMPTS):
        candidate = [set(rng.sample(ids, TUPLE_SIZE)) for _ in range(TUPLES_PER_DEBATE)]
        _repair_appearances(candidate, ids, rng)
        pair_counts = _pair_counts(candidate)
        if len(pair_counts) == 15 and all(c in (3, 4) for c in pair_counts.values()):
            break
    else:
        raise DesignError("design search failed to converge")

    tuples = []
    for index, members in enumerate(candidate):
        display_seed = rng.randrange(2**32)
        ordered = sorted(members)
        random.Random(display_seed).shuffle(ordered)
        prefix = f"{debate_id}-" if debate_id else ""
        tuples.append(
            EvalTuple(
                tuple_id=f"{prefix}t{index:02d}",
                debate_id=debate_id,
                summary_ids=tuple(ordered),
                display_order_seed=display_seed,
            )
        )
    return tuples


def _allocate(
    targets: list[str],
    evaluators: list[str],
    per_target: int,
    kind: str,
) -> list[Assignment]:
    if per_target < 1:
        raise DesignError("per-target evaluator count must be >= 1")
    if len(set(evaluators)) != len(evaluators):
        raise DesignError("evaluator ids must be distinct")
    if len(evaluators) < per_target:
        raise DesignError(
            f"need at least {per_target} evaluators, got {len(evaluators)}"
        )
    loads = {e: 0 for e in evaluators}
    order = {e: i for i, e in enumerate(evaluators)}
    assignments = []
    counter = 0
    for target in targets:
        chosen = sorted(evaluators, key=lambda e: (loads[e], order[e]))[:per_target]
        for evaluator in chosen:
            loads[evaluator] += 1
            assignments.append(
                Assignment(
                    assignment_id=f"{kind}-{counter:06d}",
                    kind=kind,
                    target_id=target,
                    evaluator_id=evaluator,
                )
            )
            counter += 1
    return assignments


def assign_evaluators(
    tuples: list[EvalTuple],
    evaluators: list[str],
    per_tuple: int = 5,
) -> list[Assignment]:
    """Allocate each tuple to ``per_tuple`` distinct evaluators.

    Least-loaded-first with a stable tie-break keeps evaluator loads within
    one of each other; an evaluator is never given the same tuple twice.
    """
    return _allocate([t.tuple_id for t in tuples], evaluators, per_tuple, "bws")


def assign_likert_raters(
    summary_ids: list[str],
    evaluators: list[str],
    raters_per_summary: int = 5,
) -> list[Assignment]:
    """Allocate each Likert target summary to ``raters_per_summary``
    distinct evaluators, balancing loads the same way as the BWS pass."""
    return _allocate(summary_ids, evaluators, raters_per_summary, "likert")


def _sample_sd(values: list[float]) -> float:
    if len(values) < 2:
        return 0.0
    mean = sum(values) / len(values)
    return math.sqrt(sum((v - mean) ** 2 for v in values) / (len(values) - 1))


def score_bws(
    judgments: list[BWSJudgment],
    assignments: dict[str, Assignment],
    tuples: dict[str, EvalTuple],
    summary_to_model: dict[str, str],
) -> list[ModelComparison]:
    """Aggregate Best/Worst judgments into per-model comparison scores.

    comp = 100 * (best - worst) / appearances, where appearances counts the
    judged tuples containing one of the model's summaries. The reported sd
    is the sample standard deviation of per-debate model scores (the
    per-evaluator bootstrap alternative is out of scope). Models come back
    sorted by comp descending.
    """
    appearances: dict[str, int] = {}
    best: dict[str, int] = {}
    worst: dict[str, int] = {}
    per_debate: dict[str, dict[str, list[int]]] = {}

    for judgment in judgments:
        assignment = assignments.get(judgment.assignment_id)
        if assignment is None or assignment.kind != "bws":
            raise DesignError(f"judgment references unknown assignment {judgment.assignment_id!r}")
        etuple = tuples[assignment.target_id]
        members = etuple.summary_ids
        for sid in (judgment.best_summary_id, judgment.worst_summary_id):
            if sid not in members:
                raise DesignError(
                    f"judgment on {etuple.tuple_id!r} names {sid!r} outside the tuple"
                )
        debate_scores = per_debate.setdefault(etuple.debate_id, {})
        for sid in members:
            model = summary_to_model[sid]
            appearances[model] = appearances.get(model, 0) + 1
            delta = 0
            if sid == judgment.best_summary_id:
                best[model] = best.get(model, 0) + 1
                delta = 1
            elif sid == judgment.worst_summary_id:
                worst[model] = worst.get(model, 0) + 1
                delta = -1
            debate_scores.setdefault(model, []).append(delta)

    comparisons = []
    for model in sorted(set(summary_to_model.values())):
        n = appearances.get(model, 0)
        if n == 0:
            raise DesignError(f"model {model!r} has zero judged appearances")
        comp = 100.0 * (best.get(model, 0) - worst.get(model, 0)) / n
        debate_comps = [
            100.0 * sum(deltas) / len(deltas)
            for scores in per_debate.values()
            if (deltas := scores.get(model))
        ]
        sd = _sample_sd(debate_comps)
        comparisons.append(
            ModelComparison(
                model_id=model,
                comp=comp,
                sd=sd,
                comp_normalized=(comp + 100.0) / 2.0,
                sd_normalized=sd / 2.0,
                appearances=n,
                best_count=best.get(model, 0),
                worst_count=worst.get(model, 0),
            )
        )
    comparisons.sort(key=lambda c: (-c.comp, c.model_id))
    return comparisons


def select_likert_targets(
    debates: list,
    models: list[str],
    per_debate: int = 2,
    seed: int = 0,
) -> list[tuple[str, str]]:
    """Pick ``per_debate`` distinct models per debate for the absolute
    rating pass, balancing global per-model counts to within one.

    Exact equality is impossible unless len(debates) * per_debate divides
    evenly by the model count, so the spread-one balance is the guarantee.
    Deterministic for a given seed.
    """
    debate_ids = [getattr(d, "debate_id", d) for d in debates]
    if per_debate > len(models):
        raise DesignError("per_debate cannot exceed the number of models")
    if len(set(models)) != len(models):
        raise DesignError("model ids must be distinct")
    if not debate_ids:
        return []
    rng = random.Random(seed)
    total = len(debate_ids) * per_debate
    base, extra = divmod(total, len(models))
    if base > len(debate_ids):
        raise DesignError("quota exceeds debate count; selection infeasible")
    quotas = {m: base for m in models}
    for m in rng.sample(models, extra):
        quotas[m] += 1

    targets = []
    for debate_id in debate_ids:
        jitter = {m: rng.random() for m in models}
        chosen = sorted(models, key=lambda m: (-quotas[m], jitter[m]))[:per_debate]
        for model in chosen:
            quotas[model] -= 1
            targets.append((debate_id, model))
    if any(q != 0 for q in quotas.values()):
        raise DesignError("selection failed to exhaust quotas; infeasible inputs")
    return targets


def aggregate_likert(
    judgments: list[LikertJudgment],
    summary_to_model: dict[str, str],
) -> dict[str, dict[str, dict[str, float]]]:
    """Per-model, per-dimension mean and sample standard deviation.

    Models without judgments are absent from the result rather than
    reported as zero.
    """
    ratings: dict[str, dict[str, list[int]]] = {}
    for judgment in judgments:
        model = summary_to_model[judgment.summary_id]
        per_model = ratings.setdefault(model, {dim: [] for dim in LIKERT_DIMENSIONS})
        for dim, value in judgment.ratings().items():
            per_model[dim].append(value)

    out: dict[str, dict[str, dict[str, float]]] = {}
    for model in sorted(ratings):
        out[model] = {}
        for dim in LIKERT_DIMENSIONS:
            values = ratings[model][dim]
            out[model][dim] = {
                "mean": sum(values) / len(values),
                "sd": _sample_sd([float(v) for v in values]),
                "n": len(values),
            }
    return out
