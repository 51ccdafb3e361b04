"""Paired Student's t-tests over per-debate model scores.

The t statistic uses the sample standard deviation of the pairwise
differences; p-values are two-tailed via the t-distribution CDF, which is
evaluated through the regularised incomplete beta function (modified Lentz
continued fraction, 1e-12 convergence). No multiple-comparison correction
is applied by default; a Bonferroni toggle exists for callers that want
one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

__all__ = [
    "TTestResult",
    "PairwiseOutcome",
    "paired_t",
    "pairwise_significance",
    "t_cdf",
    "betainc_reg",
]

_FPMIN = 1e-300
_CF_TOL = 1e-12
_CF_MAX_ITER = 500


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, evaluated with the
    modified Lentz method."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _FPMIN:
        d = _FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = 1.0 + aa / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_TOL:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for a={a}, b={b}, x={x}")


def betainc_reg(a: float, b: float, x: float) -> float:
    """Regularised incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise ValueError("a and b must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must be in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    front = math.exp(
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log(1.0 - x)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_cdf(t: float, df: int) -> float:
    """Cumulative probability P(T <= t) for Student's t with df degrees of
    freedom."""
    if df < 1:
        raise ValueError("df must be >= 1")
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    tail = 0.5 * betainc_reg(df / 2.0, 0.5, x)
    return 1.0 - tail if t > 0 else tail


@dataclass(frozen=True)
class TTestResult:
    t_statistic: float
    degrees_of_freedom: int
    p_value: float
    degenerate: bool = False

    @property
    def significant_at_05(self) -> bool:
        return self.p_value < 0.05

    def to_dict(self) -> dict:
        # Degenerate zero-variance pairs carry an infinite t, which strict
        # JSON cannot represent; the flag plus p=0 preserve the meaning.
        return {
            "t": self.t_statistic if math.isfinite(self.t_statistic) else None,
            "df": self.degrees_of_freedom,
            "p": self.p_value,
            "significant_at_05": self.significant_at_05,
            "degenerate": self.degenerate,
        }


def paired_t(x: list[float], y: list[float]) -> TTestResult:
    """Two-tailed paired Student's t-test on aligned samples.

    Degenerate cases: identical samples give t=0, p=1; a nonzero constant
    difference has zero variance, which is reported as p=0 with the
    degenerate flag set rather than a division error.
    """
    if len(x) != len(y):
        raise ValueError("paired samples must have equal length")
    n = len(x)
    if n < 2:
        raise ValueError("need at least 2 pairs")
    d = [a - b for a, b in zip(x, y)]
    mean = sum(d) / n
    var = sum((v - mean) ** 2 for v in d) / (n - 1)
    df = n - 1
    if var == 0.0:
        if mean == 0.0:
            return TTestResult(0.0, df, 1.0)
        return TTestResult(math.copysign(math.inf, mean), df, 0.0, degenerate=True)
    t = mean / math.sqrt(var / n)
    p = 2.0 * t_cdf(-abs(t), df)
    return TTestResult(t, df, min(p, 1.0))


@dataclass(frozen=True)
class PairwiseOutcome:
    model_a: str
    model_b: str
    result: TTestResult
    excluded_debates: int

    def to_dict(self) -> dict:
        return {
            "model_a": self.model_a,
            "model_b": self.model_b,
            "excluded_debates": self.excluded_debates,
            **self.result.to_dict(),
        }


def pairwise_significance(
    per_debate_scores: dict[str, list[float | None]],
    bonferroni: bool = False,
) -> list[PairwiseOutcome]:
    """Paired t-tests between every model pair.

    ``per_debate_scores`` maps model -> scores aligned over one shared
    debate sequence; a None entry drops that debate from every pair
    involving the model (the count of exclusions is reported per pair).
    Pairs come back in sorted model order, one entry per unordered pair;
    swapping the pair negates t and keeps p.
    """
    models = sorted(per_debate_scores)
    lengths = {len(v) for v in per_debate_scores.values()}
    if len(lengths) > 1:
        raise ValueError("score lists must be aligned over the same debates")
    n_pairs = len(models) * (len(models) - 1) // 2
    outcomes = []
    for a, b in combinations(models, 2):
        xs, ys, excluded = [], [], 0
        for va, vb in zip(per_debate_scores[a], per_debate_scores[b]):
            if va is None or vb is None:
                excluded += 1
                continue
            xs.append(va)
            ys.append(vb)
        result = paired_t(xs, ys)
        if bonferroni:
            corrected = min(result.p_value * n_pairs, 1.0)
            result = TTestResult(
                result.t_statistic,
                result.degrees_of_freedom,
                corrected,
                result.degenerate,
            )
        outcomes.append(PairwiseOutcome(a, b, result, excluded))
    return outcomes
