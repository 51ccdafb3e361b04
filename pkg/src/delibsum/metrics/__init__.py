from .rouge import (
    RougeScore,
    kernel_backend,
    lcs_len,
    ngram_counts,
    rouge_l,
    rouge_n,
    score_pair,
    tokenize,
)

__all__ = [
    "RougeScore",
    "kernel_backend",
    "lcs_len",
    "ngram_counts",
    "rouge_l",
    "rouge_n",
    "score_pair",
    "tokenize",
]
