"""Pure-Python scoring kernels; fallback when the compiled module is absent."""

from __future__ import annotations


def lcs_len_ids(a: list[int], b: list[int]) -> int:
    """Longest common subsequence length over token-id sequences.

    Rolling single-row dynamic programme, O(len(a) * len(b)) time and
    O(min side) memory.
    """
    if not a or not b:
        return 0
    if len(b) > len(a):
        a, b = b, a
    row = [0] * (len(b) + 1)
    for x in a:
        prev = 0
        for j, y in enumerate(b, start=1):
            cur = row[j]
            if x == y:
                row[j] = prev + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            prev = cur
    return row[len(b)]
