"""Cross-lingual deliberation summarisation pipeline and human-evaluation
harness.

Debate texts from a participation platform are translated to a pivot
language, summarised by pluggable model backends, translated back, and
compared through a Best-Worst scaling study with Likert ratings, ROUGE
scoring, and paired t-tests.
"""

__version__ = "0.1.0"
