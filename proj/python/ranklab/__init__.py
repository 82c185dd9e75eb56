"""Ranking methods over repeated-evaluation outcome tensors."""

from ranklab._core import (
    evaluate,
    generate,
    kendall_tau_b,
    mean_abs_rank_error,
    method_names,
    rank,
    rank_scores,
    rank_views,
    top1_agreement,
)

__all__ = [
    "evaluate",
    "generate",
    "kendall_tau_b",
    "mean_abs_rank_error",
    "method_names",
    "rank",
    "rank_scores",
    "rank_views",
    "top1_agreement",
]
