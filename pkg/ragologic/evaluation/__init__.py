# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .context import (
    INDETERMINATE,
    INSUFFICIENT,
    INTERSECTION,
    MATCH_RULES,
    STRICT,
    SUFFICIENT,
    ComparisonSummary,
    compare_contexts,
    context_comparison,
    summarize_comparisons,
)
from .judging import judge_records
from .mrc import MrcFailure, MrcReport, gold_context, mrc_check
from .open_domain import filter_open_domain, open_domain_groups
from .protocol import EvalConfig, EvalOutcome, closed_book_judgements, evaluate
from .report import (
    REPORT_FORMAT,
    ModularReport,
    build_report,
    load_report,
    load_results,
    matrix_frame,
    record_from_dict,
    record_to_dict,
    render_report,
    save_report,
    save_results,
)
from .strategies import (
    BALANCE_GAP,
    CONTEXT_COMPARISON,
    GAP_STRATEGIES,
    NO_ACTION,
    REMOVE_GAP,
    RETRIEVAL_STRATEGIES,
    STRATEGY_LABELS,
    MatrixCell,
    StrategyMatrix,
    balance_gap_examples,
    balance_target,
    linguistic_attrs,
    strategy_matrix,
)
from .tags import (
    GAP,
    NON_ROBUST,
    ROBUST,
    TAGS,
    Accuracy,
    GroupTag,
    acc_retrieval_db,
    gap_group_ids,
    group_records,
    refined_accuracy,
    tag_counts,
    tag_groups,
    usable_records,
)

__all__ = [
    "Accuracy",
    "BALANCE_GAP",
    "CONTEXT_COMPARISON",
    "ComparisonSummary",
    "EvalConfig",
    "EvalOutcome",
    "GAP",
    "GAP_STRATEGIES",
    "GroupTag",
    "INDETERMINATE",
    "INSUFFICIENT",
    "INTERSECTION",
    "MATCH_RULES",
    "MatrixCell",
    "ModularReport",
    "MrcFailure",
    "MrcReport",
    "NON_ROBUST",
    "NO_ACTION",
    "REMOVE_GAP",
    "REPORT_FORMAT",
    "RETRIEVAL_STRATEGIES",
    "ROBUST",
    "STRATEGY_LABELS",
    "STRICT",
    "SUFFICIENT",
    "StrategyMatrix",
    "TAGS",
    "acc_retrieval_db",
    "balance_gap_examples",
    "balance_target",
    "build_report",
    "closed_book_judgements",
    "compare_contexts",
    "context_comparison",
    "evaluate",
    "filter_open_domain",
    "gap_group_ids",
    "gold_context",
    "group_records",
    "judge_records",
    "linguistic_attrs",
    "load_report",
    "load_results",
    "matrix_frame",
    "mrc_check",
    "open_domain_groups",
    "record_from_dict",
    "record_to_dict",
    "refined_accuracy",
    "render_report",
    "save_report",
    "save_results",
    "strategy_matrix",
    "summarize_comparisons",
    "tag_counts",
    "tag_groups",
    "usable_records",
]
