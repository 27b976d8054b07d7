# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Error isolation strategies over linguistic attributes.

Every linguistic attribute is evaluated as a dataset of its own: its groups are
tagged from its own records. A gap strategy first decides which records count:

``none``
    every record.
``remove-gap``
    records outside the attribute's Gap groups.
``balance-gap``
    records subsampled so every attribute ends up with the same gap ratio.

A retrieval strategy then decides what is scored: ``none`` scores answer
correctness, ``context-comparison`` scores retrieval sufficiency, leaving
indeterminate comparisons out.
"""

import logging
import math
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from beartype import beartype
from sklearn.utils import check_random_state

from .. import preconditions
from ..errors import InsufficientAttributes
from ..retrieval import EvalRecord
from .context import INDETERMINATE, SUFFICIENT, compare_contexts
from .tags import gap_group_ids, tag_groups, usable_records

__all__ = [
    "NO_ACTION",
    "REMOVE_GAP",
    "BALANCE_GAP",
    "CONTEXT_COMPARISON",
    "GAP_STRATEGIES",
    "RETRIEVAL_STRATEGIES",
    "STRATEGY_LABELS",
    "MatrixCell",
    "StrategyMatrix",
    "linguistic_attrs",
    "balance_target",
    "balance_gap_examples",
    "strategy_matrix",
]

_logger = logging.getLogger(__name__)

NO_ACTION = "none"
REMOVE_GAP = "remove-gap"
BALANCE_GAP = "balance-gap"
CONTEXT_COMPARISON = "context-comparison"

GAP_STRATEGIES = (NO_ACTION, REMOVE_GAP, BALANCE_GAP)
RETRIEVAL_STRATEGIES = (NO_ACTION, CONTEXT_COMPARISON)

STRATEGY_LABELS = {
    NO_ACTION: "No Action",
    REMOVE_GAP: "Remove Gap Groups",
    BALANCE_GAP: "Balance Gap Examples",
    CONTEXT_COMPARISON: "Context Comparison",
}


class MatrixCell(NamedTuple):
    gap_strategy: str
    retrieval_strategy: str
    linguistic_attr: str
    value: float
    support: int


class StrategyMatrix(NamedTuple):
    cells: Tuple[MatrixCell, ...]
    attributes: Tuple[str, ...]
    balance_target: float
    seed: int

    def value(
        self, gap_strategy: str, retrieval_strategy: str, linguistic_attr: str
    ) -> float:
        for cell in self.cells:
            if (
                cell.gap_strategy == gap_strategy
                and cell.retrieval_strategy == retrieval_strategy
                and cell.linguistic_attr == linguistic_attr
            ):
                return cell.value
        raise KeyError((gap_strategy, retrieval_strategy, linguistic_attr))


def linguistic_attrs(records: Sequence[EvalRecord]) -> List[str]:
    attrs: List[str] = []
    for record in records:
        if record.linguistic_attr not in attrs:
            attrs.append(record.linguistic_attr)
    return attrs


def _gap_split(
    records: Sequence[EvalRecord],
) -> Tuple[List[EvalRecord], List[EvalRecord]]:
    gaps = gap_group_ids(tag_groups(records))
    in_gap = [record for record in records if record.group_id in gaps]
    outside = [record for record in records if record.group_id not in gaps]
    return in_gap, outside


def balance_target(ratios: Sequence[float], gap_counts: Sequence[int]) -> float:
    """
    The common gap ratio every attribute is subsampled to.

    Subsampling non-gap records raises an attribute's ratio, so the largest ratio is
    the target when every attribute below it has gap records to keep and the
    target is below one. Otherwise the gap records of the attributes above the
    smallest ratio are subsampled down to it.

    >>> balance_target([0.1, 0.3], [2, 6])
    0.3
    >>> balance_target([0.0, 0.3], [0, 6])
    0.0
    """
    highest, lowest = max(ratios), min(ratios)
    reachable = all(
        count > 0 or ratio == highest for ratio, count in zip(ratios, gap_counts)
    )
    if reachable and highest < 1.0:
        return highest
    return lowest


def _subsample(
    records: List[EvalRecord], size: int, seed: int
) -> List[EvalRecord]:
    if size >= len(records):
        return list(records)
    chosen = check_random_state(seed).choice(len(records), size=size, replace=False)
    return [records[index] for index in np.sort(chosen)]


@beartype
def balance_gap_examples(
    records: Sequence[EvalRecord], seed: int = 0
) -> Tuple[Dict[str, List[EvalRecord]], float]:
    """
    Subsamples each attribute's records to a common gap ratio.

    Returns
    -------
    Tuple[Dict[str, List[EvalRecord]], float]
        The kept records per attribute, in record order, and the common ratio.
    """
    splits = {
        attr: _gap_split(
            [record for record in records if record.linguistic_attr == attr]
        )
        for attr in linguistic_attrs(records)
    }
    ratios = [len(gap) / (len(gap) + len(rest)) for gap, rest in splits.values()]
    target = balance_target(ratios, [len(gap) for gap, _ in splits.values()])
    balanced = {}
    for (attr, (gap, rest)), ratio in zip(splits.items(), ratios):
        if math.isclose(ratio, target):
            kept_gap, kept_rest = gap, rest
        elif ratio < target:
            size = int(round(len(gap) * (1.0 - target) / target))
            kept_gap, kept_rest = gap, _subsample(rest, size, seed)
        else:
            size = int(round(len(rest) * target / (1.0 - target)))
            kept_gap, kept_rest = _subsample(gap, size, seed), rest
        kept = {id(record) for record in kept_gap + kept_rest}
        balanced[attr] = [
            record
            for record in records
            if record.linguistic_attr == attr and id(record) in kept
        ]
        _logger.info(
            f"balanced '{attr}' from gap ratio {ratio:.3f} to {target:.3f} "
            f"keeping {len(balanced[attr])} records"
        )
    return balanced, target


def _score(records: Sequence[EvalRecord], retrieval_strategy: str) -> Tuple[float, int]:
    if retrieval_strategy == CONTEXT_COMPARISON:
        judged = [
            record.retrieval_judgement == SUFFICIENT
            for record in records
            if record.retrieval_judgement not in (None, INDETERMINATE)
        ]
    else:
        judged = [record.correct for record in records]
    if len(judged) == 0:
        return float("nan"), 0
    return float(np.mean(judged)), len(judged)


@beartype
def strategy_matrix(
    records: Sequence[EvalRecord],
    gap_strategies: Sequence[str] = GAP_STRATEGIES,
    retrieval_strategies: Sequence[str] = RETRIEVAL_STRATEGIES,
    seed: int = 0,
    attributes: Optional[Sequence[str]] = None,
) -> StrategyMatrix:
    """
    Accuracy of every linguistic attribute under every strategy combination.

    Records without a ``retrieval_judgement`` are compared with the default
    intersection rule when a context comparison strategy is requested. A cell
    without any record to score holds ``nan``.

    Parameters
    ----------
    records : Sequence[EvalRecord]
        Judged records covering at least two linguistic attributes.
    gap_strategies : Sequence[str]
    retrieval_strategies : Sequence[str]
    seed : int, optional (default=0)
        Seed of the balancing subsample.
    attributes : Optional[Sequence[str]]
        Attribute order of the matrix, by default the order of first appearance.

    Raises
    ------
    InsufficientAttributes
        If the records cover fewer than two linguistic attributes.
    """
    for strategy in gap_strategies:
        preconditions.check_argument(
            strategy in GAP_STRATEGIES, f"unknown gap strategy '{strategy}'"
        )
    for strategy in retrieval_strategies:
        preconditions.check_argument(
            strategy in RETRIEVAL_STRATEGIES,
            f"unknown retrieval strategy '{strategy}'",
        )
    usable = usable_records(records)
    if CONTEXT_COMPARISON in retrieval_strategies and any(
        record.retrieval_judgement is None for record in usable
    ):
        usable = compare_contexts(usable)
    attrs = list(attributes) if attributes is not None else linguistic_attrs(usable)
    if len(attrs) < 2:
        raise InsufficientAttributes(
            f"strategies compare linguistic attributes, found only {attrs}"
        )
    selections: Dict[str, Dict[str, List[EvalRecord]]] = {}
    target = float("nan")
    for gap_strategy in gap_strategies:
        if gap_strategy == BALANCE_GAP:
            balanced, target = balance_gap_examples(usable, seed)
            selections[gap_strategy] = {attr: balanced.get(attr, []) for attr in attrs}
            continue
        per_attr = {}
        for attr in attrs:
            members = [record for record in usable if record.linguistic_attr == attr]
            if gap_strategy == REMOVE_GAP and members:
                members = _gap_split(members)[1]
            per_attr[attr] = members
        selections[gap_strategy] = per_attr
    cells = []
    for gap_strategy in gap_strategies:
        for retrieval_strategy in retrieval_strategies:
            for attr in attrs:
                value, support = _score(
                    selections[gap_strategy][attr], retrieval_strategy
                )
                cells.append(
                    MatrixCell(gap_strategy, retrieval_strategy, attr, value, support)
                )
    return StrategyMatrix(tuple(cells), tuple(attrs), target, seed)
