# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Evaluation reports and results files.

A results file is a JSON array with one object per :class:`EvalRecord`; ids are
plain integer arrays so the file stays JSON serializable. A report file holds a
:class:`ModularReport`, cells of the strategy matrix without a value as ``null``.
"""

import json
import logging
import math
import os
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Union

import numpy as np
import pandas as pd
from beartype import beartype

from ..errors import AllGroupsGap, FormatError
from ..judges import Judgement
from ..retrieval import EvalRecord
from ..schema import make_answer, parse_answer
from ..utils import JsonFields, load_json
from .context import (
    INDETERMINATE,
    INTERSECTION,
    SUFFICIENT,
    ComparisonSummary,
    compare_contexts,
    summarize_comparisons,
)
from .strategies import (
    GAP_STRATEGIES,
    RETRIEVAL_STRATEGIES,
    STRATEGY_LABELS,
    MatrixCell,
    StrategyMatrix,
    linguistic_attrs,
    strategy_matrix,
)
from .tags import (
    Accuracy,
    acc_retrieval_db,
    refined_accuracy,
    tag_counts,
    tag_groups,
    usable_records,
)

__all__ = [
    "REPORT_FORMAT",
    "ModularReport",
    "build_report",
    "matrix_frame",
    "render_report",
    "save_report",
    "load_report",
    "save_results",
    "load_results",
    "record_to_dict",
    "record_from_dict",
]

_logger = logging.getLogger(__name__)

REPORT_FORMAT = "ragologic-report"
REPORT_VERSION = 1

PathLike = Union[str, Path]


class ModularReport(NamedTuple):
    """
    Metrics of one judged run.

    ``baseline_acc == refined_acc * (1 - gap_ratio)``. ``retrieval_acc`` is the share
    of determinate context comparisons judged sufficient and ``None`` when every
    comparison is indeterminate. ``refined_acc`` is ``nan`` when every query lies in
    a Gap group. ``matrix`` is ``None`` for a run with a single linguistic
    attribute.
    """

    acc_retrieval_db: float
    baseline_acc: float
    refined_acc: float
    gap_ratio: float
    retrieval_acc: Optional[float]
    tag_counts: Dict[str, int]
    record_count: int
    error_count: int
    comparison: ComparisonSummary
    matrix: Optional[StrategyMatrix]
    context_rule: str = INTERSECTION
    open_domain_removed: int = 0


@beartype
def build_report(
    records: Sequence[EvalRecord],
    gap_strategies: Sequence[str] = GAP_STRATEGIES,
    retrieval_strategies: Sequence[str] = RETRIEVAL_STRATEGIES,
    seed: int = 0,
    rule: str = INTERSECTION,
    open_domain_removed: int = 0,
) -> ModularReport:
    """
    Tags the groups of ``records`` and computes every metric of the report.

    Groups are tagged jointly over all linguistic attributes for the overall
    metrics and per attribute inside the strategy matrix.

    When every query lies in a Gap group the refined accuracy is ``nan``, the gap
    ratio is one and the plain accuracy is zero.

    Raises
    ------
    UnjudgedRecord
    EmptyTagList
    """
    usable = usable_records(records)
    compared = compare_contexts(usable, rule)
    tags = tag_groups(compared)
    try:
        accuracy = refined_accuracy(compared, tags)
    except AllGroupsGap:
        _logger.warning(
            "every query belongs to a Gap group, the refined accuracy is undefined"
        )
        accuracy = Accuracy(0.0, float("nan"), 1.0)
    determinate = [
        record.retrieval_judgement == SUFFICIENT
        for record in compared
        if record.retrieval_judgement != INDETERMINATE
    ]
    retrieval_acc = float(np.mean(determinate)) if determinate else None
    matrix = None
    if len(linguistic_attrs(compared)) >= 2:
        matrix = strategy_matrix(compared, gap_strategies, retrieval_strategies, seed)
    else:
        _logger.warning("a single linguistic attribute leaves no strategy matrix")
    report = ModularReport(
        acc_retrieval_db(tags),
        accuracy.accuracy,
        accuracy.refined,
        accuracy.gap_ratio,
        retrieval_acc,
        tag_counts(tags),
        len(usable),
        len(records) - len(usable),
        summarize_comparisons(compared),
        matrix,
        rule,
        open_domain_removed,
    )
    _logger.info(
        f"Acc={report.baseline_acc:.3f} R={report.refined_acc:.3f} "
        f"lambda={report.gap_ratio:.3f} Acc_retrieval_db={report.acc_retrieval_db:.3f}"
    )
    return report


def matrix_frame(matrix: StrategyMatrix) -> pd.DataFrame:
    """The strategy matrix with a (gap strategy, retrieval strategy) row index."""
    rows: List[Any] = []
    values: Dict[Any, Dict[str, float]] = {}
    for cell in matrix.cells:
        key = (
            STRATEGY_LABELS[cell.gap_strategy],
            STRATEGY_LABELS[cell.retrieval_strategy],
        )
        if key not in values:
            rows.append(key)
            values[key] = {}
        values[key][cell.linguistic_attr] = cell.value
    frame = pd.DataFrame(
        [[values[key].get(attr, np.nan) for attr in matrix.attributes] for key in rows],
        index=pd.MultiIndex.from_tuples(
            rows, names=["Gap strategy", "Retrieval strategy"]
        ),
        columns=list(matrix.attributes),
    )
    return frame


def _fraction(value: Optional[float]) -> str:
    if value is None or math.isnan(value):
        return "n/a"
    return f"{value:.2f}"


@beartype
def render_report(report: ModularReport) -> str:
    """
    An aligned text rendering: overall metrics first, then the strategy matrix
    with one column per linguistic attribute.
    """
    summary = pd.Series(
        {
            "Acc_retrieval_db": _fraction(report.acc_retrieval_db),
            "Acc": _fraction(report.baseline_acc),
            "R": _fraction(report.refined_acc),
            "lambda": _fraction(report.gap_ratio),
            "Retrieval accuracy": _fraction(report.retrieval_acc),
            "Records": str(report.record_count),
            "Errors": str(report.error_count),
            "Open-domain groups removed": str(report.open_domain_removed),
            "Groups": ", ".join(
                f"{tag} {count}" for tag, count in report.tag_counts.items()
            ),
            f"Context comparison ({report.context_rule})": (
                f"sufficient {report.comparison.sufficient}, "
                f"insufficient {report.comparison.insufficient}, "
                f"indeterminate {report.comparison.indeterminate}, "
                f"rule disagreements {report.comparison.disagreements}"
            ),
        }
    )
    lines = [summary.to_string()]
    if report.matrix is not None:
        lines.append("")
        lines.append(
            matrix_frame(report.matrix).to_string(
                na_rep="n/a", float_format=lambda value: f"{value:.2f}"
            )
        )
        if not math.isnan(report.matrix.balance_target):
            lines.append(
                f"balanced gap ratio {report.matrix.balance_target:.3f} "
                f"(seed {report.matrix.seed})"
            )
    return "\n".join(lines) + "\n"


def _nullable(value: Optional[float]) -> Optional[float]:
    if value is None or math.isnan(value):
        return None
    return float(value)


def _report_to_dict(report: ModularReport) -> Dict[str, Any]:
    matrix = None
    if report.matrix is not None:
        matrix = {
            "attributes": list(report.matrix.attributes),
            "balance_target": _nullable(report.matrix.balance_target),
            "seed": report.matrix.seed,
            "cells": [
                {**cell._asdict(), "value": _nullable(cell.value)}
                for cell in report.matrix.cells
            ],
        }
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "acc_retrieval_db": report.acc_retrieval_db,
        "baseline_acc": report.baseline_acc,
        "refined_acc": _nullable(report.refined_acc),
        "gap_ratio": report.gap_ratio,
        "retrieval_acc": report.retrieval_acc,
        "tag_counts": dict(report.tag_counts),
        "record_count": report.record_count,
        "error_count": report.error_count,
        "comparison": report.comparison._asdict(),
        "matrix": matrix,
        "context_rule": report.context_rule,
        "open_domain_removed": report.open_domain_removed,
    }


def _nan(value: Optional[float]) -> float:
    return float("nan") if value is None else float(value)


def _report_from_dict(raw: Any, path: str) -> ModularReport:
    fields = JsonFields(path, "report", raw)
    if fields.get("format", str) != REPORT_FORMAT:
        raise FormatError(path, f"report.format: expected '{REPORT_FORMAT}'")
    number = (int, float)
    comparison = JsonFields(path, "report.comparison", fields.get("comparison", dict))
    matrix = None
    raw_matrix = fields.get("matrix", dict, optional=True)
    if raw_matrix is not None:
        matrix_fields = JsonFields(path, "report.matrix", raw_matrix)
        cells = []
        for index, entry in enumerate(matrix_fields.get("cells", list)):
            cell = JsonFields(path, f"report.matrix.cells[{index}]", entry)
            cells.append(
                MatrixCell(
                    cell.get("gap_strategy", str),
                    cell.get("retrieval_strategy", str),
                    cell.get("linguistic_attr", str),
                    _nan(cell.get("value", number, optional=True)),
                    cell.get("support", int),
                )
            )
        matrix = StrategyMatrix(
            tuple(cells),
            tuple(matrix_fields.get("attributes", list)),
            _nan(matrix_fields.get("balance_target", number, optional=True)),
            matrix_fields.get("seed", int),
        )
    retrieval_acc = fields.get("retrieval_acc", number, optional=True)
    return ModularReport(
        float(fields.get("acc_retrieval_db", number)),
        float(fields.get("baseline_acc", number)),
        _nan(fields.get("refined_acc", number, optional=True)),
        float(fields.get("gap_ratio", number)),
        None if retrieval_acc is None else float(retrieval_acc),
        {str(tag): int(count) for tag, count in fields.get("tag_counts", dict).items()},
        fields.get("record_count", int),
        fields.get("error_count", int),
        ComparisonSummary(
            comparison.get("sufficient", int),
            comparison.get("insufficient", int),
            comparison.get("indeterminate", int),
            comparison.get("disagreements", int),
        ),
        matrix,
        fields.get("context_rule", str),
        fields.get("open_domain_removed", int),
    )


def _write_json(payload: Any, path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    staging = path.with_suffix(path.suffix + ".tmp")
    with open(staging, "w", encoding="utf-8") as payload_io:
        json.dump(payload, payload_io, indent=2, ensure_ascii=False)
    os.replace(staging, path)


@beartype
def save_report(report: ModularReport, path: PathLike) -> None:
    _write_json(_report_to_dict(report), path)


@beartype
def load_report(path: PathLike) -> ModularReport:
    """
    Raises
    ------
    FormatError
    """
    return _report_from_dict(load_json(str(path)), str(path))


def record_to_dict(record: EvalRecord) -> Dict[str, Any]:
    judgement = None
    if record.judgement is not None:
        judgement = record.judgement._asdict()
    return {
        "query": record.query,
        "group_id": record.group_id,
        "linguistic_attr": record.linguistic_attr,
        "answer": record.answer.text,
        "response": record.response,
        "judgement": judgement,
        "retrieval_judgement": record.retrieval_judgement,
        "true_document_ids": (
            None
            if record.true_document_ids is None
            else [int(doc_id) for doc_id in record.true_document_ids]
        ),
        "retrieved_document_ids": [
            int(doc_id) for doc_id in record.retrieved_document_ids
        ],
        "retrieved_chunk_ids": [
            int(chunk_id) for chunk_id in record.retrieved_chunk_ids
        ],
        "context": record.context,
        "template": record.template,
        "error": record.error,
    }


def _ids(path: str, where: str, raw: List[Any]) -> tuple:
    if not all(isinstance(item, int) for item in raw):
        raise FormatError(path, f"{where}: expected integer ids")
    return tuple(raw)


def record_from_dict(raw: Any, path: str = "<memory>", index: int = 0) -> EvalRecord:
    where = f"[{index}]"
    fields = JsonFields(path, where, raw)
    try:
        answer = make_answer(parse_answer(fields.get("answer", str)))
    except ValueError as error:
        raise FormatError(path, f"{where}.answer: {error}") from error
    judgement = None
    raw_judgement = fields.get("judgement", dict, optional=True)
    if raw_judgement is not None:
        verdict = JsonFields(path, f"{where}.judgement", raw_judgement)
        score = verdict.get("score", (int, float), optional=True)
        judgement = Judgement(
            verdict.get("verdict", str),
            verdict.get("method", str),
            verdict.get("raw_evidence", str),
            None if score is None else float(score),
        )
    true_ids = fields.get("true_document_ids", list, optional=True)
    return EvalRecord(
        fields.get("query", str),
        fields.get("group_id", str),
        fields.get("linguistic_attr", str),
        answer,
        fields.get("response", str),
        judgement,
        _ids(
            path,
            f"{where}.retrieved_document_ids",
            fields.get("retrieved_document_ids", list),
        ),
        (
            None
            if true_ids is None
            else _ids(path, f"{where}.true_document_ids", true_ids)
        ),
        fields.get("retrieval_judgement", str, optional=True),
        _ids(
            path,
            f"{where}.retrieved_chunk_ids",
            fields.get("retrieved_chunk_ids", list, optional=True) or [],
        ),
        fields.get("context", str, optional=True) or "",
        fields.get("template", str, optional=True) or "",
        fields.get("error", str, optional=True),
    )


@beartype
def save_results(records: Sequence[EvalRecord], path: PathLike) -> None:
    _write_json([record_to_dict(record) for record in records], path)


@beartype
def load_results(path: PathLike) -> List[EvalRecord]:
    """
    Raises
    ------
    FormatError
        Naming the record and field that do not parse.
    """
    raw = load_json(str(path))
    if not isinstance(raw, list):
        raise FormatError(str(path), "expected an array of records")
    return [
        record_from_dict(entry, str(path), index) for index, entry in enumerate(raw)
    ]
