# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import datetime
import logging
from collections import Counter
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from beartype import beartype
from joblib import Parallel, delayed

from .. import preconditions
from ..errors import SqlExecutionError
from ..schema import DatabaseHandle, execute_answer, open_database
from ..templates import (
    PlaceholderKey,
    SqlTemplate,
    TextTemplate,
    placeholder_combinations,
    substitute,
)
from .classes import Dataset, Provenance, SemanticGroup, TextQuery, group_id_for

__all__ = [
    "SKIP_EMPTY",
    "SKIP_MULTIPLICITY",
    "SKIP_NULL_ANSWER",
    "TemplateReport",
    "GenerationReport",
    "instantiate",
    "generate_dataset",
    "estimate_total_variations",
]

_logger = logging.getLogger(__name__)

SKIP_EMPTY = "empty"
SKIP_MULTIPLICITY = "multiplicity"
SKIP_NULL_ANSWER = "null-answer"


class TemplateReport(NamedTuple):
    template: str
    combinations: int
    accepted: int
    skipped: Dict[str, int]
    error: Optional[str] = None


class GenerationReport(NamedTuple):
    templates: Tuple[TemplateReport, ...]

    @property
    def accepted(self) -> int:
        return sum(report.accepted for report in self.templates)

    @property
    def combinations(self) -> int:
        return sum(report.combinations for report in self.templates)

    def skipped(self) -> Dict[str, int]:
        totals: Counter = Counter()
        for report in self.templates:
            totals.update(report.skipped)
        return dict(sorted(totals.items()))

    def as_dict(self) -> Dict[str, Any]:
        return {
            "combinations": self.combinations,
            "accepted": self.accepted,
            "skipped": self.skipped(),
            "templates": [report._asdict() for report in self.templates],
        }


def _expressions(tpl: SqlTemplate) -> Dict[PlaceholderKey, str]:
    expressions: Dict[PlaceholderKey, str] = {}
    for placeholder in tpl.placeholders:
        expressions.setdefault(placeholder.key, placeholder.expression)
    return expressions


def _skip_reason(answer: Any) -> Optional[str]:
    if answer.cardinality == 0:
        return SKIP_EMPTY
    if answer.cardinality > 1:
        return SKIP_MULTIPLICITY
    if answer.is_null():
        return SKIP_NULL_ANSWER
    return None


def _instantiate(
    tpl: SqlTemplate, text_tpls: Sequence[TextTemplate], db: DatabaseHandle
) -> Tuple[List[SemanticGroup], TemplateReport]:
    expressions = _expressions(tpl)
    combinations = placeholder_combinations(tpl, db)
    groups = []
    skipped: Counter = Counter()
    for combination in combinations:
        sql = substitute(tpl.text, combination, sql_literal=True)
        answer = execute_answer(db, sql)
        reason = _skip_reason(answer)
        if reason is not None:
            _logger.info(f"skipped: {reason} ({answer.cardinality} rows) for {sql}")
            skipped[reason] += 1
            continue
        values = tuple(
            (expressions[key], value) for key, value in combination.items()
        )
        text_queries = tuple(
            TextQuery(
                substitute(text_tpl.text, combination),
                text_tpl.linguistic_attr,
                text_tpl.text,
            )
            for text_tpl in text_tpls
        )
        groups.append(
            SemanticGroup(
                group_id_for(tpl.text, values),
                tpl.text,
                sql,
                values,
                answer,
                text_queries,
            )
        )
    report = TemplateReport(tpl.text, len(combinations), len(groups), dict(skipped))
    return groups, report


@beartype
def instantiate(
    tpl: SqlTemplate, text_tpls: Sequence[TextTemplate], db: DatabaseHandle
) -> List[SemanticGroup]:
    """
    Fills ``tpl`` with every combination of distinct placeholder values and builds
    one semantic group per combination with a singular, non-NULL answer.

    Each group carries one text query per text template, in ``text_tpls`` order.
    Combinations returning zero rows, several rows, or a single all-NULL row are
    dropped and logged.

    Raises
    ------
    ValueError
        If a text template belongs to another SQL template.
    SqlExecutionError
        If an instantiated query fails.
    """
    for text_tpl in text_tpls:
        preconditions.check_argument(
            text_tpl.parent.text == tpl.text,
            f"text template {text_tpl.text!r} belongs to {text_tpl.parent.text!r}",
        )
    groups, _ = _instantiate(tpl, text_tpls, db)
    return groups


def _worker(
    locator: str, tpl: SqlTemplate, text_tpls: Sequence[TextTemplate]
) -> Tuple[List[SemanticGroup], TemplateReport]:
    with open_database(locator) as db:
        try:
            return _instantiate(tpl, text_tpls, db)
        except SqlExecutionError as error:
            _logger.error(f"template '{tpl.text}' aborted: {error}")
            return [], TemplateReport(tpl.text, 0, 0, {}, str(error))


@beartype
def generate_dataset(
    sql_templates: Sequence[SqlTemplate],
    text_templates: Mapping[str, Sequence[TextTemplate]],
    db: DatabaseHandle,
    provenance: Optional[Provenance] = None,
    n_jobs: int = 1,
) -> Tuple[Dataset, GenerationReport]:
    """
    Instantiates every SQL template and assembles the groups into a
    :class:`Dataset`, in template order and then combination order.

    A template whose queries fail to execute is reported with its error and
    contributes no groups; the remaining templates still run.

    Parameters
    ----------
    sql_templates : Sequence[SqlTemplate]
    text_templates : Mapping[str, Sequence[TextTemplate]]
        Text templates keyed by SQL template text; missing keys mean no text
        queries.
    db : DatabaseHandle
    provenance : Optional[Provenance]
        Recorded on the dataset; the generation timestamp is filled in when empty.
    n_jobs : int, optional (default=1)
        Worker threads, each with its own database handle.
    """
    results = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_worker)(db.locator, tpl, text_templates.get(tpl.text, ()))
        for tpl in sql_templates
    )
    groups: List[SemanticGroup] = []
    reports = []
    seen = set()
    for template_groups, report in results:
        for group in template_groups:
            if group.group_id in seen:
                _logger.warning(f"duplicate group {group.group_id} dropped")
                continue
            seen.add(group.group_id)
            groups.append(group)
        reports.append(report)
    provenance = provenance or Provenance()
    if not provenance.generated_at:
        provenance = provenance._replace(
            generated_at=datetime.datetime.now(datetime.timezone.utc).isoformat(
                timespec="seconds"
            )
        )
    report = GenerationReport(tuple(reports))
    _logger.info(
        f"generated {report.accepted} groups from {report.combinations} combinations "
        f"across {len(sql_templates)} SQL templates; skipped {report.skipped()}"
    )
    return Dataset(groups, provenance), report


def estimate_total_variations(M: int, N: int, Q: int) -> int:
    """
    The number of text queries ``M`` SQL templates yield with ``N`` text templates
    each and ``Q`` placeholder combinations per text template.

    >>> estimate_total_variations(2, 3, 4)
    24
    >>> estimate_total_variations(0, 5, 7)
    0
    """
    preconditions.check_argument(
        M >= 0 and N >= 0 and Q >= 0, "M, N and Q must be non-negative"
    )
    return M * N * Q
