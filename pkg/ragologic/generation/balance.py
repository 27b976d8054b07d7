# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import Any, Dict, List, Optional

from beartype import beartype

from .. import preconditions
from ..backends import CompletionBackend
from ..errors import InsufficientValidCandidates
from ..prompts import PromptCatalog
from ..templates import (
    LINGUISTIC_CRITERIA,
    PlaceholderKey,
    SqlTemplate,
    generate_text_templates,
    parse_placeholders,
    substitute,
    text_criteria,
)
from .classes import Dataset, SemanticGroup, TextQuery

__all__ = ["balance"]

_logger = logging.getLogger(__name__)


def _combination(group: SemanticGroup) -> Dict[PlaceholderKey, Any]:
    return {
        parse_placeholders(expression)[0].key: value
        for expression, value in group.values
    }


def _template_texts(group: SemanticGroup, linguistic_attr: str) -> List[str]:
    texts: List[str] = []
    for query in group.queries_for(linguistic_attr):
        if query.template not in texts:
            texts.append(query.template)
    return texts


def _top_up(
    sql_template: str,
    linguistic_attr: str,
    current: List[str],
    per_group: int,
    backend: Optional[CompletionBackend],
    catalog: Optional[PromptCatalog],
) -> List[str]:
    if backend is None or linguistic_attr not in LINGUISTIC_CRITERIA:
        raise InsufficientValidCandidates(
            f"'{sql_template}' has {len(current)} {linguistic_attr!r} text templates, "
            f"{per_group} needed, and no generator is available to add more"
        )
    _logger.info(
        f"topping up '{sql_template}' from {len(current)} to {per_group} "
        f"{linguistic_attr} text templates"
    )
    generated = generate_text_templates(
        SqlTemplate.from_text(sql_template),
        text_criteria(linguistic_attr, per_group, catalog),
        backend,
        catalog,
        existing=current,
    )
    return [template.text for template in generated]


@beartype
def balance(
    dataset: Dataset,
    per_group: int,
    backend: Optional[CompletionBackend] = None,
    catalog: Optional[PromptCatalog] = None,
) -> Dataset:
    """
    Gives every group exactly ``per_group`` text queries per linguistic attribute.

    All groups of one SQL template share their text templates, so balancing works
    per SQL template: surplus templates are dropped from the end of the template
    order, and missing ones are generated through ``backend`` with the existing
    templates kept first.

    Parameters
    ----------
    dataset : Dataset
    per_group : int
    backend : Optional[CompletionBackend]
        Needed only when some template has too few text templates.
    catalog : Optional[PromptCatalog]

    Returns
    -------
    Dataset
        ``dataset`` itself when it is already balanced.

    Raises
    ------
    InsufficientValidCandidates
        If text templates are missing and cannot be generated.
    """
    preconditions.check_argument(per_group >= 1, "per_group must be at least 1")
    attrs = dataset.linguistic_attrs()
    plans: Dict[str, Dict[str, List[str]]] = {}
    changed = False
    for group in dataset:
        if group.sql_template in plans:
            continue
        plan = {}
        for attr in attrs:
            current = _template_texts(group, attr)
            if len(current) > per_group:
                plan[attr] = current[:per_group]
            elif len(current) < per_group:
                plan[attr] = _top_up(
                    group.sql_template, attr, current, per_group, backend, catalog
                )
            else:
                plan[attr] = current
            changed = changed or plan[attr] != current
        plans[group.sql_template] = plan
    if not changed:
        return dataset

    balanced = []
    for group in dataset:
        combination = _combination(group)
        existing = {query.template: query for query in group.text_queries}
        queries = []
        for attr in attrs:
            for template in plans[group.sql_template][attr]:
                query = existing.get(template)
                if query is None or query.linguistic_attr != attr:
                    query = TextQuery(substitute(template, combination), attr, template)
                queries.append(query)
        balanced.append(group._replace(text_queries=tuple(queries)))
    return dataset.with_groups(balanced)
