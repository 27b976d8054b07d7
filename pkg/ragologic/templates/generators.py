# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
import re
from typing import Dict, List, Optional, Sequence, Tuple

from beartype import beartype
from joblib import Parallel, delayed

from .. import preconditions
from ..backends import CompletionBackend
from ..errors import AllCandidatesRejected, InsufficientValidCandidates
from ..prompts import (
    CRITERIA_LONG,
    CRITERIA_SHORT,
    CRITERIA_SQL_ONE_PLACEHOLDER,
    SQL_TEMPLATE_GENERATOR,
    TEXT_TEMPLATE_GENERATOR,
    PromptCatalog,
    default_catalog,
)
from ..schema import DatabaseHandle, describe_schema, open_database, schema_key
from .classes import SQL, TEXT, GenerationCriteria, SqlTemplate, TextTemplate
from .validation import check_singular_answer, validate_sql_template

__all__ = [
    "LINGUISTIC_CRITERIA",
    "sql_criteria",
    "text_criteria",
    "sql_generation_prompt",
    "text_generation_prompt",
    "generate_sql_templates",
    "generate_text_templates",
    "generate_sql_template_batch",
    "generate_text_template_batch",
]

_logger = logging.getLogger(__name__)

LINGUISTIC_CRITERIA = {"short": CRITERIA_SHORT, "long": CRITERIA_LONG}
MAX_TEXT_ATTEMPTS = 3

_BULLET = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s+")


def sql_criteria(
    num_generations: int = 1,
    required_placeholder_count: Optional[int] = None,
    catalog: Optional[PromptCatalog] = None,
) -> GenerationCriteria:
    catalog = catalog or default_catalog()
    return GenerationCriteria.create(
        SQL,
        catalog.text(CRITERIA_SQL_ONE_PLACEHOLDER),
        num_generations=num_generations,
        required_placeholder_count=required_placeholder_count,
        tag="one-placeholder",
    )


def text_criteria(
    linguistic_attr: str,
    num_generations: int = 3,
    catalog: Optional[PromptCatalog] = None,
) -> GenerationCriteria:
    """
    Criteria for ``"short"`` or ``"long"`` text templates.

    >>> text_criteria("short").instruction_text.splitlines()[0]
    'Short and Clear: Keep your queries short and straightforward. '
    """
    preconditions.check_argument(
        linguistic_attr in LINGUISTIC_CRITERIA,
        f"linguistic_attr must be one of {sorted(LINGUISTIC_CRITERIA)}",
    )
    catalog = catalog or default_catalog()
    return GenerationCriteria.create(
        TEXT,
        catalog.text(LINGUISTIC_CRITERIA[linguistic_attr]),
        num_generations=num_generations,
        tag=linguistic_attr,
    )


def sql_generation_prompt(
    db: DatabaseHandle,
    tables: Sequence[str],
    criteria: GenerationCriteria,
    catalog: Optional[PromptCatalog] = None,
) -> str:
    catalog = catalog or default_catalog()
    return catalog.render(
        SQL_TEMPLATE_GENERATOR,
        SPECIFIC_REQUIREMENTS=criteria.instruction_text,
        GIVEN_SCHEMA=describe_schema(db.schema(), tables),
    )


def text_generation_prompt(
    tpl: SqlTemplate,
    criteria: GenerationCriteria,
    catalog: Optional[PromptCatalog] = None,
) -> str:
    catalog = catalog or default_catalog()
    return catalog.render(
        TEXT_TEMPLATE_GENERATOR,
        CRITERIA=criteria.instruction_text,
        NUM_GENERATIONS=criteria.num_generations,
        SQL_TEMPLATE=tpl.text,
    )


def _candidate_lines(reply: str) -> List[str]:
    lines = []
    for line in reply.splitlines():
        line = _BULLET.sub("", line).strip()
        if not line or line.startswith("```") or line.startswith("##"):
            continue
        lines.append(line)
    return lines


@beartype
def generate_sql_templates(
    schema_subset: Tuple[str, ...],
    criteria: GenerationCriteria,
    backend: CompletionBackend,
    db: DatabaseHandle,
    sample_size: int = 32,
    catalog: Optional[PromptCatalog] = None,
) -> List[SqlTemplate]:
    """
    Prompts ``backend`` for SQL templates over the tables of ``schema_subset`` and
    keeps the candidates that pass validation and the singular answer check.

    Parameters
    ----------
    schema_subset : Tuple[str, ...]
        Table names the templates may draw on.
    criteria : GenerationCriteria
        Criteria of kind ``"sql"``; its instruction fills the specific requirements
        of the prompt.
    backend : CompletionBackend
    db : DatabaseHandle
        Source of the schema and of the values used for the singular answer check.
    sample_size : int, optional (default=32)
        Placeholder combinations executed per candidate by the singular answer
        check.
    catalog : Optional[PromptCatalog]

    Returns
    -------
    List[SqlTemplate]
        Accepted templates in reply order, without exact duplicates.

    Raises
    ------
    UnknownTableOrColumn
        If a table of ``schema_subset`` does not exist.
    BackendUnavailable
    AllCandidatesRejected
        If no candidate survives.
    """
    preconditions.check_argument(
        criteria.kind == SQL, "criteria must be of kind 'sql'"
    )
    key = schema_key(schema_subset)
    prompt = sql_generation_prompt(db, schema_subset, criteria, catalog)
    candidates = _candidate_lines(backend.complete(prompt))
    accepted: List[SqlTemplate] = []
    seen = set()
    for candidate in candidates:
        if candidate in seen:
            continue
        seen.add(candidate)
        result = validate_sql_template(candidate, db.schema(), criteria, key)
        if not isinstance(result, SqlTemplate):
            codes = ", ".join(violation.code for violation in result)
            _logger.info(f"rejected '{candidate}' for {key}: {codes}")
            continue
        offending = check_singular_answer(result, db, sample_size)
        if offending is not None:
            _logger.info(
                f"rejected '{candidate}' for {key}: singular-answer "
                f"(combination {offending})"
            )
            continue
        accepted.append(result)
    if not accepted:
        raise AllCandidatesRejected(
            f"none of the {len(candidates)} candidates generated for {key} passed "
            f"validation"
        )
    _logger.info(f"accepted {len(accepted)} of {len(candidates)} candidates for {key}")
    return accepted


@beartype
def generate_text_templates(
    tpl: SqlTemplate,
    criteria: GenerationCriteria,
    backend: CompletionBackend,
    catalog: Optional[PromptCatalog] = None,
    existing: Sequence[str] = (),
) -> List[TextTemplate]:
    """
    Produces exactly ``criteria.num_generations`` text templates for ``tpl``.

    ``existing`` templates are kept first and only the remainder is taken from the
    backend. Candidates whose placeholder set differs from the SQL template's are
    rejected; the prompt is re-sent with a new sample index up to three times
    before giving up.

    Raises
    ------
    BackendUnavailable
    InsufficientValidCandidates
        If fewer than ``criteria.num_generations`` valid templates are available
        after the last attempt.
    """
    preconditions.check_argument(
        criteria.kind == TEXT, "criteria must be of kind 'text'"
    )
    wanted = criteria.num_generations
    accepted: List[TextTemplate] = []
    for text in existing:
        template = TextTemplate(text, tpl, criteria.tag)
        if template not in accepted:
            accepted.append(template)
    if len(accepted) >= wanted:
        return accepted[:wanted]

    prompt = text_generation_prompt(tpl, criteria, catalog)
    for attempt in range(MAX_TEXT_ATTEMPTS):
        for candidate in _candidate_lines(backend.complete(prompt, sample=attempt)):
            try:
                template = TextTemplate(candidate, tpl, criteria.tag)
            except ValueError as error:
                _logger.info(f"rejected text template for '{tpl.text}': {error}")
                continue
            if template not in accepted:
                accepted.append(template)
            if len(accepted) == wanted:
                return accepted
        _logger.info(
            f"attempt {attempt + 1} left '{tpl.text}' with {len(accepted)} of "
            f"{wanted} text templates"
        )
    raise InsufficientValidCandidates(
        f"only {len(accepted)} of {wanted} valid {criteria.tag} text templates for "
        f"'{tpl.text}' after {MAX_TEXT_ATTEMPTS} attempts"
    )


def _sql_worker(
    locator: str,
    subset: Tuple[str, ...],
    criteria: GenerationCriteria,
    backend: CompletionBackend,
    sample_size: int,
    catalog: Optional[PromptCatalog],
) -> List[str]:
    with open_database(locator) as db:
        try:
            templates = generate_sql_templates(
                subset, criteria, backend, db, sample_size, catalog
            )
        except AllCandidatesRejected as error:
            _logger.warning(str(error))
            return []
    return [template.text for template in templates]


@beartype
def generate_sql_template_batch(
    subsets: Sequence[Tuple[str, ...]],
    criteria: GenerationCriteria,
    backend: CompletionBackend,
    db: DatabaseHandle,
    existing: Optional[Dict[str, List[str]]] = None,
    override: bool = False,
    sample_size: int = 32,
    n_jobs: int = 1,
    catalog: Optional[PromptCatalog] = None,
) -> Dict[str, List[str]]:
    """
    Generates SQL templates for every subset that has none yet.

    Subsets already present in ``existing`` keep their templates unless
    ``override`` is set. Subsets run concurrently on ``n_jobs`` threads, each with
    its own database handle. A subset whose candidates are all rejected is logged
    and stored with no templates.

    Returns
    -------
    Dict[str, List[str]]
        Templates keyed by :func:`~ragologic.schema.schema_key`, in the shape of a
        SQL templates file.
    """
    result = dict(existing or {})
    pending = [
        subset for subset in subsets if override or schema_key(subset) not in result
    ]
    generated = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_sql_worker)(
            db.locator, subset, criteria, backend, sample_size, catalog
        )
        for subset in pending
    )
    for subset, templates in zip(pending, generated):
        result[schema_key(subset)] = templates
    return result


@beartype
def generate_text_template_batch(
    sql_templates: Sequence[SqlTemplate],
    criteria: GenerationCriteria,
    backend: CompletionBackend,
    existing: Optional[Dict[str, List[str]]] = None,
    override: bool = False,
    n_jobs: int = 1,
    catalog: Optional[PromptCatalog] = None,
) -> Dict[str, List[str]]:
    """
    Generates text templates for every SQL template that has none yet.

    Returns
    -------
    Dict[str, List[str]]
        Text templates keyed by SQL template text, in the shape of a text templates
        file.
    """
    result = dict(existing or {})
    pending = [tpl for tpl in sql_templates if override or tpl.text not in result]
    generated = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(generate_text_templates)(tpl, criteria, backend, catalog)
        for tpl in pending
    )
    for tpl, templates in zip(pending, generated):
        result[tpl.text] = [template.text for template in templates]
    return result
