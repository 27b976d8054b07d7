# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Machine checks for candidate SQL templates.

Candidates come from a language model, so nothing here raises on a bad candidate:
every failed criterion is reported as a :class:`Violation` with one of these codes.

==========================  ================================================
parse-error                 the candidate is not parseable SQL
single-statement            more or fewer than one statement
select-only                 the statement is not a SELECT
star-projection             a projection is ``*``
projection-in-predicate     a projected column also appears in WHERE
no-where-placeholder        no placeholder at all
placeholder-outside-where   a placeholder sits outside the WHERE clause
malformed-placeholder       a bracket expression is not ``[Table.Column]``
unresolved-placeholder      a placeholder names an unknown table or column
placeholder-count           the criteria demand a different placeholder count
==========================  ================================================
"""

import itertools
import logging
import re
from typing import Any, Dict, Iterator, List, Optional, Set, Tuple, Union

import sqlglot
from beartype import beartype
from sqlglot import exp
from sqlglot.errors import ParseError

from ..errors import MalformedPlaceholder, UnknownTableOrColumn
from ..schema import DatabaseHandle, DatabaseSchema, distinct_values, execute_answer
from ..utils import index_product
from .classes import GenerationCriteria, SqlTemplate, Violation
from .placeholders import (
    Placeholder,
    PlaceholderKey,
    parse_placeholders,
    placeholder_keys,
    substitute,
)

__all__ = [
    "validate_sql_template",
    "check_singular_answer",
    "placeholder_combinations",
]

_logger = logging.getLogger(__name__)

_SENTINEL = "ragologic_placeholder_{index}"
_SENTINEL_PATTERN = re.compile(r"ragologic_placeholder_(\d+)")


def _with_sentinels(candidate: str, placeholders: List[Placeholder]) -> str:
    pieces = []
    cursor = 0
    for index, placeholder in enumerate(placeholders):
        start, end = placeholder.span
        pieces.append(candidate[cursor:start])
        pieces.append(_SENTINEL.format(index=index))
        cursor = end
    pieces.append(candidate[cursor:])
    return "".join(pieces)


def _sentinel_nodes(statement: exp.Expression) -> Dict[int, List[exp.Expression]]:
    found: Dict[int, List[exp.Expression]] = {}
    for node in statement.find_all(exp.Literal, exp.Identifier):
        match = _SENTINEL_PATTERN.fullmatch(str(node.this))
        if match is not None:
            found.setdefault(int(match.group(1)), []).append(node)
    return found


def _table_aliases(statement: exp.Expression) -> Dict[str, str]:
    aliases = {}
    for table in statement.find_all(exp.Table):
        aliases[table.alias_or_name.casefold()] = table.name.casefold()
    return aliases


def _columns(
    node: Optional[exp.Expression], aliases: Dict[str, str]
) -> Set[Tuple[str, str]]:
    columns = set()
    if node is None:
        return columns
    for column in node.find_all(exp.Column):
        if _SENTINEL_PATTERN.fullmatch(column.name):
            continue
        qualifier = column.table.casefold()
        columns.add((aliases.get(qualifier, qualifier), column.name.casefold()))
    return columns


def _projection_conflicts(statement: exp.Select) -> List[str]:
    aliases = _table_aliases(statement)
    projected = set()
    for projection in statement.expressions:
        projected |= _columns(projection, aliases)
    predicate = _columns(statement.args.get("where"), aliases)
    conflicts = []
    for table, column in sorted(projected):
        for predicate_table, predicate_column in predicate:
            same_table = not table or not predicate_table or table == predicate_table
            if column == predicate_column and same_table:
                conflicts.append(column)
                break
    return conflicts


def _is_star(projection: exp.Expression) -> bool:
    return isinstance(projection, exp.Star) or (
        isinstance(projection, exp.Column) and isinstance(projection.this, exp.Star)
    )


@beartype
def validate_sql_template(
    tpl: str,
    schema: DatabaseSchema,
    criteria: GenerationCriteria,
    source_schema_key: str = "",
) -> Union[SqlTemplate, List[Violation]]:
    """
    Checks a candidate against the syntactic template criteria.

    >>> from ragologic.schema import Attribute, TableSchema
    >>> company = TableSchema(
    ...     "Company",
    ...     (Attribute("Name", "text"), Attribute("Industry", "text")),
    ...     "Name",
    ... )
    >>> schema = DatabaseSchema([company])
    >>> criteria = GenerationCriteria.create("sql", "")
    >>> validate_sql_template(
    ...     "SELECT Industry FROM Company WHERE Name = '[Company.Name]';",
    ...     schema, criteria).text
    "SELECT Industry FROM Company WHERE Name = '[Company.Name]';"
    >>> [v.code for v in validate_sql_template(
    ...     "SELECT * FROM Company WHERE Name = '[Company.Name]';", schema, criteria)]
    ['star-projection']
    >>> [v.code for v in validate_sql_template(
    ...     "SELECT Name FROM Company;", schema, criteria)]
    ['no-where-placeholder']

    Returns
    -------
    Union[SqlTemplate, List[Violation]]
        The accepted template, or every violation found.
    """
    candidate = tpl.strip()
    violations: List[Violation] = []
    try:
        placeholders = parse_placeholders(candidate)
    except MalformedPlaceholder as error:
        return [Violation("malformed-placeholder", str(error))]

    try:
        statements = [
            statement
            for statement in sqlglot.parse(_with_sentinels(candidate, placeholders))
            if statement is not None
        ]
    except ParseError as error:
        return [Violation("parse-error", str(error).splitlines()[0])]
    if len(statements) != 1:
        return [
            Violation(
                "single-statement", f"expected one statement, found {len(statements)}"
            )
        ]
    statement = statements[0]
    if not isinstance(statement, exp.Select):
        return [Violation("select-only", f"statement is a {statement.key.upper()}")]

    if any(_is_star(projection) for projection in statement.expressions):
        violations.append(Violation("star-projection", "projects '*'"))
    for column in _projection_conflicts(statement):
        violations.append(
            Violation(
                "projection-in-predicate",
                f"column '{column}' is both projected and filtered on",
            )
        )

    if len(placeholders) == 0:
        violations.append(Violation("no-where-placeholder", "no placeholder found"))
    sentinels = _sentinel_nodes(statement)
    for index, placeholder in enumerate(placeholders):
        nodes = sentinels.get(index, [])
        if not nodes or any(node.find_ancestor(exp.Where) is None for node in nodes):
            violations.append(
                Violation(
                    "placeholder-outside-where",
                    f"{placeholder.expression} is not inside the WHERE clause",
                )
            )
    for placeholder in placeholders:
        try:
            schema.resolve(placeholder.table, placeholder.column)
        except UnknownTableOrColumn as error:
            violations.append(Violation("unresolved-placeholder", str(error)))

    required = criteria.required_placeholder_count
    distinct = len(placeholder_keys(placeholders))
    if required is not None and distinct != required:
        violations.append(
            Violation(
                "placeholder-count",
                f"expected {required} placeholders, found {distinct}",
            )
        )

    if violations:
        return violations
    return SqlTemplate(candidate, tuple(placeholders), source_schema_key)


def _domains(
    tpl: SqlTemplate, db: DatabaseHandle
) -> Tuple[List[PlaceholderKey], List[List[Any]]]:
    keys = placeholder_keys(tpl.placeholders)
    return keys, [distinct_values(db, table, column) for table, column in keys]


@beartype
def placeholder_combinations(
    tpl: SqlTemplate, db: DatabaseHandle
) -> List[Dict[PlaceholderKey, Any]]:
    """
    Every assignment of distinct database values to the template's placeholders,
    enumerated with the last placeholder varying fastest.
    """
    keys, values = _domains(tpl, db)
    return [dict(zip(keys, combination)) for combination in index_product(values)]


def _lazy_combinations(
    tpl: SqlTemplate, db: DatabaseHandle
) -> Iterator[Dict[PlaceholderKey, Any]]:
    keys, values = _domains(tpl, db)
    for combination in itertools.product(*values):
        yield dict(zip(keys, combination))


@beartype
def check_singular_answer(
    tpl: SqlTemplate, db: DatabaseHandle, sample_size: int = 32
) -> Optional[Dict[PlaceholderKey, Any]]:
    """
    Instantiates up to ``sample_size`` placeholder combinations and verifies each
    returns at most one row.

    Returns
    -------
    Optional[Dict[PlaceholderKey, Any]]
        ``None`` when every sampled combination passes, otherwise the first
        combination whose result set has more than one row.

    Raises
    ------
    SqlExecutionError
        If an instantiated query fails.
    """
    for combination in itertools.islice(_lazy_combinations(tpl, db), sample_size):
        sql = substitute(tpl.text, combination, sql_literal=True)
        answer = execute_answer(db, sql)
        if answer.cardinality > 1:
            _logger.info(
                f"'{tpl.text}' is not singular: {sql} returned "
                f"{answer.cardinality} rows"
            )
            return combination
    return None
