# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .answers import Answer, make_answer, normalize_answer, normalize_text, parse_answer
from .classes import VALUE_KINDS, Attribute, DatabaseSchema, ForeignKey, TableSchema
from .database import (
    DatabaseHandle,
    distinct_values,
    execute_answer,
    load_schema,
    open_database,
)
from .subsets import describe_schema, foreign_key_graph, schema_key, schema_subsets

__all__ = [
    "Answer",
    "Attribute",
    "DatabaseHandle",
    "DatabaseSchema",
    "ForeignKey",
    "TableSchema",
    "VALUE_KINDS",
    "describe_schema",
    "distinct_values",
    "execute_answer",
    "foreign_key_graph",
    "load_schema",
    "make_answer",
    "normalize_answer",
    "normalize_text",
    "open_database",
    "parse_answer",
    "schema_key",
    "schema_subsets",
]
