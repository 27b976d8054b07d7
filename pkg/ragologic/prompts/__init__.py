# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .catalog import (
    CLOSED_BOOK_ANSWER,
    CRITERIA_LONG,
    CRITERIA_SHORT,
    CRITERIA_SQL_ONE_PLACEHOLDER,
    RAG_ANSWER,
    RAGAS_NLI,
    REFERENCE_JUDGE,
    SELFCHECK,
    SELFCHECK_QA,
    SQL_TEMPLATE_GENERATOR,
    STATEMENT_DECOMPOSITION,
    TEXT_TEMPLATE_GENERATOR,
    PromptCatalog,
    default_catalog,
    load_catalog,
)

__all__ = [
    "CLOSED_BOOK_ANSWER",
    "CRITERIA_LONG",
    "CRITERIA_SHORT",
    "CRITERIA_SQL_ONE_PLACEHOLDER",
    "PromptCatalog",
    "RAG_ANSWER",
    "RAGAS_NLI",
    "REFERENCE_JUDGE",
    "SELFCHECK",
    "SELFCHECK_QA",
    "SQL_TEMPLATE_GENERATOR",
    "STATEMENT_DECOMPOSITION",
    "TEXT_TEMPLATE_GENERATOR",
    "default_catalog",
    "load_catalog",
]
