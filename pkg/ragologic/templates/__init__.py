# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .classes import SQL, TEXT, GenerationCriteria, SqlTemplate, TextTemplate, Violation
from .generators import (
    LINGUISTIC_CRITERIA,
    generate_sql_template_batch,
    generate_sql_templates,
    generate_text_template_batch,
    generate_text_templates,
    sql_criteria,
    sql_generation_prompt,
    text_criteria,
    text_generation_prompt,
)
from .io import (
    load_template_file,
    save_template_file,
    sql_templates_from_mapping,
    text_templates_from_mapping,
)
from .placeholders import (
    Placeholder,
    PlaceholderKey,
    has_placeholders,
    parse_placeholders,
    placeholder_keys,
    render_placeholders,
    substitute,
)
from .validation import (
    check_singular_answer,
    placeholder_combinations,
    validate_sql_template,
)

__all__ = [
    "GenerationCriteria",
    "LINGUISTIC_CRITERIA",
    "Placeholder",
    "PlaceholderKey",
    "SQL",
    "SqlTemplate",
    "TEXT",
    "TextTemplate",
    "Violation",
    "check_singular_answer",
    "generate_sql_template_batch",
    "generate_sql_templates",
    "generate_text_template_batch",
    "generate_text_templates",
    "has_placeholders",
    "load_template_file",
    "parse_placeholders",
    "placeholder_combinations",
    "placeholder_keys",
    "render_placeholders",
    "save_template_file",
    "sql_criteria",
    "sql_generation_prompt",
    "sql_templates_from_mapping",
    "substitute",
    "text_criteria",
    "text_generation_prompt",
    "text_templates_from_mapping",
    "validate_sql_template",
]
