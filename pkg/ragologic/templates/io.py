# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Template files.

Both files are JSON objects mapping a string to an array of template strings: a SQL
templates file is keyed by stringified table tuple, a text templates file by SQL
template text.
"""

import json
import os
from pathlib import Path
from typing import Dict, List, Mapping, Sequence, Union

from ..errors import FormatError
from ..utils import load_json
from .classes import SqlTemplate, TextTemplate

__all__ = [
    "load_template_file",
    "save_template_file",
    "sql_templates_from_mapping",
    "text_templates_from_mapping",
]

PathLike = Union[str, Path]


def load_template_file(path: PathLike) -> Dict[str, List[str]]:
    """
    Reads a SQL or text templates file.

    Raises
    ------
    FileNotFoundError
    FormatError
        If the file is not a JSON object of string arrays.
    """
    path = str(path)
    raw = load_json(path)
    if not isinstance(raw, dict):
        raise FormatError(path, "expected a JSON object at the top level")
    for key, templates in raw.items():
        if not isinstance(templates, list) or not all(
            isinstance(template, str) for template in templates
        ):
            raise FormatError(path, f"entry {key!r} must be an array of strings")
    return raw


def save_template_file(mapping: Mapping[str, Sequence[str]], path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    staging = path.with_suffix(path.suffix + ".tmp")
    with open(staging, "w", encoding="utf-8") as template_io:
        json.dump(
            {key: list(templates) for key, templates in mapping.items()},
            template_io,
            indent=4,
            ensure_ascii=False,
        )
    os.replace(staging, path)


def sql_templates_from_mapping(
    mapping: Mapping[str, Sequence[str]]
) -> List[SqlTemplate]:
    """
    Flattens a SQL templates file into :class:`SqlTemplate` records, in file order.
    """
    return [
        SqlTemplate.from_text(text, key)
        for key, templates in mapping.items()
        for text in templates
    ]


def text_templates_from_mapping(
    mapping: Mapping[str, Sequence[str]],
    sql_templates: Sequence[SqlTemplate],
    linguistic_attr: str,
) -> Dict[str, List[TextTemplate]]:
    """
    Binds the entries of a text templates file to their SQL templates.

    SQL templates without an entry map to an empty list; entries for unknown SQL
    templates are ignored.

    Raises
    ------
    ValueError
        If a text template's placeholders differ from its SQL template's.
    """
    return {
        tpl.text: [
            TextTemplate(text, tpl, linguistic_attr)
            for text in mapping.get(tpl.text, [])
        ]
        for tpl in sql_templates
    }
