# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Deterministic corpora rendered from database rows.

A document spec is a JSON object::

    {
        "entities": [
            {
                "query": "SELECT Name, Location FROM Client ORDER BY ClientID",
                "title": "Client profile: {Name}",
                "sentences": ["{Name} is headquartered in {Location}."]
            }
        ],
        "documents": [{"title": "Office notes", "body": "..."}]
    }

Every row of an entity query becomes one document whose body joins the entity's
sentences filled from the row; a sentence referring to a NULL column is left out.
Static ``documents`` follow the entity documents. Document ids are assigned in
order starting at zero.
"""

import logging
import string
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

import sqlalchemy
from beartype import beartype

from ..errors import FormatError, SqlExecutionError
from ..schema import DatabaseHandle
from ..utils import load_json
from .corpus import Corpus, Document

__all__ = ["render_corpus", "load_document_spec"]

_logger = logging.getLogger(__name__)

_FORMATTER = string.Formatter()


def _fields(template: str) -> List[str]:
    return [name for _, name, _, _ in _FORMATTER.parse(template) if name]


def load_document_spec(path: Union[str, Path]) -> Dict[str, Any]:
    path = str(path)
    spec = load_json(path)
    _check_spec(path, spec)
    return spec


def _check_spec(path: str, spec: Any) -> None:
    if not isinstance(spec, dict):
        raise FormatError(path, "expected an object")
    for index, entity in enumerate(spec.get("entities", [])):
        if (
            not isinstance(entity, dict)
            or not isinstance(entity.get("query"), str)
            or not isinstance(entity.get("title"), str)
            or not isinstance(entity.get("sentences"), list)
            or not all(isinstance(item, str) for item in entity["sentences"])
        ):
            raise FormatError(
                path, f"entities[{index}]: expected {{query, title, sentences}}"
            )
    for index, document in enumerate(spec.get("documents", [])):
        if (
            not isinstance(document, dict)
            or not isinstance(document.get("title"), str)
            or not isinstance(document.get("body"), str)
        ):
            raise FormatError(path, f"documents[{index}]: expected {{title, body}}")


def _rows(db: DatabaseHandle, query: str) -> List[Dict[str, Any]]:
    try:
        with db.engine.connect() as connection:
            result = connection.exec_driver_sql(query)
            columns = list(result.keys())
            return [dict(zip(columns, row)) for row in result]
    except sqlalchemy.exc.DBAPIError as error:
        raise SqlExecutionError(f"'{query}' failed: {error.orig}") from error


def _fill(template: str, row: Mapping[str, Any]) -> str:
    values = {key: "" if value is None else value for key, value in row.items()}
    return template.format_map(values)


@beartype
def render_corpus(
    db: DatabaseHandle, document_spec: Union[Mapping[str, Any], str, Path]
) -> Corpus:
    """
    Renders the documents described by ``document_spec`` from ``db``.

    Parameters
    ----------
    db : DatabaseHandle
    document_spec : Union[Mapping[str, Any], str, Path]
        The spec itself or the path of its JSON file.

    Raises
    ------
    FormatError
        If the spec is malformed or a template names a column its query lacks.
    SqlExecutionError
    """
    if isinstance(document_spec, (str, Path)):
        spec: Mapping[str, Any] = load_document_spec(document_spec)
    else:
        _check_spec("<document spec>", document_spec)
        spec = document_spec
    documents = []
    for entity in spec.get("entities", []):
        for row in _rows(db, entity["query"]):
            missing = [
                name
                for template in [entity["title"], *entity["sentences"]]
                for name in _fields(template)
                if name not in row
            ]
            if missing:
                raise FormatError(
                    "<document spec>",
                    f"{entity['query']!r} has no column {missing[0]!r}",
                )
            sentences = [
                _fill(template, row)
                for template in entity["sentences"]
                if all(row[name] is not None for name in _fields(template))
            ]
            title = _fill(entity["title"], row)
            documents.append(Document(len(documents), title, " ".join(sentences)))
    for document in spec.get("documents", []):
        documents.append(Document(len(documents), document["title"], document["body"]))
    _logger.info(f"rendered {len(documents)} documents")
    return Corpus(documents)
