# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Dataset files.

:func:`export_dataset` writes the complete dataset, which :func:`import_dataset`
restores exactly. :func:`export_qa_pairs` writes the plain question answering shape,
an array of ``[answer, [text queries]]`` pairs, which :func:`import_dataset` also
accepts; it carries no SQL, placeholder values or provenance.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from beartype import beartype

from ..errors import FormatError
from ..schema import make_answer, parse_answer
from ..utils import JsonFields, load_json, stable_hash
from .classes import Dataset, Provenance, SemanticGroup, TextQuery

__all__ = [
    "DATASET_FORMAT",
    "export_dataset",
    "import_dataset",
    "export_qa_pairs",
    "dataset_to_dict",
    "dataset_from_dict",
]

DATASET_FORMAT = "ragologic-dataset"
DATASET_VERSION = 1

PathLike = Union[str, Path]


def _group_to_dict(group: SemanticGroup) -> Dict[str, Any]:
    return {
        "group_id": group.group_id,
        "sql_template": group.sql_template,
        "sql_query": group.sql_query,
        "values": [[expression, value] for expression, value in group.values],
        "answer": group.answer.text,
        "text_queries": [query._asdict() for query in group.text_queries],
        "gold_document_ids": (
            None
            if group.gold_document_ids is None
            else sorted(group.gold_document_ids)
        ),
        "gold_fact": group.gold_fact,
    }


def dataset_to_dict(dataset: Dataset) -> Dict[str, Any]:
    provenance = dataset.provenance._asdict()
    provenance["criteria_tags"] = list(provenance["criteria_tags"])
    return {
        "format": DATASET_FORMAT,
        "version": DATASET_VERSION,
        "provenance": provenance,
        "groups": [_group_to_dict(group) for group in dataset],
    }


def _answer(path: str, where: str, text: str) -> Any:
    try:
        return make_answer(parse_answer(text))
    except ValueError as error:
        raise FormatError(path, f"{where}: {error}") from error


def _group_from_dict(path: str, index: int, raw: Any) -> SemanticGroup:
    where = f"groups[{index}]"
    fields = JsonFields(path, where, raw)
    values = []
    for position, pair in enumerate(fields.get("values", list)):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(path, f"{where}.values[{position}]: expected a pair")
        if not isinstance(pair[0], str):
            raise FormatError(path, f"{where}.values[{position}][0]: expected str")
        values.append((pair[0], pair[1]))
    queries = []
    for position, entry in enumerate(fields.get("text_queries", list)):
        query = JsonFields(path, f"{where}.text_queries[{position}]", entry)
        queries.append(
            TextQuery(
                query.get("text", str),
                query.get("linguistic_attr", str),
                query.get("template", str),
            )
        )
    gold = fields.get("gold_document_ids", list, optional=True)
    return SemanticGroup(
        fields.get("group_id", str),
        fields.get("sql_template", str),
        fields.get("sql_query", str),
        tuple(values),
        _answer(path, f"{where}.answer", fields.get("answer", str)),
        tuple(queries),
        None if gold is None else frozenset(int(item) for item in gold),
        fields.get("gold_fact", str, optional=True),
    )


def dataset_from_dict(raw: Any, path: str = "<memory>") -> Dataset:
    fields = JsonFields(path, "dataset", raw)
    if fields.get("format", str) != DATASET_FORMAT:
        raise FormatError(path, f"dataset.format: expected '{DATASET_FORMAT}'")
    provenance = JsonFields(path, "provenance", fields.get("provenance", dict))
    groups = [
        _group_from_dict(path, index, entry)
        for index, entry in enumerate(fields.get("groups", list))
    ]
    try:
        return Dataset(
            groups,
            Provenance(
                provenance.get("schema_key", str),
                tuple(provenance.get("criteria_tags", list)),
                provenance.get("backend", str),
                provenance.get("generated_at", str),
            ),
        )
    except ValueError as error:
        raise FormatError(path, str(error)) from error


def _dataset_from_pairs(path: str, raw: List[Any]) -> Dataset:
    groups = []
    for index, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not isinstance(pair[0], str)
            or not isinstance(pair[1], list)
            or not all(isinstance(query, str) for query in pair[1])
        ):
            raise FormatError(path, f"[{index}]: expected [answer, [text queries]]")
        answer, queries = pair
        groups.append(
            SemanticGroup(
                stable_hash(index, answer, queries),
                "",
                "",
                (),
                _answer(path, f"[{index}][0]", answer),
                tuple(TextQuery(query, "", "") for query in queries),
            )
        )
    return Dataset(groups)


@beartype
def export_dataset(dataset: Dataset, path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    staging = path.with_suffix(path.suffix + ".tmp")
    with open(staging, "w", encoding="utf-8") as dataset_io:
        json.dump(dataset_to_dict(dataset), dataset_io, indent=2, ensure_ascii=False)
    os.replace(staging, path)


@beartype
def import_dataset(path: PathLike) -> Dataset:
    """
    Reads a dataset file written by :func:`export_dataset` or
    :func:`export_qa_pairs`.

    Raises
    ------
    FileNotFoundError
    FormatError
        Naming the line of a JSON syntax error or the path of an invalid field.
    """
    path = str(path)
    raw = load_json(path)
    if isinstance(raw, list):
        return _dataset_from_pairs(path, raw)
    return dataset_from_dict(raw, path)


@beartype
def export_qa_pairs(
    dataset: Dataset, path: PathLike, linguistic_attr: Optional[str] = None
) -> None:
    """
    Writes ``[answer, [text queries]]`` pairs, optionally for one linguistic
    attribute only.
    """
    pairs = []
    for group in dataset:
        queries = (
            group.text_queries
            if linguistic_attr is None
            else group.queries_for(linguistic_attr)
        )
        pairs.append([group.answer.text, [query.text for query in queries]])
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as pairs_io:
        json.dump(pairs, pairs_io, indent=4, ensure_ascii=False)
