# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import hashlib
import json
from typing import Any, List, Sequence, Tuple

import numpy as np

from .errors import FormatError

__all__ = [
    "JsonFields",
    "cartesian_product",
    "index_product",
    "load_json",
    "stable_hash",
]


def cartesian_product(*arrays: np.ndarray) -> np.ndarray:
    """
    Rows of the cartesian product of 1-d arrays, the last array varying fastest.

    >>> cartesian_product(np.array([0, 1]), np.array([0, 1, 2])).tolist()
    [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]
    """
    count = len(arrays)
    if count == 0:
        return np.empty((1, 0), dtype=int)
    grid = np.meshgrid(*arrays, indexing="ij")
    return np.stack(grid, axis=-1).reshape(-1, count)


def index_product(values: Sequence[Sequence[Any]]) -> List[Tuple[Any, ...]]:
    """
    The cartesian product of arbitrary value lists, enumerated through their indices
    so values of any type keep their identity.

    >>> index_product([["a", "b"], [1, 2]])
    [('a', 1), ('a', 2), ('b', 1), ('b', 2)]
    >>> index_product([["a"], []])
    []
    """
    if any(len(options) == 0 for options in values):
        return []
    indices = cartesian_product(*(np.arange(len(options)) for options in values))
    return [
        tuple(options[index] for options, index in zip(values, row))
        for row in indices.tolist()
    ]


def stable_hash(*parts: Any, length: int = 16) -> str:
    """
    A hex digest of JSON-serialized ``parts``, stable across processes.

    >>> stable_hash("SELECT 1", ["x"]) == stable_hash("SELECT 1", ["x"])
    True
    """
    payload = json.dumps(parts, sort_keys=True, default=str, ensure_ascii=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:length]


def load_json(path: str) -> Any:
    """
    Raises
    ------
    FileNotFoundError
    FormatError
        If the file is not valid JSON.
    """
    with open(path, "r", encoding="utf-8") as json_io:
        try:
            return json.load(json_io)
        except json.JSONDecodeError as error:
            raise FormatError(
                path, f"line {error.lineno} column {error.colno}: {error.msg}"
            ) from error


class JsonFields:
    """Typed field access to a parsed JSON object, naming the failing path in errors."""

    def __init__(self, path: str, where: str, raw: Any):
        if not isinstance(raw, dict):
            raise FormatError(path, f"{where}: expected an object")
        self._path = path
        self._where = where
        self._raw = raw

    def get(self, name: str, kind: Any, optional: bool = False) -> Any:
        if name not in self._raw:
            if optional:
                return None
            raise FormatError(self._path, f"{self._where}.{name}: missing")
        value = self._raw[name]
        if value is None and optional:
            return None
        if not isinstance(value, kind):
            raise FormatError(
                self._path, f"{self._where}.{name}: unexpected {type(value).__name__}"
            )
        return value
