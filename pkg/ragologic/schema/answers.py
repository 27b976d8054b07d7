# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import ast
import datetime
import decimal
import re
import unicodedata
from typing import Any, List, NamedTuple, Sequence, Tuple

__all__ = [
    "Answer",
    "make_answer",
    "parse_answer",
    "normalize_answer",
    "normalize_text",
]

_WHITESPACE = re.compile(r"\s+")


class Answer(NamedTuple):
    """
    A ground truth answer.

    ``text`` is the canonical serialization of the full result set, a stringified
    list of row tuples such as ``"[('Maldives',)]"``. ``rows`` holds the same rows
    as python values and ``cardinality`` their count.
    """

    text: str
    rows: Tuple[Tuple[Any, ...], ...]
    cardinality: int

    def is_null(self) -> bool:
        """``True`` for a single row whose every value is NULL."""
        return self.cardinality == 1 and all(value is None for value in self.rows[0])


def _plain(value: Any) -> Any:
    # dates and decimals must survive a literal_eval of the canonical form
    if isinstance(value, (datetime.date, datetime.datetime, datetime.time)):
        return value.isoformat()
    if isinstance(value, decimal.Decimal):
        return float(value)
    if isinstance(value, (bytes, bytearray, memoryview)):
        return bytes(value).decode("utf-8", errors="replace")
    return value


def make_answer(rows: Sequence[Sequence[Any]]) -> Answer:
    """
    Builds the canonical :class:`Answer` for a result set.

    >>> make_answer([("Maldives",)])
    Answer(text="[('Maldives',)]", rows=(('Maldives',),), cardinality=1)
    >>> make_answer([]).text
    '[]'
    """
    plain_rows = [tuple(_plain(value) for value in row) for row in rows]
    return Answer(str(plain_rows), tuple(plain_rows), len(plain_rows))


def parse_answer(canonical: str) -> List[Tuple[Any, ...]]:
    """
    Parses a canonical answer string back into row tuples.

    >>> parse_answer("[('Maldives',)]")
    [('Maldives',)]

    Raises
    ------
    ValueError
        If ``canonical`` is not a list of tuples literal.
    """
    try:
        parsed = ast.literal_eval(canonical)
    except (SyntaxError, ValueError) as error:
        raise ValueError(f"not a canonical answer: {canonical!r}") from error
    if not isinstance(parsed, list) or not all(
        isinstance(row, tuple) for row in parsed
    ):
        raise ValueError(f"not a canonical answer: {canonical!r}")
    return parsed


def normalize_text(text: str) -> str:
    """
    Case-folds, drops punctuation and symbols, and collapses whitespace.

    >>> normalize_text("  The MALDIVES! ")
    'the maldives'
    """
    kept = "".join(
        " " if unicodedata.category(character)[0] in ("P", "S") else character
        for character in text.casefold()
    )
    return _WHITESPACE.sub(" ", kept).strip()


def normalize_answer(value: str) -> str:
    """
    The matching form of an answer or a response.

    Canonical answer strings are flattened into their values first, so the answer
    tuple decoration never takes part in a comparison.

    >>> normalize_answer("[('Maldives',)]")
    'maldives'
    >>> normalize_answer("Maldives.")
    'maldives'
    >>> normalize_answer("[('Ava Thompson', 'Chief Executive Officer')]")
    'ava thompson chief executive officer'
    """
    stripped = value.strip()
    if stripped.startswith("["):
        try:
            rows = parse_answer(stripped)
        except ValueError:
            rows = None
        if rows is not None:
            stripped = " ".join(
                str(item) for row in rows for item in row if item is not None
            )
    return normalize_text(stripped)
