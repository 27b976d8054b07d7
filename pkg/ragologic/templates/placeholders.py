# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import re
from typing import Any, List, Mapping, NamedTuple, Sequence, Tuple

from beartype import beartype

from ..errors import MalformedPlaceholder

__all__ = [
    "Placeholder",
    "PlaceholderKey",
    "parse_placeholders",
    "placeholder_keys",
    "has_placeholders",
    "render_placeholders",
    "substitute",
]

_BRACKETED = re.compile(r"\[([^\[\]]*)\]")
_WELL_FORMED = re.compile(r"\[[A-Za-z_][A-Za-z0-9_]*\.[A-Za-z_][A-Za-z0-9_]*\]")
_IDENTIFIER_PAIR = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\.([A-Za-z_][A-Za-z0-9_]*)")

PlaceholderKey = Tuple[str, str]


class Placeholder(NamedTuple):
    """
    A ``[Table.Column]`` slot and the character span it occupies, brackets included.
    """

    table: str
    column: str
    span: Tuple[int, int]

    @property
    def key(self) -> PlaceholderKey:
        return self.table.casefold(), self.column.casefold()

    @property
    def expression(self) -> str:
        return f"[{self.table}.{self.column}]"


@beartype
def parse_placeholders(template_text: str) -> List[Placeholder]:
    """
    Extracts the placeholders of a template in source order.

    >>> [p[:2] for p in parse_placeholders(
    ...     "SELECT Industry FROM Company WHERE Name = '[Company.Name]';")]
    [('Company', 'Name')]
    >>> parse_placeholders("SELECT A FROM T;")
    []
    >>> parse_placeholders("Where is '[Name]'?")
    Traceback (most recent call last):
        ...
    ragologic.errors.MalformedPlaceholder: malformed placeholder '[Name]' at offset 10; expected '[Table.Column]'

    Raises
    ------
    MalformedPlaceholder
        For any bracket expression that is not ``Table.Column``.
    """
    placeholders = []
    for match in _BRACKETED.finditer(template_text):
        identifiers = _IDENTIFIER_PAIR.fullmatch(match.group(1))
        if identifiers is None:
            raise MalformedPlaceholder(match.group(0), match.start())
        placeholders.append(
            Placeholder(identifiers.group(1), identifiers.group(2), match.span())
        )
    return placeholders


def placeholder_keys(placeholders: Sequence[Placeholder]) -> List[PlaceholderKey]:
    """Distinct placeholder keys in order of first appearance."""
    keys: List[PlaceholderKey] = []
    for placeholder in placeholders:
        if placeholder.key not in keys:
            keys.append(placeholder.key)
    return keys


def has_placeholders(text: str) -> bool:
    return _WELL_FORMED.search(text) is not None


def render_placeholders(template_text: str, placeholders: Sequence[Placeholder]) -> str:
    """
    Writes ``placeholders`` back over their spans; the inverse of parsing.
    """
    pieces = []
    cursor = 0
    for placeholder in placeholders:
        start, end = placeholder.span
        pieces.append(template_text[cursor:start])
        pieces.append(placeholder.expression)
        cursor = end
    pieces.append(template_text[cursor:])
    return "".join(pieces)


@beartype
def substitute(
    template_text: str,
    values: Mapping[PlaceholderKey, Any],
    sql_literal: bool = False,
) -> str:
    """
    Replaces every placeholder with its value.

    With ``sql_literal`` set, single quotes inside values are doubled so they stay
    within the surrounding SQL string literal.

    >>> substitute("SELECT Location FROM Client WHERE Name = '[Client.Name]';",
    ...            {("client", "name"): "O'Neil Realty"}, sql_literal=True)
    "SELECT Location FROM Client WHERE Name = 'O''Neil Realty';"

    Raises
    ------
    KeyError
        If a placeholder has no value.
    """
    pieces = []
    cursor = 0
    for placeholder in parse_placeholders(template_text):
        start, end = placeholder.span
        value = str(values[placeholder.key])
        if sql_literal:
            value = value.replace("'", "''")
        pieces.append(template_text[cursor:start])
        pieces.append(value)
        cursor = end
    pieces.append(template_text[cursor:])
    return "".join(pieces)
