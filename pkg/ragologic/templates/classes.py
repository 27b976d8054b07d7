# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from typing import FrozenSet, NamedTuple, Optional, Tuple

from beartype import beartype

from .. import preconditions
from .placeholders import Placeholder, PlaceholderKey, parse_placeholders

__all__ = [
    "SQL",
    "TEXT",
    "GenerationCriteria",
    "SqlTemplate",
    "TextTemplate",
    "Violation",
]

SQL = "sql"
TEXT = "text"


class Violation(NamedTuple):
    """One failed template criterion: a stable ``code`` and a readable ``detail``."""

    code: str
    detail: str


class SqlTemplate(NamedTuple):
    text: str
    placeholders: Tuple[Placeholder, ...]
    source_schema_key: str

    @classmethod
    def from_text(cls, text: str, source_schema_key: str = "") -> "SqlTemplate":
        return cls(text, tuple(parse_placeholders(text)), source_schema_key)

    def placeholder_set(self) -> FrozenSet[PlaceholderKey]:
        return frozenset(placeholder.key for placeholder in self.placeholders)


class TextTemplate:
    """
    A natural language rendering of a :class:`SqlTemplate`.

    Its placeholders are parsed from ``text`` on construction and must be exactly
    the placeholders of ``parent``.

    >>> parent = SqlTemplate.from_text(
    ...     "SELECT StartDate FROM Project WHERE Name = '[Project.Name]';"
    ... )
    >>> TextTemplate("Start date for project '[Project.Name]'", parent, "short")
    TextTemplate("Start date for project '[Project.Name]'", 'short')
    >>> TextTemplate("Start date for the project", parent, "short")
    Traceback (most recent call last):
        ...
    ValueError: text template 'Start date for the project' has placeholders [] but its SQL template has [('project', 'name')]

    Parameters
    ----------
    text : str
    parent : SqlTemplate
    linguistic_attr : str
        The criteria tag the template was generated under, e.g. ``"short"``.

    Raises
    ------
    MalformedPlaceholder
        If ``text`` contains a malformed bracket expression.
    ValueError
        If the placeholder sets differ.
    """

    @beartype
    def __init__(self, text: str, parent: SqlTemplate, linguistic_attr: str):
        placeholders = tuple(parse_placeholders(text))
        keys = frozenset(placeholder.key for placeholder in placeholders)
        if keys != parent.placeholder_set():
            raise ValueError(
                f"text template '{text}' has placeholders {sorted(keys)} but its "
                f"SQL template has {sorted(parent.placeholder_set())}"
            )
        self._text = text
        self._parent = parent
        self._linguistic_attr = linguistic_attr
        self._placeholders = placeholders

    @property
    def text(self) -> str:
        return self._text

    @property
    def parent(self) -> SqlTemplate:
        return self._parent

    @property
    def linguistic_attr(self) -> str:
        return self._linguistic_attr

    @property
    def placeholders(self) -> Tuple[Placeholder, ...]:
        return self._placeholders

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TextTemplate)
            and self._text == other._text
            and self._parent.text == other._parent.text
            and self._linguistic_attr == other._linguistic_attr
        )

    def __hash__(self) -> int:
        return hash((self._text, self._parent.text, self._linguistic_attr))

    def __repr__(self) -> str:
        return f"TextTemplate({self._text!r}, {self._linguistic_attr!r})"


class GenerationCriteria(NamedTuple):
    """
    Instructions handed to a template generator.

    ``tag`` names the criteria (``"short"``, ``"long"``, ``"one-placeholder"``) and
    becomes the ``linguistic_attr`` of generated text templates.
    """

    kind: str
    instruction_text: str
    num_generations: int = 1
    required_placeholder_count: Optional[int] = None
    tag: str = ""

    @classmethod
    @beartype
    def create(
        cls,
        kind: str,
        instruction_text: str,
        num_generations: int = 1,
        required_placeholder_count: Optional[int] = None,
        tag: str = "",
    ) -> "GenerationCriteria":
        preconditions.check_argument(
            kind in (SQL, TEXT), f"kind must be '{SQL}' or '{TEXT}', got '{kind}'"
        )
        preconditions.check_argument(
            num_generations >= 1, "num_generations must be at least 1"
        )
        preconditions.check_argument(
            required_placeholder_count is None or required_placeholder_count >= 1,
            "required_placeholder_count must be at least 1 when given",
        )
        return cls(
            kind, instruction_text, num_generations, required_placeholder_count, tag
        )
