# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Versioned prompt catalog.

Every prompt sent to a completion backend lives in ``catalog.json`` next to this
module. A prompt declares the ``{slot}`` names it accepts; rendering replaces only
those, so braces that belong to the prompt text itself survive untouched.
"""

import re
from functools import lru_cache
from pathlib import Path
from typing import Dict, Mapping, NamedTuple, Optional, Tuple, Union

from beartype import beartype

from ..errors import FormatError
from ..utils import load_json

SQL_TEMPLATE_GENERATOR = "sql_template_generator"
TEXT_TEMPLATE_GENERATOR = "text_template_generator"
CRITERIA_SQL_ONE_PLACEHOLDER = "criteria_sql_one_placeholder"
CRITERIA_SHORT = "criteria_short"
CRITERIA_LONG = "criteria_long"
SELFCHECK = "selfcheck"
SELFCHECK_QA = "selfcheck_qa"
RAGAS_NLI = "ragas_nli"
REFERENCE_JUDGE = "reference_judge"
STATEMENT_DECOMPOSITION = "statement_decomposition"
RAG_ANSWER = "rag_answer"
CLOSED_BOOK_ANSWER = "closed_book_answer"

_SLOT = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")
_DEFAULT_PATH = Path(__file__).resolve().parent / "catalog.json"


class _Prompt(NamedTuple):
    text: str
    slots: Tuple[str, ...]


class PromptCatalog:
    """
    A read-only collection of named prompt templates.

    >>> catalog = default_catalog()
    >>> print(catalog.render(CLOSED_BOOK_ANSWER, query="Who leads 'Solaris Tower'?"))
    Answer the question.
    If you do not know the answer, reply "I don't know".
    <BLANKLINE>
    Question: Who leads 'Solaris Tower'?
    Answer:

    Parameters
    ----------
    version : int
        Catalog format version.
    prompts : Mapping[str, _Prompt]
        Prompt text and declared slot names, keyed by prompt name.
    """

    @beartype
    def __init__(self, version: int, prompts: Mapping[str, _Prompt]):
        self._version = version
        self._prompts = dict(prompts)

    @property
    def version(self) -> int:
        return self._version

    def names(self) -> Tuple[str, ...]:
        return tuple(sorted(self._prompts))

    def text(self, name: str) -> str:
        return self._prompt(name).text

    def slots(self, name: str) -> Tuple[str, ...]:
        return self._prompt(name).slots

    @beartype
    def render(self, name: str, **values: Union[str, int]) -> str:
        prompt = self._prompt(name)
        missing = set(prompt.slots) - set(values)
        unknown = set(values) - set(prompt.slots)
        if missing or unknown:
            raise ValueError(
                f"prompt '{name}' declares slots {sorted(prompt.slots)}; "
                f"missing {sorted(missing)}, unknown {sorted(unknown)}"
            )

        def _fill(match: "re.Match[str]") -> str:
            slot = match.group(1)
            if slot in values:
                return str(values[slot])
            return match.group(0)

        return _SLOT.sub(_fill, prompt.text)

    def _prompt(self, name: str) -> _Prompt:
        if name not in self._prompts:
            raise KeyError(f"no prompt named '{name}' in catalog")
        return self._prompts[name]


@beartype
def load_catalog(path: Optional[Union[str, Path]] = None) -> PromptCatalog:
    """
    Reads a prompt catalog file. Without a path the bundled catalog is loaded.

    Raises
    ------
    FormatError
        If the file is not a catalog object, or a prompt text references a slot it
        does not declare.
    """
    path = Path(path) if path is not None else _DEFAULT_PATH
    raw = load_json(str(path))
    if not isinstance(raw, dict) or not isinstance(raw.get("prompts"), dict):
        raise FormatError(str(path), "expected an object with a 'prompts' object")
    prompts: Dict[str, _Prompt] = {}
    for name, entry in raw["prompts"].items():
        if not isinstance(entry, dict) or not isinstance(entry.get("text"), str):
            raise FormatError(str(path), f"prompt '{name}' has no 'text' string")
        slots = tuple(entry.get("slots", []))
        undeclared = {
            slot for slot in _SLOT.findall(entry["text"]) if slot not in slots
        }
        if undeclared:
            raise FormatError(
                str(path), f"prompt '{name}' uses undeclared slots {sorted(undeclared)}"
            )
        prompts[name] = _Prompt(entry["text"], slots)
    return PromptCatalog(int(raw.get("version", 1)), prompts)


@lru_cache(maxsize=1)
def default_catalog() -> PromptCatalog:
    return load_catalog()
