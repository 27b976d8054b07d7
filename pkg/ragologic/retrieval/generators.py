# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Answer generators of the pipeline under test.

``extractive_stub`` is deterministic and ignores temperature: it answers with the
ground truth values when the group's gold fact sentence is part of the context and
with :data:`UNKNOWN_ANSWER` otherwise, so its correctness depends on retrieval only.
``http_llm`` asks a completion backend with the context, and ``llm_only`` asks it
without any retrieval.
"""

from abc import ABC, abstractmethod
from typing import NamedTuple, Optional

from beartype import beartype

from .. import preconditions
from ..backends import CompletionBackend
from ..generation import SemanticGroup
from ..prompts import CLOSED_BOOK_ANSWER, RAG_ANSWER, PromptCatalog, default_catalog
from .corpus import split_sentences
from .provenance import mentions_fact

__all__ = [
    "EXTRACTIVE_STUB",
    "HTTP_LLM",
    "LLM_ONLY",
    "GENERATOR_KINDS",
    "UNKNOWN_ANSWER",
    "GeneratorConfig",
    "AnswerGenerator",
    "ExtractiveStubGenerator",
    "LlmGenerator",
    "build_generator",
]

EXTRACTIVE_STUB = "extractive_stub"
HTTP_LLM = "http_llm"
LLM_ONLY = "llm_only"
GENERATOR_KINDS = (EXTRACTIVE_STUB, HTTP_LLM, LLM_ONLY)

UNKNOWN_ANSWER = "I don't know"


class GeneratorConfig(NamedTuple):
    kind: str = EXTRACTIVE_STUB
    temperature: float = 0.0
    prompt: str = RAG_ANSWER
    budget: int = 512


class AnswerGenerator(ABC):
    @property
    def uses_retrieval(self) -> bool:
        return True

    @abstractmethod
    def answer(
        self,
        query: str,
        context: str,
        group: SemanticGroup,
        temperature: Optional[float] = None,
        sample: int = 0,
    ) -> str:
        pass


class ExtractiveStubGenerator(AnswerGenerator):
    """
    >>> from ragologic.generation import SemanticGroup
    >>> from ragologic.schema import make_answer
    >>> group = SemanticGroup("g", "", "", (), make_answer([("Maldives",)]), (),
    ...                       gold_fact="Blue Horizon Hotels is based in the Maldives.")
    >>> stub = ExtractiveStubGenerator()
    >>> stub.answer("where?", "Blue Horizon Hotels is based in the Maldives.", group)
    'Maldives'
    >>> stub.answer("where?", "Solaris Tower opened in 2021.", group)
    "I don't know"
    """

    def answer(
        self,
        query: str,
        context: str,
        group: SemanticGroup,
        temperature: Optional[float] = None,
        sample: int = 0,
    ) -> str:
        if group.gold_fact is not None:
            found = group.gold_fact in context
        else:
            found = any(
                mentions_fact(sentence, group)
                for sentence in split_sentences(context)
            )
        if not found or group.answer.cardinality != 1:
            return UNKNOWN_ANSWER
        return ", ".join(
            str(value) for value in group.answer.rows[0] if value is not None
        )


class LlmGenerator(AnswerGenerator):
    """
    Answers through a completion backend with the prompt named by ``prompt``.

    Parameters
    ----------
    backend : CompletionBackend
    prompt : str, optional (default="rag_answer")
        A catalog prompt with ``context`` and ``query`` slots, or ``query`` only
        when ``closed_book`` is set.
    temperature : float, optional (default=0.0)
        Temperature of the primary response.
    closed_book : bool, optional (default=False)
        Answer without any context.
    catalog : Optional[PromptCatalog]
    """

    @beartype
    def __init__(
        self,
        backend: CompletionBackend,
        prompt: str = RAG_ANSWER,
        temperature: float = 0.0,
        closed_book: bool = False,
        catalog: Optional[PromptCatalog] = None,
    ):
        self._backend = backend
        self._prompt = prompt
        self._temperature = temperature
        self._closed_book = closed_book
        self._catalog = catalog or default_catalog()

    @property
    def uses_retrieval(self) -> bool:
        return not self._closed_book

    def answer(
        self,
        query: str,
        context: str,
        group: SemanticGroup,
        temperature: Optional[float] = None,
        sample: int = 0,
    ) -> str:
        if self._closed_book:
            prompt = self._catalog.render(self._prompt, query=query)
        else:
            prompt = self._catalog.render(self._prompt, context=context, query=query)
        temperature = self._temperature if temperature is None else temperature
        return self._backend.complete(prompt, temperature=temperature, sample=sample)


@beartype
def build_generator(
    config: GeneratorConfig,
    backend: Optional[CompletionBackend] = None,
    catalog: Optional[PromptCatalog] = None,
) -> AnswerGenerator:
    preconditions.check_argument(
        config.kind in GENERATOR_KINDS,
        f"unknown generator '{config.kind}', expected one of {list(GENERATOR_KINDS)}",
    )
    if config.kind == EXTRACTIVE_STUB:
        return ExtractiveStubGenerator()
    preconditions.check_argument(
        backend is not None, f"the '{config.kind}' generator needs a backend"
    )
    if config.kind == LLM_ONLY:
        prompt = CLOSED_BOOK_ANSWER if config.prompt == RAG_ANSWER else config.prompt
        return LlmGenerator(backend, prompt, config.temperature, True, catalog)
    return LlmGenerator(backend, config.prompt, config.temperature, False, catalog)
