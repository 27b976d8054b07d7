# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from typing import List, Sequence

from beartype import beartype

from .. import preconditions
from ..errors import FirstChunkTooLarge
from .corpus import Chunk

__all__ = ["CHUNK_SEPARATOR", "select_context", "assemble_context"]

CHUNK_SEPARATOR = "\n\n"


@beartype
def select_context(ranking: Sequence[Chunk], budget: int) -> List[Chunk]:
    """
    The longest prefix of ``ranking`` whose token total fits ``budget``.

    Raises
    ------
    FirstChunkTooLarge
        If the first ranked chunk alone exceeds ``budget``.
    """
    preconditions.check_argument(budget >= 1, "budget must be at least 1")
    selected: List[Chunk] = []
    used = 0
    for chunk in ranking:
        if used + chunk.token_count > budget:
            if not selected:
                raise FirstChunkTooLarge(
                    f"chunk {chunk.chunk_id} has {chunk.token_count} tokens, "
                    f"more than the context budget of {budget}"
                )
            break
        selected.append(chunk)
        used += chunk.token_count
    return selected


@beartype
def assemble_context(ranking: Sequence[Chunk], budget: int) -> str:
    """
    Concatenates ranked chunks in rank order, stopping before the first chunk that
    would push the context over ``budget`` tokens.

    >>> from ragologic.retrieval import Chunk
    >>> ranking = [Chunk(3, 1, "Ava leads Sales.", 3), Chunk(0, 0, "Ben leads IT.", 3)]
    >>> assemble_context(ranking, 6)
    'Ava leads Sales.\\n\\nBen leads IT.'
    >>> assemble_context(ranking, 5)
    'Ava leads Sales.'
    """
    return CHUNK_SEPARATOR.join(chunk.text for chunk in select_context(ranking, budget))
