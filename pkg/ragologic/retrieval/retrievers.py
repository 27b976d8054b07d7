# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Sparse retrievers.

``keyword`` scores a chunk by the number of distinct query terms it shares with the
query; ``tfidf`` sums ``tf(t, chunk) * idf(t)`` over the distinct query terms, with raw
term frequencies and no length normalization. Both rank by descending score and
break ties by ascending chunk id.
"""

import logging
from typing import Callable, Dict, List, NamedTuple, Tuple

import numpy as np
from beartype import beartype

from .. import preconditions
from .context import CHUNK_SEPARATOR, select_context
from .corpus import token_count
from .index import SparseIndex

__all__ = [
    "KEYWORD",
    "TFIDF",
    "RetrievalResult",
    "keyword_scores",
    "tfidf_scores",
    "keyword_retrieve",
    "tfidf_retrieve",
    "retrieve",
    "RETRIEVERS",
]

_logger = logging.getLogger(__name__)

KEYWORD = "keyword"
TFIDF = "tfidf"


class RetrievalResult(NamedTuple):
    """
    The ranked chunks of one query and the context assembled from them.

    ``document_ids`` are the documents of the chunks that made it into the context,
    deduplicated in rank order.
    """

    query: str
    ranked_chunk_ids: Tuple[int, ...]
    scores: Tuple[float, ...]
    assembled_context: str
    context_token_count: int
    document_ids: Tuple[int, ...]


def keyword_scores(query: str, index: SparseIndex) -> np.ndarray:
    return index.presence @ index.query_terms(query)


def tfidf_scores(query: str, index: SparseIndex) -> np.ndarray:
    return index.counts @ (index.query_terms(query) * index.idf)


def _rank(scores: np.ndarray, k: int) -> np.ndarray:
    chunk_ids = np.arange(len(scores))
    return np.lexsort((chunk_ids, -scores))[:k]


def _result(
    query: str, index: SparseIndex, scores: np.ndarray, k: int, budget: int
) -> RetrievalResult:
    preconditions.check_argument(k >= 1, "k must be at least 1")
    order = _rank(np.asarray(scores, dtype=np.float64).ravel(), k)
    ranking = [index.chunks[position] for position in order]
    selected = select_context(ranking, budget)
    document_ids: List[int] = []
    for chunk in selected:
        if chunk.doc_id not in document_ids:
            document_ids.append(chunk.doc_id)
    context = CHUNK_SEPARATOR.join(chunk.text for chunk in selected)
    return RetrievalResult(
        query,
        tuple(int(position) for position in order),
        tuple(float(scores[position]) for position in order),
        context,
        token_count(context),
        tuple(document_ids),
    )


@beartype
def keyword_retrieve(
    query: str, index: SparseIndex, k: int = 4, budget: int = 512
) -> RetrievalResult:
    """
    Ranks chunks by how many distinct query terms they contain.

    >>> from ragologic.retrieval import Corpus, Document, build_index
    >>> index = build_index(Corpus([
    ...     Document(0, "a", "Ava leads the Sales team."),
    ...     Document(1, "b", "Ben leads IT."),
    ... ]))
    >>> result = keyword_retrieve("who leads sales", index, k=2)
    >>> result.ranked_chunk_ids, result.scores
    ((0, 1), (2.0, 1.0))
    """
    return _result(query, index, keyword_scores(query, index), k, budget)


@beartype
def tfidf_retrieve(
    query: str, index: SparseIndex, k: int = 4, budget: int = 512
) -> RetrievalResult:
    """
    Ranks chunks by the idf-weighted frequencies of the query terms they contain.
    """
    return _result(query, index, tfidf_scores(query, index), k, budget)


RETRIEVERS: Dict[str, Callable[..., RetrievalResult]] = {
    KEYWORD: keyword_retrieve,
    TFIDF: tfidf_retrieve,
}


@beartype
def retrieve(
    retriever: str, query: str, index: SparseIndex, k: int = 4, budget: int = 512
) -> RetrievalResult:
    preconditions.check_argument(
        retriever in RETRIEVERS,
        f"unknown retriever '{retriever}', expected one of {sorted(RETRIEVERS)}",
    )
    return RETRIEVERS[retriever](query, index, k=k, budget=budget)
