# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import List, Sequence

import numpy as np
from beartype import beartype
from scipy import sparse
from sklearn.feature_extraction.text import CountVectorizer, TfidfTransformer

from ..errors import EmptyCorpus
from .corpus import Chunk, Corpus, tokenize

__all__ = ["SparseIndex", "build_index"]

_logger = logging.getLogger(__name__)


class SparseIndex:
    """
    An immutable term index over the chunks of a corpus.

    ``counts`` holds raw term frequencies, one row per chunk in chunk id order and one
    column per vocabulary term. ``idf`` is the smoothed inverse document frequency
    ``ln((1 + n_chunks) / (1 + df)) + 1`` of every term.

    Use :func:`build_index` to construct one.
    """

    def __init__(
        self,
        corpus: Corpus,
        chunk_size: int,
        chunks: Sequence[Chunk],
        vectorizer: CountVectorizer,
        counts: sparse.csr_matrix,
        idf: np.ndarray,
    ):
        self._corpus = corpus
        self._chunk_size = chunk_size
        self._chunks = tuple(chunks)
        self._vectorizer = vectorizer
        self._counts = counts
        self._presence = (counts > 0).astype(np.int64).tocsr()
        self._idf = idf

    @property
    def corpus(self) -> Corpus:
        return self._corpus

    @property
    def chunk_size(self) -> int:
        return self._chunk_size

    @property
    def chunks(self) -> Sequence[Chunk]:
        return self._chunks

    @property
    def counts(self) -> sparse.csr_matrix:
        return self._counts

    @property
    def presence(self) -> sparse.csr_matrix:
        return self._presence

    @property
    def idf(self) -> np.ndarray:
        return self._idf

    def vocabulary(self) -> List[str]:
        return list(self._vectorizer.get_feature_names_out())

    def postings(self, term: str) -> List[tuple]:
        """
        ``(chunk_id, term frequency)`` pairs of the chunks containing ``term``.
        """
        column = self._vectorizer.vocabulary_.get(term.casefold())
        if column is None:
            return []
        frequencies = self._counts.getcol(column).tocoo()
        return sorted(
            (int(row), int(count))
            for row, count in zip(frequencies.row, frequencies.data)
        )

    def query_terms(self, query: str) -> np.ndarray:
        """A 0/1 vector over the vocabulary marking the distinct terms of ``query``."""
        vector = self._vectorizer.transform([query])
        return (vector.toarray().ravel() > 0).astype(np.float64)

    def __len__(self) -> int:
        return len(self._chunks)

    def __repr__(self) -> str:
        return (
            f"SparseIndex({len(self._chunks)} chunks, "
            f"{self._counts.shape[1]} terms, chunk_size={self._chunk_size})"
        )


@beartype
def build_index(corpus: Corpus, chunk_size: int = 128) -> SparseIndex:
    """
    Chunks ``corpus`` and indexes every chunk.

    >>> from ragologic.retrieval import Document
    >>> index = build_index(Corpus([Document(0, "t", "Ava leads Sales. Ava.")]))
    >>> index.postings("ava")
    [(0, 2)]

    Parameters
    ----------
    corpus : Corpus
    chunk_size : int, optional (default=128)
        Maximum chunk length in tokens, at least 16.

    Raises
    ------
    EmptyCorpus
        If the corpus yields no chunk with at least one token.
    """
    chunks = corpus.chunks(chunk_size)
    if len(chunks) == 0:
        raise EmptyCorpus("the corpus contains no text to index")
    vectorizer = CountVectorizer(analyzer=tokenize)
    try:
        counts = vectorizer.fit_transform([chunk.text for chunk in chunks]).tocsr()
    except ValueError as error:
        raise EmptyCorpus(f"the corpus contains no indexable terms: {error}") from error
    transformer = TfidfTransformer(norm=None, use_idf=True, smooth_idf=True)
    transformer.fit(counts)
    _logger.info(
        f"indexed {len(chunks)} chunks of {len(corpus)} documents "
        f"over {counts.shape[1]} terms"
    )
    return SparseIndex(
        corpus, chunk_size, chunks, vectorizer, counts, transformer.idf_.copy()
    )
