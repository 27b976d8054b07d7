# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Document corpora and their chunks.

A token is a Unicode word, ``\\w+`` over the case-folded text; chunk sizes and
context budgets are counted in these tokens. Documents are split into sentences and
chunks are packed from whole sentences, so a fact sentence is never cut in two unless
it alone exceeds the chunk size.
"""

import json
import logging
import os
import re
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, NamedTuple, Sequence, Tuple, Union

from beartype import beartype

from .. import preconditions
from ..errors import FormatError
from ..utils import load_json

__all__ = [
    "MIN_CHUNK_SIZE",
    "Document",
    "Chunk",
    "Corpus",
    "tokenize",
    "token_count",
    "split_sentences",
    "chunk_document",
    "load_corpus",
    "save_corpus",
    "corrupt_corpus",
]

_logger = logging.getLogger(__name__)

MIN_CHUNK_SIZE = 16

_TOKEN = re.compile(r"\w+")
_SENTENCE_END = re.compile(r"(?<=[.!?])\s+")

PathLike = Union[str, Path]


def tokenize(text: str) -> List[str]:
    """
    >>> tokenize("Blue Horizon Hotels' HQ: Malé, Maldives.")
    ['blue', 'horizon', 'hotels', 'hq', 'malé', 'maldives']
    """
    return _TOKEN.findall(text.casefold())


def token_count(text: str) -> int:
    return len(_TOKEN.findall(text))


def split_sentences(text: str) -> List[str]:
    """
    >>> split_sentences("Ava leads Sales. She joined in 2019!  Ask her?")
    ['Ava leads Sales.', 'She joined in 2019!', 'Ask her?']
    """
    return [sentence for sentence in _SENTENCE_END.split(text.strip()) if sentence]


class Document(NamedTuple):
    doc_id: int
    title: str
    body: str


class Chunk(NamedTuple):
    chunk_id: int
    doc_id: int
    text: str
    token_count: int


def _windows(sentence: str, chunk_size: int) -> List[str]:
    spans = [match.span() for match in _TOKEN.finditer(sentence)]
    windows = []
    for start in range(0, len(spans), chunk_size):
        window = spans[start : start + chunk_size]
        end = (
            spans[start + chunk_size][0]
            if start + chunk_size < len(spans)
            else len(sentence)
        )
        begin = 0 if start == 0 else window[0][0]
        windows.append(sentence[begin:end].strip())
    return windows


def chunk_document(body: str, chunk_size: int) -> List[str]:
    """
    Packs consecutive sentences of ``body`` into chunks of at most ``chunk_size``
    tokens. A sentence longer than ``chunk_size`` is cut into token windows.

    >>> chunk_document("One two three. Four five. Six.", 16)
    ['One two three. Four five. Six.']
    >>> chunk_document("One two three. Four five. Six.", 3)
    ['One two three.', 'Four five. Six.']
    """
    chunks: List[str] = []
    current: List[str] = []
    size = 0
    for sentence in split_sentences(body):
        count = token_count(sentence)
        if count > chunk_size:
            if current:
                chunks.append(" ".join(current))
                current, size = [], 0
            chunks.extend(_windows(sentence, chunk_size))
            continue
        if current and size + count > chunk_size:
            chunks.append(" ".join(current))
            current, size = [], 0
        current.append(sentence)
        size += count
    if current:
        chunks.append(" ".join(current))
    return chunks


class Corpus:
    """
    An ordered collection of documents.

    Parameters
    ----------
    documents : Sequence[Document]
        Documents with unique ``doc_id`` values.

    Raises
    ------
    ValueError
        If two documents share an id.
    """

    @beartype
    def __init__(self, documents: Sequence[Document]):
        ids = [document.doc_id for document in documents]
        preconditions.check_argument(
            len(set(ids)) == len(ids), "document ids must be unique"
        )
        self._documents = tuple(documents)
        self._by_id = {document.doc_id: document for document in self._documents}
        self._chunks: Dict[int, List[Chunk]] = {}

    @property
    def documents(self) -> Sequence[Document]:
        return self._documents

    def document(self, doc_id: int) -> Document:
        return self._by_id[doc_id]

    def chunks(self, chunk_size: int) -> List[Chunk]:
        """
        Chunks of every document in document order, with dense chunk ids.

        >>> corpus = Corpus([Document(0, "a", "One two. Three."), Document(4, "b", "")])
        >>> corpus.chunks(16)
        [Chunk(chunk_id=0, doc_id=0, text='One two. Three.', token_count=3)]
        """
        preconditions.check_argument(
            chunk_size >= MIN_CHUNK_SIZE,
            f"chunk_size must be at least {MIN_CHUNK_SIZE}",
        )
        if chunk_size not in self._chunks:
            chunks: List[Chunk] = []
            for document in self._documents:
                for text in chunk_document(document.body, chunk_size):
                    chunks.append(
                        Chunk(len(chunks), document.doc_id, text, token_count(text))
                    )
            self._chunks[chunk_size] = chunks
        return list(self._chunks[chunk_size])

    def sentences(self) -> Iterator[Tuple[int, str]]:
        """``(doc_id, sentence)`` pairs in document order."""
        for document in self._documents:
            for sentence in split_sentences(document.body):
                yield document.doc_id, sentence

    def __len__(self) -> int:
        return len(self._documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self._documents)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Corpus) and self._documents == other._documents

    def __repr__(self) -> str:
        return f"Corpus({len(self._documents)} documents)"


@beartype
def load_corpus(path: PathLike) -> Corpus:
    """
    Reads a corpus file, a JSON array of ``{"id", "title", "body"}`` records.

    Raises
    ------
    FormatError
    """
    path = str(path)
    raw = load_json(path)
    if not isinstance(raw, list):
        raise FormatError(path, "expected an array of documents")
    documents = []
    for index, record in enumerate(raw):
        if (
            not isinstance(record, dict)
            or not isinstance(record.get("id"), int)
            or not isinstance(record.get("title"), str)
            or not isinstance(record.get("body"), str)
        ):
            raise FormatError(path, f"[{index}]: expected {{id, title, body}}")
        documents.append(Document(record["id"], record["title"], record["body"]))
    try:
        return Corpus(documents)
    except ValueError as error:
        raise FormatError(path, str(error)) from error


@beartype
def save_corpus(corpus: Corpus, path: PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records = [
        {"id": document.doc_id, "title": document.title, "body": document.body}
        for document in corpus
    ]
    staging = path.with_suffix(path.suffix + ".tmp")
    with open(staging, "w", encoding="utf-8") as corpus_io:
        json.dump(records, corpus_io, indent=2, ensure_ascii=False)
    os.replace(staging, path)


@beartype
def corrupt_corpus(corpus: Corpus, facts: Iterable[str]) -> Corpus:
    """
    A copy of ``corpus`` with every sentence equal to one of ``facts`` removed.

    >>> corpus = Corpus([Document(0, "t", "Ava leads Sales. Ben leads IT.")])
    >>> corrupt_corpus(corpus, ["Ben leads IT."]).document(0).body
    'Ava leads Sales.'
    """
    removed = set(facts)
    documents = []
    dropped = 0
    for document in corpus:
        sentences = split_sentences(document.body)
        kept = [sentence for sentence in sentences if sentence not in removed]
        dropped += len(sentences) - len(kept)
        documents.append(document._replace(body=" ".join(kept)))
    _logger.info(f"removed {dropped} fact sentences from {len(corpus)} documents")
    return Corpus(documents)
