# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .context import CHUNK_SEPARATOR, assemble_context, select_context
from .corpus import (
    MIN_CHUNK_SIZE,
    Chunk,
    Corpus,
    Document,
    chunk_document,
    corrupt_corpus,
    load_corpus,
    save_corpus,
    split_sentences,
    token_count,
    tokenize,
)
from .generators import (
    EXTRACTIVE_STUB,
    GENERATOR_KINDS,
    HTTP_LLM,
    LLM_ONLY,
    UNKNOWN_ANSWER,
    AnswerGenerator,
    ExtractiveStubGenerator,
    GeneratorConfig,
    LlmGenerator,
    build_generator,
)
from .index import SparseIndex, build_index
from .pipeline import EvalRecord, RagPipeline, run_pipeline
from .provenance import attach_provenance, fact_terms, find_fact, mentions_fact
from .render import render_corpus
from .retrievers import (
    KEYWORD,
    RETRIEVERS,
    TFIDF,
    RetrievalResult,
    keyword_retrieve,
    keyword_scores,
    retrieve,
    tfidf_retrieve,
    tfidf_scores,
)

__all__ = [
    "AnswerGenerator",
    "CHUNK_SEPARATOR",
    "Chunk",
    "Corpus",
    "Document",
    "EXTRACTIVE_STUB",
    "EvalRecord",
    "ExtractiveStubGenerator",
    "GENERATOR_KINDS",
    "GeneratorConfig",
    "HTTP_LLM",
    "KEYWORD",
    "LLM_ONLY",
    "LlmGenerator",
    "MIN_CHUNK_SIZE",
    "RETRIEVERS",
    "RagPipeline",
    "RetrievalResult",
    "SparseIndex",
    "TFIDF",
    "UNKNOWN_ANSWER",
    "assemble_context",
    "attach_provenance",
    "build_generator",
    "build_index",
    "chunk_document",
    "corrupt_corpus",
    "fact_terms",
    "find_fact",
    "keyword_retrieve",
    "keyword_scores",
    "load_corpus",
    "mentions_fact",
    "render_corpus",
    "retrieve",
    "run_pipeline",
    "save_corpus",
    "select_context",
    "split_sentences",
    "tfidf_retrieve",
    "tfidf_scores",
    "token_count",
    "tokenize",
]
