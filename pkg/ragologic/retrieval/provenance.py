# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from beartype import beartype

from ..generation import Dataset, SemanticGroup
from ..schema import normalize_text
from .corpus import Corpus

__all__ = ["fact_terms", "mentions_fact", "find_fact", "attach_provenance"]

_logger = logging.getLogger(__name__)


def _contains(haystack: str, needle: str) -> bool:
    return f" {needle} " in f" {haystack} "


def fact_terms(group: SemanticGroup) -> List[str]:
    """
    The matching forms a sentence must contain to state the group's fact: every
    placeholder value and every answer value.
    """
    values = [value for _, value in group.values]
    values.extend(value for row in group.answer.rows for value in row)
    terms = []
    for value in values:
        if value is None:
            continue
        term = normalize_text(str(value))
        if term and term not in terms:
            terms.append(term)
    return terms


def mentions_fact(sentence: str, group: SemanticGroup) -> bool:
    """
    >>> from ragologic.generation import SemanticGroup
    >>> from ragologic.schema import make_answer
    >>> group = SemanticGroup("g", "", "", (("[Client.Name]", "Blue Horizon Hotels"),),
    ...                       make_answer([("Maldives",)]), ())
    >>> mentions_fact("Blue Horizon Hotels is based in the Maldives.", group)
    True
    >>> mentions_fact("Blue Horizon is based in the Maldives.", group)
    False
    """
    terms = fact_terms(group)
    if not terms:
        return False
    normalized = normalize_text(sentence)
    return all(_contains(normalized, term) for term in terms)


def find_fact(
    group: SemanticGroup, sentences: Sequence[Tuple[int, str]]
) -> Optional[Tuple[str, List[int]]]:
    """
    The first sentence stating the group's fact and every document containing it.
    """
    for _, sentence in sentences:
        if mentions_fact(sentence, group):
            documents = sorted(
                {doc_id for doc_id, other in sentences if other == sentence}
            )
            return sentence, documents
    return None


@beartype
def attach_provenance(dataset: Dataset, corpus: Corpus) -> Dataset:
    """
    Records the gold fact sentence and gold documents of every group.

    The gold fact is the first corpus sentence containing every placeholder value and
    every answer value; the gold documents are all documents containing that
    sentence. Groups the corpus states no fact for are left without provenance.
    """
    sentences = list(corpus.sentences())
    cache: Dict[str, Optional[Tuple[str, List[int]]]] = {}
    groups = []
    missing = 0
    for group in dataset:
        key = repr(fact_terms(group))
        if key not in cache:
            cache[key] = find_fact(group, sentences)
        found = cache[key]
        if found is None:
            missing += 1
            groups.append(group._replace(gold_fact=None, gold_document_ids=None))
            continue
        sentence, documents = found
        groups.append(
            group._replace(gold_fact=sentence, gold_document_ids=frozenset(documents))
        )
    if missing:
        _logger.warning(f"{missing} of {len(dataset)} groups have no gold fact")
    return dataset.with_groups(groups)
