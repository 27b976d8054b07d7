# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from collections import Counter
from typing import (
    Any,
    Dict,
    FrozenSet,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

from beartype import beartype

from ..schema import Answer
from ..utils import stable_hash

__all__ = [
    "TextQuery",
    "SemanticGroup",
    "Provenance",
    "Dataset",
    "group_id_for",
]


class TextQuery(NamedTuple):
    text: str
    linguistic_attr: str
    template: str


class SemanticGroup(NamedTuple):
    """
    One instantiated SQL query, its ground truth and every text query phrased from
    it.

    ``values`` pairs each placeholder expression, e.g. ``"[Client.Name]"``, with the
    database value it was filled with. ``gold_fact`` and ``gold_document_ids`` are
    set once the group has been matched against a corpus.
    """

    group_id: str
    sql_template: str
    sql_query: str
    values: Tuple[Tuple[str, Any], ...]
    answer: Answer
    text_queries: Tuple[TextQuery, ...]
    gold_document_ids: Optional[FrozenSet[int]] = None
    gold_fact: Optional[str] = None

    def queries_for(self, linguistic_attr: str) -> Tuple[TextQuery, ...]:
        return tuple(
            query
            for query in self.text_queries
            if query.linguistic_attr == linguistic_attr
        )


def group_id_for(sql_template: str, values: Sequence[Tuple[str, Any]]) -> str:
    """
    A stable identifier of a (SQL template, placeholder combination) pair.

    >>> group_id_for("SELECT 1", [("[T.C]", "x")]) == group_id_for(
    ...     "SELECT 1", [("[T.C]", "x")])
    True
    """
    return stable_hash(sql_template, [[key, value] for key, value in values])


class Provenance(NamedTuple):
    schema_key: str = ""
    criteria_tags: Tuple[str, ...] = ()
    backend: str = ""
    generated_at: str = ""


class Dataset:
    """
    An ordered collection of :class:`SemanticGroup` with unique group ids.

    Parameters
    ----------
    groups : Sequence[SemanticGroup]
    provenance : Provenance, optional

    Raises
    ------
    ValueError
        If two groups share an id.
    """

    @beartype
    def __init__(
        self, groups: Sequence[SemanticGroup], provenance: Provenance = Provenance()
    ):
        seen = set()
        for group in groups:
            if group.group_id in seen:
                raise ValueError(f"duplicate group id '{group.group_id}'")
            seen.add(group.group_id)
        self._groups = tuple(groups)
        self._provenance = provenance
        self._by_id = {group.group_id: group for group in self._groups}

    @property
    def groups(self) -> Tuple[SemanticGroup, ...]:
        return self._groups

    @property
    def provenance(self) -> Provenance:
        return self._provenance

    def group(self, group_id: str) -> SemanticGroup:
        return self._by_id[group_id]

    def linguistic_attrs(self) -> List[str]:
        attrs: List[str] = []
        for group in self._groups:
            for query in group.text_queries:
                if query.linguistic_attr not in attrs:
                    attrs.append(query.linguistic_attr)
        return attrs

    def query_count(self) -> int:
        return sum(len(group.text_queries) for group in self._groups)

    def counts_by_attribute(self) -> Dict[str, int]:
        """Text query counts per linguistic attribute."""
        counter: Counter = Counter(
            query.linguistic_attr
            for group in self._groups
            for query in group.text_queries
        )
        return {attr: counter[attr] for attr in self.linguistic_attrs()}

    def with_groups(self, groups: Sequence[SemanticGroup]) -> "Dataset":
        return Dataset(groups, self._provenance)

    def __len__(self) -> int:
        return len(self._groups)

    def __iter__(self) -> Iterator[SemanticGroup]:
        return iter(self._groups)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Dataset)
            and self._groups == other._groups
            and self._provenance == other._provenance
        )

    def __repr__(self) -> str:
        return (
            f"Dataset({len(self._groups)} groups, {self.query_count()} text queries)"
        )
