# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import itertools
from typing import List, Sequence, Tuple

import networkx as nx
from beartype import beartype

from .. import preconditions
from .classes import DatabaseSchema, TableSchema

__all__ = ["schema_key", "describe_schema", "schema_subsets", "foreign_key_graph"]


@beartype
def schema_key(tables: Sequence[str]) -> str:
    """
    The stringified table tuple that keys SQL template files.

    >>> schema_key(["client"])
    "('client',)"
    >>> schema_key(("company", "people"))
    "('company', 'people')"
    """
    return str(tuple(tables))


def _describe_table(table: TableSchema) -> str:
    references = {
        foreign_key.local_attribute.casefold(): foreign_key
        for foreign_key in table.foreign_keys
    }
    described = []
    for attribute in table.attributes:
        notes = [attribute.value_kind]
        if attribute.name.casefold() == table.primary_key.casefold():
            notes.append("primary key")
        foreign_key = references.get(attribute.name.casefold())
        if foreign_key is not None:
            notes.append(
                f"references {foreign_key.foreign_table}."
                f"{foreign_key.foreign_attribute}"
            )
        described.append(f"{attribute.name} ({', '.join(notes)})")
    return f"Table {table.name}: {', '.join(described)}"


@beartype
def describe_schema(schema: DatabaseSchema, tables: Sequence[str]) -> str:
    """
    Renders the named tables one per line for the ``GIVEN_SCHEMA`` prompt slot.

    >>> from ragologic.schema import Attribute, TableSchema
    >>> client = TableSchema(
    ...     "Client", (Attribute("ClientID", "integer"), Attribute("Name", "text")),
    ...     "ClientID",
    ... )
    >>> print(describe_schema(DatabaseSchema([client]), ["client"]))
    Table Client: ClientID (integer, primary key), Name (text)
    """
    return "\n".join(_describe_table(schema.table(name)) for name in tables)


def foreign_key_graph(schema: DatabaseSchema) -> nx.Graph:
    graph = nx.Graph()
    for table in schema:
        graph.add_node(table.name.casefold())
    for table in schema:
        for foreign_key in table.foreign_keys:
            graph.add_edge(table.name.casefold(), foreign_key.foreign_table.casefold())
    return graph


@beartype
def schema_subsets(
    schema: DatabaseSchema, max_tables: int = 1
) -> List[Tuple[str, ...]]:
    """
    Table tuples that template generation can be prompted with.

    A subset qualifies when its tables form a connected sub-graph of the foreign key
    graph. Single tables come first, in schema order, followed by larger subsets in
    lexicographic order. Names are case-folded, matching the keys of template
    files.

    Parameters
    ----------
    schema : DatabaseSchema
    max_tables : int, optional (default=1)
        The largest subset size to enumerate.

    Returns
    -------
    List[Tuple[str, ...]]
    """
    preconditions.check_argument(max_tables >= 1, "max_tables must be at least 1")
    graph = foreign_key_graph(schema)
    names = [table.name.casefold() for table in schema]
    subsets: List[Tuple[str, ...]] = [(name,) for name in names]
    for size in range(2, min(max_tables, len(names)) + 1):
        for combination in itertools.combinations(sorted(names), size):
            if nx.is_connected(graph.subgraph(combination)):
                subsets.append(combination)
    return subsets
