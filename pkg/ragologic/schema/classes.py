# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from beartype import beartype

from ..errors import UnknownTableOrColumn

__all__ = [
    "VALUE_KINDS",
    "Attribute",
    "ForeignKey",
    "TableSchema",
    "DatabaseSchema",
]

VALUE_KINDS = ("text", "integer", "real", "date")


class Attribute(NamedTuple):
    name: str
    value_kind: str


class ForeignKey(NamedTuple):
    """
    A single column reference from a table to ``foreign_table.foreign_attribute``.
    """

    local_attribute: str
    foreign_table: str
    foreign_attribute: str


class TableSchema(NamedTuple):
    name: str
    attributes: Tuple[Attribute, ...]
    primary_key: str
    foreign_keys: Tuple[ForeignKey, ...] = ()

    def attribute_names(self) -> Tuple[str, ...]:
        return tuple(attribute.name for attribute in self.attributes)

    def attribute(self, name: str) -> Optional[Attribute]:
        folded = name.casefold()
        for attribute in self.attributes:
            if attribute.name.casefold() == folded:
                return attribute
        return None


def _validate_table(table: TableSchema) -> None:
    names = [attribute.name.casefold() for attribute in table.attributes]
    if len(names) != len(set(names)):
        raise ValueError(f"table '{table.name}' has duplicate attribute names")
    for attribute in table.attributes:
        if attribute.value_kind not in VALUE_KINDS:
            raise ValueError(
                f"attribute '{table.name}.{attribute.name}' has value kind "
                f"'{attribute.value_kind}', expected one of {VALUE_KINDS}"
            )
    if table.attribute(table.primary_key) is None:
        raise ValueError(
            f"primary key '{table.primary_key}' is not an attribute of "
            f"'{table.name}'"
        )
    for foreign_key in table.foreign_keys:
        if table.attribute(foreign_key.local_attribute) is None:
            raise ValueError(
                f"foreign key column '{foreign_key.local_attribute}' is not an "
                f"attribute of '{table.name}'"
            )


class DatabaseSchema:
    """
    An ordered, validated collection of :class:`TableSchema` records.

    Table and attribute lookups are case-insensitive, since template generators
    routinely refer to ``Client`` as ``client``.

    >>> client = TableSchema(
    ...     "Client",
    ...     (Attribute("ClientID", "integer"), Attribute("Name", "text")),
    ...     "ClientID",
    ... )
    >>> schema = DatabaseSchema([client])
    >>> schema.table("client").name
    'Client'
    >>> schema.resolve("CLIENT", "name")
    ('Client', 'Name')

    Parameters
    ----------
    tables : Sequence[TableSchema]
        Tables in the order they should be reported.

    Raises
    ------
    ValueError
        If table names collide, a table fails its own invariants, or a foreign key
        targets a table or attribute that is not part of the schema.
    """

    @beartype
    def __init__(self, tables: Sequence[TableSchema]):
        by_name: Dict[str, TableSchema] = {}
        for table in tables:
            _validate_table(table)
            folded = table.name.casefold()
            if folded in by_name:
                raise ValueError(f"duplicate table name '{table.name}'")
            by_name[folded] = table
        for table in tables:
            for foreign_key in table.foreign_keys:
                target = by_name.get(foreign_key.foreign_table.casefold())
                if target is None or target.attribute(
                    foreign_key.foreign_attribute
                ) is None:
                    raise ValueError(
                        f"foreign key {table.name}.{foreign_key.local_attribute} "
                        f"targets unknown {foreign_key.foreign_table}."
                        f"{foreign_key.foreign_attribute}"
                    )
        self._tables = tuple(tables)
        self._by_name = by_name

    @property
    def tables(self) -> Tuple[TableSchema, ...]:
        return self._tables

    def table_names(self) -> List[str]:
        return [table.name for table in self._tables]

    def has_table(self, name: str) -> bool:
        return name.casefold() in self._by_name

    def table(self, name: str) -> TableSchema:
        found = self._by_name.get(name.casefold())
        if found is None:
            raise UnknownTableOrColumn(f"unknown table '{name}'")
        return found

    def resolve(self, table: str, column: str) -> Tuple[str, str]:
        """
        Returns the stored spelling of ``table.column``.

        Raises
        ------
        UnknownTableOrColumn
            If either name does not resolve.
        """
        found = self.table(table)
        attribute = found.attribute(column)
        if attribute is None:
            raise UnknownTableOrColumn(f"unknown column '{table}.{column}'")
        return found.name, attribute.name

    def __len__(self) -> int:
        return len(self._tables)

    def __iter__(self) -> Iterator[TableSchema]:
        return iter(self._tables)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DatabaseSchema) and self._tables == other._tables

    def __repr__(self) -> str:
        return f"DatabaseSchema({list(self._tables)!r})"
