# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Read-only relational database access: schema reflection, distinct value sampling
and ground truth answer execution.
"""

import logging
import os
import sqlite3
import warnings
from typing import Any, List, Optional

import sqlalchemy
import sqlglot
from beartype import beartype
from sqlalchemy import event
from sqlalchemy.engine import Engine
from sqlglot import exp
from sqlglot.errors import ParseError

from ..errors import (
    ConnectionFailed,
    NonSelectStatement,
    SqlExecutionError,
    UnknownTableOrColumn,
    UnsupportedSchemaFeature,
)
from .answers import Answer, make_answer
from .classes import Attribute, DatabaseSchema, ForeignKey, TableSchema

__all__ = [
    "DatabaseHandle",
    "open_database",
    "load_schema",
    "distinct_values",
    "execute_answer",
]

_logger = logging.getLogger(__name__)


def _is_url(locator: str) -> bool:
    return "://" in locator


def _sqlite_engine(path: str, read_only: bool) -> Engine:
    if not os.path.isfile(path):
        raise ConnectionFailed(f"no database file at '{path}'")
    absolute = os.path.abspath(path)
    mode = "ro" if read_only else "rw"

    def _connect() -> sqlite3.Connection:
        connection = sqlite3.connect(
            f"file:{absolute}?mode={mode}", uri=True, check_same_thread=False
        )
        if read_only:
            connection.execute("PRAGMA query_only = ON")
        return connection

    return sqlalchemy.create_engine("sqlite://", creator=_connect)


def _url_engine(locator: str, read_only: bool) -> Engine:
    try:
        engine = sqlalchemy.create_engine(locator)
    except (sqlalchemy.exc.ArgumentError, ImportError) as error:
        raise ConnectionFailed(f"cannot open '{locator}': {error}") from error
    if read_only:
        if engine.dialect.name == "sqlite":

            @event.listens_for(engine, "connect")
            def _query_only(dbapi_connection: Any, _: Any) -> None:
                dbapi_connection.execute("PRAGMA query_only = ON")

        else:

            @event.listens_for(engine, "begin")
            def _read_only_transaction(connection: Any) -> None:
                connection.exec_driver_sql("SET TRANSACTION READ ONLY")

    return engine


class DatabaseHandle:
    """
    An open connection descriptor.

    Handles are cheap to open and must not be shared across threads; workers open
    their own handle from :attr:`locator`. The reflected schema is cached on the
    handle the first time it is needed.

    Parameters
    ----------
    locator : str
        A filesystem path to a SQLite file, or a SQLAlchemy database URL.
    engine : sqlalchemy.engine.Engine
        The engine built for ``locator``.
    read_only : bool
        Whether writes are refused at the connection layer.
    """

    @beartype
    def __init__(self, locator: str, engine: Engine, read_only: bool):
        self._locator = locator
        self._engine = engine
        self._read_only = read_only
        self._schema: Optional[DatabaseSchema] = None

    @property
    def locator(self) -> str:
        return self._locator

    @property
    def read_only(self) -> bool:
        return self._read_only

    @property
    def engine(self) -> Engine:
        return self._engine

    def schema(self) -> DatabaseSchema:
        if self._schema is None:
            self._schema = _reflect(self._engine)
        return self._schema

    def quote(self, identifier: str) -> str:
        return self._engine.dialect.identifier_preparer.quote(identifier)

    def close(self) -> None:
        self._engine.dispose()

    def __enter__(self) -> "DatabaseHandle":
        return self

    def __exit__(self, *exc_info: Any) -> None:
        self.close()

    def __repr__(self) -> str:
        return f"DatabaseHandle({self._locator!r}, read_only={self._read_only})"


@beartype
def open_database(locator: str, read_only: bool = True) -> DatabaseHandle:
    """
    Opens a database by locator.

    A plain path is opened as a SQLite file through a ``mode=ro`` URI connection with
    ``PRAGMA query_only`` set; anything containing ``://`` is handed to
    :func:`sqlalchemy.create_engine`. Read-only server connections start every
    transaction with ``SET TRANSACTION READ ONLY``.

    Raises
    ------
    ConnectionFailed
        If the file does not exist or the server cannot be reached.
    """
    if _is_url(locator):
        engine = _url_engine(locator, read_only)
    else:
        engine = _sqlite_engine(locator, read_only)
    try:
        with engine.connect():
            pass
    except sqlalchemy.exc.DBAPIError as error:
        engine.dispose()
        raise ConnectionFailed(f"cannot connect to '{locator}': {error}") from error
    _logger.info(f"opened {locator} (read_only={read_only})")
    return DatabaseHandle(locator, engine, read_only)


def _value_kind(column_type: Any) -> str:
    if isinstance(column_type, (sqlalchemy.Date, sqlalchemy.DateTime)):
        return "date"
    if isinstance(column_type, sqlalchemy.Integer):
        return "integer"
    if isinstance(column_type, (sqlalchemy.Float, sqlalchemy.Numeric)):
        return "real"
    return "text"


def _reflect_table(inspector: Any, name: str) -> TableSchema:
    columns = inspector.get_columns(name)
    primary_key = inspector.get_pk_constraint(name).get("constrained_columns") or []
    if len(primary_key) != 1:
        kind = "composite" if len(primary_key) > 1 else "missing"
        raise UnsupportedSchemaFeature(
            f"Table '{name}' skipped: {kind} primary key {primary_key}"
        )
    foreign_keys = []
    for foreign_key in inspector.get_foreign_keys(name):
        local = foreign_key.get("constrained_columns") or []
        remote = foreign_key.get("referred_columns") or []
        if len(local) != 1 or len(remote) != 1:
            raise UnsupportedSchemaFeature(
                f"Table '{name}' skipped: composite foreign key {local} -> "
                f"{foreign_key.get('referred_table')}{remote}"
            )
        foreign_keys.append(
            ForeignKey(local[0], foreign_key["referred_table"], remote[0])
        )
    attributes = tuple(
        Attribute(column["name"], _value_kind(column["type"])) for column in columns
    )
    return TableSchema(name, attributes, primary_key[0], tuple(foreign_keys))


def _reflect(engine: Engine) -> DatabaseSchema:
    inspector = sqlalchemy.inspect(engine)
    tables = []
    for name in sorted(inspector.get_table_names()):
        try:
            tables.append(_reflect_table(inspector, name))
        except UnsupportedSchemaFeature as error:
            _logger.warning(str(error))
            warnings.warn(str(error))
    kept = {table.name.casefold() for table in tables}
    pruned = []
    for table in tables:
        foreign_keys = []
        for foreign_key in table.foreign_keys:
            if foreign_key.foreign_table.casefold() in kept:
                foreign_keys.append(foreign_key)
            else:
                message = (
                    f"Foreign key {table.name}.{foreign_key.local_attribute} dropped: "
                    f"target table '{foreign_key.foreign_table}' was skipped"
                )
                _logger.warning(message)
                warnings.warn(message)
        pruned.append(table._replace(foreign_keys=tuple(foreign_keys)))
    return DatabaseSchema(pruned)


@beartype
def load_schema(connection: str) -> DatabaseSchema:
    """
    Introspects the database at ``connection`` into a :class:`DatabaseSchema`.

    Tables are reported sorted by name. Tables that cannot be modeled, such as those
    with a composite primary key, are skipped with a warning; foreign keys into a
    skipped table are dropped with a warning too.

    Raises
    ------
    ConnectionFailed
        If the locator does not resolve to a reachable database.
    """
    with open_database(connection) as handle:
        return handle.schema()


@beartype
def distinct_values(db: DatabaseHandle, table: str, column: str) -> List[Any]:
    """
    The distinct, non-NULL values stored in ``table.column``.

    Values are sorted lexicographically on their string form, so downstream
    Cartesian products enumerate in a reproducible order.

    Raises
    ------
    UnknownTableOrColumn
        If the column is not part of the reflected schema.
    """
    table_name, column_name = db.schema().resolve(table, column)
    quoted_column = db.quote(column_name)
    statement = sqlalchemy.text(
        f"SELECT DISTINCT {quoted_column} FROM {db.quote(table_name)} "
        f"WHERE {quoted_column} IS NOT NULL"
    )
    try:
        with db.engine.connect() as connection:
            values = [row[0] for row in connection.execute(statement)]
    except sqlalchemy.exc.DBAPIError as error:
        raise UnknownTableOrColumn(
            f"cannot read '{table}.{column}': {error}"
        ) from error
    return sorted(values, key=str)


def _check_select(sql: str) -> None:
    try:
        statements = [
            statement for statement in sqlglot.parse(sql) if statement is not None
        ]
    except ParseError as error:
        raise SqlExecutionError(f"cannot parse '{sql}': {error}") from error
    if len(statements) != 1 or not isinstance(statements[0], exp.Select):
        raise NonSelectStatement(f"only a single SELECT may be executed: '{sql}'")


@beartype
def execute_answer(db: DatabaseHandle, sql: str) -> Answer:
    """
    Executes an instantiated SELECT and returns its canonical :class:`Answer`.

    Raises
    ------
    ValueError
        If ``sql`` still contains a ``[Table.Column]`` placeholder.
    NonSelectStatement
        If ``sql`` is anything other than one SELECT statement.
    SqlExecutionError
        If the database rejects the statement.
    """
    # templates imports schema at module level
    from ..templates.placeholders import has_placeholders

    if has_placeholders(sql):
        raise ValueError(f"unresolved placeholder in '{sql}'")
    _check_select(sql)
    try:
        with db.engine.connect() as connection:
            rows = [tuple(row) for row in connection.exec_driver_sql(sql)]
    except sqlalchemy.exc.DBAPIError as error:
        raise SqlExecutionError(f"'{sql}' failed: {error.orig}") from error
    return make_answer(rows)
