# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import hashlib
import logging
import os
import sqlite3
import tempfile
from pathlib import Path
from typing import List, Optional, Union

from beartype import beartype
from sklearn.utils import Bunch

from ..backends import Exchange, RecordReplayBackend
from ..schema import open_database
from ..templates import (
    SqlTemplate,
    sql_criteria,
    sql_generation_prompt,
    text_criteria,
    text_generation_prompt,
)
from ..utils import JsonFields, load_json

__all__ = [
    "FIXTURES",
    "load_aurp",
    "load_spider",
    "load_fixture",
    "materialize_database",
    "replay_backend",
]

_logger = logging.getLogger(__name__)

FIXTURES = ("aurp", "spider")

_MODULE_PATH = Path(__file__).parent


def _cache_dir() -> Path:
    configured = os.environ.get("RAGOLOGIC_DATA")
    if configured:
        return Path(configured)
    return Path(tempfile.gettempdir()) / "ragologic"


@beartype
def materialize_database(
    dump: Union[str, Path], target: Optional[Union[str, Path]] = None
) -> Path:
    """
    Builds a SQLite file from a SQL dump and returns its path.

    Without a ``target`` the file is cached under ``$RAGOLOGIC_DATA`` (or the
    system temporary directory) with the dump's digest in its name, so an unchanged
    dump is built only once.
    """
    dump = Path(dump)
    script = dump.read_text(encoding="utf-8")
    if target is None:
        digest = hashlib.sha256(script.encode("utf-8")).hexdigest()[:12]
        target = _cache_dir() / f"{dump.stem}-{digest}.sqlite"
        if target.is_file():
            return target
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    staging = target.with_name(f"{target.name}.{os.getpid()}.tmp")
    if staging.exists():
        staging.unlink()
    connection = sqlite3.connect(str(staging))
    try:
        connection.executescript(script)
        connection.commit()
    finally:
        connection.close()
    os.replace(staging, target)
    _logger.info(f"built {target} from {dump}")
    return target


def _fixture(name: str, dump: str, subsets: List[tuple], per_group: int) -> Bunch:
    folder = _MODULE_PATH / name
    text_folder = folder / "text_templates"
    return Bunch(
        name=name,
        database=str(materialize_database(folder / dump)),
        dump=folder / dump,
        document_spec=folder / "documents.json",
        sql_templates=folder / "sql_templates.json",
        text_templates={
            path.stem: path for path in sorted(text_folder.glob("*.json"))
        },
        transcripts=folder / "transcripts.json",
        subsets=subsets,
        per_group=per_group,
    )


def load_aurp() -> Bunch:
    """
    Load the Aurp fixture

    Aurp is a small architecture and urban planning firm: three tables of clients,
    employees and projects, 49 rows in all. Its corpus renders one profile per row
    and leaves out a handful of facts on purpose, so five semantic groups have no
    supporting sentence; it also carries records-desk notes that crowd out the gold
    documents of verbose queries under keyword retrieval.

    Returns
    -------
    data : :class:`~sklearn.utils.Bunch`
        Dictionary-like object, with the following attributes.

        name : str
            ``"aurp"``
        database : str
            Path of the SQLite file built from ``dump``.
        dump : pathlib.Path
            The SQL script the database is built from.
        document_spec : pathlib.Path
            The corpus document spec.
        sql_templates : pathlib.Path
            Accepted SQL templates, keyed by schema subset.
        text_templates : dict
            Text template files keyed by linguistic attribute, ``"short"`` and
            ``"long"``.
        transcripts : pathlib.Path
            Backend replies the template files were generated from, see
            :func:`replay_backend`.
        subsets : list of tuple
            The schema subsets templates are generated for.
        per_group : int
            Text templates per SQL template after balancing.
    """
    return _fixture(
        "aurp", "aurp.sql", [("client",), ("employee",), ("project",)], 3
    )


def load_spider() -> Bunch:
    """
    Load the Spider ``company_employee`` fixture

    Nineteen companies, seven people and the employment table relating them. The
    employment table has a composite primary key and is left out of the reflected
    schema with a warning; templates reach it only through joins. Only short text
    templates ship with this fixture.

    Returns
    -------
    data : :class:`~sklearn.utils.Bunch`
        Same attributes as :func:`load_aurp`; ``text_templates`` holds ``"short"``
        only.
    """
    return _fixture(
        "spider",
        "company_employee.sql",
        [("company",), ("people",), ("company", "people")],
        10,
    )


@beartype
def load_fixture(name: str) -> Bunch:
    """
    Raises
    ------
    ValueError
        If ``name`` is not one of :data:`FIXTURES`.
    """
    loaders = {"aurp": load_aurp, "spider": load_spider}
    if name not in loaders:
        raise ValueError(f"unknown fixture '{name}', expected one of {FIXTURES}")
    return loaders[name]()


def _exchanges(fixture: Bunch) -> List[Exchange]:
    path = str(fixture.transcripts)
    raw = JsonFields(path, "transcripts", load_json(path))
    exchanges = []
    with open_database(fixture.database) as db:
        for index, entry in enumerate(raw.get("sql", list)):
            fields = JsonFields(path, f"sql[{index}]", entry)
            tables = tuple(fields.get("tables", list))
            prompt = sql_generation_prompt(db, tables, sql_criteria())
            exchanges.append(Exchange(prompt, fields.get("reply", str)))
    for index, entry in enumerate(raw.get("text", list)):
        fields = JsonFields(path, f"text[{index}]", entry)
        tpl = SqlTemplate.from_text(fields.get("sql_template", str))
        criteria = text_criteria(
            fields.get("linguistic_attr", str), fields.get("num_generations", int)
        )
        exchanges.append(
            Exchange(
                text_generation_prompt(tpl, criteria),
                fields.get("reply", str),
                sample=fields.get("sample", int),
            )
        )
    return exchanges


@beartype
def replay_backend(fixture: Union[str, Bunch]) -> RecordReplayBackend:
    """
    A deterministic backend that answers the template generation prompts of a
    fixture from its transcripts.

    Prompts are rendered from the fixture database with the default criteria, so
    ``gen-sql-templates`` and ``gen-text-templates`` reproduce the shipped template
    files exactly. Any other prompt raises
    :class:`~ragologic.errors.BackendUnavailable`.

    Raises
    ------
    FormatError
        If the transcripts file is malformed.
    """
    if isinstance(fixture, str):
        fixture = load_fixture(fixture)
    exchanges = _exchanges(fixture)
    _logger.info(f"replaying {len(exchanges)} recorded completions of {fixture.name}")
    return RecordReplayBackend.from_exchanges(exchanges)
