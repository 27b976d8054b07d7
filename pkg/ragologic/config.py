# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Run configuration.

A run is described by one INI file whose sections mirror the stages of a run::

    [database]
    locator = aurp.sqlite
    subsets = client; employee; project

    [generation]
    linguistic_attrs = short, long
    per_group = 3

    [backend]
    model = gpt-3.5-turbo
    temperature = 0.0

    [pipeline]
    document_spec = documents.json
    retriever = keyword

    [evaluation]
    judge = match
    gap_strategies = none, remove-gap, balance-gap

    [run]
    output_dir = out
    seed = 0

Values are layered: field defaults, then the file, then a bundled fixture, then
the environment, then explicit overrides from the command line. The backend
endpoint and model may come from ``RAGOLOGIC_ENDPOINT`` and ``RAGOLOGIC_MODEL``;
the API key is read from ``RAGOLOGIC_API_KEY`` only, never from a file or flag.
"""

import configparser
import logging
import os
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, NamedTuple, Optional, Tuple, Union

from beartype import beartype

from . import preconditions
from .backends import CompletionBackend, HttpChatBackend, RecordReplayBackend
from .errors import FormatError
from .evaluation import (
    GAP_STRATEGIES,
    INTERSECTION,
    MATCH_RULES,
    RETRIEVAL_STRATEGIES,
    EvalConfig,
)
from .judges import JUDGES, MATCH, JudgeConfig
from .retrieval import EXTRACTIVE_STUB, GENERATOR_KINDS, KEYWORD, RETRIEVERS
from .retrieval import GeneratorConfig
from .templates import LINGUISTIC_CRITERIA

__all__ = [
    "API_KEY_VARIABLE",
    "ENDPOINT_VARIABLE",
    "MODEL_VARIABLE",
    "RunConfig",
    "apply_fixture",
    "build_backend",
    "eval_config",
    "generator_config",
    "load_config",
]

_logger = logging.getLogger(__name__)

ENDPOINT_VARIABLE = "RAGOLOGIC_ENDPOINT"
API_KEY_VARIABLE = "RAGOLOGIC_API_KEY"
MODEL_VARIABLE = "RAGOLOGIC_MODEL"

PathLike = Union[str, Path]


class RunConfig(NamedTuple):
    fixture: Optional[str] = None
    database: str = ""
    subsets: Tuple[Tuple[str, ...], ...] = ()
    max_tables: int = 1
    sample_size: int = 32
    linguistic_attrs: Tuple[str, ...] = ("short", "long")
    num_generations: int = 3
    per_group: int = 3
    endpoint: Optional[str] = None
    model: Optional[str] = None
    temperature: float = 0.0
    max_in_flight: int = 4
    max_retries: int = 3
    cache: Optional[str] = None
    document_spec: Optional[str] = None
    corpus: Optional[str] = None
    retriever: str = KEYWORD
    generator: str = EXTRACTIVE_STUB
    k: int = 4
    budget: int = 512
    chunk_size: int = 128
    judge: str = MATCH
    threshold: float = 0.5
    gap_strategies: Tuple[str, ...] = GAP_STRATEGIES
    retrieval_strategies: Tuple[str, ...] = RETRIEVAL_STRATEGIES
    rule: str = INTERSECTION
    open_domain: bool = False
    output_dir: str = "ragologic-out"
    seed: int = 0
    n_jobs: int = 1

    def output(self, *parts: str) -> Path:
        """A path under the output directory."""
        return Path(self.output_dir).joinpath(*parts)


def _names(text: str) -> Tuple[str, ...]:
    return tuple(name.strip() for name in text.split(",") if name.strip())


def _subsets(text: str) -> Tuple[Tuple[str, ...], ...]:
    """
    >>> _subsets("client; company, people")
    (('client',), ('company', 'people'))
    """
    return tuple(_names(part) for part in text.split(";") if _names(part))


def _flag(text: str) -> bool:
    lowered = text.strip().casefold()
    if lowered in ("1", "yes", "true", "on"):
        return True
    if lowered in ("0", "no", "false", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _optional(text: str) -> Optional[str]:
    return text.strip() or None


_KEYS: Dict[Tuple[str, str], Tuple[str, Callable[[str], Any]]] = {
    ("database", "locator"): ("database", str.strip),
    ("database", "subsets"): ("subsets", _subsets),
    ("database", "max_tables"): ("max_tables", int),
    ("generation", "sample_size"): ("sample_size", int),
    ("generation", "linguistic_attrs"): ("linguistic_attrs", _names),
    ("generation", "num_generations"): ("num_generations", int),
    ("generation", "per_group"): ("per_group", int),
    ("backend", "endpoint"): ("endpoint", _optional),
    ("backend", "model"): ("model", _optional),
    ("backend", "temperature"): ("temperature", float),
    ("backend", "max_in_flight"): ("max_in_flight", int),
    ("backend", "max_retries"): ("max_retries", int),
    ("backend", "cache"): ("cache", _optional),
    ("pipeline", "document_spec"): ("document_spec", _optional),
    ("pipeline", "corpus"): ("corpus", _optional),
    ("pipeline", "retriever"): ("retriever", str.strip),
    ("pipeline", "generator"): ("generator", str.strip),
    ("pipeline", "k"): ("k", int),
    ("pipeline", "budget"): ("budget", int),
    ("pipeline", "chunk_size"): ("chunk_size", int),
    ("evaluation", "judge"): ("judge", str.strip),
    ("evaluation", "threshold"): ("threshold", float),
    ("evaluation", "gap_strategies"): ("gap_strategies", _names),
    ("evaluation", "retrieval_strategies"): ("retrieval_strategies", _names),
    ("evaluation", "rule"): ("rule", str.strip),
    ("evaluation", "open_domain"): ("open_domain", _flag),
    ("run", "output_dir"): ("output_dir", str.strip),
    ("run", "seed"): ("seed", int),
    ("run", "n_jobs"): ("n_jobs", int),
}

_CHOICES = {
    "linguistic_attrs": tuple(LINGUISTIC_CRITERIA),
    "retriever": RETRIEVERS,
    "generator": GENERATOR_KINDS,
    "judge": JUDGES,
    "gap_strategies": GAP_STRATEGIES,
    "retrieval_strategies": RETRIEVAL_STRATEGIES,
    "rule": MATCH_RULES,
}


def _read_file(path: str) -> Dict[str, Any]:
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, "r", encoding="utf-8") as config_io:
            parser.read_file(config_io)
    except configparser.Error as error:
        raise FormatError(path, str(error).splitlines()[0]) from error
    values: Dict[str, Any] = {}
    for section in parser.sections():
        for key, raw in parser.items(section):
            if (section, key) not in _KEYS:
                raise FormatError(path, f"[{section}] {key}: unknown setting")
            field, convert = _KEYS[(section, key)]
            try:
                values[field] = convert(raw)
            except ValueError as error:
                raise FormatError(path, f"[{section}] {key}: {error}") from error
    return values


def _check(config: RunConfig, origin: str) -> RunConfig:
    for field, choices in _CHOICES.items():
        value = getattr(config, field)
        for item in value if isinstance(value, tuple) else (value,):
            if item not in choices:
                raise FormatError(
                    origin, f"{field}: {item!r} is not one of {list(choices)}"
                )
    for field in ("k", "budget", "chunk_size", "per_group", "num_generations"):
        if getattr(config, field) < 1:
            raise FormatError(origin, f"{field} must be at least 1")
    if config.n_jobs == 0:
        raise FormatError(origin, "n_jobs must not be 0")
    if not preconditions.is_probability(config.threshold):
        raise FormatError(origin, "threshold must lie in [0, 1]")
    return config


@beartype
def apply_fixture(config: RunConfig, name: str) -> RunConfig:
    """
    Points ``config`` at a bundled fixture: its database, corpus spec, schema
    subsets, balance count and linguistic attributes.
    """
    from .datasets import load_fixture

    fixture = load_fixture(name)
    return config._replace(
        fixture=name,
        database=fixture.database,
        document_spec=str(fixture.document_spec),
        subsets=tuple(fixture.subsets),
        per_group=fixture.per_group,
        linguistic_attrs=tuple(sorted(fixture.text_templates, reverse=True)),
    )


@beartype
def load_config(
    path: Optional[PathLike] = None,
    fixture: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Builds the configuration of a run.

    Parameters
    ----------
    path : Optional[PathLike]
        An INI file; see the module documentation for its sections.
    fixture : Optional[str]
        ``"aurp"`` or ``"spider"``.
    overrides : Optional[Mapping[str, Any]]
        Field values that win over every other source; ``None`` values are ignored.
    environ : Optional[Mapping[str, str]]
        Defaults to ``os.environ``.

    Raises
    ------
    FormatError
        If the file is malformed, names an unknown setting or a value is out of
        range.
    """
    environ = os.environ if environ is None else environ
    config = RunConfig()
    origin = "<configuration>"
    if path is not None:
        origin = str(path)
        config = config._replace(**_read_file(origin))
    if fixture is not None:
        config = apply_fixture(config, fixture)
    if environ.get(ENDPOINT_VARIABLE):
        config = config._replace(endpoint=environ[ENDPOINT_VARIABLE])
    if environ.get(MODEL_VARIABLE):
        config = config._replace(model=environ[MODEL_VARIABLE])
    if overrides:
        unknown = sorted(set(overrides) - set(RunConfig._fields))
        if unknown:
            raise FormatError(origin, f"unknown setting {unknown[0]!r}")
        config = config._replace(
            **{key: value for key, value in overrides.items() if value is not None}
        )
    return _check(config, origin)


def generator_config(config: RunConfig) -> GeneratorConfig:
    return GeneratorConfig(
        kind=config.generator, temperature=config.temperature, budget=config.budget
    )


def eval_config(config: RunConfig) -> EvalConfig:
    return EvalConfig(
        retriever=config.retriever,
        k=config.k,
        budget=config.budget,
        chunk_size=config.chunk_size,
        judge=JudgeConfig(method=config.judge, threshold=config.threshold),
        gap_strategies=config.gap_strategies,
        retrieval_strategies=config.retrieval_strategies,
        seed=config.seed,
        rule=config.rule,
        n_jobs=config.n_jobs,
    )


@beartype
def build_backend(
    config: RunConfig, environ: Optional[Mapping[str, str]] = None
) -> Optional[CompletionBackend]:
    """
    The completion backend of a run.

    A configured endpoint gives an HTTP backend behind an on-disk cache, so a rerun
    replays earlier completions instead of calling the endpoint again. Without an
    endpoint a fixture run replays the fixture's transcripts; otherwise there is
    no backend and only the steps that need none can run.
    """
    environ = os.environ if environ is None else environ
    if config.endpoint:
        live = HttpChatBackend(
            config.endpoint,
            config.model or "gpt-3.5-turbo",
            api_key=environ.get(API_KEY_VARIABLE),
            temperature=config.temperature,
            max_retries=config.max_retries,
            max_in_flight=config.max_in_flight,
        )
        cache = config.cache or str(config.output("completions.json"))
        return RecordReplayBackend.load(cache, fallback=live)
    if config.fixture is not None:
        from .datasets import replay_backend

        return replay_backend(config.fixture)
    _logger.info("no completion backend configured")
    return None
