# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

import argparse
import datetime
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from .backends import CompletionBackend
from .config import (
    RunConfig,
    build_backend,
    eval_config,
    generator_config,
    load_config,
)
from .datasets import FIXTURES, load_fixture
from .errors import (
    VALIDATION_EXIT_CODE,
    BackendUnavailable,
    MissingInput,
    RagologicError,
)
from .evaluation import (
    GAP_STRATEGIES,
    RETRIEVAL_STRATEGIES,
    build_report,
    evaluate,
    load_report,
    load_results,
    mrc_check,
    render_report,
    save_report,
    save_results,
)
from .generation import (
    Dataset,
    Provenance,
    balance,
    export_dataset,
    generate_dataset,
    import_dataset,
)
from .judges import JUDGES, JudgeConfig
from .retrieval import (
    GENERATOR_KINDS,
    LLM_ONLY,
    RETRIEVERS,
    Corpus,
    attach_provenance,
    build_generator,
    load_corpus,
    render_corpus,
    save_corpus,
)
from .schema import open_database, schema_subsets
from .templates import (
    LINGUISTIC_CRITERIA,
    TextTemplate,
    generate_sql_template_batch,
    generate_text_template_batch,
    load_template_file,
    save_template_file,
    sql_criteria,
    sql_templates_from_mapping,
    text_criteria,
    text_templates_from_mapping,
)

_logger = logging.getLogger("ragologic")

SQL_TEMPLATES_FILE = "sql_templates.json"
TEXT_TEMPLATES_DIR = "text_templates"
DATASET_FILE = "dataset.json"
GENERATION_REPORT_FILE = "generation_report.json"
CORPUS_FILE = "corpus.json"
RESULTS_FILE = "results.json"
REPORT_FILE = "report.json"
REPORT_TEXT_FILE = "report.txt"
MRC_FILE = "mrc.json"


def _write_json(payload: Any, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    staging = path.with_suffix(path.suffix + ".tmp")
    with open(staging, "w", encoding="utf-8") as json_io:
        json.dump(payload, json_io, indent=2, ensure_ascii=False)
        json_io.write("\n")
    os.replace(staging, path)


def _timestamp(config: RunConfig) -> str:
    """
    ``SOURCE_DATE_EPOCH`` when set; hermetic runs without an endpoint are pinned to
    the epoch so their outputs are reproducible byte for byte.
    """
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        moment = datetime.datetime.fromtimestamp(int(epoch), datetime.timezone.utc)
    elif config.endpoint is None:
        moment = datetime.datetime.fromtimestamp(0, datetime.timezone.utc)
    else:
        moment = datetime.datetime.now(datetime.timezone.utc)
    return moment.isoformat(timespec="seconds")


def _shipped(config: RunConfig, attr: Optional[str] = None) -> Optional[Path]:
    if config.fixture is None:
        return None
    fixture = load_fixture(config.fixture)
    if attr is None:
        return fixture.sql_templates
    return fixture.text_templates.get(attr)


def _input(config: RunConfig, relative: str, prerequisite: str, **kw: Any) -> Path:
    """
    An input file of the output directory, falling back to the fixture's shipped
    copy.
    """
    produced = config.output(relative)
    if produced.is_file():
        return produced
    shipped = _shipped(config, **kw)
    if shipped is not None and shipped.is_file():
        return shipped
    raise MissingInput(f"{produced} does not exist; run '{prerequisite}' first")


def _existing(config: RunConfig, target: Path, **kw: Any) -> Dict[str, List[str]]:
    if target.is_file():
        return load_template_file(target)
    shipped = _shipped(config, **kw)
    if shipped is not None and shipped.is_file():
        _logger.info(f"starting from the generations shipped in {shipped}")
        return load_template_file(shipped)
    return {}


def _database(config: RunConfig) -> str:
    if not config.database:
        raise MissingInput(
            "no database configured; pass --fixture, --database or set [database] "
            "locator"
        )
    return config.database


def _backend(config: RunConfig, command: str) -> CompletionBackend:
    backend = build_backend(config)
    if backend is None:
        raise BackendUnavailable(
            f"'{command}' needs a completion backend; set RAGOLOGIC_ENDPOINT or pass "
            f"--fixture"
        )
    return backend


def _sql_templates(config: RunConfig) -> Dict[str, List[str]]:
    return load_template_file(_input(config, SQL_TEMPLATES_FILE, "gen-sql-templates"))


def _corpus(config: RunConfig) -> Corpus:
    if config.corpus:
        return load_corpus(config.corpus)
    if not config.document_spec:
        raise MissingInput(
            "no corpus configured; set [pipeline] corpus or document_spec"
        )
    with open_database(_database(config)) as db:
        corpus = render_corpus(db, config.document_spec)
    save_corpus(corpus, config.output(CORPUS_FILE))
    return corpus


def _dataset(config: RunConfig) -> Dataset:
    path = config.output(DATASET_FILE)
    if not path.is_file():
        raise MissingInput(f"{path} does not exist; run 'gen-data' first")
    return import_dataset(path)


def _gen_sql_templates(arguments: argparse.Namespace, config: RunConfig) -> None:
    backend = _backend(config, "gen-sql-templates")
    target = config.output(SQL_TEMPLATES_FILE)
    existing = _existing(config, target)
    with open_database(_database(config)) as db:
        subsets = list(config.subsets) or schema_subsets(db.schema(), config.max_tables)
        mapping = generate_sql_template_batch(
            subsets,
            sql_criteria(),
            backend,
            db,
            existing=existing,
            override=arguments.override,
            sample_size=config.sample_size,
            n_jobs=config.n_jobs,
        )
    save_template_file(mapping, target)
    total = sum(len(templates) for templates in mapping.values())
    print(f"{total} SQL templates for {len(mapping)} schema subsets in {target}")


def _gen_text_templates(arguments: argparse.Namespace, config: RunConfig) -> None:
    backend = _backend(config, "gen-text-templates")
    sql_templates = sql_templates_from_mapping(_sql_templates(config))
    for attr in config.linguistic_attrs:
        target = config.output(TEXT_TEMPLATES_DIR, f"{attr}.json")
        mapping = generate_text_template_batch(
            sql_templates,
            text_criteria(attr, config.num_generations),
            backend,
            existing=_existing(config, target, attr=attr),
            override=arguments.override,
            n_jobs=config.n_jobs,
        )
        save_template_file(mapping, target)
        total = sum(len(templates) for templates in mapping.values())
        print(f"{total} {attr} text templates in {target}")


def _gen_data(arguments: argparse.Namespace, config: RunConfig) -> None:
    mapping = _sql_templates(config)
    sql_templates = sql_templates_from_mapping(mapping)
    text_templates: Dict[str, List[TextTemplate]] = {
        tpl.text: [] for tpl in sql_templates
    }
    for attr in config.linguistic_attrs:
        path = _input(
            config,
            f"{TEXT_TEMPLATES_DIR}/{attr}.json",
            "gen-text-templates",
            attr=attr,
        )
        bound = text_templates_from_mapping(
            load_template_file(path), sql_templates, attr
        )
        for sql_text, templates in bound.items():
            text_templates[sql_text].extend(templates)
    backend = build_backend(config)
    provenance = Provenance(
        schema_key="; ".join(mapping),
        criteria_tags=tuple(config.linguistic_attrs),
        backend="" if backend is None else backend.identity(),
        generated_at=_timestamp(config),
    )
    with open_database(_database(config)) as db:
        dataset, report = generate_dataset(
            sql_templates, text_templates, db, provenance, config.n_jobs
        )
    unbalanced = dataset.counts_by_attribute()
    dataset = balance(dataset, config.per_group, backend)
    balanced = dataset.counts_by_attribute()
    export_dataset(dataset, config.output(DATASET_FILE))
    summary = report.as_dict()
    summary["groups"] = len(dataset)
    summary["queries"] = {"unbalanced": unbalanced, "balanced": balanced}
    _write_json(summary, config.output(GENERATION_REPORT_FILE))
    print(
        f"{len(dataset)} semantic groups from {report.combinations} combinations; "
        f"skipped {report.skipped()}"
    )
    for attr in sorted(balanced):
        print(f"{attr}: {unbalanced.get(attr, 0)} -> {balanced[attr]} text queries")


def _run_eval(arguments: argparse.Namespace, config: RunConfig) -> None:
    dataset = _dataset(config)
    corpus = _corpus(config)
    backend = build_backend(config)
    generator = build_generator(generator_config(config), backend)
    closed_book = None
    if config.open_domain:
        closed_book = build_generator(
            generator_config(config)._replace(kind=LLM_ONLY), backend
        )
    outcome = evaluate(
        dataset, corpus, generator, eval_config(config), backend, closed_book
    )
    save_results(outcome.records, config.output(RESULTS_FILE))
    save_report(outcome.report, config.output(REPORT_FILE))
    rendered = render_report(outcome.report)
    config.output(REPORT_TEXT_FILE).write_text(rendered + "\n", encoding="utf-8")
    print(rendered)


def _report(arguments: argparse.Namespace, config: RunConfig) -> None:
    if arguments.from_results:
        path = config.output(RESULTS_FILE)
        if not path.is_file():
            raise MissingInput(f"{path} does not exist; run 'run-eval' first")
        report = build_report(
            load_results(path),
            config.gap_strategies,
            config.retrieval_strategies,
            config.seed,
            config.rule,
        )
        save_report(report, config.output(REPORT_FILE))
    else:
        path = config.output(REPORT_FILE)
        if not path.is_file():
            raise MissingInput(f"{path} does not exist; run 'run-eval' first")
        report = load_report(path)
    rendered = render_report(report)
    config.output(REPORT_TEXT_FILE).write_text(rendered + "\n", encoding="utf-8")
    print(rendered)


def _mrc_check(arguments: argparse.Namespace, config: RunConfig) -> None:
    dataset = _dataset(config)
    corpus = _corpus(config)
    if all(group.gold_document_ids is None for group in dataset):
        dataset = attach_provenance(dataset, corpus)
    results_path = config.output(RESULTS_FILE)
    results = load_results(results_path) if results_path.is_file() else None
    backend = build_backend(config)
    report = mrc_check(
        dataset,
        corpus,
        build_generator(generator_config(config), backend),
        JudgeConfig(method=config.judge, threshold=config.threshold),
        backend,
        results,
        n_jobs=config.n_jobs,
    )
    payload = report._asdict()
    payload["failures"] = [failure._asdict() for failure in report.failures]
    _write_json(payload, config.output(MRC_FILE))
    print(
        f"reading accuracy {report.accuracy:.2%} ({report.correct}/{report.total}), "
        f"{report.skipped} queries without gold documents"
    )
    if report.gap_overlap is not None:
        print(f"{report.gap_overlap:.2%} of failures fall in Gap groups")


def _common_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument(
        "--database",
        help="database locator, a SQLite path or a SQLAlchemy URL",
        required=False,
        default=None,
    )
    parser.add_argument(
        "--output_dir",
        help="directory every command reads its inputs from and writes to",
        required=False,
        default=None,
    )
    parser.add_argument(
        "--n_jobs",
        help="worker threads for batched backend calls and query execution",
        type=int,
        required=False,
        default=None,
    )
    return parser


def _attr_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument(
        "--attr",
        help="linguistic attribute to work on; repeat for several",
        choices=sorted(LINGUISTIC_CRITERIA),
        action="append",
        required=False,
        default=None,
    )
    return parser


def _override_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument(
        "--override",
        help="regenerate entries already present instead of keeping them",
        action="store_true",
    )
    return parser


def _strategy_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument(
        "--strategy",
        help="gap strategy row of the report; repeat for several",
        choices=list(GAP_STRATEGIES),
        action="append",
        required=False,
        default=None,
    )
    parser.add_argument(
        "--retrieval_strategy",
        help="retrieval strategy column of the report; repeat for several",
        choices=list(RETRIEVAL_STRATEGIES),
        action="append",
        required=False,
        default=None,
    )
    parser.add_argument(
        "--seed",
        help="seed of the gap example subsampling",
        type=int,
        required=False,
        default=None,
    )
    return parser


def _answer_args(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser.add_argument(
        "--generator",
        help="answer generator",
        choices=list(GENERATOR_KINDS),
        required=False,
        default=None,
    )
    parser.add_argument(
        "--judge",
        help="judging method",
        choices=list(JUDGES),
        required=False,
        default=None,
    )
    parser.add_argument(
        "--corpus",
        help="corpus file to evaluate against instead of rendering the document spec",
        required=False,
        default=None,
    )
    return parser


def _parser() -> argparse.ArgumentParser:
    root_parser = argparse.ArgumentParser(
        prog="python -m ragologic",
        description="Generates question answering data from a relational database "
        "and runs the modular evaluation of a retrieval augmented generation system "
        "on it",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    root_parser.add_argument(
        "--verbose",
        help="log progress at INFO level",
        action="store_true",
    )
    root_parser.add_argument(
        "--config",
        help="INI run configuration",
        required=False,
        default=None,
    )
    root_parser.add_argument(
        "--fixture",
        help="run against a bundled fixture with replayed completions",
        choices=list(FIXTURES),
        required=False,
        default=None,
    )

    subparsers = root_parser.add_subparsers(
        required=True,
        dest="COMMAND",
        help="one step of data generation or evaluation",
    )
    sql_parser = subparsers.add_parser(
        "gen-sql-templates",
        help="Generates validated SQL templates per schema subset",
    )
    sql_parser.set_defaults(func=_gen_sql_templates)
    sql_parser.add_argument(
        "--max_tables",
        help="largest schema subset when subsets are not configured",
        type=int,
        required=False,
        default=None,
    )
    _override_args(_common_args(sql_parser))

    text_parser = subparsers.add_parser(
        "gen-text-templates",
        help="Generates text templates for every SQL template",
    )
    text_parser.set_defaults(func=_gen_text_templates)
    text_parser.add_argument(
        "--num_generations",
        help="text templates requested per SQL template",
        type=int,
        required=False,
        default=None,
    )
    _override_args(_attr_args(_common_args(text_parser)))

    data_parser = subparsers.add_parser(
        "gen-data",
        help="Instantiates and balances the question answering dataset",
    )
    data_parser.set_defaults(func=_gen_data)
    data_parser.add_argument(
        "--per_group",
        help="text queries per semantic group and linguistic attribute",
        type=int,
        required=False,
        default=None,
    )
    _attr_args(_common_args(data_parser))

    eval_parser = subparsers.add_parser(
        "run-eval",
        help="Answers, judges and reports every text query of the dataset",
    )
    eval_parser.set_defaults(func=_run_eval)
    eval_parser.add_argument(
        "--retriever",
        help="retrieval method",
        choices=list(RETRIEVERS),
        required=False,
        default=None,
    )
    eval_parser.add_argument(
        "--k",
        help="chunks retrieved per query",
        type=int,
        required=False,
        default=None,
    )
    eval_parser.add_argument(
        "--open_domain",
        help="remove groups a closed-book generator already answers",
        action="store_const",
        const=True,
        default=None,
    )
    _strategy_args(_answer_args(_common_args(eval_parser)))

    report_parser = subparsers.add_parser(
        "report",
        help="Renders the report of the last evaluation",
    )
    report_parser.set_defaults(func=_report)
    report_parser.add_argument(
        "--from_results",
        help="rebuild the report from the saved results with the given strategies",
        action="store_true",
    )
    _strategy_args(_common_args(report_parser))

    mrc_parser = subparsers.add_parser(
        "mrc-check",
        help="Answers every query from its gold documents to find missing facts",
    )
    mrc_parser.set_defaults(func=_mrc_check)
    _answer_args(_common_args(mrc_parser))
    return root_parser


_OVERRIDES = {
    "database": "database",
    "output_dir": "output_dir",
    "n_jobs": "n_jobs",
    "max_tables": "max_tables",
    "num_generations": "num_generations",
    "per_group": "per_group",
    "retriever": "retriever",
    "k": "k",
    "open_domain": "open_domain",
    "seed": "seed",
    "generator": "generator",
    "judge": "judge",
    "corpus": "corpus",
    "attr": "linguistic_attrs",
    "strategy": "gap_strategies",
    "retrieval_strategy": "retrieval_strategies",
}


def _overrides(arguments: argparse.Namespace) -> Dict[str, Any]:
    overrides = {}
    for flag, field in _OVERRIDES.items():
        value = getattr(arguments, flag, None)
        if isinstance(value, list):
            value = tuple(value)
        overrides[field] = value
    return overrides


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()

    args = parser.parse_args(argv)

    if args.verbose is True:
        logging.basicConfig(
            format="%(asctime)s:%(levelname)s:%(name)s, %(message)s", level=logging.INFO
        )

    try:
        config = load_config(args.config, args.fixture, _overrides(args))
        args.func(args, config)
    except RagologicError as error:
        _logger.error(f"{args.COMMAND} failed: {error}")
        print(f"error: {error}", file=sys.stderr)
        return error.exit_code
    except (ValueError, FileNotFoundError) as error:
        _logger.error(f"{args.COMMAND} failed: {error}")
        print(f"error: {error}", file=sys.stderr)
        return VALIDATION_EXIT_CODE
    return 0


if __name__ == "__main__":
    sys.exit(main())
