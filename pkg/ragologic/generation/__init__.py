# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

from .balance import balance
from .classes import Dataset, Provenance, SemanticGroup, TextQuery, group_id_for
from .instantiate import (
    SKIP_EMPTY,
    SKIP_MULTIPLICITY,
    SKIP_NULL_ANSWER,
    GenerationReport,
    TemplateReport,
    estimate_total_variations,
    generate_dataset,
    instantiate,
)
from .io import (
    DATASET_FORMAT,
    dataset_from_dict,
    dataset_to_dict,
    export_dataset,
    export_qa_pairs,
    import_dataset,
)

__all__ = [
    "DATASET_FORMAT",
    "Dataset",
    "GenerationReport",
    "Provenance",
    "SKIP_EMPTY",
    "SKIP_MULTIPLICITY",
    "SKIP_NULL_ANSWER",
    "SemanticGroup",
    "TemplateReport",
    "TextQuery",
    "balance",
    "dataset_from_dict",
    "dataset_to_dict",
    "estimate_total_variations",
    "export_dataset",
    "export_qa_pairs",
    "generate_dataset",
    "group_id_for",
    "import_dataset",
    "instantiate",
]
