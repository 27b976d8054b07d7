# Copyright (c) ragologic contributors.
# Licensed under the MIT License.

"""
Exceptions raised by ragologic.

Every error carries the process exit code the command line maps it to:
``1`` for validation failures, ``2`` for completion backend failures and ``3`` for
malformed files. Errors that describe bad values also derive from
:class:`ValueError`, and file errors from :class:`IOError`, so callers that only care
about the builtin family can keep catching those.
"""

__all__ = [
    "RagologicError",
    "ConnectionFailed",
    "UnsupportedSchemaFeature",
    "UnknownTableOrColumn",
    "SqlExecutionError",
    "NonSelectStatement",
    "MalformedPlaceholder",
    "BackendUnavailable",
    "AllCandidatesRejected",
    "InsufficientValidCandidates",
    "FormatError",
    "EmptyCorpus",
    "FirstChunkTooLarge",
    "JudgeParseFailure",
    "NoStatementsExtracted",
    "ComparisonParseFailure",
    "UndefinedPrecision",
    "UndefinedRecall",
    "UnjudgedRecord",
    "EmptyTagList",
    "AllGroupsGap",
    "MisalignedInputs",
    "InsufficientAttributes",
    "MissingInput",
]

VALIDATION_EXIT_CODE = 1
BACKEND_EXIT_CODE = 2
FORMAT_EXIT_CODE = 3


class RagologicError(Exception):
    exit_code = VALIDATION_EXIT_CODE


class ConnectionFailed(RagologicError, IOError):
    pass


class UnsupportedSchemaFeature(RagologicError, ValueError):
    pass


class UnknownTableOrColumn(RagologicError, ValueError):
    pass


class SqlExecutionError(RagologicError, RuntimeError):
    pass


class NonSelectStatement(RagologicError, ValueError):
    pass


class MalformedPlaceholder(RagologicError, ValueError):
    def __init__(self, expression: str, position: int):
        super().__init__(
            f"malformed placeholder '{expression}' at offset {position}; expected "
            f"'[Table.Column]'"
        )
        self.expression = expression
        self.position = position


class BackendUnavailable(RagologicError, RuntimeError):
    exit_code = BACKEND_EXIT_CODE


class AllCandidatesRejected(RagologicError, ValueError):
    pass


class InsufficientValidCandidates(RagologicError, ValueError):
    pass


class FormatError(RagologicError, IOError):
    exit_code = FORMAT_EXIT_CODE

    def __init__(self, path: str, detail: str):
        super().__init__(f"{path}: {detail}")
        self.path = path
        self.detail = detail


class EmptyCorpus(RagologicError, ValueError):
    pass


class FirstChunkTooLarge(RagologicError, ValueError):
    pass


class JudgeParseFailure(RagologicError, ValueError):
    exit_code = BACKEND_EXIT_CODE


class NoStatementsExtracted(RagologicError, ValueError):
    exit_code = BACKEND_EXIT_CODE


class ComparisonParseFailure(RagologicError, ValueError):
    exit_code = BACKEND_EXIT_CODE


class UndefinedPrecision(RagologicError, ZeroDivisionError):
    pass


class UndefinedRecall(RagologicError, ZeroDivisionError):
    pass


class UnjudgedRecord(RagologicError, ValueError):
    pass


class EmptyTagList(RagologicError, ValueError):
    pass


class AllGroupsGap(RagologicError, ZeroDivisionError):
    pass


class MisalignedInputs(RagologicError, ValueError):
    pass


class InsufficientAttributes(RagologicError, ValueError):
    pass


class MissingInput(RagologicError, FileNotFoundError):
    pass
