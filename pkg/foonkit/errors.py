"""Error hierarchy shared by the library, the CLI and the HTTP routers."""
from __future__ import annotations

from enum import Enum
from typing import Any, Optional, Sequence

from fastapi import HTTPException, status


class ErrorCode(str, Enum):
    """Stable error codes surfaced by the CLI and the HTTP API."""

    CYCLE = "CYCLE"
    UNREACHABLE_GOAL = "UNREACHABLE_GOAL"
    GOAL_NOT_IN_GRAPH = "GOAL_NOT_IN_GRAPH"
    GRAPH_FORMAT = "GRAPH_FORMAT"
    EMPTY_CORPUS = "EMPTY_CORPUS"
    CORPUS_FORMAT = "CORPUS_FORMAT"
    EMPTY_SAMPLE = "EMPTY_SAMPLE"
    INSUFFICIENT_DATA = "INSUFFICIENT_DATA"
    INVALID_SAMPLE = "INVALID_SAMPLE"
    DEGENERATE_VARIANCE = "DEGENERATE_VARIANCE"
    INVALID_ALPHA = "INVALID_ALPHA"
    INVALID_ARGUMENT = "INVALID_ARGUMENT"
    UNKNOWN_OPTION = "UNKNOWN_OPTION"
    SURVEY_FORMAT = "SURVEY_FORMAT"
    CONFIG = "CONFIG"


# Exit codes are part of the CLI contract.
EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class FoonkitError(Exception):
    """Base exception; carries a code, a process exit code and an HTTP status."""

    code: ErrorCode = ErrorCode.INVALID_ARGUMENT
    exit_code: int = EXIT_USAGE
    status_code: int = status.HTTP_400_BAD_REQUEST

    def __init__(self, message: str, *, code: Optional[ErrorCode] = None) -> None:
        super().__init__(message)
        if code is not None:
            self.code = code

    def to_detail(self) -> dict[str, Any]:
        return {"error": self.code.value, "message": str(self)}


class CycleError(FoonkitError):
    code = ErrorCode.CYCLE
    exit_code = EXIT_DOMAIN
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, message: str, *, pending: Sequence[int] = ()) -> None:
        super().__init__(message)
        self.pending = tuple(pending)


class UnreachableGoal(FoonkitError):
    code = ErrorCode.UNREACHABLE_GOAL
    exit_code = EXIT_DOMAIN
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class GoalNotInGraph(UnreachableGoal):
    code = ErrorCode.GOAL_NOT_IN_GRAPH
    status_code = status.HTTP_404_NOT_FOUND


class GraphFormatError(FoonkitError):
    code = ErrorCode.GRAPH_FORMAT

    def __init__(self, message: str, *, diagnostics: Sequence[Any] = ()) -> None:
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)

    def to_detail(self) -> dict[str, Any]:
        detail = super().to_detail()
        detail["diagnostics"] = [str(d) for d in self.diagnostics]
        return detail


class EmptyCorpus(FoonkitError):
    code = ErrorCode.EMPTY_CORPUS
    exit_code = EXIT_DOMAIN
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class CorpusFormatError(FoonkitError):
    code = ErrorCode.CORPUS_FORMAT

    def __init__(self, message: str, *, offset: Optional[int] = None) -> None:
        super().__init__(message)
        self.offset = offset


class EmptySample(FoonkitError):
    code = ErrorCode.EMPTY_SAMPLE
    exit_code = EXIT_DOMAIN
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class InsufficientData(FoonkitError):
    code = ErrorCode.INSUFFICIENT_DATA
    exit_code = EXIT_DOMAIN
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY


class InvalidSample(FoonkitError):
    code = ErrorCode.INVALID_SAMPLE


class DegenerateVariance(FoonkitError):
    """Both groups have zero spread; the test statistic is undefined."""

    code = ErrorCode.DEGENERATE_VARIANCE
    exit_code = EXIT_DOMAIN
    status_code = status.HTTP_422_UNPROCESSABLE_ENTITY

    def __init__(self, message: str, *, p_value: float) -> None:
        super().__init__(message)
        self.p_value = p_value


class InvalidAlpha(FoonkitError):
    code = ErrorCode.INVALID_ALPHA


class UnknownOption(FoonkitError):
    code = ErrorCode.UNKNOWN_OPTION

    def __init__(self, message: str, *, question: str, option: str) -> None:
        super().__init__(message)
        self.question = question
        self.option = option


class SurveyFormatError(FoonkitError):
    code = ErrorCode.SURVEY_FORMAT


class ConfigError(FoonkitError):
    code = ErrorCode.CONFIG


def to_http_exception(exc: FoonkitError) -> HTTPException:
    return HTTPException(status_code=exc.status_code, detail=exc.to_detail())


__all__ = [
    "ErrorCode",
    "EXIT_OK",
    "EXIT_DOMAIN",
    "EXIT_USAGE",
    "FoonkitError",
    "CycleError",
    "UnreachableGoal",
    "GoalNotInGraph",
    "GraphFormatError",
    "EmptyCorpus",
    "CorpusFormatError",
    "EmptySample",
    "InsufficientData",
    "InvalidSample",
    "DegenerateVariance",
    "InvalidAlpha",
    "UnknownOption",
    "SurveyFormatError",
    "ConfigError",
    "to_http_exception",
]
