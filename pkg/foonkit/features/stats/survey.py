"""Survey CSV loading and respondent weighting.

Ratings CSV columns: ``respondent_id, question_id, recipe_source, rating``;
``recipe_source`` is ``foon`` or ``corpus`` and an empty rating marks a
skipped question. Respondents CSV columns: ``respondent_id, q1, q2, q3``.
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Union

import pandas as pd

from foonkit.errors import SurveyFormatError, UnknownOption
from foonkit.logging import get_logger
from foonkit.settings import WeightScheme, get_scheme

from .service import RatingSample

logger = get_logger()

SOURCES = ("foon", "corpus")
RATING_COLUMNS = ("respondent_id", "question_id", "recipe_source", "rating")
RESPONDENT_COLUMNS = ("respondent_id", "q1", "q2", "q3")

CsvSource = Union[str, Path, io.StringIO]


@dataclass(frozen=True, slots=True)
class SurveyAnswers:
    respondent_id: str
    proficiency: str
    recipe_source: Optional[str] = None
    familiarity: Optional[str] = None


def _option_key(text: str) -> str:
    return " ".join(str(text).split()).casefold()


def _lookup(options: Mapping[str, float], answer: str, question: str) -> float:
    wanted = _option_key(answer)
    for option, value in options.items():
        if _option_key(option) == wanted:
            return value
    raise UnknownOption(f"{question}: unknown answer {answer!r}", question=question, option=answer)


def proficiency_weight(answers: SurveyAnswers, scheme: Optional[WeightScheme] = None) -> float:
    scheme = scheme or get_scheme().weights
    weight = _lookup(scheme.proficiency, answers.proficiency, "Q1")
    if answers.recipe_source:
        _lookup({option: 0.0 for option in scheme.recipe_sources}, answers.recipe_source, "Q2")
    if answers.familiarity:
        weight += _lookup(scheme.familiarity_bonus, answers.familiarity, "Q3")
    return weight


def _read_csv(source: CsvSource, required: tuple[str, ...], what: str) -> pd.DataFrame:
    try:
        frame = pd.read_csv(source, dtype=str, keep_default_na=False, skipinitialspace=True)
    except (OSError, ValueError, pd.errors.ParserError) as exc:
        raise SurveyFormatError(f"cannot read {what} CSV: {exc}") from exc
    frame.columns = [str(column).strip().lower() for column in frame.columns]
    missing = [column for column in required if column not in frame.columns]
    if missing:
        raise SurveyFormatError(f"{what} CSV is missing column(s): {', '.join(missing)}")
    return frame


def load_ratings(source: CsvSource) -> pd.DataFrame:
    frame = _read_csv(source, RATING_COLUMNS, "ratings")
    for column in ("respondent_id", "question_id", "recipe_source", "rating"):
        frame[column] = frame[column].str.strip()
    frame["recipe_source"] = frame["recipe_source"].str.lower()
    bad_sources = sorted(set(frame["recipe_source"]) - set(SOURCES))
    if bad_sources:
        raise SurveyFormatError(f"unknown recipe_source value(s): {', '.join(bad_sources)}")
    if (frame["question_id"] == "").any() or (frame["respondent_id"] == "").any():
        raise SurveyFormatError("ratings CSV has rows without respondent_id or question_id")

    skipped = frame["rating"] == ""
    if skipped.any():
        logger.info("[SURVEY] %s skipped answer(s) excluded", int(skipped.sum()))
    frame = frame.loc[~skipped].copy()
    frame["rating"] = pd.to_numeric(frame["rating"], errors="coerce")
    if frame["rating"].isna().any():
        raise SurveyFormatError("ratings CSV has non-numeric rating values")
    return frame.reset_index(drop=True)


def load_respondents(source: CsvSource) -> Dict[str, SurveyAnswers]:
    frame = _read_csv(source, RESPONDENT_COLUMNS, "respondents")
    respondents: Dict[str, SurveyAnswers] = {}
    for row in frame.itertuples(index=False):
        respondent_id = str(row.respondent_id).strip()
        if not respondent_id:
            raise SurveyFormatError("respondents CSV has a row without respondent_id")
        if respondent_id in respondents:
            raise SurveyFormatError(f"respondent {respondent_id!r} listed twice")
        respondents[respondent_id] = SurveyAnswers(
            respondent_id,
            str(row.q1).strip(),
            str(row.q2).strip() or None,
            str(row.q3).strip() or None,
        )
    return respondents


def natural_key(question_id: str) -> List[object]:
    return [int(part) if part.isdigit() else part.lower() for part in re.split(r"(\d+)", question_id)]


def build_samples(
    ratings: pd.DataFrame,
    respondents: Mapping[str, SurveyAnswers],
    scheme: Optional[WeightScheme] = None,
) -> Dict[str, Dict[str, RatingSample]]:
    """Per question, one weighted sample per recipe source."""
    scheme = scheme or get_scheme().weights
    weights: Dict[str, float] = {}
    for respondent_id in ratings["respondent_id"].unique():
        if respondent_id not in respondents:
            raise SurveyFormatError(f"respondent {respondent_id!r} has ratings but no survey answers")
        weights[respondent_id] = proficiency_weight(respondents[respondent_id], scheme)

    samples: Dict[str, Dict[str, RatingSample]] = {}
    for question_id in sorted(ratings["question_id"].unique(), key=natural_key):
        by_source: Dict[str, RatingSample] = {}
        question = ratings.loc[ratings["question_id"] == question_id]
        for source in SOURCES:
            rows = question.loc[question["recipe_source"] == source]
            by_source[source] = RatingSample(
                question_id,
                tuple(rows["rating"].astype(float)),
                tuple(weights[r] for r in rows["respondent_id"]),
            )
        samples[question_id] = by_source
    return samples


__all__ = [
    "SOURCES",
    "SurveyAnswers",
    "proficiency_weight",
    "load_ratings",
    "load_respondents",
    "natural_key",
    "build_samples",
]
