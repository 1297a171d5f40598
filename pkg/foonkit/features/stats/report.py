"""Per-question comparison of generated (foon) against reference (corpus) recipe ratings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

from foonkit.errors import DegenerateVariance, EmptySample, InsufficientData
from foonkit.logging import get_logger

from .service import (
    EffectiveN,
    EquivalenceReport,
    RatingSample,
    SummaryStats,
    TestMethod,
    TestReport,
    summarize,
    t_test,
    tost,
)

logger = get_logger()

HEADER = ("Question", "p-value", "Equivalence bounds", "90% TOST CI")
WIDE_HEADER = (
    *HEADER,
    "Verdict",
    "Equivalent",
    "foon mean",
    "foon std",
    "foon n",
    "corpus mean",
    "corpus std",
    "corpus n",
)

TEST_NAMES = {
    "welch": "Welch's t-test (unequal variances)",
    "student": "Student's t-test (pooled variance)",
}


@dataclass(frozen=True)
class QuestionReport:
    question_id: str
    foon: Optional[SummaryStats] = None
    corpus: Optional[SummaryStats] = None
    test: Optional[TestReport] = None
    equivalence: Optional[EquivalenceReport] = None
    p_value: Optional[float] = None
    note: str = ""

    @property
    def verdict(self) -> str:
        if self.test is not None:
            return self.test.verdict
        return self.note or "n/a"


@dataclass(frozen=True)
class StatsReport:
    alpha: float
    cohen_d: float
    method: TestMethod
    effective_n: EffectiveN
    rows: Tuple[QuestionReport, ...] = field(default_factory=tuple)


def _safe_summary(sample: Optional[RatingSample], effective_n: EffectiveN) -> Optional[SummaryStats]:
    if sample is None:
        return None
    try:
        return summarize(sample, effective_n)
    except (EmptySample, InsufficientData):
        return None


def compare_question(
    question_id: str,
    samples: Mapping[str, RatingSample],
    *,
    alpha: float = 0.05,
    cohen_d: float = 0.3,
    method: TestMethod = "welch",
    effective_n: EffectiveN = "count",
) -> QuestionReport:
    foon = _safe_summary(samples.get("foon"), effective_n)
    corpus = _safe_summary(samples.get("corpus"), effective_n)
    if foon is None or corpus is None:
        logger.warning("[STATS] %s: fewer than 2 ratings in a group, not tested", question_id)
        return QuestionReport(question_id, foon, corpus, note="insufficient data")
    try:
        test = t_test(foon, corpus, alpha, method=method)
        equivalence = tost(foon, corpus, cohen_d, alpha, method=method)
    except DegenerateVariance as exc:
        logger.warning("[STATS] %s: %s", question_id, exc)
        return QuestionReport(question_id, foon, corpus, p_value=exc.p_value, note="degenerate variance")
    except InsufficientData:
        return QuestionReport(question_id, foon, corpus, note="insufficient data")
    return QuestionReport(question_id, foon, corpus, test, equivalence, test.p_value)


def build_report(
    samples: Mapping[str, Mapping[str, RatingSample]],
    *,
    alpha: float = 0.05,
    cohen_d: float = 0.3,
    method: TestMethod = "welch",
    effective_n: EffectiveN = "count",
) -> StatsReport:
    rows = tuple(
        compare_question(
            question_id,
            by_source,
            alpha=alpha,
            cohen_d=cohen_d,
            method=method,
            effective_n=effective_n,
        )
        for question_id, by_source in samples.items()
    )
    logger.info("[STATS] questions=%s alpha=%s d=%s test=%s", len(rows), alpha, cohen_d, method)
    return StatsReport(alpha, cohen_d, method, effective_n, rows)


def _interval(pair: Optional[Tuple[float, float]]) -> str:
    if pair is None:
        return ""
    return f"[{pair[0]:.2f}, {pair[1]:.2f}]"


def _number(value: Optional[float], digits: int) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def _count(value: Optional[float]) -> str:
    if value is None:
        return ""
    return str(int(value)) if float(value).is_integer() else f"{value:.2f}"


def footer_lines(report: StatsReport, *, notes: bool = True) -> List[str]:
    """Comment lines that name the test and, unless asked not to, the rows that were not tested."""
    lines = [
        f"# {TEST_NAMES[report.method]}, alpha={report.alpha:g}, "
        f"equivalence margin d={report.cohen_d:g}, effective n={report.effective_n}"
    ]
    if notes:
        lines.extend(f"# {row.question_id}: {row.note}" for row in report.rows if row.note)
    return lines


def render_report_text(report: StatsReport, *, wide: bool = False) -> str:
    """Tab-separated table plus ``#`` footer lines.

    The narrow form has one row per question with the p-value and the
    equivalence columns; ``wide`` adds the verdict and per-source summaries.
    """
    lines = ["\t".join(WIDE_HEADER if wide else HEADER)]
    for row in report.rows:
        eq = row.equivalence
        cells = [
            row.question_id,
            _number(row.p_value, 4),
            _interval(eq.bounds if eq else None),
            _interval(eq.ci90 if eq else None),
        ]
        if wide:
            cells.extend(
                [
                    row.verdict,
                    "" if eq is None else ("yes" if eq.equivalent else "no"),
                    _number(row.foon.mean if row.foon else None, 2),
                    _number(row.foon.std if row.foon else None, 2),
                    _count(row.foon.n if row.foon else None),
                    _number(row.corpus.mean if row.corpus else None, 2),
                    _number(row.corpus.std if row.corpus else None, 2),
                    _count(row.corpus.n if row.corpus else None),
                ]
            )
        lines.append("\t".join(cells))
    lines.extend(footer_lines(report, notes=not wide))
    return "\n".join(lines) + "\n"


def _summary_dict(summary: Optional[SummaryStats]) -> Optional[Dict[str, float]]:
    if summary is None:
        return None
    return {"mean": summary.mean, "std": summary.std, "n": summary.n}


def report_to_dict(report: StatsReport) -> Dict[str, Any]:
    rows: List[Dict[str, Any]] = []
    for row in report.rows:
        eq = row.equivalence
        rows.append(
            {
                "question": row.question_id,
                "p_value": row.p_value,
                "t": row.test.t if row.test else None,
                "df": row.test.df if row.test else None,
                "reject": row.test.reject if row.test else None,
                "verdict": row.verdict,
                "equivalence_bounds": list(eq.bounds) if eq else None,
                "tost_ci": list(eq.ci90) if eq else None,
                "equivalent": eq.equivalent if eq else None,
                "foon": _summary_dict(row.foon),
                "corpus": _summary_dict(row.corpus),
                "note": row.note or None,
            }
        )
    return {
        "alpha": report.alpha,
        "cohen_d": report.cohen_d,
        "test": report.method,
        "test_name": TEST_NAMES[report.method],
        "effective_n": report.effective_n,
        "questions": rows,
    }


def render_report_json(report: StatsReport, *, pretty: bool = False) -> str:
    return json.dumps(report_to_dict(report), indent=2 if pretty else None) + "\n"


__all__ = [
    "HEADER",
    "WIDE_HEADER",
    "TEST_NAMES",
    "footer_lines",
    "QuestionReport",
    "StatsReport",
    "compare_question",
    "build_report",
    "render_report_text",
    "report_to_dict",
    "render_report_json",
]
