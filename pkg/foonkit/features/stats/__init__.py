from .report import (
    QuestionReport,
    StatsReport,
    build_report,
    compare_question,
    render_report_json,
    render_report_text,
    report_to_dict,
)
from .service import (
    EquivalenceReport,
    RatingSample,
    SummaryStats,
    TestReport,
    kish_effective_n,
    pooled_std,
    summarize,
    t_test,
    tost,
    two_tailed_p,
    weighted_mean,
    weighted_std,
    weighted_var,
)
from .survey import (
    SurveyAnswers,
    build_samples,
    load_ratings,
    load_respondents,
    proficiency_weight,
)

__all__ = [
    "QuestionReport",
    "StatsReport",
    "build_report",
    "compare_question",
    "render_report_json",
    "render_report_text",
    "report_to_dict",
    "EquivalenceReport",
    "RatingSample",
    "SummaryStats",
    "TestReport",
    "kish_effective_n",
    "pooled_std",
    "summarize",
    "t_test",
    "tost",
    "two_tailed_p",
    "weighted_mean",
    "weighted_std",
    "weighted_var",
    "SurveyAnswers",
    "build_samples",
    "load_ratings",
    "load_respondents",
    "proficiency_weight",
]
