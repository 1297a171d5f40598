from __future__ import annotations

import logging
from pathlib import Path

import pytest

from foonkit.errors import (
    EXIT_DOMAIN,
    EXIT_USAGE,
    ConfigError,
    CycleError,
    GoalNotInGraph,
    GraphFormatError,
    UnreachableGoal,
    to_http_exception,
)
from foonkit.logging import TruncateLongArgsFilter
from foonkit.settings import Scheme, Settings, load_scheme

pytestmark = pytest.mark.unit

CONFIG = Path(__file__).resolve().parents[2] / "config" / "foonkit.yaml"


class TestScheme:
    def test_shipped_config_matches_defaults(self) -> None:
        assert load_scheme(CONFIG) == Scheme()

    def test_partial_config_keeps_defaults(self, tmp_path) -> None:
        path = tmp_path / "scheme.yaml"
        path.write_text("generation:\n  utensil_verbs: [Fold, ' BEAT ']\n", encoding="utf-8")
        scheme = load_scheme(path)
        assert scheme.generation.utensil_verbs == ["fold", "beat"]
        assert scheme.generation.source_target_verbs == Scheme().generation.source_target_verbs
        assert scheme.weights == Scheme().weights

    def test_json_is_accepted(self, tmp_path) -> None:
        path = tmp_path / "scheme.json"
        path.write_text('{"weights": {"proficiency": {"cook": 2.0}}}', encoding="utf-8")
        assert load_scheme(path).weights.proficiency == {"cook": 2.0}

    @pytest.mark.parametrize(
        "text",
        [
            "weights:\n  proficiency: {cook: -1}\n",
            "weights:\n  proficiency: {}\n",
            "generation: [unclosed\n",
        ],
    )
    def test_invalid_config(self, tmp_path, text) -> None:
        path = tmp_path / "scheme.yaml"
        path.write_text(text, encoding="utf-8")
        with pytest.raises(ConfigError):
            load_scheme(path)

    def test_missing_config(self, tmp_path) -> None:
        with pytest.raises(ConfigError):
            load_scheme(tmp_path / "absent.yaml")


class TestSettings:
    def test_environment_prefix(self, monkeypatch) -> None:
        monkeypatch.setenv("FOONKIT_ALPHA", "0.1")
        monkeypatch.setenv("FOONKIT_T_TEST", "student")
        settings = Settings()
        assert settings.alpha == 0.1
        assert settings.t_test == "student"

    def test_defaults(self, monkeypatch) -> None:
        for name in ("FOONKIT_ALPHA", "FOONKIT_COHEN_D", "FOONKIT_MATCH_TOP_K"):
            monkeypatch.delenv(name, raising=False)
        settings = Settings(_env_file=None)
        assert (settings.alpha, settings.cohen_d, settings.match_top_k) == (0.05, 0.3, 5)


class TestTruncateFilter:
    def _record(self, msg, *args) -> logging.LogRecord:
        return logging.LogRecord("foonkit", logging.INFO, __file__, 1, msg, args, None)

    def test_long_arguments_are_cut(self) -> None:
        record = self._record("graph %s", "x" * 1000)
        assert TruncateLongArgsFilter().filter(record)
        assert record.args[0].endswith("...(+760 chars)")
        assert len(record.getMessage()) < 300

    def test_short_and_non_string_arguments_pass(self) -> None:
        record = self._record("%s units, %s", 3, "ok")
        TruncateLongArgsFilter().filter(record)
        assert record.getMessage() == "3 units, ok"


class TestErrors:
    def test_exit_codes(self) -> None:
        assert UnreachableGoal("x").exit_code == EXIT_DOMAIN
        assert CycleError("x", pending=[1]).exit_code == EXIT_DOMAIN
        assert GraphFormatError("x").exit_code == EXIT_USAGE

    def test_http_mapping(self) -> None:
        exc = to_http_exception(GoalNotInGraph("no unit produces 'tea'"))
        assert exc.status_code == 404
        assert exc.detail == {"error": "GOAL_NOT_IN_GRAPH", "message": "no unit produces 'tea'"}

    def test_graph_format_detail_lists_diagnostics(self) -> None:
        detail = GraphFormatError("bad", diagnostics=["line 2: unknown tag"]).to_detail()
        assert detail["diagnostics"] == ["line 2: unknown tag"]
