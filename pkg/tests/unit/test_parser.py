from __future__ import annotations

import random

import pytest

from foonkit.errors import GraphFormatError
from foonkit.features.core.models import FOONGraph, FunctionalUnit, MotionNode
from foonkit.features.core.service import validate
from foonkit.features.parser.service import (
    Severity,
    graph_from_text,
    has_errors,
    load_graph,
    parse_graph,
    parse_graph_bytes,
    serialize_graph,
    write_graph,
)

from ._graphs import DATA_DIR, lemon_units, obj, random_graph, rich_graph

pytestmark = pytest.mark.unit

LEMON_TEXT = (
    "O\tlemon\n"
    "S\twhole\n"
    "O\tcutting board\n"
    "M\tplace\t3\t7\n"
    "O\tlemon\ton:cutting board\n"
    "S\twhole\n"
    "O\tcutting board\n"
    "//\n"
)


def _errors(diagnostics):
    return [d for d in diagnostics if d.severity is Severity.ERROR]


def _warnings(diagnostics):
    return [d for d in diagnostics if d.severity is Severity.WARNING]


class TestParseGraph:
    def test_single_unit(self) -> None:
        graph, diagnostics = parse_graph(LEMON_TEXT)
        assert diagnostics == []
        assert len(graph) == 1
        place = graph.units[0]
        assert place.motion.label == "place"
        assert (place.motion.start_time, place.motion.end_time) == ("3", "7")
        assert place.outputs[0] == obj("lemon", "whole", rel="on:cutting board")

    def test_comments_blank_lines_and_case(self) -> None:
        text = "# header\n\n" + LEMON_TEXT.replace("M\t", "m\t")
        graph, diagnostics = parse_graph(text)
        assert diagnostics == []
        assert len(graph) == 1

    def test_ingredients_on_state_line(self) -> None:
        text = "o\tbowl\ns\tfull\t{egg, milk}\nm\tmix\no\tbowl\ns\t\t{egg mixture}\n//\n"
        graph, diagnostics = parse_graph(text)
        assert diagnostics == []
        assert graph.units[0].inputs[0] == obj("bowl", "full", ingredients=["egg", "milk"])
        assert graph.units[0].outputs[0] == obj("bowl", ingredients=["egg mixture"])

    def test_data_files_parse_cleanly(self) -> None:
        for name in ("lemon.foon", "scrambled_eggs.foon"):
            graph = load_graph(DATA_DIR / name)
            assert len(graph) > 0
            assert validate(graph) == []

    def test_empty_text(self) -> None:
        graph, diagnostics = parse_graph("")
        assert len(graph) == 0
        assert diagnostics == []


class TestDiagnostics:
    def test_missing_terminator(self) -> None:
        _, diagnostics = parse_graph(LEMON_TEXT.replace("//\n", ""))
        assert any("unterminated" in d.message for d in _errors(diagnostics))

    def test_unknown_tag_drops_the_block(self) -> None:
        graph, diagnostics = parse_graph("o\tegg\nx\tnonsense\nm\tmix\no\tegg\ns\tbeaten\n//\n" + LEMON_TEXT)
        assert len(graph) == 1
        assert _errors(diagnostics)[0].line_number == 2

    def test_state_before_object(self) -> None:
        _, diagnostics = parse_graph("s\twhole\n")
        errors = _errors(diagnostics)
        assert len(errors) == 1
        assert "state line" in errors[0].message

    def test_motion_before_inputs(self) -> None:
        _, diagnostics = parse_graph("m\tmix\no\tegg\n//\n")
        assert any("before any object" in d.message for d in _errors(diagnostics))

    def test_two_motions(self) -> None:
        _, diagnostics = parse_graph("o\tegg\nm\tmix\nm\tstir\no\tegg\n//\n")
        assert any("more than one motion" in d.message for d in _errors(diagnostics))

    def test_block_without_motion(self) -> None:
        _, diagnostics = parse_graph("o\tegg\n//\n")
        assert any("no motion" in d.message for d in _errors(diagnostics))

    def test_bad_relation(self) -> None:
        _, diagnostics = parse_graph("o\tegg\tbeside:bowl\nm\tmix\no\tegg\n//\n")
        assert _errors(diagnostics)

    def test_nested_ingredients(self) -> None:
        _, diagnostics = parse_graph("o\tbowl\ns\tfull\t{egg,{milk}}\nm\tmix\no\tbowl\n//\n")
        assert any("nested" in d.message for d in _errors(diagnostics))

    def test_bad_timestamps_fail_validation(self) -> None:
        graph, diagnostics = parse_graph("o\tegg\nm\tmix\t9\t2\no\tegg\ns\tbeaten\n//\n")
        assert len(graph) == 0
        assert _errors(diagnostics)

    def test_duplicates_are_warnings(self) -> None:
        text = "o\tegg\ns\traw\ns\traw\no\tegg\ns\traw\nm\tmix\no\tegg\ns\tbeaten\n//\n"
        graph, diagnostics = parse_graph(text + text)
        assert not has_errors(diagnostics)
        # state + node in each block, then the repeated unit
        assert len(_warnings(diagnostics)) == 5
        assert len(graph) == 1
        assert graph.units[0].inputs == (obj("egg", "raw"),)

    def test_graph_from_text_raises_with_diagnostics(self) -> None:
        with pytest.raises(GraphFormatError) as excinfo:
            graph_from_text("o\tegg\n", "inline")
        assert excinfo.value.diagnostics
        assert "inline" in str(excinfo.value)
        assert excinfo.value.to_detail()["error"] == "GRAPH_FORMAT"


class TestSerialize:
    def test_canonical_form(self) -> None:
        text = serialize_graph(FOONGraph(tuple(lemon_units())))
        assert text.startswith("o\tlemon\ns\twhole\n")
        assert text.endswith("//\n")
        assert "m\tplace\n" in text

    def test_timestamps_are_written(self) -> None:
        place = FunctionalUnit((obj("lemon"),), MotionNode("place", "3", None), (obj("lemon", rel="on:plate"),))
        assert "m\tplace\t3\t\n" in serialize_graph(FOONGraph((place,)))

    def test_empty_graph(self) -> None:
        assert serialize_graph(FOONGraph(())) == ""

    def test_serialization_is_a_fixed_point(self) -> None:
        rng = random.Random(11)
        for _ in range(25):
            graph = random_graph(rng, units=rng.randint(1, 6))
            text = serialize_graph(graph)
            reparsed, diagnostics = parse_graph(text)
            assert diagnostics == []
            assert reparsed.units == graph.units
            assert serialize_graph(reparsed) == text

    def test_rich_graphs_round_trip(self) -> None:
        rng = random.Random(13)
        for _ in range(1000):
            graph = rich_graph(rng, rng.randint(1, 6))
            text = serialize_graph(graph)
            reparsed, diagnostics = parse_graph(text)
            assert diagnostics == []
            assert reparsed.units == graph.units
            assert [u.motion for u in reparsed.units] == [u.motion for u in graph.units]
            relations = [[node.relation for node in u.outputs] for u in graph.units]
            assert [[node.relation for node in u.outputs] for u in reparsed.units] == relations
            assert serialize_graph(reparsed) == text

    def test_data_file_fixed_point(self) -> None:
        graph = load_graph(DATA_DIR / "scrambled_eggs.foon")
        text = serialize_graph(graph)
        assert serialize_graph(parse_graph(text)[0]) == text

    def test_write_graph(self, tmp_path) -> None:
        path = tmp_path / "lemon.foon"
        graph = FOONGraph(tuple(lemon_units()))
        write_graph(path, graph)
        assert load_graph(path).units == graph.units


class TestRobustness:
    def test_random_bytes_never_raise(self) -> None:
        rng = random.Random(3)
        alphabet = [b"o\t", b"s\t", b"m\t", b"//", b"\n", b"\t", b"{", b"}", b",", b"in:", b"egg", b"\xff", b" ", b"#"]
        for _ in range(300):
            data = b"".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
            graph, diagnostics = parse_graph_bytes(data)
            if not has_errors(diagnostics):
                assert validate(graph) == []

    def test_arbitrary_bytes_never_raise(self) -> None:
        rng = random.Random(4)
        tokens = [b"o\t", b"s\t", b"m\t", b"//\n", b"\n", b"\t", b"{", b"}", b"on:", b"\x00", b"\xc3\xa9"]
        for case in range(10_000):
            if case % 2:
                data = rng.randbytes(rng.randint(0, 64))
            else:
                pieces = [rng.choice(tokens) + rng.randbytes(rng.randint(0, 3)) for _ in range(rng.randint(0, 24))]
                data = b"".join(pieces)
            graph, diagnostics = parse_graph_bytes(data)
            if not has_errors(diagnostics):
                assert validate(graph) == []
                assert parse_graph(serialize_graph(graph))[0].units == graph.units

    def test_invalid_utf8_is_replaced_with_warning(self) -> None:
        graph, diagnostics = parse_graph_bytes(LEMON_TEXT.replace("lemon", "lem\udcffon", 1).encode("utf-8", "surrogateescape"))
        assert diagnostics[0].severity is Severity.WARNING
        assert "UTF-8" in diagnostics[0].message
        assert len(graph) == 1
