from __future__ import annotations

import random

import pytest

from foonkit.errors import CycleError
from foonkit.features.core.export import to_networkx
from foonkit.features.core.models import FOONGraph, FunctionalUnit, MotionNode, ObjectNode, TaskTree
from foonkit.features.core.service import merge, node_equals, topological_order, unit_equals, validate
from foonkit.features.parser.service import has_errors, parse_graph

from ._graphs import lemon_units, obj, random_graph, reshaped, rich_graph, rich_node, rich_unit, unit, wash_unit

pytestmark = pytest.mark.unit


class TestNodeEquality:
    def test_state_order_is_irrelevant(self) -> None:
        assert node_equals(obj("egg", "whole", "raw"), obj("egg", "raw", "whole"))

    def test_labels_are_normalised(self) -> None:
        assert node_equals(ObjectNode("  Cutting   Board "), obj("cutting board"))

    def test_relation_takes_part_in_identity(self) -> None:
        assert not node_equals(obj("lemon", "whole"), obj("lemon", "whole", rel="on:cutting board"))

    def test_ingredients_compare_as_sets(self) -> None:
        a = obj("bowl", ingredients=["egg", "milk"])
        b = obj("bowl", ingredients=["milk", "egg"])
        assert node_equals(a, b)
        assert hash(a) == hash(b)

    def test_different_states_differ(self) -> None:
        assert not node_equals(obj("egg", "whole"), obj("egg", "beaten"))

    def test_descriptor_drops_only_the_relation(self) -> None:
        placed = obj("lemon", "whole", ingredients=["zest"], rel="on:cutting board")
        assert node_equals(placed.descriptor, obj("lemon", "whole", ingredients=["zest"]))
        assert placed.descriptor.relation is None

    def test_equivalence_relation(self) -> None:
        rng = random.Random(17)
        nodes = [rich_node(rng) for _ in range(25)]
        nodes += [ObjectNode(n.name.title(), n.states[::-1], n.ingredients[::-1], n.relation) for n in nodes]
        for a in nodes:
            assert node_equals(a, a)
            for b in nodes:
                assert node_equals(a, b) == node_equals(b, a)
                if not node_equals(a, b):
                    continue
                assert hash(a) == hash(b)
                for c in nodes:
                    if node_equals(b, c):
                        assert node_equals(a, c)


class TestUnitEquality:
    def test_timestamps_are_ignored(self) -> None:
        a = FunctionalUnit((obj("egg"),), MotionNode("mix", "1", "4"), (obj("egg", "beaten"),))
        b = FunctionalUnit((obj("egg"),), MotionNode("mix"), (obj("egg", "beaten"),))
        assert unit_equals(a, b)

    def test_input_order_is_irrelevant(self) -> None:
        a = unit([obj("egg"), obj("bowl")], "pour", [obj("egg", rel="in:bowl")])
        b = unit([obj("bowl"), obj("egg")], "pour", [obj("egg", rel="in:bowl")])
        assert unit_equals(a, b)

    def test_motion_matters(self) -> None:
        a = unit([obj("egg")], "mix", [obj("egg", "beaten")])
        b = unit([obj("egg")], "whisk", [obj("egg", "beaten")])
        assert not unit_equals(a, b)

    def test_equivalence_relation(self) -> None:
        rng = random.Random(19)
        units = [rich_unit(rng) for _ in range(20)]
        units += [reshaped(rng, u) for u in units]
        for a in units:
            assert unit_equals(a, a)
            for b in units:
                assert unit_equals(a, b) == unit_equals(b, a)
                if not unit_equals(a, b):
                    continue
                assert hash(a) == hash(b)
                for c in units:
                    if unit_equals(b, c):
                        assert unit_equals(a, c)

    def test_reshaped_copy_is_equal(self) -> None:
        rng = random.Random(23)
        for _ in range(50):
            original = rich_unit(rng)
            assert unit_equals(original, reshaped(rng, original))


class TestMerge:
    def test_disjoint_graphs_concatenate(self) -> None:
        first = FOONGraph(tuple(lemon_units()))
        second = FOONGraph((wash_unit(),))
        merged = merge([first, second])
        assert len(merged) == 3
        assert merged.units[-1] == wash_unit()

    def test_merge_with_itself_is_idempotent(self) -> None:
        graph = FOONGraph(tuple(lemon_units()))
        assert merge([graph, graph]).units == graph.units

    def test_empty_input(self) -> None:
        assert len(merge([])) == 0

    def test_against_set_union_oracle(self) -> None:
        rng = random.Random(7)
        for _ in range(40):
            graphs = [random_graph(rng, units=rng.randint(0, 6)) for _ in range(rng.randint(1, 4))]
            merged = merge(graphs)
            expected = {u for g in graphs for u in g.units}
            assert set(merged.units) == expected
            assert len(merged.units) == len(expected)
            assert validate(merged) == []

    def test_against_pairwise_oracle(self) -> None:
        # сравнение каждой пары блоков без хешей; доля общих блоков от 0 до 100 %
        rng = random.Random(29)
        for case in range(1000):
            first = rich_graph(rng, rng.randint(1, 8))
            shared = round(len(first) * (case % 11) / 10)
            second_units = [reshaped(rng, u) for u in rng.sample(first.units, shared)]
            second_units += [rich_unit(rng) for _ in range(rng.randint(0, 4))]
            rng.shuffle(second_units)
            second = FOONGraph(tuple(second_units))

            kept = []
            for candidate in (*first.units, *second.units):
                if not any(unit_equals(candidate, earlier) for earlier in kept):
                    kept.append(candidate)

            merged = merge([first, second])
            assert len(merged) == len(kept)
            assert all(got is want for got, want in zip(merged.units, kept))
            assert len(merged) <= len(first) + len(second) - shared

    def test_first_occurrence_order_is_kept(self) -> None:
        a, b = lemon_units()
        merged = merge([FOONGraph((b,)), FOONGraph((a, b))])
        assert merged.units == (b, a)


class TestValidate:
    def test_valid_graph_has_no_violations(self) -> None:
        assert validate(FOONGraph(tuple(lemon_units()))) == []

    def test_empty_inputs(self) -> None:
        violations = validate(FOONGraph((FunctionalUnit((), MotionNode("mix"), (obj("egg"),)),)))
        assert [v.invariant for v in violations] == ["unit-inputs"]

    def test_timestamps_out_of_order(self) -> None:
        bad = FunctionalUnit((obj("egg"),), MotionNode("mix", "9", "2"), (obj("egg", "beaten"),))
        assert "motion-time" in {v.invariant for v in validate(FOONGraph((bad,)))}

    def test_non_numeric_timestamps_are_not_compared(self) -> None:
        ok = FunctionalUnit((obj("egg"),), MotionNode("mix", "start", "end"), (obj("egg", "beaten"),))
        assert validate(FOONGraph((ok,))) == []

    def test_duplicate_node_in_unit(self) -> None:
        bad = unit([obj("egg", "raw"), obj("egg", "raw")], "mix", [obj("egg", "beaten")])
        assert "unit-duplicate-node" in {v.invariant for v in validate(FOONGraph((bad,)))}

    @pytest.mark.parametrize("stamp", ["1\t2", "3\n4", "0\x0b9", "7\x00", "5\x1b"])
    def test_control_characters_in_timestamps(self, stamp: str) -> None:
        bad = FunctionalUnit((obj("egg"),), MotionNode("mix", stamp, "10"), (obj("egg", "beaten"),))
        violations = validate(FOONGraph((bad,)))
        assert [v.invariant for v in violations] == ["motion-time"]
        assert "control character" in violations[0].message

    def test_control_character_timestamp_is_a_parse_error(self) -> None:
        graph, diagnostics = parse_graph("o\tegg\nm\tmix\t1\x012\t4\no\tegg\ns\tbeaten\n//\n")
        assert has_errors(diagnostics)
        assert len(graph) == 0

    def test_duplicate_unit(self) -> None:
        place = lemon_units()[0]
        violations = validate(FOONGraph((place, place)))
        assert [v.invariant for v in violations] == ["graph-duplicate-unit"]
        assert violations[0].unit_index == 1


class TestTopologicalOrder:
    def test_reorders_to_respect_dependencies(self) -> None:
        place, slice_ = lemon_units()
        tree = TaskTree(FOONGraph((slice_, place)), slice_.outputs[0], {obj("lemon", "whole"), obj("cutting board"), obj("knife")})
        assert topological_order(tree) == [place, slice_]

    def test_independent_units_keep_tree_order(self) -> None:
        first = wash_unit("bowl")
        second = wash_unit("pan")
        tree = TaskTree(FOONGraph((first, second)), second.outputs[0], {obj("bowl", "dirty"), obj("pan", "dirty")})
        assert topological_order(tree) == [first, second]

    def test_cycle_raises(self) -> None:
        a = unit([obj("x")], "mix", [obj("y")])
        b = unit([obj("y")], "mix", [obj("x")])
        with pytest.raises(CycleError) as excinfo:
            topological_order(TaskTree(FOONGraph((a, b)), obj("y"), set()))
        assert set(excinfo.value.pending) == {0, 1}

    def test_empty_tree(self) -> None:
        goal = obj("egg")
        assert topological_order(TaskTree(FOONGraph(()), goal, {goal})) == []

    def test_placed_input_is_satisfied_by_a_kitchen_item(self) -> None:
        _, slice_ = lemon_units()
        tree = TaskTree(FOONGraph((slice_,)), slice_.outputs[0], {obj("lemon", "whole"), obj("cutting board", ingredients=["lemon"]), obj("knife")})
        assert topological_order(tree) == [slice_]
        assert tree.replay() == []

    def test_order_replays_soundly(self) -> None:
        place, slice_ = lemon_units()
        tree = TaskTree(FOONGraph((slice_, place)), slice_.outputs[0], {obj("lemon", "whole"), obj("cutting board"), obj("knife")})
        assert tree.replay() != []
        assert tree.replay(topological_order(tree)) == []


class TestGraphIndex:
    def test_producers_and_consumers(self) -> None:
        graph = FOONGraph(tuple(lemon_units()))
        on_board = obj("lemon", "whole", rel="on:cutting board")
        # поиск идёт по дескриптору: место на доске не отличает лимон от лежащего на кухне
        assert graph.producers_of(on_board) == (0,)
        assert graph.consumers_of(on_board) == (0, 1)
        assert graph.producers_of(obj("cutting board", ingredients=["lemon"])) == (0, 1)
        assert graph.producers_of(obj("unknown")) == ()

    def test_index_keys_have_no_relation(self) -> None:
        graph = FOONGraph(tuple(lemon_units()))
        assert all(node.relation is None for node in graph.node_index)
        assert len(graph.object_nodes()) > len(graph.node_index)

    def test_index_is_rebuildable(self) -> None:
        units = tuple(lemon_units())
        assert FOONGraph(units).node_index == FOONGraph(units).node_index

    def test_networkx_view_is_bipartite(self) -> None:
        graph = FOONGraph(tuple(lemon_units()))
        digraph = to_networkx(graph)
        motions = [n for n, data in digraph.nodes(data=True) if data["bipartite"] == 1]
        assert len(motions) == 2
        for source, target in digraph.edges:
            assert digraph.nodes[source]["bipartite"] != digraph.nodes[target]["bipartite"]
