import random

import pytest

from helpers import random_degree4_graph, synth_qfg
from ionpd.circuits import generate_cat_circuit
from ionpd.compact import compact
from ionpd.drawing import OrthogonalDrawing
from ionpd.macrolayout import (
    LayoutError,
    Macroblock,
    RoutePlan,
    RouteStep,
    place_qubits,
    route,
    tile,
)
from ionpd.orthogonal import orthogonalize
from ionpd.planar import planarize
from ionpd.qasm import parse_qasm
from ionpd.qfg import build_qfg
from ionpd.solver import schedule_netlist


def pipeline(netlist):
    schedule = schedule_netlist(netlist)
    qfg = build_qfg(netlist, schedule)
    pg = planarize(qfg)
    drawing = compact(pg, orthogonalize(pg))
    layout = tile(drawing)
    return schedule, qfg, drawing, layout


class TestMacroblock:
    def test_kinds_from_ports(self):
        assert Macroblock(frozenset("EW")).kind == "STRAIGHT_H"
        assert Macroblock(frozenset("NS"), (3,)).kind == "GATE_STRAIGHT_V"
        assert Macroblock(frozenset("ES")).kind == "TURN_ES"
        assert Macroblock(frozenset("ESW")).kind == "TEE_ESW"
        assert Macroblock(frozenset("NESW")).kind == "CROSS"
        assert Macroblock(frozenset("N")).kind == "DEAD_END_N"

    def test_gate_requires_straight_block(self):
        with pytest.raises(LayoutError):
            Macroblock(frozenset("ES"), (1,))

    def test_dangling_port_reported_with_coordinates(self):
        from ionpd.macrolayout import MacroLayout

        lonely = MacroLayout({(2, 5): Macroblock(frozenset("EW"))}, {}, {})
        with pytest.raises(LayoutError) as err:
            lonely.check_ports()
        assert "(2, 5)" in str(err.value)


class TestTile:
    def test_isolated_node_gets_caps(self):
        drawing = OrthogonalDrawing({7: (0, 0)}, {})
        layout = tile(drawing)
        kinds = sorted(b.kind for b in layout.blocks.values())
        assert kinds == ["DEAD_END_E", "DEAD_END_W", "GATE_STRAIGHT_H"]
        assert layout.gate_location_of == {7: (0, 0)}

    def test_straight_edge_row(self):
        drawing = OrthogonalDrawing(
            {1: (0, 0), 2: (1, 0)}, {(1, 2, 0): ((0, 0), (1, 0))}
        )
        layout = tile(drawing)
        assert layout.gate_location_of == {1: (0, 0), 2: (3, 0)}
        row = [layout.blocks[(x, 0)].kind for x in range(-1, 5)]
        assert row == [
            "DEAD_END_E", "GATE_STRAIGHT_H", "STRAIGHT_H",
            "STRAIGHT_H", "GATE_STRAIGHT_H", "DEAD_END_W",
        ]

    def test_cat4_has_six_gate_locations_and_connected_channels(self):
        _, _, _, layout = pipeline(generate_cat_circuit(4))
        assert len(layout.gate_location_of) == 6
        adj = layout.channel_graph()
        seen, stack = set(), [next(iter(adj))]
        while stack:
            cell = stack.pop()
            if cell in seen:
                continue
            seen.add(cell)
            stack.extend(adj[cell])
        assert seen == set(adj)

    def test_junction_nodes_get_displaced_gates(self):
        qfg = synth_qfg([1, 2, 3, 4], [(1, 2), (1, 3), (1, 4)])
        pg = planarize(qfg)
        drawing = compact(pg, orthogonalize(pg))
        layout = tile(drawing)
        centre = layout.node_cell[1]
        assert layout.blocks[centre].kind.startswith("TEE")
        gate = layout.gate_location_of[1]
        assert abs(gate[0] - centre[0]) + abs(gate[1] - centre[1]) == 1
        assert layout.blocks[gate].has_gate_location

    def test_ports_always_pair(self):
        rng = random.Random(41)
        for _ in range(40):
            qfg = random_degree4_graph(rng)
            pg = planarize(qfg)
            drawing = compact(pg, orthogonalize(pg))
            layout = tile(drawing)
            layout.check_ports()
            assert set(layout.gate_location_of) == set(qfg.nodes)
            assert len(set(layout.gate_location_of.values())) == len(qfg.nodes)

    def test_channel_graph_mirrors_drawing_topology(self):
        netlist = generate_cat_circuit(7)
        _, qfg, drawing, layout = pipeline(netlist)
        adj = layout.channel_graph()
        junctions = sum(1 for b in layout.blocks.values() if len(b.ports) >= 3)
        drawn_junctions = sum(1 for n in qfg.nodes if qfg.degree(n) >= 3)
        assert junctions == drawn_junctions

    def test_route_crossings_become_cross_blocks(self):
        crossing = OrthogonalDrawing(
            {1: (0, 1), 2: (2, 1), 3: (1, 0), 4: (1, 2)},
            {(1, 2, 0): ((0, 1), (2, 1)), (3, 4, 1): ((1, 0), (1, 2))},
            crossings=((1, 1),),
        )
        layout = tile(crossing)
        assert layout.blocks[(3, 3)].kind == "CROSS"


class TestPlaceQubits:
    def test_cat7_first_use_rule(self):
        netlist = generate_cat_circuit(7)
        schedule, qfg, drawing, layout = pipeline(netlist)
        placement = place_qubits(netlist, schedule, layout)
        assert placement[3] == layout.gate_location_of[1]   # H wire
        assert placement[4] == layout.gate_location_of[2]
        assert placement[0] == layout.gate_location_of[7]   # low chain end
        assert placement[7] == layout.gate_location_of[8]   # high chain end

    def test_single_use_qubit(self):
        netlist = parse_qasm("CX q0,q1")
        schedule, _, _, layout = pipeline(netlist)
        placement = place_qubits(netlist, schedule, layout)
        assert placement[0] == placement[1] == layout.gate_location_of[1]

    def test_unused_qubit_parks_near_origin(self):
        netlist = parse_qasm("H q0\nH q2")
        schedule, _, _, layout = pipeline(netlist)
        placement = place_qubits(netlist, schedule, layout)
        assert 1 in placement
        assert placement[1] not in layout.blocks


class TestRoute:
    def test_straight_route_tags(self):
        netlist = parse_qasm("H q0\nX q0")
        schedule, qfg, drawing, layout = pipeline(netlist)
        plan = route(qfg, drawing, layout)
        steps = plan.steps[(0, (1, 2, 0))]
        assert steps and all(not s.turn for s in steps)
        straights, turns = plan.straights_and_turns(0, (1, 2, 0))
        assert straights == 3 * len(steps) and turns == 0

    def test_already_resident_gives_empty_path(self):
        plan = RoutePlan({(0, (1, 2, 0)): ()}, {1: (), 2: ()})
        assert plan.straights_and_turns(0, (1, 2, 0)) == (0, 0)

    def test_cat7_gate2_mover_comes_from_gate1(self):
        netlist = generate_cat_circuit(7)
        schedule, qfg, drawing, layout = pipeline(netlist)
        plan = route(qfg, drawing, layout)
        # qubit 4 starts at gate 2's own location, so the H-wire qubit moves
        assert plan.movers[2] == (3,)

    def test_closing_gate_both_qubits_move(self):
        netlist = generate_cat_circuit(7)
        schedule, qfg, drawing, layout = pipeline(netlist)
        plan = route(qfg, drawing, layout)
        assert plan.movers[9] == (0, 7)

    def test_paths_walk_the_channel_graph(self):
        rng = random.Random(43)
        for _ in range(20):
            qfg = random_degree4_graph(rng, max_nodes=9)
            pg = planarize(qfg)
            drawing = compact(pg, orthogonalize(pg))
            layout = tile(drawing)
            plan = route(qfg, drawing, layout)
            adj = layout.channel_graph()
            for (qubit, edge), steps in plan.steps.items():
                i, j, _ = edge
                cells = [layout.gate_location_of[i]] + [s.cell for s in steps]
                assert cells[-1] == layout.gate_location_of[j]
                for a, b in zip(cells, cells[1:]):
                    assert b in adj[a], f"{a}->{b} not a channel hop"

    def test_turn_count_matches_direction_changes(self):
        netlist = generate_cat_circuit(7)
        schedule, qfg, drawing, layout = pipeline(netlist)
        plan = route(qfg, drawing, layout)
        for (qubit, edge), steps in plan.steps.items():
            turn_blocks = sum(
                1 for s in steps if layout.blocks[s.cell].kind.startswith("TURN")
            )
            assert sum(1 for s in steps if s.turn) >= turn_blocks


def test_layout_renders(code932):
    _, _, _, layout = pipeline(code932)
    text = layout.to_text()
    assert "gate 1 at block" in text
    assert layout.to_svg().startswith("<svg")
    assert '"blocks"' in layout.to_json()
