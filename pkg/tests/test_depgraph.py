import random

import pytest
from hypothesis import given, strategies as st

from helpers import random_netlist
from ionpd.circuits import generate_cat_circuit
from ionpd.depgraph import (
    InfeasibleHorizon,
    asap_alap,
    build_dataflow,
    common_qubit_table,
    exchangeable,
    stage_lower_bound,
)
from ionpd.gates import GateKind, Instruction, make_netlist
from ionpd.qasm import parse_qasm


def gate(kind, controls, target, gate_id=1):
    return Instruction(gate_id, kind, controls, target)


class TestExchangeable:
    def test_shared_target_of_same_kind_commutes(self):
        a = gate(GateKind.CX, (4,), 6)
        b = gate(GateKind.CX, (3,), 6)
        assert exchangeable(a, b)

    def test_target_feeding_a_control_orders(self):
        a = gate(GateKind.H, (), 2)
        b = gate(GateKind.CX, (2,), 3)
        assert not exchangeable(a, b)

    def test_disjoint_gates_always_swap(self):
        assert exchangeable(gate(GateKind.H, (), 0), gate(GateKind.CX, (4,), 5))

    def test_single_qubit_commutation_on_one_wire(self):
        h0 = gate(GateKind.H, (), 0)
        assert exchangeable(h0, gate(GateKind.H, (), 0))
        assert exchangeable(gate(GateKind.T, (), 0), gate(GateKind.S, (), 0))
        assert not exchangeable(h0, gate(GateKind.T, (), 0))

    def test_measurement_orders_against_everything(self):
        m = gate(GateKind.Measure, (), 0)
        assert not exchangeable(m, gate(GateKind.Measure, (), 0))
        assert not exchangeable(m, gate(GateKind.CX, (0,), 1))
        assert not exchangeable(gate(GateKind.PrepZ, (), 1), gate(GateKind.CX, (0,), 1))

    def test_different_kinds_need_distinct_targets(self):
        a = gate(GateKind.CZ, (1,), 2)
        b = gate(GateKind.CX, (3,), 2)
        assert not exchangeable(a, b)
        assert exchangeable(gate(GateKind.CZ, (1,), 2), gate(GateKind.CX, (1,), 3))

    @given(st.data())
    def test_symmetry(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        netlist = random_netlist(rng)
        instrs = netlist.instructions
        a = data.draw(st.sampled_from(instrs))
        b = data.draw(st.sampled_from(instrs))
        assert exchangeable(a, b) == exchangeable(b, a)


class TestCommonQubits:
    def test_table_rows(self, code932):
        table = common_qubit_table(code932)
        assert table[3] == [7, 8, 9, 10, 15, 18]
        assert table[4] == [6, 11]

    def test_empty(self):
        assert common_qubit_table(make_netlist([])) == {}


class TestDataflow:
    def test_real_dependencies_reachable(self, code932):
        graph = build_dataflow(code932)
        assert graph.reachable(4, 16)
        assert graph.reachable(4, 19)

    def test_exchangeable_pair_not_ordered(self, code932):
        graph = build_dataflow(code932)
        assert (6, 7) not in graph.edges
        assert not graph.reachable(6, 7)

    def test_single_instruction(self):
        graph = build_dataflow(parse_qasm("H q0"))
        assert graph.nodes == (1,) and not graph.edges

    def test_every_edge_shares_a_qubit_and_is_not_exchangeable(self, code932):
        graph = build_dataflow(code932)
        for j, i in graph.edges:
            a, b = code932[j], code932[i]
            assert set(a.qubits) & set(b.qubits)
            assert not exchangeable(a, b)

    def test_reduction_preserves_reachability(self, code932):
        graph = build_dataflow(code932)
        reduced = set(graph.reduced_edges())
        assert reduced <= set(graph.edges)
        from ionpd.depgraph import DataflowGraph

        thin = DataflowGraph(graph.nodes, frozenset(reduced))
        for j, i in graph.edges:
            assert thin.reachable(j, i)

    def test_exports(self, code932):
        graph = build_dataflow(code932)
        assert '"nodes"' in graph.to_json()
        assert "digraph" in graph.to_dot()


class TestWindows:
    def test_worked_example_window(self, code932):
        graph = build_dataflow(code932)
        windows = asap_alap(graph, 6)
        assert windows.window(6) == (1, 5)

    def test_source_gets_stage_one(self, code932):
        windows = asap_alap(build_dataflow(code932), 6)
        assert windows.asap[1] == 1

    def test_tight_chain(self):
        chain = parse_qasm("H q0\nCX q0,q1\nH q1")
        graph = build_dataflow(chain)
        windows = asap_alap(graph, 3)
        assert [windows.window(i) for i in (1, 2, 3)] == [(1, 1), (2, 2), (3, 3)]
        assert all(windows.slack(i) == 0 for i in (1, 2, 3))

    def test_horizon_below_critical_path(self):
        graph = build_dataflow(parse_qasm("H q0\nCX q0,q1\nH q1"))
        with pytest.raises(InfeasibleHorizon):
            asap_alap(graph, 2)

    def test_critical_path_nodes_have_zero_slack(self, code932):
        graph = build_dataflow(code932)
        cp = graph.critical_path_length()
        windows = asap_alap(graph, cp)
        chains = {i: 1 for i in graph.nodes}
        for node in graph.nodes:
            preds = graph.predecessors(node)
            if preds:
                chains[node] = 1 + max(chains[p] for p in preds)
        longest = max(chains.values())
        for node, length in chains.items():
            tail = max(
                (chains[s] - chains[node] for s in graph.nodes if graph.reachable(node, s)),
                default=0,
            )
            if length + tail == longest:
                assert windows.slack(node) == 0


class TestLowerBound:
    def test_code932_bound_is_six(self, code932):
        assert stage_lower_bound(code932, build_dataflow(code932)) == 6

    def test_independent_gates(self):
        netlist = parse_qasm("H q0\nH q1\nH q2")
        assert stage_lower_bound(netlist, build_dataflow(netlist)) == 1

    def test_shared_wire_serializes(self):
        netlist = parse_qasm("H q0\nX q0\nH q0\nX q0")
        assert stage_lower_bound(netlist, build_dataflow(netlist)) == 4

    def test_cat4_bound_below_its_optimum(self):
        netlist = generate_cat_circuit(4)
        bound = stage_lower_bound(netlist, build_dataflow(netlist))
        assert bound == 4  # the optimum is 5; the bound only promises <=
