import pytest

from ionpd.circuits import generate_cat_circuit
from ionpd.gates import GateKind
from ionpd.qasm import render_qasm


def test_cat4_matches_published_sequence():
    got = render_qasm(generate_cat_circuit(4)).strip().splitlines()
    assert got == [
        "H q1",
        "CX q1,q2",
        "CX q1,q0",
        "CX q2,q3",
        "CX q3,q4",
        "CX q0,q4",
    ]


def test_cat7_shape():
    netlist = generate_cat_circuit(7)
    assert len(netlist) == 9
    first = netlist[1]
    assert first.kind is GateKind.H and first.target == 3
    last = netlist[9]
    assert set(last.qubits) == {0, 7}


@pytest.mark.parametrize("n", range(2, 16))
def test_counts_and_composition(n):
    netlist = generate_cat_circuit(n)
    assert len(netlist) == n + 2
    assert netlist.qubit_count == n + 1
    kinds = [i.kind for i in netlist.instructions]
    assert kinds.count(GateKind.H) == 1
    assert kinds.count(GateKind.CX) == n + 1
    # chain controls sit on the inner qubit; closing gate joins the ends
    assert netlist[n + 2].controls == (0,) and netlist[n + 2].target == n


def test_rejects_small_n():
    with pytest.raises(ValueError):
        generate_cat_circuit(1)
