"""Shared test oracles: exact unitaries, bend-minimum MILP, random inputs."""

from __future__ import annotations

import itertools
import random

import numpy as np

from ionpd.gates import GateKind, Instruction, Netlist, make_netlist
from ionpd.qfg import QubitFlowGraph

_SQ = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.T: np.diag([1, np.exp(1j * np.pi / 4)]),
    GateKind.Tdg: np.diag([1, np.exp(-1j * np.pi / 4)]),
    GateKind.S: np.diag([1, 1j]),
}
_V = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
_CONTROLLED = {
    GateKind.CX: _SQ[GateKind.X],
    GateKind.CY: np.array([[0, -1j], [1j, 0]]),
    GateKind.CZ: np.diag([1, -1]).astype(complex),
    GateKind.CV: _V,
    GateKind.CVdg: _V.conj().T,
    GateKind.Toffoli: _SQ[GateKind.X],
}


def instruction_unitary(instr: Instruction, nq: int) -> np.ndarray:
    """Full 2^nq unitary; qubit w is bit (nq-1-w) of the basis index."""
    mat = _SQ.get(instr.kind)
    if mat is None:
        mat = _CONTROLLED[instr.kind]
    dim = 1 << nq
    out = np.zeros((dim, dim), dtype=complex)
    tbit = nq - 1 - instr.target
    cmask = 0
    for c in instr.controls:
        cmask |= 1 << (nq - 1 - c)
    for s in range(dim):
        if s & cmask == cmask:
            b = (s >> tbit) & 1
            for b2 in (0, 1):
                s2 = (s & ~(1 << tbit)) | (b2 << tbit)
                out[s2, s] += mat[b2, b]
        else:
            out[s, s] = 1
    return out


def netlist_unitary(netlist: Netlist, nq: int | None = None) -> np.ndarray:
    nq = nq if nq is not None else netlist.qubit_count
    u = np.eye(1 << nq, dtype=complex)
    for instr in netlist.instructions:
        u = instruction_unitary(instr, nq) @ u
    return u


def toffoli_unitary(c1: int, c2: int, t: int, nq: int) -> np.ndarray:
    """Direct permutation construction, independent of instruction_unitary."""
    dim = 1 << nq
    out = np.zeros((dim, dim), dtype=complex)
    b1, b2, bt = (1 << (nq - 1 - c1)), (1 << (nq - 1 - c2)), (1 << (nq - 1 - t))
    for s in range(dim):
        out[s ^ bt if (s & b1 and s & b2) else s, s] = 1
    return out


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    idx = np.unravel_index(np.argmax(np.abs(a)), a.shape)
    if abs(a[idx]) < tol:
        return bool(np.max(np.abs(a - b)) < tol)
    phase = b[idx] / a[idx]
    if abs(abs(phase) - 1) > tol:
        return False
    return bool(np.max(np.abs(a * phase - b)) < tol)


def synth_qfg(nodes: list[int], pairs: list[tuple[int, int]]) -> QubitFlowGraph:
    """Flow-graph-shaped test input: stages equal node ids, one qubit per edge."""
    edges = tuple(
        (min(a, b), max(a, b), q) for q, (a, b) in enumerate(pairs)
    )
    first = {q: i for i, _, q in edges}
    last = {q: j for _, j, q in edges}
    return QubitFlowGraph({n: n for n in nodes}, edges, first, last)


def random_degree4_graph(rng: random.Random, max_nodes: int = 12) -> QubitFlowGraph:
    n = rng.randint(1, max_nodes)
    nodes = list(range(1, n + 1))
    deg = {v: 0 for v in nodes}
    pairs = list(itertools.combinations(nodes, 2))
    rng.shuffle(pairs)
    edges: list[tuple[int, int]] = []
    budget = rng.randint(0, 2 * n)
    for a, b in pairs:
        if len(edges) >= budget:
            break
        if deg[a] < 4 and deg[b] < 4:
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    if edges and rng.random() < 0.15:
        a, b = edges[rng.randrange(len(edges))]
        if deg[a] < 4 and deg[b] < 4:
            edges.append((a, b))
    return synth_qfg(nodes, edges)


_RANDOM_KINDS = [
    GateKind.H, GateKind.X, GateKind.T, GateKind.S,
    GateKind.CX, GateKind.CZ, GateKind.CY,
]


def random_netlist(rng: random.Random, max_instr: int = 10, max_qubits: int = 6) -> Netlist:
    count = rng.randint(1, max_instr)
    qubits = rng.randint(2, max_qubits)
    gates = []
    for _ in range(count):
        kind = _RANDOM_KINDS[rng.randrange(len(_RANDOM_KINDS))]
        if kind.arity == 1:
            gates.append((kind, (), rng.randrange(qubits)))
        else:
            a, b = rng.sample(range(qubits), 2)
            gates.append((kind, (a,), b))
    return make_netlist(gates)


def bend_minimum_milp(pg, rep) -> int:
    """Exact per-embedding bend minimum (HiGHS MILP over the face equations)."""
    from scipy.optimize import Bounds, LinearConstraint, milp

    total = 0
    faces = rep.faces
    for comp in pg.components():
        comp_set = set(comp)
        fidx = [fi for fi, w in enumerate(faces) if w and w[0][0] in comp_set]
        if not fidx:
            continue
        ext = next(fi for fi in fidx if fi in rep.ext_face)
        corners = [(fi, ci) for fi in fidx for ci in range(len(faces[fi]))]
        corner_pos = {key: k for k, key in enumerate(corners)}
        hes = [(fi, he) for fi in fidx for he in faces[fi]]
        he_pos = {key: k for k, key in enumerate(hes)}
        he_face = {he: fi for fi in fidx for he in faces[fi]}
        nvar = len(corners) + len(hes)
        cost = np.concatenate([np.zeros(len(corners)), np.ones(len(hes))])
        rows, rhs = [], []
        for v in comp:
            row = np.zeros(nvar)
            hit = False
            for (fi, ci), k in corner_pos.items():
                if faces[fi][ci][1] == v:
                    row[k] = 1
                    hit = True
            if hit:
                rows.append(row)
                rhs.append(4)
        for fi in fidx:
            row = np.zeros(nvar)
            for ci in range(len(faces[fi])):
                row[corner_pos[(fi, ci)]] = -1
            for he in faces[fi]:
                row[len(corners) + he_pos[(fi, he)]] += 1
                twin = (he[1], he[0])
                row[len(corners) + he_pos[(he_face[twin], twin)]] -= 1
            rows.append(row)
            rhs.append((-4 if fi == ext else 4) - 2 * len(faces[fi]))
        lb = np.concatenate([np.ones(len(corners)), np.zeros(len(hes))])
        ub = np.concatenate([np.full(len(corners), 4.0), np.full(len(hes), 64.0)])
        res = milp(
            c=cost,
            constraints=LinearConstraint(np.array(rows), rhs, rhs),
            bounds=Bounds(lb, ub),
            integrality=np.ones(nvar),
        )
        assert res.success, res.message
        total += round(res.fun)
    return total
