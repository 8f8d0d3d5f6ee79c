"""Gate exchangeability, dataflow graph and scheduling windows.

Two gates that touch no common qubit can always be swapped. For gates that
share a qubit the control/target rule applies: same-kind gates exchange iff
neither target lies in the other's control set; different kinds additionally
require distinct targets. Single-qubit gates on one wire exchange iff their
matrices commute (identical kinds, or both diagonal phase gates); Measure
and PrepZ are ordered against everything on their wire.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .gates import DIAGONAL_1Q, NON_UNITARY, Instruction, Netlist


def exchangeable(a: Instruction, b: Instruction) -> bool:
    shared = set(a.qubits) & set(b.qubits)
    if not shared:
        return True
    if a.kind in NON_UNITARY or b.kind in NON_UNITARY:
        return False
    if a.kind.arity == 1 and b.kind.arity == 1:
        # same wire: exchange only if the matrices commute
        return a.kind is b.kind or (a.kind in DIAGONAL_1Q and b.kind in DIAGONAL_1Q)
    if a.target in b.controls or b.target in a.controls:
        return False
    if a.kind is not b.kind and a.target == b.target:
        return False
    return True


def common_qubit_table(netlist: Netlist) -> dict[int, list[int]]:
    """Qubit -> ids of the instructions touching it, in netlist order."""
    table: dict[int, list[int]] = {}
    for instr in netlist.instructions:
        for q in instr.qubits:
            table.setdefault(q, []).append(instr.id)
    return {q: table[q] for q in sorted(table)}


class InfeasibleHorizon(ValueError):
    """Horizon shorter than the graph's critical path."""


@dataclass(frozen=True)
class DataflowGraph:
    """DAG over instruction ids; an edge j -> i means i depends on j.

    The full pairwise edge set is stored; `reduced_edges` drops transitively
    implied edges (reachability, not the edge set, is the semantic contract).
    """

    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]]
    _succs: dict[int, list[int]] = field(repr=False, hash=False, compare=False, default_factory=dict)
    _preds: dict[int, list[int]] = field(repr=False, hash=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        for node in self.nodes:
            self._succs[node] = []
            self._preds[node] = []
        for j, i in sorted(self.edges):
            if j >= i:
                raise ValueError(f"dependency edge must point forward, got {j} -> {i}")
            self._succs[j].append(i)
            self._preds[i].append(j)

    def successors(self, node: int) -> list[int]:
        return self._succs[node]

    def predecessors(self, node: int) -> list[int]:
        return self._preds[node]

    def reachable(self, src: int, dst: int) -> bool:
        """True iff dst depends (possibly transitively) on src."""
        stack = [src]
        seen = set()
        while stack:
            cur = stack.pop()
            if cur == dst:
                return True
            for nxt in self._succs[cur]:
                if nxt <= dst and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    def reduced_edges(self) -> list[tuple[int, int]]:
        """Transitive reduction, used when emitting ordering constraints."""
        kept = []
        for j, i in sorted(self.edges):
            implied = any(
                mid != i and self.reachable(mid, i)
                for mid in self._succs[j]
                if mid < i
            )
            if not implied:
                kept.append((j, i))
        return kept

    def critical_path_length(self) -> int:
        """Longest dependency chain, counted in instructions."""
        best = 0
        chain: dict[int, int] = {}
        for node in self.nodes:  # node ids ascend, so predecessors are done
            chain[node] = 1 + max((chain[p] for p in self._preds[node]), default=0)
            best = max(best, chain[node])
        return best

    def to_json(self) -> str:
        return json.dumps(
            {"nodes": list(self.nodes), "edges": sorted(self.edges)},
            indent=2,
            sort_keys=True,
        )

    def to_dot(self) -> str:
        lines = ["digraph dataflow {"]
        for node in self.nodes:
            lines.append(f"  n{node} [label=\"{node}\"];")
        for j, i in sorted(self.edges):
            lines.append(f"  n{j} -> n{i};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_dataflow(netlist: Netlist) -> DataflowGraph:
    """Edge j -> i for every earlier, qubit-sharing, non-exchangeable j."""
    edges = set()
    instrs = netlist.instructions
    for bi, b in enumerate(instrs):
        for a in instrs[:bi]:
            if set(a.qubits) & set(b.qubits) and not exchangeable(a, b):
                edges.add((a.id, b.id))
    return DataflowGraph(tuple(i.id for i in instrs), frozenset(edges))


@dataclass(frozen=True)
class ScheduleWindow:
    """Per-instruction feasible stage interval [t_asap, t_alap] at a horizon."""

    horizon: int
    asap: dict[int, int]
    alap: dict[int, int]

    def window(self, instr_id: int) -> tuple[int, int]:
        return self.asap[instr_id], self.alap[instr_id]

    def slack(self, instr_id: int) -> int:
        return self.alap[instr_id] - self.asap[instr_id]

    def stages(self, instr_id: int) -> range:
        return range(self.asap[instr_id], self.alap[instr_id] + 1)


def asap_alap(graph: DataflowGraph, horizon: int) -> ScheduleWindow:
    """Earliest/latest stages by longest-path DP over the dependency DAG."""
    cp = graph.critical_path_length()
    if horizon < cp:
        raise InfeasibleHorizon(
            f"horizon {horizon} below critical path length {cp}"
        )
    asap: dict[int, int] = {}
    for node in graph.nodes:
        asap[node] = 1 + max((asap[p] for p in graph.predecessors(node)), default=0)
    alap: dict[int, int] = {}
    for node in reversed(graph.nodes):
        alap[node] = min(
            (alap[s] - 1 for s in graph.successors(node)), default=horizon
        )
    return ScheduleWindow(horizon, asap, alap)


def stage_lower_bound(netlist: Netlist, graph: DataflowGraph) -> int:
    """Stages needed at least: busiest qubit vs. longest dependency chain."""
    busiest = max((len(ids) for ids in common_qubit_table(netlist).values()), default=0)
    return max(busiest, graph.critical_path_length())
