"""Qubit flow graph: where each qubit travels between scheduled gates.

Nodes are instructions annotated with their stage; an edge (i, j, q) says
qubit q leaves instruction i and is next used by instruction j. Per qubit
the edges form a simple path, so node degree never exceeds four for one-
and two-qubit gates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .depgraph import build_dataflow, common_qubit_table
from .gates import Netlist
from .solver import Schedule, validate


@dataclass(frozen=True)
class QubitFlowGraph:
    stage_of: dict[int, int]
    edges: tuple[tuple[int, int, int], ...]  # (from id, to id, qubit)
    first_use: dict[int, int]  # qubit -> instruction id
    last_use: dict[int, int]

    @property
    def nodes(self) -> list[int]:
        return sorted(self.stage_of)

    def degree(self, node: int) -> int:
        return sum(1 for i, j, _ in self.edges if node in (i, j))

    def incident(self, node: int) -> list[tuple[int, int, int]]:
        return [e for e in self.edges if node in e[:2]]

    def to_json(self) -> str:
        payload = {
            "nodes": [{"id": i, "stage": self.stage_of[i]} for i in self.nodes],
            "edges": [
                {"from": i, "to": j, "qubit": q} for i, j, q in self.edges
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_dot(self) -> str:
        lines = ["digraph qfg {", "  rankdir=TB;"]
        by_stage: dict[int, list[int]] = {}
        for node, stage in self.stage_of.items():
            by_stage.setdefault(stage, []).append(node)
        for stage in sorted(by_stage):
            members = " ".join(f"n{i};" for i in sorted(by_stage[stage]))
            lines.append(f"  {{ rank=same; {members} }}")
        for node in self.nodes:
            lines.append(f"  n{node} [label=\"{node}\"];")
        for i, j, q in self.edges:
            lines.append(f"  n{i} -> n{j} [label=\"q{q}\"];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_qfg(netlist: Netlist, schedule: Schedule) -> QubitFlowGraph:
    violations = validate(netlist, build_dataflow(netlist), schedule)
    if violations:
        raise ValueError(f"invalid schedule: {violations[0].message}")
    stage_of = {i.id: schedule.stage_of[i.id] for i in netlist.instructions}
    edges: list[tuple[int, int, int]] = []
    first_use: dict[int, int] = {}
    last_use: dict[int, int] = {}
    for qubit, ids in common_qubit_table(netlist).items():
        timeline = sorted(ids, key=lambda i: stage_of[i])
        first_use[qubit] = timeline[0]
        last_use[qubit] = timeline[-1]
        edges.extend(
            (i, j, qubit) for i, j in zip(timeline, timeline[1:])
        )
    edges.sort()
    return QubitFlowGraph(stage_of, tuple(edges), first_use, last_use)


def qfg_degree_check(g: QubitFlowGraph) -> bool:
    """Drawing precondition: every node has degree at most four."""
    return all(g.degree(node) <= 4 for node in g.nodes)
