"""Gate vocabulary and netlist data model.

A netlist is an ordered list of numbered instructions; each instruction is a
gate applied to a set of control qubits and one target qubit. Uncontrolled
gates simply have an empty control set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum


class GateKind(Enum):
    H = ("H", 1)
    X = ("X", 1)
    T = ("T", 1)
    Tdg = ("Tdg", 1)
    S = ("S", 1)
    CX = ("CX", 2)
    CY = ("CY", 2)
    CZ = ("CZ", 2)
    CV = ("CV", 2)
    CVdg = ("CVdg", 2)
    Toffoli = ("Toffoli", 3)
    Measure = ("Measure", 1)
    PrepZ = ("PrepZ", 1)

    @property
    def label(self) -> str:
        return self.value[0]

    @property
    def arity(self) -> int:
        return self.value[1]


# Upper-cased spelling -> kind; CCX is accepted as a Toffoli alias.
GATE_ALIASES: dict[str, GateKind] = {k.label.upper(): k for k in GateKind}
GATE_ALIASES["CCX"] = GateKind.Toffoli

# Diagonal single-qubit gates commute with each other on a shared wire.
DIAGONAL_1Q = frozenset({GateKind.T, GateKind.Tdg, GateKind.S})

# State-collapsing operations never commute with anything on their wire.
NON_UNITARY = frozenset({GateKind.Measure, GateKind.PrepZ})


class NetlistError(ValueError):
    """Malformed instruction or netlist."""


@dataclass(frozen=True)
class Instruction:
    """One numbered gate. `controls` are ordered; `target` is the acted-on wire."""

    id: int
    kind: GateKind
    controls: tuple[int, ...]
    target: int

    def __post_init__(self) -> None:
        if self.id < 1:
            raise NetlistError(f"instruction id must be >= 1, got {self.id}")
        if len(self.controls) != self.kind.arity - 1:
            raise NetlistError(
                f"instruction {self.id}: {self.kind.label} takes "
                f"{self.kind.arity - 1} control(s), got {len(self.controls)}"
            )
        operands = (*self.controls, self.target)
        if len(set(operands)) != len(operands):
            raise NetlistError(f"instruction {self.id}: duplicate operand qubit")
        if any(q < 0 for q in operands):
            raise NetlistError(f"instruction {self.id}: negative qubit index")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (*self.controls, self.target)

    def __str__(self) -> str:
        ops = ",".join(f"q{q}" for q in self.qubits)
        return f"{self.kind.label} {ops}"


@dataclass(frozen=True)
class Netlist:
    instructions: tuple[Instruction, ...]
    qubit_count: int

    def __post_init__(self) -> None:
        for pos, instr in enumerate(self.instructions, start=1):
            if instr.id != pos:
                raise NetlistError(
                    f"instruction ids must be 1..n in order; position {pos} has id {instr.id}"
                )
            for q in instr.qubits:
                if q >= self.qubit_count:
                    raise NetlistError(
                        f"instruction {instr.id}: qubit q{q} outside qubit_count {self.qubit_count}"
                    )

    def __len__(self) -> int:
        return len(self.instructions)

    def __getitem__(self, instr_id: int) -> Instruction:
        """Look up an instruction by its 1-based id."""
        return self.instructions[instr_id - 1]

    def to_json(self) -> str:
        payload = {
            "qubit_count": self.qubit_count,
            "instructions": [
                {
                    "id": i.id,
                    "kind": i.kind.label,
                    "controls": list(i.controls),
                    "target": i.target,
                }
                for i in self.instructions
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "Netlist":
        payload = json.loads(text)
        instrs = tuple(
            Instruction(
                id=entry["id"],
                kind=GATE_ALIASES[entry["kind"].upper()],
                controls=tuple(entry["controls"]),
                target=entry["target"],
            )
            for entry in payload["instructions"]
        )
        return Netlist(instrs, payload["qubit_count"])


def make_netlist(gates: list[tuple[GateKind, tuple[int, ...], int]]) -> Netlist:
    """Build a netlist from (kind, controls, target) triples, numbering from 1."""
    instrs = tuple(
        Instruction(i, kind, controls, target)
        for i, (kind, controls, target) in enumerate(gates, start=1)
    )
    qubit_count = 1 + max((q for ins in instrs for q in ins.qubits), default=-1)
    return Netlist(instrs, qubit_count)
