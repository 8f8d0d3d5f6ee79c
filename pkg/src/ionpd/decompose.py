"""Toffoli expansion into the two supported two-qubit gate libraries.

CV_LIBRARY replaces each Toffoli with the classic five-gate network of
controlled square roots of X; FT_LIBRARY uses only H/T/Tdg/S/CX (the last
T of the textbook network is rewritten as Tdg followed by S, which is the
same operator and keeps the library free of plain T-phase duplicates the
fault-tolerant protocol costs separately).
"""

from __future__ import annotations

from enum import Enum

from .gates import GateKind, Instruction, Netlist


class Library(Enum):
    CV_LIBRARY = "cv"
    FT_LIBRARY = "ft"


class DecomposeError(ValueError):
    """Gate kind with no expansion rule in the chosen library."""


def _cv_expansion(c1: int, c2: int, t: int) -> list[tuple[GateKind, tuple[int, ...], int]]:
    return [
        (GateKind.CV, (c2,), t),
        (GateKind.CX, (c1,), c2),
        (GateKind.CVdg, (c2,), t),
        (GateKind.CX, (c1,), c2),
        (GateKind.CV, (c1,), t),
    ]


def _ft_expansion(c1: int, c2: int, t: int) -> list[tuple[GateKind, tuple[int, ...], int]]:
    return [
        (GateKind.H, (), t),
        (GateKind.CX, (c2,), t),
        (GateKind.Tdg, (), t),
        (GateKind.CX, (c1,), t),
        (GateKind.T, (), t),
        (GateKind.CX, (c2,), t),
        (GateKind.Tdg, (), t),
        (GateKind.CX, (c1,), t),
        (GateKind.T, (), c2),
        (GateKind.T, (), t),
        (GateKind.H, (), t),
        (GateKind.CX, (c1,), c2),
        (GateKind.Tdg, (), c1),
        (GateKind.S, (), c1),
        (GateKind.Tdg, (), c2),
        (GateKind.CX, (c1,), c2),
    ]


def decompose(netlist: Netlist, library: Library) -> Netlist:
    """Expand every Toffoli in place and renumber the result 1..n."""
    out: list[Instruction] = []
    for instr in netlist.instructions:
        if instr.kind is not GateKind.Toffoli:
            if instr.kind.arity > 2:
                raise DecomposeError(
                    f"no {library.value} expansion rule for {instr.kind.label}"
                )
            out.append(
                Instruction(len(out) + 1, instr.kind, instr.controls, instr.target)
            )
            continue
        c1, c2 = instr.controls
        expansion = (
            _cv_expansion(c1, c2, instr.target)
            if library is Library.CV_LIBRARY
            else _ft_expansion(c1, c2, instr.target)
        )
        for kind, controls, target in expansion:
            out.append(Instruction(len(out) + 1, kind, controls, target))
    return Netlist(tuple(out), netlist.qubit_count)
