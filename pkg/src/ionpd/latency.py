"""Timing model and event-driven latency simulation.

Physical operation costs in microseconds (defaults): one-qubit gate 1,
two-qubit gate 10, measurement 50, zero prepare 51, straight move 1 per
trap cell, turn 10. Crossing a macroblock in a straight line therefore
costs three straight-move units; traversing a turn, or changing direction
inside a junction, costs one turn unit.

Stages order gates but are not barriers: an instruction starts as soon as
its qubits have arrived at its gate location. Channel congestion is
first-come-first-served per block; the later ion waits, ties broken by
instruction id through the deterministic processing order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

from .depgraph import build_dataflow
from .gates import GateKind, Netlist
from .macrolayout import MacroLayout, Point, RoutePlan
from .solver import Schedule, validate

_FIELDS = (
    "one_qubit_gate",
    "two_qubit_gate",
    "measurement",
    "zero_prepare",
    "straight_move",
    "turn",
)


class LatencyConfigError(ValueError):
    """Malformed latency configuration."""


@dataclass(frozen=True)
class LatencyModel:
    one_qubit_gate: float = 1.0
    two_qubit_gate: float = 10.0
    measurement: float = 50.0
    zero_prepare: float = 51.0
    straight_move: float = 1.0
    turn: float = 10.0

    def __post_init__(self) -> None:
        for name in _FIELDS:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise LatencyConfigError(f"{name} must be a positive number, got {value!r}")

    def gate_cost(self, kind: GateKind) -> float:
        if kind is GateKind.Measure:
            return self.measurement
        if kind is GateKind.PrepZ:
            return self.zero_prepare
        if kind.arity == 1:
            return self.one_qubit_gate
        if kind.arity == 2:
            return self.two_qubit_gate
        raise ValueError(
            f"{kind.label} has no direct cost; decompose it into two-qubit gates first"
        )


def load_latency_model(path: str | None) -> LatencyModel:
    """Read `key = value` lines; unset keys keep their defaults."""
    if path is None:
        return LatencyModel()
    overrides: dict[str, float] = {}
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise LatencyConfigError(f"line {line_no}: expected 'key = value'")
            key, _, value = (part.strip() for part in line.partition("="))
            if key not in _FIELDS:
                raise LatencyConfigError(f"line {line_no}: unknown key {key!r}")
            try:
                overrides[key] = float(value)
            except ValueError as exc:
                raise LatencyConfigError(f"line {line_no}: bad number {value!r}") from exc
    return replace(LatencyModel(), **overrides)


def cat_latency_formula(n: int, model: LatencyModel | None = None) -> float:
    """Closed-form latency of the n-qubit Cat-state circuit on its layout."""
    if n < 2:
        raise ValueError(f"cat latency defined for n >= 2, got {n}")
    m = model or LatencyModel()
    half = (n - 1) // 2 if n % 2 else n // 2
    return (
        m.one_qubit_gate
        + 2 * m.turn
        + (half + 2) * m.two_qubit_gate
        + (half + 4) * 3 * m.straight_move
    )


@dataclass(frozen=True)
class Movement:
    qubit: int
    edge: tuple[int, int, int]
    straights: int
    turns: int
    delay: float


@dataclass(frozen=True)
class InstructionTiming:
    instruction: int
    start: float
    finish: float


@dataclass(frozen=True)
class LatencyReport:
    total: float
    timings: tuple[InstructionTiming, ...]
    movements: tuple[Movement, ...]
    movement_time: dict[int, float]  # per qubit
    congestion_delay: float

    def to_json(self) -> str:
        payload = {
            "total_us": self.total,
            "congestion_delay_us": self.congestion_delay,
            "instructions": [
                {"id": t.instruction, "start": t.start, "finish": t.finish}
                for t in self.timings
            ],
            "movements": [
                {
                    "qubit": m.qubit,
                    "edge": list(m.edge),
                    "straights": m.straights,
                    "turns": m.turns,
                    "delay": m.delay,
                }
                for m in self.movements
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def simulate(
    netlist: Netlist,
    schedule: Schedule,
    layout: MacroLayout,
    routes: RoutePlan,
    placement: dict[int, Point],
    model: LatencyModel | None = None,
) -> LatencyReport:
    """Availability-time simulation of a placed, routed, scheduled circuit."""
    m = model or LatencyModel()
    violations = validate(netlist, build_dataflow(netlist), schedule)
    if violations:
        raise ValueError(f"invalid schedule: {violations[0].message}")

    qubit_free: dict[int, float] = {}
    qubit_loc: dict[int, Point] = {}
    cell_free: dict[Point, float] = {}
    gate_free: dict[Point, float] = {}
    last_use: dict[int, int] = {}

    timings: list[InstructionTiming] = []
    movements: list[Movement] = []
    movement_time: dict[int, float] = {}
    congestion = 0.0

    order = sorted(netlist.instructions, key=lambda i: (schedule.stage_of[i.id], i.id))
    for instr in order:
        target_cell = layout.gate_location_of.get(instr.id)
        if target_cell is None:
            raise ValueError(f"instruction {instr.id} has no gate location")
        arrivals = []
        for qubit in instr.qubits:
            if qubit not in qubit_loc:
                if qubit not in placement:
                    raise ValueError(f"qubit q{qubit} has no initial placement")
                qubit_loc[qubit] = placement[qubit]
                qubit_free[qubit] = 0.0
            t = qubit_free[qubit]
            if qubit_loc[qubit] != target_cell:
                # an initial leg (qubit placed off its first gate) is keyed from 0
                edge = (last_use.get(qubit, 0), instr.id, qubit)
                leg = routes.steps.get((qubit, edge))
                if leg is None:
                    raise ValueError(f"missing route for qubit q{qubit} into {instr.id}")
                delay = 0.0
                prev_cell = qubit_loc[qubit]
                for k, step in enumerate(leg):
                    final = k == len(leg) - 1
                    if not final:  # partner ions meet inside the gate block
                        ready = cell_free.get(step.cell, 0.0)
                        if ready > t:
                            delay += ready - t
                            t = ready
                    t += m.turn if step.turn else 3 * m.straight_move
                    # a cell frees once the ion has fully entered the next one
                    cell_free[prev_cell] = max(cell_free.get(prev_cell, 0.0), t)
                    if not final:
                        cell_free[step.cell] = max(cell_free.get(step.cell, 0.0), t)
                    prev_cell = step.cell
                straights = 3 * sum(1 for s in leg if not s.turn)
                turns = sum(1 for s in leg if s.turn)
                movements.append(Movement(qubit, edge, straights, turns, delay))
                movement_time[qubit] = movement_time.get(qubit, 0.0) + (
                    straights * m.straight_move + turns * m.turn
                )
                congestion += delay
                qubit_loc[qubit] = target_cell
            arrivals.append(t)
        start = max([*arrivals, gate_free.get(target_cell, 0.0)])
        finish = start + m.gate_cost(instr.kind)
        gate_free[target_cell] = finish
        cell_free[target_cell] = max(cell_free.get(target_cell, 0.0), finish)
        for qubit in instr.qubits:
            qubit_free[qubit] = finish
            last_use[qubit] = instr.id
        timings.append(InstructionTiming(instr.id, start, finish))

    total = max((t.finish for t in timings), default=0.0)
    return LatencyReport(total, tuple(timings), tuple(movements), movement_time, congestion)
