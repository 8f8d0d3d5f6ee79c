"""Macroblock grid layout: tiling a drawing, qubit placement and routing.

Every macroblock occupies a 3x3 footprint of trap cells and electrodes and
connects to neighbours through up to four ports. Gate locations exist only
on straight channel blocks, never at turns or junctions, so an instruction
whose drawing node is a corner or junction gets its gate shifted into the
first channel block of one of its incident edges. One drawing grid unit maps
to three macroblocks, which leaves that channel block free by construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .drawing import EdgeKey, OrthogonalDrawing, Point
from .gates import Netlist
from .qfg import QubitFlowGraph
from .solver import Schedule

SCALE = 3

# direction name -> grid delta (y grows downward)
DIRS: dict[str, Point] = {"E": (1, 0), "S": (0, 1), "W": (-1, 0), "N": (0, -1)}
OPPOSITE = {"E": "W", "W": "E", "N": "S", "S": "N"}
_ORDER = ("E", "S", "W", "N")


class LayoutError(ValueError):
    """Inconsistent port demands or unroutable endpoints."""


@dataclass(frozen=True)
class Macroblock:
    ports: frozenset[str]
    gate_of: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.gate_of and self.ports not in (
            frozenset({"E", "W"}),
            frozenset({"N", "S"}),
        ):
            raise LayoutError(
                f"gate location requires a straight block, have ports {sorted(self.ports)}"
            )

    @property
    def has_gate_location(self) -> bool:
        return bool(self.gate_of)

    @property
    def kind(self) -> str:
        ports = self.ports
        if ports == frozenset({"E", "W"}):
            return "GATE_STRAIGHT_H" if self.gate_of else "STRAIGHT_H"
        if ports == frozenset({"N", "S"}):
            return "GATE_STRAIGHT_V" if self.gate_of else "STRAIGHT_V"
        if len(ports) == 4:
            return "CROSS"
        if len(ports) == 3:
            return "TEE_" + "".join(p for p in _ORDER if p in ports)
        if len(ports) == 2:
            return "TURN_" + "".join(p for p in _ORDER if p in ports)
        if len(ports) == 1:
            return "DEAD_END_" + next(iter(ports))
        raise LayoutError("macroblock with no ports")


@dataclass(frozen=True)
class MacroLayout:
    blocks: dict[Point, Macroblock]
    gate_location_of: dict[int, Point]
    node_cell: dict[int, Point]

    def channel_graph(self) -> dict[Point, list[Point]]:
        adjacency: dict[Point, list[Point]] = {cell: [] for cell in self.blocks}
        for cell, block in self.blocks.items():
            for port in block.ports:
                dx, dy = DIRS[port]
                other = (cell[0] + dx, cell[1] + dy)
                if other in self.blocks and OPPOSITE[port] in self.blocks[other].ports:
                    adjacency[cell].append(other)
        return {cell: sorted(neigh) for cell, neigh in adjacency.items()}

    def check_ports(self) -> None:
        """Every open port must face a matching open port."""
        for cell, block in sorted(self.blocks.items()):
            for port in sorted(block.ports):
                dx, dy = DIRS[port]
                other = (cell[0] + dx, cell[1] + dy)
                neighbour = self.blocks.get(other)
                if neighbour is None or OPPOSITE[port] not in neighbour.ports:
                    raise LayoutError(
                        f"port {port} of block at {cell} faces no matching port"
                    )

    def to_json(self) -> str:
        payload = {
            "blocks": [
                {
                    "x": x,
                    "y": y,
                    "kind": block.kind,
                    "ports": sorted(block.ports),
                    "gates": list(block.gate_of),
                }
                for (x, y), block in sorted(self.blocks.items())
            ],
            "gate_locations": [
                {"instruction": i, "x": x, "y": y}
                for i, (x, y) in sorted(self.gate_location_of.items())
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_text(self) -> str:
        """Cell-level glyph grid: '#' electrode, '.' channel, digit gate trap."""
        if not self.blocks:
            return "(empty layout)\n"
        xs = [x for x, _ in self.blocks]
        ys = [y for _, y in self.blocks]
        x0, y0 = min(xs), min(ys)
        width = (max(xs) - x0 + 1) * 3
        height = (max(ys) - y0 + 1) * 3
        grid = [["  "] * width for _ in range(height)]
        for (bx, by), block in self.blocks.items():
            cx, cy = (bx - x0) * 3, (by - y0) * 3
            for dy in range(3):
                for dx in range(3):
                    grid[cy + dy][cx + dx] = "##"
            grid[cy + 1][cx + 1] = ".."
            for port in block.ports:
                dx, dy = DIRS[port]
                grid[cy + 1 + dy][cx + 1 + dx] = ".."
            if block.gate_of:
                grid[cy + 1][cx + 1] = f"{block.gate_of[0]:2d}"
        lines = ["".join(row).rstrip() for row in grid]
        legend = [
            f"gate {i} at block ({x},{y})"
            for i, (x, y) in sorted(self.gate_location_of.items())
        ]
        return "\n".join(lines + legend) + "\n"

    def to_svg(self, cell: int = 10) -> str:
        if not self.blocks:
            return '<svg xmlns="http://www.w3.org/2000/svg" width="10" height="10"/>\n'
        xs = [x for x, _ in self.blocks]
        ys = [y for _, y in self.blocks]
        x0, y0 = min(xs), min(ys)
        width = (max(xs) - x0 + 1) * 3 * cell
        height = (max(ys) - y0 + 1) * 3 * cell
        parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
        ]
        for (bx, by), block in sorted(self.blocks.items()):
            cx, cy = (bx - x0) * 3, (by - y0) * 3
            cells = {(1, 1)}
            cells.update((1 + DIRS[p][0], 1 + DIRS[p][1]) for p in block.ports)
            for dy in range(3):
                for dx in range(3):
                    if (dx, dy) in cells:
                        colour = "black" if block.gate_of and (dx, dy) == (1, 1) else "white"
                    else:
                        colour = "#aaaaaa"
                    parts.append(
                        f'<rect x="{(cx + dx) * cell}" y="{(cy + dy) * cell}" '
                        f'width="{cell}" height="{cell}" fill="{colour}" stroke="#666" stroke-width="0.5"/>'
                    )
            if block.gate_of:
                parts.append(
                    f'<text x="{(cx + 1) * cell + cell // 2}" y="{(cy + 1) * cell + cell - 2}" '
                    f'font-size="{cell - 2}" text-anchor="middle" fill="white">{block.gate_of[0]}</text>'
                )
        parts.append("</svg>")
        return "\n".join(parts) + "\n"


def _direction(a: Point, b: Point) -> str:
    dx, dy = b[0] - a[0], b[1] - a[1]
    for name, (ux, uy) in DIRS.items():
        if (dx > 0) - (dx < 0) == ux and (dy > 0) - (dy < 0) == uy:
            return name
    raise LayoutError(f"points {a} and {b} are not axis-aligned")


def _cells_between(a: Point, b: Point) -> list[Point]:
    """Grid cells from a to b exclusive of a, inclusive of b."""
    dx = (b[0] > a[0]) - (b[0] < a[0])
    dy = (b[1] > a[1]) - (b[1] < a[1])
    cells = []
    cur = a
    while cur != b:
        cur = (cur[0] + dx, cur[1] + dy)
        cells.append(cur)
    return cells


def polyline_cells(points: tuple[Point, ...]) -> list[Point]:
    """Expand a scaled polyline into its full cell sequence."""
    cells = [points[0]]
    for a, b in zip(points, points[1:]):
        cells.extend(_cells_between(a, b))
    return cells


def tile(drawing: OrthogonalDrawing) -> MacroLayout:
    """Convert a drawing into a port-consistent macroblock grid."""
    demands: dict[Point, set[str]] = {}
    scaled_routes: dict[EdgeKey, list[Point]] = {}
    for key, pts in sorted(drawing.routes.items()):
        scaled = tuple((x * SCALE, y * SCALE) for x, y in pts)
        cells = polyline_cells(scaled)
        scaled_routes[key] = cells
        for a, b in zip(cells, cells[1:]):
            d = _direction(a, b)
            demands.setdefault(a, set()).add(d)
            demands.setdefault(b, set()).add(OPPOSITE[d])

    node_cell = {i: (x * SCALE, y * SCALE) for i, (x, y) in drawing.node_pos.items()}
    blocks: dict[Point, set[str]] = {cell: set(ports) for cell, ports in demands.items()}
    gate_cells: dict[int, Point] = {}
    gate_marks: dict[Point, list[int]] = {}

    for instr in sorted(node_cell):
        cell = node_cell[instr]
        ports = blocks.get(cell, set())
        straight = ports in ({"E", "W"}, {"N", "S"})
        if len(ports) <= 1 or straight:
            # the node block itself can host the trap; cap any open ends
            if not ports:
                ports = {"E", "W"}
            elif len(ports) == 1:
                ports = ports | {OPPOSITE[next(iter(ports))]}
            blocks[cell] = ports
            gate_cells[instr] = cell
            gate_marks.setdefault(cell, []).append(instr)
            for port in sorted(ports):
                dx, dy = DIRS[port]
                neighbour = (cell[0] + dx, cell[1] + dy)
                if neighbour not in blocks:
                    blocks[neighbour] = {OPPOSITE[port]}
        else:
            # corner or junction: shift the gate into an owned channel block
            host_dir = next(d for d in _ORDER if d in ports)
            dx, dy = DIRS[host_dir]
            host = (cell[0] + dx, cell[1] + dy)
            if host in gate_marks or host in node_cell.values():
                raise LayoutError(f"no free gate block next to junction at {cell}")
            gate_cells[instr] = host
            gate_marks.setdefault(host, []).append(instr)

    built: dict[Point, Macroblock] = {}
    for cell, ports in blocks.items():
        gates = tuple(gate_marks.get(cell, ()))
        axis_ok = ports in ({"E", "W"}, {"N", "S"})
        if gates and not axis_ok:
            raise LayoutError(
                f"inconsistent port demands at {cell}: gate on ports {sorted(ports)}"
            )
        built[cell] = Macroblock(frozenset(ports), gates)

    layout = MacroLayout(built, gate_cells, node_cell)
    layout.check_ports()
    return layout


@dataclass(frozen=True)
class RouteStep:
    cell: Point
    turn: bool


@dataclass(frozen=True)
class RoutePlan:
    steps: dict[tuple[int, EdgeKey], tuple[RouteStep, ...]]  # keyed (qubit, edge)
    movers: dict[int, tuple[int, ...]]  # instruction -> qubits that move to it

    def straights_and_turns(self, qubit: int, edge: EdgeKey) -> tuple[int, int]:
        """Straight-move units (three per block) and turn count of one leg."""
        steps = self.steps[(qubit, edge)]
        turns = sum(1 for s in steps if s.turn)
        return 3 * (len(steps) - turns), turns


def _tag_turns(path: list[Point]) -> tuple[RouteStep, ...]:
    steps = []
    for k in range(1, len(path)):
        d_in = _direction(path[k - 1], path[k])
        d_out = _direction(path[k], path[k + 1]) if k + 1 < len(path) else d_in
        steps.append(RouteStep(path[k], d_in != d_out))
    return tuple(steps)


def route(
    qfg: QubitFlowGraph,
    drawing: OrthogonalDrawing,
    layout: MacroLayout,
) -> RoutePlan:
    """Per-edge cell paths between gate locations, following the drawing."""
    steps: dict[tuple[int, EdgeKey], tuple[RouteStep, ...]] = {}
    for key in qfg.edges:
        i, j, qubit = key
        if key not in drawing.routes:
            raise LayoutError(f"edge {key} has no drawn route")
        scaled = tuple(
            (x * SCALE, y * SCALE) for x, y in drawing.routes[key]
        )
        cells = polyline_cells(scaled)
        start = layout.gate_location_of[i]
        end = layout.gate_location_of[j]
        # a displaced gate sits either on this route's first/last channel
        # block or one hop off it along another edge of the same node
        if cells[0] != start:
            if len(cells) > 1 and cells[1] == start:
                cells = cells[1:]
            elif abs(start[0] - cells[0][0]) + abs(start[1] - cells[0][1]) == 1:
                cells = [start] + cells
            else:
                raise LayoutError(f"gate of {i} disconnected from route {key}")
        if cells[-1] != end:
            if len(cells) > 1 and cells[-2] == end:
                cells = cells[:-1]
            elif abs(end[0] - cells[-1][0]) + abs(end[1] - cells[-1][1]) == 1:
                cells = cells + [end]
            else:
                raise LayoutError(f"gate of {j} disconnected from route {key}")
        steps[(qubit, key)] = _tag_turns(cells) if len(cells) > 1 else ()

    movers: dict[int, tuple[int, ...]] = {}
    location = dict(place_qubits_from_first_use(qfg, layout))
    incoming: dict[int, list[int]] = {n: [] for n in qfg.nodes}
    for i, j, qubit in qfg.edges:
        incoming[j].append(qubit)
    for qubit, first in sorted(qfg.first_use.items()):
        incoming[first].append(qubit)
    for node in sorted(qfg.nodes, key=lambda n: (qfg.stage_of[n], n)):
        cell = layout.gate_location_of[node]
        moving = sorted(q for q in incoming[node] if location[q] != cell)
        for qubit in incoming[node]:
            location[qubit] = cell
        movers[node] = tuple(moving)
    return RoutePlan(steps, movers)


def place_qubits_from_first_use(
    qfg: QubitFlowGraph, layout: MacroLayout
) -> dict[int, Point]:
    return {
        qubit: layout.gate_location_of[first]
        for qubit, first in sorted(qfg.first_use.items())
    }


def place_qubits(
    netlist: Netlist, schedule: Schedule, layout: MacroLayout
) -> dict[int, Point]:
    """Initial placement: each qubit starts at its first-use gate location.

    Qubits the netlist never touches park on the free cell nearest the
    origin; they play no further part in routing or timing.
    """
    first_use: dict[int, int] = {}
    for instr in netlist.instructions:
        for q in instr.qubits:
            if q not in first_use or (
                schedule.stage_of[instr.id] < schedule.stage_of[first_use[q]]
            ):
                first_use[q] = instr.id
    placement = {
        q: layout.gate_location_of[i] for q, i in sorted(first_use.items())
    }
    idle = _idle_cell(layout)
    for q in range(netlist.qubit_count):
        if q not in placement:
            placement[q] = idle
    return placement


def _idle_cell(layout: MacroLayout) -> Point:
    k = 0
    while True:
        for x in range(k + 1):
            cell = (x, k - x)
            if cell not in layout.blocks:
                return cell
        k += 1
