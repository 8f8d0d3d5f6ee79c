"""Command-line pipeline: parse, schedule, draw, tile, route, simulate.

Every stage writes its artifact as a file so intermediate results can be
inspected or fed to external tools. Outputs are byte-stable across runs.

Exit codes: 0 success, 2 parse/input error, 3 infeasible or solver budget
exhausted, 4 layout error, 5 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuits import generate_cat_circuit
from .compact import compact
from .decompose import DecomposeError, Library, decompose
from .depgraph import asap_alap, build_dataflow, stage_lower_bound
from .drawing import validate_drawing
from .gates import Netlist, NetlistError
from .ilp import emit_ilp, to_lp_text
from .latency import LatencyConfigError, load_latency_model, simulate
from .macrolayout import LayoutError, place_qubits, route, tile
from .orthogonal import orthogonalize
from .planar import PlanarizeError, planarize
from .qasm import QasmError, parse_qasm
from .qfg import build_qfg
from .solver import (
    Schedule,
    SolverBudgetExceeded,
    oracle_min_stages,
    schedule_netlist,
    validate,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SOLVER = 3
EXIT_LAYOUT = 4
EXIT_IO = 5


class _Emitter:
    def __init__(self, out_dir: str, formats: set[str]):
        self.dir = Path(out_dir)
        self.formats = formats

    def write(self, name: str, text: str, fmt: str = "json") -> None:
        if fmt != "json" and fmt not in self.formats:
            return
        self.dir.mkdir(parents=True, exist_ok=True)
        (self.dir / name).write_text(text, encoding="utf-8")


def _read_netlist(path: str) -> Netlist:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith(".json"):
        netlist = Netlist.from_json(text)
    else:
        netlist = parse_qasm(text)
    if not netlist.instructions:
        raise QasmError("empty netlist", 1)
    return netlist


def _pipeline(netlist: Netlist, args, emit: _Emitter, upto: str) -> int:
    if args.library != "none":
        lib = Library.CV_LIBRARY if args.library == "cv" else Library.FT_LIBRARY
        netlist = decompose(netlist, lib)
    emit.write("netlist.json", netlist.to_json())
    if upto == "parse":
        print(f"parsed {len(netlist)} instructions on {netlist.qubit_count} qubits")
        return EXIT_OK

    graph = build_dataflow(netlist)
    emit.write("dataflow.json", graph.to_json())
    emit.write("dataflow.dot", graph.to_dot(), "dot")
    schedule = schedule_netlist(
        netlist, node_budget=args.node_budget, time_budget=args.time_budget, graph=graph
    )
    windows_model = emit_ilp(
        netlist, graph, asap_alap(graph, schedule.horizon), schedule.horizon
    )
    emit.write("schedule.json", schedule.to_json())
    emit.write("model.lp", to_lp_text(windows_model), "lp")
    violations = validate(netlist, graph, schedule)
    assert not violations, violations
    print(f"scheduled in {schedule.stage_count} stages (lower bound {stage_lower_bound(netlist, graph)})")
    if upto == "schedule":
        return EXIT_OK

    qfg = build_qfg(netlist, schedule)
    emit.write("qfg.json", qfg.to_json())
    emit.write("qfg.dot", qfg.to_dot(), "dot")
    pg = planarize(qfg)
    drawing = compact(pg, orthogonalize(pg))
    problems = validate_drawing(drawing)
    if problems:
        raise LayoutError(f"invalid drawing: {problems[0]}")
    emit.write("drawing.json", drawing.to_json())
    emit.write("drawing.svg", drawing.to_svg(), "svg")
    layout = tile(drawing)
    emit.write("layout.json", layout.to_json())
    emit.write("layout.txt", layout.to_text())
    emit.write("layout.svg", layout.to_svg(), "svg")
    if upto == "layout":
        print(f"layout: {len(layout.blocks)} macroblocks, {len(layout.gate_location_of)} gate locations")
        return EXIT_OK

    plan = route(qfg, drawing, layout)
    placement = place_qubits(netlist, schedule, layout)
    model = load_latency_model(args.latency_config)
    report = simulate(netlist, schedule, layout, plan, placement, model)
    emit.write("latency.json", report.to_json())
    print(f"total latency: {report.total} us over {schedule.stage_count} stages")
    return EXIT_OK


def _cmd_verify(args) -> int:
    netlist = _read_netlist(args.netlist)
    schedule = Schedule.from_json(Path(args.schedule).read_text(encoding="utf-8"))
    graph = build_dataflow(netlist)
    violations = validate(netlist, graph, schedule)
    if not violations:
        print("OK, 0 violations")
        return EXIT_OK
    for v in violations:
        print(f"series-{v.series} violation: {v.message}")
    return EXIT_SOLVER


def _cmd_oracle(args) -> int:
    netlist = _read_netlist(args.netlist)
    graph = build_dataflow(netlist)
    stages = oracle_min_stages(netlist, graph)
    print(f"{stages} stages")
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--library", choices=["cv", "ft", "none"], default="none",
                        help="decompose Toffoli gates into this gate library")
    parser.add_argument("--latency-config", default=None, metavar="PATH")
    parser.add_argument("--emit", default="json", metavar="FMTS",
                        help="comma list of extra outputs: dot,svg,lp,json")
    parser.add_argument("--node-budget", type=int, default=None, metavar="N")
    parser.add_argument("--time-budget", type=float, default=None, metavar="SECS")
    parser.add_argument("--out", default="out", metavar="DIR")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ionpd",
        description="Ion-trap physical design: ILP scheduling, layout generation and latency simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("parse", "parse a netlist and write canonical JSON"),
        ("schedule", "run through ILP scheduling"),
        ("layout", "run through macroblock layout generation"),
        ("latency", "run the full pipeline including timing simulation"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="netlist file (.qasm text or canonical .json)")
        _add_common(p)
    p = sub.add_parser("cat-gen", help="generate an n-qubit Cat-state circuit, then run the full pipeline")
    p.add_argument("n", type=int)
    _add_common(p)
    p = sub.add_parser("verify", help="validate a schedule file against a netlist")
    p.add_argument("netlist")
    p.add_argument("schedule")
    p = sub.add_parser("oracle", help="exhaustive minimal stage count (small netlists)")
    p.add_argument("netlist")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "oracle":
            return _cmd_oracle(args)
        emit = _Emitter(args.out, set(args.emit.split(",")))
        if args.command == "cat-gen":
            if args.n < 2:
                print("error: cat circuit needs n >= 2", file=sys.stderr)
                return EXIT_PARSE
            netlist = generate_cat_circuit(args.n)
            return _pipeline(netlist, args, emit, "latency")
        netlist = _read_netlist(args.input)
        return _pipeline(netlist, args, emit, args.command)
    except (QasmError, NetlistError, DecomposeError, LatencyConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SolverBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (PlanarizeError, LayoutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LAYOUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
