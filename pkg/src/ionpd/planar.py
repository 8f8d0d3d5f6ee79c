"""Planarization of the qubit flow graph.

Edges are inserted one by one into a maintained planar subgraph; each edge
that breaks planarity is routed afterwards through the face-adjacency dual
of the current embedding along a fewest-crossings path, and every crossing
becomes a degree-4 dummy vertex. Parallel edges are split with a routing
dummy first so the working graph stays simple.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import networkx as nx

from .qfg import QubitFlowGraph

Node = object  # int for instructions, str for dummies ("x0" crossing, "s0" split)
HalfEdge = tuple  # (tail, head)


class PlanarizeError(ValueError):
    """Input unusable for drawing (node degree above four)."""


def node_key(v: Node):
    """Deterministic sort key over mixed int/str node ids."""
    return (0, v, "") if isinstance(v, int) else (1, 0, v)


def faces_from_embedding(adj: dict[Node, list[Node]]) -> list[list[HalfEdge]]:
    """Trace all face walks of a rotation system (clockwise neighbour lists)."""
    faces: list[list[HalfEdge]] = []
    seen: set[HalfEdge] = set()
    for u in sorted(adj, key=node_key):
        for v in adj[u]:
            if (u, v) in seen:
                continue
            walk: list[HalfEdge] = []
            cur = (u, v)
            while cur not in seen:
                seen.add(cur)
                walk.append(cur)
                tail, head = cur
                ring = adj[head]
                nxt = ring[(ring.index(tail) + 1) % len(ring)]
                cur = (head, nxt)
            faces.append(walk)
    return faces


@dataclass(frozen=True)
class PlanarizedGraph:
    nodes: tuple[Node, ...]
    adj: dict[Node, list[Node]]  # combinatorial embedding
    crossings: frozenset[str]
    splits: frozenset[str]
    chains: dict[tuple[int, int, int], list[Node]]  # QFG edge -> node path

    def faces(self) -> list[list[HalfEdge]]:
        return faces_from_embedding(self.adj)

    def components(self) -> list[list[Node]]:
        remaining = set(self.nodes)
        out: list[list[Node]] = []
        for start in sorted(self.nodes, key=node_key):
            if start not in remaining:
                continue
            stack, comp = [start], []
            remaining.discard(start)
            while stack:
                cur = stack.pop()
                comp.append(cur)
                for nxt in self.adj.get(cur, []):
                    if nxt in remaining:
                        remaining.discard(nxt)
                        stack.append(nxt)
            out.append(sorted(comp, key=node_key))
        return out

    def check_euler(self) -> None:
        """V - E + F = 2 within every connected component."""
        for comp in self.components():
            comp_set = set(comp)
            edge_count = sum(len(self.adj.get(v, [])) for v in comp) // 2
            if edge_count == 0:
                continue
            face_count = sum(
                1 for walk in self.faces() if walk[0][0] in comp_set
            )
            if len(comp) - edge_count + face_count != 2:
                raise AssertionError(
                    f"Euler check failed: V={len(comp)} E={edge_count} F={face_count}"
                )


def _fresh_embedding(graph: nx.Graph) -> dict[Node, list[Node]]:
    is_planar, embedding = nx.check_planarity(graph)
    if not is_planar:
        raise AssertionError("working graph lost planarity")
    data = embedding.get_data()
    return {v: data.get(v, []) for v in sorted(graph.nodes, key=node_key)}


def _route_through_faces(
    adj: dict[Node, list[Node]], u: Node, v: Node
) -> list[frozenset]:
    """Edges to cross when inserting (u, v): fewest-crossings dual path."""
    faces = faces_from_embedding(adj)
    incident: dict[Node, list[int]] = {}
    face_edges: dict[int, list[frozenset]] = {fi: [] for fi in range(len(faces))}
    edge_faces: dict[frozenset, set[int]] = {}
    for fi, walk in enumerate(faces):
        for a, b in walk:
            incident.setdefault(a, [])
            if fi not in incident[a]:
                incident[a].append(fi)
            edge = frozenset((a, b))
            if edge not in face_edges[fi]:
                face_edges[fi].append(edge)
            edge_faces.setdefault(edge, set()).add(fi)

    dist: dict[int, int] = {}
    back: dict[int, tuple[int, frozenset] | None] = {}
    heap: list[tuple[int, int, int]] = []
    for order, fi in enumerate(incident.get(u, [])):
        dist[fi] = 0
        back[fi] = None
        heapq.heappush(heap, (0, order, fi))
    target_faces = set(incident.get(v, []))
    goal = None
    counter = len(heap)
    while heap:
        d, _, fi = heapq.heappop(heap)
        if d > dist.get(fi, 1 << 30):
            continue
        if fi in target_faces:
            goal = fi
            break
        for edge in face_edges[fi]:
            if u in edge or v in edge:
                continue  # crossing an endpoint-incident edge would double an edge
            for gi in edge_faces[edge]:
                if gi != fi and d + 1 < dist.get(gi, 1 << 30):
                    dist[gi] = d + 1
                    back[gi] = (fi, edge)
                    counter += 1
                    heapq.heappush(heap, (d + 1, counter, gi))
    if goal is None:
        raise AssertionError(f"no dual route between {u} and {v}")
    crossed: list[frozenset] = []
    cur = goal
    while back[cur] is not None:
        prev, edge = back[cur]
        crossed.append(edge)
        cur = prev
    crossed.reverse()
    return crossed


def planarize(qfg: QubitFlowGraph) -> PlanarizedGraph:
    """Planar embedding of the flow graph with crossings as dummy vertices."""
    for node in qfg.nodes:
        if qfg.degree(node) > 4:
            raise PlanarizeError(
                f"node {node} has degree {qfg.degree(node)}; orthogonal drawing needs <= 4"
            )

    chains: dict[tuple[int, int, int], list[Node]] = {}
    simple_edges: list[tuple[Node, Node]] = []
    seen_pairs: set[frozenset] = set()
    splits: list[str] = []
    for key in sorted(qfg.edges):
        i, j, _ = key
        pair = frozenset((i, j))
        if pair in seen_pairs:
            dummy = f"s{len(splits)}"
            splits.append(dummy)
            chains[key] = [i, dummy, j]
            simple_edges.append((i, dummy))
            simple_edges.append((dummy, j))
        else:
            seen_pairs.add(pair)
            chains[key] = [i, j]
            simple_edges.append((i, j))

    graph = nx.Graph()
    for node in sorted(qfg.nodes, key=node_key):
        graph.add_node(node)
    for dummy in splits:
        graph.add_node(dummy)

    deferred: list[tuple[Node, Node]] = []
    for a, b in simple_edges:
        graph.add_edge(a, b)
        if not nx.check_planarity(graph)[0]:
            graph.remove_edge(a, b)
            deferred.append((a, b))

    crossings: list[str] = []

    def split_chain(edge: frozenset, dummy: str) -> None:
        a, b = sorted(edge, key=node_key)
        for path in chains.values():
            for pos in range(len(path) - 1):
                if {path[pos], path[pos + 1]} == {a, b}:
                    path.insert(pos + 1, dummy)
                    return
        raise AssertionError(f"crossed edge {a}-{b} not found in any chain")

    for a, b in deferred:
        adj = _fresh_embedding(graph)
        crossed = _route_through_faces(adj, a, b)
        prev = a
        for edge in crossed:
            x, y = sorted(edge, key=node_key)
            dummy = f"x{len(crossings)}"
            crossings.append(dummy)
            graph.remove_edge(x, y)
            graph.add_edge(x, dummy)
            graph.add_edge(dummy, y)
            split_chain(edge, dummy)
            graph.add_edge(prev, dummy)
            prev = dummy
        graph.add_edge(prev, b)
        inserted = crossings[len(crossings) - len(crossed):]
        _splice_chain(chains, a, b, [a, *inserted, b])

    adj = _fresh_embedding(graph)
    pg = PlanarizedGraph(
        nodes=tuple(sorted(graph.nodes, key=node_key)),
        adj=adj,
        crossings=frozenset(crossings),
        splits=frozenset(splits),
        chains=chains,
    )
    pg.check_euler()
    return pg


def _splice_chain(chains: dict, a: Node, b: Node, new_path: list[Node]) -> None:
    for key, path in chains.items():
        for pos in range(len(path) - 1):
            if {path[pos], path[pos + 1]} == {a, b}:
                orientation = new_path if path[pos] == a else list(reversed(new_path))
                chains[key] = path[:pos] + orientation + path[pos + 2:]
                return
    raise AssertionError(f"deferred edge {a}-{b} not found in chains")
