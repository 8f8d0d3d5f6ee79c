"""Bend-minimal orthogonal representation via minimum-cost network flow.

Angles and bends are 90-degree units carried as flow: every vertex supplies
four units, each vertex-face corner consumes at least one, and each face
consumes 2*deg - 4 units (external: 2*deg + 4). Routing surplus units across
an edge from one face to the other costs one bend. An integral minimum-cost
flow therefore encodes an orthogonal representation of the fixed embedding
with the fewest bends; feasibility is guaranteed for max degree four.
"""

from __future__ import annotations

from dataclasses import dataclass

from .planar import HalfEdge, Node, PlanarizedGraph, node_key


def min_cost_flow(
    node_count: int,
    arcs: list[tuple[int, int, int, int]],  # (from, to, capacity, cost)
    demand: list[int],  # negative = supply
) -> list[int]:
    """Integral min-cost flow by successive shortest paths (Bellman-Ford)."""
    if sum(demand) != 0:
        raise ValueError("demands do not balance")
    n = node_count + 2
    source, sink = node_count, node_count + 1
    graph: list[list[int]] = [[] for _ in range(n)]
    arc_to: list[int] = []
    arc_cap: list[int] = []
    arc_cost: list[int] = []

    def add(u: int, v: int, cap: int, cost: int) -> int:
        idx = len(arc_to)
        graph[u].append(idx)
        arc_to.append(v)
        arc_cap.append(cap)
        arc_cost.append(cost)
        graph[v].append(idx + 1)
        arc_to.append(u)
        arc_cap.append(0)
        arc_cost.append(-cost)
        return idx

    base = [add(u, v, cap, cost) for u, v, cap, cost in arcs]
    need = 0
    for node, d in enumerate(demand):
        if d < 0:
            add(source, node, -d, 0)
            need += -d
        elif d > 0:
            add(node, sink, d, 0)

    sent = 0
    while sent < need:
        dist = [None] * n
        parent: list[int | None] = [None] * n
        dist[source] = 0
        for _ in range(n):
            changed = False
            for u in range(n):
                if dist[u] is None:
                    continue
                for idx in graph[u]:
                    if arc_cap[idx] > 0:
                        v = arc_to[idx]
                        nd = dist[u] + arc_cost[idx]
                        if dist[v] is None or nd < dist[v]:
                            dist[v] = nd
                            parent[v] = idx
                            changed = True
            if not changed:
                break
        if dist[sink] is None:
            raise AssertionError("flow network infeasible")
        push = need - sent
        v = sink
        while v != source:
            idx = parent[v]
            push = min(push, arc_cap[idx])
            v = arc_to[idx ^ 1]
        v = sink
        while v != source:
            idx = parent[v]
            arc_cap[idx] -= push
            arc_cap[idx ^ 1] += push
            v = arc_to[idx ^ 1]
        sent += push

    return [arc_cap[idx ^ 1] for idx in base]  # flow = residual of reverse


@dataclass(frozen=True)
class OrthoRep:
    """Faces with per-corner angles and per-half-edge convex bend counts.

    `angles[(face, corner)]` is the 90-degree units at the head vertex of
    `faces[face][corner]` inside that face; `bends[(u, v)]` counts bends
    drawn convex on the walk side of half-edge (u, v).
    """

    faces: tuple[tuple[HalfEdge, ...], ...]
    ext_face: frozenset[int]
    angles: dict[tuple[int, int], int]
    bends: dict[HalfEdge, int]

    @property
    def total_bends(self) -> int:
        return sum(self.bends.values())

    def edge_bends(self, u: Node, v: Node) -> int:
        return self.bends.get((u, v), 0) + self.bends.get((v, u), 0)

    def angle_at(self, vertex: Node) -> list[int]:
        out = []
        for fi, walk in enumerate(self.faces):
            for ci, (_, head) in enumerate(walk):
                if head == vertex:
                    out.append(self.angles[(fi, ci)])
        return out


def _component_faces(
    pg: PlanarizedGraph, faces: list[list[HalfEdge]]
) -> list[tuple[list[Node], list[int]]]:
    by_first: list[tuple[list[Node], list[int]]] = []
    for comp in pg.components():
        comp_set = set(comp)
        indices = [fi for fi, walk in enumerate(faces) if walk[0][0] in comp_set]
        by_first.append((comp, indices))
    return by_first


def orthogonalize(pg: PlanarizedGraph) -> OrthoRep:
    """Minimum-bend representation of the embedding, per component."""
    faces = pg.faces()
    degree = {v: len(pg.adj.get(v, [])) for v in pg.nodes}
    angles: dict[tuple[int, int], int] = {}
    bends: dict[HalfEdge, int] = {}
    ext_faces: set[int] = set()

    for comp, face_idx in _component_faces(pg, faces):
        if not face_idx:
            continue  # isolated node: no angles to assign
        # the external face is the longest walk (ties: smallest index)
        ext = max(face_idx, key=lambda fi: (len(faces[fi]), -fi))
        ext_faces.add(ext)

        ids: dict[object, int] = {}

        def nid(key: object) -> int:
            if key not in ids:
                ids[key] = len(ids)
            return ids[key]

        arcs: list[tuple[int, int, int, int]] = []
        corner_arcs: list[tuple[int, int]] = []
        bend_arcs: list[HalfEdge] = []
        demand_map: dict[int, int] = {}

        for v in comp:
            if degree[v]:
                demand_map[nid(("v", v))] = degree[v] - 4
        half_edge_face = {}
        for fi in face_idx:
            walk = faces[fi]
            d = len(walk)
            demand_map[nid(("f", fi))] = (d + 4) if fi == ext else (d - 4)
            for ci, he in enumerate(walk):
                half_edge_face[he] = fi
                corner_arcs.append((fi, ci))
                arcs.append((nid(("v", he[1])), nid(("f", fi)), 3, 0))
        for fi in face_idx:
            for he in faces[fi]:
                twin = (he[1], he[0])
                gi = half_edge_face[twin]
                if gi == fi:
                    continue  # bridge: bends cancel inside one face
                bend_arcs.append(he)
                arcs.append((nid(("f", fi)), nid(("f", gi)), 1 << 20, 1))

        demand = [0] * len(ids)
        for node, d in demand_map.items():
            demand[node] = d
        flows = min_cost_flow(len(ids), arcs, demand)

        pos = 0
        for fi, ci in corner_arcs:
            angles[(fi, ci)] = 1 + flows[pos]
            pos += 1
        for he in bend_arcs:
            bends[he] = flows[pos]
            pos += 1

    # cancel opposite-direction bends on one edge: a convex/reflex pair is
    # never optimal and a one-sided string keeps downstream bookkeeping simple
    for he in list(bends):
        twin = (he[1], he[0])
        common = min(bends.get(he, 0), bends.get(twin, 0))
        if common:
            bends[he] -= common
            bends[twin] -= common

    for v in pg.nodes:
        if degree[v]:
            total = 0
            for fi, walk in enumerate(faces):
                for ci, (_, head) in enumerate(walk):
                    if head == v:
                        total += angles[(fi, ci)]
            assert total == 4, f"angles around {v} sum to {total}"

    return OrthoRep(
        faces=tuple(tuple(walk) for walk in faces),
        ext_face=frozenset(ext_faces),
        angles=angles,
        bends=bends,
    )
