"""Orientations with a chosen sink, and single-request colouring of bipartite graphs.

Given a d-degenerate graph and a target vertex, ``sink_orientation`` orients
every edge so that all out-degrees are at most d and the target has
out-degree 0.  Starting from the acyclic orientation of a degeneracy order,
it routes d edge-disjoint paths from the target to an auxiliary sink with
unit-capacity augmenting paths and reverses them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import BudgetExceeded, FalsificationAlarm, InputError
from .exact import DEFAULT_NODE_CAP, check_coloring
from .graph import Graph, degeneracy_order
from .lists import ListAssignment, Request, require_valid


@dataclass(frozen=True)
class Orientation:
    n: int
    arcs: tuple[tuple[int, int], ...]  # (tail, head), one per undirected edge

    @property
    def out_degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, _ in self.arcs:
            deg[u] += 1
        return tuple(deg)

    def out_neighbors(self) -> list[list[int]]:
        out = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return [sorted(x) for x in out]

    def serialize(self) -> str:
        return "".join(f"{u}>{v}\n" for u, v in self.arcs)


def parse_orientation(n: int, text: str) -> Orientation:
    arcs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        u, sep, v = line.partition(">")
        try:
            arcs.append((int(u), int(v)))
        except ValueError:
            raise InputError(f"bad arc '{line}' at line {lineno}") from None
        if not sep:
            raise InputError(f"bad arc '{line}' at line {lineno}")
    return Orientation(n, tuple(sorted(arcs)))


def sink_orientation(g: Graph, d: int, target: int) -> Orientation:
    if not 0 <= target < g.n:
        raise InputError(f"target {target} out of range")
    dego = degeneracy_order(g)
    if dego.d > d:
        raise InputError(f"graph is {dego.d}-degenerate, not {d}-degenerate")
    order = dego.reverse  # every vertex has at most d later neighbours
    pos = {v: i for i, v in enumerate(order)}
    k = pos[target]
    forward = {}
    out_g = [0] * g.n
    for u, v in g.edges():
        a, b = (u, v) if pos[u] < pos[v] else (v, u)
        forward[(a, b)] = 0  # flow on arc a->b
        out_g[a] += 1

    # auxiliary network on the vertices at or after the target
    SINK = g.n
    active = [v for v in order if pos[v] >= k]
    spare = {v: d - out_g[v] for v in active}  # multiplicity of v -> SINK
    to_sink = {v: 0 for v in active}

    def residual(v):
        """Residual arcs out of v in a fixed order: graph arcs by index, then sink."""
        for u in g.adjacency[v]:
            if pos[u] < k:
                continue
            if pos[v] < pos[u] and forward[(v, u)] == 0:
                yield u
            elif pos[u] < pos[v] and forward[(u, v)] == 1:
                yield u
        if to_sink[v] < spare[v]:
            yield SINK

    flow = 0
    for _ in range(d):
        parent = {target: None}
        queue = deque([target])
        while queue and SINK not in parent:
            v = queue.popleft()
            for u in residual(v):
                if u not in parent:
                    parent[u] = v
                    if u == SINK:
                        break
                    queue.append(u)
        if SINK not in parent:
            break
        u = SINK
        while parent[u] is not None:
            v = parent[u]
            if u == SINK:
                to_sink[v] += 1
            elif pos[v] < pos[u]:
                forward[(v, u)] = 1
            else:
                forward[(u, v)] = 0
            u = v
        flow += 1
    if flow < d:
        raise FalsificationAlarm(f"only {flow} of {d} edge-disjoint paths to the sink",
                                 {"target": target, "order": list(order)})

    arcs = tuple(sorted((b, a) if f else (a, b) for (a, b), f in forward.items()))
    o = Orientation(g.n, arcs)
    out = o.out_degrees
    assert out[target] == 0
    assert max(out, default=0) <= d
    assert sorted(tuple(sorted(a)) for a in arcs) == g.edges()
    # out-degree in the auxiliary network is d for every active vertex but the target
    for v in active:
        if v != target:
            assert out[v] + spare[v] - to_sink[v] == d
    return o


def search_order(o: Orientation, start: int) -> list[int]:
    """Post-order DFS on out-arcs: each vertex after its out-neighbours when acyclic."""
    out = o.out_neighbors()
    seen, order = set(), []

    def visit(root):
        stack = [(root, iter(out[root]))]
        seen.add(root)
        while stack:
            v, it = stack[-1]
            nxt = next((u for u in it if u not in seen), None)
            if nxt is None:
                order.append(v)
                stack.pop()
            else:
                seen.add(nxt)
                stack.append((nxt, iter(out[nxt])))

    visit(start)
    for v in range(o.n):
        if v not in seen:
            visit(v)
    return order


def single_request_color(g: Graph, L: ListAssignment, r: Request,
                         node_cap: int = DEFAULT_NODE_CAP) -> tuple:
    """Honour a single request on a bipartite d-degenerate graph with (d+1)-lists."""
    require_valid(g, L, r)
    if not g.is_bipartite():
        raise InputError("graph is not bipartite")
    if len(r) != 1:
        raise InputError("request must have exactly one vertex")
    d = degeneracy_order(g).d
    for v, lst in enumerate(L.lists):
        if len(lst) != d + 1:
            raise InputError(f"vertex {v} has {len(lst)} colours, expected {d + 1}")
    (z, want), = r
    o = sink_orientation(g, d, z)
    order = search_order(o, z)
    assert order[0] == z
    col = [-1] * g.n
    col[z] = want
    nodes = 0

    def rec(i):
        nonlocal nodes
        if i == len(order):
            return True
        nodes += 1
        if nodes > node_cap:
            raise BudgetExceeded("search nodes", nodes, node_cap)
        v = order[i]
        taken = {col[u] for u in g.adjacency[v]}
        for c in L.lists[v]:
            if c not in taken:
                col[v] = c
                if rec(i + 1):
                    return True
        col[v] = -1
        return False

    if not rec(1):
        raise FalsificationAlarm("single request could not be honoured",
                                 {"lists": [list(x) for x in L.lists], "request": [z, want],
                                  "edges": g.edges()})
    f = tuple(col)
    check_coloring(g, L, f)
    assert f[z] == want
    return f
