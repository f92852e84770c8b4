"""Simple undirected graphs, generators and exact structural parameters.

Vertices are the integers ``0..n-1``.  Generated graphs follow a fixed
numbering that other modules (and request files) rely on:

* ``grid:n,m`` is P_n x P_m; vertex (i, j) with 1 <= i <= n, 1 <= j <= m is
  ``(j-1)*n + (i-1)``, so every column is a contiguous copy of P_n.
* ``cartesian:G|H`` numbers (u, w) as ``w*|G| + u`` (H-major), which makes
  ``grid:n,m`` equal to ``cartesian:path:n|path:m``.
* ``kbip:a,b`` puts X = 0..a-1 and Y = a..a+b-1.
* ``join:G|H`` keeps G's numbering and shifts H's by |G|.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceeded, InputError, ParseError

HALL_RATIO_MAX_N = 22


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]
    meta: Mapping = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise InputError(f"adjacency has {len(self.adjacency)} rows for n={self.n}")
        masks = []
        for v, nbrs in enumerate(self.adjacency):
            mask = 0
            for u in nbrs:
                if u == v:
                    raise InputError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise InputError(f"neighbour {u} of {v} out of range")
                mask |= 1 << u
            if mask.bit_count() != len(nbrs):
                raise InputError(f"duplicate edge at {v}")
            if list(nbrs) != sorted(nbrs):
                raise InputError(f"neighbour list of {v} not sorted")
            masks.append(mask)
        for v in range(self.n):
            for u in self.adjacency[v]:
                if not masks[u] >> v & 1:
                    raise InputError(f"asymmetric adjacency between {u} and {v}")
        object.__setattr__(self, "_masks", tuple(masks))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], meta=None) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise InputError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge {u}-{v} out of range for n={n}")
            if v in nbrs[u]:
                raise InputError(f"duplicate edge {min(u, v)}-{max(u, v)}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), dict(meta or {}))

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as integer bitmasks."""
        return self._masks  # type: ignore[attr-defined]

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices`` renumbered 0..len-1, plus the map back."""
        vertices = list(vertices)
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (index[u], index[w])
            for u in vertices
            for w in self.adjacency[u]
            if w in index and index[u] < index[w]
        ]
        return Graph.from_edges(len(vertices), edges), vertices

    def is_bipartite(self) -> bool:
        return two_coloring(self) is not None


def two_coloring(g: Graph) -> list[int] | None:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in g.adjacency[v]:
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return None
    return side


# ---------------------------------------------------------------- operators


def square_graph(g: Graph) -> Graph:
    """Same vertex set; u ~ v iff their distance in g is 1 or 2."""
    edges = []
    for v in range(g.n):
        reach = g.masks[v]
        for u in g.adjacency[v]:
            reach |= g.masks[u]
        reach &= ~(1 << v)
        edges.extend((v, u) for u in _bits(reach) if u > v)
    return Graph.from_edges(g.n, edges)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G x H with (u, w) numbered ``w*g.n + u``."""
    edges = []
    for w in range(h.n):
        for u, u2 in g.edges():
            edges.append((w * g.n + u, w * g.n + u2))
    for w, w2 in h.edges():
        for u in range(g.n):
            edges.append((w * g.n + u, w2 * g.n + u))
    meta = {"kind": "cartesian", "factors": (g.n, h.n)}
    return Graph.from_edges(g.n * h.n, edges, meta)


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two parts; h is shifted by g.n."""
    edges = list(g.edges())
    edges.extend((u + g.n, v + g.n) for u, v in h.edges())
    edges.extend((u, g.n + w) for u in range(g.n) for w in range(h.n))
    meta = {"kind": "join", "halves": (g.n, h.n), "left": g, "right": h}
    return Graph.from_edges(g.n + h.n, edges, meta)


# --------------------------------------------------------------- generators


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _strip_parens(text: str) -> str:
    text = text.strip()
    while text.startswith("(") and text.endswith(")"):
        inner = text[1:-1]
        depth = 0
        balanced = True
        for ch in inner:
            depth += ch == "("
            depth -= ch == ")"
            if depth < 0:
                balanced = False
                break
        if not balanced or depth:
            break
        text = inner.strip()
    return text


def _ints(kind: str, args: str, count: int, minimum: int = 1) -> list[int]:
    tokens = args.split(",")
    if len(tokens) != count:
        raise ParseError(f"{kind} expects {count} size(s), got '{args}'")
    values = []
    for tok in tokens:
        tok = tok.strip()
        try:
            value = int(tok)
        except ValueError:
            raise ParseError(f"bad size token '{tok}' in {kind}") from None
        if value < minimum:
            raise ParseError(f"size token '{tok}' in {kind} must be >= {minimum}")
        values.append(value)
    return values


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], {"kind": "path"})


def grid_graph(rows: int, cols: int) -> Graph:
    g = cartesian_product(path_graph(rows), path_graph(cols))
    return Graph(g.n, g.adjacency, {"kind": "grid", "rows": rows, "cols": cols})


def generate(spec: str) -> Graph:
    """Build a graph from a descriptor such as ``grid:3,4`` or ``join:path:2|path:2``."""
    spec = _strip_parens(spec)
    kind, sep, args = spec.partition(":")
    kind = kind.strip()
    if not sep:
        raise ParseError(f"missing ':' in generator token '{spec}'")
    if kind == "path":
        (n,) = _ints(kind, args, 1)
        g = path_graph(n)
    elif kind == "cycle":
        (n,) = _ints(kind, args, 1, minimum=3)
        g = Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], {"kind": "cycle"})
    elif kind == "complete":
        (n,) = _ints(kind, args, 1)
        g = Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)],
                             {"kind": "complete"})
    elif kind == "empty":
        (n,) = _ints(kind, args, 1)
        g = Graph.from_edges(n, [], {"kind": "empty"})
    elif kind == "kbip":
        a, b = _ints(kind, args, 2)
        g = Graph.from_edges(a + b, [(x, a + y) for x in range(a) for y in range(b)],
                             {"kind": "kbip", "sides": (a, b)})
    elif kind == "grid":
        rows, cols = _ints(kind, args, 2)
        g = grid_graph(rows, cols)
    elif kind == "ladder":
        (n,) = _ints(kind, args, 1)
        g = grid_graph(2, n)
        g = Graph(g.n, g.adjacency, {"kind": "ladder", "rows": 2, "cols": n})
    elif kind == "ladderminus":
        (n,) = _ints(kind, args, 1)
        full = grid_graph(2, n)
        g, _ = full.induced(range(2 * n - 1))
        g = Graph(g.n, g.adjacency, {"kind": "ladderminus", "rows": 2, "cols": n})
    elif kind in ("join", "cartesian"):
        parts = _split_top(args, "|")
        if len(parts) != 2:
            raise ParseError(f"{kind} expects exactly two operands separated by '|', got '{args}'")
        left, right = (generate(p) for p in parts)
        g = join(left, right) if kind == "join" else cartesian_product(left, right)
        meta = dict(g.meta)
        meta["operands"] = tuple(_strip_parens(p) for p in parts)
        g = Graph(g.n, g.adjacency, meta)
    else:
        raise ParseError(f"unknown generator '{kind}'")
    meta = dict(g.meta)
    meta["spec"] = spec
    return Graph(g.n, g.adjacency, meta)


# ------------------------------------------------------------- text format


def parse_graph(text: str) -> Graph:
    """Read the ``n m`` header followed by m lines ``u v`` with u < v."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two integers, got '{line}'", lineno)
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            bad = next(t for t in tokens if not t.lstrip("-").isdigit())
            raise ParseError(f"bad integer '{bad}'", lineno, raw.index(bad) + 1) from None
        if header is None:
            if a < 1 or b < 0:
                raise ParseError("header must be 'n m' with n >= 1, m >= 0", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < b < n):
            raise ParseError(f"edge '{a} {b}' must satisfy 0 <= u < v < {n}", lineno)
        edges.append((a, b, lineno))
    if header is None:
        raise ParseError("empty graph file")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    seen = set()
    for a, b, lineno in edges:
        if (a, b) in seen:
            raise ParseError(f"duplicate edge '{a} {b}'", lineno)
        seen.add((a, b))
    return Graph.from_edges(n, [(a, b) for a, b, _ in edges])


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------- degeneracy


@dataclass(frozen=True)
class DegeneracyOrder:
    """A vertex order in which every vertex has at most ``d`` earlier neighbours.

    ``reverse`` is the same order read backwards, where every vertex has at
    most ``d`` later neighbours.
    """

    order: tuple[int, ...]
    d: int
    back_degrees: tuple[int, ...]

    @property
    def reverse(self) -> tuple[int, ...]:
        return self.order[::-1]

    def position(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


def degeneracy_order(g: Graph) -> DegeneracyOrder:
    """Exact degeneracy by repeated removal of a minimum-degree vertex.

    Uses a bucket queue; ties go to the lowest index.
    """
    deg = [len(a) for a in g.adjacency]
    buckets: list[set[int]] = [set() for _ in range(max(deg, default=0) + 1)]
    for v, dv in enumerate(deg):
        buckets[dv].add(v)
    removed = [False] * g.n
    removal = []
    d = 0
    low = 0
    for _ in range(g.n):
        while not buckets[low]:
            low += 1
        v = min(buckets[low])
        buckets[low].remove(v)
        d = max(d, low)
        removed[v] = True
        removal.append(v)
        for u in g.adjacency[v]:
            if not removed[u]:
                buckets[deg[u]].remove(u)
                deg[u] -= 1
                buckets[deg[u]].add(u)
        low = max(low - 1, 0)
    order = tuple(reversed(removal))
    pos = {v: i for i, v in enumerate(order)}
    back = tuple(sum(1 for u in g.adjacency[v] if pos[u] < i) for i, v in enumerate(order))
    return DegeneracyOrder(order, d, back)


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g).d


# ------------------------------------------------------ independent sets


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mis_mask(masks: Sequence[int], candidates: int) -> int:
    """Maximum independent set inside ``candidates`` by branch and bound.

    Branches on a maximum-degree vertex (lowest index on ties): either drop
    it, or take it and delete its closed neighbourhood.
    """
    best = [0, 0]  # size, set

    def search(cand: int, chosen: int, size: int) -> None:
        if size + cand.bit_count() <= best[0]:
            return
        pick, pick_deg = -1, -1
        for v in _bits(cand):
            dv = (masks[v] & cand).bit_count()
            if dv > pick_deg:
                pick, pick_deg = v, dv
        if pick_deg <= 0:
            total = size + cand.bit_count()
            if total > best[0]:
                best[0], best[1] = total, chosen | cand
            return
        bit = 1 << pick
        search(cand & ~bit & ~masks[pick], chosen | bit, size + 1)
        search(cand & ~bit, chosen, size)

    if candidates:
        search(candidates, 0, 0)
    return best[1]


def maximum_independent_set(g: Graph, vertices: Iterable[int] | None = None) -> list[int]:
    """A maximum independent set of g (or of the subgraph induced by ``vertices``)."""
    cand = (1 << g.n) - 1 if vertices is None else sum(1 << v for v in set(vertices))
    return list(_bits(_mis_mask(g.masks, cand)))


def independence_number(g: Graph) -> int:
    return len(maximum_independent_set(g))


def hall_ratio_witness(g: Graph) -> tuple[Fraction, list[int]]:
    """Hall ratio max |S|/alpha(G[S]) and a vertex set S attaining it.

    alpha is tabulated for every vertex subset with the recurrence
    alpha(S) = max(alpha(S - v), 1 + alpha(S - N[v])), v the lowest vertex of S.
    Restricting to induced subgraphs is enough: for a fixed vertex set the
    induced subgraph has the smallest independence number.
    """
    if g.n > HALL_RATIO_MAX_N:
        raise BudgetExceeded("hall_ratio subsets", 2 ** g.n, 2 ** HALL_RATIO_MAX_N)
    closed = [m | (1 << v) for v, m in enumerate(g.masks)]
    alpha = [0] * (1 << g.n)
    best_num, best_den, best_set = 0, 1, 0
    for s in range(1, 1 << g.n):
        low = s & -s
        v = low.bit_length() - 1
        a = max(alpha[s ^ low], 1 + alpha[s & ~closed[v]])
        alpha[s] = a
        size = s.bit_count()
        if size * best_den > best_num * a:
            best_num, best_den, best_set = size, a, s
    return Fraction(best_num, best_den), list(_bits(best_set))


def hall_ratio(g: Graph) -> Fraction:
    return hall_ratio_witness(g)[0]


# ---------------------------------------------------------------- colouring


def _dsatur_greedy(g: Graph) -> list[int]:
    color = [-1] * g.n
    sat: list[set[int]] = [set() for _ in range(g.n)]
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if color[u] < 0),
            key=lambda u: (len(sat[u]), g.degree(u), -u),
        )
        c = 0
        while c in sat[v]:
            c += 1
        color[v] = c
        for u in g.adjacency[v]:
            sat[u].add(c)
    return color


def _k_coloring(g: Graph, k: int) -> list[int] | None:
    color = [-1] * g.n

    def pick() -> int:
        best, key = -1, None
        for u in range(g.n):
            if color[u] >= 0:
                continue
            seen = {color[w] for w in g.adjacency[u] if color[w] >= 0}
            cand = (len(seen), g.degree(u), -u)
            if key is None or cand > key:
                best, key = u, cand
        return best

    def search(done: int, used: int) -> bool:
        if done == g.n:
            return True
        v = pick()
        blocked = {color[w] for w in g.adjacency[v]}
        for c in range(min(used + 1, k)):
            if c in blocked:
                continue
            color[v] = c
            if search(done + 1, max(used, c + 1)):
                return True
        color[v] = -1
        return False

    return color if search(0, 0) else None


def clique_number(g: Graph) -> int:
    full = (1 << g.n) - 1
    complement = [full & ~m & ~(1 << v) for v, m in enumerate(g.masks)]
    return _mis_mask(complement, full).bit_count()


def optimal_coloring(g: Graph) -> list[int]:
    """A proper colouring with exactly chi(g) colours 0..chi-1.

    Iterative deepening between the clique lower bound and a DSatur upper bound.
    """
    if g.n == 0:
        return []
    best = _dsatur_greedy(g)
    upper = max(best) + 1
    for k in range(clique_number(g), upper):
        found = _k_coloring(g, k)
        if found is not None:
            return found
    return best


def chromatic_number(g: Graph) -> int:
    return max(optimal_coloring(g), default=-1) + 1
