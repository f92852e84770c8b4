"""Constructive and randomized flexible list colouring algorithms.

Every function returns a proper L-colouring (a tuple indexed by vertex) and
checks that postcondition before returning.  Steps that only need "some
proper colouring from these lists" use the exact search of
``flexicolor.exact``; when that search fails although a choosability
assumption says it cannot, a ``ChoosabilityViolation`` is raised.
"""

from __future__ import annotations

import math
from itertools import product
from typing import Callable, NamedTuple

import numpy as np

from .errors import ChoosabilityViolation, FalsificationAlarm, InputError, RetryCapExhausted
from .exact import check_coloring, find_proper_coloring, satisfy_max
from .graph import (DegeneracyOrder, Graph, degeneracy_order, hall_ratio,
                    maximum_independent_set, optimal_coloring, square_graph)
from .lists import ListAssignment, Request, count_satisfied, require_valid
from .rng import as_rng

Solver = Callable[[Graph, ListAssignment, Request], tuple]


def _complete(g: Graph, L: ListAssignment, col: list[int], s: int | None,
              lists: dict[int, tuple[int, ...]] | None = None) -> list[int]:
    """Colour the uncoloured vertices of ``col`` from ``lists`` (default: L
    minus the colours of coloured neighbours) by exact search."""
    rest = [v for v in range(g.n) if col[v] < 0]
    if not rest:
        return col
    if lists is None:
        lists = {}
        for v in rest:
            taken = {col[u] for u in g.adjacency[v] if col[u] >= 0}
            lists[v] = tuple(c for c in L.lists[v] if c not in taken)
    sub, back = g.induced(rest)
    sub_lists = ListAssignment(tuple(lists[v] for v in back))
    found = find_proper_coloring(sub, sub_lists)
    if found is None:
        instance = {"vertices": back, "lists": [list(x) for x in sub_lists.lists]}
        if s is None:
            raise FalsificationAlarm("greedy completion failed", instance)
        raise ChoosabilityViolation(s, instance)
    out = list(col)
    for i, v in enumerate(back):
        out[v] = found[i]
    return out


def exact_solver(g: Graph, L: ListAssignment, r: Request) -> tuple:
    """Best possible colouring for (g, L, r); usable as an inner solver."""
    count, witness = satisfy_max(g, L, r)
    if witness is None:
        raise FalsificationAlarm("inner instance has no proper colouring",
                                 {"lists": [list(x) for x in L.lists]})
    return witness


# --------------------------------------------------------------- greedy


def greedy_flexible(g: Graph, L: ListAssignment, r: Request) -> tuple:
    """Honour a maximum independent set of requests, then colour greedily.

    Needs every list to have at least max-degree + 1 colours; satisfies
    alpha(G[D]) >= |D| / rho(G) requests.
    """
    require_valid(g, L, r)
    need = g.max_degree + 1
    for v, lst in enumerate(L.lists):
        if len(lst) < need:
            raise InputError(f"vertex {v} has {len(lst)} colours, needs >= {need}")
    req = r.as_dict()
    chosen = maximum_independent_set(g, req)
    col = [-1] * g.n
    for v in chosen:
        col[v] = req[v]
    for v in range(g.n):
        if col[v] < 0:
            taken = {col[u] for u in g.adjacency[v]}
            col[v] = next(c for c in L.lists[v] if c not in taken)
    f = tuple(col)
    check_coloring(g, L, f)
    assert count_satisfied(r, f) >= len(chosen)
    return f


# ----------------------------------------------------- degenerate random


def random_degenerate_color(g: Graph, L: ListAssignment, r: Request, rng=None,
                            order: DegeneracyOrder | None = None,
                            trace: list | None = None) -> tuple:
    """Random colouring along a degeneracy order.

    Each vertex ranks its list with its requested colour first (the rest
    ascending), keeps the first two colours not used by earlier neighbours,
    and picks one of them with a fair coin.  With (d+2)-lists the expected
    number of honoured requests is at least |D| / 2^(d+1).

    ``trace``, if given, receives ``(vertex, (first, second))`` per step.
    """
    order = order or degeneracy_order(g)
    d = order.d
    for v, lst in enumerate(L.lists):
        if len(lst) < d + 2:
            raise InputError(f"vertex {v} has {len(lst)} colours, needs >= {d + 2}")
    rng = as_rng(rng)
    coins = rng.integers(0, 2, size=g.n)
    req = r.as_dict()
    col = [-1] * g.n
    for i, v in enumerate(order.order):
        taken = {col[u] for u in g.adjacency[v] if col[u] >= 0}
        want = req.get(v)
        rest = sorted(c for c in L.lists[v] if c != want)
        ranked = rest if want is None else [want] + rest
        pair = [c for c in ranked if c not in taken][:2]
        if len(pair) < 2:
            raise FalsificationAlarm("fewer than two unused colours", {"vertex": v})
        if trace is not None:
            trace.append((v, tuple(pair)))
        col[v] = pair[int(coins[i])]
    f = tuple(col)
    check_coloring(g, L, f)
    return f


# ------------------------------------------------------------ square class


def square_class_color(g: Graph, L: ListAssignment, r: Request, s: int) -> tuple:
    """Honour every request in the best colour class of an optimal colouring of G^2.

    ``s`` is the caller's claimed choosability of g; lists need s+1 colours.
    Vertices of one class of G^2 share no neighbour, so each other vertex
    loses at most one colour before the completion step.
    """
    require_valid(g, L, r)
    for v, lst in enumerate(L.lists):
        if len(lst) < s + 1:
            raise InputError(f"vertex {v} has {len(lst)} colours, needs >= {s + 1}")
    classes = optimal_coloring(square_graph(g))
    chi2 = max(classes) + 1
    req = r.as_dict()
    tally = [0] * chi2
    for v in req:
        tally[classes[v]] += 1
    best = tally.index(max(tally))
    col = [-1] * g.n
    for v, c in req.items():
        if classes[v] == best:
            col[v] = c
    lists = {}
    for u in range(g.n):
        if col[u] < 0:
            taken = {col[w] for w in g.adjacency[u] if col[w] >= 0}
            lists[u] = tuple(c for c in L.lists[u] if c not in taken)
            if len(lists[u]) < s:
                raise FalsificationAlarm("square-class pruning removed two colours", {"vertex": u})
    f = tuple(_complete(g, L, col, s, lists))
    check_coloring(g, L, f)
    floor = -(-len(req) // chi2)
    if count_satisfied(r, f) < floor:
        raise FalsificationAlarm("square-class colouring below its floor")
    return f


# ---------------------------------------------------------- bounded palette


class PaletteResult(NamedTuple):
    coloring: tuple
    satisfied: int
    mode: str  # "exhaustive" or "sampled"
    chi: int


def bounded_palette_color(g: Graph, L: ListAssignment, r: Request, s: int,
                          budget: int = 10**6, samples: int = 10**4, rng=None) -> PaletteResult:
    """Map each requested colour to one class of an optimal proper colouring.

    All chi^|r(D)| maps are tried when that is at most ``budget``; otherwise
    ``samples`` random maps.  A requested vertex keeps its colour when the
    colour went to its class; everything else is coloured from its list minus
    the requested palette (at least s colours remain).
    """
    require_valid(g, L, r)
    palette = sorted(r.colors())
    width = len(palette)
    for v, lst in enumerate(L.lists):
        if len(lst) < s + width:
            raise InputError(f"vertex {v} has {len(lst)} colours, needs >= {s + width}")
    classes = optimal_coloring(g)
    chi = max(classes) + 1
    req = r.as_dict()
    dom = sorted(req)
    slot = {c: i for i, c in enumerate(palette)}
    want_idx = np.array([slot[req[v]] for v in dom])
    cls = np.array([classes[v] for v in dom])

    if chi ** width <= budget:
        mode = "exhaustive"
        maps = np.array(list(product(range(chi), repeat=width)), dtype=np.int64).reshape(-1, width)
    else:
        mode = "sampled"
        maps = as_rng(rng).integers(0, chi, size=(samples, width))
    best_score, best_map = -1, None
    for start in range(0, len(maps), 65536):
        chunk = maps[start:start + 65536]
        scores = (chunk[:, want_idx] == cls).sum(axis=1)
        i = int(scores.argmax())
        if scores[i] > best_score:
            best_score, best_map = int(scores[i]), chunk[i]
    col = [-1] * g.n
    for v in dom:
        if classes[v] == best_map[slot[req[v]]]:
            col[v] = req[v]
    banned = set(palette)
    lists = {u: tuple(c for c in L.lists[u] if c not in banned) for u in range(g.n) if col[u] < 0}
    f = tuple(_complete(g, L, col, s, lists))
    check_coloring(g, L, f)
    got = count_satisfied(r, f)
    if mode == "exhaustive" and got < -(-len(dom) // chi):
        raise FalsificationAlarm("bounded-palette colouring below its floor")
    return PaletteResult(f, got, mode, chi)


# --------------------------------------------------------------- products


def cartesian_flexible_color(g: Graph, h: Graph, L: ListAssignment, r: Request,
                             inner_solver: Solver = exact_solver,
                             chi_list_g: int | None = None) -> tuple:
    """Flexible colouring of G x H (vertex (u, w) is ``w*g.n + u``).

    The copies of G over the best class of an optimal colouring of H are
    solved by ``inner_solver``; the remaining copies are then coloured one at
    a time from lists pruned by at most max-degree(H) coloured neighbours.
    """
    from .exact import list_chromatic_number

    n = g.n * h.n
    host = Graph.from_edges(n, [])  # only for validation of sizes
    require_valid(host, L, r)
    if chi_list_g is None:
        chi_list_g = list_chromatic_number(g)
    need = h.max_degree + chi_list_g
    for v, lst in enumerate(L.lists):
        if len(lst) < need:
            raise InputError(f"vertex {v} has {len(lst)} colours, needs >= {need}")
    hcol = optimal_coloring(h)
    chi_h = max(hcol) + 1
    copy = [list(range(w * g.n, (w + 1) * g.n)) for w in range(h.n)]
    req = r.as_dict()
    tally = [0] * chi_h
    for v in req:
        tally[hcol[v // g.n]] += 1
    best = tally.index(max(tally))
    col = [-1] * n
    for w in range(h.n):
        if hcol[w] != best:
            continue
        Lw, rw = L.restrict(copy[w]), r.restrict(copy[w])
        f = inner_solver(g, Lw, rw) if len(rw) else find_proper_coloring(g, Lw)
        if f is None:
            raise FalsificationAlarm("inner solver returned nothing", {"copy": w})
        check_coloring(g, Lw, f)
        for u in range(g.n):
            col[copy[w][u]] = f[u]
    for w in range(h.n):
        if hcol[w] == best:
            continue
        lists = []
        for u in range(g.n):
            taken = {col[w2 * g.n + u] for w2 in h.adjacency[w] if col[w2 * g.n + u] >= 0}
            lists.append(tuple(c for c in L.lists[copy[w][u]] if c not in taken))
        f = find_proper_coloring(g, ListAssignment(tuple(lists)))
        if f is None:
            raise ChoosabilityViolation(chi_list_g, {"copy": w, "lists": lists})
        for u in range(g.n):
            col[copy[w][u]] = f[u]
    from .graph import cartesian_product

    out = tuple(col)
    check_coloring(cartesian_product(g, h), L, out)
    return out


# ------------------------------------------------------------------ joins


class JoinSplitResult(NamedTuple):
    coloring: tuple
    satisfied: int
    attempts: int
    kept: tuple  # vertices left coloured from the half solution


def join_halves(g_join: Graph) -> Graph:
    """The common half G of a join G v G built by ``generate``/``join``."""
    meta = g_join.meta
    if meta.get("kind") != "join":
        raise InputError("graph carries no join construction metadata")
    left, right = meta["left"], meta["right"]
    if left.n != right.n or left.adjacency != right.adjacency:
        raise InputError("join halves are not identical copies of one graph")
    return left


def join_split_color(g_join: Graph, L: ListAssignment, r: Request, s: int, rng=None,
                     solver: Solver = exact_solver, retries: int = 1000,
                     rho=None) -> JoinSplitResult:
    """Flexible colouring of G v G by a random split of the leftover palette.

    The half holding more requests is solved as a copy of G; only
    l = ceil(n / rho(G)) of its vertices stay coloured (satisfied requests
    first, then by index).  Leftover colours are split by fair coins into
    B1 (rest of that half) and B2 (other half) until every leftover vertex
    keeps at least s colours on its side; both sides are then completed.
    """
    g = join_halves(g_join)
    require_valid(g_join, L, r)
    n = g.n
    rho = hall_ratio(g) if rho is None else rho
    keep = math.ceil(n / rho)
    rng = as_rng(rng)
    req = r.as_dict()
    counts = [sum(1 for v in req if v < n), sum(1 for v in req if v >= n)]
    rich = 0 if counts[0] >= counts[1] else 1
    rich_verts = list(range(rich * n, (rich + 1) * n))

    r_half = r.restrict(rich_verts)
    f = solver(g, L.restrict(rich_verts), r_half)
    check_coloring(g, L.restrict(rich_verts), f)
    got = count_satisfied(r_half, f)
    if got < math.ceil(len(r_half) / rho):
        raise InputError("lists too short for the half to be (k, 1/rho)-flexible")

    honoured = [i for i in range(n) if r_half.get(i) == f[i]]
    rest = [i for i in range(n) if i not in set(honoured)]
    kept = tuple(rich_verts[i] for i in (honoured + rest)[:keep])
    col = [-1] * g_join.n
    for i in range(n):
        if rich_verts[i] in kept:
            col[rich_verts[i]] = f[i]

    leftover = {}
    for v in range(g_join.n):
        if col[v] < 0:
            taken = {col[u] for u in g_join.adjacency[v] if col[u] >= 0}
            leftover[v] = [c for c in L.lists[v] if c not in taken]
    palette = sorted({c for lst in leftover.values() for c in lst})
    side_one = [v for v in rich_verts if col[v] < 0]

    failures = []
    for attempt in range(1, retries + 1):
        in_b1 = dict(zip(palette, rng.random(len(palette)) < 0.5))
        lists = {}
        short = 0
        for v, lst in leftover.items():
            mine = v in side_one
            lists[v] = tuple(c for c in lst if in_b1[c] == mine)
            short += len(lists[v]) < s
        if short:
            failures.append(short)
            continue
        out = tuple(_complete(g_join, L, col, s, lists))
        check_coloring(g_join, L, out)
        total = count_satisfied(r, out)
        if total < math.ceil(len(req) / (2 * rho)):
            raise FalsificationAlarm("join colouring below |D|/(2 rho)")
        return JoinSplitResult(out, total, attempt, kept)
    raise RetryCapExhausted(
        f"no usable palette split in {retries} attempts",
        {"attempts": retries, "mean_short_vertices": float(np.mean(failures)),
         "max_short_vertices": int(max(failures))},
    )
