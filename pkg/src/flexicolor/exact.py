"""Exhaustive computations: colourings, request satisfaction, epsilon_G(k),
choosability, list packing and the list flexibility number.

Everything here is exact.  Flexibility values are ``Fraction``s; ``-1`` is
the sentinel for "no proper L-colouring exists" and is kept distinct from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator

import numpy as np

from .errors import BudgetExceeded, InputError
from .graph import (Graph, _mis_mask, chromatic_number, degeneracy_order,
                    hall_ratio)
from .lists import (ListAssignment, Request, checked_assignments, count_satisfied,
                    require_valid)

UNCOLORABLE = -1
DEFAULT_ASSIGNMENT_CAP = 200_000
DEFAULT_NODE_CAP = 20_000_000
DEFAULT_COLORING_CAP = 2_000_000

Coloring = tuple


def is_proper(g: Graph, coloring) -> bool:
    return all(coloring[u] != coloring[v] for u, v in g.edges())


def respects_lists(L: ListAssignment, coloring) -> bool:
    return all(coloring[v] in L.lists[v] for v in range(len(L)))


def check_coloring(g: Graph, L: ListAssignment, coloring) -> None:
    """Raise AssertionError unless ``coloring`` is a proper L-colouring."""
    assert len(coloring) == g.n, "coloring not total"
    assert respects_lists(L, coloring), "coloring leaves a list"
    assert is_proper(g, coloring), "coloring not proper"


# ------------------------------------------------------------------ search


class _Search:
    """Branch and bound over proper L-colourings maximising satisfied requests.

    Variable choice: fewest remaining colours, then requested vertices, then
    position in the degeneracy order.  Value choice: requested colour first,
    then ascending.  The bound counts requested vertices whose requested
    colour is still available.
    """

    def __init__(self, g: Graph, L: ListAssignment, request: dict[int, int],
                 node_cap: int | None):
        self.g = g
        self.lists = L.lists
        self.req = request
        self.node_cap = node_cap
        self.nodes = 0
        pos = degeneracy_order(g).position() if g.n else {}
        self.rank = [pos[v] for v in range(g.n)]
        self.col = [-1] * g.n
        self.block = [dict.fromkeys(lst, 0) for lst in self.lists]
        self.free = [len(lst) for lst in self.lists]
        self.best = -1
        self.best_col: list[int] | None = None

    def _open_requests(self) -> int:
        return sum(1 for v, c in self.req.items()
                   if self.col[v] < 0 and self.block[v].get(c, 1) == 0)

    def _pick(self) -> int:
        best, key = -1, None
        for v in range(self.g.n):
            if self.col[v] >= 0:
                continue
            cand = (self.free[v], v not in self.req, self.rank[v])
            if key is None or cand < key:
                best, key = v, cand
        return best

    def _assign(self, v: int, c: int) -> tuple[list[int], bool]:
        self.col[v] = c
        touched = []
        ok = True
        for u in self.g.adjacency[v]:
            if self.col[u] < 0 and c in self.block[u]:
                self.block[u][c] += 1
                touched.append(u)
                if self.block[u][c] == 1:
                    self.free[u] -= 1
                    if self.free[u] == 0:
                        ok = False
        return touched, ok

    def _undo(self, v: int, c: int, touched: list[int]) -> None:
        for u in touched:
            self.block[u][c] -= 1
            if self.block[u][c] == 0:
                self.free[u] += 1
        self.col[v] = -1

    def run(self, target: int | None) -> None:
        self._rec(0, 0, target)

    def _rec(self, done: int, sat: int, target: int | None) -> bool:
        self.nodes += 1
        if self.node_cap is not None and self.nodes > self.node_cap:
            raise BudgetExceeded("search nodes", self.nodes, self.node_cap)
        if done == self.g.n:
            if sat > self.best:
                self.best = sat
                self.best_col = list(self.col)
            return target is not None and self.best >= target
        if sat + self._open_requests() <= self.best:
            return False
        v = self._pick()
        want = self.req.get(v)
        choices = [c for c in self.lists[v] if self.block[v][c] == 0]
        if want is not None and want in choices:
            choices.remove(want)
            choices.insert(0, want)
        for c in choices:
            touched, ok = self._assign(v, c)
            if ok and self._rec(done + 1, sat + (c == want), target):
                return True
            self._undo(v, c, touched)
        return False


def find_proper_coloring(g: Graph, L: ListAssignment,
                         node_cap: int | None = DEFAULT_NODE_CAP) -> Coloring | None:
    """A proper L-colouring, or None if there is none.  Deterministic."""
    if g.n == 0:
        return ()
    if L.min_size == 0:
        return None
    s = _Search(g, L, {}, node_cap)
    s.run(target=0)
    return tuple(s.best_col) if s.best_col is not None else None


def satisfy_max(g: Graph, L: ListAssignment, r: Request, target: int | None = None,
                node_cap: int | None = DEFAULT_NODE_CAP) -> tuple[int, Coloring | None]:
    """Largest number of requests a proper L-colouring can honour, with a witness.

    Returns ``(-1, None)`` when no proper L-colouring exists.  With ``target``
    the search stops as soon as a colouring honouring that many is found, so
    the count is then only a lower bound (but still attained by the witness).
    """
    require_valid(g, L, r)
    if L.min_size == 0:
        return UNCOLORABLE, None
    s = _Search(g, L, r.as_dict(), node_cap)
    s.run(target)
    if s.best_col is None:
        return UNCOLORABLE, None
    witness = tuple(s.best_col)
    check_coloring(g, L, witness)
    assert count_satisfied(r, witness) == s.best
    return s.best, witness


def proper_colorings(g: Graph, L: ListAssignment) -> Iterator[Coloring]:
    """Every proper L-colouring, vertices filled in degeneracy order."""
    order = degeneracy_order(g).order if g.n else ()
    col = [-1] * g.n

    def rec(i: int):
        if i == g.n:
            yield tuple(col)
            return
        v = order[i]
        for c in L.lists[v]:
            if all(col[u] != c for u in g.adjacency[v]):
                col[v] = c
                yield from rec(i + 1)
        col[v] = -1

    yield from rec(0)


# ------------------------------------------------------------ flexibility


@dataclass
class FlexReport:
    value: Fraction
    witness_assignment: ListAssignment | None = None
    witness_request: Request | None = None
    witness_coloring: Coloring | None = None
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        def fmt(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "value": fmt(self.value),
            "witness_lists": None if self.witness_assignment is None
            else [list(lst) for lst in self.witness_assignment.lists],
            "witness_request": None if self.witness_request is None
            else [[v, c] for v, c in self.witness_request.entries],
            "witness_coloring": None if self.witness_coloring is None
            else list(self.witness_coloring),
            "flags": list(self.flags),
        }


def _coloring_matrix(g: Graph, L: ListAssignment, cap: int) -> np.ndarray:
    rows = []
    for f in proper_colorings(g, L):
        rows.append(f)
        if len(rows) > cap:
            raise BudgetExceeded("proper L-colourings", len(rows), cap)
    return np.array(rows, dtype=np.int64).reshape(len(rows), g.n)


def worst_request(g: Graph, L: ListAssignment, below: Fraction | None = None,
                  coloring_cap: int = DEFAULT_COLORING_CAP) -> FlexReport:
    """Minimum over all requests r of satisfy_max(r)/|D|, with witnesses.

    All proper L-colourings are tabulated once; requests are then walked
    depth-first while a per-colouring match counter is updated incrementally.
    With ``below`` the walk stops at the first request whose value is
    strictly smaller.  Value ``-1`` means L admits no proper colouring.
    """
    require_valid(g, L)
    C = _coloring_matrix(g, L, coloring_cap)
    if len(C) == 0:
        return FlexReport(Fraction(UNCOLORABLE), L, None, None, ["uncolorable-witness"])
    hits = [{c: (C[:, v] == c).astype(np.int32) for c in L.lists[v]} for v in range(g.n)]
    best = [None, None, None]  # (num, den), request entries, colouring row
    chosen: list[tuple[int, int]] = []

    def rec(v: int, counts: np.ndarray) -> bool:
        if v == g.n:
            if not chosen:
                return False
            size = len(chosen)
            i = int(counts.argmax())
            val = int(counts[i])
            if best[0] is None or val * best[0][1] < best[0][0] * size:
                best[0] = (val, size)
                best[1] = list(chosen)
                best[2] = i
            if val == 0:
                return True
            return below is not None and val * below.denominator < below.numerator * size
        for c in L.lists[v]:
            chosen.append((v, c))
            stop = rec(v + 1, counts + hits[v][c])
            chosen.pop()
            if stop:
                return True
        return rec(v + 1, counts)

    rec(0, np.zeros(len(C), dtype=np.int32))
    num, den = best[0]
    return FlexReport(Fraction(num, den), L, Request(best[1]), tuple(int(x) for x in C[best[2]]))


def flex_value(g: Graph, L: ListAssignment) -> Fraction:
    """min over requests of satisfy_max/|D|; Fraction(-1) if L is uncolourable."""
    return worst_request(g, L).value


def _conflict_alpha(g: Graph, dom: tuple[int, ...], block: dict[int, int]) -> int:
    masks = [0] * g.n
    for v in dom:
        m = 0
        for u in g.adjacency[v]:
            if u in block and block[u] == block[v]:
                m |= 1 << u
        masks[v] = m
    return _mis_mask(masks, sum(1 << v for v in dom)).bit_count()


def _set_partitions(items: list[int]) -> Iterator[dict[int, int]]:
    """Restricted growth labelling of every set partition of ``items``."""
    labels: dict[int, int] = {}

    def rec(i: int, blocks: int):
        if i == len(items):
            yield dict(labels)
            return
        for b in range(blocks + 1):
            labels[items[i]] = b
            yield from rec(i + 1, max(blocks, b + 1))
        del labels[items[i]]

    yield from rec(0, 0)


def _large_list_report(g: Graph, k: int) -> FlexReport:
    """epsilon_G(k) for k > max degree.

    Then every partial proper colouring extends greedily, so for any L and r
    the best count is the independence number of G[D] restricted to edges
    whose ends request the same colour.  Only that equality pattern matters,
    so all (D, pattern) pairs are enumerated.  The minimiser is turned into
    concrete k-lists and re-solved by ``satisfy_max`` as a consistency check.
    """
    best = None
    for size in range(g.n, 0, -1):
        for dom in combinations(range(g.n), size):
            for block in _set_partitions(list(dom)):
                a = _conflict_alpha(g, dom, block)
                if best is None or a * best[1] < best[0] * size:
                    best = (a, size, block)
    num, den, block = best
    nblocks = max(block.values()) + 1
    filler = list(range(nblocks, nblocks + k - 1))
    L = ListAssignment(tuple(
        tuple(sorted({block.get(v, 0)} | set(filler))) for v in range(g.n)
    ))
    r = Request(block)
    count, witness = satisfy_max(g, L, r)
    if count != num:
        raise AssertionError(f"large-list shortcut gave {num}, search gave {count}")
    return FlexReport(Fraction(num, den), L, r, witness, ["large-list-exact"])


def epsilon_report(g: Graph, k: int, cap: int | None = DEFAULT_ASSIGNMENT_CAP,
                   exhaustive: bool = False, below: Fraction | None = None) -> FlexReport:
    """epsilon_G(k) with the minimising instance.

    Value 0 with flag ``uncolorable-witness`` when some k-assignment has no
    proper colouring.  For k > max degree an exact shortcut is used unless
    ``exhaustive`` is set.  With ``below`` the scan stops at the first
    assignment whose value is strictly smaller (the returned value is then
    an upper bound).
    """
    if k < 1:
        raise InputError("k must be >= 1")
    if k > g.max_degree and not exhaustive:
        return _large_list_report(g, k)
    worst: FlexReport | None = None
    for L in checked_assignments(g, k, cap):
        rep = worst_request(g, L, below=below)
        if rep.value < 0:
            return FlexReport(Fraction(0), L, None, None, ["uncolorable-witness"])
        if worst is None or rep.value < worst.value:
            worst = rep
        if worst.value == 0 or (below is not None and worst.value < below):
            break
    return worst


def epsilon_of(g: Graph, k: int, **kwargs) -> Fraction:
    return epsilon_report(g, k, **kwargs).value


def is_flexible(g: Graph, k: int, eps: Fraction, cap: int | None = DEFAULT_ASSIGNMENT_CAP,
                exhaustive: bool = False) -> tuple[bool, FlexReport]:
    """Whether every k-assignment and every request is eps-satisfiable."""
    eps = Fraction(eps)
    rep = epsilon_report(g, k, cap=cap, exhaustive=exhaustive, below=eps)
    return rep.value >= eps, rep


# ------------------------------------------------------------- choosability


def is_choosable(g: Graph, k: int, cap: int | None = DEFAULT_ASSIGNMENT_CAP
                 ) -> tuple[bool, ListAssignment | None]:
    """Exhaustive k-choosability test; returns a bad assignment on failure."""
    for L in checked_assignments(g, k, cap):
        if find_proper_coloring(g, L) is None:
            return False, L
    return True, None


def list_chromatic_number(g: Graph, cap: int | None = DEFAULT_ASSIGNMENT_CAP) -> int:
    """Least k with every k-assignment colourable, searched in [chi, degeneracy+1]."""
    upper = degeneracy_order(g).d + 1
    for k in range(max(chromatic_number(g), 1), upper):
        if is_choosable(g, k, cap)[0]:
            return k
    return upper


def find_packing(g: Graph, L: ListAssignment) -> list[Coloring] | None:
    """k pairwise vertex-disjoint proper L-colourings, k the uniform list size.

    Each vertex gets a permutation of its list (layer i takes entry i).  The
    first vertex in the order is fixed to its sorted list, since the family
    is unordered.
    """
    k = L.uniform_size
    if k is None:
        raise InputError("packing needs a uniform list size")
    order = degeneracy_order(g).order
    layers = [[-1] * g.n for _ in range(k)]

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        done = [u for u in g.adjacency[v] if layers[0][u] >= 0]
        perms = [L.lists[v]] if i == 0 else permutations(L.lists[v])
        for perm in perms:
            if any(perm[j] == layers[j][u] for u in done for j in range(k)):
                continue
            for j in range(k):
                layers[j][v] = perm[j]
            if rec(i + 1):
                return True
        for j in range(k):
            layers[j][v] = -1
        return False

    if not rec(0):
        return None
    return [tuple(layer) for layer in layers]


def list_packing_number(g: Graph, cap: int | None = DEFAULT_ASSIGNMENT_CAP,
                        k_max: int | None = None) -> int:
    """Least k such that every k-assignment has a proper packing of size k."""
    k = list_chromatic_number(g, cap)
    k_max = k_max if k_max is not None else 2 * g.n + 1
    while k <= k_max:
        if all(find_packing(g, L) is not None for L in checked_assignments(g, k, cap)):
            return k
        k += 1
    raise BudgetExceeded("list packing search: k", k, k_max)


# ------------------------------------------------------ flexibility number


@dataclass
class ChiFlexReport:
    chi_flex: int
    rho: Fraction
    chi_list: int
    checked: dict[int, FlexReport]
    upper_bound_used: bool


def chi_flex_report(g: Graph, cap: int | None = DEFAULT_ASSIGNMENT_CAP) -> ChiFlexReport:
    """Smallest k making g (k, 1/rho)-flexible.

    Searched from chi_l(g) upward; max degree + 1 always suffices (greedy
    extension after honouring a maximum independent set of requests), so it
    is returned without enumeration once reached.
    """
    rho = hall_ratio(g)
    eps = 1 / rho
    chi_l = list_chromatic_number(g, cap)
    checked = {}
    for k in range(chi_l, g.max_degree + 1):
        ok, rep = is_flexible(g, k, eps, cap)
        checked[k] = rep
        if ok:
            return ChiFlexReport(k, rho, chi_l, checked, False)
    return ChiFlexReport(max(chi_l, g.max_degree + 1), rho, chi_l, checked, True)


def chi_flex(g: Graph, cap: int | None = DEFAULT_ASSIGNMENT_CAP) -> int:
    return chi_flex_report(g, cap).chi_flex


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)
