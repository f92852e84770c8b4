"""Hard and special instances on complete bipartite graphs.

``oddrequest_instance`` builds a (2l+1)-assignment of K_{2l+1,t} with a
request on the small side of which no proper colouring honours half.
``k37_single_request_color`` honours any single request on K_{3,7} with
3-lists by a short case analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .errors import FalsificationAlarm, InputError
from .exact import check_coloring, satisfy_max
from .graph import Graph, generate, hall_ratio, independence_number
from .lists import ListAssignment, Request, random_assignment, require_valid
from .rng import as_rng


def t0(l: int) -> int:
    """Number of right-side lists needed by the odd-request construction."""
    if l < 1:
        raise InputError("l must be >= 1")
    return sum(math.comb(2 * l + 1, 2 * l + 1 - i) * (2 * l) ** i for i in range(l + 1))


def odd_blocks(l: int) -> list[list[int]]:
    """A_1..A_{2l+1}: consecutive 2l-blocks of colours after 1..2l+1."""
    base = 2 * l + 1
    return [list(range(base + i * 2 * l + 1, base + (i + 1) * 2 * l + 1)) for i in range(base)]


def odd_family(l: int) -> list[tuple[int, ...]]:
    """The right-side lists: for every B of size > l in [2l+1], each choice of one
    colour from A_j for every j outside B, added to B.  B by size descending then
    lexicographically, choices lexicographically."""
    m = 2 * l + 1
    blocks = odd_blocks(l)
    out = []
    for size in range(m, l, -1):
        for B in combinations(range(1, m + 1), size):
            rest = [j for j in range(1, m + 1) if j not in B]
            for pick in product(*(blocks[j - 1] for j in rest)):
                out.append(tuple(sorted(B + pick)))
    return out


def oddrequest_instance(l: int, t: int) -> tuple[Graph, ListAssignment, Request]:
    need = t0(l)
    if t < need:
        raise InputError(f"t must be >= t0({l}) = {need}")
    m = 2 * l + 1
    g = generate(f"kbip:{m},{t}")
    blocks = odd_blocks(l)
    left = [tuple(sorted([i] + blocks[i - 1])) for i in range(1, m + 1)]
    flat = [c for b in blocks for c in b]
    assert len(set(flat)) == len(flat) and not set(flat) & set(range(1, m + 1))
    family = odd_family(l)
    assert len(family) == need
    pad = tuple(range(1, m + 1))
    right = family + [pad] * (t - need)
    L = ListAssignment(tuple(left + right))
    r = Request({i - 1: i for i in range(1, m + 1)})
    return g, L, r


# ------------------------------------------------------------------ K_{3,7}

K37_X = (0, 1, 2)
K37_Y = tuple(range(3, 10))


def _check_k37(g: Graph | None):
    if g is None:
        return generate("kbip:3,7")
    if g.n != 10 or g.adjacency != generate("kbip:3,7").adjacency:
        raise InputError("graph is not K_{3,7} with the canonical numbering")
    return g


def k37_single_request_color(L: ListAssignment, r: Request, g: Graph | None = None) -> tuple:
    """Proper colouring of K_{3,7} from 3-lists honouring a single request."""
    g = _check_k37(g)
    require_valid(g, L, r)
    if any(len(lst) != 3 for lst in L.lists):
        raise InputError("K_{3,7} solver needs a 3-assignment")
    if len(r) != 1:
        raise InputError("request must have exactly one vertex")
    (z, c), = r
    col = [-1] * 10
    col[z] = c

    def fill(vertices, banned):
        for v in vertices:
            free = [x for x in L.lists[v] if x not in banned]
            if not free:
                raise FalsificationAlarm("single-request case analysis failed",
                                         {"lists": [list(x) for x in L.lists], "request": [z, c]})
            col[v] = free[0]

    if z in K37_X:
        x2, x3 = (x for x in K37_X if x != z)
        others = [y for y in K37_Y]
        common = sorted(set(L.lists[x2]) & set(L.lists[x3]))
        if common:
            col[x2] = col[x3] = common[0]
        else:
            reduced = [set(L.lists[y]) - {c} for y in others]
            pair = next(((a, b) for a in L.lists[x2] for b in L.lists[x3]
                         if all({a, b} != s for s in reduced)), None)
            if pair is None:
                raise FalsificationAlarm("no unused pair among nine",
                                         {"lists": [list(x) for x in L.lists], "request": [z, c]})
            col[x2], col[x3] = pair
        fill(others, {col[x] for x in K37_X})
    else:
        reduced = {x: [a for a in L.lists[x] if a != c] for x in K37_X}
        others = [y for y in K37_Y if y != z]
        shared = None
        for i, j in combinations(K37_X, 2):
            both = sorted(set(reduced[i]) & set(reduced[j]))
            if both:
                shared = (i, j, both[0])
                break
        if shared is not None:
            i, j, a = shared
            col[i] = col[j] = a
            k = next(x for x in K37_X if x not in (i, j))
            col[k] = a if a in reduced[k] else reduced[k][0]
        else:
            lists_y = [set(L.lists[y]) for y in others]
            triple = next((t for t in product(*(reduced[x] for x in K37_X))
                           if all(set(t) != s for s in lists_y)), None)
            if triple is None:
                raise FalsificationAlarm("no unused triple among eight",
                                         {"lists": [list(x) for x in L.lists], "request": [z, c]})
            for x, a in zip(K37_X, triple):
                col[x] = a
        fill(others, {col[x] for x in K37_X})
    f = tuple(col)
    check_coloring(g, L, f)
    assert f[z] == c
    return f


@dataclass(frozen=True)
class K37Report:
    rho: Fraction
    whole_graph_ratio: Fraction  # n / alpha(G), smaller than rho here
    single_request_checks: int
    single_request_failures: int
    certificate_satisfied: int
    certificate_domain: int
    threshold: int  # honoured requests that (3, 1/rho)-flexibility would force
    chi_flex_exceeds_3: bool

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        for key in ("rho", "whole_graph_ratio"):
            x = out[key]
            out[key] = f"{x.numerator}/{x.denominator}"
        return out


def verify_k37_flexibility(samples: int = 1000, seed: int = 0, palette: int = 6) -> K37Report:
    """Check both halves of the K_{3,7} claim.

    (a) On ``samples`` random 3-assignments, every single request (all ten
    vertices, every list colour) is honoured, so at least |D|/10 of any
    request is.  (b) The odd-request certificate for l = 1 is a 3-assignment
    with a 3-vertex request of which at most one can be honoured, while
    (3, 1/rho)-flexibility would need ceil(3/rho) of them.
    """
    g = generate("kbip:3,7")
    rng = as_rng(seed)
    checks = failures = 0
    for _ in range(samples):
        L = random_assignment(10, 3, palette, rng)
        for v in range(10):
            for c in L.lists[v]:
                checks += 1
                try:
                    k37_single_request_color(L, Request({v: c}), g)
                except FalsificationAlarm:
                    failures += 1
    rho = hall_ratio(g)
    gc, Lc, rc = oddrequest_instance(1, 7)
    best, _ = satisfy_max(gc, Lc, rc)
    threshold = math.ceil(Fraction(len(rc)) / rho)
    whole = Fraction(g.n, independence_number(g))
    return K37Report(rho, whole, checks, failures, best, len(rc), threshold,
                     best < threshold)
