"""List packings, balanced colouring families and the ladder recursion."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from .errors import FalsificationAlarm, InputError
from .exact import check_coloring, find_packing, satisfy_max
from .graph import Graph, grid_graph
from .lists import ListAssignment, Request, count_satisfied

log = logging.getLogger(__name__)

FLAGS = ("proper", "disjoint", "balanced")


@dataclass(frozen=True)
class ColoringFamily:
    members: tuple
    lists: ListAssignment
    flags: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {"members": [list(f) for f in self.members], "flags": dict(self.flags)}


@dataclass(frozen=True)
class FamilyReport:
    flags: dict
    multiplicity: int | None
    violation: str | None

    @property
    def ok(self) -> bool:
        return self.violation is None


def verify_family(g: Graph, L: ListAssignment, family, require=FLAGS) -> FamilyReport:
    """Check the requested flags exhaustively; report the first violation found."""
    members = family.members if isinstance(family, ColoringFamily) else tuple(family)
    unknown = set(require) - set(FLAGS)
    if unknown:
        raise InputError(f"unknown family flags {sorted(unknown)}")
    flags, violation, mult = {}, None, None

    def fail(msg):
        nonlocal violation
        violation = violation or msg
        return False

    for f in members:
        if len(f) != g.n:
            raise InputError("family member is not total on the vertex set")
    if "proper" in require:
        ok = True
        for i, f in enumerate(members):
            for v in range(g.n):
                if f[v] not in L.lists[v]:
                    ok = fail(f"member {i} vertex {v}: colour {f[v]} not in list")
                    break
                bad = next((u for u in g.adjacency[v] if f[u] == f[v]), None)
                if bad is not None:
                    ok = fail(f"member {i} vertex {v}: clashes with neighbour {bad}")
                    break
            if not ok:
                break
        flags["proper"] = ok
    if "disjoint" in require:
        ok = True
        for v in range(g.n):
            seen = {}
            for i, f in enumerate(members):
                if f[v] in seen:
                    ok = fail(f"members {seen[f[v]]} and {i} agree at vertex {v}")
                    break
                seen[f[v]] = i
            if not ok:
                break
        flags["disjoint"] = ok
    if "balanced" in require:
        ok = True
        for v in range(g.n):
            tally = Counter(f[v] for f in members)
            for c in L.lists[v]:
                if mult is None:
                    mult = tally[c]
                if tally[c] != mult:
                    ok = fail(f"vertex {v}: colour {c} used {tally[c]} times, expected {mult}")
                    break
            if not ok:
                break
            extra = set(tally) - set(L.lists[v])
            if extra:
                ok = fail(f"vertex {v}: colours {sorted(extra)} outside the list")
                break
        flags["balanced"] = ok
        if not ok:
            mult = None
    return FamilyReport(flags, mult, violation)


# ------------------------------------------------------------ path packing


def _path_order(p: Graph) -> list[int]:
    if p.n == 1:
        return [0]
    if p.edge_count != p.n - 1 or p.max_degree > 2:
        raise InputError("graph is not a path")
    ends = [v for v in range(p.n) if p.degree(v) == 1]
    if len(ends) != 2:
        raise InputError("graph is not a path")
    order, prev = [ends[0]], None
    while len(order) < p.n:
        nxt = [u for u in p.adjacency[order[-1]] if u != prev]
        if not nxt:
            raise InputError("graph is not a path")
        prev = order[-1]
        order.append(nxt[0])
    return order


def _two_packing_along(lists: list[tuple[int, ...]]) -> tuple[list[int], list[int]]:
    """Two disjoint proper colourings of a path given its 2-lists in path order.

    States are ordered pairs (first colouring, second colouring) at a vertex;
    a transition is allowed when neither colouring repeats along the edge.
    """
    states = [[(a, b), (b, a)] for a, b in lists]
    reach = [[True, True]]
    back = [[None, None]]
    for i in range(1, len(lists)):
        row_reach, row_back = [], []
        for s in states[i]:
            pred = next((j for j, t in enumerate(states[i - 1])
                         if reach[-1][j] and t[0] != s[0] and t[1] != s[1]), None)
            row_reach.append(pred is not None)
            row_back.append(pred)
        reach.append(row_reach)
        back.append(row_back)
    if not any(reach[-1]):
        raise FalsificationAlarm("path has no 2-packing from 2-lists", {"lists": lists})
    j = reach[-1].index(True)
    first, second = [0] * len(lists), [0] * len(lists)
    for i in range(len(lists) - 1, -1, -1):
        first[i], second[i] = states[i][j]
        j = back[i][j]
    return first, second


def path_two_packing(p: Graph, L2: ListAssignment) -> ColoringFamily:
    """Two vertex-disjoint proper L2-colourings of a path with 2-lists."""
    if any(len(lst) != 2 for lst in L2.lists) or len(L2) != p.n:
        raise InputError("every list must have exactly two colours")
    order = _path_order(p)
    a, b = _two_packing_along([L2.lists[v] for v in order])
    members = []
    for seq in (a, b):
        f = [0] * p.n
        for v, c in zip(order, seq):
            f[v] = c
        members.append(tuple(f))
    fam = ColoringFamily(tuple(members), L2, {"proper": True, "disjoint": True})
    report = verify_family(p, L2, fam, ("proper", "disjoint"))
    if not report.ok:
        raise FalsificationAlarm(f"path packing failed verification: {report.violation}")
    return fam


# ------------------------------------------------------------ grid family


def _grid_shape(g: Graph) -> tuple[int, int]:
    rows, cols = g.meta.get("rows"), g.meta.get("cols")
    if rows is None or cols is None or g.meta.get("kind") not in ("grid", "ladder"):
        raise InputError("graph carries no grid metadata; build it with grid:n,m")
    if grid_graph(rows, cols).adjacency != g.adjacency:
        raise InputError("graph does not match its grid metadata")
    return rows, cols


def _bijection(src: tuple[int, ...], dst: tuple[int, ...]) -> dict[int, int]:
    common = set(src) & set(dst)
    f = {c: c for c in common}
    f.update(zip([c for c in src if c not in common], [c for c in dst if c not in common]))
    return f


def grid_balanced_family(g: Graph, L3: ListAssignment) -> ColoringFamily:
    """3 * 2^(cols-1) colourings of a grid using each list colour in exactly a third.

    Built column by column.  The first column gets one greedy colouring plus
    a 2-packing of what is left; each later column extends every colouring of
    the previous columns two ways, by a 2-packing of the lists with the image
    of the left neighbour's colour removed.
    """
    rows, cols = _grid_shape(g)
    if len(L3) != g.n or any(len(lst) != 3 for lst in L3.lists):
        raise InputError("grid family needs a 3-assignment")
    column = [list(range(j * rows, (j + 1) * rows)) for j in range(cols)]

    first = []
    for i, v in enumerate(column[0]):
        above = first[i - 1] if i else None
        first.append(next(c for c in L3.lists[v] if c != above))
    residual = [tuple(c for c in L3.lists[v] if c != first[i]) for i, v in enumerate(column[0])]
    a, b = _two_packing_along(residual)
    family = [first, a, b]

    for j in range(1, cols):
        maps = [_bijection(L3.lists[column[j - 1][i]], L3.lists[column[j][i]]) for i in range(rows)]
        grown = []
        for prev in family:
            left = prev[-rows:]
            pruned = [tuple(c for c in L3.lists[v] if c != maps[i][left[i]])
                      for i, v in enumerate(column[j])]
            a, b = _two_packing_along(pruned)
            for ext in (a, b):
                if any(ext[i] == left[i] for i in range(rows)):
                    raise FalsificationAlarm("row edge clash in grid extension", {"column": j})
                grown.append(prev + ext)
        family = grown

    fam = ColoringFamily(tuple(tuple(f) for f in family), L3)
    report = verify_family(g, L3, fam, ("proper", "balanced"))
    expected = 3 * 2 ** (cols - 1)
    if not report.ok or len(fam) != expected or report.multiplicity != expected // 3:
        raise FalsificationAlarm(f"grid family failed verification: {report.violation}")
    return ColoringFamily(fam.members, L3, {"proper": True, "balanced": report.multiplicity})


def best_of_family(family: ColoringFamily, r: Request) -> tuple:
    """The member honouring the most requests; at least ceil(|D|/k) by pigeonhole."""
    L = family.lists
    k = L.uniform_size
    if k is None:
        raise InputError("family lists are not uniform")
    mult = family.flags.get("balanced")
    if mult is None or mult is False or mult is True:
        n = len(L)
        report = verify_family(Graph.from_edges(n, []), L, family, ("balanced",))
        if not report.ok:
            raise InputError(f"family is not balanced: {report.violation}")
        mult = report.multiplicity
    if len(family) != mult * k:
        raise InputError(f"family has {len(family)} members, expected {mult * k}")
    scores = [count_satisfied(r, f) for f in family.members]
    best = max(range(len(scores)), key=lambda i: (scores[i], -i))
    floor = -(-len(r) // k)
    if scores[best] < floor:
        raise FalsificationAlarm("pigeonhole selector below ceil(|D|/k)")
    return family.members[best]


def packing_family(g: Graph, L: ListAssignment) -> ColoringFamily | None:
    """A k-packing for a k-assignment found by exhaustive search, as a family."""
    found = find_packing(g, L)
    if found is None:
        return None
    return ColoringFamily(tuple(found), L, {"proper": True, "disjoint": True, "balanced": 1})


# ---------------------------------------------------------------- ladders


class LadderStats(Counter):
    """Counts of recursion routes taken; ``alarm`` counts oracle fallbacks."""


def _ladder_shape(g: Graph) -> tuple[int, int | None]:
    n = (g.n + 1) // 2
    full = grid_graph(2, n)
    if g.n % 2 == 0 and full.adjacency == g.adjacency:
        return n, None
    if g.n % 2 == 1:
        sub, _ = full.induced(range(g.n))
        if sub.adjacency == g.adjacency:
            return n, 1
    raise InputError("graph is not a ladder or a ladder minus its last corner")


def ladder_flexible_color(g: Graph, L3: ListAssignment, r: Request,
                          stats: Counter | None = None) -> tuple:
    """Proper colouring of a 2 x n ladder (or the ladder minus its last corner)
    from 3-lists honouring at least half of the requests.

    Works by induction over ladder prefixes.  A prefix is ``(n, miss)``: the
    first n columns, where column n lacks row ``miss`` (or is complete for
    None).  Each case solves a smaller prefix and then colours the one or two
    new columns; that last step is an exhaustive search over at most four
    vertices, which never does worse than the hand extensions it replaces.
    Any prefix that still misses its half-quota raises an alarm in the log and
    is answered by the exact solver.
    """
    n, miss = _ladder_shape(g)
    if len(L3) != g.n or any(len(lst) != 3 for lst in L3.lists):
        raise InputError("ladder colouring needs a 3-assignment")
    stats = stats if stats is not None else Counter()
    req = r.as_dict()
    for v in req:
        if v >= g.n or req[v] not in L3.lists[v]:
            raise InputError(f"request at vertex {v} is invalid")
    solver = _Ladder(g, L3, req, stats)
    col = solver.solve(n, miss)
    f = tuple(col[v] for v in range(g.n))
    check_coloring(g, L3, f)
    if count_satisfied(r, f) < -(-len(req) // 2):
        raise FalsificationAlarm("ladder colouring below half of the requests")
    return f


def _vid(row: int, colm: int) -> int:
    return 2 * (colm - 1) + row


class _Ladder:
    def __init__(self, g, L, req, stats):
        self.g, self.L, self.req, self.stats = g, L, req, stats
        self.memo = {}

    def vertices(self, n, miss):
        vs = list(range(2 * (n - 1))) if n >= 1 else []
        vs += [_vid(i, n) for i in (0, 1) if n >= 1 and i != miss]
        return vs

    def need(self, vs):
        return -(-sum(v in self.req for v in vs) // 2)

    def score(self, col):
        return sum(1 for v, c in self.req.items() if col.get(v) == c)

    def extend(self, fixed: dict, new: list[int]) -> dict | None:
        """Best colouring of ``new`` given ``fixed``, by exhaustive search."""
        options = []
        for v in new:
            taken = {fixed[u] for u in self.g.adjacency[v] if u in fixed}
            opts = [c for c in self.L.lists[v] if c not in taken]
            want = self.req.get(v)
            opts.sort(key=lambda c: c != want)
            options.append(opts)
        best, best_score = None, -1
        for choice in product(*options):
            trial = dict(zip(new, choice))
            if any(trial[u] == trial[v] for u in new for v in self.g.adjacency[u] if v in trial):
                continue
            s = sum(1 for v in new if self.req.get(v) == trial[v])
            if s > best_score:
                best, best_score = trial, s
        if best is None:
            return None
        out = dict(fixed)
        out.update(best)
        return out

    def route(self, name, sub, drop, new, vs):
        base = dict(self.solve(*sub)) if sub[0] >= 1 else {}
        for v in drop:
            base.pop(v, None)
        col = self.extend(base, new)
        self.stats[name] += 1
        if col is not None and self.score(col) >= self.need(vs):
            return col
        self.stats[name + ":short"] += 1
        return None

    def solve(self, n, miss):
        key = (n, miss)
        if key in self.memo:
            return self.memo[key]
        vs = self.vertices(n, miss)
        col = None
        if len(vs) <= 3:
            # G1', G1 and G2' are paths
            col = self.exact(vs)
            self.stats["base"] += 1
        elif miss is None:
            col = self.full(n, vs)
        else:
            col = self.minus(n, miss, vs)
        if col is None:
            self.stats["alarm"] += 1
            log.warning("ladder case gap at prefix (n=%d, miss=%s); using exact solver", n, miss)
            col = self.exact(vs)
        self.memo[key] = col
        return col

    def exact(self, vs):
        sub, back = self.g.induced(vs)
        lists = ListAssignment(tuple(self.L.lists[v] for v in back))
        r = Request({i: self.req[v] for i, v in enumerate(back) if v in self.req})
        if len(r):
            _, f = satisfy_max(sub, lists, r)
        else:
            from .exact import find_proper_coloring
            f = find_proper_coloring(sub, lists)
        if f is None:
            raise FalsificationAlarm("ladder prefix has no proper colouring")
        return {v: f[i] for i, v in enumerate(back)}

    def full(self, n, vs):
        req = self.req
        c0, c1 = _vid(0, n), _vid(1, n)
        u0, u1 = _vid(0, n - 1), _vid(1, n - 1)
        routes = []
        if c1 not in req or c0 not in req:
            # drop an unrequested corner, colour it last
            drop = 1 if c1 not in req else 0
            corner = c1 if drop == 1 else c0
            routes.append(("corner-free", (n, drop), [], [corner]))
        elif req[c0] == req[c1]:
            routes.append(("corners-equal", (n - 1, None), [], [c0, c1]))
        else:
            routes.append(("corners-distinct", (n - 2, None), [], [u0, u1, c0, c1]))
            routes.append(("corners-distinct-recolor", (n - 1, None), [u0, u1], [u0, u1, c0, c1]))
        return self.first_good(routes, vs)

    def minus(self, n, miss, vs):
        req = self.req
        q = 1 - miss
        p = _vid(q, n)
        uq, um = _vid(q, n - 1), _vid(miss, n - 1)
        routes = []
        if p not in req:
            routes.append(("corner-free", (n - 1, None), [], [p]))
        else:
            routes.append(("prime-two-back", (n - 2, None), [], [uq, um, p]))
            if req.get(uq) == req[p]:
                routes.append(("prime-equal", (n - 1, q), [], [uq, p]))
            else:
                routes.append(("prime-recolor", (n - 1, miss), [uq], [uq, um, p]))
        return self.first_good(routes, vs)

    def first_good(self, routes, vs):
        for name, sub, drop, new in routes:
            col = self.route(name, sub, drop, new, vs)
            if col is not None:
                return col
        return None
