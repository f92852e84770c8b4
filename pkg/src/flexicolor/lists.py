"""List assignments, requests, their text formats, and canonical enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import BudgetExceeded, InputError, ParseError
from .graph import Graph


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex colour lists; colours are nonnegative integers."""

    lists: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(tuple(sorted(lst)) for lst in self.lists))

    @classmethod
    def uniform(cls, n: int, colors: Iterable[int]) -> "ListAssignment":
        colors = tuple(colors)
        return cls(tuple(colors for _ in range(n)))

    def __len__(self) -> int:
        return len(self.lists)

    def __getitem__(self, v: int) -> tuple[int, ...]:
        return self.lists[v]

    def __iter__(self):
        return iter(self.lists)

    @property
    def uniform_size(self) -> int | None:
        sizes = {len(lst) for lst in self.lists}
        return sizes.pop() if len(sizes) == 1 else None

    @property
    def min_size(self) -> int:
        return min((len(lst) for lst in self.lists), default=0)

    def palette(self) -> list[int]:
        return sorted({c for lst in self.lists for c in lst})

    def restrict(self, vertices) -> "ListAssignment":
        return ListAssignment(tuple(self.lists[v] for v in vertices))

    def remove(self, removals: Mapping[int, Iterable[int]]) -> "ListAssignment":
        """Copy with the given colours deleted from the given vertices' lists."""
        out = []
        for v, lst in enumerate(self.lists):
            drop = set(removals.get(v, ()))
            out.append(tuple(c for c in lst if c not in drop))
        return ListAssignment(tuple(out))


@dataclass(frozen=True)
class Request:
    """Preferred colours on a nonempty vertex subset D (the domain)."""

    entries: tuple[tuple[int, int], ...] = field(default=())

    def __init__(self, entries=()):
        if isinstance(entries, Mapping):
            items = entries.items()
        else:
            items = list(entries)
        object.__setattr__(self, "entries", tuple(sorted((int(v), int(c)) for v, c in items)))

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, v) -> bool:
        return any(u == v for u, _ in self.entries)

    def get(self, v, default=None):
        for u, c in self.entries:
            if u == v:
                return c
        return default

    def colors(self) -> set[int]:
        return {c for _, c in self.entries}

    def restrict(self, vertices) -> "Request":
        """Entries on ``vertices``, renumbered by their position in that sequence."""
        index = {v: i for i, v in enumerate(vertices)}
        return Request({index[v]: c for v, c in self.entries if v in index})


def count_satisfied(r: Request, coloring) -> int:
    return sum(1 for v, c in r.entries if coloring[v] == c)


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(g: Graph, L: ListAssignment, r: Request | None = None) -> ValidationReport:
    """Collect every problem with (g, L, r) instead of stopping at the first."""
    problems = []
    if len(L) != g.n:
        problems.append(f"list-count-mismatch(n={g.n},lists={len(L)})")
    for v, lst in enumerate(L.lists):
        if not lst:
            problems.append(f"empty-list({v})")
        if len(set(lst)) != len(lst):
            problems.append(f"duplicate-color({v})")
        if any(c < 0 for c in lst):
            problems.append(f"negative-color({v})")
    if r is not None:
        if not r.entries:
            problems.append("empty-request")
        seen = set()
        for v, c in r.entries:
            if v in seen:
                problems.append(f"duplicate-request-vertex({v})")
            seen.add(v)
            if not 0 <= v < g.n:
                problems.append(f"request-vertex-out-of-range({v})")
            elif v >= len(L) or c not in L.lists[v]:
                problems.append(f"request-color-not-in-list({v})")
    return ValidationReport(problems)


def require_valid(g: Graph, L: ListAssignment, r: Request | None = None) -> None:
    report = validate(g, L, r)
    if not report.ok:
        raise InputError("invalid input: " + ", ".join(report.violations))


# -------------------------------------------------------------- text formats


def _int_token(token: str, lineno: int, raw: str, start: int = 0) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"bad integer '{token}'", lineno, raw.find(token, start) + 1) from None
    if value < 0:
        raise ParseError(f"negative integer '{token}'", lineno, raw.find(token, start) + 1)
    return value


def parse_lists(text: str) -> ListAssignment:
    """Parse lines ``v: c1 c2 ... ck``; every vertex 0..n-1 must appear once."""
    lists: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        head, colon, body = line.partition(":")
        if not colon:
            raise ParseError("expected 'v: colours'", lineno)
        v = _int_token(head.strip(), lineno, raw)
        tokens = body.split()
        if not tokens:
            raise ParseError("empty-list", lineno)
        colors = [_int_token(t, lineno, raw, len(head) + 1) for t in tokens]
        if len(set(colors)) != len(colors):
            raise ParseError(f"duplicate colour in list of vertex {v}", lineno)
        if v in lists:
            raise ParseError(f"duplicate vertex {v}", lineno)
        lists[v] = tuple(colors)
    n = len(lists)
    for v in range(n):
        if v not in lists:
            raise ParseError(f"missing list for vertex {v}")
    return ListAssignment(tuple(lists[v] for v in range(n)))


def serialize_lists(L: ListAssignment) -> str:
    return "".join(f"{v}: {' '.join(map(str, lst))}\n" for v, lst in enumerate(L.lists))


def parse_request(text: str) -> Request:
    entries: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected 'v c', got '{line.strip()}'", lineno)
        v = _int_token(tokens[0], lineno, raw)
        c = _int_token(tokens[1], lineno, raw, raw.find(tokens[0]) + len(tokens[0]))
        if v in entries:
            raise ParseError(f"duplicate request vertex {v}", lineno)
        entries[v] = c
    if not entries:
        raise ParseError("empty request")
    return Request(entries)


def serialize_request(r: Request) -> str:
    return "".join(f"{v} {c}\n" for v, c in r.entries)


# ------------------------------------------------------- canonical enumeration
#
# Up to renaming, a list assignment is the multiset of colour "types", the type
# of a colour being the set of vertices whose list holds it.  Naming colours in
# decreasing order of their type's indicator vector (vertex 0 most significant)
# gives the lexicographically smallest renaming of the sorted lists, and that
# naming introduces colours in first-use order.


def _type_bits(n: int, t: int) -> list[int]:
    return [v for v in range(n) if t >> (n - 1 - v) & 1]


def canonical_form(L: ListAssignment) -> ListAssignment:
    """Representative of L's colour-renaming class, as yielded by the enumerator."""
    n = len(L)
    types: dict[int, int] = {}
    for v, lst in enumerate(L.lists):
        for c in lst:
            types[c] = types.get(c, 0) | 1 << (n - 1 - v)
    ordered = sorted(types.values(), reverse=True)
    return _assignment_from_types(n, ordered)


def _assignment_from_types(n: int, types) -> ListAssignment:
    lists: list[list[int]] = [[] for _ in range(n)]
    for color, t in enumerate(types):
        for v in _type_bits(n, t):
            lists[v].append(color)
    return ListAssignment(tuple(tuple(x) for x in lists))


def _type_sequences(n: int, k: int) -> Iterator[list[int]]:
    """Nonincreasing sequences of types covering every vertex exactly k times."""
    remaining = [k] * n
    chosen: list[int] = []
    bit = [1 << (n - 1 - v) for v in range(n)]

    def rec(last: int, avail: int) -> Iterator[list[int]]:
        if not avail:
            yield list(chosen)
            return
        # the lowest vertex still needing colours must lie in the next type
        v0 = n - avail.bit_length()
        hi = min(last, (bit[v0] << 1) - 1)
        for t in range(hi, bit[v0] - 1, -1):
            if t & ~avail:
                continue
            members = _type_bits(n, t)
            new_avail = avail
            for v in members:
                remaining[v] -= 1
                if not remaining[v]:
                    new_avail &= ~bit[v]
            chosen.append(t)
            yield from rec(t, new_avail)
            chosen.pop()
            for v in members:
                remaining[v] += 1

    yield from rec((1 << n) - 1, (1 << n) - 1)


def enumerate_k_assignments(g: Graph | int, k: int) -> Iterator[ListAssignment]:
    """One representative per colour-renaming class of k-assignments.

    Only the vertex count matters; ``g`` may be a Graph or an int.
    The first representative is the constant assignment {0..k-1}.
    """
    n = g if isinstance(g, int) else g.n
    if k < 1:
        raise InputError("k must be >= 1")
    for seq in _type_sequences(n, k):
        yield _assignment_from_types(n, seq)


COUNT_MAX_N = 8


def count_k_assignments(n: int, k: int) -> int:
    """Number of classes ``enumerate_k_assignments`` yields, without building them.

    Dynamic programme over types carrying the vector of remaining list slots.
    """
    if n > COUNT_MAX_N:
        raise InputError(f"exact class count only supported for n <= {COUNT_MAX_N}")
    states = {tuple([k] * n): 1}
    for t in range((1 << n) - 1, 0, -1):
        members = _type_bits(n, t)
        low = members[0]
        nxt: dict[tuple[int, ...], int] = {}
        for rem, ways in states.items():
            if any(rem[v] for v in range(low)):
                continue
            cap = min(rem[v] for v in members)
            cur = list(rem)
            for _ in range(cap + 1):
                key = tuple(cur)
                nxt[key] = nxt.get(key, 0) + ways
                for v in members:
                    cur[v] -= 1
        states = nxt
    return states.get(tuple([0] * n), 0)


def checked_assignments(g: Graph, k: int, cap: int | None) -> Iterator[ListAssignment]:
    """``enumerate_k_assignments`` guarded by a cap on the number of classes."""
    if cap is not None:
        if g.n > COUNT_MAX_N:
            # too many classes to count; report how many we saw before giving up
            seen = sum(1 for _ in zip(range(cap + 1), _type_sequences(g.n, k)))
            if seen > cap:
                raise BudgetExceeded(
                    f"canonical {k}-assignments of a {g.n}-vertex graph (lower bound)", seen, cap)
            return enumerate_k_assignments(g, k)
        total = count_k_assignments(g.n, k)
        if total > cap:
            raise BudgetExceeded(f"canonical {k}-assignments of a {g.n}-vertex graph", total, cap)
    return enumerate_k_assignments(g, k)


def enumerate_requests(L: ListAssignment) -> Iterator[Request]:
    """Every request of L: descending domain size, then lexicographic."""
    n = len(L)
    for size in range(n, 0, -1):
        yield from _requests_of_size(L, size)


def _requests_of_size(L, size):
    from itertools import combinations, product

    for dom in combinations(range(len(L)), size):
        for colors in product(*(L.lists[v] for v in dom)):
            yield Request(zip(dom, colors))


# ------------------------------------------------------------ random inputs


def random_assignment(n: int, k: int, palette: int, rng: np.random.Generator) -> ListAssignment:
    """Each vertex gets k distinct colours drawn uniformly from range(palette)."""
    if palette < k:
        raise InputError("palette smaller than list size")
    return ListAssignment(tuple(
        tuple(int(c) for c in rng.choice(palette, size=k, replace=False)) for _ in range(n)
    ))


def random_request(L: ListAssignment, rng: np.random.Generator, density: float = 0.5,
                   min_size: int = 1) -> Request:
    """Each vertex joins the domain with probability ``density``; colours uniform."""
    n = len(L)
    while True:
        dom = [v for v in range(n) if rng.random() < density]
        if len(dom) >= min(min_size, n):
            break
    return Request({v: int(rng.choice(L.lists[v])) for v in dom})
