"""Seeded Monte Carlo estimates of the fraction of requests honoured."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .algorithms import join_halves, join_split_color, random_degenerate_color
from .errors import InputError
from .exact import check_coloring, list_chromatic_number
from .graph import Graph, degeneracy_order, hall_ratio
from .lists import ListAssignment, Request, count_satisfied, random_assignment, random_request
from .rng import make_rng

ALGORITHMS = ("random-degenerate", "join-split")


@dataclass(frozen=True)
class Estimate:
    algorithm: str
    trials: int
    seed: int
    domain: int
    mean: float
    stdev: float
    min: float
    max: float
    floor: float  # guaranteed expected (or worst-case) fraction
    violations: int  # improper colourings seen; always 0 unless something is broken

    def to_json(self) -> dict:
        return asdict(self)


def default_instance(g: Graph, k: int, seed: int, palette: int | None = None,
                     density: float = 1.0) -> tuple[ListAssignment, Request]:
    """A random k-assignment and request drawn from ``seed`` alone."""
    rng = make_rng(seed)
    L = random_assignment(g.n, k, palette or 2 * k, rng)
    return L, draw_request(L, rng, density)


def draw_request(L: ListAssignment, rng, density: float = 1.0) -> Request:
    if density >= 1.0:
        return Request({v: int(rng.choice(L.lists[v])) for v in range(len(L))})
    return random_request(L, rng, density)


def estimate(algorithm: str, g: Graph, L: ListAssignment | None = None,
             r: Request | None = None, trials: int = 1000, seed: int = 0,
             k: int | None = None, density: float = 1.0, s: int | None = None,
             palette: int | None = None) -> Estimate:
    """Run ``trials`` independent seeded runs and summarise the honoured fraction.

    Trial t uses the generator seeded by (seed, t).  Missing lists or
    request are drawn once from ``seed``; the default list size is d + 2
    for random-degenerate and must be given for join-split.
    """
    if algorithm not in ALGORITHMS:
        raise InputError(f"unknown algorithm '{algorithm}'; choose from {', '.join(ALGORITHMS)}")
    if trials < 1:
        raise InputError("trials must be >= 1")
    order = degeneracy_order(g)
    if algorithm == "random-degenerate":
        k = k or order.d + 2
        floor = 1 / 2 ** (order.d + 1)
    else:
        half = join_halves(g)
        rho = hall_ratio(half)
        s = s or list_chromatic_number(half)
        floor = float(1 / (2 * rho))
        if L is None and k is None:
            raise InputError("join-split needs --lists or --k")
    if L is None:
        L, drawn = default_instance(g, k, seed, palette, density)
        r = r or drawn
    if r is None:
        r = draw_request(L, make_rng(seed), density)
    fractions = np.empty(trials)
    violations = 0
    for t in range(trials):
        rng = make_rng(seed, t)
        if algorithm == "random-degenerate":
            f = random_degenerate_color(g, L, r, rng, order=order)
        else:
            f = join_split_color(g, L, r, s, rng, rho=rho).coloring
        try:
            check_coloring(g, L, f)
        except AssertionError:
            violations += 1
        fractions[t] = count_satisfied(r, f) / len(r)
    stdev = float(fractions.std(ddof=1)) if trials > 1 else 0.0
    return Estimate(algorithm, trials, seed, len(r), float(fractions.mean()), stdev,
                    float(fractions.min()), float(fractions.max()), floor, violations)


def hoeffding_slack(trials: int, width: float = 3.0) -> float:
    """``width`` standard deviations of a [0, 1] mean: width * sqrt(1 / (4N))."""
    return width * math.sqrt(1 / (4 * trials))
