"""Closed-form bound evaluators.

These are the only floating-point computations in the package.  Each
condition check reports the left-hand side and its distance from 1; when
that distance is below ``HIGH_PRECISION_MARGIN`` the check is redone with
mpmath at 60 significant digits and the exact-ish answer is used instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import InputError

HIGH_PRECISION_MARGIN = 1e-6
CEIL_GUARD = 1e-9


def binary_entropy(p: float) -> float:
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


@dataclass(frozen=True)
class JoinBound:
    value: int
    terms: tuple[int, int, int]
    raw_terms: tuple[float, float]
    # ceilings recomputed after shifting the raw terms down by CEIL_GUARD;
    # they differ from ``terms`` only when a raw term sits on an integer
    guarded_terms: tuple[int, int]

    @property
    def ambiguous(self) -> bool:
        return self.guarded_terms != self.terms[:2]

    @property
    def guarded_value(self) -> int:
        return max(*self.guarded_terms, self.terms[2])


def join_bound_report(n: int, s: int, m: int, l: int, r_param: float) -> JoinBound:
    """Upper bound on the flexibility number of the join of two copies of G.

    G has n vertices, is s-choosable, has flexibility number m, and
    l = ceil(n / Hall ratio of G).  ``r_param`` is the free real parameter
    (> 2) trading the two list-size terms against each other.
    """
    if n < 2:
        raise InputError("n must be >= 2")
    if not r_param > 2:
        raise InputError("r_param must exceed 2")
    first = l + math.log2(2 * n - l) / (1 - binary_entropy(1 / r_param))
    second = r_param * (s - 1) + l
    c1, c2 = math.ceil(first), math.ceil(second)
    g1, g2 = math.ceil(first - CEIL_GUARD), math.ceil(second - CEIL_GUARD)
    return JoinBound(max(c1, c2, m), (c1, c2, m), (first, second), (g1, g2))


def join_bound(n: int, s: int, m: int, l: int, r_param: float) -> int:
    return join_bound_report(n, s, m, l, r_param).value


def join_bound_high_precision(n, s, m, l, r_param, dps: int = 60) -> int:
    """Same bound in mpmath arithmetic; used as an independent check."""
    with mpmath.workdps(dps):
        r = mpmath.mpf(r_param)
        p = 1 / r
        h = -p * mpmath.log(p, 2) - (1 - p) * mpmath.log(1 - p, 2)
        first = l + mpmath.log(2 * n - l, 2) / (1 - h)
        second = r * (s - 1) + l
        return max(int(mpmath.ceil(first)), int(mpmath.ceil(second)), m)


@dataclass(frozen=True)
class ConditionCheck:
    holds: bool
    value: float
    margin: float
    log_value: float
    high_precision: bool = False

    def __bool__(self) -> bool:
        return self.holds

    @property
    def flagged(self) -> bool:
        return abs(self.margin) < HIGH_PRECISION_MARGIN


def _logaddexp(a: float, b: float) -> float:
    hi = max(a, b)
    return hi + math.log(math.exp(a - hi) + math.exp(b - hi))


def _from_log(log_value: float, strict: bool) -> ConditionCheck:
    value = math.exp(log_value) if log_value < 700 else math.inf
    holds = log_value < 0 if strict else log_value <= 0
    return ConditionCheck(holds, value, 1 - value, log_value)


def joinpath_check(n: int, p: float, k: int) -> ConditionCheck:
    """(n/2)(1-p)^(k-2) + n p^(k-1-n/2) (p + (k-n/2)(1-p)) <= 1."""
    if n < 2 or n % 2:
        raise InputError("n must be a positive even integer")
    if not 0 < p < 1:
        raise InputError("p must lie in (0, 1)")
    if not k > max(2, n // 2):
        raise InputError("k must exceed max(2, n/2)")
    half = n // 2
    log_a = math.log(half) + (k - 2) * math.log1p(-p)
    log_b = math.log(n) + (k - 1 - half) * math.log(p) + math.log(p + (k - half) * (1 - p))
    check = _from_log(_logaddexp(log_a, log_b), strict=False)
    if check.flagged:
        with mpmath.workdps(60):
            P = mpmath.mpf(p)
            lhs = half * (1 - P) ** (k - 2) + n * P ** (k - 1 - half) * (P + (k - half) * (1 - P))
            holds = lhs <= 1
            check = ConditionCheck(bool(holds), float(lhs), float(1 - lhs),
                                   float(mpmath.log(lhs)), True)
    return check


def joinpath_condition(n: int, p: float, k: int) -> bool:
    return joinpath_check(n, p, k).holds


def oddrequest_check(l: int, p: float, k: int) -> ConditionCheck:
    """(2l+1)(1-p)^k + (2l)^l 2^(2l+1) p^k < 1, evaluated in log space."""
    if l < 1:
        raise InputError("l must be >= 1")
    if not 0 < p < 1:
        raise InputError("p must lie in (0, 1)")
    log_a = math.log(2 * l + 1) + k * math.log1p(-p)
    log_b = l * math.log(2 * l) + (2 * l + 1) * math.log(2) + k * math.log(p)
    check = _from_log(_logaddexp(log_a, log_b), strict=True)
    if check.flagged:
        with mpmath.workdps(60):
            P = mpmath.mpf(p)
            lhs = (2 * l + 1) * (1 - P) ** k + mpmath.mpf(2 * l) ** l * mpmath.mpf(2) ** (2 * l + 1) * P ** k
            check = ConditionCheck(bool(lhs < 1), float(lhs), float(1 - lhs),
                                   float(mpmath.log(lhs)), True)
    return check


def oddrequest_condition(l: int, p: float, k: int) -> bool:
    return oddrequest_check(l, p, k).holds
