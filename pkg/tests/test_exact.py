from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings

from flexicolor import (BudgetExceeded, ListAssignment, Request, chi_flex, chi_flex_report,
                        chromatic_number, degeneracy, epsilon_of, epsilon_report,
                        find_packing, find_proper_coloring, flex_value, generate, hall_ratio,
                        is_choosable, list_chromatic_number, list_packing_number,
                        satisfy_max, worst_request)
from flexicolor.exact import check_coloring
from tests.strategies import assignments, graphs


def brute_colorings(g, L):
    for f in product(*L.lists):
        if all(f[u] != f[v] for u, v in g.edges()):
            yield f


def brute_satisfy_max(g, L, r):
    best = -1
    for f in brute_colorings(g, L):
        best = max(best, sum(1 for v, c in r.entries if f[v] == c))
    return best


def brute_flex_value(g, L):
    cols = list(brute_colorings(g, L))
    if not cols:
        return Fraction(-1)
    best = None
    for size in range(1, g.n + 1):
        for dom in combinations(range(g.n), size):
            for want in product(*(L.lists[v] for v in dom)):
                got = max(sum(1 for v, c in zip(dom, want) if f[v] == c) for f in cols)
                val = Fraction(got, size)
                best = val if best is None else min(best, val)
    return best


@given(graphs(max_n=6), assignments(n=6, k=2, palette=4))
def test_satisfy_max_matches_brute_force(g, L6):
    L = ListAssignment(L6.lists[:g.n])
    r = Request({v: L.lists[v][0] for v in range(0, g.n, 2)})
    count, witness = satisfy_max(g, L, r)
    assert count == brute_satisfy_max(g, L, r)
    if witness is None:
        assert find_proper_coloring(g, L) is None
    else:
        check_coloring(g, L, witness)


@settings(max_examples=25)
@given(graphs(max_n=4), assignments(n=4, k=2, palette=4))
def test_flex_value_matches_brute_force(g, L4):
    L = ListAssignment(L4.lists[:g.n])
    assert flex_value(g, L) == brute_flex_value(g, L)


def test_worst_request_witness_is_consistent():
    g = generate("cycle:5")
    L = ListAssignment(((0, 1, 2),) * 5)
    rep = worst_request(g, L)
    count, _ = satisfy_max(g, L, rep.witness_request)
    assert Fraction(count, len(rep.witness_request)) == rep.value == Fraction(2, 5)


def test_chi_flex_examples():
    assert [chi_flex(generate(f"path:{n}")) for n in (2, 3, 4)] == [2, 2, 2]
    assert chi_flex(generate("cycle:5")) == 3
    assert [chi_flex(generate(f"complete:{n}")) for n in (2, 3, 4)] == [2, 3, 4]


def test_c4_two_lists_not_half_flexible():
    rep = epsilon_report(generate("cycle:4"), 2)
    assert rep.value < Fraction(1, 2)
    assert chi_flex_report(generate("cycle:4")).chi_flex >= 3


@pytest.mark.parametrize("spec", ["cycle:5", "complete:4", "path:4", "kbip:3,3"])
def test_epsilon_at_delta_plus_one_is_inverse_rho(spec):
    g = generate(spec)
    assert epsilon_of(g, g.max_degree + 1) == 1 / hall_ratio(g)


@pytest.mark.parametrize("spec", ["path:3", "path:4", "cycle:4", "complete:3", "kbip:1,3"])
def test_large_list_shortcut_matches_exhaustive(spec):
    g = generate(spec)
    k = g.max_degree + 1
    fast = epsilon_report(g, k)
    slow = epsilon_report(g, k, exhaustive=True)
    assert fast.value == slow.value
    assert "large-list-exact" in fast.flags


def test_epsilon_below_choosability_is_zero():
    rep = epsilon_report(generate("cycle:5"), 2)
    assert rep.value == 0 and "uncolorable-witness" in rep.flags


def test_choosability_and_packing():
    assert list_chromatic_number(generate("cycle:4")) == 2
    assert list_chromatic_number(generate("cycle:5")) == 3
    assert list_chromatic_number(generate("kbip:2,3")) == 2
    ok, bad = is_choosable(generate("kbip:3,3"), 2)
    assert not ok and find_proper_coloring(generate("kbip:3,3"), bad) is None
    for n in range(2, 7):
        assert list_packing_number(generate(f"path:{n}")) == 2
    assert list_packing_number(generate("cycle:4")) == 3


@given(assignments(n=4, k=3, palette=5))
def test_packing_is_disjoint_and_proper(L):
    g = generate("cycle:4")
    fam = find_packing(g, L)
    assert fam is not None and len(fam) == 3
    for f in fam:
        check_coloring(g, L, f)
    assert all(len({f[v] for f in fam}) == 3 for v in range(4))


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        epsilon_report(generate("complete:4"), 3, cap=5)


@pytest.mark.parametrize("spec", ["path:3", "cycle:4", "cycle:5", "complete:3", "kbip:1,3"])
def test_chain_invariants(spec):
    g = generate(spec)
    rep = chi_flex_report(g)
    chi_pack = list_packing_number(g)
    assert chromatic_number(g) <= rep.chi_list <= chi_pack
    assert rep.chi_list <= rep.chi_flex <= g.max_degree + 1
    assert rep.chi_list <= degeneracy(g) + 1
