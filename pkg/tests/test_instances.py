from collections import Counter
from math import comb
from fractions import Fraction

import pytest

from flexicolor import (InputError, ListAssignment, Request, generate, k37_single_request_color,
                        make_rng, oddrequest_instance, random_assignment, satisfy_max, t0,
                        verify_k37_flexibility)
from flexicolor.exact import check_coloring
from flexicolor.instances import odd_blocks, odd_family


def test_t0_values():
    assert t0(1) == 7
    assert t0(2) == 181
    assert t0(3) == 1 + 7 * 6 + 21 * 36 + 35 * 216


def test_odd_family_structure():
    for l in (1, 2):
        m = 2 * l + 1
        blocks = odd_blocks(l)
        assert all(len(b) == 2 * l for b in blocks)
        family = odd_family(l)
        assert len(family) == len(set(family)) == t0(l)
        sizes = Counter(sum(1 for c in C if c <= m) for C in family)
        for b, count in sizes.items():
            assert count == comb(m, b) * (2 * l) ** (m - b)
        for C in family:
            assert len(C) == m
            assert all(sum(1 for c in C if c in blk) <= 1 for blk in blocks)
    # |A_B| for |B| = 2 at l = 1
    assert sum(1 for C in odd_family(1) if set(C) & {1, 2, 3} == {1, 2}) == 2


@pytest.mark.parametrize("t", [7, 8])
def test_oddrequest_certificate(t):
    g, L, r = oddrequest_instance(1, t)
    assert g.n == 3 + t
    best, witness = satisfy_max(g, L, r)
    assert best == 1
    check_coloring(g, L, witness)
    if t == 8:
        assert L.lists[-1] == (1, 2, 3)


def test_oddrequest_rejects_small_t():
    with pytest.raises(InputError):
        oddrequest_instance(1, 6)


def test_k37_uniform_lists():
    L = ListAssignment(((0, 1, 2),) * 10)
    f = k37_single_request_color(L, Request({0: 0}))
    assert f[0] == 0 and f[1] == f[2] == 0
    assert all(f[y] in (1, 2) for y in range(3, 10))


def test_k37_certificate_lists_single_requests():
    _, L, _ = oddrequest_instance(1, 7)
    f = k37_single_request_color(L, Request({0: 1}))
    assert f[0] == 1


def test_k37_against_oracle():
    g = generate("kbip:3,7")
    rng = make_rng(11)
    for _ in range(200):
        L = random_assignment(10, 3, 5, rng)
        v = int(rng.integers(0, 10))
        c = L.lists[v][int(rng.integers(0, 3))]
        r = Request({v: c})
        f = k37_single_request_color(L, r, g)
        check_coloring(g, L, f)
        assert f[v] == c and satisfy_max(g, L, r)[0] == 1


def test_k37_input_checks():
    with pytest.raises(InputError):
        k37_single_request_color(ListAssignment(((0, 1),) * 10), Request({0: 0}))
    with pytest.raises(InputError):
        k37_single_request_color(ListAssignment(((0, 1, 2),) * 10), Request({0: 0, 1: 0}))
    with pytest.raises(InputError):
        k37_single_request_color(ListAssignment(((0, 1, 2),) * 10), Request({0: 0}),
                                 generate("kbip:4,6"))


def test_verify_k37_report():
    rep = verify_k37_flexibility(samples=20, seed=3)
    assert rep.single_request_failures == 0
    assert rep.single_request_checks == 20 * 30
    assert rep.rho == 2
    assert rep.whole_graph_ratio == Fraction(10, 7)
    assert rep.certificate_satisfied == 1 and rep.certificate_domain == 3
    assert rep.chi_flex_exceeds_3
    assert rep.to_json()["rho"] == "2/1"
