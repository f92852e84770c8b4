import math
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flexicolor import (ColoringFamily, FalsificationAlarm, InputError, ListAssignment,
                        Request, best_of_family, count_satisfied, enumerate_k_assignments,
                        enumerate_requests, generate, grid_balanced_family,
                        ladder_flexible_color, make_rng, packing_family, path_two_packing,
                        random_assignment, random_request, satisfy_max, verify_family)
from flexicolor.exact import check_coloring
from tests.strategies import assignments


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(st.just(n), assignments(n, 2, 4))))
def test_path_two_packing(args):
    n, L = args
    p = generate(f"path:{n}")
    fam = path_two_packing(p, L)
    rep = verify_family(p, L, fam, ("proper", "disjoint"))
    assert rep.ok and len(fam) == 2


def test_path_two_packing_rejects_non_paths():
    with pytest.raises(InputError):
        path_two_packing(generate("cycle:4"), ListAssignment(((0, 1),) * 4))


def test_verify_family_reports_violations():
    g = generate("path:2")
    L = ListAssignment(((0, 1), (0, 1)))
    rep = verify_family(g, L, [(0, 0), (1, 0)])
    assert not rep.flags["proper"] and not rep.flags["disjoint"]
    assert "clashes" in rep.violation
    ok = verify_family(g, L, [(0, 1), (1, 0)])
    assert ok.ok and ok.multiplicity == 1
    with pytest.raises(InputError):
        verify_family(g, L, [(0, 1)], require=("sparkly",))


@pytest.mark.parametrize("rows,cols", [(r, c) for r in range(1, 5) for c in range(1, 5)])
def test_grid_family_size_and_balance(rows, cols):
    g = generate(f"grid:{rows},{cols}")
    rng = make_rng(rows * 10 + cols)
    for _ in range(5):
        L = random_assignment(g.n, 3, 5, rng)
        fam = grid_balanced_family(g, L)
        size = 3 * 2 ** (cols - 1)
        assert len(fam) == size
        rep = verify_family(g, L, fam, ("proper", "balanced"))
        assert rep.ok and rep.multiplicity == size // 3
        r = random_request(L, rng, 0.6)
        f = best_of_family(fam, r)
        assert math.ceil(len(r) / 3) <= count_satisfied(r, f) <= satisfy_max(g, L, r)[0]


def test_grid_family_needs_metadata():
    with pytest.raises(InputError):
        grid_balanced_family(generate("cycle:4"), ListAssignment(((0, 1, 2),) * 4))


def test_best_of_family_checks_balance():
    L = ListAssignment(((0, 1),))
    unbalanced = ColoringFamily(((0,), (0,)), L)
    with pytest.raises(InputError):
        best_of_family(unbalanced, Request({0: 1}))
    fam = ColoringFamily(((0,), (1,)), L)
    assert best_of_family(fam, Request({0: 1})) == (1,)


def test_packing_family_on_c4():
    g = generate("cycle:4")
    L = ListAssignment(((0, 1, 2),) * 4)
    fam = packing_family(g, L)
    assert verify_family(g, L, fam).ok


@settings(max_examples=60)
@given(st.sampled_from(["ladder:1", "ladder:2", "ladder:3", "ladder:4", "ladder:5",
                        "ladder:6", "ladderminus:2", "ladderminus:4", "ladderminus:6"]),
       st.integers(0, 10**6), st.floats(0.1, 1.0))
def test_ladder_half_floor(spec, seed, density):
    g = generate(spec)
    rng = make_rng(seed)
    L = random_assignment(g.n, 3, 5, rng)
    r = random_request(L, rng, density)
    stats = Counter()
    f = ladder_flexible_color(g, L, r, stats)
    check_coloring(g, L, f)
    assert count_satisfied(r, f) >= math.ceil(len(r) / 2)
    assert stats["alarm"] == 0


def test_ladder_exhaustive_two_columns():
    g = generate("ladderminus:2")
    for L in enumerate_k_assignments(g, 3):
        for r in enumerate_requests(L):
            stats = Counter()
            f = ladder_flexible_color(g, L, r, stats)
            assert count_satisfied(r, f) >= math.ceil(len(r) / 2)
            assert stats["alarm"] == 0


def test_ladder_rejects_other_graphs():
    with pytest.raises(InputError):
        ladder_flexible_color(generate("cycle:6"), ListAssignment(((0, 1, 2),) * 6), Request({0: 0}))


def test_alarm_class_is_exported():
    assert issubclass(FalsificationAlarm, Exception)
