"""Balanced colouring families on grids and the half-quota ladder colouring.

Run: python3 demos/grids_and_ladders.py
"""

from collections import Counter

from flexicolor import (best_of_family, count_satisfied, generate, grid_balanced_family,
                        ladder_flexible_color, make_rng, random_assignment, random_request,
                        verify_family)


def main():
    rng = make_rng(3)
    g = generate("grid:3,4")
    L = random_assignment(g.n, 3, 5, rng)
    fam = grid_balanced_family(g, L)
    rep = verify_family(g, L, fam, ("proper", "balanced"))
    r = random_request(L, rng, 0.8)
    f = best_of_family(fam, r)
    print(f"grid:3,4 family of {len(fam)} colourings, multiplicity {rep.multiplicity}; "
          f"best member honours {count_satisfied(r, f)} of {len(r)}")

    stats = Counter()
    for spec in ("ladder:4", "ladderminus:5", "ladder:6"):
        g = generate(spec)
        L = random_assignment(g.n, 3, 5, rng)
        r = random_request(L, rng, 1.0)
        f = ladder_flexible_color(g, L, r, stats)
        print(f"{spec:<14} honours {count_satisfied(r, f)} of {len(r)}")
    print("routes used:", dict(stats))


if __name__ == "__main__":
    main()
