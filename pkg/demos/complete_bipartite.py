"""The odd-request construction on K_{2l+1,t} and the K_{3,7} single-request solver.

Run: python3 demos/complete_bipartite.py
"""

from flexicolor import (Request, k37_single_request_color, oddrequest_instance, satisfy_max,
                        t0, verify_k37_flexibility)


def main():
    print("t0(l):", [t0(l) for l in range(1, 5)])
    g, L, r = oddrequest_instance(1, 7)
    best, witness = satisfy_max(g, L, r)
    print("left lists :", L.lists[:3])
    print("right lists:", L.lists[3:])
    print(f"request {r.as_dict()} -> at most {best} of {len(r)} honoured, e.g. {witness}")
    f = k37_single_request_color(L, Request({3: 2}))
    print("single request {3: 2} honoured by", f)
    print(verify_k37_flexibility(samples=200).to_json())


if __name__ == "__main__":
    main()
