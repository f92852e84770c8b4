"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from flexicolor import Graph, ListAssignment


@st.composite
def graphs(draw, min_n=1, max_n=7, p=None):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def assignments(draw, n, k, palette=None):
    palette = palette or k + 2
    lists = []
    for _ in range(n):
        lst = draw(st.lists(st.integers(0, palette - 1), min_size=k, max_size=k, unique=True))
        lists.append(tuple(lst))
    return ListAssignment(tuple(lists))


def random_degenerate_graph(n, d, rng, bipartite=False):
    """Each new vertex joins at most d earlier vertices (of the other side when bipartite)."""
    edges = []
    for v in range(1, n):
        pool = [u for u in range(v) if not bipartite or u % 2 != v % 2]
        if not pool:
            continue
        m = int(rng.integers(0, min(d, len(pool)) + 1))
        for u in rng.choice(pool, size=m, replace=False):
            edges.append((int(u), v))
    return Graph.from_edges(n, edges)
