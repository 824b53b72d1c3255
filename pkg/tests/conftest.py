import pytest

from peerscope.graph import SocialGraph


def build_graph(name, labels, ties, *, directed=True, weighted=False):
    g = SocialGraph(name, directed=directed, weighted=weighted)
    ids = {label: g.add_node(label).id for label in labels}
    for tie in ties:
        if weighted:
            src, dst, w = tie
            g.add_tie(ids[src], ids[dst], w)
        else:
            src, dst = tie
            g.add_tie(ids[src], ids[dst])
    return g.freeze()


@pytest.fixture
def cyc3():
    """Directed unweighted 3-cycle a->b->c->a."""
    return build_graph("cyc3", "abc", [("a", "b"), ("b", "c"), ("c", "a")])


@pytest.fixture
def line4():
    """Undirected path a-b-c-d."""
    return build_graph(
        "line4", "abcd", [("a", "b"), ("b", "c"), ("c", "d")], directed=False
    )


@pytest.fixture
def star4():
    """Undirected star: center s, leaves x, y, z."""
    return build_graph(
        "star4", ["s", "x", "y", "z"], [("s", "x"), ("s", "y"), ("s", "z")], directed=False
    )


@pytest.fixture
def k3d():
    """Complete directed graph on three nodes (6 arcs)."""
    ties = [(u, v) for u in "abc" for v in "abc" if u != v]
    return build_graph("k3d", "abc", ties)
