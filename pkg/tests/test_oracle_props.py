"""Oracle-equivalence spot checks and structural property tests.

The full 500-graph oracle corpus runs in the acceptance suite; here a
smaller corpus keeps the unit run fast, plus hypothesis-driven invariants
(isomorphism invariance, tree betweenness, definitional coincidences).
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peerscope import metrics
from peerscope.graph import SocialGraph

from . import oracles
from .corpus import make_corpus


def assert_matches_oracle(g):
    hops = metrics.geodesic_matrix(g)
    dist, _ = oracles.geodesics(g)
    for s in range(g.n):
        for t in range(g.n):
            assert hops[s, t] == dist.get((s, t), -1), (g.name, s, t)

    if g.n >= 2:
        assert metrics.density(g) == pytest.approx(float(oracles.density(g)), abs=1e-9)
        assert metrics.diameter(g) == oracles.diameter(g)

    for v in range(g.n):
        assert metrics.degrees(g, v) == oracles.degrees(g, v)
        for n in (1, 2):
            assert metrics.n_degree(g, v, n) == oracles.n_degree(g, v, n)
        for direction in ("out", "in"):
            assert metrics.closeness(g, v, direction) == pytest.approx(
                float(oracles.closeness(g, v, direction)), abs=1e-9
            )
        assert metrics.betweenness(g, v) == pytest.approx(
            float(oracles.betweenness(g, v)), abs=1e-9
        )

    assert [set(c.members) for c in metrics.components(g)] == [
        set(c) for c in oracles.components(g)
    ]

    if g.directed:
        assert [t.members for t in metrics.triads(g)] == oracles.triads(g)
    else:
        assert [c.members for c in metrics.cliques(g, 3)] == oracles.cliques(g, 3)
        assert [c.members for c in metrics.n_cliques(g, 2, 3)] == oracles.n_cliques(g, 2, 3)
        assert [c.members for c in metrics.k_plexes(g, 2, 3)] == oracles.k_plexes(g, 2, 3)
        assert [c.members for c in metrics.k_plexes(g, 1, 3)] == oracles.cliques(g, 3)


def test_small_corpus_matches_oracles():
    for g in make_corpus(120):
        assert_matches_oracle(g)


graph_shapes = st.tuples(
    st.integers(min_value=1, max_value=6),  # nodes
    st.booleans(),  # directed
    st.randoms(use_true_random=False),
)


def _build(n, directed, rng):
    g = SocialGraph("h", directed=directed)
    for i in range(n):
        g.add_node(f"v{i}")
    for u in range(n):
        for v in range(u + 1 if not directed else 0, n):
            if u != v and rng.random() < 0.4:
                g.add_tie(u, v)
    return g.freeze()


def _permuted(g, perm):
    out = SocialGraph(g.name, directed=g.directed, weighted=g.weighted)
    for i in range(g.n):
        out.add_node(g.nodes[perm[i]].label)
    inverse = {perm[i]: i for i in range(g.n)}
    for tie in g.ties():
        out.add_tie(inverse[tie.src], inverse[tie.dst], tie.weight)
    return out.freeze()


@settings(max_examples=60, deadline=None)
@given(graph_shapes)
def test_metrics_isomorphism_invariant(shape):
    n, directed, rng = shape
    g = _build(n, directed, rng)
    perm = list(range(n))
    rng.shuffle(perm)
    h = _permuted(g, perm)

    if n >= 2:
        assert metrics.density(g) == metrics.density(h)
        assert metrics.diameter(g) == metrics.diameter(h)
    assert sorted(metrics.betweenness_all(g)) == pytest.approx(
        sorted(metrics.betweenness_all(h)), abs=1e-9
    )
    assert sorted(metrics.degrees(g, v) for v in range(n)) == sorted(
        metrics.degrees(h, v) for v in range(n)
    )
    assert sorted(len(c.members) for c in metrics.components(g)) == sorted(
        len(c.members) for c in metrics.components(h)
    )


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=8), st.randoms(use_true_random=False))
def test_tree_betweenness_equals_interior_node_count(n, rng):
    g = SocialGraph("tree", directed=False)
    for i in range(n):
        g.add_node(f"v{i}")
    for v in range(1, n):
        g.add_tie(rng.randrange(v), v)
    g.freeze()

    total = float(sum(metrics.betweenness_all(g)))
    _, shortest = oracles.geodesics(g)
    expected = sum(
        len(shortest[(s, t)][0]) - 2
        for s in range(n)
        for t in range(s + 1, n)
    )
    assert total == pytest.approx(float(expected), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.randoms(use_true_random=False))
def test_n_clique_definitional_coincidences(n, rng):
    g = _build(n, False, rng)
    assert [c.members for c in metrics.n_cliques(g, 1, 3)] == [
        c.members for c in metrics.cliques(g, 3)
    ]


def test_weight_filter_identity_on_corpus():
    rng = random.Random(7)
    for g in make_corpus(40, seed=rng.randrange(10**6)):
        if g.weighted:
            assert g.filter_min_weight(1).ties() == g.ties()
