import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiberdim import (
    CapExceededError,
    Graph,
    cartesian_product,
    color,
    complete_graph,
    complete_multipartite_graph,
    cycle_graph,
    empty_graph,
    is_isomorphic,
    is_proper_coloring,
    path_graph,
    properties,
    star_graph,
    verify_isomorphism,
)


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


graph_strategy = st.integers(2, 6).flatmap(
    lambda n: st.builds(
        lambda mask: Graph.from_edges(
            n,
            [e for i, e in enumerate(combinations(range(n), 2)) if mask >> i & 1],
        ),
        st.integers(0, 2 ** (n * (n - 1) // 2) - 1),
    )
)


class TestGraphBasics:
    def test_loop_rejected(self):
        with pytest.raises(ValueError):
            Graph(2, frozenset({(0, 0)}))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 2)])

    def test_from_edges_normalizes_and_dedups(self):
        g = Graph.from_edges(3, [(2, 0), (0, 2), (1, 2)])
        assert g.edges == frozenset({(0, 2), (1, 2)})

    def test_delete_node(self):
        g = cycle_graph(4)
        h = g.delete_node(3)
        assert h == path_graph(3)

    def test_complement_involution(self):
        g = cycle_graph(5)
        assert g.complement().complement() == g


class TestIsomorphism:
    def test_k3_vs_path_none(self):
        assert is_isomorphic(complete_graph(3), path_graph(3)) is None

    def test_relabeled_graph_found(self):
        rng = random.Random(7)
        for _ in range(20):
            g = random_graph(8, 0.4, rng)
            perm = list(range(8))
            rng.shuffle(perm)
            h = g.relabel(perm)
            mapping = is_isomorphic(g, h)
            assert mapping is not None
            assert verify_isomorphism(g, h, mapping)

    def test_same_degree_sequence_not_isomorphic(self):
        # C_6 vs two triangles: both 2-regular on 6 nodes
        two_triangles = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert is_isomorphic(cycle_graph(6), two_triangles) is None

    def test_petersen_vs_relabeling(self, petersen):
        perm = [3, 8, 1, 0, 9, 4, 7, 2, 6, 5]
        assert is_isomorphic(petersen, petersen.relabel(perm)) is not None

    @given(graph_strategy, st.randoms(use_true_random=False))
    @settings(max_examples=40, deadline=None)
    def test_mapping_always_valid(self, g, rng):
        perm = list(range(g.node_count))
        rng.shuffle(perm)
        mapping = is_isomorphic(g, g.relabel(perm))
        assert mapping is not None


class TestColoring:
    def test_k6_exact(self):
        assert color(complete_graph(6), "exact").k == 6

    def test_c5_exact_is_three(self):
        # independent oracle: no proper 2-coloring exists
        g = cycle_graph(5)
        for mask in range(2 ** 5):
            assign = [(mask >> v) & 1 for v in range(5)]
            assert any(assign[u] == assign[v] for u, v in g.edges)
        c = color(g, "exact")
        assert c.k == 3 and c.exact

    def test_even_cycle_two_colors(self):
        assert color(cycle_graph(8), "exact").k == 2

    def test_exact_cap(self):
        with pytest.raises(CapExceededError):
            color(empty_graph(30), "exact", cap=24)

    def test_greedy_proper_and_upper_bounds_exact(self):
        rng = random.Random(11)
        for _ in range(25):
            g = random_graph(7, 0.5, rng)
            greedy = color(g, "greedy")
            exact = color(g, "exact")
            assert is_proper_coloring(g, greedy)
            assert is_proper_coloring(g, exact)
            assert exact.exact and not greedy.exact
            assert exact.k <= greedy.k

    def test_classes_nonempty(self):
        c = color(star_graph(4), "exact")
        assert all(c.classes())


class TestCartesianProduct:
    def test_k2_times_k2_is_c4(self):
        prod = cartesian_product(complete_graph(2), complete_graph(2))
        assert is_isomorphic(prod, cycle_graph(4)) is not None

    def test_identity_factor(self):
        g = cycle_graph(5)
        assert is_isomorphic(cartesian_product(g, complete_graph(1)), g) is not None

    def test_p2_times_p3_counts(self):
        # direct enumeration: n1*e2 + n2*e1 = 2*2 + 3*1 = 7 edges on 6 nodes
        prod = cartesian_product(path_graph(2), path_graph(3))
        assert prod.node_count == 6
        assert prod.edge_count == 7

    @given(graph_strategy, graph_strategy)
    @settings(max_examples=25, deadline=None)
    def test_commutative_up_to_isomorphism(self, g, h):
        if g.node_count * h.node_count > 12:
            return
        assert is_isomorphic(cartesian_product(g, h), cartesian_product(h, g)) is not None

    def test_associative_up_to_isomorphism(self):
        a, b, c = path_graph(2), path_graph(3), complete_graph(2)
        left = cartesian_product(cartesian_product(a, b), c)
        right = cartesian_product(a, cartesian_product(b, c))
        assert is_isomorphic(left, right) is not None


def has_odd_cycle(g):
    """Brute-force detector: DFS over all simple closed walks."""
    n = g.node_count
    adj = g.adjacency()

    def dfs(start, v, length, visited):
        # stepping to u closes a cycle of length + 1 edges
        for u in adj[v]:
            if u == start and length >= 2 and length % 2 == 0:
                return True
            if u not in visited and length < n:
                if dfs(start, u, length + 1, visited | {u}):
                    return True
        return False

    return any(dfs(s, s, 0, frozenset({s})) for s in range(n))


class TestProperties:
    def test_odd_cycle(self):
        p = properties(cycle_graph(7))
        assert p.connected and not p.bipartite and p.components == 1

    def test_even_cycle(self):
        p = properties(cycle_graph(8))
        assert p.connected and p.bipartite

    def test_two_disjoint_edges(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        p = properties(g)
        assert not p.connected and p.bipartite and p.components == 2

    @given(graph_strategy)
    @settings(max_examples=40, deadline=None)
    def test_bipartite_iff_no_odd_cycle(self, g):
        assert properties(g).bipartite == (not has_odd_cycle(g))


def test_complete_multipartite_counts():
    g = complete_multipartite_graph([2, 2, 1])
    assert g.node_count == 5
    assert g.edge_count == 2 * 2 + 2 * 1 + 2 * 1
