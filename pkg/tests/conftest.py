import pytest

from fiberdim import Graph


@pytest.fixture(scope="session")
def atlas():
    """All nonisomorphic graphs on 1..7 nodes, keyed by node count."""
    import networkx as nx

    by_nodes = {n: [] for n in range(1, 8)}
    for G in nx.graph_atlas_g():
        n = G.number_of_nodes()
        if n == 0:
            continue
        by_nodes[n].append(Graph.from_edges(n, G.edges()))
    return by_nodes


@pytest.fixture(scope="session")
def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@pytest.fixture(scope="session")
def figure_triangle():
    from fiberdim import LatticePolytope

    return LatticePolytope([(-1, 0), (3, -1), (2, 2)])
