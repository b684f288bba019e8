"""Simple undirected graphs and the exact algorithms the rest of the
package leans on: isomorphism, coloring, connectivity, bipartiteness and
cartesian products.

Nodes are dense 0-based indices. All values are immutable after
construction and every operation is a pure function, so everything can be
shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError

DEFAULT_COLORING_CAP = 24


@dataclass(frozen=True)
class Graph:
    """A simple graph: no loops, no multi-edges, endpoints in range."""

    node_count: int
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at node {u}")
            if not (0 <= u < v < self.node_count):
                raise ValueError(f"edge ({u}, {v}) out of range or not normalized")

    @staticmethod
    def from_edges(node_count, edges):
        norm = frozenset((min(u, v), max(u, v)) for u, v in edges)
        return Graph(node_count, norm)

    @property
    def edge_count(self):
        return len(self.edges)

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def adjacency(self):
        adj = [set() for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self):
        deg = [0] * self.node_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def delete_node(self, v):
        """The induced subgraph on all other nodes, reindexed densely."""
        if not (0 <= v < self.node_count):
            raise ValueError(f"node {v} out of range")
        new = lambda w: w if w < v else w - 1
        edges = [(new(a), new(b)) for a, b in self.edges if v not in (a, b)]
        return Graph.from_edges(self.node_count - 1, edges)

    def relabel(self, perm):
        """Image of the graph under node -> perm[node]."""
        return Graph.from_edges(self.node_count, ((perm[u], perm[v]) for u, v in self.edges))

    def complement(self):
        n = self.node_count
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in self.edges]
        return Graph.from_edges(n, edges)


def empty_graph(n):
    return Graph(n, frozenset())


def path_graph(n):
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n):
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(n):
    """K_{1,n}: hub is node 0, leaves are 1..n."""
    return Graph.from_edges(n + 1, ((0, i) for i in range(1, n + 1)))


def complete_multipartite_graph(sizes):
    """Complete multipartite graph; class i occupies a consecutive node block."""
    if any(s < 1 for s in sizes):
        raise ValueError("all class sizes must be positive")
    blocks = []
    start = 0
    for s in sizes:
        blocks.append(range(start, start + s))
        start += s
    edges = []
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            edges.extend((u, v) for u in blocks[i] for v in blocks[j])
    return Graph.from_edges(start, edges)


@dataclass(frozen=True)
class NodeMapping:
    """A bijection node -> node, as a tuple indexed by source node."""

    image: tuple

    def __getitem__(self, v):
        return self.image[v]


def verify_isomorphism(g: Graph, h: Graph, mapping: NodeMapping) -> bool:
    """Exhaustive check that mapping sends edges to edges and non-edges to
    non-edges."""
    if g.node_count != h.node_count:
        return False
    img = mapping.image
    if sorted(img) != list(range(g.node_count)):
        return False
    for u in range(g.node_count):
        for v in range(u + 1, g.node_count):
            if g.has_edge(u, v) != h.has_edge(img[u], img[v]):
                return False
    return True


def _refine_joint(g, h):
    """Iterated neighborhood-degree refinement, run jointly so the color ids
    of both graphs are comparable. Returns (colors_g, colors_h) or None when
    the color histograms separate the graphs."""
    adj_g, adj_h = g.adjacency(), h.adjacency()
    col_g = [len(a) for a in adj_g]
    col_h = [len(a) for a in adj_h]
    while True:
        sig_ids = {}
        new_g, new_h = [], []
        for colors, adj, out in ((col_g, adj_g, new_g), (col_h, adj_h, new_h)):
            for v in range(len(colors)):
                sig = (colors[v], tuple(sorted(colors[u] for u in adj[v])))
                out.append(sig_ids.setdefault(sig, len(sig_ids)))
        if sorted(new_g) != sorted(new_h):
            return None
        if new_g == col_g and new_h == col_h:
            return col_g, col_h
        col_g, col_h = new_g, new_h


def is_isomorphic(g: Graph, h: Graph):
    """Search for a graph isomorphism g -> h.

    Backtracking over a degree/neighborhood partition refinement; intended
    for small graphs (up to a few dozen nodes). Returns a verified
    NodeMapping, or None when no isomorphism exists.
    """
    n = g.node_count
    if n != h.node_count or g.edge_count != h.edge_count:
        return None
    if n == 0:
        return NodeMapping(())
    refined = _refine_joint(g, h)
    if refined is None:
        return None
    col_g, col_h = refined
    adj_g, adj_h = g.adjacency(), h.adjacency()
    class_size = {}
    for c in col_g:
        class_size[c] = class_size.get(c, 0) + 1
    # most constrained first: rare color class, then high degree
    order = sorted(range(n), key=lambda v: (class_size[col_g[v]], -len(adj_g[v]), v))
    by_color = {}
    for w in range(n):
        by_color.setdefault(col_h[w], []).append(w)

    image = [None] * n
    used = [False] * n

    def extend(idx):
        if idx == n:
            return True
        v = order[idx]
        for w in by_color.get(col_g[v], ()):
            if used[w]:
                continue
            ok = True
            for u in adj_g[v]:
                if image[u] is not None and image[u] not in adj_h[w]:
                    ok = False
                    break
            if ok:
                need = sum(1 for u in adj_g[v] if image[u] is not None)
                have = sum(1 for x in adj_h[w] if x in _assigned)
                if need != have:
                    ok = False
            if ok:
                image[v] = w
                used[w] = True
                _assigned.add(w)
                if extend(idx + 1):
                    return True
                image[v] = None
                used[w] = False
                _assigned.discard(w)
        return False

    _assigned = set()
    if not extend(0):
        return None
    mapping = NodeMapping(tuple(image))
    assert verify_isomorphism(g, h, mapping)
    return mapping


@dataclass(frozen=True)
class Coloring:
    """A proper node coloring with colors 0..k-1; exact means k is the
    chromatic number rather than merely an upper bound."""

    class_of: tuple
    k: int
    exact: bool

    def classes(self):
        out = [[] for _ in range(self.k)]
        for v, c in enumerate(self.class_of):
            out[c].append(v)
        return out


def is_proper_coloring(g: Graph, coloring: Coloring) -> bool:
    if len(coloring.class_of) != g.node_count:
        return False
    if any(not (0 <= c < coloring.k) for c in coloring.class_of):
        return False
    if coloring.k and any(not cls for cls in coloring.classes()):
        return False
    return all(coloring.class_of[u] != coloring.class_of[v] for u, v in g.edges)


def _greedy_order(g):
    deg = g.degrees()
    return sorted(range(g.node_count), key=lambda v: (-deg[v], v))


def _greedy_coloring(g):
    adj = g.adjacency()
    assign = [None] * g.node_count
    for v in _greedy_order(g):
        taken = {assign[u] for u in adj[v] if assign[u] is not None}
        c = 0
        while c in taken:
            c += 1
        assign[v] = c
    k = max(assign) + 1 if assign else 0
    return Coloring(tuple(assign), k, exact=False)


def _greedy_clique(g):
    adj = g.adjacency()
    clique = []
    for v in _greedy_order(g):
        if all(v in adj[u] for u in clique):
            clique.append(v)
    return clique


def _k_colorable(g, k):
    """Backtracking k-colorability; returns an assignment or None."""
    n = g.node_count
    adj = g.adjacency()
    order = _greedy_order(g)
    assign = [None] * n

    def place(idx, used):
        if idx == n:
            return True
        v = order[idx]
        taken = {assign[u] for u in adj[v] if assign[u] is not None}
        # new colors are interchangeable: allow at most one fresh color
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            assign[v] = c
            if place(idx + 1, max(used, c + 1)):
                return True
            assign[v] = None
        return False

    if place(0, 0):
        return assign
    return None


def color(g: Graph, mode="exact", cap=DEFAULT_COLORING_CAP) -> Coloring:
    """Proper coloring. Exact mode returns the chromatic number (branch and
    bound between the greedy clique size and the greedy coloring), greedy
    mode a deterministic descending-degree first-fit coloring."""
    if mode == "greedy":
        return _greedy_coloring(g)
    if mode != "exact":
        raise ValueError(f"unknown coloring mode {mode!r}")
    if g.node_count > cap:
        raise CapExceededError(
            f"exact coloring capped at {cap} nodes, got {g.node_count}"
        )
    if g.node_count == 0:
        return Coloring((), 0, exact=True)
    greedy = _greedy_coloring(g)
    lb = max(1, len(_greedy_clique(g)))
    for k in range(lb, greedy.k):
        assign = _k_colorable(g, k)
        if assign is not None:
            # compact color ids so every class is nonempty
            remap = {}
            compact = tuple(remap.setdefault(c, len(remap)) for c in assign)
            return Coloring(compact, len(remap), exact=True)
    return Coloring(greedy.class_of, greedy.k, exact=True)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Cartesian product: (u1,u2) ~ (v1,v2) iff equal in one coordinate and
    adjacent in the other. Node (u, v) gets index u * h.node_count + v."""
    nh = h.node_count
    edges = []
    for u in range(g.node_count):
        for a, b in h.edges:
            edges.append((u * nh + a, u * nh + b))
    for a, b in g.edges:
        for v in range(nh):
            edges.append((a * nh + v, b * nh + v))
    return Graph.from_edges(g.node_count * nh, edges)


@dataclass(frozen=True)
class GraphProperties:
    connected: bool
    bipartite: bool
    components: int


def properties(g: Graph) -> GraphProperties:
    """Connectivity, bipartiteness and component count via BFS 2-coloring."""
    n = g.node_count
    adj = g.adjacency()
    side = [None] * n
    components = 0
    bipartite = True
    for start in range(n):
        if side[start] is not None:
            continue
        components += 1
        side[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in adj[v]:
                if side[u] is None:
                    side[u] = side[v] ^ 1
                    queue.append(u)
                elif side[u] == side[v]:
                    bipartite = False
    return GraphProperties(connected=components <= 1, bipartite=bipartite, components=components)
