"""Constructive fiber-graph embeddings.

Each constructor returns a verified Embedding: the fiber graph of the
produced polytope and move set is rebuilt from scratch and checked against
the source graph through the vertex map, and the polytope is full
dimensional in its ambient space (constructions that start in a larger
space are passed through the full-dimensional reduction first). The
ambient dimension of an Embedding is therefore always an honest upper
bound witness for the fiber dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

from . import linalg
from .errors import (
    BudgetExceededError,
    CapExceededError,
    EmbeddingError,
    ImproperColoringError,
)
from .fiber import MoveSet, build, validate_move_set
from .graphs import (
    Coloring,
    Graph,
    cartesian_product,
    complete_multipartite_graph,
    cycle_graph,
    empty_graph,
    is_proper_coloring,
    path_graph,
)
from .lattice import (
    DEFAULT_LIMITS,
    EnumerationLimits,
    LatticePolytope,
    dimension,
    enumerate_lattice_points,
    full_dim_reduce,
    is_normal_point_set,
)

AUTO_VOLUME_CEILING = 2_000_000


def _auto_limits(generators):
    width = len(next(iter(generators)))
    volume = 1
    for i in range(width):
        lo = min(g[i] for g in generators)
        hi = max(g[i] for g in generators)
        volume *= hi - lo + 1
    return EnumerationLimits(max_dim=max(width, DEFAULT_LIMITS.max_dim),
                             max_box_volume=max(min(volume, AUTO_VOLUME_CEILING),
                                                DEFAULT_LIMITS.max_box_volume))


@dataclass(frozen=True)
class Embedding:
    """A certificate that graph is isomorphic to the fiber graph of
    (polytope, moves) via vertex_map (node -> lattice point)."""

    graph: Graph
    polytope: LatticePolytope
    moves: MoveSet
    vertex_map: tuple
    method_tag: str

    @property
    def dimension(self):
        return self.polytope.ambient_dim

    def point_of(self, node):
        return self.vertex_map[node]


def _verified_embedding(graph, polytope, moves, vertex_points, tag, limits=None) -> Embedding:
    if limits is None:
        limits = _auto_limits(polytope.generators)
    fiber = build(polytope, moves, limits)
    n = graph.node_count
    if len(fiber.points) != n:
        raise EmbeddingError(
            f"{tag}: polytope has {len(fiber.points)} lattice points for {n} nodes"
        )
    index = {pt: i for i, pt in enumerate(fiber.points)}
    seen = set()
    node_to_fiber = []
    for v in range(n):
        pt = vertex_points[v]
        if pt not in index or pt in seen:
            raise EmbeddingError(f"{tag}: vertex map is not a bijection onto the lattice points")
        seen.add(pt)
        node_to_fiber.append(index[pt])
    mapped_edges = {
        tuple(sorted((node_to_fiber[u], node_to_fiber[v]))) for u, v in graph.edges
    }
    if mapped_edges != set(fiber.graph.edges):
        raise EmbeddingError(f"{tag}: vertex map is not a graph isomorphism")
    if dimension(polytope) != polytope.ambient_dim:
        raise EmbeddingError(f"{tag}: polytope is not full dimensional")
    return Embedding(
        graph=graph,
        polytope=polytope,
        moves=moves,
        vertex_map=tuple(vertex_points),
        method_tag=tag,
    )


def _reduced_embedding(graph, polytope, moves, vertex_points, tag, limits=None) -> Embedding:
    """Reduce to full dimension, transport the vertex map, verify."""
    if limits is None:
        limits = _auto_limits(polytope.generators)
    red = full_dim_reduce(polytope, moves, limits)
    transport = dict(zip(red.original_points, red.reduced_points))
    new_points = [transport[pt] for pt in vertex_points]
    return _verified_embedding(graph, red.p_reduced, red.m_reduced, new_points, tag, limits)


def _edge_moves(graph, vertex_points, ambient_dim):
    reps = set()
    for u, v in graph.edges:
        reps.add(linalg.lex_positive(linalg.vec_sub(vertex_points[u], vertex_points[v])))
    return MoveSet.from_representatives(ambient_dim, reps)


def embed_simplex(g: Graph, limits=None) -> Embedding:
    """Place node i on the unit vector e_i; edges become e_i - e_j moves.

    Works for every simple graph; dimension n - 1 after reduction.
    """
    n = g.node_count
    if n < 1:
        raise ValueError("need at least one node")
    points = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    moves = _edge_moves(g, points, n)
    polytope = LatticePolytope(points)
    return _reduced_embedding(g, polytope, moves, points, "simplex", limits)


def embed_edgeless(n: int) -> Embedding:
    """Edgeless graph on n nodes along a segment (a single point for n = 1)."""
    if n < 1:
        raise ValueError("need at least one node")
    g = empty_graph(n)
    if n == 1:
        polytope = LatticePolytope([()], ambient_dim=0)
        moves = MoveSet(0, frozenset())
        return _verified_embedding(g, polytope, moves, [()], "edgeless-line")
    points = [(i,) for i in range(n)]
    polytope = LatticePolytope(points)
    moves = MoveSet(1, frozenset())
    return _verified_embedding(g, polytope, moves, points, "edgeless-line")


def embed_path(n: int) -> Embedding:
    """Path on n nodes as the segment [0, n-1] with unit moves."""
    if n < 2:
        raise ValueError("a path needs at least two nodes")
    g = path_graph(n)
    points = [(i,) for i in range(n)]
    polytope = LatticePolytope(points)
    moves = MoveSet.from_representatives(1, [(1,)])
    return _verified_embedding(g, polytope, moves, points, "path-line")


def embed_chromatic(g: Graph, coloring: Coloring, limits=None) -> Embedding:
    """Color-class embedding: the j-th node of class i starts at
    (e_i, j * e_i) in 2k coordinates, then the construction is reduced to
    full dimension. With r singleton classes the dimension is at most
    2k - r - 1."""
    if not is_proper_coloring(g, coloring):
        raise ImproperColoringError("coloring is not proper for this graph")
    n = g.node_count
    if n < 1:
        raise ValueError("need at least one node")
    k = coloring.k
    classes = coloring.classes()
    points = [None] * n
    for i, cls in enumerate(classes):
        for idx, v in enumerate(sorted(cls)):  # ascending node -> ascending j
            j = idx + 1
            pt = [0] * (2 * k)
            pt[i] = 1
            pt[k + i] = j
            points[v] = tuple(pt)
    moves = _edge_moves(g, points, 2 * k)
    polytope = LatticePolytope(points)
    emb = _reduced_embedding(g, polytope, moves, points, "chromatic", limits)
    r = sum(1 for cls in classes if len(cls) == 1)
    bound = 2 * k - r - 1 if n > 1 else 0
    if emb.dimension > bound:
        raise EmbeddingError(
            f"chromatic embedding dimension {emb.dimension} exceeds bound {bound}"
        )
    return emb


def _product_two(e1: Embedding, e2: Embedding) -> Embedding:
    g = cartesian_product(e1.graph, e2.graph)
    n2 = e2.graph.node_count
    gens = [p + q for p in e1.polytope.generators for q in e2.polytope.generators]
    z1 = (0,) * e1.dimension
    z2 = (0,) * e2.dimension
    reps = {m + z2 for m in e1.moves.positive_representatives()}
    reps |= {z1 + m for m in e2.moves.positive_representatives()}
    moves = MoveSet.from_representatives(e1.dimension + e2.dimension, reps)
    points = [None] * g.node_count
    for u in range(e1.graph.node_count):
        for v in range(n2):
            points[u * n2 + v] = e1.vertex_map[u] + e2.vertex_map[v]
    polytope = LatticePolytope(gens)
    return _verified_embedding(g, polytope, moves, points, "product")


def embed_product(parts) -> Embedding:
    """Cartesian product of embeddings; dimension adds up exactly."""
    parts = list(parts)
    if len(parts) < 2:
        raise ValueError("a product needs at least two factors")
    emb = parts[0]
    for nxt in parts[1:]:
        emb = _product_two(emb, nxt)
    if emb.dimension != sum(p.dimension for p in parts):
        raise EmbeddingError("product dimension must be the sum of factor dimensions")
    return emb


def embed_apex(g: Graph, v: int, sub: Embedding) -> Embedding:
    """Cone a verified embedding of g - v: the old points move to height 1,
    node v sits at the origin, and each neighbor contributes the move to
    its own lifted point. Raises the dimension by exactly one."""
    if sub.graph != g.delete_node(v):
        raise ValueError("sub must be an embedding of the graph with v deleted")
    d = sub.dimension
    sub_index = lambda w: w if w < v else w - 1
    points = [None] * g.node_count
    points[v] = (0,) * (d + 1)
    for w in range(g.node_count):
        if w != v:
            points[w] = (1,) + sub.vertex_map[sub_index(w)]
    neighbors = sorted(u for u in range(g.node_count) if g.has_edge(u, v))
    reps = {(0,) + m for m in sub.moves.positive_representatives()}
    reps |= {linalg.lex_positive((1,) + sub.vertex_map[sub_index(u)]) for u in neighbors}
    moves = MoveSet.from_representatives(d + 1, reps)  # MoveSetError on collision
    polytope = LatticePolytope(points)
    emb = _verified_embedding(g, polytope, moves, points, "apex")
    if emb.dimension != d + 1:
        raise EmbeddingError("apex embedding must raise the dimension by one")
    return emb


def smallest_coprime_shift(n: int) -> int:
    """Smallest k with 2 <= k < n/2 and gcd(k, n) = 1, or None."""
    k = 2
    while 2 * k < n:
        if math.gcd(k, n) == 1:
            return k
        k += 1
    return None


def embed_cycle(n: int) -> Embedding:
    """C_n on the segment [1, n] with moves {k, n-k} for the smallest
    admissible k; lengths 3, 4 and 6 admit no such k and fall back to the
    apex construction over a path, in dimension 2."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    g = cycle_graph(n)
    if n in (3, 4, 6):
        return embed_apex(g, n - 1, embed_path(n - 1))
    k = smallest_coprime_shift(n)
    points = [(1 + (i * k) % n,) for i in range(n)]
    moves = MoveSet.from_representatives(1, [(k,), (n - k,)])
    polytope = LatticePolytope(points)
    return _verified_embedding(g, polytope, moves, points, "cycle-difference")


def embed_complete_multipartite(sizes, limits=None) -> Embedding:
    """Classes get distinct binary codes on s = ceil(log2 r) coordinates;
    within a class the first n_i binary words on m = ceil(log2 max n_i)
    coordinates separate the nodes. Dimension at most s + m."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError("need at least one class, all of positive size")
    r = len(sizes)
    s = (r - 1).bit_length()
    m = (max(sizes) - 1).bit_length()
    g = complete_multipartite_graph(sizes)

    def code(value, width):
        return tuple((value >> t) & 1 for t in range(width))

    words = list(product((0, 1), repeat=m)) if m else [()]
    points = []
    for i, size in enumerate(sizes):
        ci = code(i, s)
        for w in words[:size]:
            points.append(ci + w)
    moves = _edge_moves(g, points, s + m)
    polytope = LatticePolytope(points)
    emb = _reduced_embedding(g, polytope, moves, points, "multipartite", limits)
    if emb.dimension > s + m:
        raise EmbeddingError(
            f"multipartite embedding dimension {emb.dimension} exceeds {s + m}"
        )
    return emb


@dataclass(frozen=True)
class DpsPointSet:
    """A normal point set whose pairwise sums (doubles included) are all
    distinct, so any move assignment realizes each edge exactly once."""

    points: tuple
    pair_sum_count: int

    def __post_init__(self):
        n = len(self.points)
        expected = n * (n - 1) // 2 + n
        if self.pair_sum_count != expected:
            raise ValueError("pair_sum_count must equal C(n,2) + n")


def _sums_distinct(points):
    n = len(points)
    sums = {linalg.vec_add(p, q) for p, q in combinations(points, 2)}
    sums |= {linalg.vec_add(p, p) for p in points}
    return len(sums) == n * (n - 1) // 2 + n


@dataclass(frozen=True)
class DpsCheck:
    normal: bool
    sums_distinct: bool
    dps: bool


def is_distinct_pair_sum(points, limits=DEFAULT_LIMITS) -> DpsCheck:
    pts = tuple(sorted({tuple(int(x) for x in p) for p in points}))
    if not pts:
        raise ValueError("need a nonempty point set")
    sums_ok = _sums_distinct(pts)
    normal = is_normal_point_set(pts, limits)
    return DpsCheck(normal=normal, sums_distinct=sums_ok, dps=normal and sums_ok)


def dps_point_set(points, limits=DEFAULT_LIMITS) -> DpsPointSet:
    """Validating constructor for DpsPointSet."""
    pts = tuple(sorted({tuple(int(x) for x in p) for p in points}))
    check = is_distinct_pair_sum(pts, limits)
    if not check.dps:
        raise ValueError("point set is not a distinct pair-sum set")
    n = len(pts)
    return DpsPointSet(points=pts, pair_sum_count=n * (n - 1) // 2 + n)


def embed_dps(g: Graph, dps: DpsPointSet, limits=None) -> Embedding:
    """Any graph on |points| nodes embeds on a distinct pair-sum set: node i
    takes the i-th point in lexicographic order and the move set is the edge
    differences. Distinct sums rule out both spurious edges and multiples."""
    n = g.node_count
    if len(dps.points) != n:
        raise ValueError(
            f"point set has {len(dps.points)} points for {n} nodes"
        )
    points = list(dps.points)  # already sorted lexicographically
    moves = _edge_moves(g, points, len(points[0]) if points else 0)
    polytope = LatticePolytope(points)
    return _reduced_embedding(g, polytope, moves, points, "dps", limits)


def find_dps_point_set(n: int, d: int, box: int, budget: int = 200_000,
                       limits=None) -> DpsPointSet | None:
    """Exhaustive search for an n-point distinct pair-sum set that fits in a
    box of the given side length, up to translation and point reordering.

    Canonical form: the lexicographic minimum sits at the origin and points
    are enumerated in increasing lexicographic order. Translating the
    lexicographic minimum of a set inside [0, box]^d to the origin can push
    later coordinates negative, so the search window is
    [0, box] x [-box, box]^(d-1): this covers every translation class that
    has a representative in the box. Returns None only after exhausting the
    window; running out of budget raises instead.
    """
    if n < 1 or d < 1 or box < 0:
        raise ValueError("need n >= 1, d >= 1, box >= 0")
    if limits is None:
        limits = EnumerationLimits(max_dim=max(d, DEFAULT_LIMITS.max_dim),
                                   max_box_volume=DEFAULT_LIMITS.max_box_volume)
    origin = (0,) * d
    if n == 1:
        return DpsPointSet(points=(origin,), pair_sum_count=1)
    window = [range(0, box + 1)] + [range(-box, box + 1)] * (d - 1)
    candidates = sorted(pt for pt in product(*window) if pt > origin)
    examined = 0
    for rest in combinations(candidates, n - 1):
        examined += 1
        if examined > budget:
            raise BudgetExceededError(
                f"distinct pair-sum search exceeded budget of {budget} candidate sets"
            )
        pts = (origin,) + rest
        if not _sums_distinct(pts):
            continue
        if not is_normal_point_set(pts, limits):
            continue
        return DpsPointSet(points=tuple(sorted(pts)),
                           pair_sum_count=n * (n - 1) // 2 + n)
    return None
