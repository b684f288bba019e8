"""Certified fiber-dimension brackets.

The lower side of a bracket only ever carries machine-checkable arguments:
node counts (with the complete-graph pigeonhole refinement), completed
difference-graph searches, or an exhausted exact search. The upper side is
always a verified Embedding. Budget exhaustion degrades precision, never
correctness.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from . import linalg
from .embed import (
    Embedding,
    _verified_embedding,
    embed_apex,
    embed_chromatic,
    embed_complete_multipartite,
    embed_cycle,
    embed_edgeless,
    embed_simplex,
)
from .errors import CapExceededError
from .fiber import MoveSet, _is_positive_multiple
from .graphs import Graph, color, properties
from .lattice import LatticePolytope, is_normal_point_set

DEFAULT_DIFFERENCE_CAP = 10


@dataclass(frozen=True)
class DifferenceCertificate:
    """A witness that the graph is D(n, dset) under the given ordering
    (ordering[node] is a position in 1..n)."""

    n: int
    dset: frozenset
    ordering: tuple


def verify_difference_certificate(g: Graph, cert: DifferenceCertificate) -> bool:
    n = g.node_count
    if cert.n != n or sorted(cert.ordering) != list(range(1, n + 1)):
        return False
    for a, b in combinations(sorted(cert.dset), 2):
        if b % a == 0:
            return False
    for u in range(n):
        for v in range(u + 1, n):
            gap = abs(cert.ordering[u] - cert.ordering[v])
            if g.has_edge(u, v) != (gap in cert.dset):
                return False
    return True


def is_difference_graph(g: Graph, cap=DEFAULT_DIFFERENCE_CAP):
    """Complete search for a difference-graph realization.

    Positions 1..n are filled one at a time; the distance set is forced by
    the placed nodes, so the search prunes on edge/non-edge distance
    clashes and on divisibility inside the distance set, and halves the
    space via reversal symmetry. Absence of a certificate is a proof.
    """
    n = g.node_count
    if n > cap:
        raise CapExceededError(f"difference search capped at {cap} nodes, got {n}")
    if n == 0:
        return None
    if n == 1:
        return DifferenceCertificate(1, frozenset(), (1,))
    adj = g.adjacency()
    assigned = [None] * n  # position -> node
    pos_of = [None] * n
    dset = set()
    fset = set()

    def place(pos):
        for v in range(n):
            if pos_of[v] is not None:
                continue
            if pos == n - 1 and v < assigned[0]:
                continue  # reversal symmetry: first node smaller than last
            new_d = []
            new_f = []
            ok = True
            for q in range(pos):
                gap = pos - q
                u = assigned[q]
                if v in adj[u]:
                    if gap in fset:
                        ok = False
                    elif gap not in dset:
                        if any(gap % d == 0 or d % gap == 0 for d in dset):
                            ok = False  # distance set must be anti-divisible
                        else:
                            dset.add(gap)
                            new_d.append(gap)
                else:
                    if gap in dset:
                        ok = False
                    elif gap not in fset:
                        fset.add(gap)
                        new_f.append(gap)
                if not ok:
                    break
            if ok:
                assigned[pos] = v
                pos_of[v] = pos
                if pos + 1 == n or place(pos + 1):
                    return True
                assigned[pos] = None
                pos_of[v] = None
            for d in new_d:
                dset.discard(d)
            for f in new_f:
                fset.discard(f)
        return False

    if not place(0):
        return None
    ordering = tuple(pos_of[v] + 1 for v in range(n))
    cert = DifferenceCertificate(n, frozenset(dset), ordering)
    assert verify_difference_certificate(g, cert)
    return cert


def _difference_embedding(g: Graph, cert: DifferenceCertificate) -> Embedding:
    points = [(cert.ordering[v],) for v in range(g.node_count)]
    moves = MoveSet.from_representatives(1, [(d,) for d in sorted(cert.dset)])
    polytope = LatticePolytope(points)
    return _verified_embedding(g, polytope, moves, points, "difference")


@dataclass(frozen=True)
class LowerCertificate:
    kind: str  # "node-count" | "not-difference-graph" | "search-exhausted"
    detail: str


@dataclass(frozen=True)
class FdimBracket:
    lower: int
    upper: int
    lower_certificate: LowerCertificate
    upper_certificate: Embedding | None

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("bracket lower bound exceeds upper bound")
        if self.upper_certificate is not None and self.upper_certificate.dimension != self.upper:
            raise ValueError("upper certificate dimension does not match the bound")

    @property
    def exact(self):
        return self.lower == self.upper


@dataclass(frozen=True)
class Effort:
    """Budgets for the bracket computation; exceeding one never produces a
    wrong bound, only a wider bracket."""

    exact_coloring_cap: int = 24
    difference_cap: int = DEFAULT_DIFFERENCE_CAP
    apex_node_cap: int = 12
    search_dim2_box: int = 2
    search_dim2_node_cap: int = 6
    search_budget: int = 50_000


DEFAULT_EFFORT = Effort()


def _is_complete(g):
    n = g.node_count
    return g.edge_count == n * (n - 1) // 2


def _cycle_order(g):
    n = g.node_count
    if n < 3 or g.edge_count != n:
        return None
    adj = g.adjacency()
    if any(len(a) != 2 for a in adj):
        return None
    order = [0]
    prev, cur = None, 0
    while len(order) < n:
        nxt = min(u for u in adj[cur] if u != prev)
        if nxt == 0:
            return None  # closed early: not a single cycle
        prev, cur = cur, nxt
        order.append(cur)
    if 0 not in adj[cur]:
        return None
    return order


def _star_hub(g):
    n = g.node_count
    if n < 4 or g.edge_count != n - 1:
        return None
    deg = g.degrees()
    hubs = [v for v in range(n) if deg[v] == n - 1]
    if len(hubs) == 1 and all(deg[v] == 1 for v in range(n) if v != hubs[0]):
        return hubs[0]
    return None


def _multipartite_classes(g):
    """Color classes when the complement is a disjoint union of cliques."""
    comp = g.complement()
    adj = comp.adjacency()
    seen = [False] * g.node_count
    classes = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        cls = []
        while stack:
            v = stack.pop()
            cls.append(v)
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        cls.sort()
        for u, v in combinations(cls, 2):
            if not comp.has_edge(u, v):
                return None
        classes.append(cls)
    return classes


def _relabel_embedding(emb: Embedding, node_of_std, g: Graph) -> Embedding:
    points = [None] * g.node_count
    for std, gnode in enumerate(node_of_std):
        points[gnode] = emb.vertex_map[std]
    return _verified_embedding(g, emb.polytope, emb.moves, points, emb.method_tag)


def _shape_candidates(g: Graph, effort: Effort):
    out = []
    order = _cycle_order(g)
    if order is not None:
        out.append(_relabel_embedding(embed_cycle(g.node_count), order, g))
    hub = _star_hub(g)
    if hub is not None:
        out.append(embed_apex(g, hub, embed_edgeless(g.node_count - 1)))
    classes = _multipartite_classes(g)
    if classes is not None and len(classes) > 1:
        sizes = [len(c) for c in classes]
        std = embed_complete_multipartite(sizes)
        node_of_std = [v for cls in classes for v in cls]
        out.append(_relabel_embedding(std, node_of_std, g))
    return out


def _generic_candidates(g: Graph, effort: Effort):
    out = []
    mode = "exact" if g.node_count <= effort.exact_coloring_cap else "greedy"
    out.append(embed_chromatic(g, color(g, mode)))
    out.append(embed_simplex(g))
    return out


def _base_upper(g: Graph, effort: Effort) -> Embedding:
    """Best non-recursive embedding of g: used one level below an apex."""
    if g.node_count == 1 or not g.edges:
        return embed_edgeless(g.node_count)
    candidates = []
    if g.node_count <= min(effort.difference_cap, 7):
        cert = is_difference_graph(g, cap=effort.difference_cap)
        if cert is not None:
            candidates.append(_difference_embedding(g, cert))
    candidates.extend(_shape_candidates(g, effort))
    candidates.extend(_generic_candidates(g, effort))
    return min(candidates, key=lambda e: e.dimension)


def fdim_bracket(g: Graph, effort: Effort = DEFAULT_EFFORT) -> FdimBracket:
    """Certified bracket on the fiber dimension of g.

    Exact for: at most one node, edgeless graphs, difference graphs (within
    the search cap), complete graphs, cycles, and whenever the dimension-2
    exhaustive search closes a [2, >2] gap.
    """
    n = g.node_count
    if n == 0:
        return FdimBracket(
            0, 0,
            LowerCertificate("node-count", "graphs with at most one node have fiber dimension 0"),
            None,
        )
    if n == 1:
        return FdimBracket(
            0, 0,
            LowerCertificate("node-count", "graphs with at most one node have fiber dimension 0"),
            embed_edgeless(1),
        )
    if not g.edges:
        return FdimBracket(
            1, 1,
            LowerCertificate("node-count", "two or more nodes need at least two lattice points"),
            embed_edgeless(n),
        )
    if _is_complete(g):
        d = (n - 1).bit_length()
        emb = embed_complete_multipartite([1] * n)
        assert emb.graph == g and emb.dimension == d
        return FdimBracket(
            d, d,
            LowerCertificate(
                "node-count",
                "a complete fiber graph on a normal point set has pairwise distinct "
                f"parity classes, so {n} <= 2^d",
            ),
            emb,
        )

    lower = 1
    lower_cert = LowerCertificate("node-count", "two or more nodes need at least two lattice points")
    if n <= effort.difference_cap:
        cert = is_difference_graph(g, cap=effort.difference_cap)
        if cert is not None:
            return FdimBracket(1, 1, lower_cert, _difference_embedding(g, cert))
        lower = 2
        lower_cert = LowerCertificate(
            "not-difference-graph",
            "complete search over node orderings found no difference realization",
        )

    candidates = _shape_candidates(g, effort)
    if 3 <= n <= effort.apex_node_cap:
        for v in range(n):
            candidates.append(embed_apex(g, v, _base_upper(g.delete_node(v), effort)))
    candidates.extend(_generic_candidates(g, effort))
    best = min(candidates, key=lambda e: e.dimension)

    if lower == 2 and best.dimension > 2 and effort.search_dim2_box > 0 \
            and n <= effort.search_dim2_node_cap:
        result = fdim_exact_search(g, 2, effort.search_dim2_box, effort.search_budget)
        if result.status == SEARCH_FOUND:
            best = result.embedding

    return FdimBracket(lower, best.dimension, lower_cert, best)


SEARCH_FOUND = "found"
SEARCH_NONE_IN_BOX = "none-in-box"
SEARCH_BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class ExactSearchResult:
    """Tri-state outcome; none-in-box is exhaustive for the box but says
    nothing about larger boxes in the same dimension."""

    status: str
    embedding: Embedding | None
    box: int


def _match_graph_to_points(g: Graph, points):
    """Find a node -> point bijection whose edge differences form a valid
    move set realizing exactly the edges of g."""
    n = g.node_count
    adj = g.adjacency()
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))
    assigned = {}
    used = [False] * n
    moves = {}
    forbid = {}

    def compatible_move(rep):
        if rep in forbid:
            return False
        for m in moves:
            if m != rep and (_is_positive_multiple(m, rep) or _is_positive_multiple(rep, m)):
                return False
        return True

    def place(idx):
        if idx == n:
            return True
        v = order[idx]
        for pi in range(n):
            if used[pi]:
                continue
            added_moves = []
            added_forbid = []
            ok = True
            for u, upi in assigned.items():
                rep = linalg.lex_positive(linalg.vec_sub(points[pi], points[upi]))
                if u in adj[v]:
                    if rep in moves:
                        moves[rep] += 1
                        added_moves.append(rep)
                    elif compatible_move(rep):
                        moves[rep] = 1
                        added_moves.append(rep)
                    else:
                        ok = False
                        break
                else:
                    if rep in moves:
                        ok = False
                        break
                    forbid[rep] = forbid.get(rep, 0) + 1
                    added_forbid.append(rep)
            if ok:
                assigned[v] = pi
                used[pi] = True
                if place(idx + 1):
                    return True
                del assigned[v]
                used[pi] = False
            for rep in added_moves:
                moves[rep] -= 1
                if not moves[rep]:
                    del moves[rep]
            for rep in added_forbid:
                forbid[rep] -= 1
                if not forbid[rep]:
                    del forbid[rep]
        return False

    if place(0):
        return dict(assigned)
    return None


def fdim_exact_search(g: Graph, d: int, box: int, budget: int = 100_000,
                      limits=None) -> ExactSearchResult:
    """Exhaustive embedding search in a fixed dimension and box.

    Enumerates normal, full-dimensional point sets of the right size up to
    translation, point reordering and coordinate permutation (canonical
    form: lexicographic minimum at the origin, points sorted, minimal under
    coordinate permutations; the window [0,box] x [-box,box]^(d-1) covers
    every translation class meeting a box of the given side). Each set is
    tested for a node assignment realizing exactly the edges of g.
    """
    n = g.node_count
    if n < 1 or d < 1 or box < 0:
        raise ValueError("need a nonempty graph, d >= 1, box >= 0")
    if limits is None:
        from .lattice import DEFAULT_LIMITS, EnumerationLimits

        limits = EnumerationLimits(
            max_dim=max(d, DEFAULT_LIMITS.max_dim),
            max_box_volume=DEFAULT_LIMITS.max_box_volume,
        )
    origin = (0,) * d
    window = [range(0, box + 1)] + [range(-box, box + 1)] * (d - 1)
    candidates = sorted(pt for pt in product(*window) if pt > origin)
    perms = list(permutations(range(d)))
    examined = 0
    for rest in combinations(candidates, n - 1):
        examined += 1
        if examined > budget:
            return ExactSearchResult(SEARCH_BUDGET_EXCEEDED, None, box)
        pts = (origin,) + rest
        if len(perms) > 1 and _coord_perm_canonical(pts, perms) != pts:
            continue
        base = pts[0]
        if linalg.rank([linalg.vec_sub(p, base) for p in pts[1:]]) != d:
            continue
        if not is_normal_point_set(pts, limits):
            continue
        assignment = _match_graph_to_points(g, pts)
        if assignment is None:
            continue
        shift = tuple(-min(p[i] for p in pts) for i in range(d))
        shifted = [linalg.vec_add(p, shift) for p in pts]
        vertex_points = [shifted[assignment[v]] for v in range(n)]
        reps = {
            linalg.lex_positive(linalg.vec_sub(vertex_points[u], vertex_points[v]))
            for u, v in g.edges
        }
        moves = MoveSet.from_representatives(d, reps)
        polytope = LatticePolytope(shifted)
        emb = _verified_embedding(g, polytope, moves, vertex_points, "exhaustive-search")
        return ExactSearchResult(SEARCH_FOUND, emb, box)
    return ExactSearchResult(SEARCH_NONE_IN_BOX, None, box)


def _coord_perm_canonical(pts, perms):
    best = None
    for perm in perms:
        permuted = sorted(tuple(p[i] for i in perm) for p in pts)
        lexmin = permuted[0]
        normalized = tuple(sorted(linalg.vec_sub(p, lexmin) for p in permuted))
        if best is None or normalized < best:
            best = normalized
    return best
