"""Fiber graphs on lattice polytopes.

A move set is a symmetric, multiple-free set of nonzero integer vectors;
the fiber graph connects two lattice points of a polytope when their
difference is a move. This module validates move sets, builds fiber
graphs, decides minimality and the Markov-basis property, searches for
minimum Markov bases, and checks the independent-moves bipartiteness
criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .errors import DimensionMismatchError, MoveSetError
from .graphs import Graph, properties
from .lattice import (
    DEFAULT_LIMITS,
    LatticePolytope,
    dimension,
    enumerate_lattice_points,
)


@dataclass(frozen=True)
class MoveSet:
    """Validated set of moves; both signs of every move are stored and
    counted, matching the |M| convention used throughout."""

    ambient_dim: int
    moves: frozenset

    def __len__(self):
        return len(self.moves)

    def positive_representatives(self):
        """One move per {m, -m} pair, lex-positive, sorted."""
        return tuple(sorted({linalg.lex_positive(m) for m in self.moves}))

    @staticmethod
    def from_representatives(ambient_dim, reps):
        vectors = set()
        for r in reps:
            r = tuple(int(x) for x in r)
            vectors.add(r)
            vectors.add(linalg.vec_neg(r))
        return validate_move_set(vectors, ambient_dim)


def _is_positive_multiple(long, short):
    """long == lam * short for an integer lam >= 2?"""
    lam = None
    for a, b in zip(long, short):
        if b == 0:
            if a != 0:
                return False
            continue
        if a % b != 0:
            return False
        q = a // b
        if lam is None:
            lam = q
        elif lam != q:
            return False
    return lam is not None and lam >= 2


def validate_move_set(vectors, ambient_dim=None) -> MoveSet:
    """Check the move-set axioms and return the validated MoveSet.

    Raises MoveSetError naming the offending vector (asymmetry, zero) or
    pair (multiple). The empty set is a valid move set.
    """
    vecs = {tuple(int(x) for x in v) for v in vectors}
    dims = {len(v) for v in vecs}
    if len(dims) > 1:
        raise DimensionMismatchError("moves have mixed dimensions")
    if ambient_dim is None:
        if not dims:
            raise ValueError("ambient dimension required for an empty move set")
        ambient_dim = dims.pop()
    elif dims and dims.pop() != ambient_dim:
        raise DimensionMismatchError(
            f"moves do not live in dimension {ambient_dim}"
        )
    zero = (0,) * ambient_dim
    if zero in vecs:
        raise MoveSetError("the zero vector is not a move")
    for v in sorted(vecs):
        if linalg.vec_neg(v) not in vecs:
            raise MoveSetError(f"missing the negation of {v}")
    reps = sorted({linalg.lex_positive(v) for v in vecs})
    for a, b in combinations(reps, 2):
        if _is_positive_multiple(b, a):
            lam = next(x // y for x, y in zip(b, a) if y)
            raise MoveSetError(f"{b} = {lam} * {a}: multiples are not allowed")
        if _is_positive_multiple(a, b):
            lam = next(x // y for x, y in zip(a, b) if y)
            raise MoveSetError(f"{a} = {lam} * {b}: multiples are not allowed")
    return MoveSet(ambient_dim=ambient_dim, moves=frozenset(vecs))


@dataclass(frozen=True)
class FiberGraph:
    """graph node i sits on lattice point points[i]; adjacency means the
    point difference is a move."""

    graph: Graph
    points: tuple
    polytope: LatticePolytope
    moves: MoveSet

    def point_of(self, node):
        return self.points[node]


def _fiber_edges(points, moves: MoveSet):
    index = {pt: i for i, pt in enumerate(points)}
    edges = []
    for i, pt in enumerate(points):
        for mv in moves.moves:
            j = index.get(linalg.vec_add(pt, mv))
            if j is not None and j > i:
                edges.append((i, j))
    return edges


def build(p: LatticePolytope, m: MoveSet, limits=DEFAULT_LIMITS) -> FiberGraph:
    """The fiber graph of (P, M); node order is lexicographic on points."""
    if m.ambient_dim != p.ambient_dim:
        raise DimensionMismatchError(
            f"moves in dimension {m.ambient_dim}, polytope in {p.ambient_dim}"
        )
    points = enumerate_lattice_points(p, limits)
    graph = Graph.from_edges(len(points), _fiber_edges(points, m))
    return FiberGraph(graph=graph, points=points, polytope=p, moves=m)


@dataclass(frozen=True)
class MinimalityReport:
    minimal: bool
    unused: MoveSet  # moves (with both signs) that realize no edge


def is_minimal(p: LatticePolytope, m: MoveSet, limits=DEFAULT_LIMITS) -> MinimalityReport:
    """A move and its negation count as one contribution unit: an edge
    realizes both."""
    points = set(enumerate_lattice_points(p, limits))
    unused = []
    for rep in m.positive_representatives():
        if not any(linalg.vec_add(pt, rep) in points for pt in points):
            unused.append(rep)
    unused_set = MoveSet.from_representatives(m.ambient_dim, unused) if unused else MoveSet(
        m.ambient_dim, frozenset()
    )
    return MinimalityReport(minimal=not unused, unused=unused_set)


def is_markov_basis(p: LatticePolytope, m: MoveSet, limits=DEFAULT_LIMITS) -> bool:
    """Minimal and the fiber graph is connected."""
    if not is_minimal(p, m, limits).minimal:
        return False
    return properties(build(p, m, limits).graph).connected


def min_markov_basis_size(p: LatticePolytope, size_cap: int, limits=DEFAULT_LIMITS):
    """Smallest |M| over all Markov bases of P with |M| <= size_cap, or None.

    The candidate universe is every pairwise difference of lattice points,
    deduplicated by sign; this universe is complete because a move that is
    not such a difference realizes no edge and would break minimality.
    Subsets are enumerated by increasing size with multiple-freeness
    enforcement; connectivity is decided by union-find.
    """
    points = enumerate_lattice_points(p, limits)
    n = len(points)
    if n <= 1:
        return 0
    index = {pt: i for i, pt in enumerate(points)}
    pairs_of = {}
    for i, j in combinations(range(n), 2):
        rep = linalg.lex_positive(linalg.vec_sub(points[j], points[i]))
        pairs_of.setdefault(rep, []).append((i, j))
    universe = sorted(pairs_of)

    def connects(reps):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merged = n
        for rep in reps:
            for i, j in pairs_of[rep]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
                    merged -= 1
            if merged == 1:
                return True
        return merged == 1

    for t in range(1, size_cap // 2 + 1):
        for subset in combinations(universe, t):
            if any(
                _is_positive_multiple(b, a)
                for a, b in combinations(subset, 2)
            ):
                continue
            if connects(subset):
                return 2 * t  # every candidate realizes an edge: minimal by construction
    return None


@dataclass(frozen=True)
class BipartiteCriterion:
    applies: bool
    bipartite_confirmed: bool


def check_bipartite_criterion(p: LatticePolytope, m: MoveSet, limits=DEFAULT_LIMITS) -> BipartiteCriterion:
    """The criterion applies when M is a Markov basis of P with
    |M| = 2 dim(P); in that case the fiber graph must be bipartite, and
    this is asserted against the graph itself rather than trusted."""
    fiber = build(p, m, limits)
    props = properties(fiber.graph)
    markov = is_minimal(p, m, limits).minimal and props.connected
    applies = markov and len(m) == 2 * dimension(p)
    if applies and not props.bipartite:
        raise AssertionError(
            "independent-moves criterion applies but the fiber graph is odd: "
            "this contradicts a proven invariant"
        )
    return BipartiteCriterion(applies=applies, bipartite_confirmed=props.bipartite)
