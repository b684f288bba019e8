"""Exact lattice-polytope machinery.

Polytopes are stored by their integer generating points (V-representation);
the half-space description is derived on demand by brute-force facet
enumeration and cached. Integer points are enumerated by an axis-aligned
bounding-box scan filtered through the cached hyperplanes. A separate
barycentric feasibility test (exact phase-1 simplex over Fractions) serves
as an independent membership oracle.

Everything is exact: plain Python integers and Fractions, no floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from . import linalg
from .errors import CapExceededError, DimensionMismatchError, RankDeficientError


@dataclass(frozen=True)
class EnumerationLimits:
    """Caps for bounding-box scans; exceeding them raises CapExceededError."""

    max_dim: int = 8
    max_box_volume: int = 200_000


DEFAULT_LIMITS = EnumerationLimits()


def _as_point(p):
    return tuple(int(x) for x in p)


class LatticePolytope:
    """Convex hull of finitely many integer points."""

    __slots__ = ("ambient_dim", "generators")

    def __init__(self, generators, ambient_dim=None):
        gens = tuple(sorted({_as_point(g) for g in generators}))
        if not gens:
            raise ValueError("a lattice polytope needs at least one generator")
        widths = {len(g) for g in gens}
        if len(widths) != 1:
            raise ValueError("generators have mixed dimensions")
        dim = widths.pop()
        if ambient_dim is not None and ambient_dim != dim:
            raise DimensionMismatchError(
                f"generators live in dimension {dim}, not {ambient_dim}"
            )
        object.__setattr__(self, "ambient_dim", dim)
        object.__setattr__(self, "generators", gens)

    def __setattr__(self, name, value):
        raise AttributeError("LatticePolytope is immutable")

    def __eq__(self, other):
        return isinstance(other, LatticePolytope) and self.generators == other.generators

    def __hash__(self):
        return hash(self.generators)

    def __repr__(self):
        return f"LatticePolytope({list(self.generators)!r})"

    def bounding_box(self):
        mins = tuple(min(g[i] for g in self.generators) for i in range(self.ambient_dim))
        maxs = tuple(max(g[i] for g in self.generators) for i in range(self.ambient_dim))
        return mins, maxs

    def translate(self, offset):
        off = _as_point(offset)
        return LatticePolytope([linalg.vec_add(g, off) for g in self.generators])

    def hyperplanes(self):
        """(equalities, inequalities): each entry (a, b) means a.x == b
        respectively a.x <= b, with primitive integer coefficients. Together
        they cut out exactly the polytope."""
        return _hyperplanes_cached(self.generators)

    def contains(self, point):
        """Exact membership test: is the point a convex combination of the
        generators? Rational phase-1 simplex, independent of the facet
        description."""
        pt = _as_point(point)
        if len(pt) != self.ambient_dim:
            raise DimensionMismatchError(
                f"point has dimension {len(pt)}, polytope {self.ambient_dim}"
            )
        mins, maxs = self.bounding_box()
        if any(x < lo or x > hi for x, lo, hi in zip(pt, mins, maxs)):
            return False
        return _barycentric_feasible(self.generators, pt)


def dimension(p: LatticePolytope) -> int:
    """Affine dimension: rank of the generator differences."""
    return _dimension_cached(p.generators)


@lru_cache(maxsize=8192)
def _dimension_cached(gens):
    base = gens[0]
    rows = [linalg.vec_sub(g, base) for g in gens[1:]]
    return linalg.rank(rows)


@lru_cache(maxsize=4096)
def _hyperplanes_cached(gens):
    m = len(gens[0])
    # equality functionals: (a, b) with a.g == b on every generator
    eq_rows = [g + (-1,) for g in gens]
    equalities = []
    for u in linalg.nullspace(eq_rows, m + 1):
        equalities.append((u[:m], u[m]))
    k = m - len(equalities)
    facets = {}
    if k >= 1:
        for subset in combinations(gens, k):
            rows = [t + (-1,) for t in subset]
            if linalg.rank(rows) != k:
                continue  # subset does not span a (k-1)-flat
            cand = None
            for u in linalg.nullspace(rows, m + 1):
                a, b = u[:m], u[m]
                vals = [linalg.dot(a, g) - b for g in gens]
                if any(vals):
                    cand = (a, b, vals)
                    break
            if cand is None:
                continue
            a, b, vals = cand
            if all(v <= 0 for v in vals):
                pass
            elif all(v >= 0 for v in vals):
                a, b, vals = linalg.vec_neg(a), -b, [-v for v in vals]
            else:
                continue  # generators on both sides: not a face
            tight = frozenset(i for i, v in enumerate(vals) if v == 0)
            if tight not in facets:
                joint = linalg.primitive(a + (b,))
                facets[tight] = (joint[:m], joint[m])
    return tuple(equalities), tuple(sorted(facets.values()))


def enumerate_lattice_points(p: LatticePolytope, limits: EnumerationLimits = DEFAULT_LIMITS):
    """All integer points of the polytope, in lexicographic order.

    Bounding-box scan filtered through the hyperplane description.
    """
    return _points_cached(p.generators, limits)


@lru_cache(maxsize=4096)
def _points_cached(gens, limits):
    m = len(gens[0])
    if m > limits.max_dim:
        raise CapExceededError(
            f"ambient dimension {m} exceeds enumeration cap {limits.max_dim}"
        )
    if m == 0:
        return ((),)
    mins = tuple(min(g[i] for g in gens) for i in range(m))
    maxs = tuple(max(g[i] for g in gens) for i in range(m))
    volume = 1
    for lo, hi in zip(mins, maxs):
        volume *= hi - lo + 1
    if volume > limits.max_box_volume:
        raise CapExceededError(
            f"bounding box volume {volume} exceeds cap {limits.max_box_volume}",
            volume=volume,
        )
    equalities, inequalities = _hyperplanes_cached(gens)
    points = []
    ranges = [range(lo, hi + 1) for lo, hi in zip(mins, maxs)]
    for x in product(*ranges):
        if all(linalg.dot(a, x) == b for a, b in equalities) and all(
            linalg.dot(a, x) <= b for a, b in inequalities
        ):
            points.append(x)
    return tuple(points)


def is_normal_point_set(points, limits: EnumerationLimits = DEFAULT_LIMITS) -> bool:
    """True iff the set equals all integer points of its own convex hull."""
    pts = tuple(sorted({_as_point(p) for p in points}))
    if not pts:
        raise ValueError("normality is defined for nonempty point sets")
    hull = LatticePolytope(pts)
    return enumerate_lattice_points(hull, limits) == pts


def _barycentric_feasible(points, x):
    """Exact feasibility of lam >= 0, sum lam = 1, sum lam * p = x."""
    n = len(points)
    m = len(x)
    rows = m + 1
    tableau = []
    for r in range(rows):
        if r < m:
            row = [Fraction(p[r]) for p in points]
            rhs = Fraction(x[r])
        else:
            row = [Fraction(1)] * n
            rhs = Fraction(1)
        if rhs < 0:
            row = [-v for v in row]
            rhs = -rhs
        art = [Fraction(1) if j == r else Fraction(0) for j in range(rows)]
        tableau.append(row + art + [rhs])
    total = n + rows
    basis = [n + r for r in range(rows)]
    while True:
        # reduced costs for minimizing the artificial sum
        obj = [Fraction(0)] * (total + 1)
        for r in range(rows):
            if basis[r] >= n:
                row = tableau[r]
                for j in range(total + 1):
                    obj[j] += row[j]
        entering = None
        in_basis = set(basis)
        for j in range(n):  # Bland's rule: smallest improving structural index
            if j not in in_basis and obj[j] > 0:
                entering = j
                break
        if entering is None:
            return obj[total] == 0
        leave = None
        best = None
        for r in range(rows):
            a = tableau[r][entering]
            if a > 0:
                ratio = tableau[r][total] / a
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leave]
                ):
                    best = ratio
                    leave = r
        if leave is None:
            return obj[total] == 0
        piv = tableau[leave][entering]
        tableau[leave] = [v / piv for v in tableau[leave]]
        pivot_row = tableau[leave]
        for r in range(rows):
            if r != leave and tableau[r][entering] != 0:
                f = tableau[r][entering]
                tableau[r] = [v - f * w for v, w in zip(tableau[r], pivot_row)]
        basis[leave] = entering


@dataclass(frozen=True)
class HnfDecomposition:
    """Column-style Hermite normal form: source = (h, 0) @ c.

    h is square lower-triangular with positive diagonal and entries left of
    the diagonal reduced into [0, diagonal); c is unimodular.
    """

    h: tuple
    c: tuple
    source: tuple

    def verify(self):
        n = len(self.h)
        k = len(self.c)
        for i, row in enumerate(self.h):
            if row[i] <= 0:
                raise AssertionError("diagonal of H must be positive")
            if any(row[j] != 0 for j in range(i + 1, n)):
                raise AssertionError("H must be lower triangular")
            if any(not (0 <= row[j] < row[i]) for j in range(i)):
                raise AssertionError("entries left of the diagonal must be reduced")
        if abs(linalg.det(self.c)) != 1:
            raise AssertionError("C must be unimodular")
        padded = tuple(row + (0,) * (k - n) for row in self.h)
        if linalg.mat_mul(padded, self.c) != tuple(tuple(r) for r in self.source):
            raise AssertionError("(H, 0) @ C must reconstruct the input")


def _hnf_transforms(rows):
    """Column HNF with both transforms: returns (H, C, U) where
    input @ U = (H, 0) and C = U^{-1}, so input = (H, 0) @ C."""
    b = tuple(tuple(int(x) for x in row) for row in rows)
    n = len(b)
    if n == 0 or len({len(r) for r in b}) != 1:
        raise RankDeficientError("hermite normal form needs a nonempty rectangular matrix")
    k = len(b[0])
    if linalg.rank(b) < n:
        raise RankDeficientError("input matrix does not have full row rank")
    work = [list(row) for row in b]
    u = [[1 if i == j else 0 for j in range(k)] for i in range(k)]  # column ops
    cinv = [[1 if i == j else 0 for j in range(k)] for i in range(k)]  # row ops

    def col_swap(i, j):
        for row in work:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]
        cinv[i], cinv[j] = cinv[j], cinv[i]

    def col_negate(i):
        for row in work:
            row[i] = -row[i]
        for row in u:
            row[i] = -row[i]
        cinv[i] = [-x for x in cinv[i]]

    def col_addmul(dst, src, q):
        # column dst += q * column src
        for row in work:
            row[dst] += q * row[src]
        for row in u:
            row[dst] += q * row[src]
        cinv[src] = [a - q * b_ for a, b_ in zip(cinv[src], cinv[dst])]

    for r in range(n):
        while True:
            best = None
            for c in range(r, k):
                v = abs(work[r][c])
                if v and (best is None or v < abs(work[r][best])):
                    best = c
            if best is None:
                raise RankDeficientError("unexpected zero row during reduction")
            if best != r:
                col_swap(r, best)
            done = True
            for c in range(r + 1, k):
                if work[r][c]:
                    q = work[r][c] // work[r][r]
                    if q:
                        col_addmul(c, r, -q)
                    if work[r][c]:
                        done = False
            if done:
                break
        if work[r][r] < 0:
            col_negate(r)
    for r in range(n):
        for c in range(r):
            q = work[r][c] // work[r][r]
            if q:
                col_addmul(c, r, -q)
    h = tuple(tuple(work[i][:n]) for i in range(n))
    return h, tuple(tuple(row) for row in cinv), tuple(tuple(row) for row in u)


def hermite_normal_form(rows) -> HnfDecomposition:
    """Column-operation Hermite normal form of a full-row-rank integer
    matrix; deterministic, with the unimodular certificate checked."""
    b = tuple(tuple(int(x) for x in row) for row in rows)
    h, c, u = _hnf_transforms(b)
    dec = HnfDecomposition(h=h, c=c, source=b)
    dec.verify()
    return dec


@dataclass(frozen=True)
class AffineLatticeMap:
    """x -> matrix @ x + offset with integer coefficients."""

    matrix: tuple  # rows
    offset: tuple

    def apply(self, point):
        if self.matrix and len(point) != len(self.matrix[0]):
            raise DimensionMismatchError("point dimension does not match the map")
        return linalg.vec_add(linalg.mat_vec(self.matrix, point), self.offset)

    @property
    def domain_dim(self):
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def codomain_dim(self):
        return len(self.offset)


def identity_map(dim):
    return AffineLatticeMap(linalg.identity(dim), (0,) * dim)


@dataclass(frozen=True)
class Sublattice:
    """Full-rank sublattice of Z^d, generated by the rows of basis."""

    basis: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", rows)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("basis must be square and nonempty")
        if linalg.det(rows) == 0:
            raise RankDeficientError("sublattice basis must have full rank")

    def index(self):
        """|Z^d / L| = |det(basis)|."""
        return abs(linalg.det(self.basis))

    def contains(self, vector):
        coords = linalg.solve_square(linalg.transpose(self.basis), vector)
        return coords is not None and all(c.denominator == 1 for c in coords)


@dataclass(frozen=True)
class QuotientReport:
    distinct: bool
    bound: int


def lattice_quotient_distinct(points, sub: Sublattice) -> QuotientReport:
    """Do the points occupy pairwise distinct classes of Z^d / L?

    When they do, the discrete pigeonhole bound |points| <= |Z^d / L| is
    asserted rather than assumed.
    """
    pts = sorted({_as_point(p) for p in points})
    bound = sub.index()
    basis_t = linalg.transpose(sub.basis)
    residues = set()
    distinct = True
    for p in pts:
        coords = linalg.solve_square(basis_t, p)
        key = tuple(c - math.floor(c) for c in coords)
        if key in residues:
            distinct = False
            break
        residues.add(key)
    if distinct and len(pts) > bound:
        raise AssertionError(
            "distinct residues but more points than lattice classes: "
            "pigeonhole bound violated"
        )
    return QuotientReport(distinct=distinct, bound=bound)


@dataclass(frozen=True)
class FullDimReduction:
    """Outcome of flattening a polytope onto its own affine lattice.

    map sends the reduced lattice points bijectively onto the original ones;
    reduced_points/original_points list both sides in matching order.
    """

    p_reduced: LatticePolytope
    m_reduced: object  # MoveSet
    map: AffineLatticeMap
    reduced_points: tuple
    original_points: tuple


def full_dim_reduce(p: LatticePolytope, moves, limits: EnumerationLimits = DEFAULT_LIMITS):
    """Rewrite (P, M) in dimension dim(P) with an isomorphic fiber graph.

    Pipeline: translate P into the nonnegative orthant, describe it as
    {x >= 0 : Ax <= b} with rank(A) = ambient dimension, lift along the
    slack map x -> (x, b - Ax), append the affine-hull equalities so the
    lifted system's kernel has dimension dim(P), take the column Hermite
    normal form, and project onto the free coordinates. The resulting
    bijection on lattice points is verified, as is the edge bijection of
    the two fiber graphs.
    """
    from .fiber import MoveSet, _fiber_edges  # deferred: fiber builds on lattice

    if not isinstance(moves, MoveSet):
        raise TypeError("moves must be a MoveSet")
    if moves.ambient_dim != p.ambient_dim:
        raise DimensionMismatchError(
            f"moves live in dimension {moves.ambient_dim}, polytope in {p.ambient_dim}"
        )
    m = p.ambient_dim
    d = dimension(p)
    orig_points = enumerate_lattice_points(p, limits)
    if d == m:
        return FullDimReduction(
            p_reduced=p,
            m_reduced=moves,
            map=identity_map(m),
            reduced_points=orig_points,
            original_points=orig_points,
        )

    mins, _ = p.bounding_box()
    shift0 = linalg.vec_neg(mins)
    gens_t = [linalg.vec_add(g, shift0) for g in p.generators]
    poly_t = LatticePolytope(gens_t)
    equalities, facets = poly_t.hyperplanes()
    maxs_t = tuple(max(g[i] for g in gens_t) for i in range(m))

    ineqs = list(facets)
    eq_rows = []
    for a, b in equalities:
        ineqs.append((a, b))
        ineqs.append((linalg.vec_neg(a), -b))
    if linalg.rank([a for a, _ in ineqs]) < m:
        for i in range(m):
            row = tuple(1 if j == i else 0 for j in range(m))
            ineqs.append((row, maxs_t[i]))
    n_ineq = len(ineqs)
    for a, b in equalities:
        eq_rows.append((a, b))
    n_eq = len(eq_rows)

    # lifted system B z = rhs on z = (x, slack) >= 0
    big_rows = []
    rhs = []
    for idx, (a, b) in enumerate(ineqs):
        slack = tuple(1 if j == idx else 0 for j in range(n_ineq))
        big_rows.append(a + slack)
        rhs.append(b)
    for a, b in eq_rows:
        big_rows.append(a + (0,) * n_ineq)
        rhs.append(b)
    k_total = m + n_ineq
    n_rows = n_ineq + n_eq
    assert k_total - n_rows == d, "lifted kernel dimension must equal dim(P)"

    h, c_mat, u_mat = _hnf_transforms(big_rows)
    hb = linalg.solve_lower_triangular(h, rhs)
    if any(v.denominator != 1 for v in hb):
        raise AssertionError("H^-1 rhs must be integral when integer points exist")
    hb = tuple(int(v) for v in hb)

    ineq_mat = [a for a, _ in ineqs]
    ineq_rhs = [b for _, b in ineqs]

    def lift(x):
        slack = tuple(rb - linalg.dot(a, x) for a, rb in zip(ineq_mat, ineq_rhs))
        return x + slack

    def project(x):
        z = lift(x)
        w = linalg.mat_vec(c_mat, z)
        assert w[:n_rows] == hb, "lifted point must solve the triangular system"
        return w[n_rows:]

    raw_points = tuple(project(linalg.vec_add(x, shift0)) for x in orig_points)
    if d == 0:
        norm_shift = ()
        reduced_points = raw_points
    else:
        norm_shift = tuple(-min(v[i] for v in raw_points) for i in range(d))
        reduced_points = tuple(linalg.vec_add(v, norm_shift) for v in raw_points)

    reduced_poly = LatticePolytope(
        [linalg.vec_add(project(linalg.vec_add(g, shift0)), norm_shift) for g in p.generators],
        ambient_dim=d,
    )

    # transport only the moves realized by a lattice-point pair
    point_index = {pt: i for i, pt in enumerate(orig_points)}
    reduced_reps = set()
    for rep in moves.positive_representatives():
        for pt in orig_points:
            other = linalg.vec_add(pt, rep)
            j = point_index.get(other)
            if j is not None:
                diff = linalg.vec_sub(reduced_points[j], reduced_points[point_index[pt]])
                reduced_reps.add(linalg.lex_positive(diff))
                break
    reduced_moves = MoveSet.from_representatives(d, reduced_reps)

    # certify: the projection is a bijection onto the reduced lattice points
    check_points = enumerate_lattice_points(reduced_poly, limits)
    if tuple(sorted(reduced_points)) != check_points:
        raise AssertionError("projected points must be exactly the reduced lattice points")
    if dimension(reduced_poly) != d:
        raise AssertionError("reduced polytope must be full dimensional")

    # certify: the point bijection is a fiber-graph isomorphism
    orig_edges = _fiber_edges(orig_points, moves)
    red_index = {pt: i for i, pt in enumerate(check_points)}
    bijection = [red_index[pt] for pt in reduced_points]
    mapped = {tuple(sorted((bijection[i], bijection[j]))) for i, j in orig_edges}
    red_edges = set(_fiber_edges(check_points, reduced_moves))
    if mapped != red_edges:
        raise AssertionError("reduction must map the fiber graph isomorphically")

    # affine witness: reduced point v -> original point, composed from the
    # unimodular transform, the slack projection and both translations
    c_inv = u_mat  # maintained alongside C during the column reduction
    offset_full = [0] * k_total
    matrix_full = [[0] * d for _ in range(k_total)]
    for i in range(k_total):
        row = c_inv[i]
        offset_full[i] = linalg.dot(row[:n_rows], hb)
        for j in range(d):
            matrix_full[i][j] = row[n_rows + j]
    top_matrix = [matrix_full[i] for i in range(m)]
    top_offset = [offset_full[i] for i in range(m)]
    # map(v) = top_matrix @ (v - norm_shift) + top_offset - shift0
    final_offset = tuple(
        o - linalg.dot(row, norm_shift) - s
        for o, row, s in zip(top_offset, top_matrix, shift0)
    )
    witness = AffineLatticeMap(tuple(tuple(r) for r in top_matrix), final_offset)
    for red_pt, orig_pt in zip(reduced_points, orig_points):
        if witness.apply(red_pt) != orig_pt:
            raise AssertionError("affine witness must reproduce the point bijection")

    return FullDimReduction(
        p_reduced=reduced_poly,
        m_reduced=reduced_moves,
        map=witness,
        reduced_points=tuple(reduced_points),
        original_points=orig_points,
    )
