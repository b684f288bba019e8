import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fiberdim import (
    CapExceededError,
    EnumerationLimits,
    LatticePolytope,
    MoveSet,
    RankDeficientError,
    Sublattice,
    build,
    dimension,
    enumerate_lattice_points,
    full_dim_reduce,
    hermite_normal_form,
    is_isomorphic,
    is_normal_point_set,
    lattice_quotient_distinct,
)
from fiberdim.linalg import det, mat_mul


def unit(i, d):
    return tuple(1 if j == i else 0 for j in range(d))


class TestEnumeration:
    def test_figure_triangle_points(self, figure_triangle):
        pts = enumerate_lattice_points(figure_triangle)
        assert set(pts) == {
            (-1, 0), (0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 1), (3, -1),
        }
        assert len(pts) == 8

    def test_unimodular_triangle(self):
        p = LatticePolytope([(0, 0), (1, 0), (0, 1)])
        assert enumerate_lattice_points(p) == ((0, 0), (0, 1), (1, 0))

    def test_segment(self):
        p = LatticePolytope([(0,), (3,)])
        assert enumerate_lattice_points(p) == ((0,), (1,), (2,), (3,))

    def test_zero_dimensional_ambient(self):
        p = LatticePolytope([()], ambient_dim=0)
        assert enumerate_lattice_points(p) == ((),)

    def test_dimension_cap(self):
        p = LatticePolytope([unit(i, 9) for i in range(9)])
        with pytest.raises(CapExceededError):
            enumerate_lattice_points(p, EnumerationLimits(max_dim=8))

    def test_volume_cap_reports_volume(self):
        p = LatticePolytope([(0, 0), (99, 99)])
        with pytest.raises(CapExceededError) as exc:
            enumerate_lattice_points(p, EnumerationLimits(max_box_volume=100))
        assert exc.value.volume == 100 * 100

    def test_lex_order(self):
        p = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
        pts = enumerate_lattice_points(p)
        assert list(pts) == sorted(pts)

    def test_points_satisfy_hyperplanes_and_rest_violate(self):
        rng = random.Random(3)
        for _ in range(20):
            d = rng.choice([1, 2, 3])
            gens = {tuple(rng.randint(-3, 3) for _ in range(d))
                    for _ in range(rng.randint(1, 6))}
            poly = LatticePolytope(gens)
            eqs, ineqs = poly.hyperplanes()
            pts = set(enumerate_lattice_points(poly))
            mins, maxs = poly.bounding_box()
            for x in product(*(range(lo, hi + 1) for lo, hi in zip(mins, maxs))):
                inside = all(sum(a * v for a, v in zip(row, x)) == b for row, b in eqs) \
                    and all(sum(a * v for a, v in zip(row, x)) <= b for row, b in ineqs)
                assert inside == (x in pts)

    def test_enumeration_agrees_with_barycentric_oracle(self):
        rng = random.Random(5)
        for _ in range(15):
            d = rng.choice([1, 2, 3])
            gens = {tuple(rng.randint(-2, 3) for _ in range(d))
                    for _ in range(rng.randint(1, 5))}
            poly = LatticePolytope(gens)
            pts = set(enumerate_lattice_points(poly))
            mins, maxs = poly.bounding_box()
            for x in product(*(range(lo, hi + 1) for lo, hi in zip(mins, maxs))):
                assert poly.contains(x) == (x in pts)


class TestDimension:
    def test_simplex(self):
        for n in (2, 3, 5, 7):
            p = LatticePolytope([unit(i, n) for i in range(n)])
            assert dimension(p) == n - 1

    def test_single_point(self):
        assert dimension(LatticePolytope([(4, -2, 7)])) == 0

    def test_figure_triangle(self, figure_triangle):
        assert dimension(figure_triangle) == 2


class TestNormality:
    def test_binary_subsets_are_normal(self):
        rng = random.Random(9)
        for _ in range(20):
            d = rng.choice([1, 2, 3, 4])
            cube = list(product((0, 1), repeat=d))
            pts = rng.sample(cube, rng.randint(1, len(cube)))
            assert is_normal_point_set(pts)

    def test_gap_segment_not_normal(self):
        assert not is_normal_point_set([(0,), (2,)])

    def test_color_class_union_normal(self):
        # class sizes (2, 2, 1) in 6 coordinates
        w = [
            (1, 0, 0, 1, 0, 0), (1, 0, 0, 2, 0, 0),
            (0, 1, 0, 0, 1, 0), (0, 1, 0, 0, 2, 0),
            (0, 0, 1, 0, 0, 1),
        ]
        assert is_normal_point_set(w)


class TestHermiteNormalForm:
    def test_identity(self):
        dec = hermite_normal_form([[1, 0], [0, 1]])
        assert dec.h == ((1, 0), (0, 1))
        assert dec.c == ((1, 0), (0, 1))

    def test_gcd_row(self):
        dec = hermite_normal_form([[2, 3]])
        assert dec.h == ((1,),)
        # reconstruction is the extended-euclid certificate
        assert mat_mul((dec.h[0] + (0,),), dec.c) == ((2, 3),)
        dec.verify()

    def test_two_by_three(self):
        # determinant-divisor oracle: H00 = gcd(2,4,4) = 2;
        # det H = gcd of the 2x2 minors (36, 48, 24) = 12 so H11 = 6;
        # column lattice forces the off-diagonal entry to 0 mod 6.
        dec = hermite_normal_form([[2, 4, 4], [-6, 6, 12]])
        assert dec.h == ((2, 0), (0, 6))
        dec.verify()

    def test_rank_deficient(self):
        with pytest.raises(RankDeficientError):
            hermite_normal_form([[1, 2], [2, 4]])

    @given(
        st.integers(1, 3).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-9, 9), min_size=4, max_size=4),
                min_size=n, max_size=n,
            )
        )
    )
    @settings(max_examples=60, deadline=None)
    def test_random_matrices(self, rows):
        from fiberdim.linalg import rank

        if rank(rows) < len(rows):
            return
        dec = hermite_normal_form(rows)
        dec.verify()  # reconstruction, unimodularity, triangular shape
        assert abs(det(dec.c)) == 1


class TestFullDimReduce:
    def test_already_full_dimensional(self, figure_triangle):
        moves = MoveSet.from_representatives(2, [(1, 0)])
        red = full_dim_reduce(figure_triangle, moves)
        assert red.p_reduced == figure_triangle
        assert red.m_reduced == moves
        assert red.map.matrix == ((1, 0), (0, 1))
        assert red.map.offset == (0, 0)

    def test_simplex_with_triangle_moves(self):
        # 2-simplex in Q^3 with all three difference moves: reduces to a
        # 2-dimensional fiber graph isomorphic to K_3
        p = LatticePolytope([unit(i, 3) for i in range(3)])
        reps = [(1, -1, 0), (1, 0, -1), (0, 1, -1)]
        moves = MoveSet.from_representatives(3, reps)
        red = full_dim_reduce(p, moves)
        assert red.p_reduced.ambient_dim == 2
        assert dimension(red.p_reduced) == 2
        fiber = build(red.p_reduced, red.m_reduced)
        assert fiber.graph.edge_count == 3
        assert fiber.graph.node_count == 3

    def test_diagonal_segment(self):
        p = LatticePolytope([(0, 0), (2, 2)])
        moves = MoveSet.from_representatives(2, [(1, 1)])
        red = full_dim_reduce(p, moves)
        assert red.p_reduced == LatticePolytope([(0,), (2,)])
        assert red.m_reduced.positive_representatives() == ((1,),)

    def test_single_point_reduces_to_dimension_zero(self):
        p = LatticePolytope([(3, 5)])
        moves = MoveSet(2, frozenset())
        red = full_dim_reduce(p, moves)
        assert red.p_reduced.ambient_dim == 0
        assert len(red.m_reduced) == 0
        assert red.map.apply(()) == (3, 5)

    def test_map_is_point_bijection(self):
        rng = random.Random(17)
        for _ in range(20):
            k = rng.choice([0, 1, 2])
            m = k + rng.choice([1, 2])
            base = {tuple(rng.randint(0, 2) for _ in range(k)) for _ in range(rng.randint(1, 5))}
            mat = [[rng.randint(-1, 1) for _ in range(k)] for _ in range(m)]
            from fiberdim.linalg import mat_vec, rank

            if k and rank(mat) < k:
                continue
            gens = {tuple(mat_vec(mat, g)) for g in base}
            p = LatticePolytope(gens)
            moves = MoveSet(m, frozenset())
            red = full_dim_reduce(p, moves)
            assert sorted(red.map.apply(v) for v in red.reduced_points) == \
                sorted(red.original_points)
            assert dimension(red.p_reduced) == red.p_reduced.ambient_dim

    def test_reduction_preserves_fiber_graph_isomorphism(self):
        rng = random.Random(23)
        done = 0
        while done < 12:
            pts = {(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(2, 5))}
            lift = [(x, y, x + y) for x, y in pts]  # embed into the plane z = x + y
            p = LatticePolytope(lift)
            diffs = {
                tuple(a - b for a, b in zip(u, v))
                for u in lift for v in lift if u != v
            }
            reps = [d for d in sorted(diffs) if d > (0, 0, 0)]
            if not reps:
                continue
            chosen = rng.sample(reps, min(len(reps), rng.randint(1, 3)))
            try:
                moves = MoveSet.from_representatives(3, chosen)
            except Exception:
                continue
            red = full_dim_reduce(p, moves)
            f_orig = build(p, moves)
            f_red = build(red.p_reduced, red.m_reduced)
            assert is_isomorphic(f_orig.graph, f_red.graph) is not None
            done += 1


class TestSublatticeQuotient:
    def test_parity_classes_of_binary_cube(self):
        for d in (1, 2, 3, 4):
            pts = list(product((0, 1), repeat=d))
            lat = Sublattice(tuple(tuple(2 * x for x in unit(i, d)) for i in range(d)))
            report = lattice_quotient_distinct(pts, lat)
            assert report.distinct
            assert report.bound == 2 ** d == len(pts)

    def test_collision_detected(self):
        lat = Sublattice(((2, 0), (0, 2)))
        report = lattice_quotient_distinct([(0, 0), (2, 0)], lat)
        assert not report.distinct

    def test_index_is_det(self):
        lat = Sublattice(((2, 1), (0, 3)))
        assert lat.index() == 6

    def test_random_reports_consistent(self):
        rng = random.Random(31)
        for _ in range(30):
            d = rng.choice([1, 2])
            basis = [[rng.randint(-3, 3) for _ in range(d)] for _ in range(d)]
            if det(basis) == 0:
                continue
            lat = Sublattice(tuple(tuple(r) for r in basis))
            pts = {tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(rng.randint(1, 6))}
            report = lattice_quotient_distinct(pts, lat)
            # independent pairwise check
            pts = sorted(pts)
            collide = any(
                lat.contains(tuple(a - b for a, b in zip(u, v)))
                for i, u in enumerate(pts) for v in pts[:i]
            )
            assert report.distinct == (not collide)
            if report.distinct:
                assert len(pts) <= report.bound

    def test_full_rank_required(self):
        with pytest.raises(RankDeficientError):
            Sublattice(((1, 2), (2, 4)))
