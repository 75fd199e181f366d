"""
Tests for the classical Poisson structure.

Tests cover:
- Point parsing and coordinate order
- Structure data and the leaf dimension formula
- Poisson matrix rank as an oracle for the formula
- Good points and Hamiltonian flow steps
- Antisymmetry and Jacobi identity of the bracket
"""

import random
from itertools import combinations

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from heisenberg.exceptions import DomainError, SpecValidationError, UnknownGeneratorError
from heisenberg.ncalg import poisson_from_commutator
from heisenberg.poisson import (
    PointData,
    classical_bracket,
    classical_ring,
    flow_step,
    generator_variable,
    good_point,
    leaf_dimension,
    leaf_invariants,
    oh_rank,
    poisson_bracket,
    poisson_matrix,
    poisson_matrix_symbolic,
    quasi_poisson_matrix,
    random_point,
    rank,
    structure_data,
)
from heisenberg.skewnf import SkewMatrix, exact_rank


@st.composite
def points(draw, max_N=5):
    N = draw(st.integers(min_value=1, max_value=max_N))
    values = draw(st.lists(st.integers(min_value=-2, max_value=2), min_size=2 * N, max_size=2 * N))
    return PointData.from_values(N, values)


nonzero_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda x: x != 0)


def point(N, text):
    return PointData.parse(N, text)


class PointDataTests(SimpleTestCase):
    """Coordinates of a point."""

    def test_coordinate_order(self):
        """Stars are stored in descending index order."""
        p = point(2, "1,2,3,4")
        self.assertEqual(p.pairs(), ([1, 2], [4, 3]))
        self.assertEqual(str(p), "1,2,3,4")

    def test_rational_coordinates(self):
        """Coordinates may be rationals."""
        self.assertEqual(str(point(1, "1/2,-3/4")), "1/2,-3/4")

    def test_wrong_length(self):
        """A point for N=2 needs four coordinates."""
        with self.assertRaises(SpecValidationError):
            point(2, "1,2,3")

    def test_bad_coordinate(self):
        """Non-numeric coordinates are rejected."""
        with self.assertRaises(SpecValidationError):
            point(2, "1,x,1,1")

    def test_json_round_trip(self):
        """to_json and from_json agree."""
        p = point(2, "1,-1/2,0,3")
        self.assertEqual(PointData.from_json(p.to_json()), p)

    def test_cumulative_sums(self):
        """omega_i = sum_{k >= i} a_k a*_k, omega_N = 0."""
        self.assertEqual(leaf_invariants(point(2, "1,1,-1,1")), [0, -1, 0])


class StructureDataTests(SimpleTestCase):
    """Index sequence and counts of a point."""

    def test_all_ones(self):
        """(1,1,1,1) has i_seq (1) and r_0 = 0."""
        ls = structure_data(point(2, "1,1,1,1"))
        self.assertEqual(ls.i_seq, (1,))
        self.assertEqual(ls.r_value(0), 0)

    def test_odd_sequence(self):
        """(1,1,-1,1) has i_seq (1,0), r_0 = 0 and r_2 = -1."""
        ls = structure_data(point(2, "1,1,-1,1"))
        self.assertEqual(ls.i_seq, (1, 0))
        self.assertEqual(ls.r_value(0), 0)
        self.assertEqual(ls.r_value(2), -1)
        self.assertEqual(ls.to_json(), {"N": 2, "i_seq": [1, 0], "r": {"0": 0, "2": -1}, "degenerate_r0": 0})

    def test_zero_point(self):
        """The origin is degenerate with no nonzero coordinates."""
        ls = structure_data(PointData.zero(2))
        self.assertTrue(ls.degenerate)
        self.assertEqual(ls.degenerate_r0, 0)

    def test_degenerate_count(self):
        """(1,1,0,0) is degenerate with two nonzero coordinates."""
        ls = structure_data(point(2, "1,1,0,0"))
        self.assertEqual(ls.i_seq, ())
        self.assertEqual(ls.degenerate_r0, 2)

    @settings(max_examples=100, deadline=None)
    @given(points(), nonzero_rationals)
    def test_scaling_invariance(self, p, factor):
        """Uniform scaling leaves the structure data unchanged."""
        self.assertEqual(structure_data(p.scaled(factor)), structure_data(p))


class LeafDimensionTests(SimpleTestCase):
    """The leaf dimension formula against the rank of the Poisson matrix."""

    def test_examples(self):
        """Hand-checked leaf dimensions for N = 2."""
        for text, expected in (("1,1,1,1", 2), ("1,0,0,1", 0), ("1,1,0,0", 2), ("1,1,-1,1", 2), ("0,0,0,0", 0)):
            with self.subTest(point=text):
                p = point(2, text)
                self.assertEqual(leaf_dimension(structure_data(p)), expected)
                self.assertEqual(rank(p), expected)

    def test_matrix_is_antisymmetric(self):
        """B[u][v] = -B[v][u] at a point."""
        B = poisson_matrix(point(3, "1,2,-1,1/2,3,-2"))
        for u in range(6):
            for v in range(6):
                self.assertEqual(B[u][v], -B[v][u])

    @settings(max_examples=1000, deadline=None)
    @given(points())
    def test_formula_matches_rank(self, p):
        """leaf_dimension(structure_data(p)) equals the Poisson rank."""
        self.assertEqual(leaf_dimension(structure_data(p)), rank(p))

    def test_random_points_per_size(self):
        """1000 seeded points with coordinates in -2..2 for each N <= 5."""
        for N in range(1, 6):
            rng = random.Random(N)
            for _ in range(1000):
                p = random_point(N, rng=rng)
                self.assertEqual(leaf_dimension(structure_data(p)), rank(p), f"N={N} point={p}")

    def test_oh_single_pair(self):
        """Oh(1) at (1,1) has rank 2."""
        self.assertEqual(oh_rank(point(1, "1,1")), 2)


class GoodPointTests(SimpleTestCase):
    """Normalized points on the same leaf."""

    def test_no_middle_pairs(self):
        """(1,1,-1,1) is already good."""
        p = point(2, "1,1,-1,1")
        self.assertEqual(good_point(p), p)

    def test_clears_middle_pair(self):
        """N=3, (0,1,1,1,1,0) becomes (0,0,1,1,0,0)."""
        self.assertEqual(str(good_point(point(3, "0,1,1,1,1,0"))), "0,0,1,1,0,0")

    def test_zero_point(self):
        """The origin is fixed."""
        self.assertEqual(good_point(PointData.zero(3)), PointData.zero(3))

    def test_opening_coordinate_is_rescaled(self):
        """N=3, (1,1,1,-2,1,1): a_2 absorbs the cleared pair so that omega_0 stays zero."""
        self.assertEqual(str(good_point(point(3, "1,1,1,-2,1,1"))), "1,0,1/2,-2,0,1")

    def test_last_segment_keeps_omega_zero_nonzero(self):
        """N=3, (1,1,1,1,1,-1): a_2 doubles so that omega_0 does not vanish after clearing pair 1."""
        p = point(3, "1,1,1,1,1,-1")
        g = good_point(p)
        self.assertEqual(str(g), "1,0,2,1,0,-1")
        self.assertEqual(structure_data(g), structure_data(p))

    @settings(max_examples=300, deadline=None)
    @given(points())
    def test_changes_only_segment_coordinates(self, p):
        """Inner pairs are cleared, a_i may change only where a segment opens, the rest is untouched."""
        ls = structure_data(p)
        g = good_point(p)
        if ls.degenerate:
            self.assertEqual(g, p)
            return
        cleared, opening = set(), set()
        for j in range((ls.s + 2) // 2):
            high, low = ls.i_value(2 * j), ls.i_value(2 * j + 1)
            cleared.update(range(low + 1, high))
            opening.add(high)
        for i in range(p.N):
            if i in cleared:
                self.assertEqual((g.plain(i), g.star(i)), (0, 0))
                continue
            self.assertEqual(g.star(i), p.star(i))
            if i not in opening:
                self.assertEqual(g.plain(i), p.plain(i))

    @settings(max_examples=200, deadline=None)
    @given(points())
    def test_same_structure_and_rank(self, p):
        """good_point keeps the structure data and the rank."""
        g = good_point(p)
        self.assertEqual(structure_data(g), structure_data(p))
        self.assertEqual(rank(g), rank(p))


class FlowTests(SimpleTestCase):
    """Closed-form Hamiltonian flow of a_k."""

    def test_identity_parameter(self):
        """lam = 1 is the identity."""
        p = point(2, "1,2,-1,3")
        self.assertEqual(flow_step(p, 0, 1), p)

    def test_worked_example(self):
        """(1,1,1,1), k = 0, lam = 2 gives (1,2,2,-2)."""
        self.assertEqual(str(flow_step(point(2, "1,1,1,1"), 0, 2)), "1,2,2,-2")

    def test_translation_when_coordinate_vanishes(self):
        """With a_k = 0 the flow translates a*_k by 2 omega_{k+1} t."""
        self.assertEqual(str(flow_step(point(2, "0,1,1,1"), 0, 3)), "0,1,1,7")

    def test_index_out_of_range(self):
        """k must be a generator index."""
        with self.assertRaises(DomainError):
            flow_step(point(2, "1,1,1,1"), 2, 2)

    def test_zero_parameter(self):
        """lam = 0 is refused when a_k is nonzero."""
        with self.assertRaises(DomainError):
            flow_step(point(2, "1,1,1,1"), 0, 0)

    @settings(max_examples=200, deadline=None)
    @given(points(), st.integers(min_value=0, max_value=4), nonzero_rationals)
    def test_rank_is_preserved(self, p, k, lam):
        """Flowing stays on the leaf."""
        k = k % p.N
        self.assertEqual(rank(flow_step(p, k, lam)), rank(p))


class BracketIdentityTests(SimpleTestCase):
    """Polynomial identities of the bracket on coordinate functions."""

    def test_antisymmetry(self):
        """{x_u, x_v} = -{x_v, x_u}."""
        for N in (1, 2, 3):
            matrix = poisson_matrix_symbolic(N)
            for u in range(2 * N):
                for v in range(2 * N):
                    self.assertEqual(matrix[u][v], -matrix[v][u])

    def test_jacobi(self):
        """{x,{y,z}} + {y,{z,x}} + {z,{x,y}} = 0 on generators."""
        for N in (2, 3):
            _, gens = classical_ring(N)
            for x, y, z in combinations(gens, 3):
                with self.subTest(N=N, triple=(x, y, z)):
                    total = (
                        poisson_bracket(x, poisson_bracket(y, z, N), N)
                        + poisson_bracket(y, poisson_bracket(z, x, N), N)
                        + poisson_bracket(z, poisson_bracket(x, y, N), N)
                    )
                    self.assertEqual(total, 0)

    def test_commutator_limit_matches(self):
        """The commutator limit at m = 3 reproduces every bracket for N = 2 and N = 3."""
        for N in (2, 3):
            names = [f"z{k}" for k in range(N)] + [f"zs{k}" for k in range(N)]
            for g1, g2 in combinations(names, 2):
                with self.subTest(N=N, pair=(g1, g2)):
                    self.assertEqual(poisson_from_commutator(g1, g2, N, 3), classical_bracket(g1, g2, N))

    def test_generator_variable(self):
        """zs1 is the starred coordinate 1; z7 is unknown for N = 2."""
        self.assertEqual(generator_variable("zs1", 2), ("star", 1))
        with self.assertRaises(UnknownGeneratorError):
            generator_variable("z7", 2)


class QuasiPolynomialTests(SimpleTestCase):
    """Rank of (h_uv a_u a_v) at points with all coordinates nonzero."""

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_rank_equals_matrix_rank(self, data):
        """Scaling rows and columns by nonzero values keeps the rank."""
        n = data.draw(st.integers(min_value=1, max_value=6))
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                value = data.draw(st.integers(min_value=-3, max_value=3))
                rows[i][j], rows[j][i] = value, -value
        H = SkewMatrix.from_rows(rows)
        values = data.draw(st.lists(nonzero_rationals, min_size=n, max_size=n))
        self.assertEqual(exact_rank(quasi_poisson_matrix(H, values)), exact_rank(H.rows()))

    def test_wrong_point_size(self):
        """The point must have one coordinate per generator."""
        with self.assertRaises(SpecValidationError):
            quasi_poisson_matrix(SkewMatrix.zeros(2), [1])
