"""
Tests for explicit representations and dimension checks.

Tests cover:
- Clock and shift matrices over Q(zeta_m)
- The FRTbar(N) and quantum torus representations
- Relation verification and commutant dimension
- Irreducible dimension against leaf dimension, for F_q(N) and Oh(N)
"""

import random
from dataclasses import replace

from django.test import SimpleTestCase

from heisenberg.coeff import zeta_power
from heisenberg.exceptions import (
    DegenerateBlockError,
    DimensionMismatchError,
    DomainError,
    UnknownGeneratorError,
    UnsupportedModulusError,
)
from heisenberg.ncalg import AlgebraPreset
from heisenberg.poisson import PointData, oh_rank, random_point, rank, structure_data
from heisenberg.reps import (
    CycloMatrix,
    RepMatrices,
    clock,
    commutant_dimension,
    direct_sum,
    dkp_check,
    dkp_sweep,
    frt_representation,
    in_oh_chart,
    irrep_dimension,
    oh_dkp_check,
    oh_dkp_sweep,
    oh_irrep_dimension,
    oh_prediction,
    parse_coord_range,
    shift,
    torus_representation,
    verify_relations,
)
from heisenberg.skewnf import AlgebraSpec, SkewMatrix, build_matrix, frtbar_matrix, matrix_rank


def point(N, text):
    return PointData.parse(N, text)


class CycloMatrixTests(SimpleTestCase):
    """Sparse matrices over the cyclotomic field."""

    def test_clock_shift_commutation(self):
        """D sigma = q sigma D."""
        D, sigma = clock(3), shift(3)
        self.assertEqual(D @ sigma, (sigma @ D).scale(zeta_power(1, 3)))

    def test_shift_order(self):
        """sigma^m is the identity."""
        self.assertEqual(shift(5).power(5), CycloMatrix.identity(5, 5))

    def test_monomial_inverse(self):
        """A monomial matrix times its inverse is the identity."""
        D = clock(3)
        self.assertEqual(D @ D.inverse(), CycloMatrix.identity(3, 3))
        self.assertEqual(shift(3) ** -1, shift(3).transpose())

    def test_non_monomial_inverse(self):
        """Only monomial matrices are inverted."""
        with self.assertRaises(DomainError):
            (CycloMatrix.identity(3, 2) + CycloMatrix(3, 2, {(0, 1): 1})).inverse()

    def test_dimension_mismatch(self):
        """Matrices of different sizes do not combine."""
        with self.assertRaises(DimensionMismatchError):
            clock(3) @ CycloMatrix.identity(3, 2)

    def test_even_modulus(self):
        """Matrices live over odd m only."""
        with self.assertRaises(UnsupportedModulusError):
            CycloMatrix.identity(4, 2)


class FrtRepresentationTests(SimpleTestCase):
    """The clock and shift representation of FRTbar(N)."""

    def test_two_generators_at_three(self):
        """N = 2, m = 3 gives a 3-dimensional irreducible."""
        rep = frt_representation(2, 3)
        self.assertEqual(rep.dim, 3)
        report = verify_relations(rep, AlgebraPreset.frtbar(2))
        self.assertTrue(report.ok)
        self.assertEqual(len(report.checks), 6)
        self.assertEqual(commutant_dimension(rep), 1)

    def test_three_generators(self):
        """N = 3, m = 3 gives dimension 9 and satisfies every relation."""
        rep = frt_representation(3, 3)
        self.assertEqual(rep.dim, 9)
        self.assertTrue(verify_relations(rep, AlgebraPreset.frtbar(3)).ok)

    def test_m_five(self):
        """N = 2, m = 5 verifies as well."""
        self.assertTrue(verify_relations(frt_representation(2, 5), AlgebraPreset.frtbar(2)).ok)

    def test_corrupted_matrix_fails(self):
        """Transposing z0 breaks a relation."""
        rep = frt_representation(2, 3)
        broken = rep.with_matrix("z0", rep.mats["z0"].transpose())
        report = verify_relations(broken, AlgebraPreset.frtbar(2))
        self.assertFalse(report.ok)
        self.assertIn("z1*z0", report.failures)

    def test_missing_generator(self):
        """Every generator of the preset needs a matrix."""
        rep = frt_representation(2, 3)
        with self.assertRaises(UnknownGeneratorError):
            verify_relations(rep, AlgebraPreset.frtbar(3))

    def test_needs_two_pairs(self):
        """N = 1 has no clock and shift model."""
        with self.assertRaises(DomainError):
            frt_representation(1, 3)

    def test_wrong_sizes(self):
        """All matrices of a representation share one size."""
        with self.assertRaises(DimensionMismatchError):
            RepMatrices(3, 2, {"z0": CycloMatrix.identity(3, 3)})


class TorusRepresentationTests(SimpleTestCase):
    """Representations of quantum tori through the canonical form."""

    def test_l_up_one_one(self):
        """L_up(1,1) at m = 3 acts irreducibly in dimension 9."""
        H = build_matrix(AlgebraSpec.l_up(1, 1))
        rep = torus_representation(H, 3)
        self.assertEqual(rep.dim, 9)
        self.assertTrue(verify_relations(rep, AlgebraPreset.torus(H)).ok)
        self.assertEqual(commutant_dimension(rep), 1)

    def test_degenerate_torus(self):
        """Kernel directions act as scalars."""
        H = frtbar_matrix(2)
        rep = torus_representation(H, 3)
        self.assertEqual(rep.dim, 3)
        self.assertTrue(verify_relations(rep, AlgebraPreset.torus(H)).ok)

    def test_block_sharing_factor(self):
        """A block of 3 at m = 3 has no faithful model here."""
        with self.assertRaises(DegenerateBlockError):
            torus_representation(SkewMatrix.from_rows([[0, -3], [3, 0]]), 3)

    def test_direct_sum_commutant(self):
        """The sum of two trivial one-dimensional modules has a 4-dimensional commutant."""
        trivial = torus_representation(SkewMatrix.zeros(2), 3)
        self.assertEqual(trivial.dim, 1)
        doubled = direct_sum(trivial, trivial)
        self.assertEqual(doubled.dim, 2)
        self.assertEqual(commutant_dimension(doubled), 4)

    def test_commutant_bound(self):
        """Representations above the configured size are refused."""
        with self.assertRaises(DomainError):
            commutant_dimension(frt_representation(2, 3), max_dim=2)


class DimensionCheckTests(SimpleTestCase):
    """Irreducible dimension m^(leaf/2)."""

    def check(self, N, text, m=3):
        p = point(N, text)
        return dkp_check(structure_data(p), m, rank(p))

    def test_all_ones(self):
        """(1,1,1,1) at m = 3: one nilpotent direction and the torus L_down(0,1)."""
        report = self.check(2, "1,1,1,1")
        self.assertEqual(report.s_nil, 1)
        self.assertEqual(report.torus_spec, "ldown:0,1")
        self.assertEqual(report.torus_rank, 0)
        self.assertEqual(report.rep_dim, 3)
        self.assertEqual(report.leaf_dim, 2)
        self.assertTrue(report.ok)

    def test_odd_sequence(self):
        """(1,1,-1,1) gives the torus L_down(1,1)."""
        report = self.check(2, "1,1,-1,1")
        self.assertEqual(report.torus_spec, "ldown:1,1")
        self.assertEqual(report.s_nil, 0)
        self.assertEqual(report.rep_dim, 3)
        self.assertTrue(report.ok)

    def test_degenerate_point(self):
        """(1,1,0,0) has an irreducible of dimension 3."""
        report = self.check(2, "1,1,0,0")
        self.assertEqual(report.torus_spec, "degenerate")
        self.assertEqual(report.rep_dim, 3)
        self.assertEqual(irrep_dimension(structure_data(point(2, "1,1,0,0")), 3), 3)

    def test_zero_point(self):
        """The origin carries the one-dimensional module."""
        report = self.check(2, "0,0,0,0", m=5)
        self.assertEqual(report.rep_dim, 1)
        self.assertEqual(report.leaf_dim, 0)
        self.assertTrue(report.ok)

    def test_report_json(self):
        """The JSON report lists the torus and both dimensions."""
        data = self.check(2, "1,1,1,1").to_json()
        self.assertEqual(
            list(data), ["structure", "m", "s_nil", "torus", "torus_rank", "rep_dim", "leaf_dim", "oracle_dim", "ok"]
        )
        self.assertEqual(data["oracle_dim"], 2)

    def test_sweep(self):
        """Every point of N = 2 with coordinates in -1..1 passes."""
        report = dkp_sweep(2, 3, values=[-1, 0, 1])
        self.assertEqual(report.points, 81)
        self.assertTrue(report.ok, report.failures)
        self.assertGreater(report.structures, 1)

    def test_sweep_three_pairs(self):
        """N = 3 with coordinates in 0..1 passes."""
        self.assertTrue(dkp_sweep(3, 5, values=[0, 1]).ok)

    def test_random_structures(self):
        """2 s_nil + torus rank equals the leaf dimension for structures of random points, N <= 5."""
        structures = set()
        for N in range(1, 6):
            rng = random.Random(N)
            structures.update(structure_data(random_point(N, rng=rng)) for _ in range(1000))
        for ls in structures:
            for m in (3, 5):
                with self.subTest(structure=str(ls), m=m):
                    report = dkp_check(ls, m)
                    self.assertEqual(2 * report.s_nil + report.torus_rank, report.leaf_dim)
                    self.assertTrue(report.ok)

    def test_sweep_bound(self):
        """Sweeps above the configured size are refused."""
        with self.assertRaises(DomainError):
            dkp_sweep(2, 3, values=[0, 1], max_points=10)

    def test_coordinate_range(self):
        """Coordinate ranges are comma separated integers."""
        self.assertEqual(parse_coord_range("-1,0,2"), [-1, 0, 2])
        with self.assertRaises(DomainError):
            parse_coord_range("a,b")


class OhDimensionCheckTests(SimpleTestCase):
    """The same check for Oh's algebra."""

    def test_single_pair(self):
        """Oh(1) at (1,1): torus L_up(1), dimension 3, leaf 2."""
        report = oh_dkp_check(point(1, "1,1"), 3)
        self.assertEqual(report.torus_spec, "lup:1")
        self.assertEqual(report.torus_rank, 2)
        self.assertEqual(report.rep_dim, 3)
        self.assertEqual(report.leaf_dim, 2)
        self.assertEqual(report.oracle_dim, 2)
        self.assertTrue(report.ok)
        self.assertEqual(oh_irrep_dimension(point(1, "1,1"), 5), 5)

    def test_needs_last_pair(self):
        """b_{N-1} b*_{N-1} must be nonzero."""
        with self.assertRaises(DomainError):
            oh_dkp_check(point(2, "1,1,0,1"), 3)

    def test_two_pairs(self):
        """Oh(2) at (1,1,1,1): one nilpotent direction and L_up(1), leaf 4."""
        report = oh_dkp_check(point(2, "1,1,1,1"), 3)
        self.assertEqual(report.s_nil, 1)
        self.assertEqual(report.torus_spec, "lup:1")
        self.assertEqual(report.rep_dim, 9)
        self.assertEqual(report.leaf_dim, 4)
        self.assertEqual(report.oracle_dim, 4)
        self.assertTrue(report.ok)

    def test_three_pairs(self):
        """Hand-checked points of Oh(3) with even and odd index sequences."""
        cases = (
            ("1,1,1,1,1,1", "lup:1", 2, 6),
            ("1,1,1,-1,1,1", "lup:1,2", 0, 4),
            ("1,0,1,1,0,-1", "lup:2", 1, 4),
        )
        for text, torus, s_nil, leaf in cases:
            with self.subTest(point=text):
                report = oh_dkp_check(point(3, text), 3)
                self.assertEqual(report.torus_spec, torus)
                self.assertEqual(report.s_nil, s_nil)
                self.assertEqual(report.leaf_dim, leaf)
                self.assertEqual(report.oracle_dim, leaf)
                self.assertEqual(report.rep_dim, 3 ** (leaf // 2))

    def test_full_torus_degree(self):
        """Without nilpotent directions the torus is L_up(1, ..., 1) of rank 2N."""
        for N in range(1, 6):
            with self.subTest(N=N):
                self.assertEqual(matrix_rank(build_matrix(AlgebraSpec.l_up(*[1] * N))), 2 * N)

    def test_sweep(self):
        """Every chart point of Oh(N), N <= 3, with coordinates in -1..1 passes at m = 3 and m = 5."""
        for N in (1, 2, 3):
            for m in (3, 5):
                with self.subTest(N=N, m=m):
                    report = oh_dkp_sweep(N, m, values=[-1, 0, 1])
                    self.assertTrue(report.ok, report.failures)
                    self.assertEqual(report.points, 9 ** N)
        self.assertEqual(oh_dkp_sweep(2, 3, values=[-1, 0, 1]).skipped, 45)

    def test_random_points(self):
        """1000 seeded chart points per N <= 5 agree with the Oh Poisson rank at m = 3 and m = 5."""
        for N in range(1, 6):
            rng = random.Random(N)
            checked = 0
            while checked < 1000:
                p = random_point(N, rng=rng)
                if not in_oh_chart(p):
                    continue
                checked += 1
                ls, oracle = structure_data(p), oh_rank(p)
                for m in (3, 5):
                    report = replace(oh_prediction(ls, m), oracle_dim=oracle)
                    self.assertTrue(report.ok, f"N={N} m={m} point={p} report={report.to_json()}")

    def test_sweep_needs_odd_modulus(self):
        """The Oh sweep refuses even m."""
        with self.assertRaises(UnsupportedModulusError):
            oh_dkp_sweep(2, 4, values=[1])
