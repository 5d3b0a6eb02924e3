import itertools
from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from combinat.pairings import Pairing, double_factorial, enumerate_pairings
from combinat.partitions import SetPartition, join_size
from common.exceptions import ArgumentError, SizeLimitError
from invariants.combinations import combination_inner, evaluate_combination_dense
from invariants.gram import gram_matrix
from invariants.linalg import solve_consistent
from invariants.polynomials import NPolynomial
from moments.expectations import (
    GeneralizedExpectation,
    ZeroExpectation,
    generalized_expectation,
    pair_moment_cor3,
    veronese_expectation,
)
from moments.sphere import mu, p_poly
from tensors.dense import inner, veronese


class SphereTests(SimpleTestCase):
    def test_p_poly(self):
        self.assertEqual(p_poly(1), NPolynomial({1: 1}))
        self.assertEqual(p_poly(2), NPolynomial({2: 1, 1: 2}))
        self.assertEqual(p_poly(3), NPolynomial({3: 1, 2: 6, 1: 8}))

    def test_mu_examples(self):
        self.assertEqual(mu(1, 3), Fraction(1, 3))
        self.assertEqual(mu(2, 2), Fraction(3, 8))
        self.assertEqual(mu(2, 3), Fraction(1, 5))
        self.assertEqual(mu(3, 2), Fraction(5, 16))

    def test_mu_in_dimension_one(self):
        for k in range(1, 6):
            self.assertEqual(mu(k, 1), 1)

    def test_rejects_bad_arguments(self):
        with self.assertRaises(ArgumentError):
            p_poly(0)
        with self.assertRaises(ArgumentError):
            mu(1, 0)


class VeroneseExpectationTests(SimpleTestCase):
    def test_m2_is_identity_over_n(self):
        expectation = veronese_expectation(2, 4)
        self.assertEqual(expectation.to_json(), {"[[1,2]]": "1/4"})

    def test_m4_n3(self):
        expectation = veronese_expectation(4, 3)
        self.assertEqual(len(expectation), 3)
        self.assertTrue(all(c == Fraction(1, 15) for _, c in expectation.items()))

    def test_odd_order_is_zero(self):
        self.assertTrue(veronese_expectation(5, 3).is_zero())

    def test_normal_equations(self):
        # G alpha = 1 at alpha = 1 / P(n, k), including the singular cases k > n.
        for k, n in itertools.product(range(1, 5), [1, 2, 3, 5]):
            with self.subTest(k=k, n=n):
                gram = gram_matrix(k).evaluate(n)
                alpha = Fraction(1, p_poly(k)(n))
                for row in gram:
                    self.assertEqual(sum(alpha * entry for entry in row), 1)

    def test_normal_equations_are_solvable_exactly(self):
        for k, n in [(2, 3), (3, 5)]:
            solution = solve_consistent(gram_matrix(k).evaluate(n), [1] * double_factorial(k))
            self.assertEqual(set(solution), {Fraction(1, p_poly(k)(n))})

    def test_squared_norm_is_mu(self):
        for k, n in itertools.product(range(1, 5), [2, 3, 5]):
            with self.subTest(k=k, n=n):
                expectation = veronese_expectation(2 * k, n)
                self.assertEqual(combination_inner(expectation, expectation, n), mu(k, n))

    def test_pairing_with_a_veronese_tensor(self):
        cases = [((0.6, 0.8), 1), ((0.6, 0.8), 2), ((2 / 3, 1 / 3, 2 / 3), 2), ((0.6, 0.8), 3)]
        for x, k in cases:
            with self.subTest(x=x, k=k):
                n = len(x)
                dense = evaluate_combination_dense(veronese_expectation(2 * k, n), n)
                value = inner(dense, veronese(x, 2 * k))
                self.assertAlmostEqual(value, float(mu(k, n)), places=12)


class GeneralizedExpectationTests(SimpleTestCase):
    def test_single_block_matches_veronese(self):
        for m, n in [(2, 2), (4, 3), (6, 2)]:
            expectation = generalized_expectation(SetPartition.single_block(m), n)
            self.assertEqual(expectation.as_combination(), veronese_expectation(m, n))

    def test_odd_block_is_zero(self):
        expectation = generalized_expectation(SetPartition(((1, 2, 3), (4,))), 3)
        self.assertIsInstance(expectation, ZeroExpectation)
        self.assertTrue(expectation.as_combination().is_zero())
        self.assertTrue(expectation.to_dense().is_zero())

    def test_two_blocks_of_two(self):
        expectation = generalized_expectation(SetPartition(((1, 2), (3, 4))), 3)
        self.assertIsInstance(expectation, GeneralizedExpectation)
        self.assertEqual(expectation.scalar, Fraction(1, 9))
        self.assertEqual(expectation.term_count, 1)
        self.assertEqual(expectation.as_combination().to_json(), {"[[1,2],[3,4]]": "1/9"})

    def test_interleaved_blocks(self):
        expectation = generalized_expectation(SetPartition.from_labels("abab"), 2)
        self.assertEqual(expectation.as_combination().to_json(), {"[[1,3],[2,4]]": "1/4"})

    def test_scalar_and_term_count(self):
        partition = SetPartition(((1, 2, 3, 4), (5, 6)))
        expectation = generalized_expectation(partition, 3)
        self.assertEqual(expectation.scalar, mu(2, 3) * mu(1, 3))
        self.assertEqual(expectation.term_count, 3)
        dense = expectation.to_dense()
        self.assertEqual(dense.entries.shape, (3,) * 6)
        self.assertAlmostEqual(float(dense.entries[0, 0, 0, 0, 0, 0]), 1 / 15, places=12)

    @override_settings(ORTHO_MAX_PAIRING_K=2)
    def test_block_over_the_pairing_cap(self):
        with self.assertRaises(SizeLimitError):
            generalized_expectation(SetPartition.single_block(6), 2)

    @override_settings(ORTHO_MAX_PAIRING_K=2)
    def test_term_product_over_the_cap(self):
        # Each block has 3 pairings, the product 9 is past the 3 allowed at k=2.
        with self.assertRaises(SizeLimitError):
            generalized_expectation(SetPartition(((1, 2, 3, 4), (5, 6, 7, 8))), 2)
        many_pairs = SetPartition(((1, 2), (3, 4), (5, 6), (7, 8)))
        self.assertEqual(generalized_expectation(many_pairs, 2).term_count, 1)


class PairMomentTests(SimpleTestCase):
    def test_examples(self):
        p0 = Pairing.standard(2)
        crossed = Pairing(((1, 3), (2, 4)))
        self.assertEqual(pair_moment_cor3(p0, p0, 3), Fraction(1, 9))
        self.assertEqual(pair_moment_cor3(p0, crossed, 3), Fraction(1, 27))

    def test_matches_gram_entry(self):
        for k, n in itertools.product(range(1, 4), [2, 3]):
            pairings = enumerate_pairings(k)
            for p, q in itertools.product(pairings, repeat=2):
                self.assertEqual(
                    pair_moment_cor3(p, q, n) * n ** (2 * k),
                    n ** join_size(p, q),
                )

    def test_order_mismatch(self):
        with self.assertRaises(ArgumentError):
            pair_moment_cor3(Pairing.standard(1), Pairing.standard(2), 2)

    def test_dimension_one(self):
        pairings = enumerate_pairings(2)
        values = {pair_moment_cor3(p, q, 1) for p, q in itertools.product(pairings, repeat=2)}
        self.assertEqual(values, {1})
