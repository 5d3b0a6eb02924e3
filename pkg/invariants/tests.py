import itertools
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, override_settings

from combinat.pairings import Pairing, double_factorial, enumerate_pairings
from common.exceptions import ArgumentError, InconsistentSystemError, SizeLimitError
from invariants.combinations import (
    InvariantCombination,
    average_invariant,
    combination_inner,
    evaluate_combination_dense,
    evaluate_combination_exact,
)
from invariants.gram import (
    gram_average,
    gram_entry,
    gram_matrix,
    gram_rank,
    gram_row_profile,
    gram_row_sum,
)
from invariants.linalg import IncrementalSpan, bareiss_rank, solve_consistent
from invariants.polynomials import NPolynomial, linear
from invariants.structure import (
    corollary1_identity,
    corollary2_check,
    extract_basis,
    kronecker_exponents,
    project_onto_invariants,
    sft_relation,
)
from moments.expectations import veronese_expectation
from moments.sphere import mu, p_poly
from tensors.dense import inner, veronese


class NPolynomialTests(SimpleTestCase):
    def test_str(self):
        self.assertEqual(str(NPolynomial({3: 1, 2: 6, 1: 8})), "n^3 + 6*n^2 + 8*n^1")
        self.assertEqual(str(NPolynomial()), "0")
        self.assertEqual(str(linear(-2)), "n^1 - 2")

    def test_arithmetic_and_evaluation(self):
        product = linear(0) * linear(2)
        self.assertEqual(product, NPolynomial({2: 1, 1: 2}))
        self.assertEqual(product(3), 15)
        self.assertEqual(product + NPolynomial.constant(1), NPolynomial({2: 1, 1: 2, 0: 1}))

    def test_monomial_exponent(self):
        self.assertEqual(NPolynomial.monomial(4).exponent(), 4)
        with self.assertRaises(ArgumentError):
            linear(1).exponent()


class LinalgTests(SimpleTestCase):
    def test_rank(self):
        self.assertEqual(bareiss_rank([[1, 2], [2, 4]]), 1)
        self.assertEqual(bareiss_rank([[2, 1, 1], [1, 2, 1], [1, 1, 2]]), 3)
        self.assertEqual(bareiss_rank([[0, 0], [0, 0]]), 0)

    def test_solve_regular_system(self):
        solution = solve_consistent([[4, 2, 2], [2, 4, 2], [2, 2, 4]], [1, 1, 1])
        self.assertEqual(solution, [Fraction(1, 8)] * 3)

    def test_singular_system_has_particular_solutions(self):
        matrix = [[1, 1], [1, 1]]
        first = solve_consistent(matrix, [2, 2])
        second = solve_consistent(matrix, [2, 2], column_order=[1, 0])
        self.assertEqual(first, [Fraction(2), Fraction(0)])
        self.assertEqual(second, [Fraction(0), Fraction(2)])

    def test_inconsistent_system(self):
        with self.assertRaises(InconsistentSystemError):
            solve_consistent([[1, 1], [1, 1]], [1, 2])

    def test_incremental_span(self):
        span = IncrementalSpan()
        self.assertTrue(span.add([1, 0, 1]))
        self.assertTrue(span.add([0, 1, 1]))
        self.assertFalse(span.add([2, 3, 5]))
        self.assertFalse(span.add([0, 0, 0]))
        self.assertTrue(span.add([0, 0, 1]))
        self.assertEqual(len(span), 3)


class GramMatrixTests(SimpleTestCase):
    def test_k1(self):
        self.assertEqual(gram_matrix(1).to_json()["entries"], [["n^1"]])

    def test_k2(self):
        gram = gram_matrix(2)
        self.assertEqual(
            gram.to_json()["entries"],
            [["n^2", "n^1", "n^1"], ["n^1", "n^2", "n^1"], ["n^1", "n^1", "n^2"]],
        )
        self.assertEqual(gram.to_json(n=3)["entries"][0], ["9", "3", "3"])

    def test_k3_row_profile(self):
        gram = gram_matrix(3)
        self.assertEqual(gram.size, 15)
        for i in range(gram.size):
            self.assertEqual(gram.row_profile(i), {3: 1, 2: 6, 1: 8})
        self.assertEqual(gram_row_profile(3), {3: 1, 2: 6, 1: 8})

    def test_symmetric_with_n_to_the_k_diagonal(self):
        for k in range(1, 5):
            exponents = gram_matrix(k).exponents
            np.testing.assert_array_equal(exponents, exponents.T)
            self.assertTrue(np.all(np.diag(exponents) == k))
            self.assertTrue(np.all(exponents >= 1))

    def test_row_sum_is_p_poly(self):
        for k in range(1, 6):
            self.assertEqual(gram_row_sum(k), p_poly(k))

    def test_average_is_inverse_mu(self):
        for k, n in itertools.product(range(1, 5), [1, 2, 3, 5]):
            self.assertEqual(gram_average(k, n), 1 / mu(k, n))

    def test_gram_entry(self):
        p, q = enumerate_pairings(2)[:2]
        self.assertEqual(gram_entry(p, q), NPolynomial.monomial(1))
        self.assertEqual(gram_entry(p, p), NPolynomial.monomial(2))

    def test_rejects_bad_k(self):
        with self.assertRaises(ArgumentError):
            gram_matrix(0)

    @override_settings(ORTHO_MAX_PAIRING_K=2)
    def test_cap(self):
        with self.assertRaises(SizeLimitError):
            gram_matrix(3)


class CombinationTests(SimpleTestCase):
    def test_zero_coefficients_are_dropped(self):
        p = Pairing.standard(2)
        combination = InvariantCombination(4, {p: 0})
        self.assertTrue(combination.is_zero())
        self.assertEqual(combination.to_json(), {})

    def test_order_mismatch(self):
        with self.assertRaises(ArgumentError):
            InvariantCombination(6, {Pairing.standard(2): 1})

    def test_to_json(self):
        combination = InvariantCombination.single(Pairing.standard(2), Fraction(3, 8))
        self.assertEqual(combination.to_json(), {"[[1,2],[3,4]]": "3/8"})

    def test_average_invariant(self):
        average = average_invariant(4)
        self.assertEqual(len(average), 3)
        self.assertTrue(all(c == Fraction(1, 3) for _, c in average.items()))
        self.assertTrue(average_invariant(5).is_zero())

    def test_inner_matches_dense(self):
        pairings = enumerate_pairings(2)
        c1 = InvariantCombination(4, {pairings[0]: 2, pairings[2]: Fraction(-1, 3)})
        c2 = InvariantCombination(4, {pairings[1]: 1, pairings[2]: 5})
        for n in (1, 2, 3):
            dense = inner(evaluate_combination_dense(c1, n), evaluate_combination_dense(c2, n))
            self.assertAlmostEqual(float(combination_inner(c1, c2, n)), dense, places=10)

    def test_exact_evaluation(self):
        combination = InvariantCombination.single(Pairing.standard(1), Fraction(1, 3))
        entries, denominator = evaluate_combination_exact(combination, 2)
        self.assertEqual(denominator, 3)
        self.assertEqual(entries.tolist(), [[1, 0], [0, 1]])


class SftRelationTests(SimpleTestCase):
    def test_k2_terms(self):
        relation = sft_relation(2)
        self.assertEqual(len(relation), 2)
        self.assertEqual(relation.coefficient(Pairing(((1, 2), (3, 4)))), 1)
        self.assertEqual(relation.coefficient(Pairing(((1, 4), (2, 3)))), -1)

    def test_vanishes_when_k_exceeds_n(self):
        for k, n in [(2, 1), (3, 1), (3, 2), (4, 3)]:
            with self.subTest(k=k, n=n):
                self.assertTrue(evaluate_combination_dense(sft_relation(k), n).is_zero())

    def test_nonzero_when_k_at_most_n(self):
        for k, n in [(2, 2), (3, 3)]:
            with self.subTest(k=k, n=n):
                self.assertFalse(evaluate_combination_dense(sft_relation(k), n).is_zero())

    def test_rejects_k1(self):
        with self.assertRaises(ArgumentError):
            sft_relation(1)

    def test_position_subset(self):
        self.assertEqual(sft_relation(2, sigma_subset=(2, 4)), sft_relation(2))
        relation = sft_relation(2, sigma_subset=(2, 3))
        self.assertEqual(relation.coefficient(Pairing(((1, 2), (3, 4)))), 1)
        self.assertEqual(relation.coefficient(Pairing(((1, 3), (2, 4)))), -1)
        # Both positions of one pair: every term cancels.
        self.assertTrue(sft_relation(2, sigma_subset=(1, 2)).is_zero())

    def test_odd_positions_give_a_relation(self):
        relation = sft_relation(3, sigma_subset=(1, 3, 5))
        self.assertTrue(evaluate_combination_dense(relation, 2).is_zero())
        self.assertFalse(evaluate_combination_dense(relation, 3).is_zero())

    def test_rejects_bad_subsets(self):
        for subset in ((2,), (2, 2), (0, 2), (2, 5)):
            with self.subTest(subset=subset):
                with self.assertRaises(ArgumentError):
                    sft_relation(2, sigma_subset=subset)


class BasisTests(SimpleTestCase):
    def test_rank_equals_basis_size(self):
        for k, n in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)]:
            with self.subTest(k=k, n=n):
                self.assertEqual(gram_rank(k, n), len(extract_basis(k, n)))

    def test_full_rank_when_n_at_least_k(self):
        self.assertEqual(extract_basis(2, 3), enumerate_pairings(2))
        self.assertEqual(len(extract_basis(3, 3)), double_factorial(3))

    def test_dimension_one_keeps_the_first_pairing(self):
        self.assertEqual(extract_basis(3, 1), [Pairing.standard(3)])

    def test_corollary1_examples(self):
        for k, n in [(1, 2), (2, 1), (2, 3), (3, 2)]:
            with self.subTest(k=k, n=n):
                identity = corollary1_identity(k, n)
                self.assertTrue(identity.holds)
                self.assertEqual(identity.residual_float, 0.0)
                self.assertEqual(identity.mu, mu(k, n))

    def test_corollary1_row_sums_for_full_basis(self):
        identity = corollary1_identity(2, 3)
        # Every row of the full Gram matrix sums to P(3, 2) = 15.
        self.assertEqual(identity.row_sums, (Fraction(1, 15),) * 3)


class KroneckerTests(SimpleTestCase):
    def test_kronecker_shape(self):
        self.assertEqual(kronecker_exponents(3).shape, (15, 15))
        self.assertEqual(kronecker_exponents(2).tolist()[0], [2, 1, 1])

    def test_corollary2(self):
        for k in range(1, 5):
            with self.subTest(k=k):
                check = corollary2_check(k)
                self.assertTrue(check.passed)
                self.assertEqual(dict(check.row_profile), p_poly(k).coefficients)


class ProjectionTests(SimpleTestCase):
    def test_veronese_projects_onto_its_expectation(self):
        for x, m in [((0.6, 0.8), 4), ((2 / 3, 1 / 3, 2 / 3), 4), ((0.6, 0.8), 6)]:
            with self.subTest(x=x, m=m):
                projection = project_onto_invariants(veronese(x, m))
                expected = evaluate_combination_dense(veronese_expectation(m, len(x)), len(x))
                self.assertLess(projection.tensor.max_abs_difference(expected), 1e-10)

    def test_odd_order_projects_to_zero(self):
        projection = project_onto_invariants(veronese((0.6, 0.8), 3))
        self.assertTrue(projection.tensor.is_zero())
