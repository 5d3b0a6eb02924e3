import itertools
import random
from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from combinat.pairings import Pairing
from combinat.partitions import SetPartition, restricted_growth_strings
from common.exceptions import ArgumentError
from montecarlo.estimators import SamplerConfig
from weingarten.evaluators import (
    compare_methods,
    corollary4_moment,
    exact_moment,
    theorem3_moment,
)
from weingarten.queries import MomentQuery, delta, group_by_first_index, parse_query


def query(n, *factors):
    return MomentQuery(tuple(factors), n)


def both_evaluators(q):
    return theorem3_moment(q), exact_moment(q)


class QueryParsingTests(SimpleTestCase):
    def test_parse(self):
        q = parse_query("1,1; 1,2;2,2", 3)
        self.assertEqual(q.factors, ((1, 1), (1, 2), (2, 2)))
        self.assertEqual(str(q), "1,1;1,2;2,2")
        self.assertEqual(q.to_json(), [[1, 1], [1, 2], [2, 2]])

    def test_malformed(self):
        for text in ("", "1", "1,1;", "1;2", "a,b", "1,1,1"):
            with self.subTest(text=text):
                with self.assertRaises(ValidationError):
                    parse_query(text, 3)

    def test_out_of_range(self):
        with self.assertRaises(ArgumentError):
            parse_query("1,4", 3)
        with self.assertRaises(ArgumentError):
            parse_query("0,1", 3)


class GroupingTests(SimpleTestCase):
    def test_single_block(self):
        grouped = group_by_first_index(query(2, (1, 1), (1, 2)))
        self.assertEqual(grouped.first_partition, SetPartition(((1, 2),)))
        self.assertEqual(grouped.sigma_blocks, ((1, 2),))

    def test_interleaved_rows(self):
        grouped = group_by_first_index(query(2, (1, 1), (2, 2), (1, 1), (2, 2)))
        self.assertEqual(grouped.first_partition, SetPartition(((1, 3), (2, 4))))
        self.assertEqual(grouped.row_indices, (1, 2))
        self.assertEqual(grouped.sigma, (1, 1, 2, 2))

    def test_distinct_rows(self):
        grouped = group_by_first_index(query(3, (3, 1), (1, 1), (2, 1)))
        self.assertEqual(len(grouped.first_partition), 3)
        self.assertEqual(grouped.row_indices, (3, 1, 2))


class DeltaTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(delta(Pairing(((1, 2), (3, 4))), (1, 1, 2, 2)), 1)
        self.assertEqual(delta(Pairing(((1, 3), (2, 4))), (1, 1, 2, 2)), 0)
        self.assertEqual(delta(Pairing(((1, 4), (2, 3))), (5, 5, 5, 5)), 1)

    def test_size_mismatch(self):
        with self.assertRaises(ArgumentError):
            delta(Pairing.standard(2), (1, 1))


class BlockProductMomentTests(SimpleTestCase):
    def test_examples(self):
        for n in (2, 3, 5):
            self.assertEqual(theorem3_moment(query(n, (1, 1))), 0)
            self.assertEqual(theorem3_moment(query(n, *[(1, 1)] * 4)), Fraction(3, n * (n + 2)))
            self.assertEqual(
                theorem3_moment(query(n, (1, 1), (1, 1), (1, 2), (1, 2))),
                Fraction(1, n * (n + 2)),
            )
            self.assertEqual(
                theorem3_moment(query(n, (1, 1), (1, 1), (2, 2), (2, 2))),
                Fraction(1, n**2),
            )


class ExactMomentTests(SimpleTestCase):
    def test_examples(self):
        for n in (2, 3, 5):
            self.assertEqual(exact_moment(query(n, (1, 1), (1, 1))), Fraction(1, n))
            self.assertEqual(exact_moment(query(n, (1, 1), (2, 2))), 0)
            self.assertEqual(
                exact_moment(query(n, (1, 1), (1, 1), (2, 2), (2, 2))),
                Fraction(n + 1, n * (n - 1) * (n + 2)),
            )
            self.assertEqual(
                exact_moment(query(n, (1, 1), (1, 2), (2, 1), (2, 2))),
                Fraction(-1, n * (n - 1) * (n + 2)),
            )

    def test_two_by_two_case(self):
        self.assertEqual(exact_moment(query(2, (1, 1), (1, 1), (2, 2), (2, 2))), Fraction(3, 8))
        self.assertEqual(theorem3_moment(query(2, (1, 1), (1, 1), (2, 2), (2, 2))), Fraction(1, 4))

    def test_odd_order_is_zero(self):
        self.assertEqual(exact_moment(query(3, (1, 1), (1, 1), (1, 1))), 0)

    def test_lonely_row_index_gives_zero(self):
        self.assertEqual(exact_moment(query(3, (1, 1), (2, 1), (2, 2), (3, 3))), 0)
        self.assertEqual(exact_moment(query(3, (1, 2), (2, 1), (2, 1), (2, 1))), 0)

    def test_dimension_one(self):
        self.assertEqual(exact_moment(query(1, *[(1, 1)] * 6)), 1)

    def test_pivot_order_does_not_matter(self):
        # k = 3 > n = 2 makes the Gram system singular.
        rng = random.Random(3)
        for _ in range(20):
            factors = [(rng.randint(1, 2), rng.randint(1, 2)) for _ in range(6)]
            q = MomentQuery(tuple(factors), 2)
            self.assertEqual(exact_moment(q), exact_moment(q, column_order=range(14, -1, -1)))

    def test_invariances(self):
        rng = random.Random(11)
        for _ in range(25):
            factors = [(rng.randint(1, 3), rng.randint(1, 3)) for _ in range(4)]
            q = MomentQuery(tuple(factors), 3)
            value = exact_moment(q)
            shuffled = list(factors)
            rng.shuffle(shuffled)
            self.assertEqual(exact_moment(MomentQuery(tuple(shuffled), 3)), value)
            self.assertEqual(exact_moment(q.transposed()), value)
            rows = rng.sample([1, 2, 3], 3)
            cols = rng.sample([1, 2, 3], 3)
            relabelled = tuple((rows[i - 1], cols[j - 1]) for i, j in factors)
            self.assertEqual(exact_moment(MomentQuery(relabelled, 3)), value)

    def test_single_row_index_matches_theorem3(self):
        for n, m in itertools.product((2, 3, 5), range(1, 7)):
            for labels in restricted_growth_strings(m, max_blocks=n):
                q = MomentQuery(tuple((1, j) for j in labels), n)
                with self.subTest(query=str(q), n=n):
                    self.assertEqual(*both_evaluators(q))


class DistinctRowMomentTests(SimpleTestCase):
    def test_examples(self):
        for n in (2, 3, 5):
            self.assertEqual(corollary4_moment([(1, 1, 4)], n), Fraction(3, n * (n + 2)))
            self.assertEqual(corollary4_moment([(1, 1, 2), (2, 2, 2)], n), Fraction(1, n**2))
            self.assertEqual(corollary4_moment([(1, 1, 2)], n), Fraction(1, n))

    def test_matches_theorem3(self):
        specs = [
            [(1, 1, 8)],
            [(1, 2, 6), (2, 1, 2)],
            [(1, 1, 4), (2, 1, 4)],
            [(3, 1, 2), (1, 2, 2), (2, 3, 4)],
            [(1, 1, 2), (2, 2, 2), (3, 3, 2), (4, 1, 2)],
        ]
        for spec in specs:
            expanded = tuple(factor for i, j, e in spec for factor in [(i, j)] * e)
            self.assertEqual(corollary4_moment(spec, 4), theorem3_moment(MomentQuery(expanded, 4)))

    def test_rejects_repeated_rows(self):
        with self.assertRaises(ArgumentError):
            corollary4_moment([(1, 1, 2), (1, 2, 2)], 3)

    def test_rejects_odd_exponents(self):
        with self.assertRaises(ArgumentError):
            corollary4_moment([(1, 1, 3)], 3)


class CompareMethodsTests(SimpleTestCase):
    def config(self, n):
        return SamplerConfig(seed=42, samples=20_000, n=n, batch_size=5_000)

    def test_agreeing_methods(self):
        comparison = compare_methods(query(3, *[(1, 1)] * 4), self.config(3))
        self.assertEqual(comparison.theorem3, Fraction(1, 5))
        self.assertEqual(comparison.exact, Fraction(1, 5))
        self.assertEqual(comparison.status, "agree")

    def test_arbitration(self):
        comparison = compare_methods(query(2, (1, 1), (1, 1), (2, 2), (2, 2)), self.config(2))
        self.assertEqual(comparison.status, "resolved")
        self.assertEqual(comparison.supported, ("exact",))
        self.assertEqual(comparison.rejected, ("theorem3",))

    def test_odd_query(self):
        comparison = compare_methods(query(2, (1, 1)), self.config(2))
        self.assertEqual((comparison.theorem3, comparison.exact), (0, 0))
        self.assertTrue(comparison.exact_agrees)
