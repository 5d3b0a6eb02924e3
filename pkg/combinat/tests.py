import itertools
import random

from django.test import SimpleTestCase, override_settings

from combinat.pairings import Pairing, double_factorial, enumerate_pairings, pairings_of
from combinat.partitions import (
    SetPartition,
    enumerate_set_partitions,
    join,
    join_size,
    restricted_growth_strings,
)
from combinat.permutations import (
    IndexPermutation,
    apply_permutation,
    permutation_sign,
    refines,
)
from common.exceptions import ArgumentError, SizeLimitError


def random_partition(rng, m):
    labels = [rng.randrange(1, m + 1) for _ in range(m)]
    return SetPartition.from_labels(labels)


def random_permutation(rng, m):
    images = list(range(1, m + 1))
    rng.shuffle(images)
    return IndexPermutation(tuple(images))


class EnumeratePairingsTests(SimpleTestCase):
    def test_counts_are_double_factorials(self):
        for k, expected in zip(range(1, 6), [1, 3, 15, 105, 945]):
            pairings = enumerate_pairings(k)
            self.assertEqual(len(pairings), expected)
            self.assertEqual(len(set(pairings)), expected)
            self.assertEqual(double_factorial(k), expected)

    def test_k2_order(self):
        self.assertEqual(
            [p.to_json() for p in enumerate_pairings(2)],
            [[[1, 2], [3, 4]], [[1, 3], [2, 4]], [[1, 4], [2, 3]]],
        )

    def test_k1_single_pairing(self):
        self.assertEqual(enumerate_pairings(1), [Pairing(((1, 2),))])

    def test_order_is_lexicographic_and_canonical(self):
        pairings = enumerate_pairings(4)
        self.assertEqual(pairings, sorted(pairings))
        for pairing in pairings:
            self.assertEqual(pairing.pairs[0][0], 1)
            self.assertTrue(all(a < b for a, b in pairing.pairs))

    @override_settings(ORTHO_MAX_PAIRING_K=3)
    def test_cap_is_enforced(self):
        with self.assertRaisesMessage(SizeLimitError, "k <= 3"):
            enumerate_pairings(4)

    def test_rejects_non_positive_k(self):
        with self.assertRaises(ArgumentError):
            enumerate_pairings(0)

    def test_pairings_of_arbitrary_positions(self):
        self.assertEqual(
            list(pairings_of([2, 5, 7, 9])),
            [((2, 5), (7, 9)), ((2, 7), (5, 9)), ((2, 9), (5, 7))],
        )

    def test_pairing_is_canonicalised(self):
        self.assertEqual(Pairing(((4, 3), (2, 1))), Pairing(((1, 2), (3, 4))))
        with self.assertRaises(ArgumentError):
            Pairing(((1, 2), (2, 3)))


class JoinTests(SimpleTestCase):
    def test_idempotent(self):
        p = SetPartition(((1, 2), (3, 4)))
        self.assertEqual(join(p, p), p)

    def test_crossing_pairings_join_to_one_block(self):
        p = SetPartition(((1, 2), (3, 4)))
        q = SetPartition(((1, 3), (2, 4)))
        self.assertEqual(join(p, q), SetPartition(((1, 2, 3, 4),)))

    def test_equal_pairings_keep_two_blocks(self):
        p = Pairing(((1, 2), (3, 4)))
        self.assertEqual(join_size(p, p), 2)

    def test_mismatched_ground_sets(self):
        with self.assertRaises(ArgumentError):
            join(SetPartition(((1, 2),)), SetPartition(((1, 2), (3, 4))))

    def test_lattice_laws_on_random_partitions(self):
        rng = random.Random(7)
        for _ in range(200):
            m = rng.randrange(1, 9)
            p, q, r = (random_partition(rng, m) for _ in range(3))
            self.assertEqual(join(p, q), join(q, p))
            self.assertEqual(join(join(p, q), r), join(p, join(q, r)))
            self.assertEqual(join(p, p), p)

    def test_join_of_pairings_has_at_most_k_blocks(self):
        pairings = enumerate_pairings(3)
        for p, q in itertools.product(pairings, repeat=2):
            self.assertLessEqual(join_size(p, q), 3)


class SetPartitionEnumerationTests(SimpleTestCase):
    def test_bell_numbers(self):
        for m, bell in zip(range(1, 7), [1, 2, 5, 15, 52, 203]):
            partitions = list(enumerate_set_partitions(m))
            self.assertEqual(len(partitions), bell)
            self.assertEqual(len(set(partitions)), bell)

    def test_block_limit(self):
        self.assertEqual(
            list(restricted_growth_strings(3, max_blocks=2)),
            [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2)],
        )
        self.assertEqual(len(list(enumerate_set_partitions(4, max_blocks=1))), 1)

    def test_rejects_empty_ground_set(self):
        with self.assertRaises(ArgumentError):
            list(restricted_growth_strings(0))


class PermutationTests(SimpleTestCase):
    def test_identity_fixes_pairing(self):
        p = Pairing(((1, 3), (2, 4)))
        self.assertEqual(apply_permutation(IndexPermutation.identity(4), p), p)

    def test_swap_relabels(self):
        sigma = IndexPermutation.transposition(4, 2, 4)
        self.assertEqual(
            apply_permutation(sigma, Pairing(((1, 2), (3, 4)))),
            Pairing(((1, 4), (2, 3))),
        )

    def test_orbit_of_standard_pairing_is_everything(self):
        p0 = Pairing.standard(2)
        orbit = {
            apply_permutation(IndexPermutation(images), p0)
            for images in itertools.permutations(range(1, 5))
        }
        self.assertEqual(orbit, set(enumerate_pairings(2)))

    def test_action_is_compatible_with_composition(self):
        rng = random.Random(11)
        pairings = enumerate_pairings(3)
        for _ in range(100):
            sigma, tau = random_permutation(rng, 6), random_permutation(rng, 6)
            p = rng.choice(pairings)
            self.assertEqual(
                apply_permutation(sigma.compose(tau), p),
                apply_permutation(sigma, apply_permutation(tau, p)),
            )

    def test_size_mismatch(self):
        with self.assertRaises(ArgumentError):
            apply_permutation(IndexPermutation.identity(6), Pairing.standard(2))

    def test_signs(self):
        self.assertEqual(permutation_sign(IndexPermutation.identity(5)), 1)
        self.assertEqual(permutation_sign(IndexPermutation.transposition(5, 1, 4)), -1)
        self.assertEqual(permutation_sign(IndexPermutation.from_cycle(5, [1, 2, 3])), 1)

    def test_sign_is_multiplicative(self):
        rng = random.Random(3)
        for _ in range(100):
            sigma, tau = random_permutation(rng, 7), random_permutation(rng, 7)
            self.assertEqual(
                permutation_sign(sigma.compose(tau)),
                permutation_sign(sigma) * permutation_sign(tau),
            )

    def test_inverse(self):
        sigma = IndexPermutation((3, 1, 4, 2))
        self.assertEqual(sigma.compose(sigma.inverse()), IndexPermutation.identity(4))

    def test_not_a_bijection(self):
        with self.assertRaises(ArgumentError):
            IndexPermutation((1, 1, 2))


class RefinesTests(SimpleTestCase):
    def test_refinement(self):
        blocks = SetPartition(((1, 2), (3, 4)))
        self.assertTrue(refines(Pairing(((1, 2), (3, 4))), blocks))
        self.assertFalse(refines(Pairing(((1, 3), (2, 4))), blocks))

    def test_single_block_is_refined_by_everything(self):
        whole = SetPartition.single_block(6)
        for q in enumerate_pairings(3):
            self.assertTrue(refines(q, whole))

    def test_size_mismatch(self):
        with self.assertRaises(ArgumentError):
            refines(Pairing.standard(2), SetPartition.single_block(6))
