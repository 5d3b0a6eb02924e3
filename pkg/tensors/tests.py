import itertools
import random

import numpy as np
from django.test import SimpleTestCase, override_settings

from combinat.pairings import Pairing, enumerate_pairings
from combinat.partitions import SetPartition, join_size
from combinat.permutations import IndexPermutation, apply_permutation
from common.exceptions import ArgumentError, SizeLimitError
from montecarlo.samplers import make_generator, sample_haar_orthogonal, sample_sphere
from tensors.dense import (
    DenseTensor,
    apply_orthogonal,
    inner,
    placed_tensor,
    standard_invariant_dense,
    veronese,
)


class StandardInvariantTests(SimpleTestCase):
    def test_single_pair_is_identity_pattern(self):
        tensor = standard_invariant_dense(Pairing(((1, 2),)), 2)
        np.testing.assert_array_equal(tensor.entries, np.eye(2))

    def test_dimension_one_is_all_ones(self):
        for p in enumerate_pairings(3):
            tensor = standard_invariant_dense(p, 1)
            self.assertEqual(tensor.flat.tolist(), [1.0])

    def test_nonzero_entries_follow_pairs(self):
        tensor = standard_invariant_dense(Pairing(((1, 2), (3, 4))), 2)
        nonzero = {tuple(int(i) for i in index) for index in np.argwhere(tensor.entries)}
        self.assertEqual(nonzero, {(i, i, j, j) for i in range(2) for j in range(2)})

    @override_settings(ORTHO_DENSE_ENTRY_CAP=100)
    def test_cap(self):
        with self.assertRaises(SizeLimitError):
            standard_invariant_dense(Pairing.standard(3), 3)

    def test_gram_entries_are_powers_of_n(self):
        for k, n in itertools.product(range(1, 4), range(1, 4)):
            pairings = enumerate_pairings(k)
            dense = {p: standard_invariant_dense(p, n) for p in pairings}
            for p, q in itertools.product(pairings, repeat=2):
                self.assertEqual(inner(dense[p], dense[q]), n ** join_size(p, q))

    def test_permutation_moves_across_the_inner_product(self):
        rng = random.Random(5)
        pairings = enumerate_pairings(3)
        dense = {p: standard_invariant_dense(p, 2) for p in pairings}
        for _ in range(100):
            images = list(range(1, 7))
            rng.shuffle(images)
            sigma = IndexPermutation(tuple(images))
            p, q = rng.choice(pairings), rng.choice(pairings)
            self.assertEqual(
                inner(dense[apply_permutation(sigma, p)], dense[q]),
                inner(dense[p], dense[apply_permutation(sigma.inverse(), q)]),
            )

    def test_invariants_are_fixed_by_orthogonal_matrices(self):
        rng = make_generator(2024)
        for n, k in itertools.product((2, 3), (1, 2, 3)):
            q = sample_haar_orthogonal(n, rng)
            for p in enumerate_pairings(k)[:4]:
                tensor = standard_invariant_dense(p, n)
                rotated = apply_orthogonal(q, tensor)
                self.assertLess(rotated.max_abs_difference(tensor), 1e-9)


class PlacedTensorTests(SimpleTestCase):
    def test_interleaved_blocks(self):
        u, v = np.array([1.0, 2.0]), np.array([3.0, -1.0])
        partition = SetPartition(((1, 3, 5), (2, 4)))
        tensor = placed_tensor([u, v], partition)
        expected = np.einsum("a,b,c,d,e->abcde", u, v, u, v, u)
        np.testing.assert_array_equal(tensor.entries, expected)

    def test_single_block_is_veronese(self):
        x = np.array([0.6, 0.8])
        np.testing.assert_array_equal(
            placed_tensor([x], SetPartition.single_block(3)).entries,
            veronese(x, 3).entries,
        )

    def test_basis_vectors_give_an_indicator(self):
        e1 = np.array([1.0, 0.0, 0.0])
        tensor = placed_tensor([e1, e1], SetPartition(((1, 2), (3,))))
        self.assertEqual(tensor.entries[0, 0, 0], 1.0)
        self.assertEqual(float(tensor.entries.sum()), 1.0)

    def test_block_count_mismatch(self):
        with self.assertRaises(ArgumentError):
            placed_tensor([[1.0, 0.0]], SetPartition(((1,), (2,))))


class VeroneseTests(SimpleTestCase):
    def test_basis_vector(self):
        tensor = veronese([1.0, 0.0], 3)
        self.assertEqual(tensor.entries[0, 0, 0], 1.0)
        self.assertEqual(float(tensor.entries.sum()), 1.0)

    def test_unit_norm(self):
        rng = make_generator(1)
        for m in range(1, 6):
            x = sample_sphere(3, rng)
            tensor = veronese(x, m)
            self.assertAlmostEqual(np.sqrt(inner(tensor, tensor)), 1.0, delta=1e-9)

    def test_rejects_non_unit(self):
        with self.assertRaises(ArgumentError):
            veronese([1.0, 1.0], 2)

    def test_against_the_pair_invariant(self):
        tensor = veronese([0.6, 0.8], 2)
        self.assertAlmostEqual(
            inner(tensor, standard_invariant_dense(Pairing(((1, 2),)), 2)), 1.0, places=12
        )

    def test_inner_of_powers_is_power_of_inner(self):
        rng = make_generator(9)
        x, y = sample_sphere(3, rng), sample_sphere(3, rng)
        for m in range(1, 6):
            self.assertAlmostEqual(
                inner(veronese(x, m), veronese(y, m)), float(np.dot(x, y)) ** m, places=12
            )


class InnerTests(SimpleTestCase):
    def test_positive_definite(self):
        zero = DenseTensor.zeros(2, 2)
        self.assertEqual(inner(zero, zero), 0.0)
        tensor = standard_invariant_dense(Pairing(((1, 2),)), 2)
        self.assertGreater(inner(tensor, tensor), 0.0)

    def test_shape_mismatch(self):
        with self.assertRaises(ArgumentError):
            inner(DenseTensor.zeros(2, 2), DenseTensor.zeros(3, 2))

    def test_json_dump_is_row_major(self):
        tensor = placed_tensor([[1.0, 2.0], [3.0, 5.0]], SetPartition(((1,), (2,))))
        self.assertEqual(
            tensor.to_json(), {"n": 2, "m": 2, "entries": [3.0, 5.0, 6.0, 10.0]}
        )
