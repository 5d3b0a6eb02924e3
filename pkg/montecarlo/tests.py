from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, override_settings

from combinat.pairings import Pairing
from combinat.partitions import SetPartition
from common.exceptions import ArgumentError
from moments.expectations import generalized_expectation, pair_moment_cor3
from moments.sphere import mu
from montecarlo.estimators import (
    Estimate,
    SamplerConfig,
    _RunningMoments,
    _worker_counts,
    estimate_dot_power,
    estimate_lemma3,
    estimate_pair_moment,
    estimate_query_moment,
    estimate_tensor_expectation,
)
from montecarlo.samplers import (
    make_generator,
    sample_haar_batch,
    sample_sphere_batch,
    spawn_generators,
)
from weingarten.queries import MomentQuery


def small_config(n, samples=20_000, seed=7, workers=1):
    return SamplerConfig(seed=seed, samples=samples, n=n, workers=workers, batch_size=5_000)


class SamplerTests(SimpleTestCase):
    def test_haar_samples_are_orthogonal(self):
        matrices = sample_haar_batch(5, 100, make_generator(3))
        products = np.einsum("bji,bjk->bik", matrices, matrices)
        identity = np.broadcast_to(np.eye(5), products.shape)
        np.testing.assert_allclose(products, identity, atol=1e-10)

    def test_both_determinant_signs_occur(self):
        determinants = np.linalg.det(sample_haar_batch(3, 200, make_generator(4)))
        np.testing.assert_allclose(np.abs(determinants), 1.0, atol=1e-10)
        self.assertTrue(np.any(determinants > 0))
        self.assertTrue(np.any(determinants < 0))

    def test_first_column_covariance(self):
        n = 4
        columns = sample_haar_batch(n, 40_000, make_generator(11))[:, :, 0]
        covariance = columns.T @ columns / columns.shape[0]
        np.testing.assert_allclose(covariance, np.eye(n) / n, atol=0.01)

    def test_sphere_samples_have_unit_norm(self):
        vectors = sample_sphere_batch(6, 500, make_generator(2))
        np.testing.assert_allclose(np.linalg.norm(vectors, axis=1), 1.0, atol=1e-12)

    def test_same_seed_same_draws(self):
        first = sample_haar_batch(3, 10, make_generator(42))
        second = sample_haar_batch(3, 10, make_generator(42))
        np.testing.assert_array_equal(first, second)

    def test_worker_streams_differ(self):
        first, second = spawn_generators(42, 2)
        self.assertFalse(np.array_equal(first.random(4), second.random(4)))

    def test_rejects_bad_dimension(self):
        with self.assertRaises(ArgumentError):
            sample_sphere_batch(0, 1, make_generator(1))


class RunningMomentsTests(SimpleTestCase):
    def test_merge_matches_direct_computation(self):
        values = make_generator(5).standard_normal(1_001)
        merged = _RunningMoments()
        for chunk in np.array_split(values, 7):
            merged.add_batch(chunk)
        self.assertEqual(merged.count, values.size)
        self.assertAlmostEqual(float(merged.mean), float(values.mean()), places=12)
        expected = np.sqrt(values.var(ddof=1) / values.size)
        self.assertAlmostEqual(float(merged.stderr()), float(expected), places=12)

    def test_worker_counts(self):
        self.assertEqual(_worker_counts(10, 3), [4, 3, 3])
        self.assertEqual(sum(_worker_counts(1_000_001, 4)), 1_000_001)


class SamplerConfigTests(SimpleTestCase):
    def test_validation(self):
        for kwargs in (
            {"samples": 0},
            {"workers": 0},
            {"n": 0},
            {"seed": -1},
            {"seed": 2**64},
            {"batch_size": 0},
        ):
            with self.subTest(**kwargs):
                with self.assertRaises(ArgumentError):
                    SamplerConfig(**{"seed": 1, "samples": 10, "n": 2, **kwargs})

    @override_settings(ORTHO_MC_SEED=9, ORTHO_MC_SAMPLES=123, ORTHO_MC_WORKERS=2)
    def test_defaults_come_from_settings(self):
        config = SamplerConfig.from_settings(3)
        self.assertEqual((config.seed, config.samples, config.workers), (9, 123, 2))
        self.assertEqual(SamplerConfig.from_settings(3, seed=1).seed, 1)


class EstimateTests(SimpleTestCase):
    def test_z_score(self):
        estimate = Estimate(mean=0.5, stderr=0.01, samples=100, seed=1, workers=1)
        self.assertAlmostEqual(estimate.z_score(Fraction(1, 2)), 0.0)
        self.assertAlmostEqual(estimate.z_score(0.53), 3.0)
        self.assertTrue(estimate.agrees(0.53))
        self.assertFalse(estimate.agrees(0.55))

    def test_zero_stderr(self):
        estimate = Estimate(mean=1.0, stderr=0.0, samples=100, seed=1, workers=1)
        self.assertTrue(estimate.agrees(1))
        self.assertFalse(estimate.agrees(Fraction(1, 2)))


class DotMomentTests(SimpleTestCase):
    def test_matches_mu(self):
        for k, n in [(1, 2), (2, 3), (3, 5)]:
            with self.subTest(k=k, n=n):
                estimate = estimate_dot_power(n, k, small_config(n))
                self.assertTrue(estimate.agrees(mu(k, n)), estimate)

    def test_dimension_one_is_exact(self):
        estimate = estimate_dot_power(1, 2, small_config(1, samples=1_000))
        self.assertEqual(estimate.mean, 1.0)
        self.assertEqual(estimate.stderr, 0.0)

    def test_reproducible(self):
        first = estimate_dot_power(3, 1, small_config(3, samples=5_000))
        second = estimate_dot_power(3, 1, small_config(3, samples=5_000))
        self.assertEqual(first, second)
        other = estimate_dot_power(3, 1, small_config(3, samples=5_000, seed=8))
        self.assertNotEqual(first.mean, other.mean)

    def test_worker_split_is_deterministic(self):
        config = small_config(3, samples=10_001, workers=3)
        first = estimate_dot_power(3, 2, config)
        second = estimate_dot_power(3, 2, config)
        self.assertEqual(first.mean, second.mean)
        self.assertEqual(first.stderr, second.stderr)
        self.assertEqual(first.workers, 3)
        self.assertTrue(first.agrees(mu(2, 3)))


class QueryMomentTests(SimpleTestCase):
    def test_squared_entry(self):
        estimate = estimate_query_moment(MomentQuery(((1, 1), (1, 1)), 3), small_config(3))
        self.assertTrue(estimate.agrees(Fraction(1, 3)), estimate)

    def test_dimension_one(self):
        q = MomentQuery(((1, 1),) * 2, 1)
        estimate = estimate_query_moment(q, small_config(1, samples=100))
        self.assertEqual((estimate.mean, estimate.stderr), (1.0, 0.0))


class TensorEstimateTests(SimpleTestCase):
    def test_two_independent_blocks(self):
        partition = SetPartition(((1, 2), (3, 4)))
        estimate = estimate_tensor_expectation(partition, 2, small_config(2))
        expected = generalized_expectation(partition, 2).to_dense().entries
        self.assertEqual(estimate.mean.shape, (2, 2, 2, 2))
        self.assertTrue(estimate.within(expected), estimate.max_z(expected))

    def test_odd_block_averages_to_zero(self):
        partition = SetPartition(((1, 2, 3),))
        estimate = estimate_tensor_expectation(partition, 2, small_config(2))
        self.assertTrue(estimate.within(np.zeros((2, 2, 2))))


class PairMomentEstimateTests(SimpleTestCase):
    def test_examples(self):
        p0 = Pairing.standard(2)
        crossed = Pairing(((1, 3), (2, 4)))
        for p, q in [(p0, p0), (p0, crossed)]:
            estimate = estimate_pair_moment(p, q, 2, small_config(2))
            self.assertTrue(estimate.agrees(pair_moment_cor3(p, q, 2)), estimate)


class SquaredNormTests(SimpleTestCase):
    def test_even_and_odd_orders(self):
        for n, m in [(3, 4), (2, 2), (3, 3)]:
            with self.subTest(n=n, m=m):
                check = estimate_lemma3(n, m, small_config(n))
                self.assertTrue(check.agrees, check)
        self.assertEqual(estimate_lemma3(3, 3, small_config(3, samples=10)).rhs, 0)
