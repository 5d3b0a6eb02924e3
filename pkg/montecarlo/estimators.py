"""Monte Carlo estimators for every expectation with an exact counterpart.

Samples are split across workers; each worker draws from its own Philox
stream in fixed-size chunks and keeps a running mean and sum of squared
deviations. Worker results are merged in worker order, so a fixed
(seed, samples, workers, batch size) reproduces bit-identical estimates.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, List, Optional

import numpy as np
from django.conf import settings

from combinat.pairings import Pairing
from combinat.partitions import SetPartition
from common.exceptions import ArgumentError
from common.limits import check_dense_entries
from invariants.combinations import combination_inner
from moments.expectations import veronese_expectation
from montecarlo.samplers import sample_haar_batch, sample_sphere_batch, spawn_generators

logger = logging.getLogger(__name__)

# Upper bound on floats held per chunk when estimating whole tensors.
TENSOR_CHUNK_FLOATS = 2_000_000


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    samples: int
    n: int
    workers: int = 1
    batch_size: int = field(default_factory=lambda: settings.ORTHO_MC_BATCH_SIZE)

    def __post_init__(self):
        if self.samples < 1:
            raise ArgumentError(f"need at least one sample, got {self.samples}")
        if self.workers < 1:
            raise ArgumentError(f"need at least one worker, got {self.workers}")
        if self.batch_size < 1:
            raise ArgumentError(f"batch size must be positive, got {self.batch_size}")
        if self.n < 1:
            raise ArgumentError(f"dimension must be positive, got n={self.n}")
        if not 0 <= self.seed < 2**64:
            raise ArgumentError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @classmethod
    def from_settings(
        cls,
        n: int,
        seed: Optional[int] = None,
        samples: Optional[int] = None,
        workers: Optional[int] = None,
    ) -> "SamplerConfig":
        return cls(
            seed=settings.ORTHO_MC_SEED if seed is None else seed,
            samples=settings.ORTHO_MC_SAMPLES if samples is None else samples,
            n=n,
            workers=settings.ORTHO_MC_WORKERS if workers is None else workers,
        )

    def for_dimension(self, n: int) -> "SamplerConfig":
        return self if n == self.n else replace(self, n=n)


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    workers: int

    def z_score(self, value) -> float:
        gap = abs(self.mean - float(value))
        if self.stderr == 0.0:
            return 0.0 if gap <= 1e-12 else math.inf
        return gap / self.stderr

    def agrees(self, value, sigmas: Optional[float] = None) -> bool:
        sigmas = settings.ORTHO_ACCEPT_SIGMAS if sigmas is None else sigmas
        return self.z_score(value) < sigmas

    def to_json(self):
        return {
            "mean": self.mean,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
            "workers": self.workers,
        }


@dataclass(frozen=True, eq=False)
class TensorEstimate:
    """Entrywise estimate of a random tensor's expectation."""

    n: int
    m: int
    mean: np.ndarray
    stderr: np.ndarray
    samples: int
    seed: int
    workers: int

    def z_scores(self, expected: np.ndarray) -> np.ndarray:
        gap = np.abs(self.mean - np.asarray(expected, dtype=np.float64))
        with np.errstate(divide="ignore", invalid="ignore"):
            exact = np.where(gap <= 1e-12, 0.0, np.inf)
            return np.where(self.stderr > 0, gap / self.stderr, exact)

    def max_z(self, expected: np.ndarray) -> float:
        return float(np.max(self.z_scores(expected)))

    def within(self, expected: np.ndarray, sigmas: Optional[float] = None) -> bool:
        sigmas = settings.ORTHO_ACCEPT_SIGMAS if sigmas is None else sigmas
        return self.max_z(expected) < sigmas


class _RunningMoments:
    """Count, mean and sum of squared deviations, merged pairwise."""

    def __init__(self):
        self.count = 0
        self.mean = None
        self.m2 = None

    def add_batch(self, values: np.ndarray):
        batch = _RunningMoments()
        batch.count = values.shape[0]
        batch.mean = values.mean(axis=0)
        batch.m2 = ((values - batch.mean) ** 2).sum(axis=0)
        self.merge(batch)

    def merge(self, other: "_RunningMoments"):
        if other.count == 0:
            return
        if self.count == 0:
            self.count, self.mean, self.m2 = other.count, other.mean, other.m2
            return
        total = self.count + other.count
        delta = other.mean - self.mean
        self.mean = self.mean + delta * (other.count / total)
        self.m2 = self.m2 + other.m2 + delta**2 * (self.count * other.count / total)
        self.count = total

    def stderr(self):
        if self.count < 2:
            return np.zeros_like(self.mean)
        variance = self.m2 / (self.count - 1)
        return np.sqrt(variance / self.count)


Draw = Callable[[np.random.Generator, int], np.ndarray]


def _worker_counts(samples: int, workers: int) -> List[int]:
    base, extra = divmod(samples, workers)
    return [base + (1 if index < extra else 0) for index in range(workers)]


def _run(config: SamplerConfig, draw: Draw, batch_size: Optional[int] = None) -> _RunningMoments:
    batch_size = batch_size or config.batch_size
    generators = spawn_generators(config.seed, config.workers)
    counts = _worker_counts(config.samples, config.workers)

    def work(index: int) -> _RunningMoments:
        moments = _RunningMoments()
        remaining = counts[index]
        while remaining > 0:
            size = min(batch_size, remaining)
            moments.add_batch(draw(generators[index], size))
            remaining -= size
        logger.debug("Worker %s finished %s samples", index, counts[index])
        return moments

    if config.workers == 1:
        results = [work(0)]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(work, range(config.workers)))
    merged = _RunningMoments()
    for result in results:
        merged.merge(result)
    return merged


def _scalar_estimate(config: SamplerConfig, draw: Draw) -> Estimate:
    moments = _run(config, draw)
    return Estimate(
        mean=float(moments.mean),
        stderr=float(moments.stderr()),
        samples=config.samples,
        seed=config.seed,
        workers=config.workers,
    )


def estimate_dot_moment(n: int, exponent: int, config: SamplerConfig) -> Estimate:
    """Sample mean of <x, y>^exponent for independent uniform unit x, y."""
    config = config.for_dimension(n)

    def draw(rng, size):
        x = sample_sphere_batch(n, size, rng)
        y = sample_sphere_batch(n, size, rng)
        return np.einsum("bi,bi->b", x, y) ** exponent

    estimate = _scalar_estimate(config, draw)
    logger.info("Estimated E(<x,y>^%s) at n=%s: %s", exponent, n, estimate.mean)
    return estimate


def estimate_dot_power(n: int, k: int, config: SamplerConfig) -> Estimate:
    """Sample mean of <x, y>^2k; compare with ``mu(k, n)``."""
    return estimate_dot_moment(n, 2 * k, config)


def estimate_query_moment(query, config: SamplerConfig) -> Estimate:
    """Sample mean of the product of Haar-matrix entries named by ``query``."""
    config = config.for_dimension(query.n)
    rows = np.array([i - 1 for i, _ in query.factors])
    cols = np.array([j - 1 for _, j in query.factors])

    def draw(rng, size):
        matrices = sample_haar_batch(query.n, size, rng)
        return np.prod(matrices[:, rows, cols], axis=1)

    estimate = _scalar_estimate(config, draw)
    logger.info("Estimated moment %s at n=%s: %s", query, query.n, estimate.mean)
    return estimate


def estimate_tensor_expectation(
    partition: SetPartition, n: int, config: SamplerConfig
) -> TensorEstimate:
    """Entrywise mean of the placed tensor of independent uniform unit vectors."""
    config = config.for_dimension(n)
    m = partition.m
    check_dense_entries(n, m)
    block_of = partition.block_index()
    blocks = len(partition)

    def draw(rng, size):
        vectors = sample_sphere_batch(n, size * blocks, rng).reshape(size, blocks, n)
        tensor = vectors[:, block_of[1]]
        for s in range(2, m + 1):
            factor = vectors[:, block_of[s]].reshape((size,) + (1,) * (s - 1) + (n,))
            tensor = tensor[..., None] * factor
        return tensor.reshape(size, -1)

    chunk = max(1, min(config.batch_size, TENSOR_CHUNK_FLOATS // n**m))
    moments = _run(config, draw, batch_size=chunk)
    shape = (n,) * m
    return TensorEstimate(
        n=n,
        m=m,
        mean=moments.mean.reshape(shape),
        stderr=moments.stderr().reshape(shape),
        samples=config.samples,
        seed=config.seed,
        workers=config.workers,
    )


def estimate_pair_moment(p: Pairing, q: Pairing, n: int, config: SamplerConfig) -> Estimate:
    """Sample mean of <x(P), y(Q)> with 2k independent uniform unit vectors."""
    if p.m != q.m:
        raise ArgumentError(f"pairings of {p.m} and {q.m} points")
    config = config.for_dimension(n)
    k = p.k
    p_blocks = [p.block_of(s) for s in range(1, p.m + 1)]
    q_blocks = [q.block_of(s) for s in range(1, q.m + 1)]

    def draw(rng, size):
        x = sample_sphere_batch(n, size * k, rng).reshape(size, k, n)
        y = sample_sphere_batch(n, size * k, rng).reshape(size, k, n)
        dots = np.einsum("bin,bjn->bij", x, y)
        return np.prod(dots[:, p_blocks, q_blocks], axis=1)

    return _scalar_estimate(config, draw)


@dataclass(frozen=True)
class SquaredNormCheck:
    """Monte Carlo E(<x,y>^m) against the exact squared norm of E(x^{(x)m})."""

    n: int
    m: int
    lhs: Estimate
    rhs: Fraction

    @property
    def agrees(self) -> bool:
        return self.lhs.agrees(self.rhs)


def estimate_lemma3(n: int, m: int, config: SamplerConfig) -> SquaredNormCheck:
    lhs = estimate_dot_moment(n, m, config)
    if m % 2:
        rhs = Fraction(0)
    else:
        expectation = veronese_expectation(m, n)
        rhs = combination_inner(expectation, expectation, n)
    return SquaredNormCheck(n=n, m=m, lhs=lhs, rhs=rhs)
