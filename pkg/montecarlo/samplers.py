"""Haar-orthogonal and uniform-sphere samplers.

All randomness comes from numpy's counter-based Philox bit generator, so a
seed fixes every draw. Independent worker streams are spawned from one
``SeedSequence``.
"""
import logging
from typing import List

import numpy as np

from common.exceptions import ArgumentError

logger = logging.getLogger(__name__)

# |R_ii| below this is treated as a numerically rank-deficient Gaussian draw.
DEGENERATE_PIVOT = 1e-12


def make_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def spawn_generators(seed: int, workers: int) -> List[np.random.Generator]:
    """One independent stream per worker, fixed by (seed, worker index)."""
    if workers < 1:
        raise ArgumentError(f"need at least one worker, got {workers}")
    return [
        np.random.Generator(np.random.Philox(child))
        for child in np.random.SeedSequence(seed).spawn(workers)
    ]


def _check_dimension(n: int):
    if n < 1:
        raise ArgumentError(f"dimension must be positive, got n={n}")


def sample_haar_batch(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` Haar-distributed orthogonal n x n matrices, shape (size, n, n).

    QR of a Gaussian matrix, with each column of Q multiplied by the sign of
    the matching diagonal entry of R so that R has a positive diagonal.
    """
    _check_dimension(n)
    gaussian = rng.standard_normal((size, n, n))
    q, r = np.linalg.qr(gaussian)
    diagonal = np.diagonal(r, axis1=-2, axis2=-1)
    degenerate = np.abs(diagonal).min(axis=-1) < DEGENERATE_PIVOT
    while np.any(degenerate):
        count = int(degenerate.sum())
        logger.warning("Re-drawing %s rank-deficient Gaussian matrices", count)
        q_new, r_new = np.linalg.qr(rng.standard_normal((count, n, n)))
        q[degenerate], r[degenerate] = q_new, r_new
        diagonal = np.diagonal(r, axis1=-2, axis2=-1)
        degenerate = np.abs(diagonal).min(axis=-1) < DEGENERATE_PIVOT
    return q * np.sign(diagonal)[:, None, :]


def sample_haar_orthogonal(n: int, rng: np.random.Generator) -> np.ndarray:
    return sample_haar_batch(n, 1, rng)[0]


def sample_sphere_batch(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent uniform unit vectors in R^n, shape (size, n)."""
    _check_dimension(n)
    gaussian = rng.standard_normal((size, n))
    norms = np.linalg.norm(gaussian, axis=-1)
    while np.any(norms == 0.0):
        zero = norms == 0.0
        gaussian[zero] = rng.standard_normal((int(zero.sum()), n))
        norms = np.linalg.norm(gaussian, axis=-1)
    return gaussian / norms[:, None]


def sample_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    return sample_sphere_batch(n, 1, rng)[0]
