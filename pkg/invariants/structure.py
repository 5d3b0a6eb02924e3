"""Relations and structure results for the standard invariants.

Covers the alternating-sum relations that appear once k > n, greedy basis
extraction, the basis row-sum identity, the Kronecker row profile of the
Gram matrix and orthogonal projection onto the invariant subspace.
"""
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from combinat.pairings import Pairing, enumerate_pairings
from combinat.partitions import join_size
from combinat.permutations import apply_permutation, permutation_sign, permutations_of
from common.exceptions import ArgumentError, InconsistentSystemError
from common.limits import check_pairing_k
from invariants.combinations import (
    InvariantCombination,
    average_invariant,
    evaluate_combination_exact,
)
from invariants.gram import gram_matrix
from invariants.linalg import IncrementalSpan, bareiss_rank, solve_consistent
from moments.sphere import mu
from tensors.dense import DenseTensor, standard_invariant_dense

logger = logging.getLogger(__name__)


def sft_relation(k: int, sigma_subset: Optional[Sequence[int]] = None) -> InvariantCombination:
    """Sum of sign(sigma) I(sigma P_0) over the permutations sigma of ``sigma_subset``.

    ``sigma_subset`` defaults to the even positions 2, 4, ..., 2k.
    """
    if k < 2:
        raise ArgumentError(f"relations need k >= 2, got {k}")
    check_pairing_k(k)
    m = 2 * k
    if sigma_subset is None:
        positions = list(range(2, m + 1, 2))
    else:
        positions = sorted(sigma_subset)
        if len(set(positions)) != len(positions) or len(positions) < 2:
            raise ArgumentError(f"need at least two distinct positions, got {sigma_subset}")
        if positions[0] < 1 or positions[-1] > m:
            raise ArgumentError(f"positions {sigma_subset} are outside 1..{m}")
    p0 = Pairing.standard(k)
    terms = {}
    for sigma in permutations_of(positions, m):
        image = apply_permutation(sigma, p0)
        terms[image] = terms.get(image, 0) + permutation_sign(sigma)
    return InvariantCombination(m, terms)


def extract_basis(k: int, n: int) -> List[Pairing]:
    """Pairings whose invariants form a basis of the order-2k invariants in R^n.

    Walks the canonical pairing order and keeps each I(P) that is outside the
    span of those already kept, using an exact rank test on the 0/1 entries.
    """
    if n < 1:
        raise ArgumentError(f"dimension must be positive, got n={n}")
    span = IncrementalSpan()
    basis = []
    for pairing in enumerate_pairings(k):
        pattern = standard_invariant_dense(pairing, n).flat.astype(np.int64)
        if span.add(pattern.tolist()):
            basis.append(pairing)
    logger.info("Extracted %s basis invariants for k=%s, n=%s", len(basis), k, n)
    return basis


@dataclass(frozen=True)
class BasisIdentity:
    k: int
    n: int
    basis: Tuple[Pairing, ...]
    row_sums: Tuple[Fraction, ...]
    mu: Fraction
    residual: Fraction

    @property
    def residual_float(self) -> float:
        return float(self.residual)

    @property
    def holds(self) -> bool:
        return self.residual == 0


def corollary1_identity(k: int, n: int) -> BasisIdentity:
    """Check sum_i s_i I(P_i) = mu_{k,n} A_m over the extracted basis.

    s is the vector of row sums of the inverse basis Gram matrix, found by
    solving G_0 s = 1 exactly at dimension n.
    """
    basis = extract_basis(k, n)
    gram = [[n ** join_size(p, q) for q in basis] for p in basis]
    if bareiss_rank(gram) != len(basis):
        raise InconsistentSystemError(
            f"Gram matrix of the extracted basis is singular for k={k}, n={n}"
        )
    row_sums = solve_consistent(gram, [1] * len(basis))
    lhs = InvariantCombination(2 * k, dict(zip(basis, row_sums)))
    target = average_invariant(2 * k).scaled(mu(k, n))
    difference, denominator = evaluate_combination_exact(
        lhs + target.scaled(-1), n
    )
    residual = Fraction(max((abs(v) for v in difference.flat), default=0), denominator)
    return BasisIdentity(
        k=k,
        n=n,
        basis=tuple(basis),
        row_sums=tuple(row_sums),
        mu=mu(k, n),
        residual=residual,
    )


@dataclass(frozen=True)
class KroneckerRowCheck:
    k: int
    row_profile: Tuple[Tuple[int, int], ...]
    rows: Tuple[bool, ...]

    @property
    def passed(self) -> bool:
        return all(self.rows)


def kronecker_exponents(k: int) -> np.ndarray:
    """Exponents of n in M_1 (x) M_3 (x) ... (x) M_{2k-1}.

    M_t is t x t with n on the diagonal and 1 elsewhere, so every entry of the
    Kronecker product is n to the number of factors whose diagonal was hit.
    """
    exponents = np.zeros((1, 1), dtype=np.int64)
    for t in range(1, 2 * k, 2):
        factor = np.eye(t, dtype=np.int64)
        exponents = (exponents[:, None, :, None] + factor[None, :, None, :]).reshape(
            exponents.shape[0] * t, exponents.shape[1] * t
        )
    return exponents


def corollary2_check(k: int) -> KroneckerRowCheck:
    """Compare each Gram row, as a multiset, with the rows of the Kronecker product."""
    gram = gram_matrix(k)
    kronecker = kronecker_exponents(k)
    reference = Counter(int(e) for e in kronecker[0])
    kronecker_uniform = all(
        Counter(int(e) for e in row) == reference for row in kronecker
    )
    rows = tuple(
        kronecker_uniform and Counter(int(e) for e in row) == reference
        for row in gram.exponents
    )
    logger.info("Kronecker row check for k=%s: %s/%s rows match", k, sum(rows), len(rows))
    return KroneckerRowCheck(
        k=k, row_profile=tuple(sorted(reference.items(), reverse=True)), rows=rows
    )


@dataclass(frozen=True, eq=False)
class Projection:
    basis: Tuple[Pairing, ...]
    coefficients: np.ndarray
    tensor: DenseTensor


def project_onto_invariants(t: DenseTensor) -> Projection:
    """Orthogonal projection of a dense tensor onto the O(n)-invariant subspace.

    Solves the normal equations over the extracted basis in floating point.
    """
    if t.m % 2:
        return Projection(basis=(), coefficients=np.zeros(0), tensor=DenseTensor.zeros(t.n, t.m))
    basis = extract_basis(t.m // 2, t.n)
    dense = [standard_invariant_dense(p, t.n) for p in basis]
    gram = np.array(
        [[float(t.n ** join_size(p, q)) for q in basis] for p in basis]
    )
    rhs = np.array([float(np.dot(d.flat, t.flat)) for d in dense])
    coefficients = np.linalg.solve(gram, rhs)
    entries = sum(c * d.entries for c, d in zip(coefficients, dense))
    return Projection(
        basis=tuple(basis),
        coefficients=coefficients,
        tensor=DenseTensor(t.n, t.m, entries),
    )
