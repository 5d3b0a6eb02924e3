"""Exact expectations of Veronese and generalized Veronese tensors."""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from combinat.pairings import (
    Pair,
    Pairing,
    double_factorial,
    enumerate_pairings,
    pairings_of,
)
from combinat.partitions import SetPartition, join_size
from common.exceptions import ArgumentError
from common.limits import check_combination_terms, check_pairing_k
from invariants.combinations import InvariantCombination, evaluate_combination_dense
from moments.sphere import mu, p_poly
from tensors.dense import DenseTensor

logger = logging.getLogger(__name__)


def veronese_expectation(m: int, n: int) -> InvariantCombination:
    """E(x^{(x)m}) for x uniform on the unit sphere of R^n.

    Zero for odd m; otherwise every pairing carries 1 / P(n, m/2).
    """
    if m < 1:
        raise ArgumentError(f"tensor order must be positive, got m={m}")
    if m % 2:
        return InvariantCombination.zero(m)
    k = m // 2
    weight = Fraction(1, p_poly(k)(n))
    return InvariantCombination(m, {p: weight for p in enumerate_pairings(k)})


@dataclass(frozen=True)
class ZeroExpectation:
    """The expectation of a generalized Veronese tensor with an odd block."""

    partition: SetPartition
    n: int
    scalar: Fraction = Fraction(0)

    def is_zero(self) -> bool:
        return True

    def as_combination(self) -> InvariantCombination:
        return InvariantCombination.zero(self.partition.m)

    def to_dense(self) -> DenseTensor:
        return DenseTensor.zeros(self.n, self.partition.m)


@dataclass(frozen=True)
class GeneralizedExpectation:
    """E(x_1(J_1) (x) ... (x) x_l(J_l)) for independent uniform unit vectors.

    ``block_pairings[i]`` lists the pairings of block J_i in its own
    positions; the expectation is ``scalar`` times the uniform average over
    one pairing per block, each placed at its block's positions.
    """

    partition: SetPartition
    n: int
    scalar: Fraction
    block_pairings: Tuple[Tuple[Tuple[Pair, ...], ...], ...]

    def is_zero(self) -> bool:
        return False

    @property
    def term_count(self) -> int:
        count = 1
        for pairings in self.block_pairings:
            count *= len(pairings)
        return count

    def as_combination(self) -> InvariantCombination:
        """Expand into standard invariants of the whole index set.

        Placing I(P_1), ..., I(P_l) into their blocks gives I(P_1 u ... u P_l).
        """
        weight = self.scalar / self.term_count
        terms = {}
        for choice in itertools.product(*self.block_pairings):
            combined = Pairing(tuple(pair for pairs in choice for pair in pairs))
            terms[combined] = terms.get(combined, 0) + weight
        return InvariantCombination(self.partition.m, terms)

    def to_dense(self) -> DenseTensor:
        return evaluate_combination_dense(self.as_combination(), self.n)


def generalized_expectation(partition: SetPartition, n: int):
    """Expectation of a generalized Veronese tensor over ``partition``.

    Returns a ``ZeroExpectation`` when some block has odd size.
    """
    if n < 1:
        raise ArgumentError(f"dimension must be positive, got n={n}")
    if any(size % 2 for size in partition.block_sizes()):
        return ZeroExpectation(partition=partition, n=n)
    scalar, term_count = Fraction(1), 1
    for size in partition.block_sizes():
        check_pairing_k(size // 2)
        scalar *= mu(size // 2, n)
        term_count *= double_factorial(size // 2)
    check_combination_terms(term_count)
    block_pairings = tuple(tuple(pairings_of(block)) for block in partition.blocks)
    expectation = GeneralizedExpectation(
        partition=partition, n=n, scalar=scalar, block_pairings=block_pairings
    )
    logger.debug(
        "Generalized expectation over %s: scalar %s, %s terms",
        partition,
        scalar,
        expectation.term_count,
    )
    return expectation


def pair_moment_cor3(p: Pairing, q: Pairing, n: int) -> Fraction:
    """E(<x(P), y(Q)>) = n^-(2k - |P v Q|) for independent placed unit vectors."""
    if p.m != q.m:
        raise ArgumentError(f"pairings of {p.m} and {q.m} points")
    return Fraction(1, n ** (p.m - join_size(p, q)))

