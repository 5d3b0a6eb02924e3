import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

import numpy as np

from combinat.pairings import Pairing, enumerate_pairings
from combinat.partitions import join_size
from common.exceptions import ArgumentError
from common.limits import check_pairing_k
from invariants.linalg import bareiss_rank
from invariants.polynomials import NPolynomial

logger = logging.getLogger(__name__)


def gram_entry(p: Pairing, q: Pairing) -> NPolynomial:
    """<I(P), I(Q)> = n^|P v Q|."""
    if p.m != q.m:
        raise ArgumentError(f"pairings of {p.m} and {q.m} points have no Gram entry")
    return NPolynomial.monomial(join_size(p, q))


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Gram matrix of the standard invariants of order 2k, symbolic in n.

    Every entry is a pure power of n, so only the exponents are stored; rows
    and columns follow ``ordering`` (the canonical pairing order).
    """

    k: int
    ordering: Tuple[Pairing, ...]
    exponents: np.ndarray

    @property
    def size(self) -> int:
        return len(self.ordering)

    def entry(self, i: int, j: int) -> NPolynomial:
        return NPolynomial.monomial(int(self.exponents[i, j]))

    @property
    def entries(self) -> List[List[NPolynomial]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def row_profile(self, i: int) -> Dict[int, int]:
        """How many entries of row i equal n^l, keyed by l."""
        return dict(sorted(Counter(int(e) for e in self.exponents[i]).items(), reverse=True))

    def row_sum(self, i: int) -> NPolynomial:
        return NPolynomial(self.row_profile(i))

    def evaluate(self, n: int) -> List[List[int]]:
        return [[n ** int(e) for e in row] for row in self.exponents]

    def entry_strings(self, n: Optional[int] = None) -> List[List[str]]:
        """Entries as "n^l" strings, or as integer strings once evaluated at n."""
        if n is None:
            return [[f"n^{int(e)}" for e in row] for row in self.exponents]
        return [[str(value) for value in row] for row in self.evaluate(n)]

    def to_json(self, n: Optional[int] = None):
        return {
            "k": self.k,
            "ordering": [p.to_json() for p in self.ordering],
            "entries": self.entry_strings(n),
        }


@lru_cache(maxsize=None)
def _build(k: int) -> GramMatrix:
    ordering = tuple(enumerate_pairings(k))
    size = len(ordering)
    exponents = np.zeros((size, size), dtype=np.int64)
    for i, p in enumerate(ordering):
        exponents[i, i] = k
        for j in range(i + 1, size):
            exponents[i, j] = exponents[j, i] = join_size(p, ordering[j])
    exponents.setflags(write=False)
    logger.info("Built %sx%s Gram matrix for k=%s", size, size, k)
    return GramMatrix(k=k, ordering=ordering, exponents=exponents)


def gram_matrix(k: int) -> GramMatrix:
    if k < 1:
        raise ArgumentError(f"k must be a positive integer, got {k}")
    check_pairing_k(k)
    return _build(k)


def gram_row_sum(k: int) -> NPolynomial:
    """The common row sum of the Gram matrix, checked across every row."""
    gram = gram_matrix(k)
    first = gram.row_sum(0)
    for i in range(1, gram.size):
        row_sum = gram.row_sum(i)
        if row_sum != first:
            raise AssertionError(
                f"Gram rows 0 and {i} sum to {first} and {row_sum}; "
                f"pairing enumeration is broken for k={k}"
            )
    return first


def gram_row_profile(k: int) -> Dict[int, int]:
    """Counts of n^l in every row (the same for all rows), keyed by l."""
    return gram_row_sum(k).coefficients


def gram_average(k: int, n: int) -> Fraction:
    gram = gram_matrix(k)
    total = sum(sum(row) for row in gram.evaluate(n))
    return Fraction(total, gram.size**2)


def gram_rank(k: int, n: int) -> int:
    """Rank over the rationals of the Gram matrix evaluated at n."""
    return bareiss_rank(gram_matrix(k).evaluate(n))
