import json
import logging
from fractions import Fraction
from math import lcm
from typing import Dict, Iterator, Mapping, Tuple

import numpy as np

from combinat.pairings import Pairing, double_factorial, enumerate_pairings
from combinat.partitions import join_size
from common.exceptions import ArgumentError
from common.limits import check_dense_entries
from tensors.dense import DenseTensor, standard_invariant_dense

logger = logging.getLogger(__name__)


class InvariantCombination:
    """A formal linear combination of standard invariants I(P) of order m.

    Coefficients are exact rationals; zero coefficients are never stored.
    """

    __slots__ = ("order", "_terms")

    def __init__(self, order: int, terms: Mapping[Pairing, Fraction] = None):
        cleaned: Dict[Pairing, Fraction] = {}
        for pairing, coefficient in (terms or {}).items():
            if pairing.m != order:
                raise ArgumentError(
                    f"pairing {pairing} has order {pairing.m}, expected {order}"
                )
            coefficient = Fraction(coefficient)
            if coefficient:
                cleaned[pairing] = coefficient
        self.order = order
        self._terms = dict(sorted(cleaned.items()))

    @classmethod
    def zero(cls, order: int) -> "InvariantCombination":
        return cls(order)

    @classmethod
    def single(cls, pairing: Pairing, coefficient=1) -> "InvariantCombination":
        return cls(pairing.m, {pairing: coefficient})

    @property
    def terms(self) -> Dict[Pairing, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Pairing, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, pairing: Pairing) -> Fraction:
        return self._terms.get(pairing, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "InvariantCombination") -> "InvariantCombination":
        if self.order != other.order:
            raise ArgumentError(f"cannot add combinations of order {self.order} and {other.order}")
        total = dict(self._terms)
        for pairing, coefficient in other.items():
            total[pairing] = total.get(pairing, Fraction(0)) + coefficient
        return InvariantCombination(self.order, total)

    def scaled(self, factor) -> "InvariantCombination":
        factor = Fraction(factor)
        return InvariantCombination(
            self.order, {p: c * factor for p, c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, InvariantCombination):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.order, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{p}: {c}" for p, c in self._terms.items())
        return f"InvariantCombination(m={self.order}, {{{body}}})"

    def to_json(self) -> Dict[str, str]:
        return {
            json.dumps(p.to_json(), separators=(",", ":")): str(c)
            for p, c in self._terms.items()
        }


def average_invariant(m: int) -> InvariantCombination:
    """A_m, the uniform average of all standard invariants of order m."""
    if m % 2:
        return InvariantCombination.zero(m)
    k = m // 2
    weight = Fraction(1, double_factorial(k))
    return InvariantCombination(m, {p: weight for p in enumerate_pairings(k)})


def combination_inner(
    c1: InvariantCombination, c2: InvariantCombination, n: int
) -> Fraction:
    """Exact inner product at dimension n, using <I(P), I(Q)> = n^|P v Q|."""
    if c1.order != c2.order:
        raise ArgumentError(f"combinations of order {c1.order} and {c2.order}")
    total = Fraction(0)
    for p, a in c1.items():
        for q, b in c2.items():
            total += a * b * n ** join_size(p, q)
    return total


def evaluate_combination_dense(c: InvariantCombination, n: int) -> DenseTensor:
    """Sum of coefficient * I(P) as a dense tensor at dimension n."""
    check_dense_entries(n, c.order)
    entries = np.zeros((n,) * c.order)
    for pairing, coefficient in c.items():
        entries += float(coefficient) * standard_invariant_dense(pairing, n).entries
    logger.debug("Evaluated %s invariant terms at n=%s", len(c), n)
    return DenseTensor(n, c.order, entries)


def evaluate_combination_exact(c: InvariantCombination, n: int) -> Tuple[np.ndarray, int]:
    """The combination as an integer array together with its common denominator.

    ``array / denominator`` is the dense tensor without any rounding.
    """
    check_dense_entries(n, c.order)
    denominator = lcm(*(coefficient.denominator for _, coefficient in c.items()))
    entries = np.zeros((n,) * c.order, dtype=np.int64).astype(object)
    for pairing, coefficient in c.items():
        pattern = standard_invariant_dense(pairing, n).entries.astype(np.int64)
        entries = entries + int(coefficient * denominator) * pattern.astype(object)
    return entries, denominator

