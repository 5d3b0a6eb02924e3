import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, List, Sequence, Tuple

from combinat.partitions import SetPartition
from common.exceptions import ArgumentError
from common.limits import check_pairing_k

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def double_factorial(k: int) -> int:
    """(2k - 1)!! = 1 * 3 * ... * (2k - 1), with the empty product for k = 0."""
    if k < 0:
        raise ArgumentError(f"double factorial needs k >= 0, got {k}")
    result = 1
    for t in range(1, 2 * k, 2):
        result *= t
    return result


@dataclass(frozen=True, order=True)
class Pairing:
    """A perfect matching of {1, ..., 2k} in canonical form.

    Each pair is stored as (a, b) with a < b and the pairs are sorted, so two
    pairings compare equal exactly when they match the same positions, and
    ordering pairings compares their canonical pair lists lexicographically.
    """

    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = tuple(sorted(tuple(sorted(pair)) for pair in self.pairs))
        if any(len(pair) != 2 for pair in pairs):
            raise ArgumentError(f"every block of a pairing has two elements: {pairs}")
        elements = sorted(e for pair in pairs for e in pair)
        if elements != list(range(1, len(elements) + 1)):
            raise ArgumentError(f"{pairs} is not a pairing of 1..{len(elements)}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_json(cls, data: Iterable[Sequence[int]]) -> "Pairing":
        return cls(tuple(tuple(int(e) for e in pair) for pair in data))

    @classmethod
    def standard(cls, k: int) -> "Pairing":
        """P_0 = (1,2)(3,4)...(2k-1,2k)."""
        return cls(tuple((2 * t + 1, 2 * t + 2) for t in range(k)))

    @property
    def m(self) -> int:
        return 2 * len(self.pairs)

    @property
    def k(self) -> int:
        return len(self.pairs)

    def block_of(self, position: int) -> int:
        """Index of the pair that contains ``position``."""
        for index, pair in enumerate(self.pairs):
            if position in pair:
                return index
        raise ArgumentError(f"position {position} is outside 1..{self.m}")

    def to_partition(self) -> SetPartition:
        return SetPartition(self.pairs)

    def to_json(self) -> List[List[int]]:
        return [list(pair) for pair in self.pairs]

    def __str__(self) -> str:
        return "".join(f"({a},{b})" for a, b in self.pairs)


def pairings_of(positions: Sequence[int]) -> Iterator[Tuple[Pair, ...]]:
    """Yield every pairing of ``positions`` as a tuple of pairs.

    The smallest free position is matched with each larger free position in
    turn, which produces the canonical pair lists in lexicographic order when
    ``positions`` is sorted.
    """
    items = sorted(positions)
    if not items:
        yield ()
        return
    if len(items) % 2:
        raise ArgumentError(f"cannot pair an odd number of positions: {items}")
    first = items[0]
    rest = items[1:]
    for i, partner in enumerate(rest):
        for tail in pairings_of(rest[:i] + rest[i + 1 :]):
            yield ((first, partner),) + tail


@lru_cache(maxsize=None)
def _enumerate(k: int) -> Tuple[Pairing, ...]:
    pairings = tuple(Pairing(pairs) for pairs in pairings_of(range(1, 2 * k + 1)))
    logger.info("Enumerated %s pairings for k=%s", len(pairings), k)
    return pairings


def enumerate_pairings(k: int) -> List[Pairing]:
    """All (2k-1)!! pairings of {1, ..., 2k} in canonical order.

    This order indexes the rows and columns of every Gram matrix.
    """
    if k < 1:
        raise ArgumentError(f"k must be a positive integer, got {k}")
    check_pairing_k(k)
    return list(_enumerate(k))

