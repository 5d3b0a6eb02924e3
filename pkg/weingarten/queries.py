import re
from dataclasses import dataclass
from typing import Sequence, Tuple

from django.core.exceptions import ValidationError

from combinat.pairings import Pairing
from combinat.partitions import SetPartition
from common.exceptions import ArgumentError

QUERY_PATTERN = re.compile(r"^\d+,\d+(;\d+,\d+)*$")


def validate_query_string(value: str):
    if not QUERY_PATTERN.match(value):
        raise ValidationError(
            'Invalid query format. Expected semicolon-separated "i,j" pairs, '
            'for example: "1,1;1,2;2,2"'
        )


@dataclass(frozen=True)
class MomentQuery:
    """E(x_{i1 j1} ... x_{im jm}) for a Haar-random matrix in O(n); 1-based."""

    factors: Tuple[Tuple[int, int], ...]
    n: int

    def __post_init__(self):
        factors = tuple((int(i), int(j)) for i, j in self.factors)
        if not factors:
            raise ArgumentError("a moment query needs at least one factor")
        if self.n < 1:
            raise ArgumentError(f"dimension must be positive, got n={self.n}")
        for i, j in factors:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ArgumentError(f"entry ({i},{j}) is outside a {self.n}x{self.n} matrix")
        object.__setattr__(self, "factors", factors)

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def rows(self) -> Tuple[int, ...]:
        return tuple(i for i, _ in self.factors)

    @property
    def cols(self) -> Tuple[int, ...]:
        return tuple(j for _, j in self.factors)

    def transposed(self) -> "MomentQuery":
        return MomentQuery(tuple((j, i) for i, j in self.factors), self.n)

    def to_json(self):
        return [list(factor) for factor in self.factors]

    def __str__(self) -> str:
        return ";".join(f"{i},{j}" for i, j in self.factors)


def parse_query(text: str, n: int) -> MomentQuery:
    """Read the "i,j;i,j;..." grammar into a query on O(n)."""
    compact = re.sub(r"\s+", "", text or "")
    validate_query_string(compact)
    factors = tuple(
        tuple(int(part) for part in factor.split(",")) for factor in compact.split(";")
    )
    return MomentQuery(factors, n)


@dataclass(frozen=True)
class GroupedQuery:
    """Positions grouped by row index, blocks in order of first occurrence.

    ``sigma_blocks[t]`` holds the column indices of block t in position order;
    concatenated they give the column sequence reordered by row blocks.
    """

    first_partition: SetPartition
    row_indices: Tuple[int, ...]
    sigma_blocks: Tuple[Tuple[int, ...], ...]

    @property
    def sigma(self) -> Tuple[int, ...]:
        return tuple(j for block in self.sigma_blocks for j in block)


def group_by_first_index(q: MomentQuery) -> GroupedQuery:
    partition = SetPartition.from_labels(q.rows)
    return GroupedQuery(
        first_partition=partition,
        row_indices=tuple(q.rows[block[0] - 1] for block in partition.blocks),
        sigma_blocks=tuple(
            tuple(q.cols[position - 1] for position in block)
            for block in partition.blocks
        ),
    )


def delta(p: Pairing, seq: Sequence[int]) -> int:
    """1 when ``seq`` takes equal values on both ends of every pair, else 0."""
    if len(seq) != p.m:
        raise ArgumentError(f"sequence of length {len(seq)} for a pairing of {p.m} points")
    return int(all(seq[a - 1] == seq[b - 1] for a, b in p.pairs))
