import collections
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Iterator, Optional, Sequence, Tuple, Union

from common.exceptions import ArgumentError


def _canonical_blocks(blocks: Iterable[Iterable[int]]) -> Tuple[Tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(block)) for block in blocks))


@dataclass(frozen=True)
class SetPartition:
    """A partition of {1, ..., m} into nonempty blocks.

    Blocks are stored canonically: each block sorted, blocks ordered by their
    least element.
    """

    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = _canonical_blocks(self.blocks)
        if any(len(block) == 0 for block in blocks):
            raise ArgumentError("partition blocks must be nonempty")
        elements = [element for block in blocks for element in block]
        if sorted(elements) != list(range(1, len(elements) + 1)):
            raise ArgumentError(
                f"blocks {blocks} are not a partition of 1..{len(elements)}"
            )
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "SetPartition":
        """Group positions 1..m whose labels are equal."""
        grouped: Dict[Hashable, list] = {}
        for position, label in enumerate(labels, start=1):
            grouped.setdefault(label, []).append(position)
        return cls(tuple(tuple(block) for block in grouped.values()))

    @classmethod
    def single_block(cls, m: int) -> "SetPartition":
        return cls((tuple(range(1, m + 1)),))

    @property
    def m(self) -> int:
        return sum(len(block) for block in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sizes(self) -> Tuple[int, ...]:
        return tuple(len(block) for block in self.blocks)

    def block_index(self) -> Dict[int, int]:
        """Map each position to the index of its block."""
        return {
            element: index
            for index, block in enumerate(self.blocks)
            for element in block
        }

    def to_json(self):
        return [list(block) for block in self.blocks]

    def __str__(self) -> str:
        return "|".join(",".join(str(e) for e in block) for block in self.blocks)


class DisjointSet:
    """Union-find with path compression and union by rank."""

    def __init__(self, elements: Iterable[int] = ()):
        self.parent = {}
        self.rank = {}
        for element in elements:
            self.make_set(element)

    def make_set(self, e: int):
        if e in self.parent:
            return
        self.parent[e] = e
        self.rank[e] = 0

    def find(self, e: int) -> int:
        self.make_set(e)
        root = e
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[e] != root:
            self.parent[e], e = root, self.parent[e]
        return root

    def union(self, x: int, y: int):
        x_root = self.find(x)
        y_root = self.find(y)
        if x_root == y_root:
            return
        if self.rank[x_root] < self.rank[y_root]:
            x_root, y_root = y_root, x_root
        self.parent[y_root] = x_root
        if self.rank[x_root] == self.rank[y_root]:
            self.rank[x_root] += 1

    def sets(self) -> Tuple[Tuple[int, ...], ...]:
        groups = collections.defaultdict(list)
        for e in self.parent:
            groups[self.find(e)].append(e)
        return _canonical_blocks(groups.values())


def as_partition(value: Union[SetPartition, "Pairing"]) -> SetPartition:
    if isinstance(value, SetPartition):
        return value
    to_partition = getattr(value, "to_partition", None)
    if to_partition is None:
        raise ArgumentError(f"cannot treat {value!r} as a set partition")
    return to_partition()


def join(p, q) -> SetPartition:
    """Least upper bound of two partitions of the same set.

    Pairings are accepted and treated as partitions into two-element blocks.
    """
    p, q = as_partition(p), as_partition(q)
    if p.m != q.m:
        raise ArgumentError(
            f"cannot join partitions of different sets (m={p.m} and m={q.m})"
        )
    forest = DisjointSet(range(1, p.m + 1))
    for block in p.blocks + q.blocks:
        first = block[0]
        for element in block[1:]:
            forest.union(first, element)
    return SetPartition(forest.sets())


def join_size(p, q) -> int:
    """Number of blocks of ``join(p, q)``, without building the partition."""
    p_blocks = p.blocks if isinstance(p, SetPartition) else p.pairs
    q_blocks = q.blocks if isinstance(q, SetPartition) else q.pairs
    m = sum(len(block) for block in p_blocks)
    if m != sum(len(block) for block in q_blocks):
        raise ArgumentError("cannot join partitions of different sets")
    forest = DisjointSet(range(1, m + 1))
    for block in p_blocks + q_blocks:
        for element in block[1:]:
            forest.union(block[0], element)
    return len({forest.find(e) for e in range(1, m + 1)})


def restricted_growth_strings(
    m: int, max_blocks: Optional[int] = None
) -> Iterator[Tuple[int, ...]]:
    """Label sequences a_1..a_m with a_1 = 1 and a_s <= 1 + max(a_1..a_{s-1}).

    Each set partition of 1..m into at most ``max_blocks`` blocks appears
    exactly once, labelled by block order of first occurrence.
    """
    if m < 1:
        raise ArgumentError(f"need at least one position, got m={m}")
    limit = m if max_blocks is None else max_blocks
    labels = [1] * m

    def extend(position: int, used: int):
        if position == m:
            yield tuple(labels)
            return
        for label in range(1, min(used + 1, limit) + 1):
            labels[position] = label
            yield from extend(position + 1, max(used, label))

    yield from extend(1, 1)


def enumerate_set_partitions(m: int, max_blocks: Optional[int] = None) -> Iterator[SetPartition]:
    for labels in restricted_growth_strings(m, max_blocks):
        yield SetPartition.from_labels(labels)
