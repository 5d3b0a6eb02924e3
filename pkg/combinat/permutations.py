from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence, Tuple

from combinat.pairings import Pairing
from combinat.partitions import as_partition
from common.exceptions import ArgumentError


@dataclass(frozen=True)
class IndexPermutation:
    """A bijection of {1, ..., m}; ``images[t - 1]`` is sigma(t)."""

    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ArgumentError(f"{images} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, m: int) -> "IndexPermutation":
        return cls(tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, a: int, b: int) -> "IndexPermutation":
        images = list(range(1, m + 1))
        images[a - 1], images[b - 1] = b, a
        return cls(tuple(images))

    @classmethod
    def from_cycle(cls, m: int, cycle: Sequence[int]) -> "IndexPermutation":
        images = list(range(1, m + 1))
        for current, following in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            images[current - 1] = following
        return cls(tuple(images))

    @property
    def m(self) -> int:
        return len(self.images)

    def __call__(self, t: int) -> int:
        return self.images[t - 1]

    def compose(self, other: "IndexPermutation") -> "IndexPermutation":
        """self o other, i.e. t -> self(other(t))."""
        if self.m != other.m:
            raise ArgumentError(f"cannot compose permutations of {self.m} and {other.m}")
        return IndexPermutation(tuple(self(other(t)) for t in range(1, self.m + 1)))

    def inverse(self) -> "IndexPermutation":
        images = [0] * self.m
        for t, image in enumerate(self.images, start=1):
            images[image - 1] = t
        return IndexPermutation(tuple(images))

    def cycle_count(self) -> int:
        seen = set()
        cycles = 0
        for start in range(1, self.m + 1):
            if start in seen:
                continue
            cycles += 1
            t = start
            while t not in seen:
                seen.add(t)
                t = self(t)
        return cycles


def apply_permutation(sigma: IndexPermutation, p: Pairing) -> Pairing:
    """Relabel the positions of ``p`` through ``sigma``."""
    if sigma.m != p.m:
        raise ArgumentError(
            f"permutation of {sigma.m} points cannot act on a pairing of {p.m}"
        )
    return Pairing(tuple((sigma(a), sigma(b)) for a, b in p.pairs))


def permutation_sign(sigma: IndexPermutation) -> int:
    return -1 if (sigma.m - sigma.cycle_count()) % 2 else 1


def refines(q: Pairing, p) -> bool:
    """True when every pair of ``q`` sits inside one block of ``p``."""
    p = as_partition(p)
    if q.m != p.m:
        raise ArgumentError(f"pairing of {q.m} points vs partition of {p.m}")
    block_of = p.block_index()
    return all(block_of[a] == block_of[b] for a, b in q.pairs)


def permutations_of(positions: Sequence[int], m: int) -> Iterable[IndexPermutation]:
    """Every permutation of {1..m} that moves only ``positions`` among themselves."""
    positions = list(positions)
    for arrangement in permutations(positions):
        images = list(range(1, m + 1))
        for source, target in zip(positions, arrangement):
            images[source - 1] = target
        yield IndexPermutation(tuple(images))

