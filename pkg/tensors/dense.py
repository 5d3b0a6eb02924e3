"""Dense order-m tensors over R^n.

These are the brute-force counterparts of the symbolic layer: every claim
about standard invariants, placed tensors and Veronese powers can be checked
entry by entry here at small n and m. Entries are float64 even when the
values are integers; integer-valued results stay far below 2**53 and are
compared exactly.
"""
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from combinat.pairings import Pairing
from combinat.partitions import SetPartition
from common.exceptions import ArgumentError
from common.limits import check_dense_entries

UNIT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class DenseTensor:
    """An order-m tensor over an n-dimensional space, indexed (i_1, ..., i_m).

    ``entries`` has shape (n,) * m; flattening it row-major puts i_1 slowest.
    """

    n: int
    m: int
    entries: np.ndarray

    def __post_init__(self):
        check_dense_entries(self.n, self.m)
        entries = np.array(self.entries, dtype=np.float64)
        if entries.shape != (self.n,) * self.m:
            raise ArgumentError(
                f"entries of shape {entries.shape} do not fit n={self.n}, m={self.m}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def zeros(cls, n: int, m: int) -> "DenseTensor":
        check_dense_entries(n, m)
        return cls(n, m, np.zeros((n,) * m))

    @property
    def flat(self) -> np.ndarray:
        return self.entries.reshape(-1)

    def is_zero(self) -> bool:
        return not np.any(self.entries)

    def max_abs_difference(self, other: "DenseTensor") -> float:
        _check_same_shape(self, other)
        if self.flat.size == 0:
            return 0.0
        return float(np.max(np.abs(self.entries - other.entries)))

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        _check_same_shape(self, other)
        return DenseTensor(self.n, self.m, self.entries + other.entries)

    def scaled(self, factor: float) -> "DenseTensor":
        return DenseTensor(self.n, self.m, self.entries * float(factor))

    def to_json(self):
        return {"n": self.n, "m": self.m, "entries": self.flat.tolist()}


def _check_same_shape(t1: DenseTensor, t2: DenseTensor):
    if (t1.n, t1.m) != (t2.n, t2.m):
        raise ArgumentError(
            f"tensor shapes differ: n={t1.n}, m={t1.m} vs n={t2.n}, m={t2.m}"
        )


def as_vector(coords: Sequence[float]) -> np.ndarray:
    vector = np.asarray(coords, dtype=np.float64)
    if vector.ndim != 1 or vector.size == 0:
        raise ArgumentError(f"expected a non-empty vector, got shape {vector.shape}")
    return vector


def standard_invariant_dense(p: Pairing, n: int) -> DenseTensor:
    """I(P): 1 where the index tuple is constant on every pair of ``p``, else 0."""
    if n < 1:
        raise ArgumentError(f"dimension must be positive, got n={n}")
    check_dense_entries(n, p.m)
    identity = np.eye(n)
    operands = []
    for a, b in p.pairs:
        operands.extend([identity, [a - 1, b - 1]])
    entries = np.einsum(*operands, list(range(p.m)))
    return DenseTensor(n, p.m, entries)


def placed_tensor(vectors: Sequence[Sequence[float]], partition: SetPartition) -> DenseTensor:
    """The tensor carrying ``vectors[t]`` at every position of block t."""
    vectors = [as_vector(v) for v in vectors]
    if len(vectors) != len(partition):
        raise ArgumentError(
            f"{len(vectors)} vectors given for a partition with {len(partition)} blocks"
        )
    n = vectors[0].size
    if any(v.size != n for v in vectors):
        raise ArgumentError("all placed vectors must share one dimension")
    check_dense_entries(n, partition.m)
    block_of = partition.block_index()
    factors = [vectors[block_of[s]] for s in range(1, partition.m + 1)]
    return DenseTensor(n, partition.m, reduce(np.multiply.outer, factors))


def veronese(x: Sequence[float], m: int) -> DenseTensor:
    """x (x) x (x) ... (x) x, m times, for a unit vector x."""
    x = as_vector(x)
    norm = float(np.linalg.norm(x))
    if abs(norm - 1.0) > UNIT_TOLERANCE:
        raise ArgumentError(f"Veronese tensors need a unit vector, got norm {norm!r}")
    return placed_tensor([x], SetPartition.single_block(m))


def inner(t1: DenseTensor, t2: DenseTensor) -> float:
    _check_same_shape(t1, t2)
    return float(np.dot(t1.flat, t2.flat))


def apply_orthogonal(q: np.ndarray, t: DenseTensor) -> DenseTensor:
    """Apply Q (x) ... (x) Q to ``t``, contracting every index with Q."""
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (t.n, t.n):
        raise ArgumentError(f"matrix of shape {q.shape} cannot act on n={t.n}")
    result = t.entries
    for axis in range(t.m):
        result = np.moveaxis(np.tensordot(q, result, axes=([1], [axis])), 0, axis)
    return DenseTensor(t.n, t.m, result)
