"""Exact linear algebra over the integers and rationals.

Elimination is fraction-free (Bareiss): every intermediate entry is a minor
of the input, so integer matrices stay integral and each division is exact.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

import numpy as np

from common.exceptions import ArgumentError, InconsistentSystemError

logger = logging.getLogger(__name__)

Number = int | Fraction


def _integral_rows(rows: Sequence[Sequence[Number]]) -> List[List[int]]:
    """Scale each row by the lcm of its denominators."""
    integral = []
    for row in rows:
        values = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in values)) if values else 1
        integral.append([int(v * scale) for v in values])
    return integral


@dataclass
class Echelon:
    rows: List[List[int]]
    pivots: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def fraction_free_echelon(
    rows: Sequence[Sequence[Number]],
    column_order: Optional[Sequence[int]] = None,
    columns: Optional[int] = None,
) -> Echelon:
    """Row echelon form by Bareiss elimination.

    Pivot columns are searched in ``column_order`` (all columns, ascending, by
    default); only the first ``columns`` columns are eligible as pivots, which
    lets callers carry an augmented right-hand side along.
    """
    matrix = _integral_rows(rows)
    if not matrix:
        return Echelon(rows=[])
    width = len(matrix[0])
    if any(len(row) != width for row in matrix):
        raise ArgumentError("ragged matrix rows")
    eligible = width if columns is None else columns
    order = list(range(eligible)) if column_order is None else list(column_order)
    if sorted(order) != list(range(eligible)):
        raise ArgumentError(f"column order {order} is not a permutation of 0..{eligible - 1}")

    echelon = Echelon(rows=matrix)
    previous = 1
    row = 0
    height = len(matrix)
    for col in order:
        if row == height:
            break
        pivot_row = next((i for i in range(row, height) if matrix[i][col] != 0), None)
        if pivot_row is None:
            continue
        matrix[row], matrix[pivot_row] = matrix[pivot_row], matrix[row]
        pivot = matrix[row][col]
        for i in range(row + 1, height):
            factor = matrix[i][col]
            target = matrix[i]
            source = matrix[row]
            for j in range(width):
                value = pivot * target[j] - factor * source[j]
                quotient, remainder = divmod(value, previous)
                if remainder:
                    raise InconsistentSystemError("non-exact Bareiss division")
                target[j] = quotient
        previous = pivot
        echelon.pivots.append((row, col))
        row += 1
    logger.debug("Echelon form of %sx%s matrix has rank %s", height, width, echelon.rank)
    return echelon


def bareiss_rank(rows: Sequence[Sequence[Number]]) -> int:
    return fraction_free_echelon(rows).rank


def solve_consistent(
    matrix: Sequence[Sequence[Number]],
    rhs: Sequence[Number],
    column_order: Optional[Sequence[int]] = None,
) -> List[Fraction]:
    """A particular exact solution of ``matrix @ x = rhs``.

    Free variables are set to zero. Raises ``InconsistentSystemError`` when no
    solution exists.
    """
    if len(matrix) != len(rhs):
        raise ArgumentError(f"{len(matrix)} equations but {len(rhs)} right-hand sides")
    unknowns = len(matrix[0]) if matrix else 0
    augmented = [list(row) + [value] for row, value in zip(matrix, rhs)]
    echelon = fraction_free_echelon(augmented, column_order=column_order, columns=unknowns)
    rows = echelon.rows
    for r in range(echelon.rank, len(rows)):
        if rows[r][unknowns] != 0:
            raise InconsistentSystemError(
                f"system of {len(rows)} equations is inconsistent (rank {echelon.rank})"
            )
    solution = [Fraction(0)] * unknowns
    for r, col in reversed(echelon.pivots):
        row = rows[r]
        accumulated = Fraction(row[unknowns])
        for j in range(unknowns):
            if j != col and row[j]:
                accumulated -= row[j] * solution[j]
        solution[col] = accumulated / row[col]
    return solution


class IncrementalSpan:
    """Greedy exact independence test for integer vectors.

    Kept rows are in echelon form: each has a pivot entry at which every
    earlier kept row is zero.
    """

    def __init__(self):
        self._rows: List[Tuple[int, np.ndarray]] = []

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vector: Sequence[int]) -> np.ndarray:
        reduced = np.array([int(v) for v in vector], dtype=object)
        for pivot, row in self._rows:
            if reduced[pivot] != 0:
                reduced = row[pivot] * reduced - reduced[pivot] * row
                common = gcd(*(int(v) for v in reduced if v))
                if common > 1:
                    reduced = reduced // common
        return reduced

    def add(self, vector: Sequence[int]) -> bool:
        """Keep ``vector`` when it lies outside the current span."""
        reduced = self.reduce(vector)
        nonzero = np.flatnonzero(reduced != 0)
        if nonzero.size == 0:
            return False
        self._rows.append((int(nonzero[0]), reduced))
        return True
