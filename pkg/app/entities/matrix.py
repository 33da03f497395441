"""
Matrix entity: an immutable grid of exact scalars.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

from app.core.exceptions import DimensionMismatchError
from app.core.linear_algebra import (
    Vector,
    det_and_nonsingular,
    format_scalar,
    hnf,
    inverse,
    matmul,
    to_scalar,
    transpose,
)


@dataclass(frozen=True)
class Matrix:
    """Row-major matrix of Fractions.

    Attributes:
        rows: number of rows
        cols: number of columns
        entries: ``rows`` tuples of ``cols`` Fractions
    """
    rows: int
    cols: int
    entries: Tuple[Vector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionMismatchError("entry grid does not match the declared shape",
                                         expected=(self.rows, self.cols))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "Matrix":
        entries = tuple(tuple(to_scalar(x) for x in row) for row in rows)
        ncols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != ncols:
                raise DimensionMismatchError("ragged matrix rows", expected=ncols, actual=len(row))
        return cls(len(entries), ncols, entries)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls.from_rows([[0] * cols for _ in range(rows)])

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def apply(self, v: Sequence[Fraction]) -> Vector:
        """Matrix times column vector."""
        if len(v) != self.cols:
            raise DimensionMismatchError("vector length differs from column count",
                                         expected=self.cols, actual=len(v))
        return tuple(sum((a * b for a, b in zip(r, v) if a), Fraction(0)) for r in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix.from_rows(matmul(self, other))

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, transpose(self))

    def inverse(self) -> "Matrix":
        return Matrix.from_rows(inverse(self))

    def det(self) -> Fraction:
        return det_and_nonsingular(self)[0]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.entries for x in r)

    def hnf(self) -> "Matrix":
        """Row Hermite normal form; only defined for integer matrices."""
        if not self.is_integral():
            raise ValueError("hnf requires an integer matrix")
        return Matrix.from_rows(hnf([[int(x) for x in r] for r in self.entries]))

    def to_document(self) -> List[List[str]]:
        return [[format_scalar(x) for x in r] for r in self.entries]

    @classmethod
    def from_document(cls, doc: Sequence[Sequence[Any]]) -> "Matrix":
        return cls.from_rows(doc)
