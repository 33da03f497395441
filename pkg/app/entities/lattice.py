"""
Full-rank integral lattices in canonical Hermite normal form.

A lattice is stored as (1/denominator) · rowspan(basis) with ``basis`` in
row HNF and the gcd of all basis entries together with the denominator
equal to 1, so two lattices are equal exactly when their stored forms are.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod
from typing import Any, Dict, Optional, Sequence, Tuple

from app.core.exceptions import DimensionMismatchError, FixtureValidationError
from app.core.linear_algebra import (
    IntRow,
    Vector,
    common_denominator,
    format_scalar,
    hnf,
    to_scalar,
)


@dataclass(frozen=True)
class IntegralLattice:
    ambient_dim: int
    basis: Tuple[IntRow, ...]
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise FixtureValidationError("lattice denominator must be positive",
                                         identity="positive_denominator", denominator=self.denominator)
        if len(self.basis) != self.ambient_dim or any(len(r) != self.ambient_dim for r in self.basis):
            raise FixtureValidationError("lattice basis is not full rank",
                                         identity="full_rank", dim=self.ambient_dim, rank=len(self.basis))
        if hnf(self.basis) != self.basis:
            raise FixtureValidationError("lattice basis is not in Hermite normal form",
                                         identity="canonical_hnf")
        content = self.denominator
        for row in self.basis:
            for x in row:
                content = gcd(content, x)
        if content != 1:
            raise FixtureValidationError("lattice is not in lowest terms",
                                         identity="reduced_denominator", content=content)

    @classmethod
    def from_integer_rows(cls, rows: Sequence[Sequence[int]], denominator: int = 1,
                          dim: Optional[int] = None) -> "IntegralLattice":
        """Canonicalize (1/denominator)·rowspan(rows); raises if not full rank."""
        basis = hnf(rows)
        n = dim if dim is not None else (len(rows[0]) if rows else 0)
        if len(basis) != n:
            raise FixtureValidationError("generating vectors do not span a full-rank lattice",
                                         identity="full_rank", dim=n, rank=len(basis))
        content = denominator
        for row in basis:
            for x in row:
                content = gcd(content, x)
        if content > 1:
            basis = tuple(tuple(x // content for x in row) for row in basis)
            denominator //= content
        return cls(n, basis, denominator)

    @classmethod
    def from_rational_rows(cls, rows: Sequence[Sequence[Any]], dim: Optional[int] = None) -> "IntegralLattice":
        """Lattice spanned by rational vectors; denominators are cleared once globally."""
        values = [[to_scalar(x) for x in row] for row in rows]
        den = common_denominator(x for row in values for x in row)
        ints = [[int(x * den) for x in row] for row in values]
        return cls.from_integer_rows(ints, den, dim if dim is not None else (len(values[0]) if values else 0))

    @classmethod
    def standard(cls, n: int) -> "IntegralLattice":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 1)

    def vectors(self) -> Tuple[Vector, ...]:
        """Basis vectors as rational vectors in the ambient space."""
        return tuple(tuple(Fraction(x, self.denominator) for x in row) for row in self.basis)

    def scaled(self, c: Any) -> "IntegralLattice":
        c = to_scalar(c)
        if c == 0:
            raise ValueError("scaling factor must be nonzero")
        return IntegralLattice.from_rational_rows([[x * c for x in v] for v in self.vectors()],
                                                  dim=self.ambient_dim)

    def covolume(self) -> Fraction:
        """Absolute determinant of the basis (the index of the lattice relative to Z^n)."""
        return Fraction(prod(self.basis[i][i] for i in range(self.ambient_dim)),
                        self.denominator ** self.ambient_dim)

    def coordinates(self, v: Sequence[Any]) -> Optional[Tuple[int, ...]]:
        """Integer coefficients of v in the basis, or None when v is not in the lattice.

        Back-substitution against the upper-triangular HNF basis.
        """
        if len(v) != self.ambient_dim:
            raise DimensionMismatchError("vector dimension differs from lattice dimension",
                                         expected=self.ambient_dim, actual=len(v))
        w = [to_scalar(x) * self.denominator for x in v]
        if any(x.denominator != 1 for x in w):
            return None
        work = [int(x) for x in w]
        coeffs = []
        for i, row in enumerate(self.basis):
            pivot = row[i]
            if work[i] % pivot:
                return None
            c = work[i] // pivot
            coeffs.append(c)
            if c:
                work = [x - c * y for x, y in zip(work, row)]
        if any(work):
            return None
        return tuple(coeffs)

    def contains(self, v: Sequence[Any]) -> bool:
        return self.coordinates(v) is not None

    def to_document(self) -> Dict[str, Any]:
        return {"dim": self.ambient_dim, "den": self.denominator,
                "basis": [[format_scalar(Fraction(x)) for x in row] for row in self.basis]}

    @classmethod
    def from_document(cls, doc: Dict[str, Any]) -> "IntegralLattice":
        den = to_scalar(doc.get("den", 1))
        rows = [[to_scalar(x) / den for x in row] for row in doc["basis"]]
        return cls.from_rational_rows(rows, dim=int(doc["dim"]))


def lattice_membership(lat: IntegralLattice, v: Sequence[Any]) -> bool:
    return lat.contains(v)


def lattice_equal(a: IntegralLattice, b: IntegralLattice) -> bool:
    """Compare canonical forms after clearing both lattices to a common denominator."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("lattices live in different dimensions",
                                     expected=a.ambient_dim, actual=b.ambient_dim)
    common = lcm(a.denominator, b.denominator)
    fa, fb = common // a.denominator, common // b.denominator
    return hnf([[x * fa for x in row] for row in a.basis]) == hnf([[x * fb for x in row] for row in b.basis])
