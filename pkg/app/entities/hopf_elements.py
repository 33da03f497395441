"""
Elements of K[G], L[N] and H_N = L[N]^G, plus the K-basis of H_N.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.core.exceptions import DimensionMismatchError, PreconditionError
from app.core.linear_algebra import Vector, format_scalar, solve_right, to_scalar
from app.entities.algebra import AlgElement
from app.entities.group import RegularSubgroup

ZERO = Fraction(0)


@dataclass(frozen=True)
class GroupAlgebraElement:
    """Σ_σ coeffs[σ]·σ in K[G]."""
    coeffs: Vector

    @classmethod
    def of(cls, values: Sequence[Any]) -> "GroupAlgebraElement":
        return cls(tuple(to_scalar(x) for x in values))

    @classmethod
    def group_element(cls, n: int, g: int) -> "GroupAlgebraElement":
        return cls(tuple(Fraction(int(i == g)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "GroupAlgebraElement":
        return cls((ZERO,) * n)

    def __add__(self, other: "GroupAlgebraElement") -> "GroupAlgebraElement":
        if len(other.coeffs) != len(self.coeffs):
            raise DimensionMismatchError("group algebra elements of different size",
                                         expected=len(self.coeffs), actual=len(other.coeffs))
        return GroupAlgebraElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: Any) -> "GroupAlgebraElement":
        c = to_scalar(c)
        return GroupAlgebraElement(tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def to_document(self) -> List[str]:
        return [format_scalar(x) for x in self.coeffs]


@dataclass(frozen=True)
class LNElement:
    """Σ_k coeffs[k]·η_k in L[N], with η_k the member of N sending 1_G to g_k."""
    coeffs: Tuple[AlgElement, ...]

    @classmethod
    def zero(cls, order: int, dim: int) -> "LNElement":
        return cls(tuple(AlgElement.zero(dim) for _ in range(order)))

    @classmethod
    def term(cls, order: int, k: int, y: AlgElement) -> "LNElement":
        """The single term y·η_k."""
        zero = AlgElement.zero(y.dim)
        return cls(tuple(y if i == k else zero for i in range(order)))

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "LNElement") -> "LNElement":
        if other.order != self.order:
            raise DimensionMismatchError("L[N] elements over different subgroups",
                                         expected=self.order, actual=other.order)
        return LNElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: Any) -> "LNElement":
        return LNElement(tuple(a.scale(c) for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coeffs)

    def flattened(self) -> Vector:
        """K-coordinates, η-index major and L-basis index minor."""
        return tuple(x for a in self.coeffs for x in a.coords)

    def to_document(self) -> Dict[str, List[str]]:
        return {str(k): a.to_document() for k, a in enumerate(self.coeffs) if not a.is_zero()}


@dataclass(frozen=True)
class HopfElement:
    """An element of L[N] together with the result of its G-fixedness check."""
    value: LNElement
    fixed_verified: bool = False


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    """
    H_N with a fixed K-basis.

    ``basis`` is extracted deterministically from orbit sums; ``coordinates``
    expresses any element of L[N] lying in H_N in that basis, exactly.
    """
    subgroup: RegularSubgroup
    dim: int
    basis: Tuple[HopfElement, ...]
    _columns: Tuple[Vector, ...] = field(init=False, repr=False)

    def __post_init__(self):
        flat = [h.value.flattened() for h in self.basis]
        # |N|·dim(L) rows by |N| columns
        rows = tuple(tuple(v[r] for v in flat) for r in range(len(flat[0]))) if flat else ()
        object.__setattr__(self, "_columns", rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return (self.subgroup.flattened(), self.basis) == (other.subgroup.flattened(), other.basis)

    def __hash__(self) -> int:
        return hash((self.subgroup.flattened(), self.basis))

    @property
    def order(self) -> int:
        return len(self.basis)

    def coordinates(self, h: LNElement) -> Optional[Vector]:
        """K-coordinates of h in the basis, or None when h is outside H_N."""
        if h.order != self.subgroup.order:
            raise DimensionMismatchError("element lives over another subgroup",
                                         expected=self.subgroup.order, actual=h.order)
        return solve_right(self._columns, h.flattened())

    def require_coordinates(self, h: LNElement) -> Vector:
        coords = self.coordinates(h)
        if coords is None:
            raise PreconditionError("element of L[N] is not in the fixed Hopf algebra",
                                    {"element": h.to_document()})
        return coords

    def element(self, coords: Sequence[Any]) -> HopfElement:
        """Σ coords[i]·basis[i]; K-combinations of fixed elements stay fixed."""
        if len(coords) != self.order:
            raise DimensionMismatchError("wrong number of Hopf coordinates",
                                         expected=self.order, actual=len(coords))
        acc = LNElement.zero(self.subgroup.order, self.dim)
        for c, h in zip(coords, self.basis):
            c = to_scalar(c)
            if c:
                acc = acc + h.value.scale(c)
        return HopfElement(acc, fixed_verified=True)
