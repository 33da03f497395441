"""
The extension L/K as a finite-dimensional commutative K-algebra with a
faithful G-action, and its elements.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Sequence, Tuple

from app.core.exceptions import (
    DimensionMismatchError,
    FixtureValidationError,
    InternalConsistencyError,
)
from app.core.linear_algebra import Vector, det_and_nonsingular, format_scalar, rank, to_scalar
from app.entities.group import FiniteGroup
from app.entities.matrix import Matrix
from app.models.enums import ContextMode

ZERO = Fraction(0)


@dataclass(frozen=True)
class AlgElement:
    """Coordinates of an element of L in the context basis."""
    coords: Vector

    @classmethod
    def of(cls, values: Sequence[Any]) -> "AlgElement":
        return cls(tuple(to_scalar(x) for x in values))

    @classmethod
    def zero(cls, n: int) -> "AlgElement":
        return cls((ZERO,) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> "AlgElement":
        return cls(tuple(Fraction(int(j == i)) for j in range(n)))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def _check(self, other: "AlgElement") -> None:
        if len(other.coords) != len(self.coords):
            raise DimensionMismatchError("algebra elements of different dimension",
                                         expected=len(self.coords), actual=len(other.coords))

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgElement":
        return AlgElement(tuple(-a for a in self.coords))

    def scale(self, c: Any) -> "AlgElement":
        c = to_scalar(c)
        return AlgElement(tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_document(self):
        return [format_scalar(x) for x in self.coords]


def sum_elements(elements, n: int) -> AlgElement:
    acc = [ZERO] * n
    for el in elements:
        for i, x in enumerate(el.coords):
            if x:
                acc[i] += x
    return AlgElement(tuple(acc))


@dataclass(frozen=True, eq=False)
class GaloisContext:
    """
    L/K with structure constants and automorphism matrices.

    ``mult[i][j]`` holds the coordinates of e_i·e_j, ``auto[σ]`` the matrix
    whose columns are the images of the basis vectors under σ. All ring and
    group-action identities are verified at construction; instances compare
    and hash by content so equal contexts share cached derived data.
    """
    group: FiniteGroup
    dim: int
    mult: Tuple[Tuple[Vector, ...], ...]
    one: Vector
    auto: Tuple[Matrix, ...]
    mode: ContextMode
    _products: Tuple[Tuple[Tuple[Tuple[int, Fraction], ...], ...], ...] = field(
        init=False, repr=False)
    _columns: Tuple[Tuple[Tuple[Tuple[int, Fraction], ...], ...], ...] = field(
        init=False, repr=False)

    def __post_init__(self):
        n = self.dim
        if n != self.group.order:
            raise FixtureValidationError("algebra dimension must equal the group order",
                                         identity="dimension", dim=n, order=self.group.order)
        if len(self.mult) != n or any(len(r) != n or any(len(v) != n for v in r) for r in self.mult):
            raise FixtureValidationError("structure constants must form an n×n×n tensor",
                                         identity="mult_shape")
        if len(self.one) != n:
            raise FixtureValidationError("identity vector has the wrong length", identity="one_shape")
        if len(self.auto) != n or any(m.rows != n or m.cols != n for m in self.auto):
            raise FixtureValidationError("one n×n automorphism matrix per group element is required",
                                         identity="auto_shape")
        products = tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.mult[i][j]) if c) for j in range(n))
            for i in range(n))
        columns = tuple(
            tuple(tuple((r, m.entries[r][j]) for r in range(n) if m.entries[r][j]) for j in range(n))
            for m in self.auto)
        object.__setattr__(self, "_products", products)
        object.__setattr__(self, "_columns", columns)
        self._validate()

    @cached_property
    def fingerprint(self) -> Tuple[Any, ...]:
        return (self.mode.value, self.group.table, self.mult, self.one,
                tuple(m.entries for m in self.auto))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaloisContext):
            return NotImplemented
        return self is other or self.fingerprint == other.fingerprint

    def __hash__(self) -> int:
        return self._fingerprint_hash

    @cached_property
    def _fingerprint_hash(self) -> int:
        return hash(self.fingerprint)

    # -- arithmetic ---------------------------------------------------------------

    def element(self, values: Sequence[Any]) -> AlgElement:
        el = AlgElement.of(values)
        self._require(el)
        return el

    def basis_element(self, i: int) -> AlgElement:
        return AlgElement.basis(self.dim, i)

    def one_element(self) -> AlgElement:
        return AlgElement(self.one)

    def zero_element(self) -> AlgElement:
        return AlgElement.zero(self.dim)

    def _require(self, a: AlgElement) -> None:
        if len(a.coords) != self.dim:
            raise DimensionMismatchError("element does not belong to this context",
                                         expected=self.dim, actual=len(a.coords))

    def mul(self, a: AlgElement, b: AlgElement) -> AlgElement:
        self._require(a)
        self._require(b)
        if self.mode is ContextMode.SPLIT:
            return AlgElement(tuple(x * y for x, y in zip(a.coords, b.coords)))
        out = [ZERO] * self.dim
        for i, x in enumerate(a.coords):
            if not x:
                continue
            row = self._products[i]
            for j, y in enumerate(b.coords):
                if not y:
                    continue
                xy = x * y
                for k, c in row[j]:
                    out[k] += xy * c
        return AlgElement(tuple(out))

    def act(self, sigma: int, a: AlgElement) -> AlgElement:
        self._require(a)
        out = [ZERO] * self.dim
        cols = self._columns[sigma]
        for j, x in enumerate(a.coords):
            if x:
                for r, c in cols[j]:
                    out[r] += c * x
        return AlgElement(tuple(out))

    @cached_property
    def _one_pivot(self) -> int:
        return next(i for i, x in enumerate(self.one) if x)

    def fixed_coordinate(self, a: AlgElement) -> Fraction:
        """The K-coordinate of a vector on the fixed line K·one."""
        p = self._one_pivot
        c = a.coords[p] / self.one[p]
        if any(x != c * o for x, o in zip(a.coords, self.one)):
            raise InternalConsistencyError("vector does not lie on the fixed line", {"vector": a.coords})
        return c

    @cached_property
    def _basis_traces(self) -> Vector:
        traces = []
        for i in range(self.dim):
            e = self.basis_element(i)
            total = sum_elements((self.act(s, e) for s in self.group.elements()), self.dim)
            traces.append(self.fixed_coordinate(total))
        return tuple(traces)

    def trace(self, a: AlgElement) -> Fraction:
        self._require(a)
        return sum((x * t for x, t in zip(a.coords, self._basis_traces) if x), ZERO)

    def mult_matrix(self, a: AlgElement) -> Matrix:
        """Matrix of multiplication by a (columns are a·e_j)."""
        cols = [self.mul(a, self.basis_element(j)).coords for j in range(self.dim)]
        return Matrix.from_rows([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    # -- validation ---------------------------------------------------------------

    def _validate(self) -> None:
        n = self.dim
        G = self.group
        basis = [self.basis_element(i) for i in range(n)]

        for i in range(n):
            for j in range(i + 1, n):
                if self.mult[i][j] != self.mult[j][i]:
                    raise FixtureValidationError("multiplication is not commutative",
                                                 identity="commutativity", pair=(i, j))
        if self.mode is ContextMode.SPLIT:
            for i in range(n):
                for j in range(n):
                    expected = tuple(Fraction(int(i == j and k == i)) for k in range(n))
                    if self.mult[i][j] != expected:
                        raise FixtureValidationError("split basis is not orthogonal idempotents",
                                                     identity="split_idempotents", pair=(i, j))

        products = [[AlgElement(self.mult[i][j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                left_ij = products[i][j]
                for k in range(n):
                    if self.mul(left_ij, basis[k]) != self.mul(basis[i], products[j][k]):
                        raise FixtureValidationError("multiplication is not associative",
                                                     identity="associativity", triple=(i, j, k))
        one = self.one_element()
        for i in range(n):
            if self.mul(one, basis[i]) != basis[i]:
                raise FixtureValidationError("one is not a multiplicative identity",
                                             identity="unit", basis_index=i)

        if self.auto[G.identity] != Matrix.identity(n):
            raise FixtureValidationError("identity element must act trivially",
                                         identity="automorphism_identity")
        for s in G.elements():
            label = G.label(s)
            if not det_and_nonsingular(self.auto[s])[1]:
                raise FixtureValidationError("automorphism matrix is singular",
                                             identity="automorphism_invertible", sigma=label)
            if self.act(s, one) != one:
                raise FixtureValidationError("automorphism does not fix one",
                                             identity="automorphism_fixes_one", sigma=label)
            images = [self.act(s, b) for b in basis]
            for i in range(n):
                for j in range(i, n):
                    if self.mul(images[i], images[j]) != self.act(s, products[i][j]):
                        raise FixtureValidationError("automorphism is not multiplicative",
                                                     identity="automorphism_multiplicative",
                                                     sigma=label, pair=(i, j))
        for s in G.elements():
            for t in G.elements():
                if self.auto[s] @ self.auto[t] != self.auto[G.mul(s, t)]:
                    raise FixtureValidationError("action does not respect the group table",
                                                 identity="automorphism_homomorphism",
                                                 pair=(G.label(s), G.label(t)))

        stacked = []
        for s in G.elements():
            m = self.auto[s]
            stacked.extend([m.entries[r][c] - int(r == c) for c in range(n)] for r in range(n))
        if rank(stacked) != n - 1:
            raise FixtureValidationError("fixed subspace is not one-dimensional",
                                         identity="fixed_field_dimension")

        gram = [[self.trace(self.mul(basis[i], basis[j])) for j in range(n)] for i in range(n)]
        if not det_and_nonsingular(gram)[1]:
            raise FixtureValidationError("trace form is degenerate",
                                         identity="trace_form_nondegenerate")
