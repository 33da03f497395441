"""
Finite groups as multiplication tables, permutations of their underlying
set, and regular subgroups of Perm(G).
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.core.exceptions import FixtureValidationError


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group given by its Cayley table on indices 0..n-1.

    ``table[i][j]`` is the index of g_i·g_j. Every group law is checked
    exhaustively at construction, so any instance is a genuine group.

    Attributes:
        order (int): number of elements n
        table (Tuple[Tuple[int, ...], ...]): n×n multiplication table
        identity (int): index of the identity element
        labels (Tuple[str, ...]): printable element names
    """
    order: int
    table: Tuple[Tuple[int, ...], ...]
    identity: int
    labels: Tuple[str, ...] = ()
    inverses: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.order
        if n < 1:
            raise FixtureValidationError("group must be nonempty", identity="nonempty")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise FixtureValidationError("table shape does not match order",
                                         identity="table_shape", order=n)
        full = set(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise FixtureValidationError("table row is not a permutation",
                                             identity="latin_square", row=i)
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise FixtureValidationError("table column is not a permutation",
                                             identity="latin_square", column=j)
        e = self.identity
        if not 0 <= e < n:
            raise FixtureValidationError("identity index out of range", identity="identity")
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                raise FixtureValidationError("identity row/column is not the identity permutation",
                                             identity="identity", element=i)
        t = self.table
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise FixtureValidationError("multiplication is not associative",
                                                     identity="associativity", triple=(a, b, c))
        inverses = tuple(t[i].index(e) for i in range(n))
        for i, inv in enumerate(inverses):
            if t[inv][i] != e:
                raise FixtureValidationError("element has no two-sided inverse",
                                             identity="inverse", element=i)
        object.__setattr__(self, "inverses", inverses)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"g{i}" for i in range(n)))
        elif len(self.labels) != n or len(set(self.labels)) != n:
            raise FixtureValidationError("labels must be n distinct names", identity="labels")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, h: int) -> int:
        """g·h·g⁻¹"""
        return self.table[self.table[g][h]][self.inverses[g]]

    def elements(self) -> range:
        return range(self.order)

    def label(self, i: int) -> str:
        return self.labels[i]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise FixtureValidationError("unknown element label", identity="labels", label=label)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a]
                   for a in range(self.order) for b in range(a + 1, self.order))


@dataclass(frozen=True)
class Permutation:
    """A bijection on {0..n-1}; composition is (p∘q)(x) = p(q(x))."""
    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise FixtureValidationError("images do not form a bijection", identity="bijection",
                                         images=self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def compose(self, other: "Permutation") -> "Permutation":
        return Permutation(tuple(self.images[y] for y in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation(tuple(inv))

    def has_fixed_point(self) -> bool:
        return any(x == y for x, y in enumerate(self.images))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))


@dataclass(frozen=True)
class RegularSubgroup:
    """
    A regular subgroup N of Perm(G).

    ``elements[g]`` is the unique member sending 1_G to g, so N is indexed
    by G itself. ``closure_table[a][b]`` is the index of elements[a]∘elements[b].
    """
    group: FiniteGroup = field(compare=False, repr=False)
    elements: Tuple[Permutation, ...]
    closure_table: Tuple[Tuple[int, ...], ...] = field(init=False, compare=False, repr=False)
    inverse_index: Tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        G = self.group
        n = G.order
        e = G.identity
        if len(self.elements) != n:
            raise FixtureValidationError("regular subgroup must have |G| elements",
                                         identity="regular_order", size=len(self.elements))
        for g, perm in enumerate(self.elements):
            if len(perm.images) != n or perm(e) != g:
                raise FixtureValidationError("element is not indexed by its image of the identity",
                                             identity="regular_indexing", element=g)
            if g != e and perm.has_fixed_point():
                raise FixtureValidationError("non-identity element has a fixed point",
                                             identity="regularity", element=g)
        if not self.elements[e].is_identity():
            raise FixtureValidationError("subgroup lacks the identity permutation", identity="identity")
        # (η_a∘η_b)(1) = η_a(b), so the product of η_a and η_b must be η_{η_a(b)}
        closure = []
        for a in range(n):
            row = []
            for b in range(n):
                k = self.elements[a](b)
                if self.elements[a].compose(self.elements[b]) != self.elements[k]:
                    raise FixtureValidationError("subgroup is not closed under composition",
                                                 identity="closure", pair=(a, b))
                row.append(k)
            closure.append(tuple(row))
        inverse_index = tuple(self.elements[a].images.index(e) for a in range(n))
        object.__setattr__(self, "closure_table", tuple(closure))
        object.__setattr__(self, "inverse_index", inverse_index)

    @classmethod
    def from_permutations(cls, group: FiniteGroup, perms: Iterable[Permutation]) -> "RegularSubgroup":
        by_index: Dict[int, Permutation] = {}
        for perm in perms:
            key = perm(group.identity)
            if key in by_index:
                raise FixtureValidationError("two elements move the identity to the same point",
                                             identity="regularity", element=key)
            by_index[key] = perm
        if sorted(by_index) != list(range(group.order)):
            raise FixtureValidationError("subgroup does not act transitively",
                                         identity="regularity")
        return cls(group, tuple(by_index[g] for g in range(group.order)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def index_of(self, perm: Permutation) -> Optional[int]:
        k = perm(self.group.identity)
        return k if self.elements[k] == perm else None

    def inverse_at_identity(self, k: int) -> int:
        """η_k⁻¹(1_G), the group element through which η_k acts on L."""
        return self.inverse_index[k]

    def flattened(self) -> Tuple[int, ...]:
        return tuple(x for perm in self.elements for x in perm.images)

    def is_abelian(self) -> bool:
        t = self.closure_table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a + 1, self.order))

    def image_vectors(self) -> List[List[int]]:
        return [list(perm.images) for perm in self.elements]
