from dataclasses import dataclass
from typing import Tuple

from app.core.exceptions import DimensionMismatchError
from app.entities.algebra import AlgElement
from app.entities.group import RegularSubgroup


@dataclass(frozen=True)
class TransitionMatrix:
    """T_N(x): entries[k][g] = η_k(g)[x], rows over N and columns over G."""
    subgroup: RegularSubgroup
    entries: Tuple[Tuple[AlgElement, ...], ...]

    def __post_init__(self):
        n = self.subgroup.order
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise DimensionMismatchError("transition matrix must be |N|×|G|", expected=n)

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, k: int, g: int) -> AlgElement:
        return self.entries[k][g]

    def transpose_entries(self) -> Tuple[Tuple[AlgElement, ...], ...]:
        return tuple(tuple(row[g] for row in self.entries) for g in range(self.size))
