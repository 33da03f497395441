"""
Lattices in L, orders in K[G] or H_λ, and freeness certificates.
"""

from dataclasses import dataclass
from typing import Any, Dict, Tuple

from app.core.linear_algebra import Vector, format_scalar
from app.entities.algebra import AlgElement
from app.entities.lattice import IntegralLattice
from app.models.enums import OrderAmbient


@dataclass(frozen=True)
class GStableLattice:
    """A full-rank lattice 𝔅 in L-coordinates; stability is set only by an exhaustive check."""
    lattice: IntegralLattice
    stability_verified: bool = False


@dataclass(frozen=True)
class OrderLattice:
    """
    A lattice in K[G] (coordinates over G) or in H_λ (coordinates over the
    Hopf basis). ``ring_verified`` means the lattice contains the identity
    and is closed under multiplication of basis elements.
    """
    ambient: OrderAmbient
    lattice: IntegralLattice
    ring_verified: bool = False

    def to_document(self) -> Dict[str, Any]:
        return {"ambient": self.ambient.value, "lattice": self.lattice.to_document()}


@dataclass(frozen=True)
class FreenessCertificate:
    """
    A generator x with order elements a_1..a_n whose images a_i·x form a
    basis of 𝔅. ``order_basis`` holds coordinates in the ambient's basis.
    """
    generator: AlgElement
    ambient: OrderAmbient
    order_basis: Tuple[Vector, ...]
    images: Tuple[AlgElement, ...]

    def to_document(self) -> Dict[str, Any]:
        return {
            "ambient": self.ambient.value,
            "generator": self.generator.to_document(),
            "order_basis": [[format_scalar(x) for x in row] for row in self.order_basis],
            "images": [img.to_document() for img in self.images],
        }


@dataclass(frozen=True)
class HopfOrderVerdict:
    """Sub-verdicts of the Hopf-order test."""
    comultiplication: bool
    counit: bool
    antipode: bool

    @property
    def is_hopf(self) -> bool:
        return self.comultiplication and self.counit and self.antipode
