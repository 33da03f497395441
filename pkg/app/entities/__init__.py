"""
Entities package for the Hopf-Galois freeness library.
Immutable values for groups, algebras, lattices, orders and transfer reports.
"""

from .algebra import AlgElement, GaloisContext
from .group import FiniteGroup, Permutation, RegularSubgroup
from .lattice import IntegralLattice
from .order import FreenessCertificate, GStableLattice, HopfOrderVerdict, OrderLattice
from .transfer import ClaimRecord, TheoremReport, TransferReport

__all__ = [
    "AlgElement", "GaloisContext",
    "FiniteGroup", "Permutation", "RegularSubgroup",
    "IntegralLattice",
    "FreenessCertificate", "GStableLattice", "HopfOrderVerdict", "OrderLattice",
    "ClaimRecord", "TheoremReport", "TransferReport",
]
