"""
Records produced while transferring a freeness certificate between K[G]
and H_λ, and the main-theorem verdict.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from app.core.linear_algebra import Vector
from app.entities.order import FreenessCertificate, OrderLattice
from app.models.enums import TheoremVerdict, TransferDirection


@dataclass(frozen=True)
class ClaimRecord:
    """Outcome of one claim for one transferred element.

    ``route_holds`` is the verdict of the algebraic cross-route (None when the
    claim has no second route).
    """
    index: int
    claim: str
    holds: bool
    route_holds: Optional[bool] = None
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.holds and self.route_holds is not False


@dataclass
class TransferReport:
    direction: TransferDirection
    input_certificate: FreenessCertificate
    output_elements: List[Vector] = field(default_factory=list)
    claims: List[ClaimRecord] = field(default_factory=list)
    output_certificate: Optional[FreenessCertificate] = None
    order_matches: Optional[bool] = None

    @property
    def all_claims_hold(self) -> bool:
        return bool(self.claims) and all(c.passed for c in self.claims)


@dataclass
class TheoremReport:
    verdict: TheoremVerdict
    box: int
    order_kg: OrderLattice
    order_hlambda: OrderLattice
    found_kg: Optional[FreenessCertificate] = None
    found_hlambda: Optional[FreenessCertificate] = None
    transfers: Tuple[TransferReport, ...] = ()
    failure: Optional[str] = None
