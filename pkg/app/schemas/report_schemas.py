"""
Pydantic schemas for run configuration and the reports each command emits.

Reports carry no timestamps: identical inputs serialize byte-identically.
"""

from typing import List, Optional

from pydantic import BaseModel, Field

from app.models.enums import CommandName, ReportFormat, TheoremVerdict, TransferDirection
from app.schemas.fixture_schemas import CertificateDocument, OrderDocument


class RunConfig(BaseModel):
    """Validated merge of CLI flags and settings."""
    command: CommandName
    fixture: str = Field(..., description="Catalog reference or JSON path")
    lattice: str = Field("standard", description="standard | scaled:<c> | augmentation | JSON path")
    seed: int = Field(0)
    samples: int = Field(200, ge=1)
    box: int = Field(2, ge=0)
    out: Optional[str] = Field(None, description="Output path; stdout when absent")
    format: ReportFormat = Field(ReportFormat.JSON)


class CensusEntry(BaseModel):
    index: int
    images: List[List[int]]
    abelian: bool
    is_lambda: bool
    is_rho: bool
    normalized: bool
    regular: bool
    centralizes_lambda: bool


class EnumerateReport(BaseModel):
    config: RunConfig
    group_order: int
    group_labels: List[str]
    count: int
    entries: List[CensusEntry]


class NbgRow(BaseModel):
    index: int
    seed: int
    x: List[str]
    verdict_lambda: bool
    verdict_rho: bool
    agrees: bool


class NbgReport(BaseModel):
    config: RunConfig
    mode: str
    agreement_rate: str = Field(..., description="Exact fraction of agreeing samples")
    all_agree: bool
    rows: List[NbgRow]


class ClaimDocument(BaseModel):
    index: int
    claim: str
    holds: bool
    route_holds: Optional[bool] = None
    witness: Optional[str] = None


class TransferDocument(BaseModel):
    direction: TransferDirection
    input_certificate: CertificateDocument
    output_elements: List[List[str]]
    claims: List[ClaimDocument]
    output_certificate: Optional[CertificateDocument] = None
    order_matches: Optional[bool] = None


class TheoremReportDocument(BaseModel):
    config: RunConfig
    verdict: TheoremVerdict
    box: int
    order_kg: OrderDocument
    order_hlambda: OrderDocument
    certificate_kg: Optional[CertificateDocument] = None
    certificate_hlambda: Optional[CertificateDocument] = None
    transfers: List[TransferDocument] = Field(default_factory=list)
    failure: Optional[str] = None


class HopfOrderSide(BaseModel):
    ambient: str
    order: OrderDocument
    comultiplication: bool
    counit: bool
    antipode: bool
    is_hopf: bool


class HopfOrderReport(BaseModel):
    config: RunConfig
    sides: List[HopfOrderSide]


class CertificateCheck(BaseModel):
    source: str
    ambient: str
    valid: bool


class VerifyReport(BaseModel):
    report_path: str
    fixture: str
    lattice: str
    checked: int
    all_valid: bool
    results: List[CertificateCheck]
