"""
Pydantic schemas for fixture documents: groups, contexts and lattices.

Scalars travel as strings "p/q" (or "p"); plain JSON integers are accepted
on input.
"""

from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from app.models.enums import ContextMode

ScalarText = Union[int, str]


class GroupDocument(BaseModel):
    """Schema for a finite group given by its multiplication table."""
    model_config = ConfigDict(extra="forbid")

    order: int = Field(..., ge=1, description="Number of elements n")
    identity: int = Field(0, ge=0, description="Index of the identity element")
    table: List[List[int]] = Field(..., description="table[i][j] is the index of g_i·g_j")
    labels: Optional[List[str]] = Field(None, description="Printable element names")


class ContextDocument(BaseModel):
    """Schema for L/K: structure constants and automorphism matrices keyed by label."""
    model_config = ConfigDict(extra="forbid")

    group: GroupDocument
    mode: ContextMode = Field(ContextMode.FIELD, description="split | field")
    mult: List[List[List[ScalarText]]] = Field(..., description="mult[i][j] = coordinates of e_i·e_j")
    one: List[ScalarText] = Field(..., description="Coordinates of the multiplicative identity")
    auto: Dict[str, List[List[ScalarText]]] = Field(
        ..., description="Automorphism matrix per group label; columns are images of basis vectors")


class LatticeDocument(BaseModel):
    """Schema for (1/den)·rowspan(basis)."""
    model_config = ConfigDict(extra="forbid")

    dim: int = Field(..., ge=1)
    den: ScalarText = Field(1)
    basis: List[List[ScalarText]]


class OrderDocument(BaseModel):
    ambient: str
    lattice: LatticeDocument


class CertificateDocument(BaseModel):
    """Schema for a freeness certificate as emitted in reports."""
    ambient: str
    generator: List[str]
    order_basis: List[List[str]]
    images: List[List[str]]
