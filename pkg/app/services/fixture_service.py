"""
Fixture service: resolves fixture references (catalog names or JSON paths)
into groups, contexts and lattices.
"""

import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import structlog
from pydantic import ValidationError

from app.core.exceptions import FixtureValidationError
from app.core.linear_algebra import to_scalar
from app.entities.algebra import GaloisContext
from app.entities.group import FiniteGroup
from app.entities.lattice import IntegralLattice
from app.schemas.fixture_schemas import LatticeDocument
from app.services.galois_context_service import galois_context_service
from app.services.group_service import group_service

logger = structlog.get_logger()


class FixtureService:
    """
    Fixture references:
        group:<name>   a catalog group only (C1, C2, S3, D4, Q8, Cn, Dm)
        split:<name>   the split Galois algebra Map(G, K) over a catalog group
        field:S3       the splitting field of x³ − 2
        <path>.json    a group document or a context document
    """

    def read_json(self, path: str) -> Dict[str, Any]:
        try:
            return json.loads(Path(path).read_text())
        except FileNotFoundError:
            raise FixtureValidationError("fixture file not found", identity="file", path=path)
        except json.JSONDecodeError as exc:
            raise FixtureValidationError("fixture file is not valid JSON", identity="json",
                                         path=path, error=str(exc))

    def resolve(self, ref: str) -> Tuple[FiniteGroup, Optional[GaloisContext]]:
        """Group plus context (None when the fixture only supplies a group)."""
        kind, _, name = ref.partition(":")
        if name and kind == "group":
            return group_service.catalog(name), None
        if name and kind == "split":
            ctx = galois_context_service.split_context(group_service.catalog(name))
            return ctx.group, ctx
        if name and kind == "field":
            if name.strip().upper() != "S3":
                raise FixtureValidationError("only the S3 field fixture ships with the catalog",
                                             identity="catalog", name=name)
            ctx = galois_context_service.cubic_field_context()
            return ctx.group, ctx
        doc = self.read_json(ref)
        if "mult" in doc:
            ctx = galois_context_service.load_fixture(doc)
            return ctx.group, ctx
        return galois_context_service.group_from_document(doc), None

    def resolve_context(self, ref: str) -> GaloisContext:
        _, ctx = self.resolve(ref)
        if ctx is None:
            raise FixtureValidationError("fixture supplies a group but no context",
                                         identity="context_required", fixture=ref)
        return ctx

    def augmentation_lattice(self, n: int) -> IntegralLattice:
        """Spanned by e_i − e_0 (i ≥ 1) and the all-ones vector; index n in the standard lattice."""
        rows = [[int(j == i) - int(j == 0) for j in range(n)] for i in range(1, n)]
        rows.append([1] * n)
        return IntegralLattice.from_integer_rows(rows, 1, n)

    def resolve_lattice(self, ctx: GaloisContext, ref: str) -> IntegralLattice:
        """standard | scaled:<c> | augmentation | <path>.json"""
        n = ctx.dim
        if ref == "standard":
            return IntegralLattice.standard(n)
        if ref == "augmentation":
            return self.augmentation_lattice(n)
        if ref.startswith("scaled:"):
            try:
                c = to_scalar(ref.split(":", 1)[1])
            except (TypeError, ValueError, ZeroDivisionError):
                raise FixtureValidationError("malformed scale factor", identity="scalar_format", lattice=ref)
            if c == 0:
                raise FixtureValidationError("scale factor must be nonzero", identity="full_rank")
            return IntegralLattice.standard(n).scaled(c)
        try:
            doc = LatticeDocument.model_validate(self.read_json(ref))
        except ValidationError as exc:
            raise FixtureValidationError("lattice document does not match the schema",
                                         identity="schema", errors=exc.error_count())
        try:
            lattice = IntegralLattice.from_document(doc.model_dump())
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise FixtureValidationError("malformed lattice entry", identity="scalar_format",
                                         path=ref, error=str(exc))
        if lattice.ambient_dim != n:
            raise FixtureValidationError("lattice dimension differs from the context",
                                         identity="dimension", dim=lattice.ambient_dim, expected=n)
        logger.info("Lattice fixture loaded", path=ref, dim=n)
        return lattice


fixture_service = FixtureService()
