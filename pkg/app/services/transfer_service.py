"""
Transfer service: moves a freeness certificate between K[G] and H_λ and
checks the main theorem end to end.
"""

from typing import Optional, Sequence, Tuple

import structlog

from app.core.exceptions import (
    ClaimFailureError,
    InternalConsistencyError,
    PreconditionError,
    SingularSystemError,
)
from app.entities.algebra import AlgElement, GaloisContext, sum_elements
from app.entities.hopf_elements import GroupAlgebraElement, HopfElement, LNElement
from app.entities.lattice import IntegralLattice, lattice_equal
from app.entities.order import FreenessCertificate, GStableLattice, OrderLattice
from app.entities.transfer import ClaimRecord, TheoremReport, TransferReport
from app.models.enums import TheoremVerdict, TransferDirection
from app.services.galois_context_service import galois_context_service
from app.services.group_service import group_service
from app.services.hopf_service import hopf_service
from app.services.order_service import order_service

logger = structlog.get_logger()


class TransferService:
    """Service layer for generator transfer between the classical and λ sides."""

    # -- inside-out trace identity ----------------------------------------------------

    def inside_out_check(self, ctx: GaloisContext, x: AlgElement, xhat: AlgElement) -> bool:
        """Σ_g σg(x̂)·τg(x) = δ_{σ,τ} for all σ, τ."""
        G = ctx.group
        one = ctx.one_element()
        zero = ctx.zero_element()
        for s in G.elements():
            for t in G.elements():
                total = sum_elements((ctx.mul(ctx.act(G.mul(s, g), xhat), ctx.act(G.mul(t, g), x))
                                      for g in G.elements()), ctx.dim)
                if total != (one if s == t else zero):
                    return False
        return True

    def inside_out_matrix_route(self, ctx: GaloisContext, x: AlgElement, xhat: AlgElement) -> Tuple[bool, bool]:
        """
        With X̂[σ][g] = σg(x̂) and X[τ][g] = τg(x): (X̂·Xᵀ = I, Xᵀ·X̂ = I) over L.
        """
        G = ctx.group
        n = G.order
        one = ctx.one_element()
        zero = ctx.zero_element()
        xs = [[ctx.act(G.mul(t, g), x) for g in G.elements()] for t in G.elements()]
        xhats = [[ctx.act(G.mul(s, g), xhat) for g in G.elements()] for s in G.elements()]

        def is_identity(entry) -> bool:
            return all(entry(i, j) == (one if i == j else zero) for i in range(n) for j in range(n))

        forward = is_identity(lambda s, t: sum_elements(
            (ctx.mul(xhats[s][g], xs[t][g]) for g in range(n)), ctx.dim))
        backward = is_identity(lambda g, h: sum_elements(
            (ctx.mul(xs[s][g], xhats[s][h]) for s in range(n)), ctx.dim))
        return forward, backward

    # -- element constructions --------------------------------------------------------

    def build_h(self, ctx: GaloisContext, x_i: AlgElement, xhat: AlgElement) -> HopfElement:
        """h_i = Σ_g (Σ_ρ ρ(x_i)·g⁻¹ρ(x̂)) λ(g), checked for G-fixedness."""
        G = ctx.group
        lam = group_service.left_regular(G)
        coeffs = []
        for g in G.elements():
            gi = G.inv(g)
            coeffs.append(sum_elements(
                (ctx.mul(ctx.act(r, x_i), ctx.act(G.mul(gi, r), xhat)) for r in G.elements()), ctx.dim))
        value = LNElement(tuple(coeffs))
        fixed = hopf_service.is_fixed(ctx, lam, value)
        return HopfElement(value, fixed_verified=fixed)

    def build_a(self, ctx: GaloisContext, x_i: AlgElement, xhat: AlgElement) -> GroupAlgebraElement:
        """a_i = Σ_g Tr(x_i·g(x̂))·g"""
        return GroupAlgebraElement(tuple(ctx.trace(ctx.mul(x_i, ctx.act(g, xhat)))
                                         for g in ctx.group.elements()))

    # -- transfers --------------------------------------------------------------------

    def _dual(self, ctx: GaloisContext, x: AlgElement) -> AlgElement:
        try:
            return galois_context_service.dual_generator(ctx, x)
        except SingularSystemError as exc:
            raise PreconditionError("certificate generator does not generate L", {"x": x.to_document()}) from exc

    def _require_certificate(self, ctx: GaloisContext, A: OrderLattice, B: GStableLattice,
                             cert: FreenessCertificate) -> None:
        if cert.ambient is not A.ambient or not order_service.revalidate_certificate(ctx, A, B, cert):
            raise PreconditionError("certificate does not validate against the associated order",
                                    {"ambient": cert.ambient.value})

    def _fail(self, report: TransferReport, record: ClaimRecord) -> None:
        report.claims.append(record)
        logger.error("Transfer claim failed", direction=report.direction.value,
                     index=record.index, claim=record.claim)
        raise ClaimFailureError("transfer claim failed", record.index, record.claim,
                                witness=record.witness, report=report)

    def _record(self, report: TransferReport, record: ClaimRecord) -> None:
        if not record.passed:
            self._fail(report, record)
        report.claims.append(record)

    def transfer_kg_to_hlambda(self, ctx: GaloisContext, B: GStableLattice,
                               cert: FreenessCertificate) -> TransferReport:
        """
        From a K[G]-side certificate (x, a_i, x_i = a_i(x)) build h_i in H_λ and
        verify: h_i is G-fixed, h_i·x = x_i, h_i·x_j ∈ 𝔅 (also via h_i·x_j = a_j(x_i)).
        """
        A_kg = order_service.associated_order_kg(ctx, B)
        self._require_certificate(ctx, A_kg, B, cert)
        x = cert.generator
        xhat = self._dual(ctx, x)
        algebra = hopf_service.lambda_algebra(ctx)
        N = algebra.subgroup
        report = TransferReport(TransferDirection.KG_TO_HLAMBDA, cert)
        xs = cert.images
        a_elements = [GroupAlgebraElement(tuple(a)) for a in cert.order_basis]
        for i, x_i in enumerate(xs):
            h = self.build_h(ctx, x_i, xhat)
            self._record(report, ClaimRecord(i, "fixed", h.fixed_verified,
                                             witness=None if h.fixed_verified else "g_twist"))
            acted = hopf_service.hopf_act(ctx, N, h, x)
            self._record(report, ClaimRecord(i, "action", acted == x_i,
                                             witness=None if acted == x_i else str(acted.to_document())))
            for j, x_j in enumerate(xs):
                value = hopf_service.hopf_act(ctx, N, h, x_j)
                inside = B.lattice.contains(value.coords)
                route = value == hopf_service.kg_act(ctx, a_elements[j], x_i)
                if not (inside and route):
                    self._fail(report, ClaimRecord(i, "integrality", inside, route, witness=f"j={j}"))
            report.claims.append(ClaimRecord(i, "integrality", True, True))
            report.output_elements.append(algebra.require_coordinates(h.value))
        A_lam = order_service.associated_order_hlambda(ctx, B)
        self._finish(ctx, report, A_lam, B, x, xs)
        return report

    def transfer_hlambda_to_kg(self, ctx: GaloisContext, B: GStableLattice,
                               cert: FreenessCertificate) -> TransferReport:
        """
        From an H_λ-side certificate (x, h_i, x_i = h_i·x) build a_i in K[G] and
        verify: a_i(x) = x_i, a_i(x_j) ∈ 𝔅 (also via a_i(x_j) = h_j·x_i).
        """
        A_lam = order_service.associated_order_hlambda(ctx, B)
        self._require_certificate(ctx, A_lam, B, cert)
        x = cert.generator
        xhat = self._dual(ctx, x)
        algebra = hopf_service.lambda_algebra(ctx)
        N = algebra.subgroup
        report = TransferReport(TransferDirection.HLAMBDA_TO_KG, cert)
        xs = cert.images
        h_elements = [algebra.element(h) for h in cert.order_basis]
        for i, x_i in enumerate(xs):
            a = self.build_a(ctx, x_i, xhat)
            acted = hopf_service.kg_act(ctx, a, x)
            self._record(report, ClaimRecord(i, "action", acted == x_i,
                                             witness=None if acted == x_i else str(acted.to_document())))
            for j, x_j in enumerate(xs):
                value = hopf_service.kg_act(ctx, a, x_j)
                inside = B.lattice.contains(value.coords)
                route = value == hopf_service.hopf_act(ctx, N, h_elements[j], x_i)
                if not (inside and route):
                    self._fail(report, ClaimRecord(i, "integrality", inside, route, witness=f"j={j}"))
            report.claims.append(ClaimRecord(i, "integrality", True, True))
            report.output_elements.append(a.coeffs)
        A_kg = order_service.associated_order_kg(ctx, B)
        self._finish(ctx, report, A_kg, B, x, xs)
        return report

    def _finish(self, ctx: GaloisContext, report: TransferReport, A: OrderLattice, B: GStableLattice,
                x: AlgElement, xs: Sequence[AlgElement]) -> None:
        """The produced elements must form a basis of the target associated order."""
        produced = IntegralLattice.from_rational_rows(report.output_elements, dim=ctx.group.order)
        report.order_matches = lattice_equal(produced, A.lattice)
        if not report.order_matches:
            self._fail(report, ClaimRecord(-1, "order_basis", False, witness=A.ambient.value))
        cert = FreenessCertificate(x, A.ambient, tuple(report.output_elements), tuple(xs))
        if not order_service.revalidate_certificate(ctx, A, B, cert):
            self._fail(report, ClaimRecord(-1, "certificate", False, witness=A.ambient.value))
        report.output_certificate = cert
        logger.info("Transfer succeeded", direction=report.direction.value, claims=len(report.claims))

    # -- main theorem -----------------------------------------------------------------

    def _certify(self, ctx: GaloisContext, A: OrderLattice, B: GStableLattice,
                 box: int) -> Optional[FreenessCertificate]:
        x = order_service.search_generator(ctx, A, B, box)
        if x is None:
            return None
        return order_service.verify_freeness(ctx, A, B, x)

    def theorem_main_check(self, ctx: GaloisContext, B: GStableLattice, box: int) -> TheoremReport:
        """
        Search both sides for a generator and transfer every certificate found.
        A failed transfer from a certified side is reported as a contradiction.
        """
        A_kg = order_service.associated_order_kg(ctx, B)
        A_lam = order_service.associated_order_hlambda(ctx, B)
        found_kg = self._certify(ctx, A_kg, B, box)
        found_lam = self._certify(ctx, A_lam, B, box)
        report = TheoremReport(TheoremVerdict.NEITHER_FOUND, box, A_kg, A_lam, found_kg, found_lam)
        transfers = []
        try:
            if found_kg is not None:
                transfers.append(self.transfer_kg_to_hlambda(ctx, B, found_kg))
            if found_lam is not None:
                transfers.append(self.transfer_hlambda_to_kg(ctx, B, found_lam))
        except (ClaimFailureError, PreconditionError) as exc:
            report.verdict = TheoremVerdict.CONTRADICTION
            report.failure = str(exc)
            if isinstance(exc, ClaimFailureError) and exc.report is not None:
                transfers.append(exc.report)
            report.transfers = tuple(transfers)
            logger.error("Main theorem check found a contradiction", failure=report.failure)
            return report
        report.transfers = tuple(transfers)
        if transfers:
            report.verdict = TheoremVerdict.BOTH_FREE
        logger.info("Main theorem check finished", verdict=report.verdict.value, box=box)
        return report

    def round_trip(self, ctx: GaloisContext, B: GStableLattice,
                   cert: FreenessCertificate) -> Tuple[TransferReport, TransferReport]:
        """Forward then backward from a K[G]-side certificate."""
        forward = self.transfer_kg_to_hlambda(ctx, B, cert)
        if forward.output_certificate is None:
            raise InternalConsistencyError("forward transfer produced no certificate")
        backward = self.transfer_hlambda_to_kg(ctx, B, forward.output_certificate)
        return forward, backward


transfer_service = TransferService()
