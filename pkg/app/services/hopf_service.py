"""
Hopf service: the classical action of K[G] on L, the G-action on L[N], the
fixed Hopf algebra H_N = L[N]^G with an explicit K-basis, and its action on L.
"""

from fractions import Fraction
from functools import lru_cache
from typing import List, Sequence

import structlog

from app.core.exceptions import (
    DimensionMismatchError,
    InternalConsistencyError,
    UnverifiedElementError,
)
from app.core.linear_algebra import IncrementalEchelon
from app.entities.algebra import AlgElement, GaloisContext, sum_elements
from app.entities.group import RegularSubgroup
from app.entities.hopf_elements import GroupAlgebraElement, HopfAlgebra, HopfElement, LNElement
from app.services.group_service import group_service

logger = structlog.get_logger()


class HopfService:
    """Service layer for K[G], L[N] and H_N."""

    def _check_subgroup(self, ctx: GaloisContext, N: RegularSubgroup) -> None:
        if N.order != ctx.group.order:
            raise DimensionMismatchError("subgroup size differs from the group order",
                                         expected=ctx.group.order, actual=N.order)

    # -- K[G] ---------------------------------------------------------------------

    def kg_act(self, ctx: GaloisContext, z: GroupAlgebraElement, x: AlgElement) -> AlgElement:
        """Σ_σ z_σ·σ(x)"""
        if len(z.coeffs) != ctx.group.order:
            raise DimensionMismatchError("group algebra element has the wrong size",
                                         expected=ctx.group.order, actual=len(z.coeffs))
        return sum_elements((ctx.act(s, x).scale(c) for s, c in enumerate(z.coeffs) if c), ctx.dim)

    def kg_mul(self, ctx: GaloisContext, a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
        G = ctx.group
        out = [Fraction(0)] * G.order
        for s, x in enumerate(a.coeffs):
            if x:
                for t, y in enumerate(b.coeffs):
                    if y:
                        out[G.mul(s, t)] += x * y
        return GroupAlgebraElement(tuple(out))

    # -- L[N] ---------------------------------------------------------------------

    def g_twist(self, ctx: GaloisContext, N: RegularSubgroup, g: int, h: LNElement) -> LNElement:
        """ᵍh: the coefficient c_η moves to λ(g)ηλ(g)⁻¹ and becomes g(c_η)."""
        self._check_subgroup(ctx, N)
        G = ctx.group
        gi = G.inv(g)
        out: List[AlgElement] = [ctx.zero_element()] * N.order
        for k, c in enumerate(h.coeffs):
            if c.is_zero():
                continue
            target = G.mul(g, N.elements[k](gi))
            out[target] = ctx.act(g, c)
        return LNElement(tuple(out))

    def is_fixed(self, ctx: GaloisContext, N: RegularSubgroup, h: LNElement) -> bool:
        return all(self.g_twist(ctx, N, g, h) == h for g in ctx.group.elements())

    def verify_fixed(self, ctx: GaloisContext, N: RegularSubgroup, h: LNElement) -> HopfElement:
        """Promote h to a Hopf element after the exhaustive fixedness check."""
        if not self.is_fixed(ctx, N, h):
            raise UnverifiedElementError("element of L[N] is not G-fixed", {"element": h.to_document()})
        return HopfElement(h, fixed_verified=True)

    def orbit_sum(self, ctx: GaloisContext, N: RegularSubgroup, y: AlgElement, k: int) -> HopfElement:
        """T(y·η_k) = Σ_g ᵍ(y·η_k)"""
        term = LNElement.term(N.order, k, y)
        acc = LNElement.zero(N.order, ctx.dim)
        for g in ctx.group.elements():
            acc = acc + self.g_twist(ctx, N, g, term)
        return self.verify_fixed(ctx, N, acc)

    def identity_element(self, ctx: GaloisContext, N: RegularSubgroup) -> HopfElement:
        """one·id_N"""
        return HopfElement(LNElement.term(N.order, ctx.group.identity, ctx.one_element()), True)

    # -- H_N basis ----------------------------------------------------------------

    def hopf_basis(self, ctx: GaloisContext, N: RegularSubgroup) -> List[HopfElement]:
        """
        K-basis of L[N]^G picked from the orbit sums of e_y·η_k.

        Candidates run η-index major, L-basis minor; each accepted element is
        scaled so its first nonzero flattened coordinate is 1.
        """
        self._check_subgroup(ctx, N)
        n = N.order
        echelon = IncrementalEchelon()
        basis: List[HopfElement] = []
        for k in range(n):
            for y in range(ctx.dim):
                h = self.orbit_sum(ctx, N, ctx.basis_element(y), k)
                flat = h.value.flattened()
                if not echelon.add(flat):
                    continue
                lead = next(x for x in flat if x)
                basis.append(HopfElement(h.value.scale(1 / lead), fixed_verified=True))
                if len(basis) == n:
                    break
            if len(basis) == n:
                break
        if len(basis) != n:
            raise InternalConsistencyError("fixed Hopf algebra has the wrong dimension",
                                           {"expected": n, "rank": len(basis)})
        return basis

    @lru_cache(maxsize=64)
    def hopf_algebra(self, ctx: GaloisContext, N: RegularSubgroup) -> HopfAlgebra:
        algebra = HopfAlgebra(N, ctx.dim, tuple(self.hopf_basis(ctx, N)))
        logger.info("Hopf basis extracted", order=N.order, abelian=N.is_abelian())
        return algebra

    def lambda_algebra(self, ctx: GaloisContext) -> HopfAlgebra:
        return self.hopf_algebra(ctx, group_service.left_regular(ctx.group))

    # -- action and structure -----------------------------------------------------

    def hopf_act(self, ctx: GaloisContext, N: RegularSubgroup, h: HopfElement, x: AlgElement) -> AlgElement:
        """(Σ c_η η)·x = Σ c_η·η⁻¹(1_G)[x]"""
        if not h.fixed_verified:
            raise UnverifiedElementError("Hopf action requires a verified G-fixed element")
        self._check_subgroup(ctx, N)
        terms = (ctx.mul(c, ctx.act(N.inverse_at_identity(k), x))
                 for k, c in enumerate(h.value.coeffs) if not c.is_zero())
        return sum_elements(terms, ctx.dim)

    def interchange_check(self, ctx: GaloisContext, N: RegularSubgroup, h: HopfElement,
                          z: GroupAlgebraElement, t: AlgElement) -> bool:
        """h·z(t) = z(h·t)"""
        return (self.hopf_act(ctx, N, h, self.kg_act(ctx, z, t))
                == self.kg_act(ctx, z, self.hopf_act(ctx, N, h, t)))

    def ln_mul(self, ctx: GaloisContext, N: RegularSubgroup, a: LNElement, b: LNElement) -> LNElement:
        out: List[AlgElement] = [ctx.zero_element()] * N.order
        for k, x in enumerate(a.coeffs):
            if x.is_zero():
                continue
            for l, y in enumerate(b.coeffs):
                if y.is_zero():
                    continue
                kl = N.closure_table[k][l]
                out[kl] = out[kl] + ctx.mul(x, y)
        return LNElement(tuple(out))

    def hopf_mul(self, ctx: GaloisContext, N: RegularSubgroup, a: HopfElement, b: HopfElement) -> HopfElement:
        if not (a.fixed_verified and b.fixed_verified):
            raise UnverifiedElementError("Hopf product requires verified G-fixed factors")
        return self.verify_fixed(ctx, N, self.ln_mul(ctx, N, a.value, b.value))

    def counit(self, ctx: GaloisContext, h: HopfElement) -> Fraction:
        """ε(Σ c_η η) = Σ c_η, which lies in K for fixed h."""
        if not h.fixed_verified:
            raise UnverifiedElementError("counit requires a verified G-fixed element")
        return ctx.fixed_coordinate(sum_elements(h.value.coeffs, ctx.dim))

    def antipode(self, ctx: GaloisContext, N: RegularSubgroup, h: HopfElement) -> HopfElement:
        """S(Σ c_η η) = Σ c_η η⁻¹"""
        out: List[AlgElement] = [ctx.zero_element()] * N.order
        for k, c in enumerate(h.value.coeffs):
            out[N.inverse_at_identity(k)] = c
        return self.verify_fixed(ctx, N, LNElement(tuple(out)))

    def group_algebra_image(self, ctx: GaloisContext, N: RegularSubgroup, z: GroupAlgebraElement) -> HopfElement:
        """Σ z_g·ρ(g) for N = ρ(G), the element of H_ρ matching z under ρ(g) ↦ g."""
        out: List[AlgElement] = [ctx.zero_element()] * N.order
        for g, c in enumerate(z.coeffs):
            if c:
                out[ctx.group.inv(g)] = ctx.one_element().scale(c)
        return self.verify_fixed(ctx, N, LNElement(tuple(out)))

    def dimension_check(self, ctx: GaloisContext, subgroups: Sequence[RegularSubgroup]) -> bool:
        """dim_K H_N = |G| for every N given."""
        return all(len(self.hopf_basis(ctx, N)) == ctx.group.order for N in subgroups)


hopf_service = HopfService()
