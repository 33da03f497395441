"""
Normal basis generator service: transition matrices T_N(x), determinants
over L, the GL = Map(G, L) model and the λ/ρ generator comparison.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import structlog

from app.core.config import settings
from app.core.exceptions import DimensionMismatchError
from app.core.linear_algebra import det_and_nonsingular, rank
from app.entities.algebra import AlgElement, GaloisContext
from app.entities.group import RegularSubgroup
from app.entities.transition import TransitionMatrix
from app.models.enums import ContextMode
from app.services.galois_context_service import galois_context_service
from app.services.group_service import group_service
from app.services.hopf_service import hopf_service

logger = structlog.get_logger()


@dataclass(frozen=True)
class NbgSample:
    index: int
    x: AlgElement
    verdict_lambda: bool
    verdict_rho: bool

    @property
    def agrees(self) -> bool:
        return self.verdict_lambda == self.verdict_rho


class NbgService:
    """Service layer for normal-basis-generator tests."""

    def transition_matrix(self, ctx: GaloisContext, N: RegularSubgroup, x: AlgElement) -> TransitionMatrix:
        """entry (η, g) = η(g)[x]"""
        if N.order != ctx.group.order:
            raise DimensionMismatchError("subgroup size differs from the group order",
                                         expected=ctx.group.order, actual=N.order)
        images = [ctx.act(s, x) for s in ctx.group.elements()]
        entries = tuple(tuple(images[eta(g)] for g in ctx.group.elements()) for eta in N.elements)
        return TransitionMatrix(N, entries)

    def algebra_determinant(self, ctx: GaloisContext, rows: Sequence[Sequence[AlgElement]]) -> AlgElement:
        """
        Determinant of a square matrix over L.

        Split mode works one idempotent component at a time, since products
        there are coordinatewise, and never divides. Field mode runs Bareiss
        elimination, whose one division is by the previous pivot: a nonzero
        element of the field L that divides every entry exactly, so zero
        divisors never arise.
        """
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatchError("determinant of a non-square matrix over L", expected=n)
        if n == 0:
            return ctx.one_element()
        if ctx.mode is ContextMode.SPLIT:
            comps = []
            for c in range(ctx.dim):
                comps.append(det_and_nonsingular([[a.coords[c] for a in r] for r in rows])[0])
            return AlgElement(tuple(comps))
        return self._bareiss(ctx, [list(r) for r in rows])

    def _bareiss(self, ctx: GaloisContext, a: List[List[AlgElement]]) -> AlgElement:
        n = len(a)
        sign = 1
        prev = ctx.one_element()
        for k in range(n - 1):
            if a[k][k].is_zero():
                swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
                if swap is None:
                    return ctx.zero_element()
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            pivot = a[k][k]
            prev_inv = galois_context_service.inverse_in_algebra(ctx, prev)
            for i in range(k + 1, n):
                lead = a[i][k]
                for j in range(k + 1, n):
                    num = ctx.mul(a[i][j], pivot) - ctx.mul(lead, a[k][j])
                    a[i][j] = ctx.mul(num, prev_inv)
                a[i][k] = ctx.zero_element()
            prev = pivot
        det = a[n - 1][n - 1]
        return det if sign > 0 else -det

    def is_unit(self, ctx: GaloisContext, a: AlgElement) -> bool:
        if ctx.mode is ContextMode.SPLIT:
            return all(a.coords)
        return not a.is_zero()

    def is_nonsingular_over_L(self, ctx: GaloisContext, m: TransitionMatrix) -> bool:
        return self.is_unit(ctx, self.algebra_determinant(ctx, m.entries))

    def is_generator(self, ctx: GaloisContext, N: RegularSubgroup, x: AlgElement) -> bool:
        return self.is_nonsingular_over_L(ctx, self.transition_matrix(ctx, N, x))

    def theorem_nbg_check(self, ctx: GaloisContext, x: AlgElement) -> bool:
        """is_generator(λ(G), x) == is_generator(ρ(G), x)"""
        lam, rho = self._verdicts(ctx, x)
        return lam == rho

    def _verdicts(self, ctx: GaloisContext, x: AlgElement) -> Tuple[bool, bool]:
        G = ctx.group
        lam = self.is_generator(ctx, group_service.left_regular(G), x)
        rho = self.is_generator(ctx, group_service.right_regular(G), x)
        return lam, rho

    def kg_rank_generator(self, ctx: GaloisContext, x: AlgElement) -> bool:
        """Direct test: {σ(x)} is a K-basis of L."""
        return rank([ctx.act(s, x).coords for s in ctx.group.elements()]) == ctx.dim

    # -- GL = Map(G, L) -----------------------------------------------------------

    def gl_embed(self, ctx: GaloisContext, x: AlgElement) -> Tuple[AlgElement, ...]:
        """f_x = Σ_g g(x)·u_g as the family g ↦ g(x)."""
        return tuple(ctx.act(g, x) for g in ctx.group.elements())

    def gl_act(self, ctx: GaloisContext, N: RegularSubgroup, k: int, f: Sequence[AlgElement]) -> Tuple[AlgElement, ...]:
        """η_k acting on Σ f_g u_g by moving subscripts: u_g ↦ u_{η_k(g)}."""
        if len(f) != N.order:
            raise DimensionMismatchError("family is not indexed by G", expected=N.order, actual=len(f))
        out: List[Optional[AlgElement]] = [None] * N.order
        eta = N.elements[k]
        for g, value in enumerate(f):
            out[eta(g)] = value
        return tuple(out)  # type: ignore[arg-type]

    def fixed_generator_check(self, ctx: GaloisContext, N: RegularSubgroup, x: AlgElement) -> bool:
        """x generates L over H_N: the K-rank of {h_i·x} over a basis of H_N is n."""
        algebra = hopf_service.hopf_algebra(ctx, N)
        images = [hopf_service.hopf_act(ctx, N, h, x).coords for h in algebra.basis]
        return rank(images) == ctx.dim

    def transpose_identity_check(self, ctx: GaloisContext, x: AlgElement) -> bool:
        """T_λ(x) equals the transpose of T_ρ(x) under element-indexed rows."""
        G = ctx.group
        t_lam = self.transition_matrix(ctx, group_service.left_regular(G), x)
        t_rho = self.transition_matrix(ctx, group_service.right_regular(G), x)
        return t_lam.entries == t_rho.transpose_entries()

    def row_spaces_equal(self, ctx: GaloisContext, x: AlgElement) -> bool:
        """Row spaces of T_λ(x) and T_ρ(x)ᵀ over L, compared through their K-spans.

        An L-row space is the K-span of the rows multiplied by every basis
        element of L, flattened to K-coordinates.
        """
        G = ctx.group
        t_lam = self.transition_matrix(ctx, group_service.left_regular(G), x).entries
        t_rho_t = self.transition_matrix(ctx, group_service.right_regular(G), x).transpose_entries()

        def k_span(rows: Sequence[Sequence[AlgElement]]) -> List[Tuple[Fraction, ...]]:
            out = []
            for row in rows:
                for b in range(ctx.dim):
                    e = ctx.basis_element(b)
                    out.append(tuple(c for a in row for c in ctx.mul(e, a).coords))
            return out

        span_lam = k_span(t_lam)
        span_rho = k_span(t_rho_t)
        r = rank(span_lam)
        return r == rank(span_rho) == rank(span_lam + span_rho)

    # -- sampling -----------------------------------------------------------------

    def random_element(self, ctx: GaloisContext, rng: random.Random, bound: Optional[int] = None) -> AlgElement:
        b = settings.random_coefficient_bound if bound is None else bound
        return AlgElement(tuple(Fraction(rng.randint(-b, b)) for _ in range(ctx.dim)))

    def sample_elements(self, ctx: GaloisContext, seed: int, count: int,
                        forced: Sequence[AlgElement] = ()) -> List[AlgElement]:
        """``forced`` elements come first, the rest are drawn from a seeded generator."""
        rng = random.Random(seed)
        samples = list(forced)[:count]
        while len(samples) < count:
            samples.append(self.random_element(ctx, rng))
        return samples

    def run_samples(self, ctx: GaloisContext, seed: int, count: int,
                    forced: Sequence[AlgElement] = ()) -> List[NbgSample]:
        results = []
        for i, x in enumerate(self.sample_elements(ctx, seed, count, forced)):
            lam, rho = self._verdicts(ctx, x)
            results.append(NbgSample(i, x, lam, rho))
            if lam != rho:
                logger.error("Generator verdicts disagree", index=i, x=x.to_document())
        logger.info("NBG samples evaluated", count=len(results), seed=seed,
                    agreements=sum(r.agrees for r in results))
        return results


nbg_service = NbgService()
