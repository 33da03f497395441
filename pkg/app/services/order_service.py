"""
Order service: G-stable lattices, associated orders in K[G] and H_λ,
freeness certificates, bounded generator search and the Hopf-order test.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, List, Optional, Sequence, Tuple

import structlog

from app.core.exceptions import (
    DimensionMismatchError,
    FixtureValidationError,
    InstabilityError,
    InternalConsistencyError,
    PreconditionError,
)
from app.core.linear_algebra import (
    Vector,
    common_denominator,
    first_independent_rows,
    format_scalar,
    hnf,
    integer_determinant,
    inverse,
    kronecker_rows,
    transpose,
    vec_mat,
)
from app.entities.algebra import AlgElement, GaloisContext, sum_elements
from app.entities.hopf_elements import GroupAlgebraElement, HopfAlgebra
from app.entities.lattice import IntegralLattice, lattice_equal
from app.entities.order import FreenessCertificate, GStableLattice, HopfOrderVerdict, OrderLattice
from app.models.enums import OrderAmbient
from app.services.hopf_service import hopf_service

logger = structlog.get_logger()

TensorSolver = Callable[[Sequence[Fraction]], Optional[Vector]]


class OrderService:
    """Service layer for lattices and orders acting on them."""

    # -- ambient algebra plumbing ---------------------------------------------------

    def ambient_action(self, ctx: GaloisContext, ambient: OrderAmbient, coords: Sequence[Fraction],
                       x: AlgElement) -> AlgElement:
        """Action on L of the ambient element with the given coordinates."""
        if ambient is OrderAmbient.GROUP_ALGEBRA:
            return hopf_service.kg_act(ctx, GroupAlgebraElement(tuple(coords)), x)
        algebra = hopf_service.lambda_algebra(ctx)
        return hopf_service.hopf_act(ctx, algebra.subgroup, algebra.element(coords), x)

    def _basis_action(self, ctx: GaloisContext, ambient: OrderAmbient, i: int, x: AlgElement) -> AlgElement:
        if ambient is OrderAmbient.GROUP_ALGEBRA:
            return ctx.act(i, x)
        algebra = hopf_service.lambda_algebra(ctx)
        return hopf_service.hopf_act(ctx, algebra.subgroup, algebra.basis[i], x)

    def ambient_mul(self, ctx: GaloisContext, ambient: OrderAmbient, u: Sequence[Fraction],
                    v: Sequence[Fraction]) -> Vector:
        if ambient is OrderAmbient.GROUP_ALGEBRA:
            return hopf_service.kg_mul(ctx, GroupAlgebraElement(tuple(u)), GroupAlgebraElement(tuple(v))).coeffs
        algebra = hopf_service.lambda_algebra(ctx)
        prod = hopf_service.hopf_mul(ctx, algebra.subgroup, algebra.element(u), algebra.element(v))
        return algebra.require_coordinates(prod.value)

    def ambient_identity(self, ctx: GaloisContext, ambient: OrderAmbient) -> Vector:
        if ambient is OrderAmbient.GROUP_ALGEBRA:
            return GroupAlgebraElement.group_element(ctx.group.order, ctx.group.identity).coeffs
        algebra = hopf_service.lambda_algebra(ctx)
        return algebra.require_coordinates(hopf_service.identity_element(ctx, algebra.subgroup).value)

    # -- lattices in L --------------------------------------------------------------

    def check_g_stable(self, ctx: GaloisContext, B: IntegralLattice) -> GStableLattice:
        """Exhaustive σ × basis-vector membership check."""
        if B.ambient_dim != ctx.dim:
            raise DimensionMismatchError("lattice does not live in L", expected=ctx.dim, actual=B.ambient_dim)
        for s in ctx.group.elements():
            for v in B.vectors():
                image = ctx.act(s, AlgElement(v))
                if not B.contains(image.coords):
                    raise InstabilityError("lattice is not carried into itself by the group",
                                           sigma=ctx.group.label(s),
                                           vector=[format_scalar(x) for x in v])
        return GStableLattice(B, stability_verified=True)

    def _coordinate_map(self, B: IntegralLattice) -> Tuple[Vector, ...]:
        """Inverse of the basis matrix: v ↦ vec_mat(v, result) gives B-coordinates."""
        return inverse(B.vectors())

    # -- associated orders ----------------------------------------------------------

    def associated_order(self, ctx: GaloisContext, ambient: OrderAmbient, B: GStableLattice) -> OrderLattice:
        """
        The multiplier lattice {z : z·𝔅 ⊆ 𝔅}.

        M has one row per ambient basis element, holding the 𝔅-coordinates of
        its action on every basis vector of 𝔅. With D clearing M's
        denominators and H the HNF of the column lattice of D·M, the order is
        rowspan(D·(Hᵀ)⁻¹).
        """
        if not B.stability_verified:
            raise PreconditionError("associated order requires a verified G-stable lattice")
        n = ctx.dim
        coord_map = self._coordinate_map(B.lattice)
        b_vectors = [AlgElement(v) for v in B.lattice.vectors()]
        m_rows = []
        for i in range(ctx.group.order):
            row: List[Fraction] = []
            for b in b_vectors:
                row.extend(vec_mat(self._basis_action(ctx, ambient, i, b).coords, coord_map))
            m_rows.append(row)
        d = common_denominator(x for row in m_rows for x in row)
        columns = [[int(x * d) for x in col] for col in transpose(m_rows)]
        h = hnf(columns)
        if len(h) != n:
            raise InternalConsistencyError("action is not faithful on the lattice",
                                           {"ambient": ambient.value, "rank": len(h)})
        generators = [[x * d for x in row] for row in inverse(transpose(h))]
        lattice = IntegralLattice.from_rational_rows(generators, dim=n)
        ring_ok = self.ring_check(ctx, ambient, lattice)
        if not ring_ok:
            raise InternalConsistencyError("associated order is not closed under multiplication",
                                           {"ambient": ambient.value})
        logger.info("Associated order computed", ambient=ambient.value,
                    covolume=format_scalar(lattice.covolume()))
        return OrderLattice(ambient, lattice, ring_verified=True)

    def associated_order_kg(self, ctx: GaloisContext, B: GStableLattice) -> OrderLattice:
        return self.associated_order(ctx, OrderAmbient.GROUP_ALGEBRA, B)

    def associated_order_hlambda(self, ctx: GaloisContext, B: GStableLattice) -> OrderLattice:
        return self.associated_order(ctx, OrderAmbient.HOPF_LAMBDA, B)

    def ring_check(self, ctx: GaloisContext, ambient: OrderAmbient, lattice: IntegralLattice) -> bool:
        """Contains the identity and is closed under products of basis elements."""
        if not lattice.contains(self.ambient_identity(ctx, ambient)):
            return False
        vectors = lattice.vectors()
        return all(lattice.contains(self.ambient_mul(ctx, ambient, u, v))
                   for u in vectors for v in vectors)

    def order_from_basis(self, ctx: GaloisContext, ambient: OrderAmbient,
                         rows: Sequence[Sequence[Fraction]]) -> OrderLattice:
        """Hand-built order; the ring property is computed, never assumed."""
        lattice = IntegralLattice.from_rational_rows(rows, dim=ctx.group.order)
        return OrderLattice(ambient, lattice, self.ring_check(ctx, ambient, lattice))

    # -- freeness -------------------------------------------------------------------

    def verify_freeness(self, ctx: GaloisContext, A: OrderLattice, B: GStableLattice,
                        x: AlgElement) -> Optional[FreenessCertificate]:
        if not B.lattice.contains(x.coords):
            raise PreconditionError("candidate generator is not in the lattice", {"x": x.to_document()})
        basis = A.lattice.vectors()
        images = tuple(self.ambient_action(ctx, A.ambient, a, x) for a in basis)
        if not self._images_span(images, B.lattice):
            return None
        return FreenessCertificate(x, A.ambient, basis, images)

    def _images_span(self, images: Sequence[AlgElement], B: IntegralLattice) -> bool:
        try:
            spanned = IntegralLattice.from_rational_rows([img.coords for img in images], dim=B.ambient_dim)
        except FixtureValidationError:
            return False
        return lattice_equal(spanned, B)

    def revalidate_certificate(self, ctx: GaloisContext, A: OrderLattice, B: GStableLattice,
                               cert: FreenessCertificate) -> bool:
        """Re-check a certificate from scratch against A and 𝔅."""
        n = ctx.dim
        if cert.ambient is not A.ambient or len(cert.order_basis) != n or len(cert.images) != n:
            return False
        if not B.lattice.contains(cert.generator.coords):
            return False
        for a, image in zip(cert.order_basis, cert.images):
            if not A.lattice.contains(a):
                return False
            if self.ambient_action(ctx, A.ambient, a, cert.generator) != image:
                return False
            if not B.lattice.contains(image.coords):
                return False
        return self._images_span(cert.images, B.lattice)

    def _integral_action_matrices(self, ctx: GaloisContext, A: OrderLattice,
                                  B: GStableLattice) -> List[List[List[int]]]:
        """R_i[j] = 𝔅-coordinates of a_i·b_j; integral because A preserves 𝔅."""
        coord_map = self._coordinate_map(B.lattice)
        b_vectors = [AlgElement(v) for v in B.lattice.vectors()]
        mats = []
        for a in A.lattice.vectors():
            rows = []
            for b in b_vectors:
                coords = vec_mat(self.ambient_action(ctx, A.ambient, a, b).coords, coord_map)
                if any(c.denominator != 1 for c in coords):
                    raise PreconditionError("order does not preserve the lattice",
                                            {"ambient": A.ambient.value})
                rows.append([int(c) for c in coords])
            mats.append(rows)
        return mats

    def search_generator(self, ctx: GaloisContext, A: OrderLattice, B: GStableLattice,
                         box: int) -> Optional[AlgElement]:
        """
        First x = Σ c_j b_j with c in [−box, box]^n, ordered by (Σ|c_j|, c),
        that passes verify_freeness. None means nothing was found in the box.
        """
        if box < 1:
            return None
        n = ctx.dim
        mats = self._integral_action_matrices(ctx, A, B)
        b_vectors = [AlgElement(v) for v in B.lattice.vectors()]
        candidates = sorted(
            (c for c in product(range(-box, box + 1), repeat=n) if any(c)),
            key=lambda c: (sum(abs(x) for x in c), c))
        tried = 0
        for c in candidates:
            rows = []
            for r in mats:
                acc = [0] * n
                for cj, row in zip(c, r):
                    if cj:
                        for l, v in enumerate(row):
                            acc[l] += cj * v
                rows.append(acc)
            if abs(integer_determinant(rows)) != 1:
                continue
            tried += 1
            x = sum_elements((b.scale(cj) for cj, b in zip(c, b_vectors) if cj), n)
            if self.verify_freeness(ctx, A, B, x) is not None:
                logger.info("Generator found", ambient=A.ambient.value, coefficients=list(c))
                return x
        logger.info("No generator within box", ambient=A.ambient.value, box=box, verified=tried)
        return None

    # -- Hopf orders ----------------------------------------------------------------

    @lru_cache(maxsize=16)
    def _tensor_solver(self, ctx: GaloisContext, algebra: HopfAlgebra) -> TensorSolver:
        """
        Coordinates in the K-basis {h_i ⊗ h_j} of H⊗H inside L[N×N].

        A set of independent equations is fixed once and its square system
        inverted; every solution is then checked against all equations.
        """
        n = algebra.order
        values = [h.value.coeffs for h in algebra.basis]
        columns = []
        for i in range(n):
            for j in range(n):
                col: List[Fraction] = []
                for k in range(n):
                    for l in range(n):
                        col.extend(ctx.mul(values[i][k], values[j][l]).coords)
                columns.append(col)
        rows = transpose(columns)
        picked = first_independent_rows(rows)
        if len(picked) != n * n:
            raise InternalConsistencyError("tensor basis is degenerate", {"rank": len(picked)})
        square_inv = inverse([rows[r] for r in picked])

        def solve(v: Sequence[Fraction]) -> Optional[Vector]:
            sub = [v[r] for r in picked]
            coords = tuple(sum((a * b for a, b in zip(inv_row, sub) if a), Fraction(0))
                           for inv_row in square_inv)
            for row, target in zip(rows, v):
                if sum((a * b for a, b in zip(row, coords) if a), Fraction(0)) != target:
                    return None
            return coords

        return solve

    def _comultiply_hlambda(self, ctx: GaloisContext, algebra: HopfAlgebra, coords: Sequence[Fraction]) -> Vector:
        """Δ(Σ c_η η) = Σ c_η η⊗η in the h_i⊗h_j coordinates."""
        n = algebra.order
        value = algebra.element(coords).value
        zero = (Fraction(0),) * ctx.dim
        flat: List[Fraction] = []
        for k in range(n):
            for l in range(n):
                flat.extend(value.coeffs[k].coords if k == l else zero)
        solved = self._tensor_solver(ctx, algebra)(flat)
        if solved is None:
            raise InternalConsistencyError("comultiplication leaves H⊗H")
        return solved

    def hopf_order_verdict(self, ctx: GaloisContext, A: OrderLattice) -> HopfOrderVerdict:
        if not A.ring_verified:
            raise PreconditionError("Hopf-order test requires a verified order")
        n = ctx.group.order
        G = ctx.group
        vectors = A.lattice.vectors()
        tensor = IntegralLattice.from_rational_rows(kronecker_rows(vectors, vectors), dim=n * n)
        if A.ambient is OrderAmbient.GROUP_ALGEBRA:
            def delta(z: Vector) -> Vector:
                out = [Fraction(0)] * (n * n)
                for g, c in enumerate(z):
                    out[g * n + g] = c
                return tuple(out)

            comult = all(tensor.contains(delta(z)) for z in vectors)
            counit = all(sum(z, Fraction(0)).denominator == 1 for z in vectors)
            antipode = all(A.lattice.contains(tuple(z[G.inv(g)] for g in G.elements())) for z in vectors)
        else:
            algebra = hopf_service.lambda_algebra(ctx)
            N = algebra.subgroup
            comult = all(tensor.contains(self._comultiply_hlambda(ctx, algebra, z)) for z in vectors)
            counit = all(hopf_service.counit(ctx, algebra.element(z)).denominator == 1 for z in vectors)
            antipode = all(
                A.lattice.contains(algebra.require_coordinates(
                    hopf_service.antipode(ctx, N, algebra.element(z)).value))
                for z in vectors)
        verdict = HopfOrderVerdict(comult, counit, antipode)
        logger.info("Hopf order test", ambient=A.ambient.value, comultiplication=comult,
                    counit=counit, antipode=antipode)
        return verdict

    def is_hopf_order(self, ctx: GaloisContext, A: OrderLattice) -> bool:
        return self.hopf_order_verdict(ctx, A).is_hopf


order_service = OrderService()
