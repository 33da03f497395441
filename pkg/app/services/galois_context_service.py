"""
Galois context service: builds and loads validated contexts L/K and provides
the trace-form machinery (dual generators, dual bases, inverses in L).
"""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence, Union

import structlog
from pydantic import ValidationError

from app.core.exceptions import (
    DimensionMismatchError,
    FixtureValidationError,
    InternalConsistencyError,
    SingularSystemError,
)
from app.core.linear_algebra import det_and_nonsingular, format_scalar, inverse, solve_right, to_scalar
from app.entities.algebra import AlgElement, GaloisContext
from app.entities.group import FiniteGroup
from app.entities.matrix import Matrix
from app.models.enums import ContextMode
from app.schemas.fixture_schemas import ContextDocument, GroupDocument

logger = structlog.get_logger()

# automorphisms of Q(2^(1/3), ω): (a, e) sends α to ω^a·α and ω to ω^e
_CUBIC_AUTOMORPHISMS = ((0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2))
_CUBIC_LABELS = ("1", "s", "s2", "t", "st", "s2t")


def _scalar(value: Any) -> Fraction:
    try:
        return to_scalar(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise FixtureValidationError("malformed scalar", identity="scalar_format", value=value)


class GaloisContextService:
    """Service layer for Galois contexts and trace-form duality."""

    # -- groups -------------------------------------------------------------------

    def group_from_document(self, doc: Union[GroupDocument, Mapping[str, Any]]) -> FiniteGroup:
        if not isinstance(doc, GroupDocument):
            try:
                doc = GroupDocument.model_validate(doc)
            except ValidationError as exc:
                raise FixtureValidationError("group document does not match the schema",
                                             identity="schema", errors=exc.error_count())
        labels = tuple(doc.labels) if doc.labels else ()
        return FiniteGroup(doc.order, tuple(tuple(r) for r in doc.table), doc.identity, labels)

    def group_to_document(self, G: FiniteGroup) -> GroupDocument:
        return GroupDocument(order=G.order, identity=G.identity,
                             table=[list(r) for r in G.table], labels=list(G.labels))

    # -- construction -------------------------------------------------------------

    def split_context(self, G: FiniteGroup) -> GaloisContext:
        """Map(G, K) with idempotent basis u_g and σ(u_g) = u_{σg}."""
        n = G.order
        zero = Fraction(0)
        unit = Fraction(1)
        mult = tuple(
            tuple(tuple(unit if (i == j == k) else zero for k in range(n)) for j in range(n))
            for i in range(n))
        one = (unit,) * n
        auto = tuple(
            Matrix.from_rows([[int(r == G.mul(s, c)) for c in range(n)] for r in range(n)])
            for s in G.elements())
        ctx = GaloisContext(G, n, mult, one, auto, ContextMode.SPLIT)
        logger.info("Split context validated", order=n)
        return ctx

    def load_fixture(self, doc: Union[ContextDocument, Mapping[str, Any]]) -> GaloisContext:
        """Validate a context document; any failed identity rejects it."""
        if not isinstance(doc, ContextDocument):
            try:
                doc = ContextDocument.model_validate(doc)
            except ValidationError as exc:
                raise FixtureValidationError("context document does not match the schema",
                                             identity="schema", errors=exc.error_count())
        G = self.group_from_document(doc.group)
        n = G.order
        mult = tuple(tuple(tuple(_scalar(x) for x in v) for v in row) for row in doc.mult)
        one = tuple(_scalar(x) for x in doc.one)
        missing = [G.label(s) for s in G.elements() if G.label(s) not in doc.auto]
        if missing or len(doc.auto) != n:
            raise FixtureValidationError("automorphisms must be keyed by exactly the group labels",
                                         identity="auto_shape", missing=missing)
        auto = []
        for s in G.elements():
            rows = [[_scalar(x) for x in row] for row in doc.auto[G.label(s)]]
            try:
                auto.append(Matrix.from_rows(rows))
            except DimensionMismatchError as exc:
                raise FixtureValidationError("automorphism matrix is ragged",
                                             identity="auto_shape", sigma=G.label(s), error=str(exc))
        ctx = GaloisContext(G, n, mult, one, tuple(auto), doc.mode)
        logger.info("Context fixture validated", mode=doc.mode.value, dim=n)
        return ctx

    def context_to_document(self, ctx: GaloisContext) -> ContextDocument:
        G = ctx.group
        return ContextDocument(
            group=self.group_to_document(G),
            mode=ctx.mode,
            mult=[[[format_scalar(x) for x in v] for v in row] for row in ctx.mult],
            one=[format_scalar(x) for x in ctx.one],
            auto={G.label(s): ctx.auto[s].to_document() for s in G.elements()},
        )

    def cubic_field_document(self) -> ContextDocument:
        """
        The splitting field of x³ − 2 over Q as Q(α)⊗Q(ω), α³ = 2, ω² = −1 − ω.

        Uses the product basis α^i·ω^j (index i + 3j), not the power basis of a
        primitive element. The group table is read off from composition of the
        automorphism matrices.
        """

        def omega_power(m: int) -> Dict[int, int]:
            m %= 3
            if m == 0:
                return {0: 1}
            if m == 1:
                return {1: 1}
            return {0: -1, 1: -1}

        def basis_product(p: int, q: int) -> List[int]:
            i, j = p % 3, p // 3
            k, l = q % 3, q // 3
            a_exp, a_coeff = i + k, 1
            if a_exp >= 3:
                a_exp, a_coeff = a_exp - 3, 2
            out = [0] * 6
            for w, c in omega_power(j + l).items():
                out[a_exp + 3 * w] += a_coeff * c
            return out

        def matrix_for(a: int, e: int) -> List[List[int]]:
            cols = []
            for p in range(6):
                i, j = p % 3, p // 3
                col = [0] * 6
                for w, c in omega_power(a * i + e * j).items():
                    col[i + 3 * w] += c
                cols.append(col)
            return [[cols[c][r] for c in range(6)] for r in range(6)]

        matrices = [Matrix.from_rows(matrix_for(a, e)) for a, e in _CUBIC_AUTOMORPHISMS]
        table = []
        for mp in matrices:
            row = []
            for mq in matrices:
                product = mp @ mq
                row.append(next(r for r, mr in enumerate(matrices) if mr == product))
            table.append(row)
        return ContextDocument(
            group=GroupDocument(order=6, identity=0, table=table, labels=list(_CUBIC_LABELS)),
            mode=ContextMode.FIELD,
            mult=[[[str(x) for x in basis_product(p, q)] for q in range(6)] for p in range(6)],
            one=["1"] + ["0"] * 5,
            auto={label: m.to_document() for label, m in zip(_CUBIC_LABELS, matrices)},
        )

    def cubic_field_context(self) -> GaloisContext:
        return self.load_fixture(self.cubic_field_document())

    # -- arithmetic ---------------------------------------------------------------

    def mul(self, ctx: GaloisContext, a: AlgElement, b: AlgElement) -> AlgElement:
        return ctx.mul(a, b)

    def act(self, ctx: GaloisContext, sigma: int, a: AlgElement) -> AlgElement:
        return ctx.act(sigma, a)

    def trace(self, ctx: GaloisContext, a: AlgElement) -> Fraction:
        return ctx.trace(a)

    def inverse_in_algebra(self, ctx: GaloisContext, a: AlgElement) -> AlgElement:
        """Multiplicative inverse in L; raises when a is a zero divisor."""
        w = solve_right(ctx.mult_matrix(a), ctx.one)
        if w is None:
            raise SingularSystemError("element is not invertible", {"element": a.to_document()})
        inv = AlgElement(w)
        if ctx.mul(a, inv) != ctx.one_element():
            raise SingularSystemError("element is not invertible", {"element": a.to_document()})
        return inv

    def divide(self, ctx: GaloisContext, a: AlgElement, b: AlgElement) -> AlgElement:
        return ctx.mul(a, self.inverse_in_algebra(ctx, b))

    # -- duality ------------------------------------------------------------------

    def _trace_functional(self, ctx: GaloisContext, y: AlgElement) -> List[Fraction]:
        """Row of Tr(e_i·y) over the context basis."""
        return [ctx.trace(ctx.mul(ctx.basis_element(i), y)) for i in range(ctx.dim)]

    def dual_generator(self, ctx: GaloisContext, x: AlgElement) -> AlgElement:
        """
        x̂ with Tr(σ(x̂)·τ(x)) = δ_{σ,τ}.

        Solves Tr(x̂·g(x)) = δ_{g,1} over g ∈ G; G-translation gives the
        remaining equations, which are then checked over all pairs.
        """
        G = ctx.group
        rows = [self._trace_functional(ctx, ctx.act(g, x)) for g in G.elements()]
        rhs = [Fraction(int(g == G.identity)) for g in G.elements()]
        if not det_and_nonsingular(rows)[1]:
            raise SingularSystemError("x does not generate a normal basis", {"x": x.to_document()})
        w = solve_right(rows, rhs)
        if w is None:
            raise SingularSystemError("dual generator system is inconsistent", {"x": x.to_document()})
        xhat = AlgElement(w)
        if not self.duality_grid_holds(ctx, x, xhat):
            raise InternalConsistencyError("dual generator fails the duality grid",
                                           {"x": x.to_document()})
        return xhat

    def duality_grid_holds(self, ctx: GaloisContext, x: AlgElement, xhat: AlgElement) -> bool:
        G = ctx.group
        xs = [ctx.act(t, x) for t in G.elements()]
        xhats = [ctx.act(s, xhat) for s in G.elements()]
        return all(ctx.trace(ctx.mul(xhats[s], xs[t])) == int(s == t)
                   for s in G.elements() for t in G.elements())

    def dual_basis(self, ctx: GaloisContext, vectors: Sequence[AlgElement]) -> List[AlgElement]:
        """w_j with Tr(v_i·w_j) = δ_{i,j} for a K-basis v_1..v_n of L."""
        gram = [self._trace_functional(ctx, v) for v in vectors]
        try:
            w = inverse([[gram[i][k] for i in range(len(gram))] for k in range(ctx.dim)])
        except SingularSystemError:
            raise SingularSystemError("vectors do not form a basis of L", {"count": len(vectors)})
        # rows of (Gramᵀ)⁻¹ are the coordinates of the dual vectors
        return [AlgElement(tuple(w[j])) for j in range(ctx.dim)]


galois_context_service = GaloisContextService()
