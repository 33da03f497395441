from fractions import Fraction

import pytest

from app.core.exceptions import FixtureValidationError, SingularSystemError
from app.entities.algebra import AlgElement
from app.services.galois_context_service import galois_context_service
from app.services.group_service import group_service
from app.services.nbg_service import nbg_service
from tests.conftest import random_element


def alpha(ctx):
    return ctx.basis_element(1)


def omega(ctx):
    return ctx.basis_element(3)


def test_split_context_traces(split_s3):
    assert split_s3.trace(split_s3.one_element()) == 6
    for i in range(6):
        assert split_s3.trace(split_s3.basis_element(i)) == 1


def test_split_action_moves_idempotents(split_s3, s3):
    for s in s3.elements():
        for g in s3.elements():
            assert split_s3.act(s, split_s3.basis_element(g)) == split_s3.basis_element(s3.mul(s, g))


def test_field_fixture_relations(field_s3):
    a, w = alpha(field_s3), omega(field_s3)
    cube = field_s3.mul(a, field_s3.mul(a, a))
    assert cube == field_s3.one_element().scale(2)
    w2 = field_s3.mul(w, w)
    assert w2 == -(field_s3.one_element() + w)
    assert field_s3.group.order == 6
    assert not field_s3.group.is_abelian()


def test_field_traces(field_s3):
    assert field_s3.trace(field_s3.one_element()) == 6
    assert field_s3.trace(alpha(field_s3)) == 0
    assert field_s3.trace(omega(field_s3)) == -3


def test_field_automorphisms_fix_only_rationals(field_s3):
    fixed = [i for i in range(6)
             if all(field_s3.act(s, field_s3.basis_element(i)) == field_s3.basis_element(i)
                    for s in field_s3.group.elements())]
    assert fixed == [0]


def test_inverse_in_field(field_s3):
    inv = galois_context_service.inverse_in_algebra(field_s3, alpha(field_s3))
    assert inv == AlgElement.of([0, 0, Fraction(1, 2), 0, 0, 0])
    with pytest.raises(SingularSystemError):
        galois_context_service.inverse_in_algebra(field_s3, field_s3.zero_element())


def test_zero_divisor_in_split_algebra_has_no_inverse(split_s3):
    with pytest.raises(SingularSystemError):
        galois_context_service.inverse_in_algebra(split_s3, split_s3.basis_element(0))


def test_dual_generator_split(split_s3):
    x = split_s3.basis_element(0)
    assert galois_context_service.dual_generator(split_s3, x) == x


def test_dual_generator_rejects_non_generators(split_s3):
    with pytest.raises(SingularSystemError):
        galois_context_service.dual_generator(split_s3, split_s3.one_element())


def test_dual_generator_field(field_s3, rng):
    generators = [x for x in (random_element(field_s3, rng) for _ in range(10))
                  if nbg_service.kg_rank_generator(field_s3, x)]
    assert generators
    for x in generators[:3]:
        xhat = galois_context_service.dual_generator(field_s3, x)
        assert galois_context_service.duality_grid_holds(field_s3, x, xhat)


def test_dual_basis(field_s3):
    basis = [field_s3.basis_element(i) for i in range(6)]
    dual = galois_context_service.dual_basis(field_s3, basis)
    for i, v in enumerate(basis):
        for j, w in enumerate(dual):
            assert field_s3.trace(field_s3.mul(v, w)) == int(i == j)


def test_context_document_round_trip(split_s3):
    doc = galois_context_service.context_to_document(split_s3)
    reloaded = galois_context_service.load_fixture(doc.model_dump())
    assert reloaded.mult == split_s3.mult
    assert reloaded.auto == split_s3.auto


def test_corrupt_automorphism_is_rejected():
    doc = galois_context_service.context_to_document(
        galois_context_service.split_context(group_service.catalog("C2"))).model_dump()
    doc["auto"]["r"] = [["1", "0"], ["0", "1"]]
    with pytest.raises(FixtureValidationError):
        galois_context_service.load_fixture(doc)


def test_non_multiplicative_automorphism_is_rejected(field_s3):
    doc = galois_context_service.cubic_field_document().model_dump()
    label = field_s3.group.label(1)
    matrix = [list(row) for row in doc["auto"][label]]
    matrix[0], matrix[1] = matrix[1], matrix[0]
    doc["auto"][label] = matrix
    with pytest.raises(FixtureValidationError):
        galois_context_service.load_fixture(doc)


def test_schema_errors_are_fixture_errors():
    with pytest.raises(FixtureValidationError) as exc:
        galois_context_service.load_fixture({"group": {"order": 1, "table": [[0]]}, "mult": []})
    assert exc.value.identity == "schema"


@pytest.mark.parametrize("name", ["split_s3", "field_s3"])
def test_trace_form_is_symmetric_and_galois_invariant(name, request, rng):
    ctx = request.getfixturevalue(name)
    for _ in range(4):
        a, b = random_element(ctx, rng), random_element(ctx, rng)
        pairing = ctx.trace(ctx.mul(a, b))
        assert pairing == ctx.trace(ctx.mul(b, a))
        for s in ctx.group.elements():
            assert ctx.trace(ctx.act(s, a)) == ctx.trace(a)
            assert ctx.trace(ctx.mul(ctx.act(s, a), ctx.act(s, b))) == pairing


@pytest.mark.parametrize("name", ["split_s3", "field_s3"])
def test_dual_basis_commutes_with_the_galois_action(name, request):
    ctx = request.getfixturevalue(name)
    # v_i = e_0 + ... + e_i is a basis
    vectors = []
    acc = ctx.zero_element()
    for i in range(ctx.dim):
        acc = acc + ctx.basis_element(i)
        vectors.append(acc)
    dual = galois_context_service.dual_basis(ctx, vectors)
    for s in ctx.group.elements():
        moved = galois_context_service.dual_basis(ctx, [ctx.act(s, v) for v in vectors])
        assert moved == [ctx.act(s, w) for w in dual]
