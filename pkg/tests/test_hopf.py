import pytest

from app.core.exceptions import UnverifiedElementError
from app.entities.hopf_elements import GroupAlgebraElement, HopfElement, LNElement
from app.services.galois_context_service import galois_context_service
from app.services.group_service import group_service
from app.services.hopf_service import hopf_service
from tests.conftest import random_element


@pytest.fixture(params=["split", "field"])
def ctx(request, split_s3, field_s3):
    return split_s3 if request.param == "split" else field_s3


def test_hopf_algebras_have_dimension_n(ctx):
    census = group_service.enumerate_regular_subgroups(ctx.group)
    assert hopf_service.dimension_check(ctx, census)


def test_basis_elements_are_fixed(ctx):
    algebra = hopf_service.lambda_algebra(ctx)
    lam = algebra.subgroup
    assert algebra.order == 6
    for h in algebra.basis:
        assert h.fixed_verified
        assert hopf_service.is_fixed(ctx, lam, h.value)
        assert algebra.coordinates(h.value) is not None


def test_identity_acts_trivially(ctx, rng):
    lam = group_service.left_regular(ctx.group)
    one = hopf_service.identity_element(ctx, lam)
    x = random_element(ctx, rng)
    assert hopf_service.hopf_act(ctx, lam, one, x) == x
    assert hopf_service.counit(ctx, one) == 1
    assert hopf_service.antipode(ctx, lam, one).value == one.value


def test_action_is_a_module_action(ctx, rng):
    algebra = hopf_service.lambda_algebra(ctx)
    lam = algebra.subgroup
    x = random_element(ctx, rng)
    for h1 in algebra.basis[:3]:
        for h2 in algebra.basis:
            product = hopf_service.hopf_mul(ctx, lam, h1, h2)
            assert algebra.coordinates(product.value) is not None
            assert (hopf_service.hopf_act(ctx, lam, product, x)
                    == hopf_service.hopf_act(ctx, lam, h1, hopf_service.hopf_act(ctx, lam, h2, x)))


def test_action_commutes_with_group_algebra(ctx, rng):
    algebra = hopf_service.lambda_algebra(ctx)
    lam = algebra.subgroup
    n = ctx.group.order
    z = GroupAlgebraElement.of([rng.randint(-2, 2) for _ in range(n)])
    t = random_element(ctx, rng)
    for h in algebra.basis:
        assert hopf_service.interchange_check(ctx, lam, h, z, t)


def test_right_regular_image_acts_like_the_group_algebra(ctx, rng):
    rho = group_service.right_regular(ctx.group)
    z = GroupAlgebraElement.of([rng.randint(-2, 2) for _ in range(ctx.group.order)])
    x = random_element(ctx, rng)
    h = hopf_service.group_algebra_image(ctx, rho, z)
    assert hopf_service.hopf_act(ctx, rho, h, x) == hopf_service.kg_act(ctx, z, x)


def test_counit_and_antipode_stay_in_the_algebra(ctx):
    algebra = hopf_service.lambda_algebra(ctx)
    lam = algebra.subgroup
    for h in algebra.basis:
        hopf_service.counit(ctx, h)
        assert algebra.coordinates(hopf_service.antipode(ctx, lam, h).value) is not None


def test_unfixed_elements_are_refused(split_s3):
    lam = group_service.left_regular(split_s3.group)
    # a reflection is not central, so one·λ(s) is moved by conjugation
    s = split_s3.group.index_of("s")
    term = LNElement.term(6, s, split_s3.one_element())
    assert not hopf_service.is_fixed(split_s3, lam, term)
    with pytest.raises(UnverifiedElementError):
        hopf_service.verify_fixed(split_s3, lam, term)
    with pytest.raises(UnverifiedElementError):
        hopf_service.hopf_act(split_s3, lam, HopfElement(term), split_s3.one_element())


def test_abelian_group_hopf_algebra_is_the_group_algebra():
    c3 = group_service.catalog("C3")
    ctx = galois_context_service.split_context(c3)
    lam = group_service.left_regular(c3)
    for g in c3.elements():
        term = LNElement.term(3, g, ctx.one_element())
        assert hopf_service.is_fixed(ctx, lam, term)


def test_kg_multiplication(split_s3, s3):
    r, s = s3.index_of("r"), s3.index_of("s")
    a = GroupAlgebraElement.group_element(6, r)
    b = GroupAlgebraElement.group_element(6, s)
    assert hopf_service.kg_mul(split_s3, a, b) == GroupAlgebraElement.group_element(6, s3.mul(r, s))


def test_twist_by_inverse_undoes_twist(ctx, rng):
    G = ctx.group
    for N in group_service.enumerate_regular_subgroups(G):
        h = LNElement(tuple(random_element(ctx, rng, bound=2) for _ in range(N.order)))
        for g in G.elements():
            assert hopf_service.g_twist(ctx, N, G.inv(g), hopf_service.g_twist(ctx, N, g, h)) == h


def test_interchange_holds_for_every_basis_element(ctx):
    n = ctx.group.order
    for N in group_service.enumerate_regular_subgroups(ctx.group):
        for h in hopf_service.hopf_algebra(ctx, N).basis:
            for g in ctx.group.elements():
                z = GroupAlgebraElement.group_element(n, g)
                for i in range(ctx.dim):
                    assert hopf_service.interchange_check(ctx, N, h, z, ctx.basis_element(i))


def test_algebra_cache_is_keyed_by_content():
    G = group_service.catalog("S3")
    first = galois_context_service.split_context(G)
    second = galois_context_service.split_context(G)
    assert first == second
    assert hash(first) == hash(second)
    reloaded = galois_context_service.load_fixture(galois_context_service.context_to_document(first))
    assert reloaded == first
    lam = group_service.left_regular(G)
    assert hopf_service.hopf_algebra(first, lam) is hopf_service.hopf_algebra(second, lam)
    assert hopf_service.hopf_algebra(reloaded, lam) == hopf_service.hopf_algebra(first, lam)


def test_contexts_of_different_groups_are_distinct():
    s3 = galois_context_service.split_context(group_service.catalog("S3"))
    c6 = galois_context_service.split_context(group_service.catalog("C6"))
    assert s3 != c6
