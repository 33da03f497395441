import pytest

from app.core.exceptions import DimensionMismatchError
from app.entities.algebra import AlgElement
from app.services.group_service import group_service
from app.services.nbg_service import nbg_service
from tests.conftest import random_element


def cofactor_det(ctx, m):
    if len(m) == 1:
        return m[0][0]
    total = ctx.zero_element()
    for j, a in enumerate(m[0]):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = ctx.mul(a, cofactor_det(ctx, minor))
        total = total + term if j % 2 == 0 else total - term
    return total


def test_field_determinant_matches_cofactor_expansion(field_s3, rng):
    for size in (2, 3):
        m = [[random_element(field_s3, rng, bound=2) for _ in range(size)] for _ in range(size)]
        assert nbg_service.algebra_determinant(field_s3, m) == cofactor_det(field_s3, m)


def test_split_determinant_is_componentwise(split_s3, rng):
    m = [[random_element(split_s3, rng) for _ in range(3)] for _ in range(3)]
    assert nbg_service.algebra_determinant(split_s3, m) == cofactor_det(split_s3, m)


def test_determinant_rejects_ragged_rows(split_s3):
    one = split_s3.one_element()
    with pytest.raises(DimensionMismatchError):
        nbg_service.algebra_determinant(split_s3, [[one, one], [one]])


def test_idempotent_generates_split_algebra(split_s3):
    x = split_s3.basis_element(0)
    assert nbg_service.kg_rank_generator(split_s3, x)
    assert nbg_service.is_generator(split_s3, group_service.left_regular(split_s3.group), x)
    assert nbg_service.is_generator(split_s3, group_service.right_regular(split_s3.group), x)


def test_zero_divisor_determinant_is_not_a_unit(split_s3):
    x = AlgElement.of([1, 1, 1, 0, 0, 0])
    assert not nbg_service.is_generator(split_s3, group_service.left_regular(split_s3.group), x)
    assert not nbg_service.kg_rank_generator(split_s3, x)


@pytest.mark.parametrize("name", ["split_s3", "field_s3"])
def test_transpose_identity(name, request, rng):
    ctx = request.getfixturevalue(name)
    for _ in range(3):
        x = random_element(ctx, rng)
        assert nbg_service.transpose_identity_check(ctx, x)
        assert nbg_service.row_spaces_equal(ctx, x)


def test_split_samples_agree(split_s3):
    samples = nbg_service.run_samples(split_s3, seed=3, count=40)
    assert len(samples) == 40
    assert all(s.agrees for s in samples)
    assert any(s.verdict_lambda for s in samples)


def test_field_samples_agree(field_s3):
    samples = nbg_service.run_samples(field_s3, seed=5, count=10)
    assert all(s.agrees for s in samples)
    for s in samples:
        assert s.verdict_lambda == nbg_service.kg_rank_generator(field_s3, s.x)


def test_forced_zero_sample(split_s3):
    (sample,) = nbg_service.run_samples(split_s3, seed=0, count=1, forced=[split_s3.zero_element()])
    assert sample.x.is_zero()
    assert not sample.verdict_lambda and not sample.verdict_rho
    assert sample.agrees


def test_sampling_is_reproducible(split_s3):
    first = nbg_service.sample_elements(split_s3, seed=9, count=5)
    second = nbg_service.sample_elements(split_s3, seed=9, count=5)
    assert first == second


def test_fixed_generators_match_transition_matrices(split_s3, rng):
    G = split_s3.group
    for N in (group_service.left_regular(G), group_service.right_regular(G)):
        for _ in range(4):
            x = random_element(split_s3, rng, bound=1)
            assert nbg_service.fixed_generator_check(split_s3, N, x) == nbg_service.is_generator(split_s3, N, x)


def test_gl_action_respects_composition(split_s3, rng):
    G = split_s3.group
    lam = group_service.left_regular(G)
    f = nbg_service.gl_embed(split_s3, random_element(split_s3, rng))
    for k in G.elements():
        for l in G.elements():
            assert (nbg_service.gl_act(split_s3, lam, k, nbg_service.gl_act(split_s3, lam, l, f))
                    == nbg_service.gl_act(split_s3, lam, lam.closure_table[k][l], f))


def test_gl_embed_is_additive(split_s3, rng):
    x, y = random_element(split_s3, rng), random_element(split_s3, rng)
    summed = nbg_service.gl_embed(split_s3, x + y)
    pointwise = tuple(a + b for a, b in zip(nbg_service.gl_embed(split_s3, x), nbg_service.gl_embed(split_s3, y)))
    assert summed == pointwise


def test_field_determinant_of_a_singular_matrix_is_zero(field_s3, rng):
    row = [random_element(field_s3, rng) for _ in range(3)]
    other = [random_element(field_s3, rng) for _ in range(3)]
    scaled = [field_s3.mul(row[0], a) for a in row]
    assert nbg_service.algebra_determinant(field_s3, [row, other, scaled]).is_zero()


@pytest.mark.parametrize("name", ["split_d4", "split_q8", "field_s3"])
def test_two_hundred_seeded_samples_agree(name, request):
    ctx = request.getfixturevalue(name)
    samples = nbg_service.run_samples(ctx, seed=0, count=200)
    assert len(samples) == 200
    assert all(s.agrees for s in samples)


@pytest.mark.parametrize("name", ["split_s3", "field_s3"])
def test_generator_verdict_is_invariant_under_the_galois_action(name, request, rng):
    ctx = request.getfixturevalue(name)
    G = ctx.group
    for _ in range(3):
        x = random_element(ctx, rng, bound=1)
        for N in (group_service.left_regular(G), group_service.right_regular(G)):
            verdict = nbg_service.is_generator(ctx, N, x)
            assert all(nbg_service.is_generator(ctx, N, ctx.act(s, x)) == verdict for s in G.elements())


def test_gl_action_moves_the_embedded_element(split_s3, rng):
    G = split_s3.group
    x = random_element(split_s3, rng)
    f = nbg_service.gl_embed(split_s3, x)
    for N in (group_service.left_regular(G), group_service.right_regular(G)):
        for k, eta in enumerate(N.elements):
            back = eta.inverse()
            assert nbg_service.gl_act(split_s3, N, k, f) == tuple(split_s3.act(back(g), x) for g in G.elements())
