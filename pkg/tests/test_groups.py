from itertools import permutations

import pytest

from app.core.config import Settings, settings
from app.core.exceptions import BudgetExceededError, FixtureValidationError
from app.entities.group import FiniteGroup, Permutation, RegularSubgroup
from app.services.group_service import MAX_ENUMERATION_ORDER, group_service


def brute_force_regular_subgroups(G):
    """Regular subgroups normalized by λ(G), found by closing pairs of derangements."""
    n = G.order
    identity = tuple(range(n))
    derangements = [p for p in permutations(range(n)) if all(p[i] != i for i in range(n))]
    lam = [tuple(G.mul(g, h) for h in range(n)) for g in range(n)]
    lam_inv = [tuple(G.mul(G.inv(g), h) for h in range(n)) for g in range(n)]

    def compose(p, q):
        return tuple(p[q[x]] for x in range(n))

    def closure(gens):
        found = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for p in frontier:
                for s in gens:
                    q = compose(p, s)
                    if q not in found:
                        found.add(q)
                        if len(found) > n:
                            return None
                        nxt.append(q)
            frontier = nxt
        return frozenset(found)

    result = set()
    for a in derangements:
        for b in [identity] + derangements:
            group = closure((a, b))
            if group is None or len(group) != n:
                continue
            if sorted(p[G.identity] for p in group) != list(range(n)):
                continue
            if all(compose(compose(lam[g], p), lam_inv[g]) in group for g in range(n) for p in group):
                result.add(group)
    return result


def test_catalog_groups():
    assert group_service.catalog("C1").order == 1
    assert group_service.catalog("S3").order == 6
    assert not group_service.catalog("S3").is_abelian()
    assert group_service.catalog("D4").order == 8
    assert group_service.catalog("Q8").order == 8
    assert group_service.catalog("C5").is_abelian()
    with pytest.raises(FixtureValidationError):
        group_service.catalog("M11")


def test_quaternion_relations(q8):
    i, j, k, minus_one = (q8.index_of(x) for x in ("i", "j", "k", "-1"))
    assert q8.mul(i, j) == k
    assert q8.mul(j, i) == q8.index_of("-k")
    assert q8.mul(i, i) == minus_one
    assert q8.mul(minus_one, minus_one) == q8.identity


def test_table_that_is_not_a_latin_square_is_rejected():
    with pytest.raises(FixtureValidationError) as exc:
        FiniteGroup(2, ((0, 1), (0, 1)), 0)
    assert exc.value.identity == "latin_square"


def test_non_associative_table_is_rejected():
    # a latin square with identity 0 that is not a group table
    table = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(FixtureValidationError) as exc:
        FiniteGroup(5, table, 0)
    assert exc.value.identity == "associativity"


def test_regular_embeddings(s3):
    lam = group_service.left_regular(s3)
    rho = group_service.right_regular(s3)
    for g in s3.elements():
        for h in s3.elements():
            assert lam.elements[g](h) == s3.mul(g, h)
            assert rho.elements[group_service.rho_index(s3, g)](h) == s3.mul(h, s3.inv(g))
    assert lam != rho
    assert group_service.centralizes(lam, rho)
    assert not group_service.centralizes(lam, lam)


def test_left_and_right_coincide_for_abelian_groups():
    c4 = group_service.catalog("C4")
    assert group_service.left_regular(c4) == group_service.right_regular(c4)


def test_regular_subgroup_requires_closure(s3):
    lam = group_service.left_regular(s3)
    bad = list(lam.elements)
    bad[1] = Permutation(tuple(s3.mul(h, 1) for h in s3.elements()))
    with pytest.raises(FixtureValidationError):
        RegularSubgroup(s3, tuple(bad))


@pytest.mark.parametrize("name", ["C1", "C2", "C3", "C5"])
def test_prime_and_trivial_orders_have_a_single_structure(name):
    G = group_service.catalog(name)
    census = group_service.enumerate_regular_subgroups(G)
    assert len(census) == 1
    assert census[0] == group_service.left_regular(G)


def test_s3_census(s3):
    census = group_service.enumerate_regular_subgroups(s3)
    assert len(census) == 5
    assert sum(not N.is_abelian() for N in census) == 2
    assert group_service.left_regular(s3) in census
    assert group_service.right_regular(s3) in census
    for N in census:
        assert group_service.is_regular(N)
        assert group_service.normalizes(N, s3)


def test_s3_census_matches_brute_force(s3):
    census = {frozenset(p.images for p in N.elements) for N in group_service.enumerate_regular_subgroups(s3)}
    assert census == brute_force_regular_subgroups(s3)


def test_census_is_sorted_and_deterministic(s3):
    first = [N.flattened() for N in group_service.enumerate_regular_subgroups(s3)]
    second = [N.flattened() for N in group_service.enumerate_regular_subgroups(s3)]
    assert first == second == sorted(first)


def test_census_is_invariant_under_relabeling(s3):
    pi = [3, 5, 0, 1, 4, 2]
    relabeled = group_service.relabel(s3, pi)
    moved = {group_service.relabel_subgroup(N, relabeled, pi).flattened()
             for N in group_service.enumerate_regular_subgroups(s3)}
    direct = {N.flattened() for N in group_service.enumerate_regular_subgroups(relabeled)}
    assert moved == direct


def test_conjugation_table_matches_conjugation(s3):
    for N in group_service.enumerate_regular_subgroups(s3):
        table = group_service.conjugation_table(s3, N)
        for g in s3.elements():
            for k, eta in enumerate(N.elements):
                assert group_service.conj_action(s3, g, eta) == N.elements[table[g][k]]


def test_budget_is_enforced(s3):
    with pytest.raises(BudgetExceededError):
        group_service.enumerate_regular_subgroups(group_service.catalog("C13"))
    with pytest.raises(BudgetExceededError):
        group_service.enumerate_regular_subgroups(s3, budget=5)


def test_order_twelve_is_refused_at_budget_ten(monkeypatch):
    monkeypatch.setattr(settings, "enumeration_budget", 10)
    with pytest.raises(BudgetExceededError) as exc:
        group_service.enumerate_regular_subgroups(group_service.catalog("C12"))
    assert exc.value.context == {"order": 12, "budget": 10}


def test_budget_never_exceeds_the_hard_ceiling():
    with pytest.raises(BudgetExceededError) as exc:
        group_service.enumerate_regular_subgroups(group_service.catalog("C13"), budget=50)
    assert exc.value.context["budget"] == MAX_ENUMERATION_ORDER


def test_group_at_the_budget_is_enumerated():
    census = group_service.enumerate_regular_subgroups(group_service.catalog("C3"), budget=3)
    assert len(census) == 1


def test_shipped_default_budget():
    assert Settings.model_fields["enumeration_budget"].default == 10


@pytest.mark.slow
def test_d4_census(d4):
    census = group_service.enumerate_regular_subgroups(d4)
    assert len(census) == 30
    assert group_service.left_regular(d4) in census
    assert group_service.right_regular(d4) in census
    assert all(group_service.normalizes(N, d4) for N in census)


@pytest.mark.slow
def test_q8_census(q8):
    census = group_service.enumerate_regular_subgroups(q8)
    assert len(census) == 22
    assert group_service.left_regular(q8) in census
    assert group_service.right_regular(q8) in census
