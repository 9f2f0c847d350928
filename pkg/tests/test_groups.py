import itertools

import pytest
from hypothesis import given, strategies as st

from equirep.groups import (
    GroupError,
    all_subgroups,
    compose,
    conjugacy_classes_of_subgroups,
    cyclic_group,
    group_from_generators,
    normalizer,
    perm_from_cycles,
    symmetric_group,
    trivial_group,
    weyl_group,
)


def brute_subgroups(G):
    """Every subset containing e and closed under products (exhaustive)."""
    found = set()
    rest = [g for g in range(G.order) if g != G.identity]
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            S = {G.identity, *combo}
            if all(G.mult[a][b] in S for a in S for b in S):
                found.add(frozenset(S))
    return found


def test_composition_convention():
    a = perm_from_cycles(3, [(0, 1)])
    b = perm_from_cycles(3, [(1, 2)])
    ab = compose(a, b)
    assert all(ab[x] == a[b[x]] for x in range(3))


@pytest.mark.parametrize("degree,gens,order", [
    (2, [[(0, 1)]], 2),
    (3, [[(0, 1)], [(0, 1, 2)]], 6),
    (4, [[(0, 1, 2, 3)]], 4),
])
def test_generated_orders(degree, gens, order):
    G = group_from_generators(degree, [perm_from_cycles(degree, c) for c in gens])
    assert G.order == order
    assert G.elements[G.identity] == tuple(range(degree))
    G.check_axioms()


def test_bad_permutation_rejected():
    with pytest.raises(GroupError):
        group_from_generators(3, [(0, 0, 1)])


@pytest.mark.parametrize("G,count", [(cyclic_group(2), 2), (cyclic_group(4), 3), (symmetric_group(3), 6)])
def test_subgroup_counts(G, count):
    subs = all_subgroups(G)
    assert len(subs) == count
    assert {frozenset(H.members) for H in subs} == brute_subgroups(G)
    assert all(G.order % H.order == 0 for H in subs)


@pytest.mark.parametrize("G", [cyclic_group(6), symmetric_group(4), group_from_generators(
    4, [perm_from_cycles(4, [(0, 1, 2, 3)]), perm_from_cycles(4, [(0, 2)])])])
def test_subgroups_match_brute_force(G):
    if G.order > 12:
        # S4 has 2^23 subsets; compare against subgroup closure of pairs instead
        pairs = {frozenset(G.subgroup_generated([a, b]).members) for a in range(G.order) for b in range(G.order)}
        assert pairs <= {frozenset(H.members) for H in all_subgroups(G)}
        assert len(all_subgroups(G)) == 30
    else:
        assert {frozenset(H.members) for H in all_subgroups(G)} == brute_subgroups(G)


def test_classes_of_s3():
    G = symmetric_group(3)
    classes = conjugacy_classes_of_subgroups(G)
    assert [c.representative.order for c in classes] == [6, 3, 2, 1]
    assert [len(c.conjugates) for c in classes] == [1, 1, 3, 1]


@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(4), symmetric_group(3), symmetric_group(4)])
def test_class_invariants(G):
    classes = conjugacy_classes_of_subgroups(G)
    orders = [c.representative.order for c in classes]
    assert orders == sorted(orders, reverse=True)
    assert orders[-1] == 1
    assert sum(len(c.conjugates) for c in classes) == len(all_subgroups(G))
    for c in classes:
        conj = {frozenset(c.representative.conjugate(g).members) for g in range(G.order)}
        assert conj == {frozenset(H.members) for H in c.conjugates}


def test_cyclic_classes_singletons():
    assert [len(c.conjugates) for c in conjugacy_classes_of_subgroups(cyclic_group(4))] == [1, 1, 1]


def brute_normalizer(G, K):
    ks = set(K.members)
    return {g for g in range(G.order) if {G.mult[G.mult[g][k]][G.inverse[g]] for k in ks} == ks}


def test_normalizers():
    S3 = symmetric_group(3)
    K = S3.subgroup_from_perms([perm_from_cycles(3, [(0, 1)])])
    assert normalizer(S3, K).order == 2
    assert normalizer(S3, S3.trivial_subgroup()).order == 6
    C4 = cyclic_group(4)
    for H in all_subgroups(C4):
        assert normalizer(C4, H).order == 4
    for G in (S3, symmetric_group(4)):
        for H in all_subgroups(G):
            assert set(normalizer(G, H).members) == brute_normalizer(G, H)


def test_weyl_examples():
    S3 = symmetric_group(3)
    W, proj = weyl_group(S3, S3.trivial_subgroup())
    assert W.order == 6 and len(set(proj.values())) == 6
    C4 = cyclic_group(4)
    C2 = [H for H in all_subgroups(C4) if H.order == 2][0]
    assert weyl_group(C4, C2)[0].order == 2
    K = S3.subgroup_from_perms([perm_from_cycles(3, [(0, 1)])])
    assert weyl_group(S3, K)[0].order == 1


@pytest.mark.parametrize("G", [cyclic_group(4), symmetric_group(3), symmetric_group(4)])
def test_weyl_invariants(G):
    for H in all_subgroups(G):
        W, proj = weyl_group(G, H)
        N = normalizer(G, H)
        assert W.order * H.order == N.order
        W.check_axioms()
        assert all(proj[G.mult[a][b]] == W.mult[proj[a]][proj[b]] for a in N.members for b in N.members)
        assert all(proj[h] == W.identity for h in H.members)


@given(st.lists(st.permutations(list(range(5))), min_size=1, max_size=2))
def test_closure_is_a_group(gens):
    G = group_from_generators(5, [tuple(p) for p in gens])
    G.check_axioms()
    n = len(G.elements)
    assert all(G.mult[G.identity][a] == a == G.mult[a][G.identity] for a in range(n))
    for a, b, c in itertools.islice(itertools.product(range(n), repeat=3), 2000):
        assert G.mult[G.mult[a][b]][c] == G.mult[a][G.mult[b][c]]
    assert all(n % H.order == 0 for H in all_subgroups(G))


def test_trivial_group():
    e = trivial_group()
    assert e.order == 1
    assert len(all_subgroups(e)) == 1
