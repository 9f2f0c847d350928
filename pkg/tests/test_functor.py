from math import gcd

import pytest
from hypothesis import given, strategies as st

from equirep.algebra import FgAbGroup, as_group
from equirep.complex import join, polygon, two_points
from equirep.functor import (
    CategoryError,
    GeneratorCapExceeded,
    cobar_bound,
    cobar_complex,
    check_bounds,
    constant_functor,
    discrete_category,
    fixed_point_functor,
    group_homology,
    group_homology_bound,
    one_object_category,
    orbit_category,
    tensor_over_category,
    tor_over_category,
)
from equirep.groups import cyclic_group, symmetric_group, trivial_group

from library import antipodal_square

Z, O = FgAbGroup(1), FgAbGroup()
GROUPS = {"C2": cyclic_group(2), "C3": cyclic_group(3), "C4": cyclic_group(4), "S3": symmetric_group(3)}
COEFFS = [None, 2, 3]


def cyclic_homology(n, m, k_max):
    """Closed form for H_k(C_n; Z/m), with m = 0 meaning Z."""
    out = []
    for k in range(k_max + 1):
        if m == 0:
            out.append(Z if k == 0 else (FgAbGroup(0, (n,)) if k % 2 else O))
        else:
            d = gcd(n, m)
            out.append(as_group(m) if k == 0 else FgAbGroup.from_cyclic([d]))
    return out


def tor(G, M, k_max, normalized=True):
    C = one_object_category(G)
    return tor_over_category(C, constant_functor(C, None, "contra"), constant_functor(C, M, "co"), k_max, normalized)


@pytest.mark.parametrize("name", sorted(GROUPS))
@pytest.mark.parametrize("M", COEFFS)
def test_cobar_equals_bar(name, M):
    G = GROUPS[name]
    k_max = 3 if G.order <= 4 else 2
    assert tor(G, M, k_max) == group_homology(G, M, k_max)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("m", [0, 2, 3, 4])
def test_cyclic_closed_form(n, m):
    assert group_homology(cyclic_group(n), m or None, 3) == cyclic_homology(n, m, 3)


def test_s3_integral_homology():
    assert [str(g) for g in group_homology(symmetric_group(3), None, 3)] == ["Z", "Z/2", "0", "Z/6"]


def test_c3_mod3_is_z3_everywhere():
    assert all(g == FgAbGroup(0, (3,)) for g in group_homology(cyclic_group(3), 3, 3))


def test_normalized_matches_unnormalized():
    G = cyclic_group(2)
    for M in (None, 2):
        assert tor(G, M, 2, True) == tor(G, M, 2, False)
    C = one_object_category(G)
    big = cobar_complex(C, constant_functor(C, None, "contra"), constant_functor(C, None, "co"), 2, False)
    small = cobar_complex(C, constant_functor(C, None, "contra"), constant_functor(C, None, "co"), 2, True)
    assert big.sizes == [1, 2, 4] and small.sizes == [1, 1, 1]


def test_cobar_squares_to_zero():
    C = orbit_category(symmetric_group(3))
    K = cobar_complex(C, constant_functor(C, None, "contra"), constant_functor(C, None, "co"), 3)
    for n in range(2, 4):
        assert (K.differentials[n - 1] @ K.differentials[n]).is_zero()


@pytest.mark.parametrize("name", sorted(GROUPS))
@pytest.mark.parametrize("M", [None, 2, 6])
def test_tor0_is_tensor(name, M):
    C = one_object_category(GROUPS[name])
    F, Gf = constant_functor(C, None, "contra"), constant_functor(C, M, "co")
    assert tor_over_category(C, F, Gf, 0)[0] == tensor_over_category(C, F, Gf) == as_group(M)


def test_tor0_is_tensor_on_orbit_category():
    X = antipodal_square()
    C = orbit_category(X.group)
    F = fixed_point_functor(X, 0, C)
    Gf = constant_functor(C, None, "co")
    assert tor_over_category(C, F, Gf, 0)[0] == tensor_over_category(C, F, Gf)


def test_identity_category():
    C = discrete_category(1)
    out = tor_over_category(C, constant_functor(C, None, "contra"), constant_functor(C, None, "co"), 3)
    assert out == [Z, O, O, O]


def test_bounds():
    G = cyclic_group(2)
    b = group_homology_bound(G, None, 1, FgAbGroup(0, (2,)))
    assert b.ok and b.order_bound == 4 and b.rank_bound == 2
    b0 = group_homology_bound(G, None, 0, Z)
    assert b0.ok and b0.rank_bound == 1 and b0.order_bound is None
    assert not group_homology_bound(G, None, 1, FgAbGroup(0, (8,))).ok
    assert not group_homology_bound(G, None, 1, Z).ok


@pytest.mark.parametrize("name", sorted(GROUPS))
@pytest.mark.parametrize("M", COEFFS)
def test_computed_homology_within_bounds(name, M):
    G = GROUPS[name]
    assert check_bounds(group_homology(G, M, 3), G, M)


@pytest.mark.parametrize("name", ["C2", "C3", "S3"])
@pytest.mark.parametrize("M", [2, 3])
def test_cobar_bound(name, M):
    C = one_object_category(GROUPS[name])
    F, Gf = constant_functor(C, None, "contra"), constant_functor(C, M, "co")
    for k, v in enumerate(tor_over_category(C, F, Gf, 3)):
        b = cobar_bound(C, F, Gf, k, v)
        assert b.ok and b.order_bound == M ** (GROUPS[name].order ** k)


def brute_fixed_cosets(G, H, K):
    cosets = {frozenset(G.mult[a][k] for k in K.members) for a in range(G.order)}
    return sum(1 for c in cosets if all(frozenset(G.mult[h][x] for x in c) == c for h in H.members))


@pytest.mark.parametrize("G", [trivial_group(), cyclic_group(2), cyclic_group(4), symmetric_group(3)])
def test_orbit_category_hom_counts(G):
    C = orbit_category(G)
    C.validate()
    subs = C.subgroups
    for i, H in enumerate(subs):
        for j, K in enumerate(subs):
            assert len(C.hom(i, j)) == brute_fixed_cosets(G, H, K)


def test_orbit_category_c2():
    C = orbit_category(cyclic_group(2))
    assert len(C.objects) == 2
    free = [i for i, H in enumerate(C.subgroups) if H.order == 1][0]
    whole = 1 - free
    assert (len(C.hom(free, free)), len(C.hom(free, whole)), len(C.hom(whole, free))) == (2, 1, 0)
    assert len(orbit_category(symmetric_group(3)).objects) == 4
    assert len(orbit_category(trivial_group()).morphisms) == 1


def test_fixed_point_functor_antipodal():
    X = antipodal_square()
    C = orbit_category(X.group)
    F = fixed_point_functor(X, 0, C)
    vals = {H.order: v for H, v in zip(C.subgroups, F.values)}
    assert vals == {1: Z, 2: O}


def test_fixed_point_functor_trivial_action_is_constant():
    C2 = cyclic_group(2)
    X = polygon(4, group=C2, generator_shifts=[0])
    for q, val in ((0, Z), (1, Z)):
        F = fixed_point_functor(X, q)
        assert all(v == val for v in F.values)
        assert all(m == [[1]] for m in F.maps)


def test_fixed_point_functor_of_join():
    C2 = cyclic_group(2)
    X = join(two_points(C2), antipodal_square())
    F = fixed_point_functor(X, 0)
    vals = {H.order: v for H, v in zip(F.category.subgroups, F.values)}
    assert vals == {1: Z, 2: FgAbGroup(2)}
    F2 = fixed_point_functor(X, 2)
    assert {H.order: v for H, v in zip(F2.category.subgroups, F2.values)} == {1: Z, 2: O}


def test_functor_validation_rejects_bad_maps():
    C = one_object_category(cyclic_group(2))
    F = constant_functor(C, None, "co")
    F.maps = [[[1]], [[2]]]
    with pytest.raises(CategoryError):
        F.validate()
    T = constant_functor(C, 2, "co")
    T.maps = [[[1]], [[0]]]
    with pytest.raises(CategoryError):
        T.validate()


def test_generator_cap():
    with pytest.raises(GeneratorCapExceeded):
        group_homology(symmetric_group(3), None, 6, max_generators=1000)


@given(st.sampled_from(sorted(GROUPS)), st.integers(0, 6))
def test_h0_is_coefficients(name, m):
    M = None if m in (0, 1) else m
    assert group_homology(GROUPS[name], M, 0)[0] == as_group(M)
