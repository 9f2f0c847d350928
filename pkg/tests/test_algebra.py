import itertools
import math
import random

import pytest
from hypothesis import given, strategies as st

from equirep.algebra import (
    AlgebraError,
    FgAbGroup,
    IntChainComplex,
    IntMatrix,
    Lattice,
    SubQuotient,
    cap_product,
    chain_boundary,
    cochain_coboundary,
    cohomology,
    hom_cokernel,
    hom_kernel,
    homology,
    homology_presentation,
    induced_matrix,
    induced_on_homology,
    invariant_factors,
    mapping_cone,
    preimage,
    presented_homology,
    reduce_chain_map,
    simplicial_chain_complex,
    snf,
    uct_cohomology_from_homology,
)
from equirep.complex import full_simplex, octahedron, polygon, rp2, simplex_boundary, torus

from library import small_library

Z, Z2 = FgAbGroup(1), FgAbGroup.cyclic(2)

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def test_snf_examples():
    zero = snf(IntMatrix.zeros(2, 3))
    assert zero.S.is_zero()
    assert zero.U == IntMatrix.identity(2) and zero.V == IntMatrix.identity(3)
    assert snf(IntMatrix.identity(3)).S == IntMatrix.identity(3)
    assert snf(IntMatrix.from_dense([[2, 4], [6, 8]])).diagonal == [2, 4]


@given(matrices)
def test_snf_properties(rows):
    A = IntMatrix.from_dense(rows)
    res = snf(A)
    assert res.U @ A @ res.V == res.S
    S = res.S.to_dense()
    assert all(S[i][j] == 0 for i in range(len(S)) for j in range(len(S[0])) if i != j)
    d = [x for x in res.diagonal if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert sorted(d) == sorted(x for x in snf(A.transpose()).diagonal if x)
    rank, tors = invariant_factors(A)
    assert rank == len(d)
    assert tors == [x for x in d if x > 1]


def test_invariant_factors_on_larger_sparse_matrices():
    rng = random.Random(7)
    for _ in range(30):
        r, c = rng.randint(5, 25), rng.randint(5, 25)
        A = IntMatrix.from_entries(r, c, [(rng.randrange(r), rng.randrange(c), rng.choice([-3, -2, -1, 1, 2, 4]))
                                          for _ in range(rng.randint(5, 60))])
        d = [x for x in snf(A).diagonal if x]
        assert invariant_factors(A) == (len(d), [x for x in d if x > 1])


@pytest.mark.parametrize("text", ["0", "Z", "Z/2", "Z/2 + Z/4 + Z^3", "Z/6"])
def test_group_strings_round_trip(text):
    assert str(FgAbGroup.parse(text)) == text


def test_group_normal_form():
    assert FgAbGroup.from_cyclic([2, 3]) == FgAbGroup.cyclic(6)
    assert str(FgAbGroup.parse("Z/2 + Z/2")) == "Z/2 + Z/2"
    with pytest.raises(AlgebraError):
        FgAbGroup(0, (4, 2))


def test_homology_examples():
    assert homology(simplex_boundary(2).chain_complex) == [Z, Z]
    assert homology(octahedron().chain_complex) == [Z, FgAbGroup(), Z]
    assert homology(simplex_boundary(2).chain_complex, 2) == [Z2, Z2]
    assert cohomology(polygon(5).chain_complex) == [Z, Z]
    assert cohomology(rp2().chain_complex) == [Z, FgAbGroup(), Z2]
    assert homology(rp2().chain_complex) == [Z, Z2, FgAbGroup()]
    assert homology(torus().chain_complex) == [Z, FgAbGroup(2), Z]


def test_relative_disk():
    D = full_simplex(2)
    bd = [s for s in D.simplex_set if len(s) < 3]
    C = simplicial_chain_complex(D.simplices, exclude=bd)
    assert homology(C) == [FgAbGroup(), FgAbGroup(), Z]


@pytest.mark.parametrize("name", sorted(small_library()))
def test_homology_bookkeeping(name):
    X = small_library()[name]
    C = X.chain_complex
    H = homology(C)
    assert sum((-1) ** n * h.rank for n, h in enumerate(H)) == C.euler_characteristic()
    Hc = cohomology(C)
    for n in range(len(H)):
        assert Hc[n].rank == H[n].rank
        assert Hc[n].torsion == (H[n - 1].torsion if n else ())
    for m in (2, 3, 4):
        assert cohomology(C, m) == uct_cohomology_from_homology(H, m)
        expected = [H[n].tensor(FgAbGroup.cyclic(m)) + (H[n - 1].tor(FgAbGroup.cyclic(m)) if n else FgAbGroup())
                    for n in range(len(H))]
        assert homology(C, m) == expected


def _inclusion(X, A):
    """Chain map ``C(A) -> C(X)`` for a subcomplex given as a simplex set."""
    CX = X.chain_complex
    CA = simplicial_chain_complex(tuple(tuple(s for s in layer if s in A) for layer in X.simplices))
    f = {}
    for n in range(CA.top + 1):
        idx = {s: i for i, s in enumerate(CX.labels[n])}
        f[n] = IntMatrix.from_entries(CX.dim(n), CA.dim(n), [(idx[s], j, 1) for j, s in enumerate(CA.labels[n])])
    return f, CA, CX


def _pad(C, top):
    dims = C.dims + [0] * (top + 1 - len(C.dims))
    return IntChainComplex(dims, {n: C.d(n) for n in range(1, top + 1)})


def _dense_induced(f, C, D, n):
    src, dst = homology_presentation(C, n), homology_presentation(D, n)
    A = f[n].to_dense() if n in f and f[n].rows else [[0] * C.dim(n) for _ in range(D.dim(n))]
    return induced_matrix(A, src, dst), src.group, dst.group


@pytest.mark.parametrize("name", ["triangle", "hexagon", "torus", "rp2", "octahedron", "wedge"])
def test_long_exact_sequence_and_reduction(name):
    X = small_library()[name]
    rng = random.Random(name)
    verts = rng.sample(list(X.vertices), max(1, X.num_vertices // 2))
    A = {s for s in X.simplex_set if all(v in verts for v in s)}
    f, CA, CX = _inclusion(X, A)
    top = CX.top
    CA = _pad(CA, top)
    rel = simplicial_chain_complex(X.simplices, exclude=A)
    HA, HX, HR = homology(CA), homology(CX), homology(_pad(rel, top))
    # alternating sums of ranks and of log-orders mod p vanish along an exact sequence
    seq = []
    for n in range(top, -1, -1):
        seq += [HA[n], HX[n], HR[n]]
    assert sum((-1) ** i * g.rank for i, g in enumerate(seq)) == 0
    for p in (2, 3):
        seqp = []
        for n in range(top, -1, -1):
            seqp += [homology(CA, p)[n], homology(CX, p)[n], homology(_pad(rel, top), p)[n]]
        assert sum((-1) ** i * len(g.torsion) for i, g in enumerate(seqp)) == 0
    # reduced and unreduced computations of H(f) agree
    for n in range(top + 1):
        H1, s1, d1 = induced_on_homology(f, CA, CX, n)
        H0, s0, d0 = _dense_induced(f, CA, CX, n)
        assert (s1, d1) == (s0, d0)
        assert hom_kernel(H1, s1, d1).group == hom_kernel(H0, s0, d0).group
        assert hom_cokernel(H1, s1, d1).group == hom_cokernel(H0, s0, d0).group


def test_reduction_shrinks_and_preserves_homology():
    X = torus()
    C = X.chain_complex
    f = {n: IntMatrix.identity(C.dim(n)) for n in range(C.top + 1)}
    R = reduce_chain_map(f, C, C)
    assert R.source.dims == [1, 2, 1]
    assert homology(R.source) == homology(C)


def test_mapping_cone_of_identity_is_acyclic():
    C = octahedron().chain_complex
    f = {n: IntMatrix.identity(C.dim(n)) for n in range(C.top + 1)}
    assert all(g.is_trivial() for g in homology(mapping_cone(f, C, C)))
    g = {n: IntMatrix.identity(C.dim(n)).scale(2) for n in range(C.top + 1)}
    assert not all(h.is_trivial() for h in homology(mapping_cone(g, C, C)))


def test_presented_homology_examples():
    Z4 = [[4], [4]]
    d = {1: IntMatrix.from_dense([[2]])}
    assert presented_homology(Z4, d) == [Z2, Z2]
    assert presented_homology([[4], [2]], {1: IntMatrix.from_dense([[2]])}) == [Z2, FgAbGroup()]
    with pytest.raises(AlgebraError):
        presented_homology([[4], [2]], {1: IntMatrix.from_dense([[1]])})


def _lattice_homology(orders, d):
    """``d_n^{-1}(R_{n-1}) / (im d_{n+1} + R_n)`` computed with dense lattices."""
    out = []
    top = len(orders) - 1
    for n in range(top + 1):
        k = len(orders[n])
        rel = Lattice(k, [[orders[n][i] if j == i else 0 for j in range(k)] for i in range(k) if orders[n][i]])
        if n >= 1 and orders[n - 1]:
            kk = len(orders[n - 1])
            below = Lattice(kk, [[orders[n - 1][i] if j == i else 0 for j in range(kk)]
                                 for i in range(kk) if orders[n - 1][i]])
            Zn = preimage(d[n].to_dense(), k, below)
        else:
            Zn = Lattice(k, [[int(i == j) for j in range(k)] for i in range(k)])
        Bn = rel
        if n + 1 <= top:
            Bn = Bn + Lattice(k, d[n + 1].transpose().to_dense())
        out.append(SubQuotient(Zn, Bn).group)
    return out


@given(st.lists(st.sampled_from([0, 2, 3, 4, 6]), min_size=1, max_size=3),
       st.lists(st.sampled_from([0, 2, 3, 4, 6]), min_size=1, max_size=3),
       st.data())
def test_presented_homology_two_term(o0, o1, data):
    rows = []
    for a in o0:
        row = []
        for t in o1:
            if a == 0:
                step = 0 if t else 1
            else:
                step = a // math.gcd(a, t) if t else 1
            row.append(step * data.draw(st.integers(-3, 3)) if step else 0)
        rows.append(row)
    d = {1: IntMatrix.from_dense(rows, len(o1))}
    assert presented_homology([o0, o1], d) == _lattice_homology([o0, o1], d)


@pytest.mark.parametrize("name", ["triangle", "torus", "rp2", "tetra_boundary"])
@pytest.mark.parametrize("m", [2, 4, 6])
def test_presented_homology_mod_m(name, m):
    C = small_library()[name].chain_complex
    orders = [[m] * C.dim(n) for n in range(C.top + 1)]
    diffs = {n: C.d(n) for n in range(1, C.top + 1)}
    assert presented_homology(orders, diffs) == homology(C, m)
    assert presented_homology(orders, diffs) == _lattice_homology(orders, diffs)


# cap products


def test_cap_degree_zero_is_identity():
    X = polygon(5)
    z = {s: (1 if s != (0, 4) else -1) for s in X.simplices[1]}
    one = {(v,): 1 for v in X.vertices}
    assert cap_product(one, 0, z) == z


def test_cap_top_degree():
    c = {(0, 1, 2): 5}
    assert cap_product(c, 2, {(0, 1, 2): 1}) == {(0,): 5}


def test_cap_circle_fundamental_class():
    X = simplex_boundary(2)
    gamma = {(0, 1): 1, (1, 2): 1, (0, 2): -1}
    assert chain_boundary(gamma) == {}
    c = {(0, 1): 1}
    assert cochain_coboundary(c, []) == {}
    capped = cap_product(c, 1, gamma)
    assert abs(sum(capped.values())) == 1


@given(st.integers(1, 4), st.data())
def test_cap_boundary_formula(n, data):
    verts = range(n + 2)
    p = data.draw(st.integers(0, n - 1))
    simplices = lambda k: list(itertools.combinations(verts, k + 1))
    z = {s: data.draw(st.integers(-3, 3)) for s in simplices(n)}
    z = {s: v for s, v in z.items() if v}
    c = {s: data.draw(st.integers(-3, 3)) for s in simplices(p)}
    lhs = chain_boundary(cap_product(c, p, z))
    dc = cochain_coboundary(c, simplices(p + 1))
    rhs = dict(cap_product(c, p, chain_boundary(z)))
    for s, v in cap_product(dc, p + 1, z).items():
        rhs[s] = rhs.get(s, 0) + (-1) ** (n - p) * v
    assert lhs == {s: v for s, v in rhs.items() if v}
