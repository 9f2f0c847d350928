import pytest

from equirep.algebra import FgAbGroup, homology, is_chain_map, mapping_cone
from equirep.complex import GComplex, join, polygon, simplex_boundary, star_neighborhood, torus, two_points
from equirep.duality import (
    DualityError,
    check_equivariance,
    duality_map,
    lefschetz_pieces,
    orientation_cycle,
    relative_class,
    verify_lefschetz,
)
from equirep.groups import cyclic_group

from library import antipodal_square

C2 = cyclic_group(2)
Z = FgAbGroup(1)


def s2_pair():
    Y = join(two_points(C2), antipodal_square())
    return Y, Y.subcomplex([(0,), (1,)])


def test_triangle_orientation():
    data = orientation_cycle(simplex_boundary(2))
    assert set(data.cycle) == {(0, 1), (1, 2), (0, 2)}
    assert data.cycle[(0, 1)] == data.cycle[(1, 2)] == -data.cycle[(0, 2)]


def test_antipodal_orientation_invariant():
    X = antipodal_square()
    data = orientation_cycle(X)
    assert len(data.cycle) == 4
    img = {X.act(1, s)[1]: X.act(1, s)[0] * v for s, v in data.cycle.items()}
    assert img == data.cycle


def test_reflection_is_rejected():
    edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
    refl = GComplex.from_generators(4, edges, C2, [(0, 3, 2, 1)])
    with pytest.raises(DualityError):
        orientation_cycle(refl)


def test_relative_class_without_neighbourhood():
    X = antipodal_square()
    Y2, ubar, b, d = lefschetz_pieces(X, None)
    data = relative_class(Y2, ubar, b, d, orientation_cycle(Y2))
    assert data.relative == data.cycle


def test_relative_class_generates_pair():
    Y, A = s2_pair()
    Y2, ubar, b, d = star_neighborhood(Y, A)
    data = relative_class(Y2, ubar, b, d, orientation_cycle(Y2))
    from equirep.algebra import simplicial_chain_complex
    rel = simplicial_chain_complex(b.simplices, exclude=d.simplex_set)
    assert homology(rel)[2] == Z
    assert 0 < len(data.relative) < len(data.cycle)


def test_circle_poincare_duality_trivial_group():
    X = polygon(5)
    rep = verify_lefschetz(X, None, (None,), subdivide=False)
    assert rep.ok
    assert [r.cohom_B for r in rep.rows] == [Z, Z]


def test_antipodal_circle_phi():
    X = antipodal_square()
    Y2, ubar, b, d = lefschetz_pieces(X, None)
    data = relative_class(Y2, ubar, b, d, orientation_cycle(Y2))
    phi = duality_map(b, d, data)
    assert is_chain_map(phi.maps, phi.source, phi.target) is None
    assert check_equivariance(Y2, phi) is None
    cone = mapping_cone(phi.maps, phi.source, phi.target)
    assert all(g.is_trivial() for g in homology(cone))
    rep = verify_lefschetz(X, None, (None,))
    assert rep.rows[0].cohom_B == Z and rep.rows[0].hom_BD == Z


@pytest.mark.parametrize("M", [None, 2, 3, 4])
def test_s2_with_fixed_poles(M):
    Y, A = s2_pair()
    rep = verify_lefschetz(Y, A, (M,))
    assert rep.chain_map and rep.equivariant and rep.quasi_iso
    assert all(r.first_chain and r.second_chain for r in rep.rows)
    assert rep.ok


def test_torus_classical_table():
    rep = verify_lefschetz(torus(), None, (None, 2))
    assert rep.ok
    assert [str(r.cohom_B) for r in rep.rows if r.coeff == "Z"] == ["Z", "Z^2", "Z"]


def test_report_serialization_is_stable():
    X = antipodal_square()
    a = verify_lefschetz(X, None, (None, 2)).dumps()
    b = verify_lefschetz(X, None, (None, 2)).dumps()
    assert a == b
