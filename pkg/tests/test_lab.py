import csv
import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from equirep.algebra import FgAbGroup, homology
from equirep.complex import fixed_subcomplex, polygon, singular_subcomplex
from equirep.groups import all_subgroups, cyclic_group
from equirep.lab import (
    CSV_FIELDS,
    LabError,
    circle_vertices,
    emit,
    emit_many,
    join_power_subcomplex,
    join_structure_check,
    stabilization_experiment,
    linear_sphere,
    orbit_filtration,
    restriction_kernel_cokernel,
    table_to_csv,
)

Z, O = FgAbGroup(1), FgAbGroup()


def sphere_homology(d):
    return [Z] + [O] * (d - 1) + [Z] if d else [FgAbGroup(2)]


@pytest.mark.parametrize("m,v", [(1, 3), (2, 4), (3, 3), (4, 4), (5, 5)])
def test_circle_vertices(m, v):
    assert circle_vertices(m)[0] == v


@pytest.mark.parametrize("m,weights", [(2, [1]), (2, [0, 1]), (3, [1]), (3, [1, 1]), (4, [1, 2]), (4, [0])])
def test_linear_sphere_is_a_sphere(m, weights):
    X = linear_sphere(m, weights)
    assert homology(X.chain_complex) == sphere_homology(2 * len(weights) - 1)
    assert X.regularity.fixed_sets_full


def test_linear_sphere_fixed_sets():
    X = linear_sphere(4, [1, 2])
    dims = {H.order: fixed_subcomplex(X, H).dim for H in all_subgroups(X.group)}
    assert dims == {1: 3, 2: 1, 4: -1}
    Y = linear_sphere(2, [0, 1])
    assert {H.order: fixed_subcomplex(Y, H).dim for H in all_subgroups(Y.group)} == {1: 3, 2: 1}


def test_linear_sphere_rejects_bad_input():
    with pytest.raises(LabError):
        linear_sphere(2, [])
    with pytest.raises(LabError):
        linear_sphere(3, [1], group=cyclic_group(2))


def test_join_power_counts():
    X = linear_sphere(2, [1])
    S = X.subcomplex([(0,)])
    # every non-empty choice of the point or nothing in each of 3 factors
    assert len(join_power_subcomplex(X, S, 3)) == 7


def test_filtration_trivial_action():
    X = polygon(5, group=cyclic_group(2), generator_shifts=[0])
    F = orbit_filtration(X)
    assert F[1].simplex_set == X.simplex_set
    assert len(F) == 3


def test_filtration_free_action():
    X = linear_sphere(3, [1])
    F = orbit_filtration(X)
    assert all(not F[s].simplex_set for s in range(len(F) - 1))
    assert F[len(F) - 1].simplex_set == X.simplex_set


def test_filtration_fixed_circle():
    X = linear_sphere(2, [0, 1])
    F = orbit_filtration(X)
    assert [len(s.simplex_set) for s in F.stages] == [0, 8, 80]
    assert F[1].simplex_set == fixed_subcomplex(X, X.group.whole()).simplex_set
    assert homology(F[1].as_complex().chain_complex) == [Z, Z]


def test_filtration_three_stages():
    X = linear_sphere(4, [1, 2])
    F = orbit_filtration(X)
    assert [c.representative.order for c in F.classes] == [4, 2, 1]
    assert [len(s.simplex_set) for s in F.stages] == [0, 0, 8, 80]
    K = F.classes[1].representative
    assert F[1].simplex_set == singular_subcomplex(X, K).simplex_set


@pytest.mark.parametrize("m,weights", [(2, [0, 1]), (3, [0, 1])])
def test_join_structure_small(m, weights):
    rep = join_structure_check(linear_sphere(m, weights), 2)
    assert rep.ok
    assert rep.laws and rep.codimension
    assert all(r.gap >= r.n for r in rep.codimension)


def test_gate_trips_on_trivial_action():
    C2 = cyclic_group(2)
    X = polygon(4, group=C2, generator_shifts=[0])
    table = stabilization_experiment(X, C2.trivial_subgroup(), [1, 2], 1)
    assert table.gate is not None
    assert [r.status for r in table.rows] == ["hypothesis_failed"]
    assert table.exit_code == 2


def test_antipodal_part_a():
    X = linear_sphere(2, [1])
    table = stabilization_experiment(X, X.group.trivial_subgroup(), [2, 3], 2)
    assert table.gate is None and table.weyl_order == 2
    for row in table.rows:
        assert row.status == "ok"
        assert row.values["A:H^W_k(B;Z)"] == ["Z", "Z/2", "0"]
    part_a = [s for s in table.series if s.quantity == "A:H^W_k(B)"]
    assert all(s.ok for s in part_a) and all(s.stable_tail == 2 for s in part_a)


def test_antipodal_n1_is_below_threshold():
    X = linear_sphere(2, [1])
    table = stabilization_experiment(X, X.group.trivial_subgroup(), [1], 2)
    assert table.rows[0].values["A:H^W_k(B;Z)"] == ["Z", "Z", "0"]
    assert not table.ok and table.exit_code == 1


def test_cap_skips_rows():
    X = linear_sphere(2, [0, 1])
    table = stabilization_experiment(X, X.group.trivial_subgroup(), [1, 2], 1, max_simplices=500)
    assert all(r.status == "skipped" for r in table.rows)
    assert table.series == []


def test_restriction_on_circle():
    X = linear_sphere(2, [1])
    D = X.subcomplex([])
    # restricting to the empty set kills everything: the kernel is all of H^(1-k)_W = H^(1-k)(RP^1)
    got = [restriction_kernel_cokernel(X, D, 1, k) for k in range(3)]
    assert got == [(Z, O), (Z, O), (O, O)]


def test_emit_empty_table():
    assert emit(None, "csv") == ",".join(CSV_FIELDS) + "\n"
    assert json.loads(emit(None, "json")) == {"rows": [], "series": []}
    with pytest.raises(LabError):
        emit(None, "xml")


@pytest.fixture(scope="module")
def antipodal_table():
    X = linear_sphere(2, [1])
    return stabilization_experiment(X, X.group.trivial_subgroup(), [1], 1, (None, 2))


def test_emit_roundtrip(antipodal_table, tmp_path):
    path = tmp_path / "t.json"
    text = emit(antipodal_table, "json", str(path))
    assert path.read_text() == text
    assert json.loads(text) == antipodal_table.to_json()
    rows = list(csv.DictReader(io.StringIO(table_to_csv(antipodal_table))))
    assert len(rows) == sum(len(r.verdicts) for r in antipodal_table.rows)
    assert {r["coeff"] for r in rows} == {"Z", "Z/2"}


def test_emit_many(antipodal_table):
    text = emit_many({"b": antipodal_table, "a": antipodal_table}, "csv")
    lines = text.splitlines()
    assert lines[0].startswith("experiment,")
    assert lines[1].startswith("a,") and lines[-1].startswith("b,")
    assert list(json.loads(emit_many({"x": antipodal_table}, "json"))) == ["x"]


def test_determinism():
    X = linear_sphere(2, [1])
    runs = [emit(stabilization_experiment(X, X.group.trivial_subgroup(), [1], 2, (None, 3)), fmt)
            for fmt in ("csv", "json") for _ in range(2)]
    assert runs[0] == runs[1] and runs[2] == runs[3]


@settings(max_examples=10)
@given(st.sampled_from([(2, [1]), (3, [1]), (2, [0]), (4, [2])]), st.integers(1, 3))
def test_join_law_property(spec, n):
    X = linear_sphere(*spec)
    assert all(r.law_holds for r in join_structure_check(X, n).laws)
