"""Experiments on joins of spheres with cyclic and general finite group actions.

Builders for linear spheres of cyclic groups, the orbit-type filtration,
the fixed-set law for iterated joins, and the stabilization experiment that
tracks Bredon (co)homology of ``Y_n = (X^{*n})^K`` as ``n`` grows.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .algebra import (
    Coefficient,
    FgAbGroup,
    IntChainComplex,
    IntMatrix,
    as_group,
    coeff_label,
    hom_cokernel,
    hom_kernel,
    induced_on_homology,
)
from .bredon import BredonError, bredon_cohomology, bredon_complex, bredon_homology, pad
from .complex import (
    DEFAULT_MAX_SIMPLICES,
    ComplexError,
    GComplex,
    SimplexCapExceeded,
    Subcomplex,
    fixed_subcomplex,
    join,
    n_fold_join,
    polygon,
    singular_subcomplex,
    star_neighborhood,
    weyl_fixed_complex,
)
from .functor import group_homology
from .groups import FiniteGroup, Subgroup, all_subgroups, conjugacy_classes_of_subgroups, cyclic_group


class LabError(ValueError):
    pass


class HypothesisFailure(LabError):
    """The experiment needs ``A_n`` to be a proper subcomplex of ``Y_n``."""


# ---------------------------------------------------------------------------
# linear spheres


def circle_vertices(m: int) -> tuple[int, int]:
    """``(v, c)`` with ``v = m·c`` and ``c`` the least integer giving ``v >= 3``."""
    c = 1
    while m * c < 3:
        c += 1
    return m * c, c


def _divisor_subgroup(G: FiniteGroup, m: int, d: int) -> Subgroup:
    """The order-``d`` subgroup of ``C_m``, generated by ``g^(m/d)``."""
    g = G.generators[0] if G.generators else 0
    x, step = 0, m // d
    for _ in range(step):
        x = G.mult[x][g]
    return G.subgroup_generated([x])


def linear_sphere(m: int, weights: Sequence[int], max_simplices: int = DEFAULT_MAX_SIMPLICES,
                  group: FiniteGroup | None = None) -> GComplex:
    """Unit sphere of ``⊕ χ^{k_j}`` for ``C_m``: a join of rotated polygons.

    Circle ``j`` has ``v = m·c`` vertices and the generator rotates it by
    ``k_j·c`` steps. The fixed set of every subgroup ``C_d`` is checked to be
    the join of the circles with ``d | k_j``.
    """
    if m < 1:
        raise LabError("m must be positive")
    if not weights:
        raise LabError("at least one weight is required")
    G = group or cyclic_group(m)
    if G.order != m or len(G.generators) > 1:
        raise LabError("group must be cyclic of order m with one generator")
    v, c = circle_vertices(m)
    ks = [k % m for k in weights]
    circles = [polygon(v, group=G, generator_shifts=[k * c] * len(G.generators)) for k in ks]
    X = circles[0]
    for Y in circles[1:]:
        X = join(X, Y, max_simplices)
    for d in range(1, m + 1):
        if m % d:
            continue
        H = _divisor_subgroup(G, m, d)
        if H.order != d:
            raise LabError("internal: divisor subgroup has the wrong order")
        fixed_vertices = set()
        for j, k in enumerate(ks):
            if k % d == 0:
                fixed_vertices.update(range(j * v, (j + 1) * v))
        predicted = frozenset(s for s in X.simplex_set if all(x in fixed_vertices for x in s))
        if fixed_subcomplex(X, H).simplex_set != predicted:
            raise LabError(f"fixed set of the order-{d} subgroup disagrees with the prediction")
    return X


# ---------------------------------------------------------------------------
# fixed sets of iterated joins


def join_power_subcomplex(X: GComplex, S: Subcomplex, n: int) -> frozenset:
    """``S^{*n}`` as a simplex set inside ``X^{*n}`` (factor ``i`` shifted by ``i·|V(X)|``)."""
    pieces = [()] + sorted(S.simplex_set)
    off = X.num_vertices
    out: set = set()

    def rec(i: int, acc: tuple) -> None:
        if i == n:
            if acc:
                out.add(acc)
            return
        for p in pieces:
            rec(i + 1, acc + tuple(x + i * off for x in p))

    rec(0, ())
    return frozenset(out)


@dataclass
class JoinLawReport:
    n: int
    subgroup: tuple[int, ...]
    fixed_dim: int
    law_holds: bool

    def to_json(self) -> dict:
        return {"n": self.n, "subgroup": list(self.subgroup), "fixed_dim": self.fixed_dim,
                "law_holds": self.law_holds}


@dataclass
class CodimensionReport:
    n: int
    larger: tuple[int, ...]
    smaller: tuple[int, ...]
    gap: int
    holds: bool

    def to_json(self) -> dict:
        return {"n": self.n, "larger": list(self.larger), "smaller": list(self.smaller),
                "gap": self.gap, "holds": self.holds}


@dataclass
class JoinStructure:
    laws: list[JoinLawReport]
    codimension: list[CodimensionReport]

    @property
    def ok(self) -> bool:
        return all(r.law_holds for r in self.laws) and all(r.holds for r in self.codimension)


def join_structure_check(X: GComplex, n_max: int, max_simplices: int = DEFAULT_MAX_SIMPLICES) -> JoinStructure:
    """Fixed-set law ``(X^{*n})^H = (X^H)^{*n}`` and codimension growth, every subgroup.

    For ``H' <= H`` with ``X^H != X^{H'}`` the dimension gap of the fixed sets
    of ``X^{*n}`` must be at least ``n``. Empty sets have dimension ``-1``.
    """
    subs = all_subgroups(X.group)
    base = {H.members: fixed_subcomplex(X, H) for H in subs}
    laws, codim = [], []
    Xn = X
    for n in range(1, n_max + 1):
        if n > 1:
            Xn = join(Xn, X, max_simplices)
        dims = {}
        for H in subs:
            F = fixed_subcomplex(Xn, H)
            dims[H.members] = F.dim
            laws.append(JoinLawReport(n, H.members, F.dim,
                                      F.simplex_set == join_power_subcomplex(X, base[H.members], n)))
        for H in subs:
            for Hp in subs:
                if Hp.members == H.members or not Hp.issubset(H):
                    continue
                if base[H.members].simplex_set == base[Hp.members].simplex_set:
                    continue
                gap = dims[Hp.members] - dims[H.members]
                codim.append(CodimensionReport(n, H.members, Hp.members, gap, gap >= n))
    return JoinStructure(laws, codim)


# ---------------------------------------------------------------------------
# orbit-type filtration


@dataclass
class OrbitFiltration:
    """``F_0 = ∅ ⊆ F_1 ⊆ … ⊆ F_m = X`` indexed by conjugacy classes of subgroups."""

    complex: GComplex
    classes: list
    stages: list[Subcomplex]

    def __getitem__(self, s: int) -> Subcomplex:
        return self.stages[s]

    def __len__(self) -> int:
        return len(self.stages)


def orbit_filtration(X: GComplex) -> OrbitFiltration:
    """Filter ``X`` by orbit type, largest isotropy first.

    ``F_s`` holds the simplices whose pointwise stabilizer is conjugate to one
    of the first ``s`` classes. Checks ``F_s^K = X^K`` and
    ``F_{s-1}^K = X^{>K}`` for ``K = H_s``.
    """
    if not X.regularity.fixed_sets_full:
        raise ComplexError("orbit filtration needs fixed sets to be subcomplexes; subdivide first")
    classes = conjugacy_classes_of_subgroups(X.group)
    index = {H.members: i for i, cls in enumerate(classes) for H in cls.conjugates}
    by_class: list[set] = [set() for _ in classes]
    for s in X.simplex_set:
        st = tuple(sorted(X.simplex_stabilizer(s)))
        by_class[index[st]].add(s)
    stages = [Subcomplex(X, frozenset())]
    acc: set = set()
    for part in by_class:
        acc |= part
        stages.append(Subcomplex(X, frozenset(acc)))
    for s, cls in enumerate(classes, start=1):
        F, prev = stages[s], stages[s - 1]
        if not F.is_face_closed() or not F.is_invariant():
            raise ComplexError("internal: filtration stage is not an invariant subcomplex")
        K = cls.representative
        XK = fixed_subcomplex(X, K).simplex_set
        if F.simplex_set & XK != XK:
            raise ComplexError("internal: F_s^K != X^K")
        if prev.simplex_set & XK != singular_subcomplex(X, K).simplex_set:
            raise ComplexError("internal: F_{s-1}^K != X^{>K}")
    if stages[-1].simplex_set != X.simplex_set:
        raise ComplexError("internal: last filtration stage is not X")
    return OrbitFiltration(X, classes, stages)


# ---------------------------------------------------------------------------
# stabilization experiment


@dataclass
class Verdict:
    """A comparison between a computed value and its reference side."""

    quantity: str
    coeff: str
    k: int
    value: str
    relation: str
    reference: str
    ok: bool

    def to_json(self) -> dict:
        return {"quantity": self.quantity, "coeff": self.coeff, "k": self.k, "value": self.value,
                "relation": self.relation, "reference": self.reference, "ok": self.ok}


@dataclass
class StabilizationRow:
    n: int
    status: str
    mode: str
    N: int | None = None
    dim_A: int | None = None
    simplices_Y: int | None = None
    simplices_A: int | None = None
    simplices_B: int | None = None
    simplices_D: int | None = None
    note: str = ""
    values: dict[str, list[str]] = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"n": self.n, "status": self.status, "mode": self.mode, "N": self.N, "dim_A": self.dim_A,
                "simplices_Y": self.simplices_Y, "simplices_A": self.simplices_A,
                "simplices_B": self.simplices_B, "simplices_D": self.simplices_D, "note": self.note,
                "values": self.values, "verdicts": [v.to_json() for v in self.verdicts]}


@dataclass
class SeriesVerdict:
    """Range summary of one quantity: its values by ``n`` and the tail verdict."""

    quantity: str
    coeff: str
    k: int
    values: dict[int, str]
    stable_tail: int
    ok: bool

    def to_json(self) -> dict:
        return {"quantity": self.quantity, "coeff": self.coeff, "k": self.k,
                "values": {str(n): v for n, v in sorted(self.values.items())},
                "stable_tail": self.stable_tail, "ok": self.ok}


@dataclass
class StabilizationTable:
    group: str
    subgroup: tuple[int, ...]
    weyl_order: int | None
    k_max: int
    coeffs: list[str]
    rows: list[StabilizationRow] = field(default_factory=list)
    series: list[SeriesVerdict] = field(default_factory=list)
    gate: str | None = None

    @property
    def ok(self) -> bool:
        return self.gate is None and all(s.ok for s in self.series)

    @property
    def exit_code(self) -> int:
        if self.gate is not None or any(r.status != "ok" for r in self.rows):
            return 2
        return 0 if self.ok else 1

    def to_json(self) -> dict:
        return {"group": self.group, "subgroup": list(self.subgroup), "weyl_order": self.weyl_order,
                "k_max": self.k_max, "coeffs": self.coeffs, "gate": self.gate,
                "rows": [r.to_json() for r in self.rows], "series": [s.to_json() for s in self.series]}


def _orbit_padded(C: IntChainComplex, top: int) -> IntChainComplex:
    dims = list(C.dims) + [0] * (top + 1 - len(C.dims))
    bd = {n: C.d(n) for n in range(1, len(C.dims))}
    for n in range(len(C.dims), top + 1):
        bd[n] = IntMatrix.zeros(dims[n - 1], 0)
    return IntChainComplex(dims, bd, check=False)


def restriction_kernel_cokernel(B: GComplex, D: Subcomplex, N: int, k: int) -> tuple[FgAbGroup, FgAbGroup]:
    """Kernel and cokernel of restriction ``H_W^{N-k}(B; Z) -> H_W^{N-k}(D; Z)``."""
    ob = bredon_complex(B)
    Dc = D.as_complex()
    if Dc.is_empty():
        groups = bredon_cohomology(B)
        deg = N - k
        return (groups[deg] if 0 <= deg < len(groups) else FgAbGroup()), FgAbGroup()
    od = bredon_complex(Dc)
    cb, cd = _orbit_padded(ob.chains, N), _orbit_padded(od.chains, N)
    maps = {}
    for i in range(N + 1):
        entries = []
        for r, tau in enumerate(od.reps[i] if i < len(od.reps) else []):
            j, sign = ob.transport[tau]
            entries.append((r, j, sign))
        maps[N - i] = IntMatrix.from_entries(cd.dim(i), cb.dim(i), entries)
    # R_q = C^{N-q}: cochains reindexed as a chain complex, restriction is a chain map
    RB, RD = cb.shift_transpose(), cd.shift_transpose()
    H, src, dst = induced_on_homology(maps, RB, RD, k)
    return hom_kernel(H, src, dst).group, hom_cokernel(H, src, dst).group


def _order(g: FgAbGroup) -> int | None:
    return g.order if g.is_finite() else None


def _bounded(quantity: str, coeff: str, k: int, value: FgAbGroup, bound: int | None) -> Verdict:
    if bound is None:
        return Verdict(quantity, coeff, k, str(value), "finite", "finite", value.is_finite())
    ok = value.is_finite() and value.order <= bound
    return Verdict(quantity, coeff, k, str(value), "order<=", str(bound), ok)


def _get(groups: Sequence[FgAbGroup], i: int) -> FgAbGroup:
    return groups[i] if 0 <= i < len(groups) else FgAbGroup()


def _row(n: int, X: GComplex, K: Subgroup, k_max: int, coeffs: Sequence[Coefficient],
         max_simplices: int) -> tuple[StabilizationRow, FiniteGroup | None]:
    try:
        Xn = n_fold_join(X, n, max_simplices)
    except SimplexCapExceeded as exc:
        return StabilizationRow(n, "skipped", "none", note=str(exc)), None
    KX = Subgroup(Xn.group, K.members)
    Y, A, W = weyl_fixed_complex(Xn, KX)
    row = StabilizationRow(n, "ok", "", N=Y.dim, dim_A=A.dim, simplices_Y=Y.num_simplices,
                           simplices_A=len(A.simplex_set))
    if Y.is_empty() or A.simplex_set == Y.simplex_set:
        row.status = "hypothesis_failed"
        row.mode = "none"
        row.note = "hypothesis A_n ⊊ Y_n fails"
        return row, W
    try:
        pieces = star_neighborhood(Y, A, max_simplices)
        row.mode = "sd2"
        Bc, Dsub = pieces.b.as_complex(), Subcomplex(pieces.b.as_complex(), pieces.d.simplex_set)
        Ywork, Awork = (Y, A) if Y.regularity.pointwise_fixing else (pieces.ysd2, pieces.a)
    except SimplexCapExceeded as exc:
        if not A.is_empty():
            row.status = "skipped"
            row.mode = "none"
            row.note = str(exc)
            return row, W
        row.mode = "direct"
        Bc, Dsub = Y, Subcomplex(Y, frozenset())
        Ywork, Awork = Y, A
    row.simplices_B, row.simplices_D = Bc.num_simplices, len(Dsub.simplex_set)
    N = Y.dim
    top = k_max + 1
    try:
        for T in coeffs:
            c = coeff_label(T)
            hb = pad(bredon_homology(Bc, None, T), top)[:top]
            hw = group_homology(W, T, k_max)
            row.values[f"A:H^W_k(B;{c})"] = [str(g) for g in hb]
            row.values[f"A:H_k(W;{c})"] = [str(g) for g in hw]
            for k in range(top):
                row.verdicts.append(Verdict("A:H^W_k(B)", c, k, str(hb[k]), "==", str(hw[k]), hb[k] == hw[k]))
            M = as_group(T)
            if M.is_finite():
                hy = pad(bredon_homology(Ywork, None, T), top)[:top]
                ha = pad(bredon_homology(Awork.as_complex(), None, T), top)[:top] if not Awork.is_empty() \
                    else [FgAbGroup()] * top
                row.values[f"B:H^W_k(Y;{c})"] = [str(g) for g in hy]
                row.values[f"B:H^W_k(A;{c})"] = [str(g) for g in ha]
                for k in range(top):
                    row.verdicts.append(_bounded("B:H^W_k(Y)", c, k, hy[k], None))
                    row.verdicts.append(_bounded("B:H^W_k(A)", c, k, ha[k], None))
                cy = bredon_cohomology(Ywork, None, T)
                cbg = bredon_cohomology(Bc, None, T)
                cdg = bredon_cohomology(Dsub.as_complex(), None, T) if not Dsub.is_empty() else []
                for name, groups in (("Y", cy), ("B", cbg), ("D", cdg)):
                    vals = [_get(groups, N - k) for k in range(top)]
                    row.values[f"C:H_W^(N-k)({name};{c})"] = [str(g) for g in vals]
                    for k in range(top):
                        bound = M.order ** (W.order ** k) if name == "Y" else None
                        row.verdicts.append(_bounded(f"C:H_W^(N-k)({name})", c, k, vals[k], bound))
            elif M == FgAbGroup(1):
                cy = bredon_cohomology(Ywork)
                cya = bredon_cohomology(Ywork, Awork) if not Awork.is_empty() else cy
                for name, groups in (("Y", cy), ("Y,A", cya)):
                    vals = [_get(groups, N - k) for k in range(top)]
                    row.values[f"C:H_W^(N-k)({name};Z)"] = [str(g) for g in vals]
                    for k in range(1, top):
                        row.verdicts.append(_bounded(f"C:H_W^(N-k)({name})", "Z", k, vals[k],
                                                     W.order ** (W.order ** k)))
        kers, cokers = [], []
        for k in range(top):
            ker, coker = restriction_kernel_cokernel(Bc, Dsub, N, k)
            kers.append(ker)
            cokers.append(coker)
            if k >= 1:
                row.verdicts.append(_bounded("D:ker λ_(N-k)", "Z", k, ker, None))
            if k >= 2:
                row.verdicts.append(_bounded("D:coker λ_(N-k)", "Z", k, coker, None))
        row.values["D:ker λ_(N-k)"] = [str(g) for g in kers]
        row.values["D:coker λ_(N-k)"] = [str(g) for g in cokers]
    except (BredonError, ComplexError) as exc:
        row.status = "skipped"
        row.note = str(exc)
    return row, W


def _series(rows: Sequence[StabilizationRow]) -> list[SeriesVerdict]:
    done = [r for r in rows if r.status == "ok"]
    keys: dict[tuple[str, str, int], dict[int, Verdict]] = {}
    for r in done:
        for v in r.verdicts:
            keys.setdefault((v.quantity, v.coeff, v.k), {})[r.n] = v
    out = []
    for (q, c, k), by_n in sorted(keys.items()):
        ns = sorted(by_n)
        values = {n: by_n[n].value for n in ns}
        tail = 1
        while tail < len(ns) and ns[-tail - 1] == ns[-tail] - 1 and values[ns[-tail - 1]] == values[ns[-1]]:
            tail += 1
        out.append(SeriesVerdict(q, c, k, values, tail, by_n[ns[-1]].ok))
    return out


def stabilization_experiment(X: GComplex, K: Subgroup, n_range: Iterable[int], k_max: int,
                         coeffs: Sequence[Coefficient] = (None,),
                         max_simplices: int = DEFAULT_MAX_SIMPLICES) -> StabilizationTable:
    """Tabulate Bredon invariants of ``Y_n = (X^{*n})^K`` over a range of ``n``.

    Each row uses the ``sd²`` star neighbourhood of ``A_n`` when it fits the
    simplex cap; for ``A_n = ∅`` it falls back to ``B_n = Y_n`` (mode
    ``direct``). Range verdicts use the largest computed ``n``; the stable
    tail counts how many consecutive final ``n`` share that value.
    """
    if K.parent != X.group:
        K = Subgroup(X.group, K.members)
    table = StabilizationTable(X.group.name, K.members, None, k_max, [coeff_label(c) for c in coeffs])
    for n in sorted(set(n_range)):
        row, W = _row(n, X, K, k_max, coeffs, max_simplices)
        if W is not None:
            table.weyl_order = W.order
        table.rows.append(row)
        if row.status == "hypothesis_failed":
            table.gate = f"n={n}: {row.note}"
            break
    table.series = _series(table.rows)
    return table


# ---------------------------------------------------------------------------
# emission

CSV_FIELDS = ["n", "status", "mode", "N", "dim_A", "simplices_Y", "simplices_A", "simplices_B",
              "simplices_D", "quantity", "coeff", "k", "value", "relation", "reference", "ok", "note"]


def table_to_csv(table: StabilizationTable | None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in (table.rows if table is not None else []):
        base = [r.n, r.status, r.mode, r.N, r.dim_A, r.simplices_Y, r.simplices_A, r.simplices_B, r.simplices_D]
        base = ["" if x is None else x for x in base]
        if not r.verdicts:
            w.writerow(base + [""] * 7 + [r.note])
        for v in r.verdicts:
            w.writerow(base + [v.quantity, v.coeff, v.k, v.value, v.relation, v.reference, v.ok, r.note])
    return buf.getvalue()


def table_to_json(table: StabilizationTable | None) -> str:
    obj = table.to_json() if table is not None else {"rows": [], "series": []}
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(table: StabilizationTable | None, fmt: str = "csv", path: str | None = None) -> str:
    """Serialize deterministically; write to ``path`` when given and return the text."""
    if fmt == "csv":
        text = table_to_csv(table)
    elif fmt == "json":
        text = table_to_json(table)
    else:
        raise LabError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def emit_many(tables: Mapping[str, StabilizationTable], fmt: str = "csv", path: str | None = None) -> str:
    """Several named tables in one document, in name order."""
    names = sorted(tables)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["experiment"] + CSV_FIELDS)
        for name in names:
            for line in list(csv.reader(io.StringIO(table_to_csv(tables[name]))))[1:]:
                w.writerow([name] + line)
        text = buf.getvalue()
    elif fmt == "json":
        obj = {name: tables[name].to_json() for name in names}
        text = json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    else:
        raise LabError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
